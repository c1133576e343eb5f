#include "pbtm/encoder.hpp"

#include <cstring>
#include <limits>
#include <map>

#include "pbtm/error.hpp"
#include "pbtm/json_util.hpp"

namespace pbtm {

namespace {

constexpr int64_t kNegInfSentinel = std::numeric_limits<int64_t>::min();
constexpr int64_t kPosInfSentinel = std::numeric_limits<int64_t>::max();

int64_t endpoint_sentinel(const IntervalEndpoint& e) {
  if (e.is_neg_inf()) return kNegInfSentinel;
  if (e.is_pos_inf()) return kPosInfSentinel;
  return e.tick();
}

IntervalEndpoint endpoint_from_sentinel(int64_t v) {
  if (v == kNegInfSentinel) return IntervalEndpoint::neg_inf();
  if (v == kPosInfSentinel) return IntervalEndpoint::pos_inf();
  return IntervalEndpoint::at(v);
}

// Little-endian fixed-width writer/reader.
struct Writer {
  std::string out;
  template <typename T>
  void put(T v) {
    char buf[sizeof(T)];
    std::memcpy(buf, &v, sizeof(T));
    out.append(buf, sizeof(T));
  }
  void put_bytes(std::string_view s) { out.append(s); }
};

struct Reader {
  std::string_view in;
  std::size_t pos = 0;
  template <typename T>
  T get() {
    if (pos + sizeof(T) > in.size()) raise(Errc::InputError, "truncated encoded interval");
    T v;
    std::memcpy(&v, in.data() + pos, sizeof(T));
    pos += sizeof(T);
    return v;
  }
  std::string get_bytes(std::size_t n) {
    if (pos + n > in.size()) raise(Errc::InputError, "truncated encoded interval");
    std::string s(in.substr(pos, n));
    pos += n;
    return s;
  }
};

void write_header(Writer& w, std::string_view interval_id, const Interval& interval, uint32_t n) {
  w.put<uint32_t>(static_cast<uint32_t>(interval_id.size()));
  w.put_bytes(interval_id);
  w.put<int64_t>(endpoint_sentinel(interval.start()));
  w.put<int64_t>(endpoint_sentinel(interval.end()));
  w.put<uint32_t>(n);
}

}  // namespace

EncodedInterval encode(const std::vector<Transaction>& transactions, std::string interval_id,
                       Interval interval, const Catalog& catalog) {
  // std::map keys keep rows in itemset order, the canonical row order.
  std::map<ItemSet, uint32_t> multiplicity;
  for (const auto& t : transactions) {
    for (ItemId id : t.items) catalog.item(id);  // UnknownItem on missing weight
    ++multiplicity[t.items];
  }

  EncodedInterval out;
  out.interval_id = std::move(interval_id);
  out.interval = interval;
  out.total_tx = static_cast<int64_t>(transactions.size());
  out.rows.reserve(multiplicity.size());
  uint32_t row_id = 1;
  for (const auto& [itemset, occurrences] : multiplicity) {
    EncodedRow row;
    row.row_id = row_id++;
    row.itemset = itemset;
    row.count = occurrences - 1;
    row.weighted_support = catalog.weight_sum(itemset) * Rational(occurrences);
    out.rows.push_back(std::move(row));
  }
  return out;
}

std::vector<ItemSet> decode(const EncodedInterval& encoded) {
  std::vector<ItemSet> out;
  out.reserve(static_cast<std::size_t>(encoded.total_tx));
  for (const auto& row : encoded.rows) {
    for (uint32_t i = 0; i < row.occurrences(); ++i) out.push_back(row.itemset);
  }
  return out;
}

std::string serialize(const EncodedInterval& encoded) {
  Writer w;
  write_header(w, encoded.interval_id, encoded.interval,
               static_cast<uint32_t>(encoded.rows.size()));
  for (const auto& row : encoded.rows) {
    w.put<uint16_t>(static_cast<uint16_t>(row.itemset.size()));
    for (ItemId id : row.itemset) w.put<uint32_t>(id);
    w.put<uint32_t>(row.count);
  }
  return std::move(w.out);
}

EncodedInterval deserialize(std::string_view bytes, const Catalog& catalog) {
  Reader r{bytes};
  uint32_t id_len = r.get<uint32_t>();
  std::string id = r.get_bytes(id_len);
  auto start = endpoint_from_sentinel(r.get<int64_t>());
  auto end = endpoint_from_sentinel(r.get<int64_t>());
  uint32_t n_rows = r.get<uint32_t>();

  EncodedInterval out;
  out.interval_id = std::move(id);
  out.interval = Interval(start, end);
  out.rows.reserve(n_rows);
  int64_t total = 0;
  for (uint32_t i = 0; i < n_rows; ++i) {
    EncodedRow row;
    row.row_id = i + 1;
    uint16_t len = r.get<uint16_t>();
    row.itemset.reserve(len);
    for (uint16_t k = 0; k < len; ++k) row.itemset.push_back(r.get<uint32_t>());
    row.count = r.get<uint32_t>();
    total += row.occurrences();
    row.weighted_support = catalog.weight_sum(row.itemset) * Rational(row.occurrences());
    out.rows.push_back(std::move(row));
  }
  out.total_tx = total;
  if (r.pos != bytes.size()) raise(Errc::InputError, "trailing bytes after encoded interval");
  return out;
}

std::string serialize_raw(std::string_view interval_id, const Interval& interval,
                          const std::vector<Transaction>& transactions) {
  Writer w;
  write_header(w, interval_id, interval, static_cast<uint32_t>(transactions.size()));
  for (const auto& t : transactions) {
    w.put<uint16_t>(static_cast<uint16_t>(t.items.size()));
    for (ItemId id : t.items) w.put<uint32_t>(id);
  }
  return std::move(w.out);
}

int64_t footprint(const EncodedInterval& encoded) {
  return static_cast<int64_t>(serialize(encoded).size());
}

int64_t footprint_raw(std::string_view interval_id, const Interval& interval,
                      const std::vector<Transaction>& transactions) {
  return static_cast<int64_t>(serialize_raw(interval_id, interval, transactions).size());
}

nlohmann::json encoded_to_json(const EncodedInterval& encoded, const Catalog& catalog) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : encoded.rows) {
    rows.push_back({{"row_id", row.row_id},
                    {"itemset", catalog.format_itemset(row.itemset)},
                    {"count", row.count},
                    {"occurrences", row.occurrences()},
                    {"weighted_support", rational_to_json(row.weighted_support)}});
  }
  return nlohmann::json{{"interval_id", encoded.interval_id},
                        {"interval", interval_to_json(encoded.interval)},
                        {"row_count", encoded.row_count()},
                        {"total_tx", encoded.total_tx},
                        {"rows", std::move(rows)}};
}

EncodedInterval encoded_from_json(const nlohmann::json& j, const Catalog& catalog) {
  EncodedInterval out;
  out.interval_id = j.at("interval_id").get<std::string>();
  out.interval = interval_from_json(j.at("interval"));
  int64_t total = 0;
  for (const auto& row_json : j.at("rows")) {
    EncodedRow row;
    row.row_id = row_json.at("row_id").get<uint32_t>();
    row.itemset = catalog.parse_itemset(row_json.at("itemset").get<std::string>());
    row.count = row_json.at("count").get<uint32_t>();
    row.weighted_support = catalog.weight_sum(row.itemset) * Rational(row.occurrences());
    total += row.occurrences();
    out.rows.push_back(std::move(row));
  }
  out.total_tx = total;
  return out;
}

}  // namespace pbtm
