#include "pbtm/io.hpp"

#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>

#include "pbtm/error.hpp"
#include "pbtm/json_util.hpp"

namespace pbtm {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> fields;
  std::size_t pos = 0;
  for (;;) {
    std::size_t next = line.find(sep, pos);
    if (next == std::string::npos) {
      fields.push_back(line.substr(pos));
      break;
    }
    fields.push_back(line.substr(pos, next - pos));
    pos = next + 1;
  }
  return fields;
}

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path,
                                               std::size_t min_fields) {
  std::ifstream in(path);
  if (!in) raise(Errc::InputError, "cannot open " + path.string());
  std::vector<std::vector<std::string>> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    line = strip_cr(std::move(line));
    if (line.empty()) continue;
    auto fields = split(line, ',');
    if (first) {
      first = false;  // header
      continue;
    }
    if (fields.size() < min_fields) {
      raise(Errc::InputError, path.string() + ": expected at least " +
                                  std::to_string(min_fields) + " fields, got line '" + line + "'");
    }
    rows.push_back(std::move(fields));
  }
  if (first) raise(Errc::InputError, path.string() + ": missing header row");
  return rows;
}

IntervalEndpoint parse_endpoint(const std::string& text) {
  if (text == "-inf") return IntervalEndpoint::neg_inf();
  if (text == "+inf") return IntervalEndpoint::pos_inf();
  int64_t tick = 0;
  auto r = std::from_chars(text.data(), text.data() + text.size(), tick);
  if (r.ec != std::errc() || r.ptr != text.data() + text.size()) {
    raise(Errc::InputError, "bad time point '" + text + "' (want integer, -inf or +inf)");
  }
  return IntervalEndpoint::at(tick);
}

}  // namespace

Catalog read_weights_csv(const std::filesystem::path& path) {
  Catalog catalog;
  for (const auto& row : read_csv(path, 2)) {
    catalog.add(row[0], Rational::parse(row[1]));
  }
  if (catalog.size() == 0) raise(Errc::InputError, path.string() + ": no items");
  return catalog;
}

void write_weights_csv(const std::filesystem::path& path, const Catalog& catalog) {
  std::ostringstream out;
  out << "label,weight\n";
  for (const auto& item : catalog.items()) {
    out << item.label << ',' << item.weight.str() << '\n';
  }
  write_text_file(path, out.str());
}

std::vector<Transaction> read_transactions_csv(const std::filesystem::path& path,
                                               const Catalog& catalog) {
  std::vector<Transaction> transactions;
  for (const auto& row : read_csv(path, 4)) {
    Transaction t;
    t.tid = row[0];
    t.items = catalog.parse_itemset(row[1]);
    if (t.items.empty()) raise(Errc::InputError, "transaction '" + t.tid + "' has no items");
    t.valid = Interval(parse_endpoint(row[2]), parse_endpoint(row[3]));
    transactions.push_back(std::move(t));
  }
  return transactions;
}

void write_transactions_csv(const std::filesystem::path& path,
                            const std::vector<Transaction>& transactions, const Catalog& catalog) {
  std::ostringstream out;
  out << "tid,items,start,end\n";
  for (const auto& t : transactions) {
    out << t.tid << ',' << catalog.format_itemset(t.items) << ',' << t.valid.start().str() << ','
        << t.valid.end().str() << '\n';
  }
  write_text_file(path, out.str());
}

std::string frequents_to_csv(const std::vector<FrequentItemset>& frequents,
                             const Catalog& catalog) {
  std::ostringstream out;
  out << "interval_id,itemset,occ,weight_sum,ws,bs\n";
  for (const auto& f : frequents) {
    out << f.interval_id << ',' << catalog.format_itemset(f.itemset) << ',' << f.occ << ','
        << f.weight_sum.str() << ',' << f.ws.str() << ',' << f.bs.str() << '\n';
  }
  return out.str();
}

nlohmann::json frequents_to_json(const std::vector<FrequentItemset>& frequents,
                                 const Catalog& catalog) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& f : frequents) {
    arr.push_back({{"interval_id", f.interval_id},
                   {"itemset", catalog.format_itemset(f.itemset)},
                   {"occ", f.occ},
                   {"weight_sum", rational_to_json(f.weight_sum)},
                   {"ws", rational_to_json(f.ws)},
                   {"bs", rational_to_json(f.bs)}});
  }
  return arr;
}

namespace {

std::string join_ids(const std::vector<std::string>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i > 0) out.push_back(';');
    out += ids[i];
  }
  return out;
}

}  // namespace

std::string rules_to_csv(const std::vector<TemporalRule>& rules, const Catalog& catalog) {
  std::ostringstream out;
  out << "antecedent,consequent,interval_ids,span_start,span_end,occ_ratio_confidence,"
         "raw_confidence,support,source\n";
  for (const auto& r : rules) {
    out << catalog.format_itemset(r.antecedent) << ',' << catalog.format_itemset(r.consequent)
        << ',' << join_ids(r.interval_ids) << ',' << r.span.start().str() << ','
        << r.span.end().str() << ',' << r.confidence.str() << ',' << r.raw_confidence.str() << ','
        << r.support.str() << ',' << rule_source_name(r.source) << '\n';
  }
  return out.str();
}

nlohmann::json rules_to_json(const std::vector<TemporalRule>& rules, const Catalog& catalog) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rules) {
    arr.push_back({{"antecedent", catalog.format_itemset(r.antecedent)},
                   {"consequent", catalog.format_itemset(r.consequent)},
                   {"interval_ids", r.interval_ids},
                   {"span", interval_to_json(r.span)},
                   {"occ_ratio_confidence", rational_to_json(r.confidence)},
                   {"raw_confidence", rational_to_json(r.raw_confidence)},
                   {"support", rational_to_json(r.support)},
                   {"derived", r.derived},
                   {"source", rule_source_name(r.source)}});
  }
  return arr;
}

void write_encoded_store(const std::filesystem::path& path,
                         const std::vector<EncodedInterval>& intervals, const Catalog& catalog,
                         bool as_json) {
  if (as_json) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& e : intervals) arr.push_back(encoded_to_json(e, catalog));
    write_text_file(path, arr.dump(2) + "\n");
    return;
  }
  std::string out = "PBTE";
  uint32_t count = static_cast<uint32_t>(intervals.size());
  out.append(reinterpret_cast<const char*>(&count), sizeof(count));
  for (const auto& e : intervals) {
    std::string blob = serialize(e);
    uint64_t len = blob.size();
    out.append(reinterpret_cast<const char*>(&len), sizeof(len));
    out += blob;
  }
  write_text_file(path, out);
}

std::vector<EncodedInterval> read_encoded_store(const std::filesystem::path& path,
                                                const Catalog& catalog) {
  std::string bytes = read_text_file(path);
  std::vector<EncodedInterval> out;
  if (!bytes.starts_with("PBTE")) {
    // JSON mirror
    auto j = nlohmann::json::parse(bytes, nullptr, false);
    if (j.is_discarded() || !j.is_array()) {
      raise(Errc::InputError, path.string() + ": neither a PBTE store nor a JSON array");
    }
    for (const auto& entry : j) out.push_back(encoded_from_json(entry, catalog));
    return out;
  }
  std::size_t pos = 4;
  auto need = [&](std::size_t n) {
    if (pos + n > bytes.size()) raise(Errc::InputError, path.string() + ": truncated store");
  };
  need(4);
  uint32_t count;
  std::memcpy(&count, bytes.data() + pos, 4);
  pos += 4;
  for (uint32_t i = 0; i < count; ++i) {
    need(8);
    uint64_t len;
    std::memcpy(&len, bytes.data() + pos, 8);
    pos += 8;
    need(len);
    out.push_back(deserialize(std::string_view(bytes).substr(pos, len), catalog));
    pos += len;
  }
  return out;
}

IntervalPartition partition_from_json(const nlohmann::json& j) {
  if (j.contains("uniform")) {
    const auto& u = j.at("uniform");
    return IntervalPartition::uniform(u.at("origin").get<int64_t>(), u.at("width").get<int64_t>(),
                                      u.at("count").get<int>());
  }
  if (j.contains("intervals")) {
    std::vector<Interval> intervals;
    for (const auto& entry : j.at("intervals")) intervals.push_back(interval_from_json(entry));
    return IntervalPartition::from_intervals(std::move(intervals));
  }
  raise(Errc::InputError, "partition spec needs 'uniform' or 'intervals'");
}

nlohmann::json partition_to_json(const IntervalPartition& partition) {
  nlohmann::json intervals = nlohmann::json::array();
  for (const auto& p : partition.intervals()) {
    intervals.push_back(nlohmann::json::array(
        {p.interval.start().tick(), p.interval.end().tick()}));
  }
  return nlohmann::json{{"intervals", std::move(intervals)}};
}

SynthConfig synth_config_from_json(const nlohmann::json& j) {
  SynthConfig cfg;
  cfg.seed = j.value("seed", cfg.seed);
  cfg.n_items = j.value("n_items", cfg.n_items);
  if (j.contains("weights")) {
    const auto& w = j.at("weights");
    std::string scheme = w.value("scheme", "ladder");
    if (scheme == "ladder") {
      cfg.scheme = WeightScheme::Ladder;
    } else if (scheme == "uniform") {
      cfg.scheme = WeightScheme::Uniform;
      cfg.uniform_lo = w.value("lo", cfg.uniform_lo);
      cfg.uniform_hi = w.value("hi", cfg.uniform_hi);
    } else {
      raise(Errc::InputError, "unknown weight scheme '" + scheme + "'");
    }
  }
  cfg.n_transactions = j.value("n_transactions", cfg.n_transactions);
  cfg.noise_rate = j.value("noise_rate", cfg.noise_rate);
  cfg.duplicate_rate = j.value("duplicate_rate", cfg.duplicate_rate);
  cfg.noise_items_min = j.value("noise_items_min", cfg.noise_items_min);
  cfg.noise_items_max = j.value("noise_items_max", cfg.noise_items_max);
  for (const auto& p : j.value("planted", nlohmann::json::array())) {
    PlantSpec spec;
    spec.antecedent = p.at("antecedent").get<std::vector<std::string>>();
    spec.consequent = p.at("consequent").get<std::vector<std::string>>();
    spec.target_confidence = p.at("target_confidence").get<double>();
    spec.intervals = p.at("intervals").get<std::vector<std::string>>();
    cfg.planted.push_back(std::move(spec));
  }
  return cfg;
}

namespace {

BinSpec bin_spec_from_json(const nlohmann::json& j) {
  BinSpec spec;
  spec.edges = j.at("edges").get<std::vector<double>>();
  if (j.contains("labels")) spec.labels = j.at("labels").get<std::vector<std::string>>();
  return spec;
}

}  // namespace

SchemaFile schema_from_json(const nlohmann::json& j) {
  SchemaFile out;
  auto classes = j.at("classes").get<std::vector<std::string>>();
  if (j.contains("rule_features")) {
    const auto& rf = j.at("rule_features");
    RuleFeatureConfig cfg;
    cfg.items = rf.value("items", std::vector<std::string>{});
    cfg.interval_ids = rf.value("intervals", std::vector<std::string>{});
    cfg.confidence_bins = bin_spec_from_json(rf.at("confidence_bins"));
    cfg.support_bins = bin_spec_from_json(rf.at("support_bins"));
    out.schema = feature_schema(cfg, classes);
    out.rule_features = std::move(cfg);
  } else if (j.contains("attributes")) {
    Schema schema;
    schema.classes = classes;
    for (const auto& a : j.at("attributes")) {
      schema.attributes.push_back(
          {a.at("name").get<std::string>(), a.at("domain").get<std::vector<std::string>>()});
    }
    out.schema = std::move(schema);
  } else {
    raise(Errc::InputError, "schema needs 'attributes' or 'rule_features'");
  }
  if (out.schema.classes.empty()) raise(Errc::InputError, "schema declares no classes");
  return out;
}

SchemaFile read_schema_file(const std::filesystem::path& path) {
  return schema_from_json(read_json_file(path));
}

std::vector<Instance> read_instances_csv(const std::filesystem::path& path, const Schema& schema,
                                         bool require_label) {
  std::vector<Instance> out;
  for (const auto& row : read_csv(path, schema.arity())) {
    bool has_label = row.size() > schema.arity();
    if (require_label && !has_label) {
      raise(Errc::InputError, path.string() + ": training rows need a label column");
    }
    std::vector<std::string> values(row.begin(), row.begin() + schema.arity());
    std::optional<std::string_view> label;
    if (has_label) label = row[schema.arity()];
    out.push_back(make_instance(schema, values, label));
  }
  return out;
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) raise(Errc::InputError, "cannot open " + path.string());
  auto j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded()) raise(Errc::InputError, path.string() + ": invalid JSON");
  return j;
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(Errc::InputError, "cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) raise(Errc::InputError, "failed writing " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Errc::InputError, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return std::move(buffer).str();
}

}  // namespace pbtm
