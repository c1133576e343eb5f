#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "pbtm/items.hpp"
#include "pbtm/transaction.hpp"

namespace pbtm {

/// One distinct itemset within an interval. `count` is the number of
/// repetitions beyond the first, so occurrences() == count + 1.
struct EncodedRow {
  uint32_t row_id;  // 1-based position in itemset order
  ItemSet itemset;
  uint32_t count;
  Rational weighted_support;  // weight_sum(itemset) * (count + 1)

  uint32_t occurrences() const { return count + 1; }
  bool operator==(const EncodedRow& other) const = default;
};

/// Merged transaction table for one valid-time interval. Rows are sorted by
/// itemset and pairwise distinct; total_tx is the raw transaction count,
/// which equals sum(count_i) + T.
struct EncodedInterval {
  std::string interval_id;
  Interval interval = Interval::all();
  std::vector<EncodedRow> rows;
  int64_t total_tx = 0;

  int64_t row_count() const { return static_cast<int64_t>(rows.size()); }  // T
  bool operator==(const EncodedInterval& other) const = default;
};

/// Merges identical itemsets into counted rows. Every transaction's valid
/// interval must already be contained in `interval` (the partitioning step
/// guarantees this). Throws Errc::UnknownItem when an item id has no
/// catalog weight.
EncodedInterval encode(const std::vector<Transaction>& transactions, std::string interval_id,
                       Interval interval, const Catalog& catalog);

/// Expands each row count+1 times; result size == total_tx.
std::vector<ItemSet> decode(const EncodedInterval& encoded);

// Canonical serialized forms. The encoded layout is:
//   header { u32 id_len, id bytes, i64 start, i64 end, u32 T }
//   per row { u16 itemset_len, u32 item ids, u32 count }
// with INT64_MIN/MAX as the -inf/+inf sentinels. The raw layout is the same
// minus the count field, so footprint comparisons isolate what merging buys.
std::string serialize(const EncodedInterval& encoded);
EncodedInterval deserialize(std::string_view bytes, const Catalog& catalog);
std::string serialize_raw(std::string_view interval_id, const Interval& interval,
                          const std::vector<Transaction>& transactions);

/// Width of the per-row count field in the canonical layout.
inline constexpr int64_t kCountFieldBytes = 4;

int64_t footprint(const EncodedInterval& encoded);
int64_t footprint_raw(std::string_view interval_id, const Interval& interval,
                      const std::vector<Transaction>& transactions);

nlohmann::json encoded_to_json(const EncodedInterval& encoded, const Catalog& catalog);
EncodedInterval encoded_from_json(const nlohmann::json& j, const Catalog& catalog);

}  // namespace pbtm
