#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pbtm/encoder.hpp"
#include "pbtm/items.hpp"
#include "pbtm/rational.hpp"

namespace pbtm {

struct MiningConfig {
  /// Weighted minimum support, as a fraction of total transactions: an
  /// itemset X is frequent iff weight_sum(X) * occ(X) >= wmnspt * total_tx.
  Rational wmnspt;
  /// Minimum confidence for the rule stage.
  Rational min_c;
  /// Optional plain-support floor occ(X)/total_tx >= min_s; off by default.
  std::optional<Rational> min_s;
  /// Optional cap on itemset size.
  std::optional<int> max_k;
};

struct FrequentItemset {
  ItemSet itemset;
  std::string interval_id;
  int64_t occ = 0;      // transactions containing the itemset
  Rational weight_sum;  // sum of member weights
  Rational ws;          // weight_sum * occ
  Rational bs;          // total_tx * wmnspt / weight_sum

  bool operator==(const FrequentItemset& other) const = default;
};

/// Number of transactions containing X: sum of count+1 over rows whose
/// itemset is a superset of X.
int64_t occurrence(const ItemSet& x, const EncodedInterval& encoded);

/// Same count computed by scanning unmerged transactions; the benchmark
/// baseline.
int64_t occurrence_raw(const ItemSet& x, const std::vector<Transaction>& transactions);

/// Minimum occurrence count X needs to be frequent (total_tx * wmnspt /
/// weight_sum). Throws Errc::ZeroWeight for an empty/zero-weight itemset.
Rational bounded_support(const ItemSet& x, const EncodedInterval& encoded,
                         const MiningConfig& cfg, const Catalog& catalog);

/// Level-wise enumeration over the encoded interval. Weighted support is not
/// downward-closed (supersets have larger weight sums and therefore lower
/// occurrence thresholds), so classic subset pruning is unsound here; a
/// candidate X at level k is dropped only when even the most favorable
/// superset — occ unchanged, weight sum grown by the largest catalog weights
/// that still fit in a row — could not reach its threshold. Output is sorted
/// by (size, itemset).
std::vector<FrequentItemset> mine_frequent(const EncodedInterval& encoded, const MiningConfig& cfg,
                                           const Catalog& catalog);

/// Verification oracle: checks every non-empty subset of the catalog against
/// the same acceptance predicate. Guarded to |catalog| <= 20
/// (Errc::UniverseTooLarge beyond that).
std::vector<FrequentItemset> brute_force_frequent(const EncodedInterval& encoded,
                                                  const MiningConfig& cfg, const Catalog& catalog);

/// Level-wise mining over raw (unmerged) transactions; used by the benchmark
/// to time what encoding saves. Produces exactly what mine_frequent produces.
std::vector<FrequentItemset> mine_frequent_raw(const std::vector<Transaction>& transactions,
                                               const std::string& interval_id,
                                               const MiningConfig& cfg, const Catalog& catalog);

}  // namespace pbtm
