#pragma once

#include <string>
#include <vector>

#include "pbtm/encoder.hpp"
#include "pbtm/interval.hpp"
#include "pbtm/items.hpp"
#include "pbtm/miner.hpp"

namespace pbtm {

enum class RuleSource { Mined, Expanded, Transitive };

const char* rule_source_name(RuleSource source);

/// X => Y (support, confidence, span). Two confidence figures are kept: the
/// weighted-support ratio ws(X∪Y)/ws(X), which exceeds 1 whenever Y adds
/// weight, and the occurrence ratio occ(X∪Y)/occ(X), the classical
/// confidence in [0,1]. Thresholding uses the occurrence ratio unless
/// RuleConfig says otherwise.
struct TemporalRule {
  ItemSet antecedent;
  ItemSet consequent;
  Rational support;         // ws of X∪Y (minimum across a run for Expanded)
  Rational confidence;      // occurrence ratio
  Rational raw_confidence;  // weighted-support ratio
  Interval span = Interval::all();
  std::vector<std::string> interval_ids;
  bool derived = false;
  RuleSource source = RuleSource::Mined;

  bool operator==(const TemporalRule& other) const = default;
};

struct RuleConfig {
  Rational min_c;
  /// Threshold on the weighted-support ratio instead of the occurrence
  /// ratio. Raw ratios exceed 1, so min_c keeps its meaning only in the
  /// default mode.
  bool threshold_on_raw = false;
};

struct ConfidencePair {
  Rational occ_ratio;
  Rational raw;
};

/// Both confidence readings for X => Y over one encoded interval. Throws
/// Errc::UndefinedConfidence when X never occurs (ws(X) = 0).
ConfidencePair confidence(const ItemSet& x, const ItemSet& y, const EncodedInterval& encoded,
                          const Catalog& catalog);

/// Every subset split X ⊂ Z, Y = Z∖X of every frequent |Z| >= 2 whose
/// confidence clears min_c. Deterministic order: frequents in (size, lex)
/// order, splits by (antecedent size, antecedent).
std::vector<TemporalRule> generate_rules(const std::vector<FrequentItemset>& frequents,
                                         const EncodedInterval& encoded, const Catalog& catalog,
                                         const RuleConfig& cfg);

/// Same enumeration with antecedent occurrences counted by scanning raw
/// transactions; the benchmark baseline's rule stage.
std::vector<TemporalRule> generate_rules_raw(const std::vector<FrequentItemset>& frequents,
                                             const std::vector<Transaction>& transactions,
                                             const std::string& interval_id,
                                             const Interval& interval, const Catalog& catalog,
                                             const RuleConfig& cfg);

/// Maximal runs of integer-adjacent partition intervals holding the same
/// (X, Y) rule merge into one rule spanning the run; confidence and support
/// are recorded as the minimum across the run. Rules that are alone in
/// their run pass through unchanged.
std::vector<TemporalRule> expand_intervals(const std::vector<TemporalRule>& mined,
                                           const IntervalPartition& partition);

/// Chains X => Y with Y => Z (exact consequent/antecedent match, X and Z
/// disjoint) into derived X => Z rules with product confidence and covering
/// span. Pairs duplicating an input rule's (X, Z) are suppressed.
std::vector<TemporalRule> transitive_rules(const std::vector<TemporalRule>& rules);

}  // namespace pbtm
