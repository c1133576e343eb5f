#include "pbtm/rules.hpp"

#include <algorithm>
#include <map>

#include "pbtm/error.hpp"

namespace pbtm {

const char* rule_source_name(RuleSource source) {
  switch (source) {
    case RuleSource::Mined: return "mined";
    case RuleSource::Expanded: return "expanded";
    case RuleSource::Transitive: return "transitive";
  }
  return "unknown";
}

ConfidencePair confidence(const ItemSet& x, const ItemSet& y, const EncodedInterval& encoded,
                          const Catalog& catalog) {
  if (x.empty() || y.empty() || !disjoint(x, y)) {
    raise(Errc::InputError, "confidence needs disjoint non-empty antecedent and consequent");
  }
  ItemSet joint = set_union(x, y);
  int64_t occ_x = occurrence(x, encoded);
  int64_t occ_joint = occurrence(joint, encoded);
  if (occ_x == 0) {
    raise(Errc::UndefinedConfidence,
          "antecedent " + catalog.format_itemset(x) + " never occurs in " + encoded.interval_id);
  }
  ConfidencePair out;
  out.occ_ratio = Rational(occ_joint, occ_x);
  Rational ws_x = catalog.weight_sum(x) * Rational(occ_x);
  Rational ws_joint = catalog.weight_sum(joint) * Rational(occ_joint);
  out.raw = ws_joint / ws_x;
  return out;
}

namespace {

// Non-empty proper subsets of `itemset`, ordered by (size, lexicographic).
std::vector<ItemSet> proper_subsets(const ItemSet& itemset) {
  std::vector<ItemSet> subsets;
  const auto n = static_cast<uint32_t>(itemset.size());
  for (uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
    ItemSet subset;
    for (uint32_t bit = 0; bit < n; ++bit) {
      if (mask & (1u << bit)) subset.push_back(itemset[bit]);
    }
    subsets.push_back(std::move(subset));
  }
  std::sort(subsets.begin(), subsets.end(), [](const ItemSet& a, const ItemSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return subsets;
}

}  // namespace

namespace {

template <typename OccFn>
std::vector<TemporalRule> generate_rules_core(const std::vector<FrequentItemset>& frequents,
                                              OccFn occurrence_of, const std::string& interval_id,
                                              const Interval& interval, const Catalog& catalog,
                                              const RuleConfig& cfg) {
  std::vector<TemporalRule> out;
  std::map<ItemSet, int64_t> occ_cache;
  auto occ_of = [&](const ItemSet& x) {
    auto it = occ_cache.find(x);
    if (it == occ_cache.end()) it = occ_cache.emplace(x, occurrence_of(x)).first;
    return it->second;
  };

  for (const auto& frequent : frequents) {
    if (frequent.itemset.size() < 2) continue;
    occ_cache[frequent.itemset] = frequent.occ;
    for (auto& antecedent : proper_subsets(frequent.itemset)) {
      int64_t occ_x = occ_of(antecedent);
      // occ(X) >= occ(Z) >= 1 by anti-monotonicity, so the ratio is defined.
      Rational occ_ratio(frequent.occ, occ_x);
      Rational ws_x = catalog.weight_sum(antecedent) * Rational(occ_x);
      Rational raw = frequent.ws / ws_x;
      const Rational& thresholded = cfg.threshold_on_raw ? raw : occ_ratio;
      if (thresholded < cfg.min_c) continue;

      TemporalRule rule;
      rule.consequent = set_minus(frequent.itemset, antecedent);
      rule.antecedent = std::move(antecedent);
      rule.support = frequent.ws;
      rule.confidence = occ_ratio;
      rule.raw_confidence = raw;
      rule.span = interval;
      rule.interval_ids = {interval_id};
      rule.derived = false;
      rule.source = RuleSource::Mined;
      out.push_back(std::move(rule));
    }
  }
  return out;
}

}  // namespace

std::vector<TemporalRule> generate_rules(const std::vector<FrequentItemset>& frequents,
                                         const EncodedInterval& encoded, const Catalog& catalog,
                                         const RuleConfig& cfg) {
  return generate_rules_core(
      frequents, [&](const ItemSet& x) { return occurrence(x, encoded); }, encoded.interval_id,
      encoded.interval, catalog, cfg);
}

std::vector<TemporalRule> generate_rules_raw(const std::vector<FrequentItemset>& frequents,
                                             const std::vector<Transaction>& transactions,
                                             const std::string& interval_id,
                                             const Interval& interval, const Catalog& catalog,
                                             const RuleConfig& cfg) {
  return generate_rules_core(
      frequents, [&](const ItemSet& x) { return occurrence_raw(x, transactions); }, interval_id,
      interval, catalog, cfg);
}

std::vector<TemporalRule> expand_intervals(const std::vector<TemporalRule>& mined,
                                           const IntervalPartition& partition) {
  // Group per (X, Y); the map keys give a deterministic output order.
  using Key = std::pair<ItemSet, ItemSet>;
  std::map<Key, std::vector<std::pair<std::size_t, const TemporalRule*>>> groups;
  for (const auto& rule : mined) {
    if (rule.interval_ids.size() != 1) {
      raise(Errc::InputError, "expand_intervals expects per-interval rules");
    }
    auto index = partition.index_of(rule.interval_ids.front());
    if (!index) {
      raise(Errc::InputError, "rule interval '" + rule.interval_ids.front() + "' not in partition");
    }
    groups[{rule.antecedent, rule.consequent}].emplace_back(*index, &rule);
  }

  std::vector<TemporalRule> out;
  for (auto& [key, entries] : groups) {
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::size_t i = 0;
    while (i < entries.size()) {
      std::size_t j = i;
      while (j + 1 < entries.size() && partition.adjacent(entries[j].first, entries[j + 1].first)) {
        ++j;
      }
      if (j == i) {
        out.push_back(*entries[i].second);
      } else {
        TemporalRule merged = *entries[i].second;
        merged.span = Interval(partition.at(entries[i].first).interval.start(),
                               partition.at(entries[j].first).interval.end());
        merged.interval_ids.clear();
        for (std::size_t k = i; k <= j; ++k) {
          merged.interval_ids.push_back(partition.at(entries[k].first).id);
          const TemporalRule& r = *entries[k].second;
          merged.confidence = std::min(merged.confidence, r.confidence);
          merged.raw_confidence = std::min(merged.raw_confidence, r.raw_confidence);
          merged.support = std::min(merged.support, r.support);
        }
        merged.source = RuleSource::Expanded;
        out.push_back(std::move(merged));
      }
      i = j + 1;
    }
  }
  return out;
}

std::vector<TemporalRule> transitive_rules(const std::vector<TemporalRule>& rules) {
  std::vector<TemporalRule> out;
  auto already_present = [&](const ItemSet& x, const ItemSet& z) {
    return std::any_of(rules.begin(), rules.end(), [&](const TemporalRule& r) {
      return r.antecedent == x && r.consequent == z;
    });
  };
  auto already_emitted = [&](const TemporalRule& candidate) {
    return std::any_of(out.begin(), out.end(), [&](const TemporalRule& r) {
      return r.antecedent == candidate.antecedent && r.consequent == candidate.consequent &&
             r.span == candidate.span;
    });
  };

  for (const auto& first : rules) {
    if (first.source == RuleSource::Transitive) continue;
    for (const auto& second : rules) {
      if (second.source == RuleSource::Transitive) continue;
      if (first.consequent != second.antecedent) continue;
      if (!disjoint(first.antecedent, second.consequent)) continue;
      if (already_present(first.antecedent, second.consequent)) continue;

      TemporalRule chained;
      chained.antecedent = first.antecedent;
      chained.consequent = second.consequent;
      chained.support = std::min(first.support, second.support);
      chained.confidence = first.confidence * second.confidence;
      chained.raw_confidence = first.raw_confidence * second.raw_confidence;
      chained.span = Interval::cover(first.span, second.span);
      chained.interval_ids = first.interval_ids;
      for (const auto& id : second.interval_ids) {
        if (std::find(chained.interval_ids.begin(), chained.interval_ids.end(), id) ==
            chained.interval_ids.end()) {
          chained.interval_ids.push_back(id);
        }
      }
      chained.derived = true;
      chained.source = RuleSource::Transitive;
      if (!already_emitted(chained)) out.push_back(std::move(chained));
    }
  }
  return out;
}

}  // namespace pbtm
