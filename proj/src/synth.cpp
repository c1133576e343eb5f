#include "pbtm/synth.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

#include "pbtm/error.hpp"
#include "pbtm/json_util.hpp"
#include "pbtm/miner.hpp"

namespace pbtm {

uint64_t Rng::bounded(uint64_t bound) {
  if (bound == 0) raise(Errc::InputError, "bounded(0)");
  uint64_t threshold = (0 - bound) % bound;  // first multiple of bound below 2^64
  for (;;) {
    uint64_t r = next();
    if (r >= threshold) return r % bound;
  }
}

double Rng::real() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::string synth_item_label(int index) {
  std::string label;
  int n = index;
  for (;;) {
    label.push_back(static_cast<char>('A' + n % 26));
    n = n / 26 - 1;
    if (n < 0) break;
  }
  std::reverse(label.begin(), label.end());
  return label;
}

namespace {

struct Plant {
  ItemSet antecedent;
  ItemSet consequent;
  ItemSet joint;
  double target_confidence;
  std::vector<std::size_t> interval_indexes;
};

Catalog build_catalog(const SynthConfig& cfg, Rng& rng) {
  Catalog catalog;
  for (int i = 0; i < cfg.n_items; ++i) {
    Rational weight;
    if (cfg.scheme == WeightScheme::Ladder) {
      weight = Rational(i % 10 + 1, 10);
    } else {
      // Weights on a 1/10^4 grid so they stay exact rationals.
      auto lo = static_cast<int64_t>(cfg.uniform_lo * 10000.0 + 0.5);
      auto hi = static_cast<int64_t>(cfg.uniform_hi * 10000.0 + 0.5);
      lo = std::max<int64_t>(lo, 1);
      hi = std::min<int64_t>(hi, 10000);
      if (hi < lo) raise(Errc::InfeasibleConfig, "uniform weight range is empty");
      weight = Rational(lo + static_cast<int64_t>(rng.bounded(static_cast<uint64_t>(hi - lo + 1))),
                        10000);
    }
    catalog.add(synth_item_label(i), weight);
  }
  return catalog;
}

std::vector<Plant> resolve_plants(const SynthConfig& cfg, const Catalog& catalog,
                                  const IntervalPartition& partition) {
  std::vector<Plant> plants;
  for (const auto& spec : cfg.planted) {
    Plant plant;
    std::vector<ItemId> ante, cons;
    for (const auto& label : spec.antecedent) ante.push_back(catalog.require(label));
    for (const auto& label : spec.consequent) cons.push_back(catalog.require(label));
    plant.antecedent = normalized_itemset(std::move(ante));
    plant.consequent = normalized_itemset(std::move(cons));
    if (plant.antecedent.empty() || plant.consequent.empty()) {
      raise(Errc::InfeasibleConfig, "planted rule needs non-empty antecedent and consequent");
    }
    if (!disjoint(plant.antecedent, plant.consequent)) {
      raise(Errc::InfeasibleConfig, "planted rule itemsets must be disjoint");
    }
    if (!(spec.target_confidence > 0.0 && spec.target_confidence <= 1.0)) {
      raise(Errc::InfeasibleConfig, "target confidence must be in (0,1]");
    }
    plant.joint = set_union(plant.antecedent, plant.consequent);
    plant.target_confidence = spec.target_confidence;
    for (const auto& id : spec.intervals) {
      auto index = partition.index_of(id);
      if (!index) raise(Errc::InfeasibleConfig, "planted interval '" + id + "' not in partition");
      plant.interval_indexes.push_back(*index);
    }
    if (plant.interval_indexes.empty()) {
      raise(Errc::InfeasibleConfig, "planted rule must name at least one interval");
    }
    plants.push_back(std::move(plant));
  }

  // Same antecedent with different targets in one interval cannot both hold.
  for (std::size_t a = 0; a < plants.size(); ++a) {
    for (std::size_t b = a + 1; b < plants.size(); ++b) {
      if (plants[a].antecedent != plants[b].antecedent) continue;
      if (plants[a].target_confidence == plants[b].target_confidence) continue;
      for (auto ia : plants[a].interval_indexes) {
        for (auto ib : plants[b].interval_indexes) {
          if (ia == ib) {
            raise(Errc::InfeasibleConfig, "conflicting targets for one antecedent in " +
                                              partition.at(ia).id);
          }
        }
      }
    }
  }
  return plants;
}

Interval random_subinterval(const Interval& within, Rng& rng) {
  TimePoint s = within.start().tick();
  TimePoint e = within.end().tick();
  TimePoint a = s + static_cast<TimePoint>(rng.bounded(static_cast<uint64_t>(e - s + 1)));
  TimePoint b = a + static_cast<TimePoint>(rng.bounded(static_cast<uint64_t>(e - a + 1)));
  return Interval::finite(a, b);
}

// Noise must not accidentally contain a plant's full antecedent or joint
// itemset, or the measured confidences drift from their targets. Items not
// used by any plant are preferred; when every item is planted we fall back
// to rejection.
ItemSet sample_noise_itemset(const SynthConfig& cfg, const Catalog& catalog,
                             const std::vector<Plant>& plants, const ItemSet& free_items,
                             Rng& rng) {
  int span = cfg.noise_items_max - cfg.noise_items_min + 1;
  auto pick_from = [&](const ItemSet& pool) {
    int k = cfg.noise_items_min + static_cast<int>(rng.bounded(static_cast<uint64_t>(span)));
    k = std::min<int>(k, static_cast<int>(pool.size()));
    k = std::max(k, 1);
    std::vector<ItemId> picked;
    for (int i = 0; i < k; ++i) picked.push_back(pool[rng.bounded(pool.size())]);
    return normalized_itemset(std::move(picked));
  };

  if (!free_items.empty()) return pick_from(free_items);

  ItemSet all;
  for (const auto& item : catalog.items()) all.push_back(item.id);
  for (int attempt = 0; attempt < 64; ++attempt) {
    ItemSet candidate = pick_from(all);
    bool collides = std::any_of(plants.begin(), plants.end(), [&](const Plant& p) {
      return is_subset(p.antecedent, candidate);
    });
    if (!collides) return candidate;
  }
  // Degenerate config (e.g. every single item is an antecedent); fall back
  // to the first item so generation still terminates.
  return ItemSet{all.front()};
}

}  // namespace

SynthOutput generate(const SynthConfig& cfg, const IntervalPartition& partition) {
  if (cfg.n_items <= 0) raise(Errc::InfeasibleConfig, "n_items must be positive");
  if (cfg.n_transactions < 0) raise(Errc::InfeasibleConfig, "n_transactions must be non-negative");
  if (cfg.noise_items_min < 1 || cfg.noise_items_max < cfg.noise_items_min) {
    raise(Errc::InfeasibleConfig, "bad noise itemset size range");
  }
  for (double rate : {cfg.noise_rate, cfg.duplicate_rate}) {
    if (rate < 0.0 || rate > 1.0) raise(Errc::InfeasibleConfig, "rates must be in [0,1]");
  }

  SynthOutput out;
  Rng rng(cfg.seed);
  out.catalog = build_catalog(cfg, rng);
  std::vector<Plant> plants = resolve_plants(cfg, out.catalog, partition);

  // Items untouched by any plant form the noise pool.
  std::set<ItemId> planted_items;
  for (const auto& plant : plants) {
    planted_items.insert(plant.joint.begin(), plant.joint.end());
  }
  ItemSet free_items;
  for (const auto& item : out.catalog.items()) {
    if (!planted_items.contains(item.id)) free_items.push_back(item.id);
  }

  std::vector<std::vector<std::size_t>> plants_by_interval(partition.size());
  for (std::size_t p = 0; p < plants.size(); ++p) {
    for (auto index : plants[p].interval_indexes) plants_by_interval[index].push_back(p);
  }

  out.transactions.reserve(static_cast<std::size_t>(cfg.n_transactions));
  for (int64_t t = 0; t < cfg.n_transactions; ++t) {
    Transaction tx;
    char tid[24];
    std::snprintf(tid, sizeof(tid), "T%06lld", static_cast<long long>(t + 1));
    tx.tid = tid;

    if (t > 0 && rng.chance(cfg.duplicate_rate)) {
      const Transaction& source = out.transactions[rng.bounded(static_cast<uint64_t>(t))];
      tx.items = source.items;
      tx.valid = source.valid;
    } else {
      std::size_t interval_index = rng.bounded(partition.size());
      const auto& interval_plants = plants_by_interval[interval_index];
      if (!interval_plants.empty() && !rng.chance(cfg.noise_rate)) {
        const Plant& plant = plants[interval_plants[rng.bounded(interval_plants.size())]];
        tx.items = rng.chance(plant.target_confidence) ? plant.joint : plant.antecedent;
      } else {
        tx.items = sample_noise_itemset(cfg, out.catalog, plants, free_items, rng);
      }
      tx.valid = random_subinterval(partition.at(interval_index).interval, rng);
    }
    out.transactions.push_back(std::move(tx));
  }

  // Measure what actually got generated, per plant and designated interval.
  auto split = partition_transactions(out.transactions, partition);
  nlohmann::json intervals_json = nlohmann::json::array();
  for (std::size_t d = 0; d < partition.size(); ++d) {
    intervals_json.push_back({{"id", partition.at(d).id},
                              {"interval", interval_to_json(partition.at(d).interval)},
                              {"total_tx", split.by_interval[d].size()}});
  }

  nlohmann::json planted_json = nlohmann::json::array();
  for (const auto& plant : plants) {
    nlohmann::json empirical = nlohmann::json::object();
    for (auto d : plant.interval_indexes) {
      const auto& txs = split.by_interval[d];
      int64_t occ_ante = occurrence_raw(plant.antecedent, txs);
      int64_t occ_joint = occurrence_raw(plant.joint, txs);
      auto total = static_cast<int64_t>(txs.size());
      Rational conf = occ_ante == 0 ? Rational(0) : Rational(occ_joint, occ_ante);
      Rational joint_weight = out.catalog.weight_sum(plant.joint);
      Rational ws_fraction =
          total == 0 ? Rational(0) : joint_weight * Rational(occ_joint) / Rational(total);
      Rational support_fraction = total == 0 ? Rational(0) : Rational(occ_joint, total);
      empirical[partition.at(d).id] = {
          {"occ_antecedent", occ_ante},
          {"occ_joint", occ_joint},
          {"confidence", rational_to_json(conf)},
          {"ws_fraction", rational_to_json(ws_fraction)},
          {"support_fraction", rational_to_json(support_fraction)},
          {"joint_weight_sum", rational_to_json(joint_weight)},
      };
    }
    std::vector<std::string> interval_ids;
    for (auto d : plant.interval_indexes) interval_ids.push_back(partition.at(d).id);
    planted_json.push_back({
        {"antecedent", out.catalog.format_itemset(plant.antecedent)},
        {"consequent", out.catalog.format_itemset(plant.consequent)},
        {"target_confidence", plant.target_confidence},
        {"intervals", interval_ids},
        {"empirical", std::move(empirical)},
    });
  }

  out.ground_truth = {
      {"seed", cfg.seed},
      {"n_transactions", cfg.n_transactions},
      {"spill_count", split.spill.size()},
      {"intervals", std::move(intervals_json)},
      {"planted", std::move(planted_json)},
  };
  return out;
}

}  // namespace pbtm
