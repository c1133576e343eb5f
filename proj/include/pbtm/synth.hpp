#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "pbtm/interval.hpp"
#include "pbtm/items.hpp"
#include "pbtm/transaction.hpp"

namespace pbtm {

/// Deterministic helpers over the (standard-specified) mt19937_64 stream;
/// distributions are hand-mapped so output bytes do not depend on the
/// standard library's distribution implementations.
class Rng {
public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next() { return engine_(); }
  /// Uniform in [0, bound); bound > 0. Rejection-sampled, bias-free.
  uint64_t bounded(uint64_t bound);
  /// Uniform in [0, 1) with 53-bit resolution.
  double real();
  bool chance(double p) { return real() < p; }

private:
  std::mt19937_64 engine_;
};

enum class WeightScheme {
  Ladder,   // 0.1, 0.2, ... 1.0, repeating
  Uniform,  // uniform over {lo, lo+0.0001, ..., hi}
};

struct PlantSpec {
  std::vector<std::string> antecedent;
  std::vector<std::string> consequent;
  double target_confidence = 1.0;      // in (0, 1]
  std::vector<std::string> intervals;  // partition ids the rule is planted in
};

struct SynthConfig {
  uint64_t seed = 0;
  int n_items = 10;
  WeightScheme scheme = WeightScheme::Ladder;
  double uniform_lo = 0.05;
  double uniform_hi = 1.0;
  int64_t n_transactions = 1000;
  std::vector<PlantSpec> planted;
  double noise_rate = 0.5;      // chance a fresh transaction ignores the planted rules
  double duplicate_rate = 0.0;  // chance a transaction is an exact copy of an earlier one
  int noise_items_min = 1;
  int noise_items_max = 4;
};

struct SynthOutput {
  Catalog catalog;
  std::vector<Transaction> transactions;
  nlohmann::json ground_truth;  // planted rules with measured per-interval stats
};

/// Item labels "A", "B", ..., "Z", "AA", ... for dense ids.
std::string synth_item_label(int index);

/// Deterministic complaints-style dataset with planted rules. Ground truth
/// carries the measured (not target) per-interval occurrence counts,
/// confidences and weighted-support fractions, so tests can set thresholds
/// relative to what the data actually contains. Throws
/// Errc::InfeasibleConfig for contradictory plants.
SynthOutput generate(const SynthConfig& cfg, const IntervalPartition& partition);

}  // namespace pbtm
