#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pbtm/io.hpp"
#include "pbtm/miner.hpp"
#include "pbtm/rules.hpp"
#include "pbtm/synth.hpp"

namespace pbtm {

struct ClassifierStageConfig {
  std::filesystem::path schema_path;
  std::filesystem::path train_path;
  double alpha = 1.0;
};

struct PipelineConfig {
  // Either synth (inputs are generated into out_dir) or transaction +
  // weight files.
  std::optional<SynthConfig> synth;
  std::filesystem::path transactions_path;
  std::filesystem::path weights_path;

  IntervalPartition partition = IntervalPartition::uniform(0, 10, 1);
  MiningConfig mining;
  RuleConfig rules;
  bool derive_transitive = true;
  std::optional<ClassifierStageConfig> classifier;

  std::string format = "csv";  // csv | json
  int jobs = 1;
  std::filesystem::path out_dir;
};

PipelineConfig pipeline_config_from_json(const nlohmann::json& j);

struct PipelineResult {
  std::vector<std::filesystem::path> outputs;
  nlohmann::json summary;
  std::size_t spill_count = 0;
  std::vector<TemporalRule> rules;  // final rule list (expanded + transitive)
};

/// Runs the five pipeline stages — partition, encode, mine, rules,
/// classify — and writes the report files plus summary.json into
/// cfg.out_dir. Reports carry no timestamps, so identical inputs produce
/// byte-identical files. On any stage failure the partially written
/// outputs are removed before the error propagates.
PipelineResult run_pipeline(const PipelineConfig& cfg);

struct BenchRunRecord {
  std::string variant;  // "encoded" | "baseline"
  int64_t n_transactions = 0;
  double wall_time_s = 0.0;
  int64_t peak_rows = 0;
  int64_t footprint_bytes_before = 0;
  int64_t footprint_bytes_after = 0;
  int64_t frequent_count = 0;
  int64_t rule_count = 0;
  bool outputs_match = false;  // encoded vs baseline rule sets identical
};

struct BenchReport {
  std::vector<BenchRunRecord> runs;
  std::string to_csv() const;
  nlohmann::json to_json() const;
};

/// For each size, generates a dataset, then mines + generates rules twice:
/// over the encoded store and over the raw transaction list. Wall time is
/// the best of `repetitions` runs; both variants must produce identical
/// rule sets.
BenchReport bench(const SynthConfig& base, const IntervalPartition& partition,
                  const MiningConfig& mining, const RuleConfig& rule_cfg,
                  const std::vector<int64_t>& sizes, int repetitions = 3);

}  // namespace pbtm
