// pbtm — priority-based temporal mining toolkit.
//
// Subcommands: generate, encode, mine, rules, classify, pipeline, bench.
// Stage failures exit nonzero with a machine-readable JSON error record on
// stderr; input problems exit 2, everything else 1.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "pbtm/error.hpp"
#include "pbtm/io.hpp"
#include "pbtm/pipeline.hpp"

namespace {

using namespace pbtm;

struct CommonArgs {
  std::string out_dir = ".";
  std::string format = "csv";
  int jobs = 1;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--out", args.out_dir, "Output directory");
  cmd->add_option("--format", args.format, "Report format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--jobs", args.jobs, "Worker threads for per-interval mining")
      ->check(CLI::PositiveNumber);
}

IntervalPartition partition_from_file_or_json(const std::string& spec) {
  if (!spec.empty() && (spec.front() == '{' || spec.front() == '[')) {
    return partition_from_json(nlohmann::json::parse(spec));
  }
  return partition_from_json(read_json_file(spec));
}

MiningConfig parse_mining(const std::string& wmnspt, const std::string& min_c,
                          const std::string& min_s, int max_k) {
  MiningConfig cfg;
  cfg.wmnspt = Rational::parse(wmnspt);
  cfg.min_c = Rational::parse(min_c);
  if (!min_s.empty()) cfg.min_s = Rational::parse(min_s);
  if (max_k > 0) cfg.max_k = max_k;
  return cfg;
}

int run_generate(const std::string& config_path, std::optional<uint64_t> seed,
                 const CommonArgs& common) {
  auto config = read_json_file(config_path);
  SynthConfig cfg = synth_config_from_json(config);
  if (seed) cfg.seed = *seed;
  IntervalPartition partition = partition_from_json(config.at("partition"));

  SynthOutput out = generate(cfg, partition);
  std::filesystem::path dir(common.out_dir);
  std::filesystem::create_directories(dir);
  write_weights_csv(dir / "weights.csv", out.catalog);
  write_transactions_csv(dir / "transactions.csv", out.transactions, out.catalog);
  write_text_file(dir / "ground_truth.json", out.ground_truth.dump(2) + "\n");
  std::cout << "generated " << out.transactions.size() << " transactions, "
            << out.catalog.size() << " items -> " << dir.string() << "\n";
  return 0;
}

int run_encode(const std::string& transactions_path, const std::string& weights_path,
               const std::string& partition_spec, const CommonArgs& common) {
  Catalog catalog = read_weights_csv(weights_path);
  auto transactions = read_transactions_csv(transactions_path, catalog);
  IntervalPartition partition = partition_from_file_or_json(partition_spec);
  auto split = partition_transactions(transactions, partition);

  std::vector<EncodedInterval> encoded;
  for (std::size_t d = 0; d < partition.size(); ++d) {
    const auto& p = partition.at(d);
    encoded.push_back(encode(split.by_interval[d], p.id, p.interval, catalog));
  }

  std::filesystem::path dir(common.out_dir);
  std::filesystem::create_directories(dir);
  bool as_json = common.format == "json";
  auto path = dir / (as_json ? "encoded.json" : "encoded.bin");
  write_encoded_store(path, encoded, catalog, as_json);

  if (!split.spill.empty()) {
    std::cerr << "warning: " << split.spill.size()
              << " transaction(s) straddle partition boundaries and were excluded:";
    for (std::size_t i = 0; i < split.spill.size() && i < 10; ++i) {
      std::cerr << ' ' << split.spill[i].tid;
    }
    if (split.spill.size() > 10) std::cerr << " ...";
    std::cerr << "\n";
  }
  for (const auto& e : encoded) {
    std::cout << e.interval_id << ": " << e.total_tx << " tx -> " << e.row_count() << " rows\n";
  }
  std::cout << "wrote " << path.string() << "\n";
  return 0;
}

int run_mine(const std::string& encoded_path, const std::string& weights_path,
             const MiningConfig& mining, bool oracle, const CommonArgs& common) {
  Catalog catalog = read_weights_csv(weights_path);
  auto encoded = read_encoded_store(encoded_path, catalog);

  std::vector<FrequentItemset> all;
  for (const auto& e : encoded) {
    auto frequents = mine_frequent(e, mining, catalog);
    if (oracle) {
      auto expected = brute_force_frequent(e, mining, catalog);
      if (frequents != expected) {
        throw std::runtime_error("oracle mismatch in interval " + e.interval_id);
      }
    }
    all.insert(all.end(), frequents.begin(), frequents.end());
  }

  std::filesystem::path dir(common.out_dir);
  std::filesystem::create_directories(dir);
  if (common.format == "json") {
    write_text_file(dir / "frequents.json", frequents_to_json(all, catalog).dump(2) + "\n");
  } else {
    write_text_file(dir / "frequents.csv", frequents_to_csv(all, catalog));
  }
  std::cout << all.size() << " frequent itemsets" << (oracle ? " (oracle checked)" : "") << "\n";
  return 0;
}

int run_rules(const std::string& encoded_path, const std::string& weights_path,
              const std::string& partition_spec, const MiningConfig& mining,
              bool raw_confidence, bool no_transitive, const CommonArgs& common) {
  Catalog catalog = read_weights_csv(weights_path);
  auto encoded = read_encoded_store(encoded_path, catalog);
  IntervalPartition partition = partition_from_file_or_json(partition_spec);

  RuleConfig rule_cfg{mining.min_c, raw_confidence};
  std::vector<TemporalRule> mined;
  for (const auto& e : encoded) {
    auto frequents = mine_frequent(e, mining, catalog);
    auto rules = generate_rules(frequents, e, catalog, rule_cfg);
    mined.insert(mined.end(), rules.begin(), rules.end());
  }
  auto final_rules = expand_intervals(mined, partition);
  if (!no_transitive) {
    auto derived = transitive_rules(final_rules);
    final_rules.insert(final_rules.end(), derived.begin(), derived.end());
  }

  std::filesystem::path dir(common.out_dir);
  std::filesystem::create_directories(dir);
  if (common.format == "json") {
    write_text_file(dir / "rules.json", rules_to_json(final_rules, catalog).dump(2) + "\n");
  } else {
    write_text_file(dir / "rules.csv", rules_to_csv(final_rules, catalog));
  }
  std::cout << final_rules.size() << " rules\n";
  return 0;
}

int run_classify(const std::string& schema_path, const std::string& train_path,
                 const std::string& predict_path, const std::string& alpha,
                 const CommonArgs& common) {
  SchemaFile schema_file = read_schema_file(schema_path);
  auto training = read_instances_csv(train_path, schema_file.schema, true);
  NBModel model = NBModel::train(schema_file.schema, training, Rational::parse(alpha).to_double());

  std::filesystem::path dir(common.out_dir);
  std::filesystem::create_directories(dir);
  write_text_file(dir / "model.json", model.to_json().dump(2) + "\n");

  if (!predict_path.empty()) {
    auto instances = read_instances_csv(predict_path, schema_file.schema, false);
    std::ostringstream out;
    out << "predicted_class";
    for (const auto& c : schema_file.schema.classes) out << ",p_" << c;
    out << '\n';
    for (const auto& inst : instances) {
      auto post = model.posterior(inst);
      out << schema_file.schema.classes[model.predict(inst)];
      for (double p : post) out << ',' << p;
      out << '\n';
    }
    write_text_file(dir / "classification.csv", out.str());
    std::cout << instances.size() << " instances classified\n";
  } else {
    std::cout << "model trained on " << training.size() << " instances\n";
  }
  return 0;
}

int run_pipeline_cmd(const std::string& config_path, std::optional<uint64_t> seed,
                     const CommonArgs& common, bool out_set, bool format_set, bool jobs_set) {
  auto j = read_json_file(config_path);
  PipelineConfig cfg = pipeline_config_from_json(j);
  // Flags override config file values.
  if (out_set || cfg.out_dir.empty()) cfg.out_dir = common.out_dir;
  if (format_set) cfg.format = common.format;
  if (jobs_set) cfg.jobs = common.jobs;
  if (seed && cfg.synth) cfg.synth->seed = *seed;

  PipelineResult result = run_pipeline(cfg);
  if (result.spill_count > 0) {
    std::cerr << "warning: " << result.spill_count
              << " transaction(s) straddle partition boundaries and were excluded\n";
  }
  std::cout << result.summary.dump(2) << "\n";
  return 0;
}

int run_bench(const std::string& config_path, const std::vector<int64_t>& sizes,
              std::optional<uint64_t> seed, const CommonArgs& common) {
  auto config = read_json_file(config_path);
  SynthConfig synth_cfg = synth_config_from_json(config);
  if (seed) synth_cfg.seed = *seed;
  IntervalPartition partition = partition_from_json(config.at("partition"));

  MiningConfig mining;
  RuleConfig rule_cfg;
  if (config.contains("mining")) {
    const auto& m = config.at("mining");
    mining.wmnspt = Rational::parse(m.value("wmnspt", "0.01"));
    mining.min_c = Rational::parse(m.value("min_c", "0.5"));
    if (m.contains("max_k")) mining.max_k = m.at("max_k").get<int>();
    rule_cfg.min_c = mining.min_c;
  }

  BenchReport report = bench(synth_cfg, partition, mining, rule_cfg, sizes);
  std::filesystem::path dir(common.out_dir);
  std::filesystem::create_directories(dir);
  if (common.format == "json") {
    write_text_file(dir / "bench.json", report.to_json().dump(2) + "\n");
  } else {
    write_text_file(dir / "bench.csv", report.to_csv());
  }
  std::cout << report.to_csv();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"priority-based temporal mining over interval-encoded transaction stores"};
  app.require_subcommand(1);

  CommonArgs common;
  std::optional<uint64_t> seed;

  // generate
  auto* gen = app.add_subcommand("generate", "Generate a synthetic temporal database");
  std::string gen_config;
  gen->add_option("--config", gen_config, "Synth config JSON")->required();
  gen->add_option("--seed", seed, "PRNG seed (required for reproducibility)")->required();
  CommonArgs gen_common;
  add_common(gen, gen_common);

  // encode
  auto* enc = app.add_subcommand("encode", "Partition and merge-encode a transaction file");
  std::string enc_tx, enc_weights, enc_partition;
  enc->add_option("--transactions", enc_tx, "Transactions CSV")->required();
  enc->add_option("--weights", enc_weights, "Weights CSV")->required();
  enc->add_option("--partition", enc_partition, "Partition spec (JSON file or inline)")->required();
  CommonArgs enc_common;
  add_common(enc, enc_common);

  // mine
  auto* mine = app.add_subcommand("mine", "Mine frequent itemsets from an encoded store");
  std::string mine_encoded, mine_weights, mine_wmnspt = "0.1", mine_min_s;
  int mine_max_k = 0;
  bool mine_oracle = false;
  mine->add_option("--encoded", mine_encoded, "Encoded store (bin or json)")->required();
  mine->add_option("--weights", mine_weights, "Weights CSV")->required();
  mine->add_option("--wmnspt", mine_wmnspt, "Weighted minimum support fraction");
  mine->add_option("--min-s", mine_min_s, "Optional plain support fraction");
  mine->add_option("--max-k", mine_max_k, "Cap on itemset size");
  mine->add_flag("--oracle", mine_oracle, "Cross-check against the brute-force oracle");
  CommonArgs mine_common;
  add_common(mine, mine_common);

  // rules
  auto* rules = app.add_subcommand("rules", "Generate temporal association rules");
  std::string rules_encoded, rules_weights, rules_partition;
  std::string rules_wmnspt = "0.1", rules_min_c = "0.5", rules_min_s;
  int rules_max_k = 0;
  bool rules_raw = false, rules_no_transitive = false;
  rules->add_option("--encoded", rules_encoded, "Encoded store")->required();
  rules->add_option("--weights", rules_weights, "Weights CSV")->required();
  rules->add_option("--partition", rules_partition, "Partition spec")->required();
  rules->add_option("--wmnspt", rules_wmnspt, "Weighted minimum support fraction");
  rules->add_option("--min-c", rules_min_c, "Minimum confidence");
  rules->add_option("--min-s", rules_min_s, "Optional plain support fraction");
  rules->add_option("--max-k", rules_max_k, "Cap on itemset size");
  rules->add_flag("--raw-confidence", rules_raw,
                  "Threshold on the weighted-support ratio instead of the occurrence ratio");
  rules->add_flag("--no-transitive", rules_no_transitive, "Skip transitive derivation");
  CommonArgs rules_common;
  add_common(rules, rules_common);

  // classify
  auto* cls = app.add_subcommand("classify", "Train/apply the naive Bayes classifier");
  std::string cls_schema, cls_train, cls_predict, cls_alpha = "1";
  cls->add_option("--schema", cls_schema, "Schema JSON")->required();
  cls->add_option("--train", cls_train, "Labeled training CSV")->required();
  cls->add_option("--predict", cls_predict, "Instances CSV to classify");
  cls->add_option("--alpha", cls_alpha, "Laplace smoothing (rational)");
  CommonArgs cls_common;
  add_common(cls, cls_common);

  // pipeline
  auto* pipe = app.add_subcommand("pipeline", "Run the full mining pipeline from a config file");
  std::string pipe_config;
  pipe->add_option("--config", pipe_config, "Pipeline config JSON")->required();
  pipe->add_option("--seed", seed, "Override the synth seed");
  CommonArgs pipe_common;
  add_common(pipe, pipe_common);

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "Time encoded vs unencoded mining");
  std::string bench_config;
  std::vector<int64_t> bench_sizes{1000, 5000, 25000};
  bench_cmd->add_option("--config", bench_config, "Synth config JSON")->required();
  bench_cmd->add_option("--sizes", bench_sizes, "Transaction counts to benchmark");
  bench_cmd->add_option("--seed", seed, "Override the synth seed");
  CommonArgs bench_common;
  add_common(bench_cmd, bench_common);

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return run_generate(gen_config, seed, gen_common);
    if (enc->parsed()) return run_encode(enc_tx, enc_weights, enc_partition, enc_common);
    if (mine->parsed()) {
      return run_mine(mine_encoded, mine_weights,
                      parse_mining(mine_wmnspt, "0", mine_min_s, mine_max_k), mine_oracle,
                      mine_common);
    }
    if (rules->parsed()) {
      return run_rules(rules_encoded, rules_weights, rules_partition,
                       parse_mining(rules_wmnspt, rules_min_c, rules_min_s, rules_max_k),
                       rules_raw, rules_no_transitive, rules_common);
    }
    if (cls->parsed()) return run_classify(cls_schema, cls_train, cls_predict, cls_alpha, cls_common);
    if (pipe->parsed()) {
      return run_pipeline_cmd(pipe_config, seed, pipe_common,
                              pipe->count("--out") > 0, pipe->count("--format") > 0,
                              pipe->count("--jobs") > 0);
    }
    if (bench_cmd->parsed()) return run_bench(bench_config, bench_sizes, seed, bench_common);
  } catch (const Error& e) {
    nlohmann::json record{{"error", {{"code", errc_name(e.code())}, {"message", e.what()}}}};
    std::cerr << record.dump() << "\n";
    return e.code() == Errc::InputError || e.code() == Errc::UnknownItem ||
                   e.code() == Errc::SchemaMismatch || e.code() == Errc::InfeasibleConfig
               ? 2
               : 1;
  } catch (const std::exception& e) {
    nlohmann::json record{{"error", {{"code", "Internal"}, {"message", e.what()}}}};
    std::cerr << record.dump() << "\n";
    return 1;
  }
  return 0;
}
