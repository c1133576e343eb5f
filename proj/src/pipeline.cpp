#include "pbtm/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <limits>
#include <mutex>
#include <thread>

#include "pbtm/error.hpp"
#include "pbtm/json_util.hpp"

namespace pbtm {

namespace {

// Runs f(i) for i in [0, n) on up to `jobs` threads; result slots keep the
// output order deterministic. Exceptions surface on the caller thread.
template <typename F>
void parallel_indexed(std::size_t n, int jobs, F f) {
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        f(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> threads;
  int thread_count = std::min<int>(jobs, static_cast<int>(n));
  threads.reserve(static_cast<std::size_t>(thread_count));
  for (int t = 0; t < thread_count; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

// Removes everything this run wrote if a stage throws.
class OutputGuard {
public:
  ~OutputGuard() {
    if (!armed_) return;
    for (const auto& path : paths_) {
      std::error_code ec;
      std::filesystem::remove(path, ec);
    }
  }
  void track(std::filesystem::path path) { paths_.push_back(std::move(path)); }
  void disarm() { armed_ = false; }
  const std::vector<std::filesystem::path>& paths() const { return paths_; }

private:
  std::vector<std::filesystem::path> paths_;
  bool armed_ = true;
};

struct MinedInterval {
  EncodedInterval encoded;
  std::vector<FrequentItemset> frequents;
  std::vector<TemporalRule> rules;
  int64_t footprint_raw_bytes = 0;
  int64_t footprint_encoded_bytes = 0;
  std::size_t raw_tx = 0;
};

std::vector<TemporalRule> flatten_rules(const std::vector<MinedInterval>& mined) {
  std::vector<TemporalRule> out;
  for (const auto& m : mined) out.insert(out.end(), m.rules.begin(), m.rules.end());
  return out;
}

}  // namespace

PipelineConfig pipeline_config_from_json(const nlohmann::json& j) {
  PipelineConfig cfg;
  if (j.contains("synth")) cfg.synth = synth_config_from_json(j.at("synth"));
  if (j.contains("transactions")) cfg.transactions_path = j.at("transactions").get<std::string>();
  if (j.contains("weights")) cfg.weights_path = j.at("weights").get<std::string>();
  if (j.contains("partition")) cfg.partition = partition_from_json(j.at("partition"));
  if (j.contains("mining")) {
    const auto& m = j.at("mining");
    if (m.contains("wmnspt")) cfg.mining.wmnspt = Rational::parse(m.at("wmnspt").get<std::string>());
    if (m.contains("min_c")) cfg.mining.min_c = Rational::parse(m.at("min_c").get<std::string>());
    if (m.contains("min_s")) cfg.mining.min_s = Rational::parse(m.at("min_s").get<std::string>());
    if (m.contains("max_k")) cfg.mining.max_k = m.at("max_k").get<int>();
    cfg.rules.min_c = cfg.mining.min_c;
    cfg.rules.threshold_on_raw = m.value("raw_confidence", false);
    cfg.derive_transitive = m.value("transitive", true);
  }
  if (j.contains("classifier")) {
    const auto& c = j.at("classifier");
    ClassifierStageConfig stage;
    stage.schema_path = c.at("schema").get<std::string>();
    stage.train_path = c.at("train").get<std::string>();
    if (c.contains("alpha")) stage.alpha = Rational::parse(c.at("alpha").get<std::string>()).to_double();
    cfg.classifier = std::move(stage);
  }
  cfg.format = j.value("format", cfg.format);
  cfg.jobs = j.value("jobs", cfg.jobs);
  if (j.contains("out")) cfg.out_dir = j.at("out").get<std::string>();
  return cfg;
}

PipelineResult run_pipeline(const PipelineConfig& cfg) {
  if (cfg.format != "csv" && cfg.format != "json") {
    raise(Errc::InputError, "format must be csv or json, got '" + cfg.format + "'");
  }
  std::filesystem::create_directories(cfg.out_dir);
  OutputGuard guard;
  auto emit = [&](const std::string& name, std::string_view text) {
    auto path = cfg.out_dir / name;
    guard.track(path);
    write_text_file(path, text);
    return path;
  };

  // Inputs: generated or loaded.
  Catalog catalog;
  std::vector<Transaction> transactions;
  nlohmann::json ground_truth;
  if (cfg.synth) {
    SynthOutput synth_out = generate(*cfg.synth, cfg.partition);
    catalog = std::move(synth_out.catalog);
    transactions = std::move(synth_out.transactions);
    ground_truth = std::move(synth_out.ground_truth);
    guard.track(cfg.out_dir / "weights.csv");
    write_weights_csv(cfg.out_dir / "weights.csv", catalog);
    guard.track(cfg.out_dir / "transactions.csv");
    write_transactions_csv(cfg.out_dir / "transactions.csv", transactions, catalog);
    emit("ground_truth.json", ground_truth.dump(2) + "\n");
  } else {
    catalog = read_weights_csv(cfg.weights_path);
    transactions = read_transactions_csv(cfg.transactions_path, catalog);
  }

  // Stage 1: partition by valid time; straddlers spill.
  auto split = partition_transactions(transactions, cfg.partition);

  // Stages 2-4 per interval, optionally in parallel.
  std::vector<MinedInterval> mined(cfg.partition.size());
  parallel_indexed(cfg.partition.size(), cfg.jobs, [&](std::size_t d) {
    const auto& part = cfg.partition.at(d);
    MinedInterval& m = mined[d];
    m.raw_tx = split.by_interval[d].size();
    m.encoded = encode(split.by_interval[d], part.id, part.interval, catalog);
    m.footprint_raw_bytes = footprint_raw(part.id, part.interval, split.by_interval[d]);
    m.footprint_encoded_bytes = footprint(m.encoded);
    m.frequents = mine_frequent(m.encoded, cfg.mining, catalog);
    m.rules = generate_rules(m.frequents, m.encoded, catalog, cfg.rules);
  });

  // Encoded store + frequent itemsets.
  std::vector<EncodedInterval> encoded_intervals;
  std::vector<FrequentItemset> all_frequents;
  for (auto& m : mined) {
    encoded_intervals.push_back(m.encoded);
    all_frequents.insert(all_frequents.end(), m.frequents.begin(), m.frequents.end());
  }
  bool as_json = cfg.format == "json";
  auto store_path = cfg.out_dir / (as_json ? "encoded.json" : "encoded.bin");
  guard.track(store_path);
  write_encoded_store(store_path, encoded_intervals, catalog, as_json);

  if (as_json) {
    emit("frequents.json", frequents_to_json(all_frequents, catalog).dump(2) + "\n");
  } else {
    emit("frequents.csv", frequents_to_csv(all_frequents, catalog));
  }

  // Interval expansion and transitive derivation over the merged rule list.
  std::vector<TemporalRule> per_interval_rules = flatten_rules(mined);
  std::vector<TemporalRule> final_rules = expand_intervals(per_interval_rules, cfg.partition);
  if (cfg.derive_transitive) {
    auto derived = transitive_rules(final_rules);
    final_rules.insert(final_rules.end(), derived.begin(), derived.end());
  }
  if (as_json) {
    emit("rules.json", rules_to_json(final_rules, catalog).dump(2) + "\n");
  } else {
    emit("rules.csv", rules_to_csv(final_rules, catalog));
  }

  // Stage 5: classify the mined rules when a schema is configured.
  nlohmann::json classification_summary;
  if (cfg.classifier) {
    SchemaFile schema_file = read_schema_file(cfg.classifier->schema_path);
    if (!schema_file.rule_features) {
      raise(Errc::InputError, "pipeline classification needs rule_features in the schema");
    }
    auto training = read_instances_csv(cfg.classifier->train_path, schema_file.schema, true);
    NBModel model = NBModel::train(schema_file.schema, training, cfg.classifier->alpha);

    std::ostringstream cls;
    cls << "antecedent,consequent,source,predicted_class";
    for (const auto& c : schema_file.schema.classes) cls << ",p_" << c;
    cls << '\n';
    for (const auto& rule : final_rules) {
      Instance inst =
          featurize_rule(rule, *schema_file.rule_features, schema_file.schema, catalog);
      auto post = model.posterior(inst);
      uint32_t predicted = model.predict(inst);
      cls << catalog.format_itemset(rule.antecedent) << ','
          << catalog.format_itemset(rule.consequent) << ',' << rule_source_name(rule.source) << ','
          << schema_file.schema.classes[predicted];
      for (double p : post) cls << ',' << p;
      cls << '\n';
    }
    emit("classification.csv", cls.str());
    classification_summary = {{"model", model.to_json()},
                              {"classified_rules", final_rules.size()}};
  }

  // Summary.
  nlohmann::json intervals_json = nlohmann::json::array();
  int64_t before_total = 0;
  int64_t after_total = 0;
  for (std::size_t d = 0; d < mined.size(); ++d) {
    const auto& m = mined[d];
    before_total += m.footprint_raw_bytes;
    after_total += m.footprint_encoded_bytes;
    intervals_json.push_back({{"id", cfg.partition.at(d).id},
                              {"raw_transactions", m.raw_tx},
                              {"rows", m.encoded.row_count()},
                              {"total_tx", m.encoded.total_tx},
                              {"frequent_itemsets", m.frequents.size()},
                              {"footprint_raw_bytes", m.footprint_raw_bytes},
                              {"footprint_encoded_bytes", m.footprint_encoded_bytes}});
  }
  std::size_t n_mined = 0;
  std::size_t n_expanded = 0;
  std::size_t n_transitive = 0;
  for (const auto& r : final_rules) {
    switch (r.source) {
      case RuleSource::Mined: ++n_mined; break;
      case RuleSource::Expanded: ++n_expanded; break;
      case RuleSource::Transitive: ++n_transitive; break;
    }
  }
  PipelineResult result;
  result.spill_count = split.spill.size();
  result.summary = {
      {"intervals", std::move(intervals_json)},
      {"spill_count", split.spill.size()},
      {"footprint_bytes_before", before_total},
      {"footprint_bytes_after", after_total},
      {"compression_ratio",
       before_total == 0 ? 1.0 : static_cast<double>(after_total) / static_cast<double>(before_total)},
      {"rule_counts",
       {{"mined", n_mined}, {"expanded", n_expanded}, {"transitive", n_transitive}}},
      {"frequent_itemsets", all_frequents.size()},
  };
  if (!classification_summary.is_null()) result.summary["classification"] = classification_summary;
  emit("summary.json", result.summary.dump(2) + "\n");

  result.outputs = guard.paths();
  result.rules = std::move(final_rules);
  guard.disarm();
  return result;
}

std::string BenchReport::to_csv() const {
  std::ostringstream out;
  out << "variant,n_transactions,wall_time_s,peak_rows,footprint_bytes_before,"
         "footprint_bytes_after,frequent_count,rule_count,outputs_match\n";
  for (const auto& r : runs) {
    out << r.variant << ',' << r.n_transactions << ',' << r.wall_time_s << ',' << r.peak_rows
        << ',' << r.footprint_bytes_before << ',' << r.footprint_bytes_after << ','
        << r.frequent_count << ',' << r.rule_count << ',' << (r.outputs_match ? "yes" : "no")
        << '\n';
  }
  return out.str();
}

nlohmann::json BenchReport::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : runs) {
    arr.push_back({{"variant", r.variant},
                   {"n_transactions", r.n_transactions},
                   {"wall_time_s", r.wall_time_s},
                   {"peak_rows", r.peak_rows},
                   {"footprint_bytes_before", r.footprint_bytes_before},
                   {"footprint_bytes_after", r.footprint_bytes_after},
                   {"frequent_count", r.frequent_count},
                   {"rule_count", r.rule_count},
                   {"outputs_match", r.outputs_match}});
  }
  return nlohmann::json{{"runs", std::move(arr)}};
}

BenchReport bench(const SynthConfig& base, const IntervalPartition& partition,
                  const MiningConfig& mining, const RuleConfig& rule_cfg,
                  const std::vector<int64_t>& sizes, int repetitions) {
  BenchReport report;
  repetitions = std::max(repetitions, 1);

  for (int64_t size : sizes) {
    SynthConfig cfg = base;
    cfg.n_transactions = size;
    SynthOutput data = generate(cfg, partition);
    auto split = partition_transactions(data.transactions, partition);

    std::vector<EncodedInterval> encoded;
    int64_t before = 0;
    int64_t after = 0;
    int64_t peak_rows_encoded = 0;
    int64_t peak_rows_raw = 0;
    for (std::size_t d = 0; d < partition.size(); ++d) {
      const auto& part = partition.at(d);
      encoded.push_back(encode(split.by_interval[d], part.id, part.interval, data.catalog));
      before += footprint_raw(part.id, part.interval, split.by_interval[d]);
      after += footprint(encoded.back());
      peak_rows_encoded = std::max(peak_rows_encoded, encoded.back().row_count());
      peak_rows_raw = std::max<int64_t>(peak_rows_raw,
                                        static_cast<int64_t>(split.by_interval[d].size()));
    }

    auto run_encoded = [&]() {
      std::vector<FrequentItemset> frequents;
      std::vector<TemporalRule> rules;
      for (const auto& e : encoded) {
        auto f = mine_frequent(e, mining, data.catalog);
        auto r = generate_rules(f, e, data.catalog, rule_cfg);
        frequents.insert(frequents.end(), f.begin(), f.end());
        rules.insert(rules.end(), r.begin(), r.end());
      }
      return std::pair{std::move(frequents), std::move(rules)};
    };
    auto run_baseline = [&]() {
      std::vector<FrequentItemset> frequents;
      std::vector<TemporalRule> rules;
      for (std::size_t d = 0; d < partition.size(); ++d) {
        const auto& part = partition.at(d);
        auto f = mine_frequent_raw(split.by_interval[d], part.id, mining, data.catalog);
        auto r = generate_rules_raw(f, split.by_interval[d], part.id, part.interval, data.catalog,
                                    rule_cfg);
        frequents.insert(frequents.end(), f.begin(), f.end());
        rules.insert(rules.end(), r.begin(), r.end());
      }
      return std::pair{std::move(frequents), std::move(rules)};
    };

    auto time_best = [&](auto&& fn, auto& out) {
      double best = std::numeric_limits<double>::infinity();
      for (int rep = 0; rep < repetitions; ++rep) {
        auto t0 = std::chrono::steady_clock::now();
        auto result = fn();
        auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
        out = std::move(result);
      }
      return best;
    };

    std::pair<std::vector<FrequentItemset>, std::vector<TemporalRule>> enc_out, base_out;
    double encoded_time = time_best(run_encoded, enc_out);
    double baseline_time = time_best(run_baseline, base_out);

    bool match = enc_out.first == base_out.first && enc_out.second == base_out.second;

    report.runs.push_back({"encoded", size, encoded_time, peak_rows_encoded, before, after,
                           static_cast<int64_t>(enc_out.first.size()),
                           static_cast<int64_t>(enc_out.second.size()), match});
    report.runs.push_back({"baseline", size, baseline_time, peak_rows_raw, before, before,
                           static_cast<int64_t>(base_out.first.size()),
                           static_cast<int64_t>(base_out.second.size()), match});
  }
  return report;
}

}  // namespace pbtm
