#include "pbtm/synth.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "pbtm/encoder.hpp"
#include "pbtm/error.hpp"
#include "pbtm/io.hpp"
#include "pbtm/miner.hpp"

namespace pbtm {
namespace {

SynthConfig base_config() {
  SynthConfig cfg;
  cfg.seed = 1234;
  cfg.n_items = 10;
  cfg.n_transactions = 2000;
  cfg.noise_rate = 0.4;
  cfg.duplicate_rate = 0.1;
  return cfg;
}

TEST(Synth, ItemLabelsFollowSpreadsheetOrder) {
  EXPECT_EQ(synth_item_label(0), "A");
  EXPECT_EQ(synth_item_label(25), "Z");
  EXPECT_EQ(synth_item_label(26), "AA");
  EXPECT_EQ(synth_item_label(27), "AB");
  EXPECT_EQ(synth_item_label(52), "BA");
}

TEST(Synth, LadderWeightsCycle) {
  SynthConfig cfg = base_config();
  cfg.n_items = 12;
  cfg.n_transactions = 0;
  auto out = generate(cfg, IntervalPartition::uniform(0, 10, 1));
  EXPECT_EQ(out.catalog.item(0).weight, Rational(1, 10));
  EXPECT_EQ(out.catalog.item(9).weight, Rational(1));
  EXPECT_EQ(out.catalog.item(10).weight, Rational(1, 10));  // ladder wraps
}

TEST(Synth, UniformWeightsStayOnGridAndInRange) {
  SynthConfig cfg = base_config();
  cfg.scheme = WeightScheme::Uniform;
  cfg.uniform_lo = 0.2;
  cfg.uniform_hi = 0.6;
  cfg.n_transactions = 0;
  auto a = generate(cfg, IntervalPartition::uniform(0, 10, 1));
  auto b = generate(cfg, IntervalPartition::uniform(0, 10, 1));
  for (const auto& item : a.catalog.items()) {
    EXPECT_GE(item.weight, Rational(1, 5));
    EXPECT_LE(item.weight, Rational(3, 5));
    EXPECT_EQ(item.weight, b.catalog.item(item.id).weight);  // seed-stable
  }
}

TEST(Synth, ExactTransactionCountAndNoStraddlers) {
  auto partition = IntervalPartition::uniform(0, 10, 3);
  auto out = generate(base_config(), partition);
  EXPECT_EQ(out.transactions.size(), 2000u);
  auto split = partition_transactions(out.transactions, partition);
  EXPECT_TRUE(split.spill.empty());
  EXPECT_EQ(out.ground_truth.at("spill_count").get<int>(), 0);
}

TEST(Synth, SameSeedIsByteIdentical) {
  auto partition = IntervalPartition::uniform(0, 10, 3);
  auto a = generate(base_config(), partition);
  auto b = generate(base_config(), partition);
  EXPECT_EQ(a.transactions, b.transactions);
  EXPECT_EQ(a.ground_truth.dump(), b.ground_truth.dump());

  std::filesystem::path dir = std::filesystem::temp_directory_path() / "pbtm_synth_test";
  std::filesystem::create_directories(dir);
  write_transactions_csv(dir / "a.csv", a.transactions, a.catalog);
  write_transactions_csv(dir / "b.csv", b.transactions, b.catalog);
  EXPECT_EQ(read_text_file(dir / "a.csv"), read_text_file(dir / "b.csv"));

  SynthConfig other = base_config();
  other.seed = 99;
  auto c = generate(other, partition);
  EXPECT_NE(a.transactions, c.transactions);
}

TEST(Synth, FullDuplicationCollapsesToOneRow) {
  SynthConfig cfg = base_config();
  cfg.duplicate_rate = 1.0;
  cfg.noise_items_min = cfg.noise_items_max = 2;
  cfg.n_transactions = 500;
  auto partition = IntervalPartition::uniform(0, 10, 1);
  auto out = generate(cfg, partition);
  auto split = partition_transactions(out.transactions, partition);
  auto encoded = encode(split.by_interval[0], "D1", partition.at(0).interval, out.catalog);
  ASSERT_EQ(encoded.row_count(), 1);
  EXPECT_EQ(encoded.rows[0].count, 499u);
}

TEST(Synth, CertainRulePlantsPerfectly) {
  SynthConfig cfg = base_config();
  cfg.duplicate_rate = 0.0;
  cfg.planted = {{{"A"}, {"B"}, 1.0, {"D1"}}};
  auto partition = IntervalPartition::uniform(0, 10, 2);
  auto out = generate(cfg, partition);

  ItemId a = out.catalog.require("A");
  ItemId b = out.catalog.require("B");
  auto split = partition_transactions(out.transactions, partition);
  int with_a = 0;
  for (const auto& t : split.by_interval[0]) {
    if (std::binary_search(t.items.begin(), t.items.end(), a)) {
      ++with_a;
      EXPECT_TRUE(std::binary_search(t.items.begin(), t.items.end(), b));
    }
  }
  EXPECT_GT(with_a, 0);
}

TEST(Synth, EmpiricalConfidenceNearTarget) {
  SynthConfig cfg = base_config();
  cfg.n_transactions = 10000;
  cfg.duplicate_rate = 0.2;
  cfg.planted = {{{"A"}, {"B"}, 0.8, {"D1", "D2"}}, {{"C", "D"}, {"E"}, 0.7, {"D2"}}};
  auto partition = IntervalPartition::uniform(0, 10, 3);
  auto out = generate(cfg, partition);

  for (const auto& plant : out.ground_truth.at("planted")) {
    double target = plant.at("target_confidence").get<double>();
    for (const auto& id : plant.at("intervals")) {
      const auto& emp = plant.at("empirical").at(id.get<std::string>());
      double conf = emp.at("confidence").at("approx").get<double>();
      EXPECT_NEAR(conf, target, 0.05)
          << plant.at("antecedent").get<std::string>() << " in " << id.get<std::string>();
      EXPECT_GT(emp.at("occ_antecedent").get<int64_t>(), 0);
    }
  }
}

TEST(Synth, GroundTruthConfidenceIsExactRatio) {
  SynthConfig cfg = base_config();
  cfg.n_transactions = 500;
  cfg.planted = {{{"A"}, {"B"}, 0.9, {"D1"}}};
  auto partition = IntervalPartition::uniform(0, 10, 1);
  auto out = generate(cfg, partition);

  const auto& emp = out.ground_truth.at("planted")[0].at("empirical").at("D1");
  auto occ_a = emp.at("occ_antecedent").get<int64_t>();
  auto occ_ab = emp.at("occ_joint").get<int64_t>();
  EXPECT_EQ(Rational::parse(emp.at("confidence").at("value").get<std::string>()),
            Rational(occ_ab, occ_a));

  // Cross-check against the miner's view of the same interval.
  auto split = partition_transactions(out.transactions, partition);
  auto encoded = encode(split.by_interval[0], "D1", partition.at(0).interval, out.catalog);
  ItemSet ab = normalized_itemset({out.catalog.require("A"), out.catalog.require("B")});
  EXPECT_EQ(occurrence(ab, encoded), occ_ab);
}

TEST(Synth, InfeasibleConfigsAreRejected) {
  auto partition = IntervalPartition::uniform(0, 10, 2);
  SynthConfig cfg = base_config();

  cfg.planted = {{{"A"}, {"A"}, 0.9, {"D1"}}};  // not disjoint
  EXPECT_THROW(generate(cfg, partition), Error);

  cfg.planted = {{{"A"}, {"B"}, 0.9, {"D7"}}};  // unknown interval
  EXPECT_THROW(generate(cfg, partition), Error);

  cfg.planted = {{{"A"}, {"B"}, 1.5, {"D1"}}};  // confidence out of range
  EXPECT_THROW(generate(cfg, partition), Error);

  // Same antecedent, same interval, different targets.
  cfg.planted = {{{"A"}, {"B"}, 0.9, {"D1"}}, {{"A"}, {"C"}, 0.5, {"D1"}}};
  EXPECT_THROW(generate(cfg, partition), Error);

  // Same antecedent in different intervals is fine.
  cfg.planted = {{{"A"}, {"B"}, 0.9, {"D1"}}, {{"A"}, {"C"}, 0.5, {"D2"}}};
  EXPECT_NO_THROW(generate(cfg, partition));

  cfg.planted.clear();
  cfg.uniform_hi = 0.0;
  cfg.scheme = WeightScheme::Uniform;
  EXPECT_THROW(generate(cfg, partition), Error);
}

TEST(Rng, BoundedStaysInRangeAndRealInUnitInterval) {
  Rng rng(7);
  for (int i = 0; i < 10000; ++i) {
    EXPECT_LT(rng.bounded(13), 13u);
    double r = rng.real();
    EXPECT_GE(r, 0.0);
    EXPECT_LT(r, 1.0);
  }
}

}  // namespace
}  // namespace pbtm
