#include "pbtm/io.hpp"

#include <gtest/gtest.h>

#include <filesystem>

#include "pbtm/error.hpp"

namespace pbtm {
namespace {

class IoTest : public ::testing::Test {
protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() / "pbtm_io_test";
    std::filesystem::remove_all(dir_);
    std::filesystem::create_directories(dir_);
  }
  std::filesystem::path file(const std::string& name) { return dir_ / name; }
  std::filesystem::path dir_;
};

TEST_F(IoTest, WeightsCsvRoundTrip) {
  write_text_file(file("w.csv"), "label,weight\nA,0.1\nB,0.2\nC,0.35\n");
  auto catalog = read_weights_csv(file("w.csv"));
  ASSERT_EQ(catalog.size(), 3u);
  EXPECT_EQ(catalog.item(0).label, "A");
  EXPECT_EQ(catalog.item(2).weight, Rational(7, 20));

  write_weights_csv(file("w2.csv"), catalog);
  EXPECT_EQ(read_text_file(file("w2.csv")), "label,weight\nA,0.1\nB,0.2\nC,0.35\n");
}

TEST_F(IoTest, WeightsCsvRejectsBadRows) {
  write_text_file(file("bad1.csv"), "label,weight\nA,1.5\n");
  EXPECT_THROW(read_weights_csv(file("bad1.csv")), Error);
  write_text_file(file("bad2.csv"), "label,weight\nA,0\n");
  EXPECT_THROW(read_weights_csv(file("bad2.csv")), Error);
  write_text_file(file("bad3.csv"), "label,weight\nA,0.1\nA,0.2\n");
  EXPECT_THROW(read_weights_csv(file("bad3.csv")), Error);
  write_text_file(file("bad4.csv"), "label,weight\n");
  EXPECT_THROW(read_weights_csv(file("bad4.csv")), Error);
  EXPECT_THROW(read_weights_csv(file("missing.csv")), Error);
}

TEST_F(IoTest, TransactionsCsvRoundTripIncludingInfinities) {
  write_text_file(file("w.csv"), "label,weight\nA,0.1\nB,0.2\n");
  auto catalog = read_weights_csv(file("w.csv"));
  std::string body =
      "tid,items,start,end\n"
      "t1,A;B,0,5\n"
      "t2,B,-inf,3\n"
      "t3,A,7,+inf\n";
  write_text_file(file("tx.csv"), body);
  auto txs = read_transactions_csv(file("tx.csv"), catalog);
  ASSERT_EQ(txs.size(), 3u);
  EXPECT_EQ(txs[0].items, (ItemSet{0, 1}));
  EXPECT_EQ(txs[1].valid.start(), IntervalEndpoint::neg_inf());
  EXPECT_EQ(txs[2].valid.end(), IntervalEndpoint::pos_inf());

  write_transactions_csv(file("tx2.csv"), txs, catalog);
  EXPECT_EQ(read_text_file(file("tx2.csv")), body);
}

TEST_F(IoTest, TransactionsCsvErrors) {
  write_text_file(file("w.csv"), "label,weight\nA,0.1\n");
  auto catalog = read_weights_csv(file("w.csv"));
  write_text_file(file("t1.csv"), "tid,items,start,end\nt1,Z,0,5\n");
  EXPECT_THROW(read_transactions_csv(file("t1.csv"), catalog), Error);  // unknown label
  write_text_file(file("t2.csv"), "tid,items,start,end\nt1,A,bogus,5\n");
  EXPECT_THROW(read_transactions_csv(file("t2.csv"), catalog), Error);
  write_text_file(file("t3.csv"), "tid,items,start,end\nt1,A,9,5\n");
  EXPECT_THROW(read_transactions_csv(file("t3.csv"), catalog), Error);  // reversed interval
  write_text_file(file("t4.csv"), "tid,items,start,end\nt1,,0,5\n");
  EXPECT_THROW(read_transactions_csv(file("t4.csv"), catalog), Error);  // empty itemset
}

TEST_F(IoTest, PartitionSpecsParse) {
  auto uniform = partition_from_json(nlohmann::json::parse(
      R"({"uniform": {"origin": 0, "width": 10, "count": 3}})"));
  EXPECT_EQ(uniform.size(), 3u);
  EXPECT_EQ(uniform.at(2).interval, Interval::finite(20, 29));

  auto listed = partition_from_json(nlohmann::json::parse(
      R"({"intervals": [[0, 9], [15, 19]]})"));
  EXPECT_EQ(listed.size(), 2u);
  EXPECT_FALSE(listed.adjacent(0, 1));

  EXPECT_THROW(partition_from_json(nlohmann::json::parse("{}")), Error);

  // Round trip through the JSON form.
  auto again = partition_from_json(partition_to_json(listed));
  EXPECT_EQ(again.at(1).interval, listed.at(1).interval);
}

TEST_F(IoTest, EncodedStoreBinaryAndJsonRoundTrip) {
  write_text_file(file("w.csv"), "label,weight\nA,0.1\nB,0.2\n");
  auto catalog = read_weights_csv(file("w.csv"));
  std::vector<Transaction> txs = {{"t1", {0, 1}, Interval::finite(0, 5)},
                                  {"t2", {0, 1}, Interval::finite(1, 4)},
                                  {"t3", {0}, Interval::finite(0, 9)}};
  std::vector<EncodedInterval> intervals = {
      encode(txs, "D1", Interval::finite(0, 9), catalog),
      encode({}, "D2", Interval::finite(10, 19), catalog),
  };

  write_encoded_store(file("store.bin"), intervals, catalog, false);
  EXPECT_EQ(read_encoded_store(file("store.bin"), catalog), intervals);

  write_encoded_store(file("store.json"), intervals, catalog, true);
  EXPECT_EQ(read_encoded_store(file("store.json"), catalog), intervals);

  write_text_file(file("store.bad"), "PBTExxxx");
  EXPECT_THROW(read_encoded_store(file("store.bad"), catalog), Error);
}

TEST_F(IoTest, FrequentsAndRulesCsvShape) {
  Catalog catalog;
  catalog.add("A", Rational(1, 10));
  catalog.add("B", Rational(2, 10));

  FrequentItemset f;
  f.itemset = {0, 1};
  f.interval_id = "D1";
  f.occ = 3;
  f.weight_sum = Rational(3, 10);
  f.ws = Rational(9, 10);
  f.bs = Rational(10, 3);
  EXPECT_EQ(frequents_to_csv({f}, catalog),
            "interval_id,itemset,occ,weight_sum,ws,bs\n"
            "D1,A;B,3,0.3,0.9,10/3\n");

  TemporalRule r;
  r.antecedent = {0};
  r.consequent = {1};
  r.support = Rational(9, 10);
  r.confidence = Rational(3, 4);
  r.raw_confidence = Rational(9, 4);
  r.span = Interval::finite(0, 19);
  r.interval_ids = {"D1", "D2"};
  r.source = RuleSource::Expanded;
  EXPECT_EQ(rules_to_csv({r}, catalog),
            "antecedent,consequent,interval_ids,span_start,span_end,occ_ratio_confidence,"
            "raw_confidence,support,source\n"
            "A,B,D1;D2,0,19,0.75,2.25,0.9,expanded\n");

  auto j = rules_to_json({r}, catalog);
  EXPECT_EQ(j[0].at("occ_ratio_confidence").at("value").get<std::string>(), "0.75");
}

TEST_F(IoTest, SchemaFileWithExplicitAttributes) {
  write_text_file(file("schema.json"), R"({
    "classes": ["yes", "no"],
    "attributes": [
      {"name": "outlook", "domain": ["sunny", "rain"]},
      {"name": "wind", "domain": ["weak", "strong"]}
    ]
  })");
  auto schema_file = read_schema_file(file("schema.json"));
  EXPECT_EQ(schema_file.schema.arity(), 2u);
  EXPECT_FALSE(schema_file.rule_features.has_value());

  write_text_file(file("train.csv"),
                  "outlook,wind,label\nsunny,weak,yes\nrain,strong,no\n");
  auto instances = read_instances_csv(file("train.csv"), schema_file.schema, true);
  ASSERT_EQ(instances.size(), 2u);
  EXPECT_EQ(instances[0].label, 0u);
  EXPECT_EQ(instances[1].values, (std::vector<uint32_t>{1, 1}));

  write_text_file(file("unlabeled.csv"), "outlook,wind\nsunny,weak\n");
  auto probes = read_instances_csv(file("unlabeled.csv"), schema_file.schema, false);
  EXPECT_FALSE(probes[0].label.has_value());
  EXPECT_THROW(read_instances_csv(file("unlabeled.csv"), schema_file.schema, true), Error);
}

TEST_F(IoTest, SchemaFileWithRuleFeatures) {
  write_text_file(file("schema.json"), R"({
    "classes": ["critical", "routine"],
    "rule_features": {
      "items": ["A", "B"],
      "intervals": ["D1", "D2"],
      "confidence_bins": {"edges": [0, 0.5, 0.9, 1.0], "labels": ["low", "mid", "high"]},
      "support_bins": {"edges": [0, 1.0, 10.0]}
    }
  })");
  auto schema_file = read_schema_file(file("schema.json"));
  ASSERT_TRUE(schema_file.rule_features.has_value());
  EXPECT_EQ(schema_file.schema.arity(), 5u);
  EXPECT_EQ(schema_file.schema.attributes[3].domain,
            (std::vector<std::string>{"low", "mid", "high"}));
  EXPECT_EQ(schema_file.schema.attributes[4].domain, (std::vector<std::string>{"b0", "b1"}));
}

TEST_F(IoTest, SynthConfigParses) {
  auto cfg = synth_config_from_json(nlohmann::json::parse(R"({
    "seed": 7, "n_items": 12, "n_transactions": 500,
    "weights": {"scheme": "uniform", "lo": 0.1, "hi": 0.9},
    "noise_rate": 0.3, "duplicate_rate": 0.25,
    "planted": [{"antecedent": ["A"], "consequent": ["B"],
                 "target_confidence": 0.8, "intervals": ["D1"]}]
  })"));
  EXPECT_EQ(cfg.seed, 7u);
  EXPECT_EQ(cfg.n_items, 12);
  EXPECT_EQ(cfg.scheme, WeightScheme::Uniform);
  EXPECT_DOUBLE_EQ(cfg.duplicate_rate, 0.25);
  ASSERT_EQ(cfg.planted.size(), 1u);
  EXPECT_EQ(cfg.planted[0].intervals, std::vector<std::string>{"D1"});

  EXPECT_THROW(synth_config_from_json(nlohmann::json::parse(
                   R"({"weights": {"scheme": "bogus"}})")),
               Error);
}

}  // namespace
}  // namespace pbtm
