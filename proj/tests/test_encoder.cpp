#include "pbtm/encoder.hpp"

#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "pbtm/error.hpp"

namespace pbtm {
namespace {

Catalog ladder_catalog() {
  Catalog c;
  c.add("A", Rational(1, 10));
  c.add("B", Rational(2, 10));
  c.add("C", Rational(3, 10));
  c.add("D", Rational(4, 10));
  c.add("E", Rational(5, 10));
  return c;
}

std::vector<Transaction> make_txs(const std::vector<ItemSet>& itemsets,
                                  Interval valid = Interval::finite(0, 9)) {
  std::vector<Transaction> txs;
  for (std::size_t i = 0; i < itemsets.size(); ++i) {
    txs.push_back({"t" + std::to_string(i + 1), itemsets[i], valid});
  }
  return txs;
}

std::multiset<ItemSet> as_multiset(const std::vector<ItemSet>& itemsets) {
  return {itemsets.begin(), itemsets.end()};
}

std::multiset<ItemSet> tx_itemsets(const std::vector<Transaction>& txs) {
  std::multiset<ItemSet> out;
  for (const auto& t : txs) out.insert(t.items);
  return out;
}

TEST(Encode, MergesRepeatedItemsets) {
  auto catalog = ladder_catalog();
  auto e = encode(make_txs({{1}, {1}, {1}, {1}}), "D1", Interval::finite(0, 9), catalog);
  ASSERT_EQ(e.rows.size(), 1u);
  EXPECT_EQ(e.rows[0].count, 3u);
  EXPECT_EQ(e.rows[0].occurrences(), 4u);
  EXPECT_EQ(e.rows[0].weighted_support, Rational(4, 5));  // 0.2 * 4 = 0.8
  EXPECT_EQ(e.total_tx, 4);
  EXPECT_EQ(e.row_count(), 1);
}

TEST(Encode, SingleOccurrenceHasZeroCount) {
  auto catalog = ladder_catalog();
  auto e = encode(make_txs({{0, 2}}), "D1", Interval::finite(0, 9), catalog);
  ASSERT_EQ(e.rows.size(), 1u);
  EXPECT_EQ(e.rows[0].count, 0u);
  EXPECT_EQ(e.rows[0].weighted_support, Rational(2, 5));  // (0.1 + 0.3) * 1
}

TEST(Encode, MixedMergeKeepsTotals) {
  auto catalog = ladder_catalog();
  auto e = encode(make_txs({{0}, {0}, {1}}), "D1", Interval::finite(0, 9), catalog);
  ASSERT_EQ(e.rows.size(), 2u);
  EXPECT_EQ(e.rows[0].itemset, ItemSet{0});
  EXPECT_EQ(e.rows[0].count, 1u);
  EXPECT_EQ(e.rows[0].weighted_support, Rational(1, 5));  // 0.1 * 2
  EXPECT_EQ(e.rows[1].itemset, ItemSet{1});
  EXPECT_EQ(e.rows[1].count, 0u);
  EXPECT_EQ(e.rows[1].weighted_support, Rational(1, 5));  // 0.2 * 1
  EXPECT_EQ(e.total_tx, 3);
  EXPECT_EQ(e.row_count(), 2);

  int64_t count_sum = 0;
  for (const auto& row : e.rows) count_sum += row.count;
  EXPECT_EQ(count_sum + e.row_count(), e.total_tx);
}

// The reference scenario: three distinct single-complaint itemsets with
// multiplicities 4, 3 and 2 merge into rows with counts 3, 2, 1. The
// weighted-support column follows weight*(count+1) — for the 0.2-weight row
// that is 0.8, not the 0.6 a weight*count reading would give.
TEST(Encode, ReferenceScenarioCountColumnAndWsPerOccurrences) {
  auto catalog = ladder_catalog();
  std::vector<ItemSet> itemsets;
  for (int i = 0; i < 4; ++i) itemsets.push_back({1});  // B, weight 0.2
  for (int i = 0; i < 3; ++i) itemsets.push_back({0});  // A, weight 0.1
  for (int i = 0; i < 2; ++i) itemsets.push_back({2});  // C, weight 0.3
  auto e = encode(make_txs(itemsets), "D1", Interval::finite(0, 9), catalog);

  std::map<ItemSet, const EncodedRow*> rows;
  for (const auto& row : e.rows) rows[row.itemset] = &row;
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows.at({1})->count, 3u);
  EXPECT_EQ(rows.at({0})->count, 2u);
  EXPECT_EQ(rows.at({2})->count, 1u);
  EXPECT_EQ(rows.at({1})->weighted_support, Rational(8, 10));  // 0.2*4, not 0.2*3=0.6
  EXPECT_EQ(rows.at({0})->weighted_support, Rational(3, 10));
  EXPECT_EQ(rows.at({2})->weighted_support, Rational(6, 10));
  EXPECT_EQ(e.total_tx, 9);
}

TEST(Encode, UnknownItemIdThrows) {
  auto catalog = ladder_catalog();
  EXPECT_THROW(encode(make_txs({{42}}), "D1", Interval::finite(0, 9), catalog), Error);
}

TEST(Decode, ExpandsCounts) {
  auto catalog = ladder_catalog();
  auto e = encode(make_txs({{1}, {1}, {1}, {1}}), "D1", Interval::finite(0, 9), catalog);
  auto decoded = decode(e);
  EXPECT_EQ(decoded, std::vector<ItemSet>({{1}, {1}, {1}, {1}}));

  EncodedInterval empty = encode({}, "D1", Interval::finite(0, 9), catalog);
  EXPECT_TRUE(decode(empty).empty());
}

TEST(Decode, SizeIsSumOfOccurrences) {
  auto catalog = ladder_catalog();
  // Counts 2, 4, 3 over three distinct itemsets: 3+5+4 = 12 expansions.
  std::vector<ItemSet> itemsets;
  for (int i = 0; i < 3; ++i) itemsets.push_back({0});
  for (int i = 0; i < 5; ++i) itemsets.push_back({4});
  for (int i = 0; i < 4; ++i) itemsets.push_back({3});
  auto e = encode(make_txs(itemsets), "D2", Interval::finite(10, 19), catalog);
  EXPECT_EQ(e.row_count(), 3);
  EXPECT_EQ(decode(e).size(), 12u);
}

TEST(EncodeProperty, RoundTripAndIdempotence) {
  auto catalog = ladder_catalog();
  std::mt19937_64 rng(5);
  for (int round = 0; round < 200; ++round) {
    std::vector<ItemSet> itemsets;
    auto n = rng() % 30;
    for (uint64_t i = 0; i < n; ++i) {
      ItemSet items;
      for (ItemId id = 0; id < 5; ++id) {
        if (rng() % 2) items.push_back(id);
      }
      if (items.empty()) items.push_back(static_cast<ItemId>(rng() % 5));
      itemsets.push_back(items);
    }
    auto txs = make_txs(itemsets);
    auto e = encode(txs, "D1", Interval::finite(0, 9), catalog);

    EXPECT_EQ(e.total_tx, static_cast<int64_t>(txs.size()));
    EXPECT_EQ(as_multiset(decode(e)), tx_itemsets(txs));

    auto reencoded = encode(make_txs(decode(e)), "D1", Interval::finite(0, 9), catalog);
    EXPECT_EQ(reencoded.rows, e.rows);

    // Rows sorted by itemset, pairwise distinct.
    for (std::size_t i = 1; i < e.rows.size(); ++i) {
      EXPECT_LT(e.rows[i - 1].itemset, e.rows[i].itemset);
    }
  }
}

TEST(EncodeProperty, DuplicateBumpsExactlyOneCount) {
  auto catalog = ladder_catalog();
  auto base = make_txs({{0}, {1, 2}, {3}});
  auto e1 = encode(base, "D1", Interval::finite(0, 9), catalog);
  base.push_back({"t4", {1, 2}, Interval::finite(0, 9)});
  auto e2 = encode(base, "D1", Interval::finite(0, 9), catalog);

  EXPECT_EQ(e1.row_count(), e2.row_count());
  int bumped = 0;
  for (std::size_t i = 0; i < e1.rows.size(); ++i) {
    if (e2.rows[i].count == e1.rows[i].count + 1) {
      ++bumped;
      EXPECT_EQ(e1.rows[i].itemset, ItemSet({1, 2}));
    } else {
      EXPECT_EQ(e2.rows[i].count, e1.rows[i].count);
    }
  }
  EXPECT_EQ(bumped, 1);
}

TEST(Serialize, RoundTripsThroughCanonicalBytes) {
  auto catalog = ladder_catalog();
  auto e = encode(make_txs({{0}, {0}, {1, 4}, {2}}), "D1",
                  Interval(IntervalEndpoint::neg_inf(), IntervalEndpoint::at(9)), catalog);
  auto bytes = serialize(e);
  auto back = deserialize(bytes, catalog);
  EXPECT_EQ(back, e);
  EXPECT_THROW(deserialize(bytes.substr(0, bytes.size() - 1), catalog), Error);
  EXPECT_THROW(deserialize(bytes + "x", catalog), Error);
}

TEST(Serialize, JsonMirrorRoundTrips) {
  auto catalog = ladder_catalog();
  auto e = encode(make_txs({{0, 1}, {0, 1}, {2}}), "D7", Interval::finite(3, 14), catalog);
  auto j = encoded_to_json(e, catalog);
  EXPECT_EQ(j.at("total_tx").get<int64_t>(), 3);
  EXPECT_EQ(encoded_from_json(j, catalog), e);
}

TEST(Footprint, EmptyDatasetIsHeaderBaseline) {
  auto catalog = ladder_catalog();
  auto interval = Interval::finite(0, 9);
  auto e = encode({}, "D1", interval, catalog);
  EXPECT_EQ(footprint(e), footprint_raw("D1", interval, {}));
}

TEST(Footprint, AllDistinctCostsOnlyTheCountField) {
  auto catalog = ladder_catalog();
  auto interval = Interval::finite(0, 9);
  auto txs = make_txs({{0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2, 4}});
  auto e = encode(txs, "D1", interval, catalog);
  EXPECT_EQ(e.row_count(), static_cast<int64_t>(txs.size()));
  EXPECT_LE(footprint(e), footprint_raw("D1", interval, txs) + e.row_count() * kCountFieldBytes);
}

TEST(Footprint, HeavyDuplicationCollapses) {
  auto catalog = ladder_catalog();
  auto interval = Interval::finite(0, 9);
  std::vector<ItemSet> itemsets(1000, ItemSet{0, 1});
  auto txs = make_txs(itemsets);
  auto e = encode(txs, "D1", interval, catalog);
  EXPECT_EQ(e.row_count(), 1);
  EXPECT_LT(footprint(e), footprint_raw("D1", interval, txs) / 100);
}

}  // namespace
}  // namespace pbtm
