#include "pbtm/miner.hpp"

#include <algorithm>

#include "pbtm/error.hpp"

namespace pbtm {

namespace {

// The two occurrence sources share the mining core: merged rows weight each
// distinct itemset by count+1, the raw source scans every transaction.
struct EncodedSource {
  const EncodedInterval& encoded;
  int64_t total() const { return encoded.total_tx; }
  int64_t occurrence_of(const ItemSet& x) const { return occurrence(x, encoded); }
  std::size_t longest_row() const {
    std::size_t longest = 0;
    for (const auto& row : encoded.rows) longest = std::max(longest, row.itemset.size());
    return longest;
  }
  ItemSet universe() const {
    std::vector<ItemId> ids;
    for (const auto& row : encoded.rows) ids.insert(ids.end(), row.itemset.begin(), row.itemset.end());
    return normalized_itemset(std::move(ids));
  }
};

struct RawSource {
  const std::vector<Transaction>& transactions;
  int64_t total() const { return static_cast<int64_t>(transactions.size()); }
  int64_t occurrence_of(const ItemSet& x) const { return occurrence_raw(x, transactions); }
  std::size_t longest_row() const {
    std::size_t longest = 0;
    for (const auto& t : transactions) longest = std::max(longest, t.items.size());
    return longest;
  }
  ItemSet universe() const {
    std::vector<ItemId> ids;
    for (const auto& t : transactions) ids.insert(ids.end(), t.items.begin(), t.items.end());
    return normalized_itemset(std::move(ids));
  }
};

// Acceptance predicate shared by the miner and the brute-force oracle:
// present at least once, ws >= wmnspt * total_tx (the Eq-1/Eq-2 equivalence),
// plus the optional plain-support floor.
bool accepts(int64_t occ, const Rational& weight_sum, int64_t total, const MiningConfig& cfg) {
  if (occ < 1) return false;
  if (weight_sum * Rational(occ) < cfg.wmnspt * Rational(total)) return false;
  if (cfg.min_s && Rational(occ) < *cfg.min_s * Rational(total)) return false;
  return true;
}

FrequentItemset make_frequent(ItemSet itemset, const std::string& interval_id, int64_t occ,
                              Rational weight_sum, int64_t total, const MiningConfig& cfg) {
  FrequentItemset f;
  f.itemset = std::move(itemset);
  f.interval_id = interval_id;
  f.occ = occ;
  f.weight_sum = weight_sum;
  f.ws = weight_sum * Rational(occ);
  f.bs = Rational(total) * cfg.wmnspt / weight_sum;
  return f;
}

// Largest total weight a superset could add to X: the (budget) heaviest
// catalog weights not already in X. `weights_desc` is the catalog sorted by
// weight descending.
Rational extension_cap(const ItemSet& x, std::size_t budget,
                       const std::vector<Item>& weights_desc) {
  Rational cap;
  std::size_t taken = 0;
  for (const auto& item : weights_desc) {
    if (taken == budget) break;
    if (std::binary_search(x.begin(), x.end(), item.id)) continue;
    cap += item.weight;
    ++taken;
  }
  return cap;
}

template <typename Source>
std::vector<FrequentItemset> mine_core(const Source& src, const std::string& interval_id,
                                       const MiningConfig& cfg, const Catalog& catalog) {
  std::vector<FrequentItemset> out;
  const int64_t total = src.total();
  if (total == 0) return out;

  const std::size_t longest = src.longest_row();
  const ItemSet universe = src.universe();
  std::vector<Item> weights_desc(catalog.items());
  std::stable_sort(weights_desc.begin(), weights_desc.end(),
                   [](const Item& a, const Item& b) { return b.weight < a.weight; });

  const Rational required = cfg.wmnspt * Rational(total);  // ws(X) must reach this

  struct Candidate {
    ItemSet itemset;
    int64_t occ;
    Rational weight_sum;
  };

  std::size_t max_level = longest;
  if (cfg.max_k) max_level = std::min<std::size_t>(max_level, static_cast<std::size_t>(*cfg.max_k));

  std::vector<Candidate> alive;
  for (std::size_t level = 1; level <= max_level; ++level) {
    // Candidates extend the previous level's survivors with items beyond
    // their largest member, so each itemset is generated exactly once.
    std::vector<Candidate> next;
    auto consider = [&](ItemSet itemset, const Rational& weight_sum) {
      int64_t occ = src.occurrence_of(itemset);
      if (occ < 1) return;  // no superset can occur either
      if (accepts(occ, weight_sum, total, cfg)) {
        out.push_back(make_frequent(itemset, interval_id, occ, weight_sum, total, cfg));
      }
      if (level == max_level) return;
      // Admissible prune: any superset Y has occ(Y) <= occ and
      // weight_sum(Y) <= weight_sum + cap, so Y can only be frequent when
      // occ * (weight_sum + cap) reaches the required weighted support.
      Rational cap = extension_cap(itemset, longest - level, weights_desc);
      if (Rational(occ) * (weight_sum + cap) < required) return;
      next.push_back(Candidate{std::move(itemset), occ, weight_sum});
    };

    if (level == 1) {
      for (ItemId id : universe) consider(ItemSet{id}, catalog.weight(id));
    } else {
      for (const auto& parent : alive) {
        auto from = std::upper_bound(universe.begin(), universe.end(), parent.itemset.back());
        for (auto it = from; it != universe.end(); ++it) {
          ItemSet extended = parent.itemset;
          extended.push_back(*it);
          consider(std::move(extended), parent.weight_sum + catalog.weight(*it));
        }
      }
    }
    alive = std::move(next);
    if (alive.empty()) break;
  }

  std::sort(out.begin(), out.end(), [](const FrequentItemset& a, const FrequentItemset& b) {
    if (a.itemset.size() != b.itemset.size()) return a.itemset.size() < b.itemset.size();
    return a.itemset < b.itemset;
  });
  return out;
}

}  // namespace

int64_t occurrence(const ItemSet& x, const EncodedInterval& encoded) {
  int64_t occ = 0;
  for (const auto& row : encoded.rows) {
    if (is_subset(x, row.itemset)) occ += row.occurrences();
  }
  return occ;
}

int64_t occurrence_raw(const ItemSet& x, const std::vector<Transaction>& transactions) {
  int64_t occ = 0;
  for (const auto& t : transactions) {
    if (is_subset(x, t.items)) ++occ;
  }
  return occ;
}

Rational bounded_support(const ItemSet& x, const EncodedInterval& encoded, const MiningConfig& cfg,
                         const Catalog& catalog) {
  Rational weight_sum = catalog.weight_sum(x);
  if (weight_sum.is_zero()) raise(Errc::ZeroWeight, "bounded support of a zero-weight itemset");
  return Rational(encoded.total_tx) * cfg.wmnspt / weight_sum;
}

std::vector<FrequentItemset> mine_frequent(const EncodedInterval& encoded, const MiningConfig& cfg,
                                           const Catalog& catalog) {
  return mine_core(EncodedSource{encoded}, encoded.interval_id, cfg, catalog);
}

std::vector<FrequentItemset> mine_frequent_raw(const std::vector<Transaction>& transactions,
                                               const std::string& interval_id,
                                               const MiningConfig& cfg, const Catalog& catalog) {
  return mine_core(RawSource{transactions}, interval_id, cfg, catalog);
}

std::vector<FrequentItemset> brute_force_frequent(const EncodedInterval& encoded,
                                                  const MiningConfig& cfg,
                                                  const Catalog& catalog) {
  if (catalog.size() > 20) {
    raise(Errc::UniverseTooLarge, "brute-force oracle limited to 20 catalog items, got " +
                                      std::to_string(catalog.size()));
  }
  std::vector<FrequentItemset> out;
  if (encoded.total_tx == 0) return out;

  const auto n = static_cast<uint32_t>(catalog.size());
  for (uint32_t mask = 1; mask < (1u << n); ++mask) {
    ItemSet itemset;
    for (uint32_t bit = 0; bit < n; ++bit) {
      if (mask & (1u << bit)) itemset.push_back(bit);
    }
    if (cfg.max_k && itemset.size() > static_cast<std::size_t>(*cfg.max_k)) continue;
    int64_t occ = occurrence(itemset, encoded);
    Rational weight_sum = catalog.weight_sum(itemset);
    if (accepts(occ, weight_sum, encoded.total_tx, cfg)) {
      out.push_back(
          make_frequent(std::move(itemset), encoded.interval_id, occ, weight_sum, encoded.total_tx, cfg));
    }
  }
  std::sort(out.begin(), out.end(), [](const FrequentItemset& a, const FrequentItemset& b) {
    if (a.itemset.size() != b.itemset.size()) return a.itemset.size() < b.itemset.size();
    return a.itemset < b.itemset;
  });
  return out;
}

}  // namespace pbtm
