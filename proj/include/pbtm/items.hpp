#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pbtm/rational.hpp"

namespace pbtm {

using ItemId = uint32_t;

/// Sorted ascending, duplicate-free.
using ItemSet = std::vector<ItemId>;

struct Item {
  ItemId id;
  std::string label;
  Rational weight;  // priority, in (0,1]
};

/// Item universe with user-assigned priority weights. Ids are dense and
/// assigned in insertion order, so a weights file always maps to the same
/// ids.
class Catalog {
public:
  ItemId add(std::string label, Rational weight);

  std::size_t size() const { return items_.size(); }
  const Item& item(ItemId id) const;
  std::optional<ItemId> find(std::string_view label) const;
  ItemId require(std::string_view label) const;
  const std::vector<Item>& items() const { return items_; }

  Rational weight(ItemId id) const { return item(id).weight; }
  Rational weight_sum(const ItemSet& itemset) const;

  std::string format_itemset(const ItemSet& itemset, char sep = ';') const;
  ItemSet parse_itemset(std::string_view text, char sep = ';') const;

private:
  std::vector<Item> items_;
  std::unordered_map<std::string, ItemId> by_label_;
};

bool is_subset(const ItemSet& sub, const ItemSet& super);
bool disjoint(const ItemSet& a, const ItemSet& b);
ItemSet set_union(const ItemSet& a, const ItemSet& b);
ItemSet set_minus(const ItemSet& a, const ItemSet& b);

/// Sorts and dedupes an arbitrary id list into a valid ItemSet.
ItemSet normalized_itemset(std::vector<ItemId> ids);

}  // namespace pbtm
