#include "pbtm/items.hpp"

#include <algorithm>

#include "pbtm/error.hpp"

namespace pbtm {

ItemId Catalog::add(std::string label, Rational weight) {
  if (label.empty()) raise(Errc::InputError, "item label must be non-empty");
  if (label.find(',') != std::string::npos || label.find(';') != std::string::npos) {
    raise(Errc::InputError, "item label '" + label + "' may not contain ',' or ';'");
  }
  if (weight <= Rational(0) || weight > Rational(1)) {
    raise(Errc::InputError, "item '" + label + "' weight " + weight.str() + " outside (0,1]");
  }
  if (by_label_.contains(label)) raise(Errc::InputError, "duplicate item label '" + label + "'");
  ItemId id = static_cast<ItemId>(items_.size());
  by_label_.emplace(label, id);
  items_.push_back(Item{id, std::move(label), weight});
  return id;
}

const Item& Catalog::item(ItemId id) const {
  if (id >= items_.size()) raise(Errc::UnknownItem, "item id " + std::to_string(id) + " not in catalog");
  return items_[id];
}

std::optional<ItemId> Catalog::find(std::string_view label) const {
  auto it = by_label_.find(std::string(label));
  if (it == by_label_.end()) return std::nullopt;
  return it->second;
}

ItemId Catalog::require(std::string_view label) const {
  auto id = find(label);
  if (!id) raise(Errc::UnknownItem, "item label '" + std::string(label) + "' not in catalog");
  return *id;
}

Rational Catalog::weight_sum(const ItemSet& itemset) const {
  Rational sum;
  for (ItemId id : itemset) sum += weight(id);
  return sum;
}

std::string Catalog::format_itemset(const ItemSet& itemset, char sep) const {
  std::string out;
  for (std::size_t i = 0; i < itemset.size(); ++i) {
    if (i > 0) out.push_back(sep);
    out += item(itemset[i]).label;
  }
  return out;
}

ItemSet Catalog::parse_itemset(std::string_view text, char sep) const {
  std::vector<ItemId> ids;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t next = text.find(sep, pos);
    std::string_view token =
        next == std::string_view::npos ? text.substr(pos) : text.substr(pos, next - pos);
    if (!token.empty()) ids.push_back(require(token));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return normalized_itemset(std::move(ids));
}

bool is_subset(const ItemSet& sub, const ItemSet& super) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

bool disjoint(const ItemSet& a, const ItemSet& b) {
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia == *ib) return false;
    if (*ia < *ib) {
      ++ia;
    } else {
      ++ib;
    }
  }
  return true;
}

ItemSet set_union(const ItemSet& a, const ItemSet& b) {
  ItemSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

ItemSet set_minus(const ItemSet& a, const ItemSet& b) {
  ItemSet out;
  out.reserve(a.size());
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

ItemSet normalized_itemset(std::vector<ItemId> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

}  // namespace pbtm
