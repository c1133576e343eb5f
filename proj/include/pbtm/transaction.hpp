#pragma once

#include <string>
#include <vector>

#include "pbtm/interval.hpp"
#include "pbtm/items.hpp"

namespace pbtm {

/// <tid, itemset, valid time>. The itemset is sorted and duplicate-free.
struct Transaction {
  std::string tid;
  ItemSet items;
  Interval valid = Interval::all();

  bool operator==(const Transaction& other) const = default;
};

/// Result of splitting a transaction multiset over a partition. Transactions
/// whose valid interval straddles a boundary (or falls outside the horizon)
/// go to the spill list instead of being silently truncated.
struct PartitionedTransactions {
  std::vector<std::vector<Transaction>> by_interval;  // parallel to partition.intervals()
  std::vector<Transaction> spill;
};

/// Id of the unique partition interval fully containing t.valid, if any.
std::optional<std::string> assign_interval(const Transaction& t, const IntervalPartition& p);

PartitionedTransactions partition_transactions(const std::vector<Transaction>& transactions,
                                               const IntervalPartition& p);

}  // namespace pbtm
