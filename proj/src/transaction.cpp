#include "pbtm/transaction.hpp"

namespace pbtm {

std::optional<std::string> assign_interval(const Transaction& t, const IntervalPartition& p) {
  auto index = p.find_containing(t.valid);
  if (!index) return std::nullopt;
  return p.at(*index).id;
}

PartitionedTransactions partition_transactions(const std::vector<Transaction>& transactions,
                                               const IntervalPartition& p) {
  PartitionedTransactions out;
  out.by_interval.resize(p.size());
  for (const auto& t : transactions) {
    auto index = p.find_containing(t.valid);
    if (index) {
      out.by_interval[*index].push_back(t);
    } else {
      out.spill.push_back(t);
    }
  }
  return out;
}

}  // namespace pbtm
