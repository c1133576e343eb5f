#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "pbtm/classifier.hpp"
#include "pbtm/encoder.hpp"
#include "pbtm/miner.hpp"
#include "pbtm/rules.hpp"
#include "pbtm/synth.hpp"
#include "pbtm/transaction.hpp"

namespace pbtm {

// ---- CSV formats -----------------------------------------------------
//
// transactions: tid,items,start,end      items = ';'-joined labels,
//                                        endpoints integer or -inf/+inf
// weights:      label,weight
// frequents:    interval_id,itemset,occ,weight_sum,ws,bs
// rules:        antecedent,consequent,interval_ids,span_start,span_end,
//               occ_ratio_confidence,raw_confidence,support,source
// instances:    attr_1,...,attr_n,label  (label column optional on predict)

Catalog read_weights_csv(const std::filesystem::path& path);
void write_weights_csv(const std::filesystem::path& path, const Catalog& catalog);

std::vector<Transaction> read_transactions_csv(const std::filesystem::path& path,
                                               const Catalog& catalog);
void write_transactions_csv(const std::filesystem::path& path,
                            const std::vector<Transaction>& transactions, const Catalog& catalog);

std::string frequents_to_csv(const std::vector<FrequentItemset>& frequents, const Catalog& catalog);
nlohmann::json frequents_to_json(const std::vector<FrequentItemset>& frequents,
                                 const Catalog& catalog);

std::string rules_to_csv(const std::vector<TemporalRule>& rules, const Catalog& catalog);
nlohmann::json rules_to_json(const std::vector<TemporalRule>& rules, const Catalog& catalog);

// ---- Encoded store (multi-interval container) ------------------------
// Binary: "PBTE", u32 count, then per interval { u64 byte_len, canonical
// bytes }. JSON mirror: array of encoded-interval objects.

void write_encoded_store(const std::filesystem::path& path,
                         const std::vector<EncodedInterval>& intervals, const Catalog& catalog,
                         bool as_json);
std::vector<EncodedInterval> read_encoded_store(const std::filesystem::path& path,
                                                const Catalog& catalog);

// ---- Config fragments (JSON) ------------------------------------------

/// {"uniform": {"origin": o, "width": w, "count": n}} or
/// {"intervals": [[a, b], ...]}.
IntervalPartition partition_from_json(const nlohmann::json& j);
nlohmann::json partition_to_json(const IntervalPartition& partition);

SynthConfig synth_config_from_json(const nlohmann::json& j);

/// Schema file: {"classes": [...], "attributes": [{"name", "domain"}...]}
/// and/or {"rule_features": {"items", "intervals", "confidence_bins",
/// "support_bins"}} from which the attribute list is derived.
struct SchemaFile {
  Schema schema;
  std::optional<RuleFeatureConfig> rule_features;
};
SchemaFile schema_from_json(const nlohmann::json& j);
SchemaFile read_schema_file(const std::filesystem::path& path);

std::vector<Instance> read_instances_csv(const std::filesystem::path& path, const Schema& schema,
                                         bool require_label);

nlohmann::json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace pbtm
