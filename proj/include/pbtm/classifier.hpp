#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "pbtm/items.hpp"
#include "pbtm/rules.hpp"

namespace pbtm {

struct AttributeSpec {
  std::string name;
  std::vector<std::string> domain;  // ordered categorical values
};

struct Schema {
  std::vector<AttributeSpec> attributes;
  std::vector<std::string> classes;

  std::size_t arity() const { return attributes.size(); }
  uint32_t value_index(std::size_t attribute, std::string_view value) const;
  uint32_t class_index(std::string_view label) const;
};

/// Categorical tuple; values index into the schema's attribute domains.
struct Instance {
  std::vector<uint32_t> values;
  std::optional<uint32_t> label;
};

Instance make_instance(const Schema& schema, std::span<const std::string> values,
                       std::optional<std::string_view> label);

/// Categorical naive Bayes with Laplace smoothing. alpha = 0 reproduces the
/// bare maximum-likelihood ratios; the default alpha = 1 keeps unseen values
/// from zeroing a class.
class NBModel {
public:
  static NBModel train(const Schema& schema, const std::vector<Instance>& instances, double alpha);

  /// Builds a model from explicit tables without renormalizing. Exists for
  /// scale-invariance checks and model import; trained models always carry
  /// normalized tables.
  static NBModel from_tables(Schema schema, std::vector<double> priors,
                             std::vector<std::vector<std::vector<double>>> conditionals,
                             double alpha);

  /// P(class | x), accumulated in log space and normalized to sum 1. Throws
  /// Errc::ZeroEvidence when every class has zero joint likelihood (possible
  /// only with alpha = 0).
  std::vector<double> posterior(const Instance& x) const;

  /// Argmax of the posterior; exact ties go to the lowest class index.
  uint32_t predict(const Instance& x) const;

  const Schema& schema() const { return schema_; }
  double alpha() const { return alpha_; }
  double prior(uint32_t cls) const { return priors_.at(cls); }
  /// P(value | class) for one attribute.
  double conditional(std::size_t attribute, uint32_t cls, uint32_t value) const {
    return conditionals_.at(attribute).at(cls).at(value);
  }

  nlohmann::json to_json() const;

private:
  Schema schema_;
  std::vector<double> priors_;  // indexed by class
  // conditionals_[attribute][class][value]
  std::vector<std::vector<std::vector<double>>> conditionals_;
  double alpha_ = 1.0;
};

/// How mined rules become categorical instances: presence flags for a chosen
/// item subset, the rule's (first) interval id, and binned confidence and
/// support.
struct BinSpec {
  std::vector<double> edges;        // ascending, at least two
  std::vector<std::string> labels;  // edges.size()-1 labels; auto "b0".. when empty
};

struct RuleFeatureConfig {
  std::vector<std::string> items;
  std::vector<std::string> interval_ids;
  BinSpec confidence_bins;
  BinSpec support_bins;
};

/// Attribute schema induced by a feature config (classes supplied by the
/// caller).
Schema feature_schema(const RuleFeatureConfig& cfg, std::vector<std::string> classes);

Instance featurize_rule(const TemporalRule& rule, const RuleFeatureConfig& cfg,
                        const Schema& schema, const Catalog& catalog);

}  // namespace pbtm
