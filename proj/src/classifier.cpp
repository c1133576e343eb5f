#include "pbtm/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pbtm/error.hpp"

namespace pbtm {

uint32_t Schema::value_index(std::size_t attribute, std::string_view value) const {
  const auto& spec = attributes.at(attribute);
  for (std::size_t i = 0; i < spec.domain.size(); ++i) {
    if (spec.domain[i] == value) return static_cast<uint32_t>(i);
  }
  raise(Errc::SchemaMismatch,
        "value '" + std::string(value) + "' not in domain of attribute '" + spec.name + "'");
}

uint32_t Schema::class_index(std::string_view label) const {
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (classes[i] == label) return static_cast<uint32_t>(i);
  }
  raise(Errc::UnknownLabel, "class '" + std::string(label) + "' not declared");
}

Instance make_instance(const Schema& schema, std::span<const std::string> values,
                       std::optional<std::string_view> label) {
  if (values.size() != schema.arity()) {
    raise(Errc::SchemaMismatch, "instance has " + std::to_string(values.size()) +
                                    " values, schema expects " + std::to_string(schema.arity()));
  }
  Instance out;
  out.values.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    out.values.push_back(schema.value_index(i, values[i]));
  }
  if (label) out.label = schema.class_index(*label);
  return out;
}

NBModel NBModel::train(const Schema& schema, const std::vector<Instance>& instances, double alpha) {
  if (instances.empty()) raise(Errc::EmptyTraining, "no training instances");
  if (alpha < 0) raise(Errc::InputError, "alpha must be non-negative");
  const std::size_t m = schema.classes.size();
  if (m == 0) raise(Errc::InputError, "schema declares no classes");

  std::vector<int64_t> class_counts(m, 0);
  std::vector<std::vector<std::vector<int64_t>>> value_counts(schema.arity());
  for (std::size_t k = 0; k < schema.arity(); ++k) {
    value_counts[k].assign(m, std::vector<int64_t>(schema.attributes[k].domain.size(), 0));
  }

  for (const auto& inst : instances) {
    if (!inst.label) raise(Errc::UnknownLabel, "training instance without a label");
    if (*inst.label >= m) raise(Errc::UnknownLabel, "label index out of range");
    if (inst.values.size() != schema.arity()) raise(Errc::SchemaMismatch, "instance arity mismatch");
    ++class_counts[*inst.label];
    for (std::size_t k = 0; k < schema.arity(); ++k) {
      value_counts[k][*inst.label].at(inst.values[k]) += 1;
    }
  }

  NBModel model;
  model.schema_ = schema;
  model.alpha_ = alpha;
  const auto n = static_cast<double>(instances.size());
  model.priors_.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    model.priors_[i] =
        (static_cast<double>(class_counts[i]) + alpha) / (n + alpha * static_cast<double>(m));
  }
  model.conditionals_.resize(schema.arity());
  for (std::size_t k = 0; k < schema.arity(); ++k) {
    const auto domain_size = static_cast<double>(schema.attributes[k].domain.size());
    model.conditionals_[k].assign(m, {});
    for (std::size_t i = 0; i < m; ++i) {
      auto& table = model.conditionals_[k][i];
      table.resize(schema.attributes[k].domain.size());
      const double denom = static_cast<double>(class_counts[i]) + alpha * domain_size;
      for (std::size_t v = 0; v < table.size(); ++v) {
        table[v] = denom == 0 ? 0.0 : (static_cast<double>(value_counts[k][i][v]) + alpha) / denom;
      }
    }
  }
  return model;
}

NBModel NBModel::from_tables(Schema schema, std::vector<double> priors,
                             std::vector<std::vector<std::vector<double>>> conditionals,
                             double alpha) {
  if (priors.size() != schema.classes.size() || conditionals.size() != schema.arity()) {
    raise(Errc::SchemaMismatch, "table shapes do not match schema");
  }
  NBModel model;
  model.schema_ = std::move(schema);
  model.priors_ = std::move(priors);
  model.conditionals_ = std::move(conditionals);
  model.alpha_ = alpha;
  return model;
}

std::vector<double> NBModel::posterior(const Instance& x) const {
  if (x.values.size() != schema_.arity()) raise(Errc::SchemaMismatch, "instance arity mismatch");
  const std::size_t m = schema_.classes.size();
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();

  std::vector<double> log_scores(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    double lp = priors_[i] > 0 ? std::log(priors_[i]) : kNegInf;
    for (std::size_t k = 0; k < schema_.arity() && lp != kNegInf; ++k) {
      double p = conditionals_[k][i].at(x.values[k]);
      lp = p > 0 ? lp + std::log(p) : kNegInf;
    }
    log_scores[i] = lp;
  }

  double best = *std::max_element(log_scores.begin(), log_scores.end());
  if (best == kNegInf) {
    raise(Errc::ZeroEvidence, "every class has zero joint likelihood for this instance");
  }
  std::vector<double> out(m);
  double sum = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    out[i] = log_scores[i] == kNegInf ? 0.0 : std::exp(log_scores[i] - best);
    sum += out[i];
  }
  for (auto& p : out) p /= sum;
  return out;
}

uint32_t NBModel::predict(const Instance& x) const {
  auto post = posterior(x);
  std::size_t best = 0;
  for (std::size_t i = 1; i < post.size(); ++i) {
    if (post[i] > post[best]) best = i;  // strict: ties keep the lowest index
  }
  return static_cast<uint32_t>(best);
}

nlohmann::json NBModel::to_json() const {
  nlohmann::json attributes = nlohmann::json::array();
  for (std::size_t k = 0; k < schema_.arity(); ++k) {
    nlohmann::json tables = nlohmann::json::object();
    for (std::size_t i = 0; i < schema_.classes.size(); ++i) {
      tables[schema_.classes[i]] = conditionals_[k][i];
    }
    attributes.push_back({{"name", schema_.attributes[k].name},
                          {"domain", schema_.attributes[k].domain},
                          {"conditionals", std::move(tables)}});
  }
  nlohmann::json priors = nlohmann::json::object();
  for (std::size_t i = 0; i < schema_.classes.size(); ++i) {
    priors[schema_.classes[i]] = priors_[i];
  }
  return nlohmann::json{{"classes", schema_.classes},
                        {"alpha", alpha_},
                        {"priors", std::move(priors)},
                        {"attributes", std::move(attributes)}};
}

namespace {

std::vector<std::string> bin_labels(const BinSpec& spec) {
  if (spec.edges.size() < 2) raise(Errc::InputError, "bin spec needs at least two edges");
  if (!std::is_sorted(spec.edges.begin(), spec.edges.end())) {
    raise(Errc::InputError, "bin edges must be ascending");
  }
  std::size_t bins = spec.edges.size() - 1;
  if (!spec.labels.empty()) {
    if (spec.labels.size() != bins) raise(Errc::InputError, "bin labels must match edge count - 1");
    return spec.labels;
  }
  std::vector<std::string> labels;
  labels.reserve(bins);
  for (std::size_t i = 0; i < bins; ++i) labels.push_back("b" + std::to_string(i));
  return labels;
}

// Out-of-range values clamp to the boundary bins so binning stays total.
std::size_t bin_of(const BinSpec& spec, double value) {
  std::size_t bins = spec.edges.size() - 1;
  if (value < spec.edges.front()) return 0;
  for (std::size_t i = 0; i + 1 < bins; ++i) {
    if (value < spec.edges[i + 1]) return i;
  }
  return bins - 1;
}

}  // namespace

Schema feature_schema(const RuleFeatureConfig& cfg, std::vector<std::string> classes) {
  Schema schema;
  schema.classes = std::move(classes);
  for (const auto& item : cfg.items) {
    schema.attributes.push_back({"has_" + item, {"0", "1"}});
  }
  if (!cfg.interval_ids.empty()) {
    schema.attributes.push_back({"interval", cfg.interval_ids});
  }
  schema.attributes.push_back({"confidence_bin", bin_labels(cfg.confidence_bins)});
  schema.attributes.push_back({"support_bin", bin_labels(cfg.support_bins)});
  return schema;
}

Instance featurize_rule(const TemporalRule& rule, const RuleFeatureConfig& cfg,
                        const Schema& schema, const Catalog& catalog) {
  std::vector<std::string> values;
  ItemSet members = set_union(rule.antecedent, rule.consequent);
  for (const auto& label : cfg.items) {
    ItemId id = catalog.require(label);
    bool present = std::binary_search(members.begin(), members.end(), id);
    values.push_back(present ? "1" : "0");
  }
  if (!cfg.interval_ids.empty()) {
    if (rule.interval_ids.empty()) raise(Errc::SchemaMismatch, "rule carries no interval id");
    values.push_back(rule.interval_ids.front());
  }
  auto conf_labels = bin_labels(cfg.confidence_bins);
  auto supp_labels = bin_labels(cfg.support_bins);
  values.push_back(conf_labels[bin_of(cfg.confidence_bins, rule.confidence.to_double())]);
  values.push_back(supp_labels[bin_of(cfg.support_bins, rule.support.to_double())]);
  return make_instance(schema, values, std::nullopt);
}

}  // namespace pbtm
