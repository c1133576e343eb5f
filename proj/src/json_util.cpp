#include "pbtm/json_util.hpp"

#include "pbtm/error.hpp"

namespace pbtm {

nlohmann::json endpoint_to_json(const IntervalEndpoint& e) {
  if (e.is_neg_inf()) return "-inf";
  if (e.is_pos_inf()) return "+inf";
  return e.tick();
}

IntervalEndpoint endpoint_from_json(const nlohmann::json& j) {
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "-inf") return IntervalEndpoint::neg_inf();
    if (s == "+inf" || s == "inf") return IntervalEndpoint::pos_inf();
    raise(Errc::InputError, "bad interval endpoint '" + s + "'");
  }
  if (!j.is_number_integer()) raise(Errc::InputError, "interval endpoint must be integer or +/-inf");
  return IntervalEndpoint::at(j.get<int64_t>());
}

nlohmann::json interval_to_json(const Interval& interval) {
  return nlohmann::json{{"start", endpoint_to_json(interval.start())},
                        {"end", endpoint_to_json(interval.end())}};
}

Interval interval_from_json(const nlohmann::json& j) {
  if (j.is_array()) {
    if (j.size() != 2) raise(Errc::InputError, "interval array must be [start, end]");
    return Interval(endpoint_from_json(j[0]), endpoint_from_json(j[1]));
  }
  return Interval(endpoint_from_json(j.at("start")), endpoint_from_json(j.at("end")));
}

nlohmann::json rational_to_json(const Rational& r) {
  return nlohmann::json{{"value", r.str()}, {"approx", r.to_double()}};
}

}  // namespace pbtm
