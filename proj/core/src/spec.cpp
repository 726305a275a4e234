#include "contest/spec.hpp"

#include <cmath>
#include <string>

#include "contest/errors.hpp"

namespace contest {
namespace {

using nlohmann::json;

double number_at(const json& j, const std::string& key, const std::string& path) {
  const std::string p = path + "/" + key;
  if (!j.contains(key)) throw InputError(p, "missing field");
  const auto& v = j.at(key);
  if (!v.is_number()) throw InputError(p, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw InputError(p, "expected a finite number");
  return d;
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) throw InputError(path, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw InputError(path, "expected a finite number");
  return d;
}

MeasureSpec parse(const json& j, const std::string& path) {
  if (!j.is_object()) throw InputError(path, "expected an object");
  if (!j.contains("type") || !j.at("type").is_string()) throw InputError(path + "/type", "missing string field");
  const auto type = j.at("type").get<std::string>();

  if (type == "atomic") {
    if (!j.contains("atoms") || !j.at("atoms").is_array()) throw InputError(path + "/atoms", "expected an array");
    MeasureSpec::Atomic a;
    const auto& arr = j.at("atoms");
    if (arr.empty()) throw InputError(path + "/atoms", "atomic measure needs at least one atom");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string p = path + "/atoms/" + std::to_string(i);
      if (!arr[i].is_array() || arr[i].size() != 2) throw InputError(p, "expected [location, weight]");
      const double x = number(arr[i][0], p + "/0");
      const double w = number(arr[i][1], p + "/1");
      if (x < 0.0) throw InputError(p + "/0", "location must be >= 0");
      if (w <= 0.0) throw InputError(p + "/1", "weight must be > 0");
      a.atoms.push_back({x, w});
    }
    return {a};
  }
  if (type == "uniform") {
    MeasureSpec::Uniform u{number_at(j, "a", path), number_at(j, "b", path)};
    if (!(u.a >= 0.0 && u.a < u.b)) throw InputError(path, "uniform requires 0 <= a < b");
    return {u};
  }
  if (type == "beta23") return {MeasureSpec::Beta23{}};
  if (type == "pointmass") {
    MeasureSpec::PointMass pm{number_at(j, "x", path), j.contains("w") ? number_at(j, "w", path) : 1.0};
    if (pm.x < 0.0) throw InputError(path + "/x", "location must be >= 0");
    if (pm.w <= 0.0) throw InputError(path + "/w", "weight must be > 0");
    return {pm};
  }
  if (type == "mixture") {
    if (!j.contains("components") || !j.at("components").is_array() || j.at("components").empty()) {
      throw InputError(path + "/components", "expected a non-empty array");
    }
    MeasureSpec::Mixture m;
    const auto& arr = j.at("components");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string p = path + "/components/" + std::to_string(i);
      if (!arr[i].is_array() || arr[i].size() != 2) throw InputError(p, "expected [weight, spec]");
      const double w = number(arr[i][0], p + "/0");
      if (w <= 0.0) throw InputError(p + "/0", "mixture weight must be > 0");
      m.weights.push_back(w);
      m.components.push_back(parse(arr[i][1], p + "/1"));
    }
    return {m};
  }
  throw InputError(path + "/type", "unknown measure type '" + type + "'");
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

MeasureSpec parse_measure_spec(const nlohmann::json& j) { return parse(j, ""); }

nlohmann::json to_json(const MeasureSpec& spec) {
  return std::visit(
      overloaded{
          [](const MeasureSpec::Atomic& a) {
            json atoms = json::array();
            for (const auto& at : a.atoms) atoms.push_back({at.location, at.weight});
            return json{{"type", "atomic"}, {"atoms", atoms}};
          },
          [](const MeasureSpec::Uniform& u) { return json{{"type", "uniform"}, {"a", u.a}, {"b", u.b}}; },
          [](const MeasureSpec::Beta23&) { return json{{"type", "beta23"}}; },
          [](const MeasureSpec::PointMass& p) { return json{{"type", "pointmass"}, {"x", p.x}, {"w", p.w}}; },
          [](const MeasureSpec::Mixture& m) {
            json comps = json::array();
            for (std::size_t i = 0; i < m.components.size(); ++i) {
              comps.push_back({m.weights[i], to_json(m.components[i])});
            }
            return json{{"type", "mixture"}, {"components", comps}};
          },
      },
      spec.value);
}

AnalyticMeasure resolve(const MeasureSpec& spec) {
  return std::visit(
      overloaded{
          [](const MeasureSpec::Atomic& a) { return AnalyticMeasure(FiniteAtomicMeasure::from_atoms(a.atoms)); },
          [](const MeasureSpec::Uniform& u) { return AnalyticMeasure::uniform(u.a, u.b); },
          [](const MeasureSpec::Beta23&) { return AnalyticMeasure::beta23(); },
          [](const MeasureSpec::PointMass& p) { return AnalyticMeasure::point_mass(p.x, p.w); },
          [](const MeasureSpec::Mixture& m) {
            std::vector<std::pair<double, AnalyticMeasure>> parts;
            for (std::size_t i = 0; i < m.components.size(); ++i) {
              parts.emplace_back(m.weights[i], resolve(m.components[i]));
            }
            return AnalyticMeasure::mixture(std::move(parts));
          },
      },
      spec.value);
}

std::optional<FiniteAtomicMeasure> as_atomic(const MeasureSpec& spec) {
  if (const auto* a = std::get_if<MeasureSpec::Atomic>(&spec.value)) {
    return FiniteAtomicMeasure::from_atoms(a->atoms);
  }
  if (const auto* p = std::get_if<MeasureSpec::PointMass>(&spec.value)) {
    return FiniteAtomicMeasure({p->x}, {p->w});
  }
  return std::nullopt;
}

}  // namespace contest
