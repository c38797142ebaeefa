#include "alemass/catalog.hpp"

#include "alemass/orbifold.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace alemass {

namespace {

std::map<std::string, double> parse_params(const std::string& body, const std::string& context) {
  std::map<std::string, double> params;
  if (body.empty()) return params;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(context + ": expected key=value, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(item.substr(eq + 1), &used);
    } catch (const std::exception&) {
      throw std::invalid_argument(context + ": bad numeric value in '" + item + "'");
    }
    if (used != item.size() - eq - 1)
      throw std::invalid_argument(context + ": trailing characters in '" + item + "'");
    if (!params.emplace(key, value).second)
      throw std::invalid_argument(context + ": duplicate key '" + key + "'");
  }
  return params;
}

double take(std::map<std::string, double>& params, const std::string& key) {
  const auto it = params.find(key);
  if (it == params.end()) throw std::invalid_argument("catalog: missing parameter '" + key + "'");
  const double v = it->second;
  params.erase(it);
  return v;
}

double take_or(std::map<std::string, double>& params, const std::string& key, double dflt) {
  const auto it = params.find(key);
  if (it == params.end()) return dflt;
  const double v = it->second;
  params.erase(it);
  return v;
}

void expect_empty(const std::map<std::string, double>& params, const std::string& context) {
  if (!params.empty())
    throw std::invalid_argument(context + ": unknown parameter '" + params.begin()->first + "'");
}

// g = (1 + c rho^-rate) * delta with closed-form first and second derivatives.
MetricField conformal_like_field(double c, double rate, const AsymptoticChart& chart,
                                 const std::string& label) {
  MetricField field;
  field.chart = chart;
  field.label = label;
  field.mode = DerivativeMode::Analytic;
  field.g = [c, rate](const Vec4& x) -> Mat4 {
    const double rho = x.norm();
    return (1.0 + c * std::pow(rho, -rate)) * Mat4::Identity();
  };
  field.dg = [c, rate](const Vec4& x) {
    const double rho = x.norm();
    const double df = -rate * c * std::pow(rho, -rate - 2.0);
    MetricDerivatives out;
    for (int l = 0; l < 4; ++l) out.d[l] = df * x(l) * Mat4::Identity();
    return out;
  };
  field.d2g = [c, rate](const Vec4& x) {
    const double rho = x.norm();
    const double a = -rate * c * std::pow(rho, -rate - 2.0);
    const double b = rate * (rate + 2.0) * c * std::pow(rho, -rate - 4.0);
    MetricSecondDerivatives out;
    for (int l = 0; l < 4; ++l)
      for (int m = 0; m < 4; ++m)
        out.d2[l][m] = ((l == m ? a : 0.0) + b * x(l) * x(m)) * Mat4::Identity();
    return out;
  };
  return field;
}

void scalar_flat_gate(const MetricField& field, const std::string& label) {
  const double lo = 1.5 * field.chart.inner_radius, hi = 100.0 * field.chart.inner_radius;
  const Vec4 dirs[3] = {Vec4(1, 0, 0, 0), Vec4(0.5, 0.5, 0.5, 0.5),
                        Vec4(0, 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 0)};
  for (int i = 0; i < 20; ++i) {
    const double rho = lo * std::pow(hi / lo, i / 19.0);
    for (const Vec4& n : dirs) {
      const double s = scalar_curvature(field, rho * n);
      if (std::abs(s) > 1e-6)
        throw std::runtime_error("catalog: '" + label + "' failed the scalar-curvature gate: |s|=" +
                                 std::to_string(std::abs(s)) + " at rho=" + std::to_string(rho));
    }
  }
}

}  // namespace

RadialKahlerPotential flat_potential() {
  RadialKahlerPotential pot;
  pot.label = "flat";
  pot.du = [](double) { return 1.0; };
  pot.d2u = [](double) { return 0.0; };
  pot.d3u = [](double) { return 0.0; };
  pot.d4u = [](double) { return 0.0; };
  return pot;
}

RadialKahlerPotential burns_potential(double c) {
  if (!(c > 0.0)) throw std::invalid_argument("burns_potential: c must be positive");
  RadialKahlerPotential pot;
  pot.label = "burns(c=" + std::to_string(c) + ")";
  pot.du = [c](double t) { return 1.0 + c / t; };
  pot.d2u = [c](double t) { return -c / (t * t); };
  pot.d3u = [c](double t) { return 2.0 * c / (t * t * t); };
  pot.d4u = [c](double t) { return -6.0 * c / (t * t * t * t); };
  return pot;
}

RadialKahlerPotential eguchi_hanson_potential(double a) {
  if (!(a > 0.0)) throw std::invalid_argument("eguchi_hanson_potential: a must be positive");
  const double a4 = a * a * a * a;
  RadialKahlerPotential pot;
  pot.label = "eguchi_hanson(a=" + std::to_string(a) + ")";
  // u'(t) = sqrt(t^2 + a^4) / t solves u'(u' + t u'') = 1 (Ricci-flat).
  pot.du = [a4](double t) { return std::sqrt(t * t + a4) / t; };
  pot.d2u = [a4](double t) { return -a4 / (t * t * std::sqrt(t * t + a4)); };
  pot.d3u = [a4](double t) {
    const double v = std::sqrt(t * t + a4);
    return a4 * (2.0 / (t * t * t * v) + 1.0 / (t * v * v * v));
  };
  pot.d4u = [a4](double t) {
    const double v = std::sqrt(t * t + a4);
    return a4 * (-6.0 / (t * t * t * t * v) - 3.0 / (t * t * v * v * v) -
                 3.0 / (v * v * v * v * v));
  };
  return pot;
}

Mat4 lens_rotation(long long q, long long p) {
  Mat4 r = Mat4::Zero();
  const double a1 = 2.0 * kPi / static_cast<double>(q);
  const double a2 = 2.0 * kPi * static_cast<double>(p) / static_cast<double>(q);
  r(0, 0) = std::cos(a1);
  r(0, 1) = -std::sin(a1);
  r(1, 0) = std::sin(a1);
  r(1, 1) = std::cos(a1);
  r(2, 2) = std::cos(a2);
  r(2, 3) = -std::sin(a2);
  r(3, 2) = std::sin(a2);
  r(3, 3) = std::cos(a2);
  return r;
}

CatalogMetric make_catalog_metric(const std::string& spec, const std::string& quotient,
                                  double inner_radius) {
  const auto colon = spec.find(':');
  const std::string family = spec.substr(0, colon);
  auto params = parse_params(colon == std::string::npos ? "" : spec.substr(colon + 1),
                             "catalog '" + spec + "'");

  AsymptoticChart chart;
  chart.inner_radius = inner_radius;
  chart.falloff_epsilon = 1.0;

  long long q = 1, p = 1;
  if (!quotient.empty()) {
    auto qp = parse_params(quotient, "quotient '" + quotient + "'");
    const double qd = take(qp, "q");
    const double pd = take_or(qp, "p", 1.0);
    expect_empty(qp, "quotient '" + quotient + "'");
    q = static_cast<long long>(qd);
    p = static_cast<long long>(pd);
    if (q < 1 || static_cast<double>(q) != qd || static_cast<double>(p) != pd)
      throw std::invalid_argument("quotient: q and p must be positive integers");
    lens_generator(q, p);  // throws when the action is not free
    chart.group_order = static_cast<int>(q);
  }

  CatalogMetric entry;
  entry.name = spec;

  if (family == "flat") {
    expect_empty(params, spec);
    entry.potential = flat_potential();
    entry.field = make_kahler_field(*entry.potential, chart, spec);
    entry.exact_mass = 0.0;
    entry.scalar_flat = true;
  } else if (family == "conformal") {
    const double c = take(params, "c");
    expect_empty(params, spec);
    if (!(c > 0.0)) throw std::invalid_argument("catalog conformal: c must be positive");
    entry.field = conformal_like_field(c, 2.0, chart, spec);
    entry.exact_mass = c / static_cast<double>(q);
  } else if (family == "slowfall") {
    const double c = take(params, "c");
    const double rate = take_or(params, "rate", 0.4);
    expect_empty(params, spec);
    if (!(rate > 0.0) || rate >= 1.0)
      throw std::invalid_argument("catalog slowfall: need 0 < rate < 1");
    chart.falloff_epsilon = 0.5;  // declared, deliberately unsatisfied
    entry.field = conformal_like_field(c, rate, chart, spec);
  } else if (family == "burns") {
    const double c = take(params, "c");
    expect_empty(params, spec);
    entry.potential = burns_potential(c);
    entry.field = make_kahler_field(*entry.potential, chart, spec);
    entry.exact_mass = c / 3.0 / static_cast<double>(q);
    entry.scalar_flat = true;
    scalar_flat_gate(entry.field, spec);
  } else if (family == "eguchi_hanson") {
    const double a = take(params, "a");
    expect_empty(params, spec);
    entry.potential = eguchi_hanson_potential(a);
    entry.field = make_kahler_field(*entry.potential, chart, spec);
    entry.exact_mass = 0.0;
    entry.scalar_flat = true;
    scalar_flat_gate(entry.field, spec);
  } else {
    throw std::invalid_argument("catalog: unknown family '" + family + "'");
  }

  if (q > 1) {
    const double defect =
        invariance_defect(entry.field, lens_rotation(q, p), {2.0 * inner_radius, 20.0 * inner_radius});
    if (defect > 1e-10)
      throw std::runtime_error("catalog: field '" + spec + "' is not invariant under the " +
                               "declared quotient (defect " + std::to_string(defect) + ")");
  }
  return entry;
}

const std::vector<CatalogEntryDoc>& catalog_documentation() {
  static const std::vector<CatalogEntryDoc> docs = {
      {"flat", "Euclidean metric; mass 0"},
      {"conformal:c=<real>", "(1 + c/rho^2) delta; analytic oracle with mass exactly c"},
      {"slowfall:c=<real>[,rate=<r>]",
       "(1 + c/rho^rate) delta, rate < 1; violates the decay hypotheses, mass diverges"},
      {"burns:c=<real>", "scalar-flat Kahler potential t + c log t on the blow-up; mass c/3"},
      {"eguchi_hanson:a=<real>", "Ricci-flat ALE potential, u'(t) = sqrt(t^2+a^4)/t; mass 0"},
      {"quotient q=<int>,p=<int>", "modifier: free cyclic quotient diag(zeta_q, zeta_q^p)"},
  };
  return docs;
}

}  // namespace alemass
