#include "alemass/report.hpp"

#include "alemass/catalog.hpp"
#include "alemass/cohomass.hpp"
#include "alemass/hj.hpp"
#include "alemass/intersection.hpp"
#include "alemass/mass.hpp"
#include "alemass/moser.hpp"
#include "alemass/orbifold.hpp"

#include <json.hpp>
#include <openssl/evp.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fs = std::filesystem;
using nlohmann::json;

namespace alemass {

bool ReportBundle::all_pass() const {
  return std::all_of(verdicts.begin(), verdicts.end(),
                     [](const Verdict& v) { return v.pass; });
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx) throw std::runtime_error("sha256: EVP context allocation failed");
  if (EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx, data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx, md, &len) != 1) {
    EVP_MD_CTX_free(ctx);
    throw std::runtime_error("sha256: digest computation failed");
  }
  EVP_MD_CTX_free(ctx);
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 0x0f]);
  }
  return out;
}

std::string cache_directory() {
  if (const char* env = std::getenv("ALEMASS_CACHE_DIR")) return env;
  if (const char* home = std::getenv("HOME")) {
    return (fs::path(home) / ".cache" / "alemass").string();
  }
  return (fs::temp_directory_path() / "alemass-cache").string();
}

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += "\"\"";
    else out += ch;
  }
  out += "\"";
  return out;
}

namespace {

void atomic_write(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("short write to " + tmp.string());
  }
  fs::rename(tmp, path);
}

json table_to_json(const ReportTable& t) {
  return json{{"name", t.name}, {"columns", t.columns}, {"rows", t.rows}};
}

ReportTable table_from_json(const json& j) {
  ReportTable t;
  t.name = j.at("name").get<std::string>();
  t.columns = j.at("columns").get<std::vector<std::string>>();
  t.rows = j.at("rows").get<std::vector<std::vector<double>>>();
  return t;
}

}  // namespace

std::string bundle_to_json(const ReportBundle& b) {
  json j;
  j["scenario"] = b.scenario_name;
  j["kind"] = b.kind;
  j["version"] = b.version;
  j["cache_key"] = b.cache_key;
  j["wall_seconds"] = b.wall_seconds;
  json records = json::array();
  for (const ReportRecord& r : b.records) records.push_back({{"key", r.key}, {"value", r.value}});
  j["records"] = records;
  json tables = json::array();
  for (const ReportTable& t : b.tables) tables.push_back(table_to_json(t));
  j["tables"] = tables;
  json verdicts = json::array();
  for (const Verdict& v : b.verdicts) {
    verdicts.push_back({{"check", v.check}, {"pass", v.pass}, {"detail", v.detail}});
  }
  j["verdicts"] = verdicts;
  return j.dump(2) + "\n";
}

ReportBundle bundle_from_json(const std::string& text) {
  const json j = json::parse(text);
  ReportBundle b;
  b.scenario_name = j.at("scenario").get<std::string>();
  b.kind = j.at("kind").get<std::string>();
  b.version = j.at("version").get<std::string>();
  b.cache_key = j.at("cache_key").get<std::string>();
  b.wall_seconds = j.at("wall_seconds").get<double>();
  for (const json& r : j.at("records")) {
    b.records.push_back({r.at("key").get<std::string>(), r.at("value").get<double>()});
  }
  for (const json& t : j.at("tables")) b.tables.push_back(table_from_json(t));
  for (const json& v : j.at("verdicts")) {
    b.verdicts.push_back({v.at("check").get<std::string>(), v.at("pass").get<bool>(),
                          v.at("detail").get<std::string>()});
  }
  return b;
}

namespace {

void record(ReportBundle& b, const std::string& key, double value) {
  b.records.push_back({key, value});
}

void verdict(ReportBundle& b, const std::string& check, bool pass, const std::string& detail) {
  b.verdicts.push_back({check, pass, detail});
}

std::string describe(double v) { return format_number(v); }

CatalogMetric configured_metric(const Scenario& sc) {
  CatalogMetric cm = sc.inner_radius > 0.0
                         ? make_catalog_metric(sc.catalog_spec, sc.quotient, sc.inner_radius)
                         : make_catalog_metric(sc.catalog_spec, sc.quotient);
  if (sc.force_fd) cm.field.mode = DerivativeMode::CentralDifference;
  return cm;
}

void run_mass(const Scenario& sc, ReportBundle& b) {
  const CatalogMetric cm = configured_metric(sc);
  const SphereRule rule = make_sphere_rule(sc.quadrature_n);
  const FalloffReport falloff = verify_falloff(cm.field);
  const std::vector<double> radii = default_radius_schedule(cm.field.chart, sc.k_min, sc.k_max);
  const MassEstimate est = chrusciel_mass(cm.field, rule, radii);

  record(b, "mass", est.extrapolated_mass);
  record(b, "fitted_decay", est.fitted_decay);
  record(b, "fit_residual", est.fit_residual);
  record(b, "group_order", static_cast<double>(est.group_order));
  record(b, "falloff_slope_g", falloff.slope_g);
  record(b, "falloff_slope_dg", falloff.slope_dg);
  record(b, "scalar_flat", cm.scalar_flat ? 1.0 : 0.0);

  ReportTable shells{"shells", {"rho", "mass_estimate"}, {}};
  for (std::size_t i = 0; i < est.radii.size(); ++i) {
    shells.rows.push_back({est.radii[i], est.values[i]});
  }
  b.tables.push_back(shells);
  ReportTable decay{"falloff", {"rho", "dev_g", "dev_dg"}, {}};
  for (std::size_t i = 0; i < falloff.radii.size(); ++i) {
    decay.rows.push_back({falloff.radii[i], falloff.dev_g[i], falloff.dev_dg[i]});
  }
  b.tables.push_back(decay);

  verdict(b, "falloff-rate", falloff.pass,
          "slope_g=" + describe(falloff.slope_g) + " slope_dg=" + describe(falloff.slope_dg) +
              " declared_eps=" + describe(cm.field.chart.falloff_epsilon));
  verdict(b, "convergent", !est.non_convergent,
          est.non_convergent ? "shell sequence grows; no limit declared"
                             : "decay kappa=" + describe(est.fitted_decay));
  if (std::isfinite(cm.exact_mass)) {
    const double err = std::abs(est.extrapolated_mass - cm.exact_mass);
    const double tol = std::max(sc.mass_rel_tol * std::abs(cm.exact_mass), sc.mass_abs_tol);
    verdict(b, "exact-mass", err <= tol,
            "mass=" + describe(est.extrapolated_mass) + " model=" + describe(cm.exact_mass) +
                " err=" + describe(err));
  }
}

void run_crosscheck(const Scenario& sc, ReportBundle& b) {
  const CatalogMetric cm = configured_metric(sc);
  if (!cm.potential) {
    throw std::invalid_argument("crosscheck needs a Kahler catalog family, got " + cm.name);
  }
  if (cm.field.chart.group_order != 1) {
    throw std::invalid_argument("crosscheck models only the trivial quotient");
  }
  const SphereRule rule = make_sphere_rule(sc.quadrature_n);
  const std::vector<double> radii = default_radius_schedule(cm.field.chart, sc.k_min, sc.k_max);
  const MassEstimate est = chrusciel_mass(cm.field, rule, radii);

  const bool has_cycle = sc.catalog_spec.rfind("burns", 0) == 0;
  double chern = 0.0;
  double area = 0.0;
  if (has_cycle) {
    const ExceptionalArea ea = exceptional_area(*cm.potential);
    area = ea.area;
    chern = -ea.area;
    record(b, "exceptional_area", ea.area);
    record(b, "area_error_estimate", ea.error_estimate);
  }

  const double a = cm.field.chart.inner_radius;
  const ScalarVolume sv =
      scalar_volume_integral(cm.field, 1.5 * a, 30.0 * a, make_sphere_rule(8), 1e-8);
  const double reference = mass_from_cohomology(chern, sv.value);
  const Crosscheck cc = crosscheck_mass(est.extrapolated_mass, reference, sc.crosscheck_tol);

  record(b, "flux_mass", est.extrapolated_mass);
  record(b, "cohomological_mass", reference);
  record(b, "scalar_integral", sv.value);
  record(b, "rel_error", cc.rel_error);
  record(b, "abs_error", cc.abs_error);

  ReportTable shells{"shells", {"rho", "mass_estimate"}, {}};
  for (std::size_t i = 0; i < est.radii.size(); ++i) {
    shells.rows.push_back({est.radii[i], est.values[i]});
  }
  b.tables.push_back(shells);

  verdict(b, "crosscheck", cc.pass,
          "flux=" + describe(cc.computed) + " cohomological=" + describe(cc.reference) +
              (cc.abs_branch ? " abs_err=" + describe(cc.abs_error)
                             : " rel_err=" + describe(cc.rel_error)));
  if (has_cycle) {
    const PenroseResult pr =
        penrose_check(reference, {DivisorData{"E", 1, area}}, sc.eq_tol);
    record(b, "penrose_lower_bound", pr.lower_bound);
    record(b, "penrose_gap", pr.gap);
    verdict(b, "penrose-equality", pr.equality && pr.satisfied,
            "gap=" + describe(pr.gap) + " (scalar-flat model: equality expected)");
  }
}

void run_hj(const Scenario& sc, ReportBundle& b) {
  const HJString hj = hj_resolve(sc.q, sc.p);
  record(b, "q", static_cast<double>(sc.q));
  record(b, "p", static_cast<double>(sc.p));
  record(b, "length", static_cast<double>(hj.chain.size()));

  const Rational target(sc.q, sc.p);
  const Rational value = hj_evaluate(hj.chain);
  verdict(b, "roundtrip", value == target,
          "continued fraction evaluates to " + value.str());

  const IntersectionForm form = hj_plumbing_form(hj.chain);
  const Signature sig = signature(form);
  record(b, "b_plus", static_cast<double>(sig.positive));
  record(b, "det", sig.determinant.to_double());
  const Rational det_target =
      (hj.chain.size() % 2 == 0) ? Rational(sc.q) : Rational(-sc.q);
  verdict(b, "negative-definite", negative_definite(form),
          "signature (" + std::to_string(sig.positive) + "," + std::to_string(sig.negative) +
              "," + std::to_string(sig.zero) + ")");
  verdict(b, "determinant", sig.determinant == det_target,
          "det=" + sig.determinant.str() + " |det| target " + std::to_string(sc.q));

  const long long p_inv = mod_inverse(sc.p, sc.q);
  const HJString dual = hj_resolve(sc.q, p_inv);
  std::vector<long long> reversed(dual.chain.rbegin(), dual.chain.rend());
  verdict(b, "dual-reversal", reversed == hj.chain,
          "chain(q,p') reversed matches chain(q,p), p'=" + std::to_string(p_inv));

  ReportTable chain{"chain", {"index", "e"}, {}};
  for (std::size_t i = 0; i < hj.chain.size(); ++i) {
    chain.rows.push_back({static_cast<double>(i + 1), static_cast<double>(hj.chain[i])});
  }
  b.tables.push_back(chain);
}

void run_capsule(const Scenario& sc, ReportBundle& b) {
  const OrbifoldGroupType type = OrbifoldGroupType::parse(sc.group);
  const CapsuleModel capsule = build_capsule(sc.ell, type, sc.local_types, sc.central_weight);
  record(b, "ell", static_cast<double>(capsule.ell));
  record(b, "degree", static_cast<double>(capsule.degree()));
  record(b, "vertices", static_cast<double>(capsule.vertex_labels.size()));
  record(b, "edges", static_cast<double>(capsule.edges.size()));
  verdict(b, "degree", capsule.degree() == 2 + capsule.ell,
          "central vertex degree " + std::to_string(capsule.degree()));
  bool chains_definite = true;
  for (const HJString& chain : capsule.chains) {
    if (!negative_definite(hj_plumbing_form(chain.chain))) chains_definite = false;
  }
  verdict(b, "chains-negative-definite", chains_definite,
          std::to_string(capsule.chains.size()) + " chains checked");

  ReportTable edges{"edges", {"from", "to"}, {}};
  for (const auto& [u, v] : capsule.edges) {
    edges.rows.push_back({static_cast<double>(u), static_cast<double>(v)});
  }
  b.tables.push_back(edges);
}

PerturbationSpec scenario_spec(const Scenario& sc) {
  if (sc.family == "flat") return flat_moser_spec();
  if (sc.family == "burns") {
    return sc.b_radius > 0.0 ? burns_moser_spec(sc.c, sc.b_radius) : burns_moser_spec(sc.c);
  }
  if (sc.family == "hopf") {
    return sc.b_radius > 0.0 ? hopf_moser_spec(sc.amplitude, sc.epsilon, sc.b_radius)
                             : hopf_moser_spec(sc.amplitude, sc.epsilon);
  }
  // radial: the exactly integrable family.
  PerturbationSpec spec;
  const double b = sc.b_radius > 0.0 ? sc.b_radius : 4.0;
  spec.label = "radial(A=" + std::to_string(sc.amplitude) +
               ",eps=" + std::to_string(sc.epsilon) + ")";
  spec.working_radius = b;
  spec.safety_radius = b + 1.0;
  spec.chart = AsymptoticChart{0.5 * b, 1, sc.epsilon};
  spec.declared_epsilon = sc.epsilon;
  const TwoFormField delta = radial_exact_delta(sc.amplitude, sc.epsilon);
  const Mat4 w0 = standard_symplectic_matrix();
  spec.omega = TwoFormField{spec.label + " form",
                            [delta, w0](const Vec4& x) { return Mat4(w0 + delta.eval(x)); },
                            true};
  const double amplitude = sc.amplitude;
  const double epsilon = sc.epsilon;
  spec.theta = OneFormField{spec.label + " primitive", [amplitude, epsilon, b](const Vec4& x) {
                              return radial_exact_psi(amplitude, epsilon, b, x);
                            }};
  return spec;
}

void run_moser(const Scenario& sc, ReportBundle& b) {
  PerturbationSpec spec = scenario_spec(sc);
  if (sc.c_radius > 0.0) {
    if (sc.c_radius < spec.working_radius + 1.0) {
      throw std::invalid_argument("c_radius must be >= b_radius + 1");
    }
    spec.safety_radius = sc.c_radius;
  }
  const SpecDiagnostics diag = validate_spec(spec, sc.closure_tol);
  record(b, "sup_deviation", diag.sup_deviation);
  record(b, "primitive_defect", diag.primitive_defect);
  record(b, "sup_field", diag.sup_field);
  verdict(b, "validated", true,
          "|omega-omega0|<=" + describe(diag.sup_deviation) + " defect=" +
              describe(diag.primitive_defect) + " |X|<=" + describe(diag.sup_field));

  const double base = spec.safety_radius + 1.0;
  std::vector<Vec4> seeds;
  for (double scale : {1.0, 1.6, 2.56}) {
    seeds.push_back(base * scale * Vec4(1, 0, 0, 0));
    seeds.push_back(base * scale * Vec4(0.5, 0.5, 0.5, 0.5));
  }
  const double residual = pullback_residual(spec, seeds, sc.steps);
  record(b, "pullback_residual", residual);
  verdict(b, "pullback", residual <= sc.pullback_tol,
          "sup residual " + describe(residual) + " tol " + describe(sc.pullback_tol));

  if (sc.family == "flat") {
    const FlowSample still = integrate_flow(spec, seeds.front(), sc.steps);
    verdict(b, "identity", still.displacement <= 1e-12,
            "flat flow displacement " + describe(still.displacement));
    return;
  }

  const double order =
      convergence_order(spec, spec.safety_radius * Vec4(0.5, 0.5, 0.5, 0.5), 2, 3);
  record(b, "rk4_order", order);
  verdict(b, "order", std::abs(order - 4.0) <= 0.5, "measured order " + describe(order));

  const double rho_min = sc.seed_rho_min > 0.0 ? sc.seed_rho_min : spec.safety_radius + 1.0;
  const double rho_max = sc.seed_rho_max > 0.0 ? sc.seed_rho_max : 40.0 * rho_min;
  const MoserFalloff falloff = falloff_fit(spec, rho_min, rho_max, 6, sc.steps);
  record(b, "displacement_slope", falloff.displacement_slope);
  record(b, "jacobian_slope", falloff.jacobian_slope);
  ReportTable table{"falloff", {"rho", "displacement", "jacobian_dev"}, {}};
  for (std::size_t i = 0; i < falloff.radii.size(); ++i) {
    table.rows.push_back({falloff.radii[i], falloff.displacements[i], falloff.jacobian_devs[i]});
  }
  b.tables.push_back(table);
  const double eps = spec.declared_epsilon;
  const bool disp_ok = std::abs(falloff.displacement_slope + eps) <= 0.1 * eps;
  const bool jac_ok = std::abs(falloff.jacobian_slope + 1.0 + eps) <= 0.1 * (1.0 + eps);
  verdict(b, "falloff-slopes", (disp_ok && jac_ok) || falloff.at_noise_floor,
          "displacement " + describe(falloff.displacement_slope) + " (want -" + describe(eps) +
              "), jacobian " + describe(falloff.jacobian_slope) + " (want -" +
              describe(1.0 + eps) + ")");
}

void run_penrose(const Scenario& sc, ReportBundle& b) {
  double weighted = 0.0;
  for (const DivisorData& d : sc.divisors) weighted += d.multiplicity * d.volume;
  const double mass =
      sc.has_mass ? sc.mass : mass_from_cohomology(-weighted, sc.scalar_integral);
  const PenroseResult pr = penrose_check(mass, sc.divisors, sc.eq_tol);
  record(b, "mass", mass);
  record(b, "lower_bound", pr.lower_bound);
  record(b, "gap", pr.gap);
  record(b, "scalar_integral", sc.scalar_integral);
  verdict(b, "penrose-bound", pr.satisfied,
          "mass=" + describe(mass) + " bound=" + describe(pr.lower_bound));
  if (!sc.has_mass) {
    if (sc.scalar_integral > 0.0) {
      verdict(b, "strict-gap", pr.gap > 0.0,
              "positive scalar curvature forces gap=" + describe(pr.gap) + " > 0");
    } else {
      verdict(b, "equality", pr.equality, "scalar-flat model: gap=" + describe(pr.gap));
    }
  }
}

}  // namespace

ReportBundle compute_scenario(const Scenario& sc) {
  ReportBundle b;
  b.scenario_name = sc.name;
  b.kind = kind_name(sc.kind);
  b.version = kVersion;
  const auto start = std::chrono::steady_clock::now();
  switch (sc.kind) {
    case ScenarioKind::Mass: run_mass(sc, b); break;
    case ScenarioKind::Crosscheck: run_crosscheck(sc, b); break;
    case ScenarioKind::Hj: run_hj(sc, b); break;
    case ScenarioKind::Capsule: run_capsule(sc, b); break;
    case ScenarioKind::Moser: run_moser(sc, b); break;
    case ScenarioKind::Penrose: run_penrose(sc, b); break;
  }
  b.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return b;
}

ReportBundle run_scenario(const Scenario& sc) {
  const std::string key = sha256_hex(std::string(kVersion) + "\n" + sc.canonical());
  const fs::path dir = cache_directory();
  fs::create_directories(dir);
  const fs::path entry = dir / (key + ".json");
  if (fs::exists(entry)) {
    std::ifstream in(entry, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    ReportBundle cached = bundle_from_json(buf.str());
    cached.cache_hit = true;
    return cached;
  }
  ReportBundle fresh = compute_scenario(sc);
  fresh.cache_key = key;
  atomic_write(entry, bundle_to_json(fresh));
  return fresh;
}

namespace {

std::string render_csv(const ReportTable& table) {
  std::ostringstream out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out << ",";
    out << csv_escape(table.columns[i]);
  }
  out << "\r\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ",";
      out << format_number(row[i]);
    }
    out << "\r\n";
  }
  return out.str();
}

std::string render_records_csv(const ReportBundle& b) {
  std::ostringstream out;
  out << "key,value\r\n";
  for (const ReportRecord& r : b.records) {
    out << csv_escape(r.key) << "," << format_number(r.value) << "\r\n";
  }
  return out.str();
}

std::string render_verdicts(const ReportBundle& b) {
  std::ostringstream out;
  for (const Verdict& v : b.verdicts) {
    out << (v.pass ? "PASS" : "FAIL") << " " << v.check << ": " << v.detail << "\n";
  }
  out << (b.all_pass() ? "ALL-PASS" : "HAS-FAILURES") << "\n";
  return out.str();
}

std::string svg_coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

// Minimal log-log (or linear fallback) scatter-line plot; deterministic text.
std::string render_svg(const ReportTable& table, const std::string& title) {
  const int width = 640, height = 480, margin = 64;
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  out << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\""
      << "monospace\" font-size=\"14\">" << title << "</text>\n";

  const std::size_t cols = table.columns.size();
  std::vector<std::vector<double>> xs(1), ys(cols - 1);
  bool log_x = true, log_y = true;
  for (const auto& row : table.rows) {
    if (row.size() != cols) continue;
    xs[0].push_back(row[0]);
    if (row[0] <= 0.0) log_x = false;
    for (std::size_t c = 1; c < cols; ++c) {
      ys[c - 1].push_back(row[c]);
      if (row[c] <= 0.0) log_y = false;
    }
  }
  auto fwd_x = [log_x](double v) { return log_x ? std::log10(v) : v; };
  auto fwd_y = [log_y](double v) { return log_y ? std::log10(std::max(v, 1e-300)) : v; };

  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (double v : xs[0]) {
    xmin = std::min(xmin, fwd_x(v));
    xmax = std::max(xmax, fwd_x(v));
  }
  for (const auto& series : ys) {
    for (double v : series) {
      ymin = std::min(ymin, fwd_y(v));
      ymax = std::max(ymax, fwd_y(v));
    }
  }
  if (!(xmax > xmin)) xmax = xmin + 1.0;
  if (!(ymax > ymin)) ymax = ymin + 1.0;
  auto px = [&](double v) {
    return margin + (fwd_x(v) - xmin) / (xmax - xmin) * (width - 2 * margin);
  };
  auto py = [&](double v) {
    return height - margin - (fwd_y(v) - ymin) / (ymax - ymin) * (height - 2 * margin);
  };

  out << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\""
      << width - margin << "\" y2=\"" << height - margin << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\""
      << height - margin << "\" stroke=\"black\"/>\n";
  // Corner labels carry the data range; per-tick labels stay out of the way.
  out << "<text x=\"" << margin << "\" y=\"" << height - margin + 20
      << "\" font-family=\"monospace\" font-size=\"11\">" << format_number(xs[0].front())
      << "</text>\n";
  out << "<text x=\"" << width - margin << "\" y=\"" << height - margin + 20
      << "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"11\">"
      << format_number(xs[0].back()) << "</text>\n";
  out << "<text x=\"" << margin << "\" y=\"" << height - margin + 36
      << "\" font-family=\"monospace\" font-size=\"11\">x: " << csv_escape(table.columns[0])
      << (log_x ? " (log)" : "") << (log_y ? ", y log" : "") << "</text>\n";

  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
  for (std::size_t s = 0; s < ys.size(); ++s) {
    const char* color = palette[s % 4];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < xs[0].size(); ++i) {
      if (i) out << " ";
      out << svg_coord(px(xs[0][i])) << "," << svg_coord(py(ys[s][i]));
    }
    out << "\"/>\n";
    for (std::size_t i = 0; i < xs[0].size(); ++i) {
      out << "<circle cx=\"" << svg_coord(px(xs[0][i])) << "\" cy=\""
          << svg_coord(py(ys[s][i])) << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    }
    out << "<text x=\"" << width - margin << "\" y=\"" << margin + 16 * (s + 1)
        << "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"11\" fill=\"" << color
        << "\">" << csv_escape(table.columns[s + 1]) << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace

std::vector<std::string> emit_report(const ReportBundle& b, const std::string& dir) {
  fs::create_directories(dir);
  const fs::path base = fs::path(dir) / b.scenario_name;
  std::vector<std::string> written;

  auto emit = [&written](const fs::path& path, const std::string& content) {
    atomic_write(path, content);
    written.push_back(path.string());
  };

  emit(base.string() + "_records.csv", render_records_csv(b));
  for (const ReportTable& table : b.tables) {
    emit(base.string() + "_" + table.name + ".csv", render_csv(table));
    if (table.rows.size() >= 3 && table.columns.size() >= 2) {
      emit(base.string() + "_" + table.name + ".svg",
           render_svg(table, b.scenario_name + " / " + table.name));
    }
  }
  emit(base.string() + "_verdicts.txt", render_verdicts(b));
  emit(base.string() + "_bundle.json", bundle_to_json(b));
  return written;
}

}  // namespace alemass
