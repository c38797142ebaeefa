// Acceptance gates: one line per criterion, nonzero exit when any fails.
// Every criterion rebuilds its own inputs from the public API; nothing here
// reads the cache or the scenario layer.
#include "alemass/catalog.hpp"
#include "alemass/cohomass.hpp"
#include "alemass/hj.hpp"
#include "alemass/intersection.hpp"
#include "alemass/kahler.hpp"
#include "alemass/mass.hpp"
#include "alemass/metric_field.hpp"
#include "alemass/moser.hpp"
#include "alemass/orbifold.hpp"
#include "alemass/quadrature.hpp"
#include "alemass/types.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace alemass;
using Clock = std::chrono::steady_clock;

double seconds_since(const Clock::time_point& t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Collects failure notes; a criterion passes when none accumulate.
class Gate {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok) notes_.push_back(what);
  }
  bool passed() const { return notes_.empty(); }
  std::string notes() const {
    std::string out;
    for (std::size_t i = 0; i < notes_.size(); ++i) {
      if (i) out += "; ";
      out += notes_[i];
    }
    return out;
  }

 private:
  std::vector<std::string> notes_;
};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// Pointwise flux density [g_kl,k - g_kk,l] n^l before quadrature weights.
double flux_density(const MetricField& field, const Vec4& x) {
  const Vec4 n = x.normalized();
  const MetricDerivatives dg = metric_derivatives(field, x);
  double acc = 0.0;
  for (int l = 0; l < 4; ++l) {
    double term = 0.0;
    for (int k = 0; k < 4; ++k) term += dg.d[k](k, l) - dg.d[l](k, k);
    acc += term * n[l];
  }
  return acc;
}

// 1. Conformal family g = (1 + c/rho^2) delta has mass exactly c; the flux
//    density is direction-independent on every sphere.
void conformal_oracle(Gate& gate) {
  const SphereRule rule = make_sphere_rule(24);
  for (double c : {0.3, 0.7, 1.5}) {
    const auto t0 = Clock::now();
    const CatalogMetric cm = make_catalog_metric("conformal:c=" + std::to_string(c));
    const std::vector<double> radii = default_radius_schedule(cm.field.chart, 3, 10);
    const MassEstimate est = chrusciel_mass(cm.field, rule, radii);
    gate.require(std::abs(est.extrapolated_mass - c) <= 1e-3 * c,
                 "mass(c=" + num(c) + ")=" + num(est.extrapolated_mass) + " misses c");
    for (double rho : radii) {
      double lo = 1e300, hi = -1e300;
      for (const Vec4& n : audit_directions()) {
        const double f = flux_density(cm.field, rho * n);
        lo = std::min(lo, f);
        hi = std::max(hi, f);
      }
      gate.require(hi - lo <= 1e-8 * (std::abs(hi) + 1e-300),
                   "flux density varies by " + num(hi - lo) + " on rho=" + num(rho));
    }
    const double secs = seconds_since(t0);
    gate.require(secs < 30.0, "c=" + num(c) + " took " + num(secs) + "s (budget 30)");
  }
}

// 2. Flat space and its free lens quotients have mass zero; the quotient law
//    divides the whole-space numbers bitwise.
void flat_zero(Gate& gate) {
  const SphereRule rule = make_sphere_rule(16);
  const MassEstimate whole = chrusciel_mass(make_catalog_metric("flat").field, rule);
  gate.require(std::abs(whole.extrapolated_mass) <= 1e-9,
               "flat mass " + num(whole.extrapolated_mass));
  for (long long q : {2LL, 4LL}) {
    const std::string quotient = "q=" + std::to_string(q) + ",p=1";
    const MassEstimate est =
        chrusciel_mass(make_catalog_metric("flat", quotient).field, rule);
    gate.require(std::abs(est.extrapolated_mass) <= 1e-9,
                 "flat/Z" + std::to_string(q) + " mass " + num(est.extrapolated_mass));
    bool exact = est.extrapolated_mass == whole.extrapolated_mass / static_cast<double>(q);
    for (std::size_t i = 0; i < whole.values.size(); ++i) {
      exact = exact && est.values[i] == whole.values[i] / static_cast<double>(q);
    }
    gate.require(exact, "flat quotient law not bitwise for q=" + std::to_string(q));
  }
  // Nontrivial witness of the same law: the conformal family is invariant too.
  const MassEstimate conf = chrusciel_mass(make_catalog_metric("conformal:c=0.7").field, rule);
  for (long long q : {2LL, 4LL}) {
    const std::string quotient = "q=" + std::to_string(q) + ",p=1";
    const MassEstimate est =
        chrusciel_mass(make_catalog_metric("conformal:c=0.7", quotient).field, rule);
    bool exact = est.extrapolated_mass == conf.extrapolated_mass / static_cast<double>(q);
    for (std::size_t i = 0; i < conf.values.size(); ++i) {
      exact = exact && est.values[i] == conf.values[i] / static_cast<double>(q);
    }
    gate.require(exact, "conformal quotient law not bitwise for q=" + std::to_string(q));
  }
}

// 3. Eguchi-Hanson: scalar-flat to gate accuracy, mass zero to schedule
//    accuracy.
void ricci_flat_zero(Gate& gate) {
  const auto t0 = Clock::now();
  const SphereRule rule = make_sphere_rule(16);
  for (double a : {1.0, 1.3}) {
    const CatalogMetric cm = make_catalog_metric("eguchi_hanson:a=" + std::to_string(a));
    gate.require(cm.scalar_flat, "catalog did not certify scalar flatness at a=" + num(a));
    double worst = 0.0;
    const Vec4 dir = Vec4(0.5, 0.5, 0.5, 0.5);
    const double r0 = 1.5 * cm.field.chart.inner_radius;
    for (int i = 0; i < 20; ++i) {
      const double rho = r0 * std::pow(200.0, i / 19.0);
      worst = std::max(worst, std::abs(scalar_curvature(cm.field, rho * dir)));
    }
    gate.require(worst <= 1e-6, "sup |s| = " + num(worst) + " at a=" + num(a));
    const MassEstimate est = chrusciel_mass(cm.field, rule);
    gate.require(std::abs(est.extrapolated_mass) <= 1e-4 * a * a,
                 "mass(a=" + num(a) + ")=" + num(est.extrapolated_mass));
    gate.require(!est.non_convergent, "mass flagged non-convergent at a=" + num(a));
  }
  const double secs = seconds_since(t0);
  gate.require(secs < 120.0, "took " + num(secs) + "s (budget 120)");
}

// 4. Burns family: flux mass agrees with the cohomological formula
//    (1/3pi) area + (1/12pi^2) scalar integral within 1%.
void burns_crosscheck(Gate& gate) {
  const SphereRule rule = make_sphere_rule(16);
  for (double c : {0.25, 0.5}) {
    const CatalogMetric cm = make_catalog_metric("burns:c=" + std::to_string(c));
    const MassEstimate est = chrusciel_mass(cm.field, rule);
    const ExceptionalArea ea = exceptional_area(*cm.potential);
    const double a = cm.field.chart.inner_radius;
    const ScalarVolume sv =
        scalar_volume_integral(cm.field, 1.5 * a, 30.0 * a, make_sphere_rule(8), 1e-8);
    const double reference = mass_from_cohomology(-ea.area, sv.value);
    const Crosscheck cc = crosscheck_mass(est.extrapolated_mass, reference, 1e-2);
    gate.require(cc.pass, "c=" + num(c) + ": flux " + num(cc.computed) + " vs cohomological " +
                              num(cc.reference) + " rel_err " + num(cc.rel_error));
  }
}

// 5. Penrose-type bound: equality on the scalar-flat Burns model up to
//    quadrature noise; strictly positive gap once s > 0 is injected.
void penrose_equality(Gate& gate) {
  const CatalogMetric cm = make_catalog_metric("burns:c=0.5");
  const ExceptionalArea ea = exceptional_area(*cm.potential);
  const double a = cm.field.chart.inner_radius;
  const ScalarVolume sv =
      scalar_volume_integral(cm.field, 1.5 * a, 30.0 * a, make_sphere_rule(8), 1e-8);
  const double mass = mass_from_cohomology(-ea.area, sv.value);
  const std::vector<DivisorData> divisors{{"E", 1, ea.area}};
  const PenroseResult pr = penrose_check(mass, divisors, 1e-6);
  const double noise =
      std::abs(sv.value) * kMassNormalization + ea.error_estimate / (3.0 * kPi) + 1e-12;
  gate.require(pr.satisfied, "bound violated on the scalar-flat model");
  gate.require(std::abs(pr.gap) <= 1e-6 + noise,
               "gap " + num(pr.gap) + " exceeds 1e-6 + noise " + num(noise));
  gate.require(pr.equality, "equality not declared, gap " + num(pr.gap));

  const PenroseResult perturbed =
      penrose_check(mass_from_cohomology(-ea.area, 0.5), divisors, 1e-9);
  gate.require(perturbed.satisfied && perturbed.gap > 0.0 && !perturbed.equality,
               "s>0 perturbation must open a strict gap, got " + num(perturbed.gap));
}

// 6. Hirzebruch-Jung sweep: exact round trip, entries >= 2, negative-definite
//    plumbing with |det| = q for every valid type up to q = 200.
void hj_sweep(Gate& gate) {
  const auto t0 = Clock::now();
  long long pairs = 0;
  for (long long q = 2; q <= 200 && gate.passed(); ++q) {
    for (long long p = 1; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      ++pairs;
      const HJString hj = hj_resolve(q, p);
      for (long long e : hj.chain) {
        if (e < 2) {
          gate.require(false, "entry " + std::to_string(e) + " < 2 at q=" + std::to_string(q) +
                                  ",p=" + std::to_string(p));
          break;
        }
      }
      if (hj_evaluate(hj.chain) != Rational(q, p)) {
        gate.require(false,
                     "round trip fails at q=" + std::to_string(q) + ",p=" + std::to_string(p));
        break;
      }
      const Signature sig = signature(hj_plumbing_form(hj.chain));
      const Rational det_target =
          (hj.chain.size() % 2 == 0) ? Rational(q) : Rational(-q);
      if (sig.positive != 0 || sig.zero != 0 || sig.determinant != det_target) {
        gate.require(false,
                     "plumbing data wrong at q=" + std::to_string(q) + ",p=" + std::to_string(p));
        break;
      }
      if (q <= 50) {
        const HJString dual = hj_resolve(q, mod_inverse(p, q));
        const std::vector<long long> reversed(dual.chain.rbegin(), dual.chain.rend());
        if (reversed != hj.chain) {
          gate.require(false, "dual reversal fails at q=" + std::to_string(q) + ",p=" +
                                  std::to_string(p));
          break;
        }
      }
    }
  }
  gate.require(pairs == 12231, "expected 12231 valid types, saw " + std::to_string(pairs));
  const double secs = seconds_since(t0);
  gate.require(secs < 10.0, "took " + num(secs) + "s (budget 10)");
}

// 7. Capsule degrees, the five singular-fiber profiles, and the central
//    quotient counts on lens groups.
void capsule_suite(Gate& gate) {
  for (long long ell = 1; ell <= 100; ++ell) {
    if (capsule_degree(ell) != 2 + ell) {
      gate.require(false, "capsule_degree(" + std::to_string(ell) + ") wrong");
      break;
    }
  }

  struct ProfileCase {
    const char* group;
    std::vector<long long> profile;
    std::vector<std::pair<long long, long long>> locals;
  };
  const std::vector<ProfileCase> cases = {
      {"cyclic:4", {4, 4}, {{4, 1}, {4, 3}}},
      {"dihedral:4", {2, 2, 4}, {{2, 1}, {2, 1}, {4, 3}}},
      {"tetrahedral", {2, 3, 3}, {{2, 1}, {3, 1}, {3, 2}}},
      {"octahedral", {2, 3, 4}, {{2, 1}, {3, 2}, {4, 1}}},
      {"icosahedral", {2, 5, 5}, {{2, 1}, {5, 2}, {5, 3}}},
  };
  for (const ProfileCase& pc : cases) {
    const OrbifoldGroupType type = OrbifoldGroupType::parse(pc.group);
    gate.require(classify_singularities(type) == pc.profile,
                 std::string(pc.group) + " profile mismatch");
    try {
      const CapsuleModel model =
          build_capsule(static_cast<long long>(pc.locals.size()), type, pc.locals);
      gate.require(model.degree() == 2 + model.ell,
                   std::string(pc.group) + " capsule degree wrong");
    } catch (const std::exception& e) {
      gate.require(false, std::string(pc.group) + " capsule rejected: " + e.what());
    }
  }

  for (long long q : {3LL, 5LL, 8LL, 12LL}) {
    const CentralQuotient cq = central_quotient({lens_generator(q, 1)});
    gate.require(cq.scalar_count == q && cq.effective_order == 1,
                 "lens(q,1) central data wrong at q=" + std::to_string(q));
  }
  const std::vector<std::pair<long long, long long>> primes = {{5, 2}, {7, 3}, {11, 2}, {13, 5}};
  for (const auto& [q, p] : primes) {
    const CentralQuotient cq = central_quotient({lens_generator(q, p)});
    gate.require(cq.scalar_count == 1 && cq.effective_order == q,
                 "lens(" + std::to_string(q) + "," + std::to_string(p) + ") central data wrong");
  }
}

// 8. Moser flows: identity for theta = 0, certified pullback at 256 steps,
//    RK4 order, analytic falloff slopes, Z2 equivariance.
void moser_suite(Gate& gate) {
  const auto t0 = Clock::now();

  const PerturbationSpec flat = flat_moser_spec();
  for (const Vec4& seed : {Vec4(4, 0, 0, 0), Vec4(2, 2, 2, 2), Vec4(-3, 1, 2, -1)}) {
    const FlowSample still = integrate_flow(flat, seed, 128);
    gate.require(still.displacement <= 1e-12,
                 "flat flow moved by " + num(still.displacement));
  }

  const PerturbationSpec burns = burns_moser_spec(0.5);
  const double base = burns.safety_radius + 1.0;
  std::vector<Vec4> seeds;
  for (double scale : {1.0, 1.6, 2.56}) {
    seeds.push_back(base * scale * Vec4(1, 0, 0, 0));
    seeds.push_back(base * scale * Vec4(0.5, 0.5, 0.5, 0.5));
  }
  const double residual = pullback_residual(burns, seeds, 256);
  gate.require(residual <= 1e-5, "pullback residual " + num(residual) + " at 256 steps");

  const double order =
      convergence_order(burns, burns.safety_radius * Vec4(0.5, 0.5, 0.5, 0.5), 2, 3);
  gate.require(std::abs(order - 4.0) <= 0.5, "measured order " + num(order));

  // Synthetic rho^{-1/2} family and the Burns family against their exponents.
  const MoserFalloff synth = falloff_fit(hopf_moser_spec(0.5, 0.5), 5.0, 170.0, 6, 64);
  gate.require(std::abs(synth.displacement_slope + 0.5) <= 0.05,
               "synthetic displacement slope " + num(synth.displacement_slope));
  gate.require(std::abs(synth.jacobian_slope + 1.5) <= 0.15,
               "synthetic jacobian slope " + num(synth.jacobian_slope));
  const MoserFalloff bf = falloff_fit(burns, base, 40.0 * base, 6, 64);
  gate.require(std::abs(bf.displacement_slope + 1.0) <= 0.1,
               "burns displacement slope " + num(bf.displacement_slope));
  gate.require(std::abs(bf.jacobian_slope + 2.0) <= 0.2,
               "burns jacobian slope " + num(bf.jacobian_slope));

  // The Burns spec is -I invariant: the flow must commute with the Z2 action.
  const Vec4 x0(2.4, 1.1, -2.0, 1.7);
  const Vec4 mirrored = integrate_flow(burns, Vec4(-x0), 64).end;
  const Vec4 expected = -integrate_flow(burns, x0, 64).end;
  gate.require((mirrored - expected).norm() <= 1e-12,
               "Z2 equivariance defect " + num((mirrored - expected).norm()));

  const double secs = seconds_since(t0);
  gate.require(secs < 180.0, "took " + num(secs) + "s (budget 180)");
}

// 9. Negative controls: sub-threshold decay is flagged, non-free quotients
//    are rejected, and the ends bound contradicts an undersized b_plus.
void negative_controls(Gate& gate) {
  const CatalogMetric slow = make_catalog_metric("slowfall:c=1.0,rate=0.4");
  const FalloffReport falloff = verify_falloff(slow.field);
  gate.require(!falloff.pass, "slowfall passed the falloff gate, slope_g " + num(falloff.slope_g));
  const MassEstimate est = chrusciel_mass(slow.field, make_sphere_rule(8));
  gate.require(est.non_convergent, "slowfall mass not flagged non-convergent");

  bool rejected = false;
  try {
    make_catalog_metric("flat", "q=4,p=2");
  } catch (const std::invalid_argument&) {
    rejected = true;
  }
  gate.require(rejected, "lens(4,2) quotient was accepted");
  rejected = false;
  try {
    lens_generator(4, 2);
  } catch (const std::invalid_argument&) {
    rejected = true;
  }
  gate.require(rejected, "lens_generator(4,2) was accepted");

  const EndsBound ends = ends_bound(IntersectionForm::diagonal({1, 1}));
  gate.require(ends.count == 2, "ends bound " + std::to_string(ends.count) + " != 2");
  const IntersectionForm ambient = IntersectionForm::diagonal({1, -1});
  gate.require(b_plus(ambient) == 1, "ambient b_plus != 1");
  const EndsBound checked = ends_bound(IntersectionForm::diagonal({1, 1}), &ambient);
  gate.require(!checked.consistent, "2 ends against b_plus = 1 not flagged inconsistent");
}

}  // namespace

int main() {
  struct Entry {
    const char* label;
    void (*fn)(Gate&);
  };
  const Entry entries[] = {
      {"conformal exact-mass oracle", conformal_oracle},
      {"flat and lens-quotient zero mass", flat_zero},
      {"eguchi-hanson scalar gate and zero mass", ricci_flat_zero},
      {"burns flux vs cohomological mass", burns_crosscheck},
      {"penrose equality and strict gap", penrose_equality},
      {"hirzebruch-jung sweep q <= 200", hj_sweep},
      {"capsule degrees, profiles, central quotients", capsule_suite},
      {"moser flows: identity, pullback, falloff", moser_suite},
      {"negative controls", negative_controls},
  };

  int failed = 0;
  const int total = static_cast<int>(sizeof entries / sizeof entries[0]);
  for (int i = 0; i < total; ++i) {
    Gate gate;
    const auto t0 = Clock::now();
    try {
      entries[i].fn(gate);
    } catch (const std::exception& e) {
      gate.require(false, std::string("exception: ") + e.what());
    }
    const double secs = seconds_since(t0);
    if (gate.passed()) {
      std::printf("PASS %d/%d %s [%.1fs]\n", i + 1, total, entries[i].label, secs);
    } else {
      ++failed;
      std::printf("FAIL %d/%d %s [%.1fs] -- %s\n", i + 1, total, entries[i].label, secs,
                  gate.notes().c_str());
    }
    std::fflush(stdout);
  }
  if (failed) {
    std::printf("acceptance: %d of %d criteria FAILED\n", failed, total);
    return 1;
  }
  std::printf("acceptance: %d/%d criteria passed\n", total, total);
  return 0;
}
