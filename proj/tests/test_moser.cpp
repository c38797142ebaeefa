#include "alemass/catalog.hpp"
#include "alemass/forms.hpp"
#include "alemass/moser.hpp"
#include "alemass/types.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace alemass;
using doctest::Contains;

namespace {

// omega = omega0 + s * dx1^dx2 with its exact primitive theta = s x1 dx2.
PerturbationSpec sheared_spec(double s) {
  PerturbationSpec spec;
  spec.label = "shear";
  spec.chart = AsymptoticChart{1.0, 1, 1.0};
  spec.working_radius = 2.0;
  spec.safety_radius = 3.0;
  Mat4 e = Mat4::Zero();
  e(0, 1) = 1.0;
  e(1, 0) = -1.0;
  const Mat4 w = standard_symplectic_matrix() + s * e;
  spec.omega = TwoFormField{"sheared", [w](const Vec4&) { return w; }, true};
  spec.theta =
      OneFormField{"shear primitive", [s](const Vec4& x) { return Vec4(0, s * x(0), 0, 0); }};
  return spec;
}

// Constant drift v: theta = W0 v makes the Moser field exactly v.
PerturbationSpec drift_spec(const Vec4& v) {
  PerturbationSpec spec;
  spec.label = "drift";
  spec.chart = AsymptoticChart{1.0, 1, 1.0};
  spec.working_radius = 2.0;
  spec.safety_radius = 3.0;
  const Mat4 w0 = standard_symplectic_matrix();
  spec.omega = TwoFormField{"omega0", [w0](const Vec4&) { return w0; }, true};
  const Vec4 theta = w0 * v;
  spec.theta = OneFormField{"drift covector", [theta](const Vec4&) { return theta; }};
  return spec;
}

}  // namespace

TEST_CASE("moser solve matches hand values on constant covectors") {
  // W0 X = theta with theta = 0.3 dx1 gives X = 0.3 e2; theta = 0.5 dx3
  // gives X = 0.5 e4.
  const Vec4 far(2.5, 0.0, 0.0, 0.0);  // past the cutoff shoulder
  {
    const PerturbationSpec spec = drift_spec(Vec4(0.0, 0.3, 0.0, 0.0));
    const Vec4 x = moser_field(spec, far, 0.0);
    CHECK((x - Vec4(0.0, 0.3, 0.0, 0.0)).norm() <= 1e-14);
  }
  {
    const PerturbationSpec spec = drift_spec(Vec4(0.0, 0.0, 0.0, 0.5));
    const Vec4 x = moser_field(spec, far, 1.0);
    CHECK((x - Vec4(0.0, 0.0, 0.0, 0.5)).norm() <= 1e-14);
  }
}

TEST_CASE("cutoff profile") {
  const PerturbationSpec spec = drift_spec(Vec4(0.0, 0.3, 0.0, 0.0));  // c = 3
  CHECK(moser_field(spec, Vec4(1.2, 0, 0, 0), 0.5).norm() == 0.0);  // below c - 1.5
  // Midpoint of the shoulder: smoothstep5(1/2) = 1/2 exactly.
  CHECK(moser_field(spec, Vec4(1.75, 0, 0, 0), 0.5).norm() ==
        doctest::Approx(0.15).epsilon(1e-12));
  CHECK(moser_field(spec, Vec4(2.0, 0, 0, 0), 0.5).norm() ==
        doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("field is theta-orthogonal") {
  const PerturbationSpec spec = burns_moser_spec(0.5);
  for (double rho : {2.5, 4.0, 9.0}) {
    for (double t : {0.0, 0.5, 1.0}) {
      const Vec4 x = rho * Vec4(0.5, 0.5, 0.5, 0.5);
      const Vec4 field = moser_field(spec, x, t);
      CHECK(std::abs(field.dot(spec.theta.eval(x))) <= 1e-12);
    }
  }
}

TEST_CASE("flat spec flows to the identity") {
  const PerturbationSpec spec = flat_moser_spec();
  const SpecDiagnostics diag = validate_spec(spec);
  CHECK(diag.sup_deviation == 0.0);
  CHECK(diag.sup_field == 0.0);
  const Vec4 x0(2.2, -1.3, 0.4, 1.9);
  const FlowSample flow = integrate_flow(spec, x0, 32);
  CHECK(flow.displacement <= 1e-12);
  CHECK(pullback_residual(spec, {x0}, 32) <= 1e-10);
}

TEST_CASE("burns spec passes validation and certifies the pullback") {
  const PerturbationSpec spec = burns_moser_spec(0.5);
  CHECK(spec.declared_epsilon == 1.0);
  const SpecDiagnostics diag = validate_spec(spec);
  CHECK(diag.sup_deviation < 1.0 / std::sqrt(2.0));
  CHECK(diag.primitive_defect <= 1e-6);
  CHECK(diag.sup_field < 1.0);

  const std::vector<Vec4> seeds{Vec4(4.0, 0.0, 0.0, 0.0), Vec4(2.0, 2.0, 2.0, 2.0)};
  CHECK(pullback_residual(spec, seeds, 256) <= 1e-5);
}

TEST_CASE("flow segments compose") {
  const PerturbationSpec spec = burns_moser_spec(0.5);
  const Vec4 x0(4.0, 0.0, 0.0, 0.0);
  const Vec4 mid = integrate_flow(spec, x0, 128, 0.0, 0.5).end;
  const Vec4 glued = integrate_flow(spec, mid, 128, 0.5, 1.0).end;
  const Vec4 direct = integrate_flow(spec, x0, 256, 0.0, 1.0).end;
  CHECK((glued - direct).norm() <= 1e-9);
}

TEST_CASE("rk4 order is four") {
  const PerturbationSpec spec = burns_moser_spec(0.5);
  const double order = convergence_order(spec, spec.safety_radius * Vec4(0.5, 0.5, 0.5, 0.5), 2, 3);
  CHECK(std::abs(order - 4.0) <= 0.5);
}

TEST_CASE("hopf family displacement and jacobian falloff") {
  const PerturbationSpec spec = hopf_moser_spec(0.5, 0.5);
  const MoserFalloff fall = falloff_fit(spec, spec.safety_radius, 170.0, 6, 64);
  REQUIRE(!fall.at_noise_floor);
  CHECK(std::abs(fall.displacement_slope + 0.5) <= 0.05);
  CHECK(std::abs(fall.jacobian_slope + 1.5) <= 0.15);

  CHECK_THROWS_AS(falloff_fit(spec, spec.safety_radius - 1.0, 170.0, 6, 64),
                  std::invalid_argument);
  CHECK_THROWS_AS(falloff_fit(spec, spec.safety_radius, 20.0, 6, 64), std::invalid_argument);
}

TEST_CASE("flow is equivariant under the isometries of the data") {
  const PerturbationSpec spec = burns_moser_spec(0.5);
  const Vec4 x0(2.4, 1.1, -2.0, 1.7);
  const Vec4 end = integrate_flow(spec, x0, 64).end;
  // Antipodal map: the data is even/odd, so the flow is exactly odd.
  const Vec4 neg_end = integrate_flow(spec, Vec4(-x0), 64).end;
  CHECK((neg_end + end).norm() <= 1e-13);
  // Lens rotation commuting with J0.
  const Mat4 r = lens_rotation(4, 1);
  const Vec4 rot_end = integrate_flow(spec, Vec4(r * x0), 64).end;
  CHECK((rot_end - r * end).norm() <= 1e-12);
}

TEST_CASE("flow traps") {
  // Outward drift of speed 1.2 breaks the unit displacement bound.
  const PerturbationSpec out = drift_spec(Vec4(1.2, 0.0, 0.0, 0.0));
  CHECK_THROWS_WITH_AS(integrate_flow(out, Vec4(4.0, 0.0, 0.0, 0.0), 64),
                       Contains("exits the certified region"), std::runtime_error);
  // Inward drift crosses rho = c - 1 long before moving a unit distance.
  const PerturbationSpec in = drift_spec(Vec4(-0.6, 0.0, 0.0, 0.0));
  CHECK_THROWS_WITH_AS(integrate_flow(in, Vec4(2.3, 0.0, 0.0, 0.0), 64),
                       Contains("exits the certified region"), std::runtime_error);
}

TEST_CASE("validation gates") {
  // Deviation at 0.9 trips the nondegeneracy gate.
  CHECK_THROWS_WITH_AS(validate_spec(sheared_spec(0.9)), Contains("nondegeneracy"),
                       std::invalid_argument);
  // Small deviation but theta does not differentiate to it.
  PerturbationSpec broken = sheared_spec(0.2);
  broken.theta = OneFormField{"zero", [](const Vec4&) { return Vec4::Zero(); }};
  CHECK_THROWS_WITH_AS(validate_spec(broken), Contains("d theta fails to match"),
                       std::invalid_argument);
  // Geometry sanity of the radii.
  PerturbationSpec narrow = flat_moser_spec();
  narrow.safety_radius = narrow.working_radius + 0.4;
  CHECK_THROWS_WITH_AS(validate_spec(narrow), Contains("safety radius"), std::invalid_argument);
  PerturbationSpec sunk = flat_moser_spec();
  sunk.working_radius = 0.25;
  sunk.safety_radius = 1.25;
  CHECK_THROWS_WITH_AS(validate_spec(sunk), Contains("below the chart floor"),
                       std::invalid_argument);
  // A decaying family within all gates passes.
  CHECK_NOTHROW(validate_spec(hopf_moser_spec(0.2, 0.5)));
}

TEST_CASE("degenerate interpolated form is caught at the solve") {
  PerturbationSpec spec = drift_spec(Vec4(0.1, 0.0, 0.0, 0.0));
  spec.omega = TwoFormField{"vanishing", [](const Vec4&) { return Mat4::Zero(); }, false};
  CHECK_THROWS_WITH_AS(moser_field(spec, Vec4(2.5, 0, 0, 0), 1.0),
                       Contains("Moser solve residual"), std::runtime_error);
}

TEST_CASE("safety radius search") {
  CHECK(find_safety_radius(burns_moser_spec(0.5)) == doctest::Approx(3.0));
  const PerturbationSpec fast = drift_spec(Vec4(1.2, 0.0, 0.0, 0.0));
  CHECK_THROWS_WITH_AS(find_safety_radius(fast), Contains("no admissible safety radius"),
                       std::runtime_error);
}

TEST_CASE("radial primitive recovers the radially exact family") {
  const TwoFormField delta = radial_exact_delta(0.4, 0.5);
  const OneFormField psi = radial_primitive(delta, 3.0, {4.0, 8.0, 20.0});
  for (const Vec4& x : {Vec4(5.0, 0, 0, 0), Vec4(3.0, 3.0, 3.0, 3.0), Vec4(0, 7.0, 2.0, 0)}) {
    const Vec4 want = radial_exact_psi(0.4, 0.5, 3.0, x);
    CHECK((psi.eval(x) - want).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("nonradial classes are refused by the primitive") {
  // sigma_hopf is not closed: the defect is the transported dsigma class.
  CHECK_THROWS_WITH_AS(radial_primitive(hopf_delta(0.5, 0.5), 3.0, {6.0}),
                       Contains("beta-correction"), std::runtime_error);
  // eta .| delta_omega vanishes identically for the burns deviation, so the
  // candidate primitive is zero and cannot reproduce a nonzero delta.
  const PerturbationSpec spec = burns_moser_spec(0.5);
  const Mat4 w0 = standard_symplectic_matrix();
  const TwoFormField bdelta{"burns-delta",
                            [spec, w0](const Vec4& x) { return Mat4(spec.omega.eval(x) - w0); },
                            true};
  CHECK_THROWS_WITH_AS(radial_primitive(bdelta, 2.0, {4.0}), Contains("beta-correction"),
                       std::runtime_error);
}
