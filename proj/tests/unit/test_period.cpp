#include <doctest.h>

#include <cmath>
#include <numbers>

#include "builders.hpp"
#include "logfol/period.hpp"

using namespace logfol;
using namespace logfol::test;

namespace {

const Complex kTwoPiI(0.0, 2.0 * std::numbers::pi);

// Components x, y, z of P^2 with the given integer residues.
FoliationSpec coordinate_lines(const std::vector<long>& lambdas) {
  auto spec = projective_spec(2, std::vector<long>(lambdas.size(), 1), integer_residues(lambdas));
  for (std::size_t j = 0; j < lambdas.size(); ++j) spec.components[j].polynomial = coordinate_form(3, j);
  return spec;
}

LineRestriction two_points() {
  // f0 = t, f1 = t - 1 with residues (1, -1).
  return make_line_restriction({{0.0, 1.0}, {-1.0, 1.0}}, {1.0, -1.0});
}

std::vector<Complex> point(std::initializer_list<double> coords) {
  std::vector<Complex> out;
  for (double c : coords) out.emplace_back(c, 0.0);
  return out;
}

}  // namespace

TEST_CASE("polynomial roots are accurate") {
  // (t - 1)(t - 2)(t + 3i)
  const ComplexPolynomial p{Complex(0, 6), Complex(2, -9), Complex(-3, 3), 1.0};
  const auto roots = polynomial_roots(p);
  REQUIRE(roots.size() == 3);
  for (const auto& r : roots) CHECK(std::abs(evaluate(p, r)) < 1e-10);
  CHECK(derivative(p) == ComplexPolynomial{Complex(2, -9), Complex(-6, 6), 3.0});
}

TEST_CASE("restricting two coordinate lines of P^2") {
  auto spec = coordinate_lines({1, -1});
  for (std::uint64_t seed : {0u, 1u, 99u}) {
    const auto line = restrict_to_line(spec, seed);
    REQUIRE(line.roots.size() == 2);
    CHECK(line.roots[0].component != line.roots[1].component);
    CHECK(std::abs(line.roots[0].value - line.roots[1].value) > 1e-6);
    for (const auto& f : line.factors) CHECK(f.size() == 2);
  }
  CHECK(restrict_to_line(spec, 5).base == restrict_to_line(spec, 5).base);
}

TEST_CASE("a conic plus two lines gives 2 + 1 + 1 roots") {
  auto spec = projective_spec(2, {2, 1, 1}, integer_residues({1, -1, -1}));
  spec.components[0].polynomial = polynomial(3, {{1, {2, 0, 0}}, {1, {0, 2, 0}}, {1, {0, 0, 2}}});
  spec.components[1].polynomial = coordinate_form(3, 0);
  spec.components[2].polynomial = coordinate_form(3, 1);
  const auto line = restrict_to_line(spec, 7);
  CHECK(line.roots.size() == 4);
  std::vector<int> per_component(3, 0);
  for (const auto& r : line.roots) per_component[r.component] += r.multiplicity;
  CHECK(per_component == std::vector<int>{2, 1, 1});
}

TEST_CASE("coincident components never give an admissible line") {
  auto spec = coordinate_lines({1, -1});
  spec.components[1].polynomial = coordinate_form(3, 0);
  CHECK_THROWS_AS(restrict_to_line(spec, 0), DegenerateLine);
}

TEST_CASE("period checks need polynomials and numeric values") {
  const auto bare = projective_spec(2, {1, 1}, integer_residues({1, -1}));
  CHECK_THROWS_AS(restrict_to_line(bare, 0), PreconditionError);
  CHECK_THROWS_AS(verify_meridians(bare), PreconditionError);

  auto symbolic = projective_spec(2, {1, 1}, residues(make_basis({"1"}), {qs({"1"}), qs({"-1"})}));
  symbolic.components[0].polynomial = coordinate_form(3, 0);
  symbolic.components[1].polynomial = coordinate_form(3, 1);
  CHECK_THROWS_AS(verify_meridians(symbolic), PreconditionError);
}

TEST_CASE("loop integral around a single simple pole") {
  const auto line = make_line_restriction({{0.0, 1.0}}, {1.0});
  const auto r = integrate_loop(line, 0.0, 1.0, 256);
  CHECK(std::abs(r.value - kTwoPiI) < 1e-8);
  CHECK(r.abs_error < 1e-8);
  CHECK(r.abs_error == doctest::Approx(std::abs(r.value - r.expected)));
  CHECK(r.samples == 256);
}

TEST_CASE("loop integrals around one and both of two poles") {
  const auto line = two_points();
  const auto one = integrate_loop(line, 0.0, 0.3, 1024);
  CHECK(std::abs(one.value - kTwoPiI) < 1e-10);
  const auto both = integrate_loop(line, 0.5, 2.0, 1024);
  CHECK(std::abs(both.value) < 1e-10);
  CHECK(std::abs(both.expected) == 0.0);
}

TEST_CASE("loop integral preconditions") {
  const auto line = two_points();
  CHECK_THROWS_AS(integrate_loop(line, 0.0, 1.0, 256), RootOnContour);
  CHECK_THROWS_AS(integrate_loop(line, 0.0, 0.3, 32), PreconditionError);
}

TEST_CASE("radius independence") {
  const auto line = two_points();
  const double tol = 1e-6;
  const auto small = integrate_loop(line, 0.0, 0.1, 1024);
  const auto large = integrate_loop(line, 0.0, 0.3, 1024);
  CHECK(std::abs(small.value - large.value) <= 2 * tol);
  const auto wide_a = integrate_loop(line, 0.5, 2.0, 1024);
  const auto wide_b = integrate_loop(line, 0.5, 4.0, 1024);
  CHECK(std::abs(wide_a.value - wide_b.value) <= 2 * tol);
}

TEST_CASE("doubling the samples reduces the error down to the noise floor") {
  const auto line = two_points();
  double previous = integrate_loop(line, 0.0, 0.6, 64).abs_error;
  for (std::size_t samples = 128; samples <= 4096; samples *= 2) {
    const double error = integrate_loop(line, 0.0, 0.6, samples).abs_error;
    CHECK((error < previous || error < 1e-12));
    previous = error;
  }
}

TEST_CASE("meridians of three coordinate lines") {
  const auto report = verify_meridians(coordinate_lines({1, 1, -2}), 1e-6, 0, 1024);
  REQUIRE(report.meridians.size() == 3);
  for (const auto& m : report.meridians) {
    const Complex lambda = report.line.residues[m.component];
    CHECK(std::abs(m.integral.value - kTwoPiI * lambda) <= 1e-6);
  }
  CHECK(report.meridians_pass);
  CHECK(std::abs(report.global_sum) <= 3e-6);
  CHECK(report.global_law_holds);
  CHECK(report.global_sum_vanishes);
  CHECK(report.residue_theorem.satisfied);
}

TEST_CASE("global sum flags a violated residue theorem") {
  const auto report = verify_meridians(coordinate_lines({1, 1, -1}), 1e-6, 0, 1024);
  CHECK(report.meridians_pass);
  CHECK(std::abs(report.global_sum - kTwoPiI) <= 3e-6);
  CHECK(report.global_law_holds);
  CHECK_FALSE(report.global_sum_vanishes);
  CHECK_FALSE(report.residue_theorem.satisfied);
}

TEST_CASE("an impossible tolerance raises a meridian mismatch") {
  try {
    verify_meridians(coordinate_lines({1, 1, -2}), 1e-30, 0, 64);
    FAIL("expected MeridianMismatch");
  } catch (const MeridianMismatch& e) {
    CHECK_FALSE(e.report().meridians_pass);
    CHECK(e.report().worst_error > 1e-30);
  }
}

TEST_CASE("exact relations annihilate meridian values") {
  // Three lines with lambda = (1, sqrt2, -1 - sqrt2) and a conic pencil.
  auto spec = projective_spec(2, {1, 1, 1}, sqrt2_residues());
  for (std::size_t j = 0; j < 3; ++j) spec.components[j].polynomial = coordinate_form(3, j);
  const double tol = 1e-6;
  const auto report = verify_meridians(spec, tol, 3, 1024);
  std::vector<Complex> per_component(3);
  for (const auto& m : report.meridians) per_component[m.component] = m.integral.value;
  const auto k = spec_relation_lattice(spec);
  for (std::size_t i = 0; i < k.rank(); ++i) {
    const auto m = k.basis_vector(i);
    if (vector_height(m) > 10) continue;
    Complex combination = 0.0;
    for (std::size_t j = 0; j < 3; ++j) combination += m[j].get_d() * per_component[j];
    CHECK(std::abs(combination) <= tol);
  }
}

TEST_CASE("explicit cover check in dimensions 2 and 3") {
  for (std::size_t dim : {2u, 3u}) {
    std::vector<Complex> unit_step(dim + 1, 0.0);
    unit_step[0] = -1.0;
    unit_step[1] = 1.0;
    const std::vector<std::vector<Complex>> step{std::vector<Complex>(dim, 0.0),
                                                 [&] {
                                                   std::vector<Complex> e(dim, 0.0);
                                                   e[0] = 1.0;
                                                   return e;
                                                 }()};
    const auto a = explicit_cover_check(dim, unit_step, step);
    CHECK(std::abs(a.value - kTwoPiI) < 1e-8);
    CHECK(a.abs_error < 1e-8);

    std::vector<Complex> cancel(dim + 1, 0.0);
    cancel[0] = 0.5;
    cancel[1] = 1.0;
    cancel[2] = -1.0;
    std::vector<Complex> diagonal(dim, 0.0);
    diagonal[0] = diagonal[1] = 1.0;
    const std::vector<std::vector<Complex>> both{std::vector<Complex>(dim, 0.0), diagonal};
    CHECK(std::abs(explicit_cover_check(dim, cancel, both).value) < 1e-8);

    std::vector<Complex> generic(dim + 1);
    for (std::size_t j = 0; j <= dim; ++j) generic[j] = Complex(0.3 + j, -0.7 * j);
    auto corner = [&](double x1, double x2) {
      std::vector<Complex> p(dim, 0.0);
      p[0] = x1;
      p[1] = x2;
      return p;
    };
    const std::vector<std::vector<Complex>> square{corner(0, 0), corner(1, 0), corner(1, 1), corner(0, 1),
                                                   corner(0, 0)};
    const auto loop = explicit_cover_check(dim, generic, square);
    CHECK(std::abs(loop.value) < 1e-8);
    CHECK(loop.primitive_deviation < 1e-8);
  }
}

TEST_CASE("explicit cover check with complex path coordinates and non-exponential directions") {
  const std::vector<Complex> lambdas{1.0, 2.0, Complex(0, 1)};
  const std::vector<std::vector<Complex>> path{point({0.1, 0.2, 0.3}), {Complex(0.4, 0.1), 0.9, -1.0}};
  const auto r = explicit_cover_check(3, lambdas, path);
  CHECK(r.abs_error < 1e-8);
}

TEST_CASE("explicit cover check preconditions and tolerance") {
  const std::vector<Complex> lambdas{1.0, 1.0};
  const std::vector<std::vector<Complex>> single{point({0.0, 0.0})};
  CHECK_THROWS_AS(explicit_cover_check(2, lambdas, single), PreconditionError);
  const std::vector<std::vector<Complex>> path{point({0.0, 0.0}), point({1.0, 0.0})};
  CHECK_THROWS_AS(explicit_cover_check(2, lambdas, path, 1e-30), ToleranceExceeded);
}
