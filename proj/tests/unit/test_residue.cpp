#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "builders.hpp"
#include "logfol/residue.hpp"
#include "oracles.hpp"

using namespace logfol;
using namespace logfol::test;

namespace {

bool parallel(const IntegerVector& a, const IntegerVector& b) {
  if (a.size() != b.size()) return false;
  // a and b are parallel iff every 2x2 minor vanishes.
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (a[i] * b[j] != a[j] * b[i]) return false;
  return true;
}

bool has_parallel(const RelationSearch& search, const IntegerVector& v) {
  for (const auto& c : search.candidates)
    if (parallel(c.vector, v)) return true;
  return false;
}

// Independent residual, accumulated in long double.
long double residual_of(const IntegerVector& m, const std::vector<Complex>& values) {
  long double re = 0, im = 0;
  for (std::size_t j = 0; j < m.size(); ++j) {
    re += static_cast<long double>(m[j].get_d()) * values[j].real();
    im += static_cast<long double>(m[j].get_d()) * values[j].imag();
  }
  return std::hypot(re, im);
}

void check_candidate_contract(const RelationSearch& search, const std::vector<Complex>& values, double epsilon,
                              const Integer& bound) {
  CHECK(search.heuristic);
  for (std::size_t i = 0; i < search.candidates.size(); ++i) {
    const auto& c = search.candidates[i];
    CHECK(residual_of(c.vector, values) <= epsilon);
    CHECK(c.residual <= epsilon);
    CHECK(vector_height(c.vector) <= bound);
    CHECK(c.height == vector_height(c.vector));
    CHECK(vector_gcd(c.vector) == 1);
    for (std::size_t j = i + 1; j < search.candidates.size(); ++j)
      CHECK_FALSE(parallel(c.vector, search.candidates[j].vector));
  }
}

std::vector<Complex> numeric(const std::vector<ResidueVector>& lambdas) {
  std::vector<Complex> out;
  for (const auto& l : lambdas) out.push_back(l.numeric_value());
  return out;
}

}  // namespace

TEST_CASE("symbol basis validation") {
  CHECK_THROWS_AS(SymbolBasis({"1", "1"}), ValidationError);
  CHECK_THROWS_AS(SymbolBasis({""}), ValidationError);
  CHECK_THROWS_AS(SymbolBasis({"1", "pi"}, {Complex(2.0), Complex(3.14)}), ValidationError);
  CHECK_THROWS_AS(SymbolBasis({"pi"}, {Complex(std::nan(""))}), ValidationError);
  CHECK_THROWS_AS(SymbolBasis({"1", "pi"}, {Complex(1.0)}), ValidationError);
  const SymbolBasis ok({"1", "pi"}, {Complex(1.0), Complex(std::numbers::pi)});
  CHECK(ok.index_of("pi") == 1u);
  CHECK_FALSE(ok.index_of("e").has_value());
}

TEST_CASE("residue vectors reject zero and unknown symbols") {
  const auto b = sqrt2_basis();
  CHECK_THROWS_AS(ResidueVector(b, qs({"0", "0"})), ZeroResidue);
  CHECK_THROWS_AS(ResidueVector::from_terms(b, {{"e", Rational(1)}}), UnknownSymbol);
  const auto l = ResidueVector::from_terms(b, {{"1", Rational(1)}, {"sqrt2", Rational(-1, 2)}});
  CHECK(l.coords() == qs({"1", "-1/2"}));
  CHECK(l.to_string() == "1 - 1/2*sqrt2");
  CHECK(std::abs(l.numeric_value() - Complex(1.0 - std::sqrt(2.0) / 2)) < 1e-15);
}

TEST_CASE("relation lattice examples") {
  CHECK(relation_lattice(integer_residues({1, -1})) == Lattice::from_generators(2, {make_vector({1, 1})}));
  CHECK(relation_lattice(sqrt2_residues()) == Lattice::from_generators(3, {make_vector({1, 1, 1})}));

  const auto k = relation_lattice(integer_residues({1, 1, -2}));
  CHECK(k.rank() == 2);
  CHECK(lattice_contains(k, make_vector({1, -1, 0})));
  CHECK(lattice_contains(k, make_vector({1, 1, 1})));
  CHECK(k == Lattice::from_generators(3, oracle::enumerate_kernel(IntegerMatrix{{1}, {1}, {-2}}, 3)));
}

TEST_CASE("relation lattice clears denominators exactly") {
  const auto b = sqrt2_basis();
  const auto lambdas = residues(b, {qs({"1/2", "1/3"}), qs({"-1/2", "-1/3"})});
  CHECK(relation_lattice(lambdas) == Lattice::from_generators(2, {make_vector({1, 1})}));
}

TEST_CASE("relation lattice rejects mixed bases") {
  std::vector<ResidueVector> lambdas = integer_residues({1});
  lambdas.emplace_back(sqrt2_basis(), qs({"1", "1"}));
  CHECK_THROWS_AS(relation_lattice(lambdas), MixedBases);
}

TEST_CASE("relation lattice agrees with brute-force kernels") {
  std::mt19937 rng(21);
  std::uniform_int_distribution<int> count(2, 4), coeff(-3, 3), den(1, 3);
  const auto b = make_basis({"1", "a", "b"});
  for (int trial = 0; trial < 60; ++trial) {
    const int k = count(rng);
    std::vector<ResidueVector> lambdas;
    IntegerMatrix column(k, 3);
    for (int j = 0; j < k; ++j) {
      std::vector<Rational> c(3);
      do {
        for (auto& x : c) x = Rational(coeff(rng), 1);
      } while (c[0] == 0 && c[1] == 0 && c[2] == 0);
      for (int s = 0; s < 3; ++s) column(j, s) = c[s].get_num();
      lambdas.emplace_back(b, c);
    }
    const auto lattice = relation_lattice(lambdas);
    const auto brute = oracle::enumerate_kernel(column, k <= 3 ? 4 : 2);
    for (const auto& m : brute) CHECK(lattice_contains(lattice, m));
    CHECK(lattice == integer_kernel(column));
  }
}

TEST_CASE("relation lattice is permutation equivariant and scale invariant") {
  std::mt19937 rng(4);
  std::uniform_int_distribution<int> coeff(-4, 4);
  const auto b = make_basis({"1", "x"});
  for (int trial = 0; trial < 80; ++trial) {
    std::vector<std::vector<Rational>> coords(4, std::vector<Rational>(2));
    for (auto& c : coords) {
      do {
        c = {Rational(coeff(rng), 1), Rational(coeff(rng), 2)};
        c[1].canonicalize();
      } while (c[0] == 0 && c[1] == 0);
    }
    const auto base = relation_lattice(residues(b, coords));

    std::vector<std::size_t> perm{0, 1, 2, 3};
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::vector<Rational>> permuted;
    for (auto p : perm) permuted.push_back(coords[p]);
    const auto moved = relation_lattice(residues(b, permuted));
    std::vector<IntegerVector> rows;
    for (std::size_t i = 0; i < base.rank(); ++i) {
      IntegerVector v(4);
      for (std::size_t j = 0; j < 4; ++j) v[j] = base.basis()(i, perm[j]);
      rows.push_back(v);
    }
    CHECK(moved == Lattice::from_generators(4, rows));

    const long numerator = coeff(rng);
    const Rational scale = make_rational(numerator == 0 ? -7 : numerator * 3, 5);
    auto scaled = coords;
    for (auto& c : scaled)
      for (auto& x : c) x *= scale;
    CHECK(relation_lattice(residues(b, scaled)) == base);
  }
}

TEST_CASE("residue theorem check examples") {
  for (long d : {1, 2, 5}) {
    const std::vector<Integer> degrees{d, d};
    CHECK(residue_theorem_check(degrees, integer_residues({1, -1})).satisfied);
  }
  const std::vector<Integer> ones{1, 1, 1};
  CHECK(residue_theorem_check(ones, sqrt2_residues()).satisfied);
  const auto violated = residue_theorem_check(ones, integer_residues({1, 1, -1}));
  CHECK_FALSE(violated.satisfied);
  CHECK(violated.value == qs({"1"}));
  CHECK(violated.value_text == "1");
}

TEST_CASE("numeric relations for (1, 1, -2)") {
  const std::vector<Complex> values{1.0, 1.0, -2.0};
  const auto search = numeric_relation_candidates(values, Integer(100), 1e-9);
  CHECK(has_parallel(search, make_vector({1, 1, 1})));
  CHECK(has_parallel(search, make_vector({1, -1, 0})));
  check_candidate_contract(search, values, 1e-9, Integer(100));
}

TEST_CASE("numeric relations for (1, sqrt2, -1 - sqrt2) are exactly the class of (1, 1, 1)") {
  const auto values = numeric(sqrt2_residues());
  const auto search = numeric_relation_candidates(values, Integer(100), 1e-9);
  REQUIRE(search.candidates.size() == 1);
  CHECK(parallel(search.candidates.front().vector, make_vector({1, 1, 1})));
  const auto exact = relation_lattice(sqrt2_residues());
  CHECK(lattice_contains(exact, search.candidates.front().vector));
}

TEST_CASE("no numeric relation for (1, pi) up to height 1000") {
  const std::vector<Complex> values{1.0, std::numbers::pi};
  const auto search = numeric_relation_candidates(values, Integer(1000), 1e-9);
  CHECK(search.candidates.empty());
  // Exhaustive scan: for each q <= 1000 the best p leaves a residual above 1e-9.
  long double best = 1.0L;
  for (long qv = 1; qv <= 1000; ++qv) {
    const long double x = qv * std::numbers::pi_v<long double>;
    best = std::min(best, std::fabs(x - std::nearbyint(x)));
  }
  CHECK(best > 1e-9L);
}

TEST_CASE("numeric relation search on complex values") {
  const Complex i(0.0, 1.0);
  const std::vector<Complex> values{1.0, i, -1.0 - i};
  const auto search = numeric_relation_candidates(values, Integer(50), 1e-9);
  REQUIRE(search.candidates.size() == 1);
  CHECK(parallel(search.candidates.front().vector, make_vector({1, 1, 1})));
}

TEST_CASE("default epsilon scales with the values") {
  const std::vector<Complex> values{1.0, -4.0};
  CHECK(default_relation_epsilon(values) == doctest::Approx(4e-10));
}

TEST_CASE("exact and numeric relation lattices agree") {
  std::mt19937 rng(8);
  std::uniform_int_distribution<int> count(2, 4), coeff(-5, 5);
  const auto b = sqrt2_basis();
  for (int trial = 0; trial < 40; ++trial) {
    const int k = count(rng);
    std::vector<std::vector<Rational>> coords;
    for (int j = 0; j < k; ++j) {
      std::vector<Rational> c(2);
      do {
        c = {Rational(coeff(rng)), Rational(coeff(rng))};
      } while (c[0] == 0 && c[1] == 0);
      coords.push_back(c);
    }
    const auto lambdas = residues(b, coords);
    const auto exact = relation_lattice(lambdas);
    const auto values = numeric(lambdas);
    const auto search = numeric_relation_candidates(values, Integer(1000), 1e-9);
    check_candidate_contract(search, values, 1e-9, Integer(1000));
    for (std::size_t i = 0; i < exact.rank(); ++i) {
      const auto v = exact.basis_vector(i);
      if (vector_height(v) <= 100) CHECK(has_parallel(search, primitive_normalized(v)));
    }
  }
}

TEST_CASE("primitive normalization") {
  CHECK(primitive_normalized(make_vector({-2, 4, 0})) == make_vector({1, -2, 0}));
  CHECK(primitive_normalized(make_vector({0, -3, 6})) == make_vector({0, 1, -2}));
}
