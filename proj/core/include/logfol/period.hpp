#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "logfol/errors.hpp"
#include "logfol/foliation.hpp"
#include "logfol/residue.hpp"

namespace logfol {

inline constexpr std::size_t kDefaultSamples = 1024;
inline constexpr double kDefaultTolerance = 1e-6;
inline constexpr unsigned kMaxLineDegree = 20;

// Univariate polynomial, coefficients in ascending order.
using ComplexPolynomial = std::vector<Complex>;

Complex evaluate(const ComplexPolynomial& p, Complex t);
ComplexPolynomial derivative(const ComplexPolynomial& p);

// Roots of p (degree >= 1, nonzero leading coefficient) from the companion
// matrix eigenvalues, each polished by Newton steps.
std::vector<Complex> polynomial_roots(const ComplexPolynomial& p);

struct LineRoot {
  Complex value;
  int multiplicity = 1;
  std::size_t component = 0;
};

// omega = sum_j lambda_j df_j / f_j restricted to t -> base + t*direction.
struct LineRestriction {
  std::vector<Complex> base;
  std::vector<Complex> direction;
  std::vector<ComplexPolynomial> factors;  // f_j(t), degree d_j
  std::vector<Complex> residues;           // numeric lambda_j
  std::vector<LineRoot> roots;
};

class DegenerateLine : public ComputationError {
 public:
  explicit DegenerateLine(int attempts)
      : ComputationError("no admissible line after " + std::to_string(attempts) +
                         " attempts (roots never separated)") {}
};

class RootOnContour : public ComputationError {
 public:
  RootOnContour(Complex root, double distance, double margin);
};

// A required input field is missing (e.g. polynomials or numeric values).
class PreconditionError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Builds a restriction from already-restricted factors (roots computed here).
LineRestriction make_line_restriction(std::vector<ComplexPolynomial> factors,
                                      std::vector<Complex> residues);

// Expands f(base + t*direction) for a homogeneous polynomial.
ComplexPolynomial restrict_polynomial(const HomogeneousPolynomial& f, std::span<const Complex> base,
                                      std::span<const Complex> direction);

// Pseudo-random generic line from `seed`; rejects lines whose roots are
// closer than 1e-3 of the root-cloud diameter or where some f_j drops degree.
LineRestriction restrict_to_line(const FoliationSpec& spec, std::uint64_t seed,
                                 int max_attempts = 64);

struct LoopIntegralResult {
  Complex value;
  Complex expected;
  double abs_error = 0.0;
  std::size_t samples = 0;
  double radius = 0.0;
  Complex center;
};

// Trapezoidal integral of omega around |t - center| = radius, against
// 2*pi*i * sum of enclosed residues.
LoopIntegralResult integrate_loop(const LineRestriction& line, Complex center, double radius,
                                  std::size_t samples);

struct MeridianResult {
  std::size_t component = 0;
  Complex root;
  LoopIntegralResult integral;
};

struct MeridianReport {
  std::vector<MeridianResult> meridians;
  double tolerance = 0.0;
  double worst_error = 0.0;
  std::size_t worst_index = 0;
  bool meridians_pass = true;
  // Sum of all meridian values against 2*pi*i * sum_j d_j lambda_j.
  Complex global_sum;
  Complex global_expected;
  double global_error = 0.0;
  bool global_law_holds = true;
  // |global_sum| within roots*tolerance of zero.
  bool global_sum_vanishes = true;
  ResidueSumCheck residue_theorem;
  LineRestriction line;
};

class MeridianMismatch : public OracleError {
 public:
  explicit MeridianMismatch(MeridianReport report);
  const MeridianReport& report() const noexcept { return report_; }

 private:
  MeridianReport report_;
};

// Integrates a loop around every root of a generic line section (radius
// 0.45 x distance to the nearest other root). Throws MeridianMismatch when a
// meridian or the global residue law misses `tolerance`.
MeridianReport verify_meridians(const FoliationSpec& spec, double tolerance = kDefaultTolerance,
                                std::uint64_t seed = 0, std::size_t samples = kDefaultSamples);

struct CoverCheckReport {
  Complex value;     // integral of omega along rho(path)
  Complex expected;  // 2*pi*i * sum_j lambda_j * (x_j(end) - x_j(start))
  double abs_error = 0.0;
  // Largest deviation of the running primitive g from the linear form at
  // interior sample points.
  double primitive_deviation = 0.0;
  double tolerance = 0.0;
};

class ToleranceExceeded : public OracleError {
 public:
  explicit ToleranceExceeded(const CoverCheckReport& report);
  const CoverCheckReport& report() const noexcept { return report_; }

 private:
  CoverCheckReport report_;
};

// Coordinate-hyperplane arrangement z_0 ... z_k = 0 on P^{dim} and its
// universal cover x -> [1 : e^{2 pi i x_1} : ... : e^{2 pi i x_k} : x_{k+1} : ...].
// `residues` = (lambda_0, ..., lambda_k); `path` is a polyline of points in
// C^{dim}. Integrates omega numerically along the image of the path.
CoverCheckReport explicit_cover_check(std::size_t dim, std::span<const Complex> residues,
                                      std::span<const std::vector<Complex>> path,
                                      double tolerance = 1e-8);

}  // namespace logfol
