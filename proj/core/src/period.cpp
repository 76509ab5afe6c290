#include "logfol/period.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace logfol {
namespace {

constexpr Complex kTwoPiI{0.0, 2.0 * std::numbers::pi};

ComplexPolynomial multiply(const ComplexPolynomial& a, const ComplexPolynomial& b) {
  ComplexPolynomial out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

double max_abs(const ComplexPolynomial& p) {
  double m = 0.0;
  for (const auto& c : p) m = std::max(m, std::abs(c));
  return m;
}

std::string describe(Complex z) {
  std::ostringstream os;
  os << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

}  // namespace

Complex evaluate(const ComplexPolynomial& p, Complex t) {
  Complex acc = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * t + *it;
  return acc;
}

ComplexPolynomial derivative(const ComplexPolynomial& p) {
  if (p.size() <= 1) return {Complex(0.0)};
  ComplexPolynomial d(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = static_cast<double>(i) * p[i];
  return d;
}

std::vector<Complex> polynomial_roots(const ComplexPolynomial& p) {
  if (p.size() < 2 || p.back() == Complex(0.0))
    throw std::invalid_argument("polynomial_roots: need degree >= 1 with nonzero leading coefficient");
  const std::size_t degree = p.size() - 1;
  std::vector<Complex> roots;
  if (degree == 1) {
    roots.push_back(-p[0] / p[1]);
  } else {
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(degree, degree);
    for (std::size_t i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
    for (std::size_t i = 0; i < degree; ++i) companion(i, degree - 1) = -p[i] / p[degree];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    const auto& eigenvalues = solver.eigenvalues();
    roots.assign(eigenvalues.data(), eigenvalues.data() + degree);
  }

  const ComplexPolynomial dp = derivative(p);
  for (auto& r : roots) {
    for (int step = 0; step < 4; ++step) {
      const Complex fr = evaluate(p, r);
      const Complex dfr = evaluate(dp, r);
      if (dfr == Complex(0.0)) break;
      const Complex next = r - fr / dfr;
      if (!(std::abs(evaluate(p, next)) < std::abs(fr))) break;
      r = next;
    }
  }
  return roots;
}

LineRestriction make_line_restriction(std::vector<ComplexPolynomial> factors,
                                      std::vector<Complex> residues) {
  if (factors.size() != residues.size())
    throw std::invalid_argument("make_line_restriction: factor and residue counts differ");
  LineRestriction line;
  for (std::size_t j = 0; j < factors.size(); ++j)
    for (const auto& r : polynomial_roots(factors[j])) line.roots.push_back({r, 1, j});
  line.factors = std::move(factors);
  line.residues = std::move(residues);
  return line;
}

ComplexPolynomial restrict_polynomial(const HomogeneousPolynomial& f, std::span<const Complex> base,
                                      std::span<const Complex> direction) {
  ComplexPolynomial out{Complex(0.0)};
  for (const auto& term : f.terms) {
    if (term.coefficient == 0) continue;
    ComplexPolynomial product{Complex(term.coefficient.get_d())};
    for (std::size_t i = 0; i < term.exponents.size(); ++i)
      for (unsigned e = 0; e < term.exponents[i]; ++e)
        product = multiply(product, {base[i], direction[i]});
    if (product.size() > out.size()) out.resize(product.size());
    for (std::size_t i = 0; i < product.size(); ++i) out[i] += product[i];
  }
  return out;
}

LineRestriction restrict_to_line(const FoliationSpec& spec, std::uint64_t seed, int max_attempts) {
  if (!spec.is_projective()) throw UnsupportedAmbient("line restriction");
  if (!spec.basis || !spec.basis->has_numeric_values())
    throw PreconditionError("basis.numeric", "numeric symbol values are required for period checks");
  for (std::size_t j = 0; j < spec.components.size(); ++j) {
    const auto& c = spec.components[j];
    const std::string path = "components[" + std::to_string(j) + "]";
    if (!c.polynomial) throw PreconditionError(path + ".polynomial", "polynomial is required for period checks");
    if (c.degree > static_cast<std::int64_t>(kMaxLineDegree))
      throw PreconditionError(path + ".degree", "degree above " + std::to_string(kMaxLineDegree) +
                                                    " is not supported by the period oracle");
  }

  std::vector<Complex> residues;
  for (const auto& c : spec.components) residues.push_back(c.residue.numeric_value());

  const std::size_t vars = static_cast<std::size_t>(spec.dim() + 1);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gaussian;
  auto random_point = [&] {
    std::vector<Complex> p(vars);
    for (auto& z : p) {
      const double re = gaussian(rng);
      z = Complex(re, gaussian(rng));
    }
    return p;
  };

  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    auto base = random_point();
    auto direction = random_point();

    std::vector<ComplexPolynomial> factors;
    bool full_degree = true;
    for (const auto& c : spec.components) {
      auto f = restrict_polynomial(*c.polynomial, base, direction);
      f.resize(static_cast<std::size_t>(c.degree) + 1);
      if (std::abs(f.back()) <= 1e-10 * max_abs(f)) full_degree = false;
      factors.push_back(std::move(f));
    }
    if (!full_degree) continue;

    LineRestriction line = make_line_restriction(std::move(factors), residues);
    double diameter = 0.0;
    double closest = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < line.roots.size(); ++a)
      for (std::size_t b = a + 1; b < line.roots.size(); ++b) {
        const double d = std::abs(line.roots[a].value - line.roots[b].value);
        diameter = std::max(diameter, d);
        closest = std::min(closest, d);
      }
    if (line.roots.size() > 1 && !(closest > 1e-3 * diameter)) continue;

    line.base = std::move(base);
    line.direction = std::move(direction);
    return line;
  }
  throw DegenerateLine(max_attempts);
}

RootOnContour::RootOnContour(Complex root, double distance, double margin)
    : ComputationError("root " + describe(root) + " lies " + std::to_string(distance) +
                       " from the contour (margin " + std::to_string(margin) + ")") {}

LoopIntegralResult integrate_loop(const LineRestriction& line, Complex center, double radius,
                                  std::size_t samples) {
  if (samples < 64) throw PreconditionError("samples", "at least 64 samples are required");
  if (!(radius > 0.0)) throw PreconditionError("radius", "radius must be positive");
  const double margin = 0.5 * radius;

  LoopIntegralResult result;
  result.samples = samples;
  result.radius = radius;
  result.center = center;
  for (const auto& root : line.roots) {
    const double distance = std::abs(root.value - center);
    if (std::abs(distance - radius) < margin)
      throw RootOnContour(root.value, std::abs(distance - radius), margin);
    if (distance < radius)
      result.expected += kTwoPiI * static_cast<double>(root.multiplicity) * line.residues[root.component];
  }

  std::vector<ComplexPolynomial> derivatives;
  for (const auto& f : line.factors) derivatives.push_back(derivative(f));

  const double step = 2.0 * std::numbers::pi / static_cast<double>(samples);
  Complex sum = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    const Complex unit = std::polar(1.0, step * static_cast<double>(k));
    const Complex t = center + radius * unit;
    Complex integrand = 0.0;
    for (std::size_t j = 0; j < line.factors.size(); ++j)
      integrand += line.residues[j] * evaluate(derivatives[j], t) / evaluate(line.factors[j], t);
    sum += integrand * Complex(0.0, radius) * unit;
  }
  result.value = sum * step;
  result.abs_error = std::abs(result.value - result.expected);
  return result;
}

MeridianMismatch::MeridianMismatch(MeridianReport report)
    : OracleError([&] {
        std::ostringstream os;
        if (!report.meridians_pass) {
          const auto& worst = report.meridians[report.worst_index];
          os << "meridian around root " << describe(worst.root) << " of component "
             << worst.component << " misses 2*pi*i*lambda by " << report.worst_error
             << " (tolerance " << report.tolerance << ")";
        } else {
          os << "sum of meridians differs from 2*pi*i*sum d_j*lambda_j by " << report.global_error;
        }
        return os.str();
      }()),
      report_(std::move(report)) {}

MeridianReport verify_meridians(const FoliationSpec& spec, double tolerance, std::uint64_t seed,
                                std::size_t samples) {
  MeridianReport report;
  report.tolerance = tolerance;
  report.line = restrict_to_line(spec, seed);
  const auto& roots = report.line.roots;

  for (std::size_t i = 0; i < roots.size(); ++i) {
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < roots.size(); ++j)
      if (j != i) nearest = std::min(nearest, std::abs(roots[i].value - roots[j].value));
    const double radius = 0.45 * (std::isfinite(nearest) ? nearest : 1.0);
    auto integral = integrate_loop(report.line, roots[i].value, radius, samples);
    if (i == 0 || integral.abs_error > report.worst_error) {
      report.worst_error = integral.abs_error;
      report.worst_index = i;
    }
    report.global_sum += integral.value;
    report.meridians.push_back({roots[i].component, roots[i].value, std::move(integral)});
  }
  report.meridians_pass = report.worst_error <= tolerance;

  for (std::size_t j = 0; j < spec.components.size(); ++j)
    report.global_expected +=
        kTwoPiI * static_cast<double>(spec.components[j].degree) * report.line.residues[j];
  const double budget = static_cast<double>(roots.size()) * tolerance;
  report.global_error = std::abs(report.global_sum - report.global_expected);
  report.global_law_holds = report.global_error <= budget;
  report.global_sum_vanishes = std::abs(report.global_sum) <= budget;

  const auto degrees = spec.degrees();
  const auto residues = spec.residues();
  report.residue_theorem = residue_theorem_check(degrees, residues);

  if (!report.meridians_pass || !report.global_law_holds) throw MeridianMismatch(std::move(report));
  return report;
}

ToleranceExceeded::ToleranceExceeded(const CoverCheckReport& report)
    : OracleError("explicit cover check: |integral - closed form| = " + std::to_string(report.abs_error) +
                  ", primitive deviation " + std::to_string(report.primitive_deviation) +
                  " (tolerance " + std::to_string(report.tolerance) + ")"),
      report_(report) {}

CoverCheckReport explicit_cover_check(std::size_t dim, std::span<const Complex> residues,
                                      std::span<const std::vector<Complex>> path, double tolerance) {
  if (dim < 1) throw PreconditionError("dim", "dimension must be >= 1");
  if (residues.size() < 2 || residues.size() > dim + 1)
    throw PreconditionError("residues", "need lambda_0..lambda_k with 1 <= k <= dim");
  if (path.size() < 2) throw PreconditionError("path", "a path needs at least two points");
  for (const auto& point : path)
    if (point.size() != dim) throw PreconditionError("path", "every path point must have dim coordinates");

  const std::size_t k = residues.size() - 1;
  // Affine chart z_0 = 1 of the covering map; Z_0 is constant, so lambda_0
  // never contributes.
  auto cover = [&](const std::vector<Complex>& x) {
    std::vector<Complex> z(dim + 1);
    z[0] = 1.0;
    for (std::size_t j = 1; j <= dim; ++j) z[j] = j <= k ? std::exp(kTwoPiI * x[j - 1]) : x[j - 1];
    return z;
  };
  auto omega = [&](const std::vector<Complex>& z, const std::vector<Complex>& dz) {
    Complex value = 0.0;
    for (std::size_t j = 0; j <= k; ++j) value += residues[j] * dz[j] / z[j];
    return value;
  };

  CoverCheckReport report;
  report.tolerance = tolerance;
  constexpr std::size_t kPanels = 64;  // even, for Simpson
  constexpr double kStep = 1e-3;       // finite-difference step in t

  Complex running = 0.0;
  Complex linear = 0.0;
  for (std::size_t s = 0; s + 1 < path.size(); ++s) {
    const auto& a = path[s];
    const auto& b = path[s + 1];
    auto point = [&](double t) {
      std::vector<Complex> x(dim);
      for (std::size_t i = 0; i < dim; ++i) x[i] = a[i] + t * (b[i] - a[i]);
      return x;
    };
    auto integrand = [&](double t) {
      const auto zm2 = cover(point(t - 2 * kStep));
      const auto zm1 = cover(point(t - kStep));
      const auto zp1 = cover(point(t + kStep));
      const auto zp2 = cover(point(t + 2 * kStep));
      std::vector<Complex> dz(dim + 1);
      for (std::size_t j = 0; j <= dim; ++j)
        dz[j] = (-zp2[j] + 8.0 * zp1[j] - 8.0 * zm1[j] + zm2[j]) / (12.0 * kStep);
      return omega(cover(point(t)), dz);
    };
    auto closed_form = [&](double t) {
      Complex value = 0.0;
      for (std::size_t j = 1; j <= k; ++j) value += kTwoPiI * residues[j] * t * (b[j - 1] - a[j - 1]);
      return value;
    };

    const double h = 1.0 / kPanels;
    for (std::size_t p = 0; p < kPanels; p += 2) {
      const double t0 = p * h;
      running += h / 3.0 * (integrand(t0) + 4.0 * integrand(t0 + h) + integrand(t0 + 2 * h));
      report.primitive_deviation =
          std::max(report.primitive_deviation, std::abs(running - (linear + closed_form(t0 + 2 * h))));
    }
    linear += closed_form(1.0);
  }

  report.value = running;
  report.expected = linear;
  report.abs_error = std::abs(report.value - report.expected);
  if (report.abs_error > tolerance || report.primitive_deviation > tolerance) throw ToleranceExceeded(report);
  return report;
}

}  // namespace logfol
