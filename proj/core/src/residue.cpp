#include "logfol/residue.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "logfol/lll.hpp"

namespace logfol {

SymbolBasis::SymbolBasis(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
  std::set<std::string> seen;
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (symbols_[i].empty())
      throw ValidationError("basis.symbols[" + std::to_string(i) + "]", "empty symbol name");
    if (!seen.insert(symbols_[i]).second)
      throw ValidationError("basis.symbols[" + std::to_string(i) + "]",
                            "duplicate symbol '" + symbols_[i] + "'");
  }
  if (symbols_.empty()) throw ValidationError("basis.symbols", "symbol basis is empty");
}

SymbolBasis::SymbolBasis(std::vector<std::string> symbols, std::vector<Complex> numeric_values)
    : SymbolBasis(std::move(symbols)) {
  if (numeric_values.size() != symbols_.size())
    throw ValidationError("basis.numeric", "every symbol needs a numeric value");
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    const auto& v = numeric_values[i];
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw ValidationError("basis.numeric." + symbols_[i], "numeric value is not finite");
    if (symbols_[i] == "1" && v != Complex(1.0, 0.0))
      throw ValidationError("basis.numeric.1", "symbol \"1\" must map to 1");
  }
  numeric_ = std::move(numeric_values);
}

std::optional<std::size_t> SymbolBasis::index_of(const std::string& symbol) const {
  const auto it = std::find(symbols_.begin(), symbols_.end(), symbol);
  if (it == symbols_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - symbols_.begin());
}

std::string format_combination(const SymbolBasis& basis, std::span<const Rational> coords) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t s = 0; s < coords.size(); ++s) {
    const Rational& c = coords[s];
    if (c == 0) continue;
    const bool unit_symbol = basis.symbols()[s] == "1";
    Rational magnitude = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (unit_symbol) {
      os << magnitude.get_str();
    } else {
      if (magnitude != 1) os << magnitude.get_str() << '*';
      os << basis.symbols()[s];
    }
    first = false;
  }
  return first ? "0" : os.str();
}

ResidueVector::ResidueVector(SymbolBasisPtr basis, std::vector<Rational> coords)
    : basis_(std::move(basis)), coords_(std::move(coords)) {
  if (!basis_) throw std::invalid_argument("ResidueVector requires a symbol basis");
  if (coords_.size() != basis_->size())
    throw std::invalid_argument("ResidueVector: coordinate count differs from basis size");
  for (auto& c : coords_) c.canonicalize();
  if (std::all_of(coords_.begin(), coords_.end(), [](const Rational& c) { return c == 0; }))
    throw ZeroResidue();
}

ResidueVector ResidueVector::from_terms(SymbolBasisPtr basis,
                                        const std::map<std::string, Rational>& terms) {
  std::vector<Rational> coords(basis->size());
  for (const auto& [symbol, value] : terms) {
    const auto index = basis->index_of(symbol);
    if (!index) throw UnknownSymbol(symbol);
    coords[*index] = value;
  }
  return ResidueVector(std::move(basis), std::move(coords));
}

Complex ResidueVector::numeric_value() const {
  if (!basis_->has_numeric_values())
    throw ValidationError("basis.numeric", "symbol basis carries no numeric values");
  Complex value = 0.0;
  for (std::size_t s = 0; s < coords_.size(); ++s)
    value += coords_[s].get_d() * basis_->numeric_values()[s];
  return value;
}

namespace {

void require_shared_basis(std::span<const ResidueVector> residues) {
  if (residues.empty()) throw std::invalid_argument("residue list is empty");
  const SymbolBasis& first = *residues.front().basis();
  for (std::size_t j = 1; j < residues.size(); ++j)
    if (residues[j].basis() != residues.front().basis() && !(*residues[j].basis() == first))
      throw MixedBases(j);
}

}  // namespace

Lattice relation_lattice(std::span<const ResidueVector> residues) {
  require_shared_basis(residues);
  const std::size_t rows = residues.size();
  const std::size_t cols = residues.front().basis()->size();

  // Clearing denominators column by column scales each linear equation
  // (one per symbol) and leaves the solution set unchanged.
  IntegerMatrix a(rows, cols);
  for (std::size_t s = 0; s < cols; ++s) {
    Integer scale = 1;
    for (const auto& r : residues) scale = lcm(scale, r.coords()[s].get_den());
    for (std::size_t j = 0; j < rows; ++j) {
      const Rational& c = residues[j].coords()[s];
      a(j, s) = c.get_num() * (scale / c.get_den());
    }
  }
  return integer_kernel(a);
}

ResidueSumCheck residue_theorem_check(std::span<const Integer> degrees,
                                      std::span<const ResidueVector> residues) {
  if (degrees.size() != residues.size())
    throw std::invalid_argument("residue_theorem_check: degree and residue counts differ");
  require_shared_basis(residues);
  const SymbolBasis& basis = *residues.front().basis();
  ResidueSumCheck check;
  check.value.assign(basis.size(), Rational(0));
  for (std::size_t j = 0; j < residues.size(); ++j)
    for (std::size_t s = 0; s < basis.size(); ++s)
      check.value[s] += Rational(degrees[j]) * residues[j].coords()[s];
  check.satisfied =
      std::all_of(check.value.begin(), check.value.end(), [](const Rational& c) { return c == 0; });
  check.value_text = format_combination(basis, check.value);
  return check;
}

double default_relation_epsilon(std::span<const Complex> values) {
  double scale = 0.0;
  for (const auto& v : values) scale = std::max(scale, std::abs(v));
  return 1e-10 * scale;
}

double relation_residual(std::span<const Integer> m, std::span<const Complex> values) {
  long double re = 0.0L;
  long double im = 0.0L;
  for (std::size_t j = 0; j < m.size(); ++j) {
    if (m[j] == 0) continue;
    const long double c = m[j].get_d();
    re += c * static_cast<long double>(values[j].real());
    im += c * static_cast<long double>(values[j].imag());
  }
  return static_cast<double>(std::sqrt(re * re + im * im));
}

IntegerVector primitive_normalized(std::span<const Integer> v) {
  IntegerVector out(v.begin(), v.end());
  const Integer g = vector_gcd(v);
  if (g == 0) return out;
  const auto first = std::find_if(out.begin(), out.end(), [](const Integer& x) { return x != 0; });
  const Integer divisor = *first < 0 ? Integer(-g) : g;
  for (auto& x : out) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), divisor.get_mpz_t());
  return out;
}

RelationSearch numeric_relation_candidates(std::span<const Complex> values,
                                           const Integer& height_bound, double epsilon) {
  if (values.empty()) throw std::invalid_argument("numeric_relation_candidates: no values");
  if (!(epsilon > 0.0)) throw std::invalid_argument("numeric_relation_candidates: epsilon <= 0");
  if (height_bound < 1) throw std::invalid_argument("numeric_relation_candidates: height bound < 1");
  for (const auto& v : values)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw std::invalid_argument("numeric_relation_candidates: non-finite value");

  const std::size_t m = values.size();
  const bool complex_values =
      std::any_of(values.begin(), values.end(), [](const Complex& v) { return v.imag() != 0.0; });
  const std::size_t dim = m + (complex_values ? 2 : 1);
  double magnitude = 0.0;
  for (const auto& v : values) magnitude = std::max(magnitude, std::abs(v));

  RelationSearch search;
  search.epsilon = epsilon;
  search.height_bound = height_bound;
  std::set<IntegerVector> seen;
  auto consider = [&](IntegerVector v) {
    const Integer height = vector_height(v);
    if (height == 0 || height > height_bound) return false;
    const double residual = relation_residual(v, values);
    if (residual > epsilon) return false;
    IntegerVector key = primitive_normalized(v);
    if (!seen.insert(key).second) return true;
    search.candidates.push_back({std::move(key), residual, height});
    return true;
  };

  // Rows e_j | round(N Re v_j) | round(N Im v_j). A relation m has a short
  // image, every other vector is stretched by roughly N. At N = 1/epsilon a
  // non-relation with residual slightly above epsilon can still be shorter
  // than a true relation of moderate height, so the reduction is repeated at
  // scales 100x larger while double rounding of N*v stays below 1e-3.
  const double max_scale =
      magnitude > 0.0 ? std::max(1.0 / epsilon, 1e-3 / (magnitude * 0x1p-52)) : 1.0 / epsilon;
  std::vector<IntegerVector> accepted;
  for (double scale = 1.0 / epsilon; scale <= max_scale; scale *= 100.0) {
    IntegerMatrix embedding(m, dim);
    for (std::size_t j = 0; j < m; ++j) {
      embedding(j, j) = 1;
      embedding(j, m) = Integer(std::round(scale * values[j].real()));
      if (complex_values) embedding(j, m + 1) = Integer(std::round(scale * values[j].imag()));
    }
    const IntegerMatrix reduced = lll_reduce(embedding);
    for (std::size_t r = 0; r < m; ++r) {
      IntegerVector coeffs(reduced.row(r).begin(), reduced.row(r).begin() + m);
      if (consider(coeffs)) accepted.push_back(std::move(coeffs));
    }
  }
  // The canonical HNF basis of everything accepted is offered too; each of
  // its vectors still has to pass the residual and height filters.
  if (!accepted.empty()) {
    const Lattice span = Lattice::from_generators(m, accepted);
    for (std::size_t i = 0; i < span.rank(); ++i) consider(span.basis_vector(i));
  }

  std::sort(search.candidates.begin(), search.candidates.end(),
            [](const RelationCandidate& a, const RelationCandidate& b) {
              if (a.height != b.height) return a.height < b.height;
              return a.vector < b.vector;
            });
  return search;
}

}  // namespace logfol
