#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "logfol/errors.hpp"
#include "logfol/integer_matrix.hpp"
#include "logfol/lattice.hpp"

namespace logfol {

using Complex = std::complex<double>;

// Ordered list of constants assumed linearly independent over Q (e.g. "1",
// "sqrt2", "i", "pi"). Independence is the caller's assertion and is never
// checked. Optional numeric values embed the symbols into C.
class SymbolBasis {
 public:
  explicit SymbolBasis(std::vector<std::string> symbols);
  SymbolBasis(std::vector<std::string> symbols, std::vector<Complex> numeric_values);

  const std::vector<std::string>& symbols() const noexcept { return symbols_; }
  std::size_t size() const noexcept { return symbols_.size(); }
  std::optional<std::size_t> index_of(const std::string& symbol) const;

  bool has_numeric_values() const noexcept { return !numeric_.empty(); }
  const std::vector<Complex>& numeric_values() const noexcept { return numeric_; }

  friend bool operator==(const SymbolBasis&, const SymbolBasis&) = default;

 private:
  std::vector<std::string> symbols_;
  std::vector<Complex> numeric_;
};

using SymbolBasisPtr = std::shared_ptr<const SymbolBasis>;

// "1 - 1/2*sqrt2"; "0" when every coefficient vanishes.
std::string format_combination(const SymbolBasis& basis, std::span<const Rational> coords);

// A residue lambda = sum_s coords[s] * s. Never zero.
class ResidueVector {
 public:
  ResidueVector(SymbolBasisPtr basis, std::vector<Rational> coords);
  static ResidueVector from_terms(SymbolBasisPtr basis, const std::map<std::string, Rational>& terms);

  const SymbolBasisPtr& basis() const noexcept { return basis_; }
  const std::vector<Rational>& coords() const noexcept { return coords_; }
  // Requires numeric values on the basis.
  Complex numeric_value() const;
  std::string to_string() const { return format_combination(*basis_, coords_); }

  friend bool operator==(const ResidueVector& a, const ResidueVector& b) {
    return *a.basis_ == *b.basis_ && a.coords_ == b.coords_;
  }

 private:
  SymbolBasisPtr basis_;
  std::vector<Rational> coords_;
};

class ZeroResidue : public ValidationError {
 public:
  ZeroResidue() : ValidationError("", "residue must be nonzero (lambda_j in C*)") {}
};

class MixedBases : public ValidationError {
 public:
  explicit MixedBases(std::size_t index)
      : ValidationError("residues[" + std::to_string(index) + "]",
                        "residue declared over a different symbol basis") {}
};

class UnknownSymbol : public ValidationError {
 public:
  explicit UnknownSymbol(const std::string& symbol)
      : ValidationError("", "unknown basis symbol '" + symbol + "'") {}
};

// {m in Z^{k+1} : sum_j m_j lambda_j = 0}, computed exactly from the
// coordinate matrix. Throws MixedBases if residues use different bases.
Lattice relation_lattice(std::span<const ResidueVector> residues);

// sum_j d_j lambda_j evaluated exactly in basis coordinates.
struct ResidueSumCheck {
  bool satisfied = true;
  std::vector<Rational> value;
  std::string value_text;
};

ResidueSumCheck residue_theorem_check(std::span<const Integer> degrees,
                                      std::span<const ResidueVector> residues);

// Heuristic integer relation for floating residues: |sum m_j v_j| <= epsilon
// with max |m_j| <= height bound. No completeness guarantee.
struct RelationCandidate {
  IntegerVector vector;
  double residual = 0.0;
  Integer height;
};

struct RelationSearch {
  std::vector<RelationCandidate> candidates;
  double epsilon = 0.0;
  Integer height_bound;
  bool heuristic = true;
};

inline constexpr std::int64_t kDefaultHeightBound = 1'000'000;

// 1e-10 * max |v_j|.
double default_relation_epsilon(std::span<const Complex> values);

// Candidates are primitive, sign-normalized (first nonzero entry positive)
// and pairwise non-parallel, ordered by height then lexicographically.
RelationSearch numeric_relation_candidates(std::span<const Complex> values,
                                           const Integer& height_bound, double epsilon);

// |sum_j m_j v_j| in extended precision.
double relation_residual(std::span<const Integer> m, std::span<const Complex> values);

// Divides by the gcd and flips sign so the first nonzero entry is positive.
IntegerVector primitive_normalized(std::span<const Integer> v);

}  // namespace logfol
