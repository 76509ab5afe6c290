#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "logfol/errors.hpp"
#include "logfol/integer_matrix.hpp"

namespace logfol {

// U * A = H with U unimodular and H in row Hermite normal form: upper
// echelon, positive pivots, entries above each pivot reduced into
// [0, pivot), zero rows last.
struct HermiteForm {
  IntegerMatrix H;
  IntegerMatrix U;
  std::size_t rank = 0;
};

HermiteForm hnf(const IntegerMatrix& a);

// U * A * V = S, U and V unimodular, S diagonal with d_1 | d_2 | ... | d_r,
// every d_i >= 1, all other entries zero.
struct SmithDecomposition {
  IntegerMatrix U;
  IntegerMatrix S;
  IntegerMatrix V;
  std::size_t source_rows = 0;
  std::size_t source_cols = 0;

  // Nonzero diagonal entries d_1, ..., d_r.
  std::vector<Integer> invariant_factors() const;
};

SmithDecomposition snf(const IntegerMatrix& a);

// A sublattice of Z^ambient_rank, stored by its row HNF basis. The HNF is
// canonical, so two Lattice values describe the same subgroup exactly when
// their bases compare equal.
class Lattice {
 public:
  Lattice() = default;

  // Lattice generated by the rows of `generators` (any rank, any number of
  // rows, dependent rows allowed).
  static Lattice from_generators(std::size_t ambient_rank, const IntegerMatrix& generators);
  static Lattice from_generators(std::size_t ambient_rank,
                                 const std::vector<IntegerVector>& generators);
  static Lattice full(std::size_t ambient_rank);
  static Lattice zero(std::size_t ambient_rank);

  std::size_t ambient_rank() const noexcept { return ambient_rank_; }
  std::size_t rank() const noexcept { return basis_.rows(); }
  const IntegerMatrix& basis() const noexcept { return basis_; }
  IntegerVector basis_vector(std::size_t i) const { return basis_.row_vector(i); }

  // Integer coordinates c with c * basis = v, or nullopt when v is not in
  // the lattice. Solved by back-substitution against the HNF pivots.
  std::optional<IntegerVector> coordinates_of(std::span<const Integer> v) const;

  friend bool operator==(const Lattice&, const Lattice&) = default;

 private:
  Lattice(std::size_t ambient_rank, IntegerMatrix basis)
      : ambient_rank_(ambient_rank), basis_(std::move(basis)) {}

  std::size_t ambient_rank_ = 0;
  IntegerMatrix basis_;
};

// {m : m * A = 0}, the left kernel of A (A has one row per lattice
// coordinate). Always saturated.
Lattice integer_kernel(const IntegerMatrix& a);

bool lattice_contains(const Lattice& lattice, std::span<const Integer> v);

// Finitely generated abelian group in invariant-factor form:
// Z^free_rank + Z/t_1 + ... + Z/t_s with 2 <= t_1 | t_2 | ... | t_s.
struct AbelianGroupInvariants {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;

  bool is_trivial() const noexcept { return free_rank == 0 && torsion.empty(); }
  // Product of the torsion factors (1 for a torsion-free group).
  Integer torsion_order() const;

  friend bool operator==(const AbelianGroupInvariants&, const AbelianGroupInvariants&) = default;
};

// Builds invariants from an arbitrary list of cyclic orders (0 = Z), e.g.
// the diagonal of a Smith form; unit factors are dropped.
AbelianGroupInvariants abelian_group_from_diagonal(std::size_t generators,
                                                   std::span<const Integer> diagonal);

// "Z^2 ⊕ Z/2 ⊕ Z/6"; free part first, torsion ascending, "0" for trivial.
std::string to_string(const AbelianGroupInvariants& group);

class SubNotContained : public ComputationError {
 public:
  SubNotContained(std::size_t index, IntegerVector vector);
  std::size_t index() const noexcept { return index_; }
  const IntegerVector& vector() const noexcept { return vector_; }

 private:
  std::size_t index_;
  IntegerVector vector_;
};

// amb / sub. Requires sub to be contained in amb (throws SubNotContained
// naming the first offending basis vector otherwise).
AbelianGroupInvariants lattice_quotient(const Lattice& amb, const Lattice& sub);

}  // namespace logfol
