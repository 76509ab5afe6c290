#include "logfol/lattice.hpp"

#include <algorithm>
#include <sstream>

namespace logfol {
namespace {

// Row index in [from, rows) whose entry in `col` has the smallest nonzero
// absolute value.
std::optional<std::size_t> smallest_in_column(const IntegerMatrix& m, std::size_t col,
                                              std::size_t from) {
  std::optional<std::size_t> best;
  for (std::size_t i = from; i < m.rows(); ++i) {
    if (m(i, col) == 0) continue;
    if (!best || abs(m(i, col)) < abs(m(*best, col))) best = i;
  }
  return best;
}

}  // namespace

HermiteForm hnf(const IntegerMatrix& a) {
  IntegerMatrix h = a;
  IntegerMatrix u = IntegerMatrix::identity(a.rows());
  std::size_t pivot_row = 0;

  for (std::size_t col = 0; col < h.cols() && pivot_row < h.rows(); ++col) {
    // Euclid down the column until a single nonzero entry remains at pivot_row.
    bool found = false;
    while (auto best = smallest_in_column(h, col, pivot_row)) {
      found = true;
      h.swap_rows(pivot_row, *best);
      u.swap_rows(pivot_row, *best);
      bool cleared = true;
      for (std::size_t i = pivot_row + 1; i < h.rows(); ++i) {
        if (h(i, col) == 0) continue;
        const Integer q = floor_div(h(i, col), h(pivot_row, col));
        h.add_row_multiple(i, pivot_row, -q);
        u.add_row_multiple(i, pivot_row, -q);
        if (h(i, col) != 0) cleared = false;
      }
      if (cleared) break;
    }
    if (!found) continue;

    if (h(pivot_row, col) < 0) {
      h.negate_row(pivot_row);
      u.negate_row(pivot_row);
    }
    const Integer pivot = h(pivot_row, col);
    for (std::size_t i = 0; i < pivot_row; ++i) {
      const Integer q = floor_div(h(i, col), pivot);
      if (q == 0) continue;
      h.add_row_multiple(i, pivot_row, -q);
      u.add_row_multiple(i, pivot_row, -q);
    }
    ++pivot_row;
  }
  return {std::move(h), std::move(u), pivot_row};
}

std::vector<Integer> SmithDecomposition::invariant_factors() const {
  std::vector<Integer> out;
  for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i)
    if (S(i, i) != 0) out.push_back(S(i, i));
  return out;
}

SmithDecomposition snf(const IntegerMatrix& a) {
  IntegerMatrix s = a;
  IntegerMatrix u = IntegerMatrix::identity(a.rows());
  IntegerMatrix v = IntegerMatrix::identity(a.cols());
  const std::size_t diagonal = std::min(a.rows(), a.cols());

  for (std::size_t t = 0; t < diagonal; ++t) {
    bool have_pivot = false;
    for (;;) {
      // Smallest nonzero |entry| of the trailing block becomes the pivot.
      std::optional<std::pair<std::size_t, std::size_t>> best;
      for (std::size_t i = t; i < s.rows(); ++i)
        for (std::size_t j = t; j < s.cols(); ++j) {
          if (s(i, j) == 0) continue;
          if (!best || abs(s(i, j)) < abs(s(best->first, best->second))) best = {i, j};
        }
      if (!best) break;
      have_pivot = true;
      s.swap_rows(t, best->first);
      u.swap_rows(t, best->first);
      s.swap_cols(t, best->second);
      v.swap_cols(t, best->second);

      bool clean = true;
      for (std::size_t i = t + 1; i < s.rows(); ++i) {
        if (s(i, t) == 0) continue;
        const Integer q = floor_div(s(i, t), s(t, t));
        s.add_row_multiple(i, t, -q);
        u.add_row_multiple(i, t, -q);
        if (s(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < s.cols(); ++j) {
        if (s(t, j) == 0) continue;
        const Integer q = floor_div(s(t, j), s(t, t));
        s.add_col_multiple(j, t, -q);
        v.add_col_multiple(j, t, -q);
        if (s(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Enforce d_t | every remaining entry; a violating row is folded into
      // row t, which strictly lowers the next pivot.
      bool divides_all = true;
      for (std::size_t i = t + 1; i < s.rows() && divides_all; ++i)
        for (std::size_t j = t + 1; j < s.cols(); ++j)
          if (!mpz_divisible_p(s(i, j).get_mpz_t(), s(t, t).get_mpz_t())) {
            s.add_row_multiple(t, i, 1);
            u.add_row_multiple(t, i, 1);
            divides_all = false;
            break;
          }
      if (divides_all) break;
    }
    if (!have_pivot) break;
    if (s(t, t) < 0) {
      s.negate_row(t);
      u.negate_row(t);
    }
  }
  return {std::move(u), std::move(s), std::move(v), a.rows(), a.cols()};
}

Lattice Lattice::from_generators(std::size_t ambient_rank, const IntegerMatrix& generators) {
  if (generators.rows() > 0 && generators.cols() != ambient_rank)
    throw std::invalid_argument("lattice generators have the wrong length");
  if (generators.rows() == 0) return zero(ambient_rank);
  HermiteForm form = hnf(generators);
  IntegerMatrix basis(form.rank, ambient_rank);
  for (std::size_t i = 0; i < form.rank; ++i)
    for (std::size_t j = 0; j < ambient_rank; ++j) basis(i, j) = form.H(i, j);
  return Lattice(ambient_rank, std::move(basis));
}

Lattice Lattice::from_generators(std::size_t ambient_rank,
                                 const std::vector<IntegerVector>& generators) {
  return from_generators(ambient_rank, IntegerMatrix::from_rows(ambient_rank, generators));
}

Lattice Lattice::full(std::size_t ambient_rank) {
  return Lattice(ambient_rank, IntegerMatrix::identity(ambient_rank));
}

Lattice Lattice::zero(std::size_t ambient_rank) {
  return Lattice(ambient_rank, IntegerMatrix(0, ambient_rank));
}

std::optional<IntegerVector> Lattice::coordinates_of(std::span<const Integer> v) const {
  if (v.size() != ambient_rank_) throw std::invalid_argument("vector length differs from ambient rank");
  IntegerVector residual(v.begin(), v.end());
  IntegerVector coords(rank());
  std::size_t col = 0;
  for (std::size_t i = 0; i < rank(); ++i) {
    while (basis_(i, col) == 0) {
      // Columns before this pivot are no longer reachable.
      if (residual[col] != 0) return std::nullopt;
      ++col;
    }
    const Integer& pivot = basis_(i, col);
    if (!mpz_divisible_p(residual[col].get_mpz_t(), pivot.get_mpz_t())) return std::nullopt;
    Integer c;
    mpz_divexact(c.get_mpz_t(), residual[col].get_mpz_t(), pivot.get_mpz_t());
    if (c != 0)
      for (std::size_t j = col; j < ambient_rank_; ++j) residual[j] -= c * basis_(i, j);
    coords[i] = std::move(c);
    ++col;
  }
  for (std::size_t j = col; j < ambient_rank_; ++j)
    if (residual[j] != 0) return std::nullopt;
  return coords;
}

Lattice integer_kernel(const IntegerMatrix& a) {
  HermiteForm form = hnf(a);
  IntegerMatrix generators(a.rows() - form.rank, a.rows());
  for (std::size_t i = form.rank; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.rows(); ++j) generators(i - form.rank, j) = form.U(i, j);
  return Lattice::from_generators(a.rows(), generators);
}

bool lattice_contains(const Lattice& lattice, std::span<const Integer> v) {
  return lattice.coordinates_of(v).has_value();
}

Integer AbelianGroupInvariants::torsion_order() const {
  Integer order = 1;
  for (const auto& t : torsion) order *= t;
  return order;
}

AbelianGroupInvariants abelian_group_from_diagonal(std::size_t generators,
                                                   std::span<const Integer> diagonal) {
  AbelianGroupInvariants group;
  std::size_t nonzero = 0;
  for (const auto& d : diagonal) {
    if (d == 0) continue;
    ++nonzero;
    if (abs(d) > 1) group.torsion.push_back(abs(d));
  }
  group.free_rank = generators - nonzero;
  std::sort(group.torsion.begin(), group.torsion.end());
  return group;
}

std::string to_string(const AbelianGroupInvariants& group) {
  if (group.is_trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  if (group.free_rank > 0) {
    os << "Z";
    if (group.free_rank > 1) os << '^' << group.free_rank;
    first = false;
  }
  for (const auto& t : group.torsion) {
    os << (first ? "" : " ⊕ ") << "Z/" << t;
    first = false;
  }
  return os.str();
}

SubNotContained::SubNotContained(std::size_t index, IntegerVector vector)
    : ComputationError([&] {
        std::ostringstream os;
        os << "sublattice basis vector " << index << ' ' << vector
           << " is not contained in the ambient lattice";
        return os.str();
      }()),
      index_(index),
      vector_(std::move(vector)) {}

AbelianGroupInvariants lattice_quotient(const Lattice& amb, const Lattice& sub) {
  if (amb.ambient_rank() != sub.ambient_rank())
    throw std::invalid_argument("lattice_quotient: ambient ranks differ");
  IntegerMatrix coords(sub.rank(), amb.rank());
  for (std::size_t i = 0; i < sub.rank(); ++i) {
    auto c = amb.coordinates_of(sub.basis().row(i));
    if (!c) throw SubNotContained(i, sub.basis_vector(i));
    for (std::size_t j = 0; j < amb.rank(); ++j) coords(i, j) = (*c)[j];
  }
  const SmithDecomposition smith = snf(coords);
  const auto factors = smith.invariant_factors();
  return abelian_group_from_diagonal(amb.rank(), factors);
}

}  // namespace logfol
