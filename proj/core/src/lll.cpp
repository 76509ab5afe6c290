#include "logfol/lll.hpp"

#include <stdexcept>
#include <vector>

namespace logfol {
namespace {

class GramSchmidt {
 public:
  explicit GramSchmidt(const IntegerMatrix& b)
      : b_(b),
        n_(b.rows()),
        dim_(b.cols()),
        star_(n_, std::vector<Rational>(dim_)),
        mu_(n_, std::vector<Rational>(n_)),
        norm_(n_) {}

  IntegerMatrix& basis() { return b_; }
  const Rational& mu(std::size_t i, std::size_t j) const { return mu_[i][j]; }
  const Rational& norm(std::size_t i) const { return norm_[i]; }

  // Recomputes b*_i and mu_{i,j}, j < i, from the current b_i; rows below i
  // must already be current.
  void refresh(std::size_t i) {
    auto& star = star_[i];
    for (std::size_t c = 0; c < dim_; ++c) star[c] = b_(i, c);
    for (std::size_t j = 0; j < i; ++j) {
      if (norm_[j] == 0) {
        mu_[i][j] = 0;
        continue;
      }
      Rational dot = 0;
      for (std::size_t c = 0; c < dim_; ++c) dot += Rational(b_(i, c)) * star_[j][c];
      mu_[i][j] = dot / norm_[j];
      for (std::size_t c = 0; c < dim_; ++c) star[c] -= mu_[i][j] * star_[j][c];
    }
    norm_[i] = 0;
    for (const auto& x : star) norm_[i] += x * x;
    if (norm_[i] == 0) throw std::invalid_argument("lll_reduce: linearly dependent rows");
  }

  // b_k -= round(mu_{k,l}) * b_l, keeping mu consistent.
  void size_reduce(std::size_t k, std::size_t l) {
    Rational shifted = mu_[k][l] + Rational(1, 2);
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
    if (q == 0) return;
    b_.add_row_multiple(k, l, -q);
    for (std::size_t j = 0; j < l; ++j) mu_[k][j] -= q * mu_[l][j];
    mu_[k][l] -= q;
  }

 private:
  IntegerMatrix b_;
  std::size_t n_;
  std::size_t dim_;
  std::vector<std::vector<Rational>> star_;
  std::vector<std::vector<Rational>> mu_;
  std::vector<Rational> norm_;
};

}  // namespace

IntegerMatrix lll_reduce(const IntegerMatrix& basis, const Rational& delta) {
  const std::size_t n = basis.rows();
  if (n < 2) return basis;
  GramSchmidt gs(basis);
  gs.refresh(0);
  gs.refresh(1);
  std::size_t k = 1;
  while (k < n) {
    gs.size_reduce(k, k - 1);
    const Rational& m = gs.mu(k, k - 1);
    if (gs.norm(k) < (delta - m * m) * gs.norm(k - 1)) {
      gs.basis().swap_rows(k, k - 1);
      gs.refresh(k - 1);
      gs.refresh(k);
      if (k > 1) --k;
    } else {
      for (std::size_t l = k - 1; l-- > 0;) gs.size_reduce(k, l);
      ++k;
      if (k < n) gs.refresh(k);
    }
  }
  return gs.basis();
}

}  // namespace logfol
