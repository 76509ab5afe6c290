#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "logfol/errors.hpp"
#include "logfol/integer_matrix.hpp"
#include "logfol/lattice.hpp"
#include "logfol/residue.hpp"

namespace logfol {

inline constexpr std::size_t kMaxComponents = 64;

// P^{dim}; dim = n + 1.
struct ProjectiveSpace {
  int dim = 2;
  friend bool operator==(const ProjectiveSpace&, const ProjectiveSpace&) = default;
};

// Complete intersection of the given multidegree in P^N, of dimension
// dim = N - multidegree.size() = n + 1.
struct CompleteIntersectionAmbient {
  int projective_dim = 3;
  std::vector<int> multidegree;
  int dim = 2;
  friend bool operator==(const CompleteIntersectionAmbient&,
                         const CompleteIntersectionAmbient&) = default;
};

using Ambient = std::variant<ProjectiveSpace, CompleteIntersectionAmbient>;

struct Monomial {
  Rational coefficient;
  std::vector<unsigned> exponents;
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

// Homogeneous polynomial in `variable_count` homogeneous coordinates.
struct HomogeneousPolynomial {
  std::size_t variable_count = 0;
  std::vector<Monomial> terms;

  // Common total degree of the nonzero terms; nullopt when the terms are not
  // homogeneous or all vanish.
  std::optional<unsigned> degree() const;
  friend bool operator==(const HomogeneousPolynomial&, const HomogeneousPolynomial&) = default;
};

struct DivisorComponent {
  std::string name;
  std::int64_t degree = 1;
  ResidueVector residue;
  std::optional<HomogeneousPolynomial> polynomial;
  friend bool operator==(const DivisorComponent&, const DivisorComponent&) = default;
};

// A logarithmic 1-form on the ambient, described by its polar components
// (degree and residue each).
struct FoliationSpec {
  Ambient ambient = ProjectiveSpace{};
  SymbolBasisPtr basis;
  std::vector<DivisorComponent> components;
  bool strict = false;

  int dim() const;  // n + 1
  int n() const { return dim() - 1; }
  bool is_projective() const { return std::holds_alternative<ProjectiveSpace>(ambient); }
  std::vector<Integer> degrees() const;
  std::vector<ResidueVector> residues() const;

  friend bool operator==(const FoliationSpec& a, const FoliationSpec& b);
};

// Checks every structural invariant of FoliationSpec; throws ValidationError
// naming the first offending field.
void validate(const FoliationSpec& spec);

class UnsupportedAmbient : public ComputationError {
 public:
  explicit UnsupportedAmbient(const std::string& what)
      : ComputationError(what + " is only available on projective space") {}
};

// The degree vector is not an integer relation among the residues, i.e.
// sum_j d_j lambda_j != 0 and no closed logarithmic form with this data
// exists on projective space.
class DegreeVectorNotInKernel : public ComputationError {
 public:
  explicit DegreeVectorNotInKernel(ResidueSumCheck check)
      : ComputationError("degree vector is not in the relation lattice: sum d_j*lambda_j = " +
                         check.value_text),
        check_(std::move(check)) {}
  const ResidueSumCheck& residue_sum() const noexcept { return check_; }

 private:
  ResidueSumCheck check_;
};

class DimensionTooLow : public ComputationError {
 public:
  explicit DimensionTooLow(int n)
      : ComputationError("hyperplane sections need n >= 2 (got n = " + std::to_string(n) + ")") {}
};

// pi_1(P^{n+1} - D) = Z^{k+1} / Z(d_0, ..., d_k).
AbelianGroupInvariants complement_pi1(const FoliationSpec& spec);

// The integer relation lattice K of the residues.
Lattice spec_relation_lattice(const FoliationSpec& spec);

// K / Z(d_0, ..., d_k): the fundamental group of a generic leaf.
AbelianGroupInvariants leaf_pi1(const FoliationSpec& spec);

struct Resonance {
  bool resonant = false;
  // A vector of a reduced basis of K lying outside Z d', present when resonant.
  std::optional<IntegerVector> witness;
  // d' = d / gcd(d).
  IntegerVector reduced_degrees;
};

Resonance resonance_classify(const FoliationSpec& spec);

enum class LevelStatus { Zero, IsoToComplement, EpiFromLeafAtN };
enum class Headline { None, NMinusOneConnected, SimplyConnected };

std::string to_string(LevelStatus status);
std::string to_string(Headline headline);

struct ConnectivityReport {
  int n = 0;
  // nullopt on a complete-intersection ambient (not computed there).
  std::optional<AbelianGroupInvariants> pi1_leaf;
  Resonance resonance;
  std::map<int, LevelStatus> higher;  // levels 2..n
  Headline headline = Headline::None;
  std::vector<std::string> assumptions;
  std::vector<std::string> caveats;
};

ConnectivityReport connectivity_report(const FoliationSpec& spec);

struct HyperplaneSectionReport {
  int n = 0;
  // pi_l(L ∩ H) -> pi_l(L) is an isomorphism for l < iso_below and an
  // epimorphism at l = epi_level (= n - 1).
  int iso_below = 0;
  int epi_level = 0;
  AbelianGroupInvariants ambient_pi1;
  AbelianGroupInvariants section_pi1;
  bool pi1_match = false;
  // The pi_1 isomorphism is a theorem only when n - 1 > 1.
  bool pi1_iso_guaranteed = false;
  FoliationSpec restricted;
};

HyperplaneSectionReport hyperplane_section_report(const FoliationSpec& spec);

// Same components over an ambient of dimension `dim` (polynomials dropped
// when the variable count no longer matches).
FoliationSpec with_ambient_dim(const FoliationSpec& spec, int dim);

// The fixed list of geometric hypotheses every report carries.
std::vector<std::string> standard_assumptions(const FoliationSpec& spec);

}  // namespace logfol
