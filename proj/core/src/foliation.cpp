#include "logfol/foliation.hpp"

#include <algorithm>
#include <numeric>

#include "logfol/lll.hpp"

namespace logfol {

std::optional<unsigned> HomogeneousPolynomial::degree() const {
  std::optional<unsigned> common;
  for (const auto& term : terms) {
    if (term.coefficient == 0) continue;
    const unsigned d = std::accumulate(term.exponents.begin(), term.exponents.end(), 0u);
    if (common && *common != d) return std::nullopt;
    common = d;
  }
  return common;
}

int FoliationSpec::dim() const {
  return std::visit([](const auto& a) { return a.dim; }, ambient);
}

std::vector<Integer> FoliationSpec::degrees() const {
  std::vector<Integer> out;
  out.reserve(components.size());
  for (const auto& c : components) out.emplace_back(static_cast<long>(c.degree));
  return out;
}

std::vector<ResidueVector> FoliationSpec::residues() const {
  std::vector<ResidueVector> out;
  out.reserve(components.size());
  for (const auto& c : components) out.push_back(c.residue);
  return out;
}

bool operator==(const FoliationSpec& a, const FoliationSpec& b) {
  const bool same_basis = (a.basis == b.basis) || (a.basis && b.basis && *a.basis == *b.basis);
  return same_basis && a.ambient == b.ambient && a.components == b.components &&
         a.strict == b.strict;
}

void validate(const FoliationSpec& spec) {
  if (!spec.basis) throw ValidationError("basis", "missing symbol basis");
  if (spec.components.empty()) throw ValidationError("components", "at least one component required");
  if (spec.components.size() > kMaxComponents)
    throw ValidationError("components", "at most " + std::to_string(kMaxComponents) +
                                            " components supported");
  if (spec.dim() < 2) throw ValidationError("ambient.dim", "ambient dimension n+1 must be >= 2");

  const auto* ci = std::get_if<CompleteIntersectionAmbient>(&spec.ambient);
  if (ci) {
    if (ci->multidegree.empty())
      throw ValidationError("ambient.multidegree", "complete intersection needs a multidegree");
    for (std::size_t i = 0; i < ci->multidegree.size(); ++i)
      if (ci->multidegree[i] < 1)
        throw ValidationError("ambient.multidegree[" + std::to_string(i) + "]",
                              "hypersurface degree must be >= 1");
    if (ci->projective_dim - static_cast<int>(ci->multidegree.size()) != ci->dim)
      throw ValidationError("ambient.dim", "dim must equal N - len(multidegree)");
  }

  for (std::size_t j = 0; j < spec.components.size(); ++j) {
    const auto& c = spec.components[j];
    const std::string path = "components[" + std::to_string(j) + "]";
    if (c.degree < 1) throw ValidationError(path + ".degree", "degree must be >= 1");
    if (ci && c.degree != 1)
      throw ValidationError(path + ".degree",
                            "complete-intersection ambients take hyperplane sections only (degree 1)");
    if (!(*c.residue.basis() == *spec.basis))
      throw ValidationError(path + ".residue", "residue uses a different symbol basis");
    if (c.polynomial) {
      if (ci)
        throw ValidationError(path + ".polynomial", "polynomials are only supported on projective space");
      const auto& p = *c.polynomial;
      const auto vars = static_cast<std::size_t>(spec.dim() + 1);
      if (p.variable_count != vars)
        throw ValidationError(path + ".polynomial",
                              "expected " + std::to_string(vars) + " homogeneous variables");
      for (std::size_t t = 0; t < p.terms.size(); ++t)
        if (p.terms[t].exponents.size() != vars)
          throw ValidationError(path + ".polynomial[" + std::to_string(t) + "].exponents",
                                "exponent vector length must be " + std::to_string(vars));
      const auto d = p.degree();
      if (!d) throw ValidationError(path + ".polynomial", "polynomial is not homogeneous or is zero");
      if (static_cast<std::int64_t>(*d) != c.degree)
        throw ValidationError(path + ".polynomial",
                              "homogeneous degree " + std::to_string(*d) + " differs from degree " +
                                  std::to_string(c.degree));
    }
  }
}

namespace {

Lattice degree_lattice(const FoliationSpec& spec) {
  return Lattice::from_generators(spec.components.size(), std::vector<IntegerVector>{spec.degrees()});
}

// K, after confirming that d lies in it.
Lattice checked_relation_lattice(const FoliationSpec& spec) {
  Lattice k = spec_relation_lattice(spec);
  const auto d = spec.degrees();
  if (!lattice_contains(k, d)) {
    const auto residues = spec.residues();
    throw DegreeVectorNotInKernel(residue_theorem_check(d, residues));
  }
  return k;
}

}  // namespace

AbelianGroupInvariants complement_pi1(const FoliationSpec& spec) {
  if (!spec.is_projective()) throw UnsupportedAmbient("pi_1 of the complement");
  return lattice_quotient(Lattice::full(spec.components.size()), degree_lattice(spec));
}

Lattice spec_relation_lattice(const FoliationSpec& spec) {
  const auto residues = spec.residues();
  return relation_lattice(residues);
}

AbelianGroupInvariants leaf_pi1(const FoliationSpec& spec) {
  if (!spec.is_projective()) throw UnsupportedAmbient("pi_1 of the generic leaf");
  return lattice_quotient(checked_relation_lattice(spec), degree_lattice(spec));
}

Resonance resonance_classify(const FoliationSpec& spec) {
  const Lattice k = checked_relation_lattice(spec);
  const auto d = spec.degrees();
  const Integer g = vector_gcd(d);
  Resonance result;
  result.reduced_degrees.reserve(d.size());
  for (const auto& x : d) result.reduced_degrees.push_back(x / g);
  const Lattice reduced = Lattice::from_generators(d.size(), std::vector<IntegerVector>{result.reduced_degrees});
  // Witnesses come from an LLL-reduced basis of K so they are short.
  const IntegerMatrix short_basis = lll_reduce(k.basis());
  for (std::size_t i = 0; i < short_basis.rows(); ++i) {
    if (lattice_contains(reduced, short_basis.row(i))) continue;
    result.resonant = true;
    result.witness = primitive_normalized(short_basis.row(i));
    break;
  }
  return result;
}

std::string to_string(LevelStatus status) {
  switch (status) {
    case LevelStatus::Zero: return "zero";
    case LevelStatus::IsoToComplement: return "iso-to-complement";
    case LevelStatus::EpiFromLeafAtN: return "epi-from-leaf";
  }
  return "unknown";
}

std::string to_string(Headline headline) {
  switch (headline) {
    case Headline::None: return "none";
    case Headline::NMinusOneConnected: return "(n-1)-connected";
    case Headline::SimplyConnected: return "simply-connected";
  }
  return "unknown";
}

std::vector<std::string> standard_assumptions(const FoliationSpec& spec) {
  std::string symbols;
  if (spec.basis)
    for (const auto& s : spec.basis->symbols()) symbols += (symbols.empty() ? "" : ", ") + s;
  return {
      "polar divisor D has simple normal crossings with irreducible components",
      "polar divisor D is ample",
      "the leaf L is generic",
      "basis symbols {" + symbols + "} are linearly independent over Q",
  };
}

ConnectivityReport connectivity_report(const FoliationSpec& spec) {
  ConnectivityReport report;
  report.n = spec.n();
  report.resonance = resonance_classify(spec);
  if (spec.is_projective()) {
    report.pi1_leaf = leaf_pi1(spec);
  } else {
    report.caveats.push_back("pi_1 of the leaf is not computed on a complete-intersection ambient");
  }

  const auto d = spec.degrees();
  const bool all_linear = std::all_of(d.begin(), d.end(), [](const Integer& x) { return x == 1; });
  for (int level = 2; level <= report.n; ++level)
    report.higher[level] = level < report.n
                               ? (all_linear ? LevelStatus::Zero : LevelStatus::IsoToComplement)
                               : LevelStatus::EpiFromLeafAtN;

  if (report.n < 2) {
    report.caveats.push_back(
        "n = 1: the leaf theorem needs n > 1, so pi1_leaf is the kernel group of the period map, "
        "not a proven pi_1(L)");
  } else if (report.pi1_leaf) {
    if (all_linear && !report.resonance.resonant && vector_gcd(d) == 1)
      report.headline = Headline::NMinusOneConnected;
    else if (report.pi1_leaf->is_trivial())
      report.headline = Headline::SimplyConnected;
  }
  report.assumptions = standard_assumptions(spec);
  return report;
}

FoliationSpec with_ambient_dim(const FoliationSpec& spec, int dim) {
  if (!spec.is_projective()) throw UnsupportedAmbient("changing the ambient dimension");
  FoliationSpec out = spec;
  out.ambient = ProjectiveSpace{dim};
  for (auto& c : out.components)
    if (c.polynomial && c.polynomial->variable_count != static_cast<std::size_t>(dim + 1))
      c.polynomial.reset();
  return out;
}

HyperplaneSectionReport hyperplane_section_report(const FoliationSpec& spec) {
  if (!spec.is_projective()) throw UnsupportedAmbient("the hyperplane-section report");
  const int n = spec.n();
  if (n < 2) throw DimensionTooLow(n);
  HyperplaneSectionReport report;
  report.n = n;
  report.iso_below = n - 1;
  report.epi_level = n - 1;
  report.restricted = with_ambient_dim(spec, spec.dim() - 1);
  report.ambient_pi1 = leaf_pi1(spec);
  report.section_pi1 = leaf_pi1(report.restricted);
  report.pi1_match = report.ambient_pi1 == report.section_pi1;
  report.pi1_iso_guaranteed = n - 1 > 1;
  return report;
}

}  // namespace logfol
