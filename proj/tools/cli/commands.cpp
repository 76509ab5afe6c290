#include "commands.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>

#include "logfol/foliation.hpp"
#include "logfol/lattice.hpp"
#include "logfol/residue.hpp"

#ifndef LOGFOL_VERSION
#define LOGFOL_VERSION "0.0.0"
#endif

namespace logfol::cli {
namespace {

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr);
  std::string hex;
  hex.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    char byte[3];
    std::snprintf(byte, sizeof byte, "%02x", digest[i]);
    hex += byte;
  }
  return "sha256:" + hex;
}

Json json_integer(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

Json json_vector(const IntegerVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(json_integer(x));
  return out;
}

Json json_group(const AbelianGroupInvariants& g) {
  Json torsion = Json::array();
  for (const auto& t : g.torsion) torsion.push_back(json_integer(t));
  return {{"free_rank", g.free_rank}, {"torsion", torsion}, {"text", to_string(g)}};
}

Json json_lattice(const Lattice& l) {
  Json basis = Json::array();
  for (std::size_t i = 0; i < l.rank(); ++i) basis.push_back(json_vector(l.basis_vector(i)));
  return {{"rank", l.rank()}, {"basis", basis}};
}

Json json_complex(Complex z) { return Json::array({z.real(), z.imag()}); }

Json json_resonance(const Resonance& r) {
  Json out;
  out["class"] = r.resonant ? "resonant" : "non-resonant";
  out["witness"] = r.witness ? json_vector(*r.witness) : Json(nullptr);
  out["reduced_degrees"] = json_vector(r.reduced_degrees);
  return out;
}

Json json_meridians(const MeridianReport& m, const FoliationSpec& spec, const RunOptions& options) {
  Json meridians = Json::array();
  for (const auto& item : m.meridians) {
    meridians.push_back({{"component", item.component},
                         {"name", spec.components[item.component].name},
                         {"root", json_complex(item.root)},
                         {"radius", item.integral.radius},
                         {"value", json_complex(item.integral.value)},
                         {"expected", json_complex(item.integral.expected)},
                         {"abs_error", item.integral.abs_error}});
  }
  Json out;
  out["seed"] = options.seed;
  out["samples"] = options.samples;
  out["tolerance"] = m.tolerance;
  out["meridians"] = std::move(meridians);
  out["meridians_pass"] = m.meridians_pass;
  out["worst_error"] = m.worst_error;
  out["global_sum"] = json_complex(m.global_sum);
  out["global_expected"] = json_complex(m.global_expected);
  out["global_error"] = m.global_error;
  out["global_law_holds"] = m.global_law_holds;
  out["global_sum_vanishes"] = m.global_sum_vanishes;
  out["residue_theorem"] = {{"satisfied", m.residue_theorem.satisfied},
                            {"value", m.residue_theorem.value_text}};
  return out;
}

struct Session {
  const ParsedSpec& parsed;
  const RunOptions& options;
  Json results = Json::object();
  std::vector<std::string> warnings;

  const FoliationSpec& spec() const { return parsed.spec; }
  void warn(std::string message) {
    if (std::find(warnings.begin(), warnings.end(), message) == warnings.end())
      warnings.push_back(std::move(message));
  }
};

Integer height_bound_of(const RunOptions& options) {
  if (options.height_bound.empty()) return Integer(kDefaultHeightBound);
  Integer bound;
  if (bound.set_str(options.height_bound, 10) != 0 || bound < 1)
    throw ValidationError("--height-bound", "expected a positive integer");
  return bound;
}

void complement_command(Session& s) {
  s.results["degrees"] = json_vector(s.spec().degrees());
  s.results["complement_pi1"] = json_group(complement_pi1(s.spec()));
}

void leaf_command(Session& s) {
  s.results["relation_lattice"] = json_lattice(spec_relation_lattice(s.spec()));
  s.results["leaf_pi1"] = json_group(leaf_pi1(s.spec()));
  s.results["theorem_hypothesis_n_gt_1"] = s.spec().n() > 1;
}

void resonance_command(Session& s) {
  const auto resonance = resonance_classify(s.spec());
  s.results["resonance"] = json_resonance(resonance);
  if (!s.spec().basis->has_numeric_values()) return;

  // Heuristic cross-check of the exact lattice from the numeric embedding.
  std::vector<Complex> values;
  for (const auto& c : s.spec().components) values.push_back(c.residue.numeric_value());
  const Integer bound = height_bound_of(s.options);
  const auto search = numeric_relation_candidates(values, bound, default_relation_epsilon(values));
  const Lattice exact = spec_relation_lattice(s.spec());

  Json candidates = Json::array();
  for (const auto& c : search.candidates) {
    const bool exact_relation = lattice_contains(exact, c.vector);
    candidates.push_back({{"vector", json_vector(c.vector)},
                          {"residual", c.residual},
                          {"height", json_integer(c.height)},
                          {"exact", exact_relation}});
    if (!exact_relation) {
      std::ostringstream os;
      os << "numeric relation " << c.vector << " is not an exact relation over the declared basis";
      s.warn(os.str());
    }
  }
  s.results["numeric_relations"] = {{"heuristic", true},
                                    {"epsilon", search.epsilon},
                                    {"height_bound", json_integer(search.height_bound)},
                                    {"candidates", std::move(candidates)}};
}

void connectivity_command(Session& s) {
  const auto report = connectivity_report(s.spec());
  Json higher = Json::object();
  for (const auto& [level, status] : report.higher) higher[std::to_string(level)] = to_string(status);
  Json out;
  out["n"] = report.n;
  out["pi1_leaf"] = report.pi1_leaf ? json_group(*report.pi1_leaf) : Json("not computed");
  out["resonance"] = json_resonance(report.resonance);
  out["higher"] = std::move(higher);
  out["headline"] = to_string(report.headline);
  if (report.headline == Headline::NMinusOneConnected)
    out["headline_text"] = std::to_string(report.n - 1) + "-connected";
  s.results["connectivity"] = std::move(out);
  for (const auto& caveat : report.caveats) s.warn(caveat);
}

void hyperplane_command(Session& s) {
  const auto report = hyperplane_section_report(s.spec());
  s.results["hyperplane_section"] = {{"n", report.n},
                                     {"iso_for_levels_below", report.iso_below},
                                     {"epi_at_level", report.epi_level},
                                     {"ambient_pi1", json_group(report.ambient_pi1)},
                                     {"section_pi1", json_group(report.section_pi1)},
                                     {"pi1_match", report.pi1_match},
                                     {"pi1_iso_guaranteed", report.pi1_iso_guaranteed}};
}

void periods_command(Session& s) {
  try {
    const auto m = verify_meridians(s.spec(), s.options.tolerance, s.options.seed, s.options.samples);
    s.results["verify_periods"] = json_meridians(m, s.spec(), s.options);
    if (!m.global_sum_vanishes)
      s.warn("sum of meridian integrals is nonzero (2*pi*i*(" + m.residue_theorem.value_text +
             ")): residue sum check " + (m.residue_theorem.satisfied ? "satisfied" : "violated"));
  } catch (const MeridianMismatch& e) {
    s.results["verify_periods"] = json_meridians(e.report(), s.spec(), s.options);
    throw;
  }
}

bool periods_available(const FoliationSpec& spec) {
  if (!spec.is_projective() || !spec.basis->has_numeric_values()) return false;
  return std::all_of(spec.components.begin(), spec.components.end(),
                     [](const DivisorComponent& c) { return c.polynomial.has_value(); });
}

void full_command(Session& s) {
  const auto& spec = s.spec();
  if (spec.is_projective()) {
    complement_command(s);
    leaf_command(s);
  }
  resonance_command(s);
  connectivity_command(s);
  if (spec.is_projective() && spec.n() >= 2)
    hyperplane_command(s);
  else
    s.warn("hyperplane-section skipped (needs projective ambient with n >= 2)");
  if (periods_available(spec))
    periods_command(s);
  else
    s.warn("verify-periods skipped (needs polynomials on every component and numeric symbol values)");
}

const std::map<std::string, std::function<void(Session&)>>& dispatch_table() {
  static const std::map<std::string, std::function<void(Session&)>> table = {
      {"complement-pi", complement_command},   {"leaf-pi", leaf_command},
      {"resonance", resonance_command},        {"connectivity", connectivity_command},
      {"hyperplane-section", hyperplane_command}, {"verify-periods", periods_command},
      {"full", full_command},
  };
  return table;
}

Json error_json(const std::exception& e) {
  Json error;
  error["kind"] = error_kind(e);
  error["message"] = e.what();
  error["exit_code"] = exit_code_for(e);
  if (const auto* d = dynamic_cast<const DegreeVectorNotInKernel*>(&e)) {
    error["residue_sum"] = d->residue_sum().value_text;
  } else if (const auto* p = dynamic_cast<const ParseError*>(&e)) {
    Json issues = Json::array();
    for (const auto& issue : p->issues()) issues.push_back({{"location", issue.location}, {"message", issue.message}});
    error["issues"] = std::move(issues);
  } else if (const auto* v = dynamic_cast<const ValidationError*>(&e)) {
    error["field"] = v->field();
  }
  return error;
}

Json make_report(const std::string& command, const std::string& digest, Json results, const Json* error,
                 int exit_code, std::vector<std::string> assumptions, std::vector<std::string> warnings) {
  Json report;
  report["tool"] = "logfol";
  report["version"] = LOGFOL_VERSION;
  report["command"] = command;
  report["input_digest"] = digest;
  report["status"] = exit_code == kExitOk ? "ok" : (exit_code == kExitOracle ? "oracle-failure" : "error");
  report["exit_code"] = exit_code;
  report["results"] = std::move(results);
  if (error) report["error"] = *error;
  report["assumptions"] = std::move(assumptions);
  report["warnings"] = std::move(warnings);
  return report;
}

}  // namespace

int exit_code_for(const std::exception& error) {
  if (dynamic_cast<const OracleError*>(&error)) return kExitOracle;
  if (dynamic_cast<const ComputationError*>(&error)) return kExitComputation;
  if (dynamic_cast<const ValidationError*>(&error)) return kExitValidation;
  if (dynamic_cast<const std::invalid_argument*>(&error)) return kExitValidation;
  return kExitComputation;
}

std::string error_kind(const std::exception& e) {
#define LOGFOL_KIND(T) \
  if (dynamic_cast<const T*>(&e)) return #T
  LOGFOL_KIND(DegreeVectorNotInKernel);
  LOGFOL_KIND(UnsupportedAmbient);
  LOGFOL_KIND(DimensionTooLow);
  LOGFOL_KIND(SubNotContained);
  LOGFOL_KIND(DegenerateLine);
  LOGFOL_KIND(RootOnContour);
  LOGFOL_KIND(MeridianMismatch);
  LOGFOL_KIND(ToleranceExceeded);
  LOGFOL_KIND(ParseError);
  LOGFOL_KIND(PreconditionError);
  LOGFOL_KIND(MixedBases);
  LOGFOL_KIND(ZeroResidue);
  LOGFOL_KIND(UnknownSymbol);
  LOGFOL_KIND(ValidationError);
  LOGFOL_KIND(ComputationError);
  LOGFOL_KIND(OracleError);
#undef LOGFOL_KIND
  if (dynamic_cast<const std::invalid_argument*>(&e)) return "InvalidArgument";
  return "InternalError";
}

RunResult run(const std::string& command, const ParsedSpec& parsed, const RunOptions& options) {
  Session session{parsed, options, Json::object(), {}};
  session.warnings = parsed.warnings;
  const std::string digest = sha256_hex(serialize_spec(parsed.spec).dump());
  const auto assumptions = standard_assumptions(parsed.spec);

  RunResult result;
  std::optional<Json> error;
  try {
    const auto& table = dispatch_table();
    const auto it = table.find(command);
    if (it == table.end()) throw ValidationError("command", "unknown command '" + command + "'");
    it->second(session);
  } catch (const std::exception& e) {
    error = error_json(e);
    result.exit_code = exit_code_for(e);
  }
  result.report = make_report(command, digest, std::move(session.results), error ? &*error : nullptr,
                              result.exit_code, assumptions, std::move(session.warnings));
  return result;
}

RunResult run_document(const std::string& command, std::string_view document, const RunOptions& options) {
  try {
    const ParsedSpec parsed = parse_spec(document, options.strict);
    return run(command, parsed, options);
  } catch (const std::exception& e) {
    RunResult result;
    result.exit_code = exit_code_for(e);
    const Json error = error_json(e);
    result.report = make_report(command, sha256_hex(document), Json::object(), &error, result.exit_code, {}, {});
    return result;
  }
}

}  // namespace logfol::cli
