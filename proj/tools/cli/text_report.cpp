#include <sstream>

#include "commands.hpp"

namespace logfol::cli {
namespace {

std::string vector_text(const Json& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += v[i].is_string() ? v[i].get<std::string>() : v[i].dump();
  }
  return out + ")";
}

std::string complex_text(const Json& z) {
  std::ostringstream os;
  const double re = z[0].get<double>();
  const double im = z[1].get<double>();
  os << re << (im < 0 ? " - " : " + ") << (im < 0 ? -im : im) << "i";
  return os.str();
}

void resonance_lines(std::ostringstream& os, const Json& r, const char* indent) {
  os << indent << "residues: " << r["class"].get<std::string>();
  if (!r["witness"].is_null()) os << ", witness " << vector_text(r["witness"]);
  os << " (d' = " << vector_text(r["reduced_degrees"]) << ")\n";
}

}  // namespace

std::string render_text(const Json& report) {
  std::ostringstream os;
  os << report["tool"].get<std::string>() << ' ' << report["version"].get<std::string>() << "  "
     << report["command"].get<std::string>() << "  [" << report["status"].get<std::string>() << "]\n";
  os << "input " << report["input_digest"].get<std::string>() << '\n';

  const Json& r = report["results"];
  if (r.contains("complement_pi1"))
    os << "pi_1(P^{n+1} - D) = " << r["complement_pi1"]["text"].get<std::string>() << "   degrees "
       << vector_text(r["degrees"]) << '\n';
  if (r.contains("relation_lattice")) {
    os << "relation lattice K: rank " << r["relation_lattice"]["rank"].dump();
    for (const auto& b : r["relation_lattice"]["basis"]) os << "  " << vector_text(b);
    os << '\n';
  }
  if (r.contains("leaf_pi1")) os << "pi_1(generic leaf) = " << r["leaf_pi1"]["text"].get<std::string>() << '\n';
  if (r.contains("resonance")) resonance_lines(os, r["resonance"], "");
  if (r.contains("numeric_relations")) {
    const auto& n = r["numeric_relations"];
    os << "numeric relations (heuristic, eps " << n["epsilon"].dump() << ", height <= "
       << n["height_bound"].dump() << "):";
    if (n["candidates"].empty()) os << " none";
    for (const auto& c : n["candidates"]) os << "  " << vector_text(c["vector"]);
    os << '\n';
  }
  if (r.contains("connectivity")) {
    const auto& c = r["connectivity"];
    os << "connectivity (n = " << c["n"].dump() << "):\n";
    os << "  pi_1(L) = "
       << (c["pi1_leaf"].is_string() ? c["pi1_leaf"].get<std::string>() : c["pi1_leaf"]["text"].get<std::string>())
       << '\n';
    resonance_lines(os, c["resonance"], "  ");
    for (const auto& [level, status] : c["higher"].items())
      os << "  pi_" << level << "(L) -> pi_" << level << "(X - D): " << status.get<std::string>() << '\n';
    os << "  headline: "
       << (c.contains("headline_text") ? c["headline_text"].get<std::string>() : c["headline"].get<std::string>())
       << '\n';
  }
  if (r.contains("hyperplane_section")) {
    const auto& h = r["hyperplane_section"];
    os << "hyperplane section: iso for l < " << h["iso_for_levels_below"].dump() << ", epi at l = "
       << h["epi_at_level"].dump() << "; pi_1(L) = " << h["ambient_pi1"]["text"].get<std::string>()
       << ", pi_1(L ∩ H) = " << h["section_pi1"]["text"].get<std::string>()
       << (h["pi1_match"].get<bool>() ? " (match" : " (MISMATCH")
       << (h["pi1_iso_guaranteed"].get<bool>() ? ", guaranteed)" : ", not guaranteed for n - 1 <= 1)") << '\n';
  }
  if (r.contains("verify_periods")) {
    const auto& v = r["verify_periods"];
    os << "meridian integrals (" << v["samples"].dump() << " samples, tolerance " << v["tolerance"].dump()
       << "):\n";
    for (const auto& m : v["meridians"])
      os << "  " << m["name"].get<std::string>() << " root " << complex_text(m["root"]) << ": "
         << complex_text(m["value"]) << "  error " << m["abs_error"].get<double>() << '\n';
    os << "  sum over roots " << complex_text(v["global_sum"]) << " vs 2*pi*i*sum d*lambda "
       << complex_text(v["global_expected"]) << (v["global_law_holds"].get<bool>() ? " (ok)" : " (FAILED)")
       << '\n';
  }
  if (report.contains("error")) {
    const auto& e = report["error"];
    os << "error: " << e["kind"].get<std::string>() << ": " << e["message"].get<std::string>() << '\n';
  }
  if (!report["assumptions"].empty()) {
    os << "assumptions:\n";
    for (const auto& a : report["assumptions"]) os << "  - " << a.get<std::string>() << '\n';
  }
  if (!report["warnings"].empty()) {
    os << "warnings:\n";
    for (const auto& w : report["warnings"]) os << "  - " << w.get<std::string>() << '\n';
  }
  return os.str();
}

}  // namespace logfol::cli
