#include "spec_document.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>

namespace logfol::cli {
namespace {

std::string join_issues(const std::vector<SpecIssue>& issues) {
  std::string out;
  for (const auto& issue : issues) {
    if (!out.empty()) out += "; ";
    out += issue.location.empty() ? issue.message : issue.location + ": " + issue.message;
  }
  return out;
}

// join_issues without the first location, which ValidationError prefixes
// itself as the field path.
std::string message_after_first_location(std::vector<SpecIssue> issues) {
  if (!issues.empty()) issues.front().location.clear();
  return join_issues(issues);
}

// Semantic problems found while building the spec (as opposed to shape
// problems, which are ParseErrors).
class InvalidSpec : public ValidationError {
 public:
  explicit InvalidSpec(const std::vector<SpecIssue>& issues)
      : ValidationError(issues.empty() ? "" : issues.front().location, message_after_first_location(issues)),
        issues_(issues) {}
  const std::vector<SpecIssue>& issues() const noexcept { return issues_; }

 private:
  std::vector<SpecIssue> issues_;
};

std::string line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

class DocumentReader {
 public:
  std::vector<SpecIssue> shape;
  std::vector<SpecIssue> invalid;
  std::vector<std::string> warnings;

  void bad_shape(const std::string& path, const std::string& message) { shape.push_back({path, message}); }
  void bad_value(const std::string& path, const std::string& message) { invalid.push_back({path, message}); }

  const Json* member(const Json& object, const std::string& key, const std::string& path, bool required) {
    const auto it = object.find(key);
    if (it == object.end()) {
      if (required) bad_shape(join(path, key), "missing required field");
      return nullptr;
    }
    return &*it;
  }

  void warn_unknown(const Json& object, const std::string& path, std::initializer_list<const char*> known) {
    for (const auto& [key, value] : object.items()) {
      bool ok = false;
      for (const char* k : known) ok = ok || key == k;
      if (!ok) warnings.push_back("unknown field " + join(path, key) + " ignored");
    }
  }

  std::optional<long long> integer(const Json* node, const std::string& path) {
    if (!node) return std::nullopt;
    if (!node->is_number_integer()) {
      bad_shape(path, "expected an integer");
      return std::nullopt;
    }
    return node->get<long long>();
  }

  std::optional<Rational> rational(const Json& node, const std::string& path) {
    if (node.is_number_integer()) return Rational(Integer(static_cast<long>(node.get<long long>())));
    if (node.is_string()) {
      try {
        return parse_rational(node.get<std::string>());
      } catch (const std::invalid_argument& e) {
        bad_shape(path, e.what());
        return std::nullopt;
      }
    }
    bad_shape(path, "expected an exact rational written as a string, e.g. \"-1/2\"");
    return std::nullopt;
  }

  static std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
  }
};

std::optional<Ambient> read_ambient(DocumentReader& r, const Json& root) {
  const Json* node = r.member(root, "ambient", "", true);
  if (!node) return std::nullopt;
  if (!node->is_object()) {
    r.bad_shape("ambient", "expected an object");
    return std::nullopt;
  }
  const Json* type = r.member(*node, "type", "ambient", true);
  const auto dim = r.integer(r.member(*node, "dim", "ambient", true), "ambient.dim");
  if (!type) return std::nullopt;
  if (!type->is_string()) {
    r.bad_shape("ambient.type", "expected a string");
    return std::nullopt;
  }
  const auto kind = type->get<std::string>();
  if (kind == "projective") {
    r.warn_unknown(*node, "ambient", {"type", "dim"});
    if (!dim) return std::nullopt;
    return ProjectiveSpace{static_cast<int>(*dim)};
  }
  if (kind == "complete-intersection") {
    r.warn_unknown(*node, "ambient", {"type", "dim", "N", "multidegree"});
    const auto big_n = r.integer(r.member(*node, "N", "ambient", true), "ambient.N");
    const Json* degrees = r.member(*node, "multidegree", "ambient", true);
    std::vector<int> multidegree;
    if (degrees) {
      if (!degrees->is_array()) {
        r.bad_shape("ambient.multidegree", "expected an array of integers");
      } else {
        for (std::size_t i = 0; i < degrees->size(); ++i)
          if (auto d = r.integer(&(*degrees)[i], "ambient.multidegree[" + std::to_string(i) + "]"))
            multidegree.push_back(static_cast<int>(*d));
      }
    }
    if (!dim || !big_n) return std::nullopt;
    return CompleteIntersectionAmbient{static_cast<int>(*big_n), multidegree, static_cast<int>(*dim)};
  }
  r.bad_shape("ambient.type", "expected \"projective\" or \"complete-intersection\"");
  return std::nullopt;
}

SymbolBasisPtr read_basis(DocumentReader& r, const Json& root) {
  const Json* node = r.member(root, "basis", "", true);
  if (!node) return nullptr;
  if (!node->is_object()) {
    r.bad_shape("basis", "expected an object");
    return nullptr;
  }
  r.warn_unknown(*node, "basis", {"symbols", "numeric"});
  const Json* symbols_node = r.member(*node, "symbols", "basis", true);
  if (!symbols_node) return nullptr;
  if (!symbols_node->is_array()) {
    r.bad_shape("basis.symbols", "expected an array of strings");
    return nullptr;
  }
  std::vector<std::string> symbols;
  for (std::size_t i = 0; i < symbols_node->size(); ++i) {
    const auto& s = (*symbols_node)[i];
    if (!s.is_string()) {
      r.bad_shape("basis.symbols[" + std::to_string(i) + "]", "expected a string");
      return nullptr;
    }
    symbols.push_back(s.get<std::string>());
  }

  const Json* numeric_node = r.member(*node, "numeric", "basis", false);
  const std::size_t issues_before = r.shape.size() + r.invalid.size();
  try {
    if (!numeric_node) return std::make_shared<const SymbolBasis>(symbols);
    if (!numeric_node->is_object()) {
      r.bad_shape("basis.numeric", "expected an object mapping symbols to numbers");
      return nullptr;
    }
    std::vector<Complex> values(symbols.size());
    std::vector<bool> seen(symbols.size(), false);
    for (const auto& [key, value] : numeric_node->items()) {
      const std::string path = "basis.numeric." + key;
      const auto it = std::find(symbols.begin(), symbols.end(), key);
      if (it == symbols.end()) {
        r.bad_value(path, "not a declared symbol");
        continue;
      }
      const auto index = static_cast<std::size_t>(it - symbols.begin());
      if (value.is_number()) {
        values[index] = value.get<double>();
      } else if (value.is_object() && value.contains("re") && value.contains("im") &&
                 value["re"].is_number() && value["im"].is_number()) {
        values[index] = Complex(value["re"].get<double>(), value["im"].get<double>());
      } else {
        r.bad_shape(path, "expected a number or {\"re\": x, \"im\": y}");
        continue;
      }
      seen[index] = true;
    }
    for (std::size_t i = 0; i < symbols.size(); ++i)
      if (!seen[i] && symbols[i] == "1") {
        values[i] = 1.0;
        seen[i] = true;
      }
    for (std::size_t i = 0; i < symbols.size(); ++i)
      if (!seen[i]) r.bad_value("basis.numeric." + symbols[i], "missing numeric value");
    if (r.shape.size() + r.invalid.size() != issues_before) return nullptr;
    return std::make_shared<const SymbolBasis>(symbols, values);
  } catch (const ValidationError& e) {
    r.bad_value(e.field(), e.what());
    return nullptr;
  }
}

std::optional<HomogeneousPolynomial> read_polynomial(DocumentReader& r, const Json& node,
                                                     const std::string& path) {
  if (!node.is_array() || node.empty()) {
    r.bad_shape(path, "expected a nonempty array of {\"coeff\", \"exponents\"} terms");
    return std::nullopt;
  }
  HomogeneousPolynomial p;
  bool ok = true;
  for (std::size_t t = 0; t < node.size(); ++t) {
    const std::string term_path = path + "[" + std::to_string(t) + "]";
    const auto& term = node[t];
    if (!term.is_object()) {
      r.bad_shape(term_path, "expected an object");
      ok = false;
      continue;
    }
    r.warn_unknown(term, term_path, {"coeff", "exponents"});
    const Json* coeff = r.member(term, "coeff", term_path, true);
    const Json* exponents = r.member(term, "exponents", term_path, true);
    if (!coeff || !exponents) {
      ok = false;
      continue;
    }
    auto c = r.rational(*coeff, term_path + ".coeff");
    Monomial m;
    if (!exponents->is_array()) {
      r.bad_shape(term_path + ".exponents", "expected an array of nonnegative integers");
      ok = false;
      continue;
    }
    for (std::size_t i = 0; i < exponents->size(); ++i) {
      const auto& e = (*exponents)[i];
      if (!e.is_number_integer() || e.get<long long>() < 0) {
        r.bad_shape(term_path + ".exponents[" + std::to_string(i) + "]", "expected a nonnegative integer");
        ok = false;
        continue;
      }
      m.exponents.push_back(static_cast<unsigned>(e.get<long long>()));
    }
    if (!c) {
      ok = false;
      continue;
    }
    m.coefficient = *c;
    if (t == 0) p.variable_count = m.exponents.size();
    p.terms.push_back(std::move(m));
  }
  if (!ok) return std::nullopt;
  return p;
}

std::vector<DivisorComponent> read_components(DocumentReader& r, const Json& root,
                                              const SymbolBasisPtr& basis) {
  std::vector<DivisorComponent> components;
  const Json* node = r.member(root, "components", "", true);
  if (!node) return components;
  if (!node->is_array()) {
    r.bad_shape("components", "expected an array");
    return components;
  }
  for (std::size_t j = 0; j < node->size(); ++j) {
    const std::string path = "components[" + std::to_string(j) + "]";
    const auto& c = (*node)[j];
    if (!c.is_object()) {
      r.bad_shape(path, "expected an object");
      continue;
    }
    r.warn_unknown(c, path, {"name", "degree", "residue", "polynomial"});
    std::string name = "D" + std::to_string(j);
    if (const Json* n = r.member(c, "name", path, false)) {
      if (n->is_string())
        name = n->get<std::string>();
      else
        r.bad_shape(path + ".name", "expected a string");
    }
    const auto degree = r.integer(r.member(c, "degree", path, true), path + ".degree");

    std::optional<HomogeneousPolynomial> polynomial;
    if (const Json* p = r.member(c, "polynomial", path, false)) polynomial = read_polynomial(r, *p, path + ".polynomial");

    const Json* residue_node = r.member(c, "residue", path, true);
    if (!residue_node) continue;
    if (!residue_node->is_object()) {
      r.bad_shape(path + ".residue", "expected an object mapping symbols to rationals");
      continue;
    }
    std::map<std::string, Rational> terms;
    bool terms_ok = true;
    for (const auto& [symbol, value] : residue_node->items()) {
      if (auto q = r.rational(value, path + ".residue." + symbol))
        terms[symbol] = *q;
      else
        terms_ok = false;
    }
    if (!basis || !terms_ok || !degree) continue;
    try {
      components.push_back({name, *degree, ResidueVector::from_terms(basis, terms), std::move(polynomial)});
    } catch (const ZeroResidue&) {
      r.bad_value(path + ".residue", "all coordinates are zero; residues must be nonzero (lambda_j in C*)");
    } catch (const ValidationError& e) {
      r.bad_value(path + ".residue", e.what());
    }
  }
  return components;
}

}  // namespace

ParseError::ParseError(std::vector<SpecIssue> issues)
    : ValidationError("", "malformed spec document: " + join_issues(issues)), issues_(std::move(issues)) {}

ParsedSpec parse_spec(std::string_view text, bool force_strict) {
  Json root;
  try {
    root = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw ParseError(std::vector<SpecIssue>{{line_column(text, e.byte == 0 ? 0 : e.byte - 1), e.what()}});
  }
  if (!root.is_object()) throw ParseError(std::vector<SpecIssue>{{"", "top level must be a JSON object"}});

  DocumentReader r;
  r.warn_unknown(root, "", {"ambient", "basis", "components", "options"});
  ParsedSpec parsed;
  auto& spec = parsed.spec;
  const auto ambient = read_ambient(r, root);
  spec.basis = read_basis(r, root);
  spec.components = read_components(r, root, spec.basis);
  if (const Json* options = r.member(root, "options", "", false)) {
    if (!options->is_object()) {
      r.bad_shape("options", "expected an object");
    } else {
      r.warn_unknown(*options, "options", {"strict"});
      if (const Json* strict = r.member(*options, "strict", "options", false)) {
        if (strict->is_boolean())
          spec.strict = strict->get<bool>();
        else
          r.bad_shape("options.strict", "expected a boolean");
      }
    }
  }
  if (!r.shape.empty()) throw ParseError(r.shape);
  if (!r.invalid.empty()) throw InvalidSpec(r.invalid);
  if (ambient) spec.ambient = *ambient;
  spec.strict = spec.strict || force_strict;

  validate(spec);
  parsed.warnings = std::move(r.warnings);

  const auto degrees = spec.degrees();
  const auto residues = spec.residues();
  const auto check = residue_theorem_check(degrees, residues);
  if (!check.satisfied) {
    const std::string message = "sum d_j*lambda_j = " + check.value_text +
                                " != 0; no closed logarithmic form with this data exists";
    if (spec.strict) throw ValidationError("components", message);
    parsed.warnings.push_back(message);
  }
  if (spec.n() < 2) {
    const std::string message = "n = " + std::to_string(spec.n()) +
                                " < 2: leaf results are outside the theorem's hypothesis n > 1";
    if (spec.strict) throw ValidationError("ambient.dim", message);
    parsed.warnings.push_back(message);
  }
  return parsed;
}

ParsedSpec parse_spec_file(const std::string& path, bool force_strict) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(std::vector<SpecIssue>{{path, "cannot open spec file"}});
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  return parse_spec(text, force_strict);
}

Json serialize_spec(const FoliationSpec& spec) {
  Json doc;
  if (const auto* p = std::get_if<ProjectiveSpace>(&spec.ambient)) {
    doc["ambient"] = {{"type", "projective"}, {"dim", p->dim}};
  } else {
    const auto& ci = std::get<CompleteIntersectionAmbient>(spec.ambient);
    doc["ambient"] = {{"type", "complete-intersection"},
                      {"dim", ci.dim},
                      {"N", ci.projective_dim},
                      {"multidegree", ci.multidegree}};
  }

  Json basis;
  basis["symbols"] = spec.basis->symbols();
  if (spec.basis->has_numeric_values()) {
    Json numeric = Json::object();
    for (std::size_t i = 0; i < spec.basis->size(); ++i) {
      const Complex v = spec.basis->numeric_values()[i];
      if (v.imag() == 0.0)
        numeric[spec.basis->symbols()[i]] = v.real();
      else
        numeric[spec.basis->symbols()[i]] = {{"re", v.real()}, {"im", v.imag()}};
    }
    basis["numeric"] = std::move(numeric);
  }
  doc["basis"] = std::move(basis);

  Json components = Json::array();
  for (const auto& c : spec.components) {
    Json item;
    item["name"] = c.name;
    item["degree"] = c.degree;
    Json residue = Json::object();
    for (std::size_t s = 0; s < spec.basis->size(); ++s)
      if (c.residue.coords()[s] != 0) residue[spec.basis->symbols()[s]] = to_string(c.residue.coords()[s]);
    item["residue"] = std::move(residue);
    if (c.polynomial) {
      Json terms = Json::array();
      for (const auto& t : c.polynomial->terms)
        terms.push_back({{"coeff", to_string(t.coefficient)}, {"exponents", t.exponents}});
      item["polynomial"] = std::move(terms);
    }
    components.push_back(std::move(item));
  }
  doc["components"] = std::move(components);
  doc["options"] = {{"strict", spec.strict}};
  return doc;
}

}  // namespace logfol::cli
