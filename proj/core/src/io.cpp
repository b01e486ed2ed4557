#include "fqav/io.hpp"

#include <regex>
#include <sstream>

#include "fqav/classify.hpp"
#include "fqav/decompose.hpp"
#include "json.hpp"

namespace fqav {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& code, const std::string& field,
                       const std::string& message) {
  throw InputError(code, field, std::nullopt, message);
}

const Json& require(const Json& obj, const char* key, const std::string& at) {
  if (!obj.is_object()) fail("schema", at, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) fail("schema", at + "/" + key, std::string("missing field '") + key + "'");
  return *it;
}

Integer parse_integer(const Json& v, const std::string& at) {
  static const std::regex pattern("-?[0-9]+");
  if (v.is_number_integer()) return Integer(v.dump());
  if (v.is_string() && std::regex_match(v.get<std::string>(), pattern))
    return Integer(v.get<std::string>());
  fail("schema", at, "expected an integer");
}

Rational parse_rational(const Json& v, const std::string& at) {
  static const std::regex pattern("(-?[0-9]+)(/([0-9]+))?");
  std::smatch m;
  std::string s;
  if (v.is_string()) s = v.get<std::string>();
  if (!v.is_string() || !std::regex_match(s, m, pattern))
    fail("bad-rational", at, "translation entries must be strings \"p/q\"");
  Integer num(m[1].str());
  Integer den = m[3].matched ? Integer(m[3].str()) : Integer(1);
  if (den == 0) fail("bad-rational", at, "zero denominator");
  Rational out(num, den);
  out.canonicalize();
  return out;
}

Json int_json(const Integer& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

Json rational_json(const Rational& x) { return x.get_str(); }

Json point_json(const TorsionPoint& p) {
  Json out = Json::array();
  for (const auto& x : p.coords()) out.push_back(rational_json(x));
  return out;
}

Json matrix_json(const IntMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(int_json(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

Json blocks_json(const EndoBlockMatrix& phi) {
  Json out = Json::array();
  for (std::size_t j = 0; j < phi.size(); ++j) {
    Json row = Json::array();
    for (std::size_t k = 0; k < phi.size(); ++k)
      row.push_back(Json::array({int_json(phi(j, k).c), int_json(phi(j, k).d)}));
    out.push_back(std::move(row));
  }
  return out;
}

Json element_json(const AffineAutomorphism& g) {
  Json out = Json::object();
  out["holonomy"] = blocks_json(g.holonomy);
  out["translation"] = point_json(g.translation);
  return out;
}

Json input_json(const ActionInput& in) {
  Json factors = Json::array();
  for (const auto& f : in.factors) {
    Json e = Json::object();
    e["cm"] = to_string(f.cm);
    if (f.cm == CmType::Generic) e["label"] = f.label;
    factors.push_back(std::move(e));
  }
  Json gens = Json::array();
  for (const auto& g : in.generators) gens.push_back(element_json(g));
  Json out = Json::object();
  out["schema_version"] = kSchemaVersion;
  out["factors"] = std::move(factors);
  out["generators"] = std::move(gens);
  out["options"] = Json{{"group_cap", in.group_cap}};
  return out;
}

std::size_t line_of(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

Json flag_json(const TheoremFlag& f) {
  if (!f.value) return nullptr;
  return *f.value;
}

Json group_json(const FiniteGroupAction& g) {
  Json out = Json::object();
  out["order"] = g.order();
  out["holonomy_order"] = g.holonomy_group().size();
  out["holonomy_exponent"] = g.holonomy_exponent();
  return out;
}

Json classification_json(const ClassificationReport& r) {
  Json out = Json::object();
  out["n"] = r.n;
  out["group_order"] = r.group_order;
  out["conductor"] = r.conductor;
  out["quasietale"] = r.quasietale;
  out["kappa_anticanonical"] = r.kappa_anticanonical;
  out["q_fano"] = r.q_fano;
  out["fano_type"] = r.fano_type;
  out["q_abelian"] = r.q_abelian;
  out["q_X"] = r.q_X;
  out["q_circle"] = r.q_circle;
  out["reid_tai"] = r.reid_tai.holds;
  out["uniruled"] = flag_json(r.uniruled);
  out["canonical"] = flag_json(r.canonical);
  out["kappa_zero"] = flag_json(r.kappa_zero);
  out["polarized_endo_m"] = int_json(r.polarized_endo_m);
  out["kappa_gap_noteworthy"] = r.kappa_gap_noteworthy;
  out["provenance"] = Json{
      {"quasietale", "fixed-loci-of-codimension-at-least-two"},
      {"kappa_anticanonical", "anticanonical-kappa-from-branch-divisor"},
      {"q_fano", "q-fano-iff-kappa-equals-dimension"},
      {"fano_type", "fano-type-iff-q-fano"},
      {"q_abelian", "q-abelian-iff-quasietale"},
      {"q_X", "irregularity-is-invariant-tangent-dimension"},
      {"q_circle", "structure-theorem-abelian-factor"},
      {"reid_tai", "reid-tai-age-criterion"},
      {"uniruled", r.uniruled.provenance},
      {"canonical", r.canonical.provenance},
      {"kappa_zero", r.kappa_zero.provenance},
      {"polarized_endo_m", "multiplication-commutes-with-group"},
  };
  return out;
}

Json ramification_json(const RamificationData& r) {
  Json comps = Json::array();
  for (std::size_t i = 0; i < r.components.size(); ++i) {
    const auto& t = r.components[i];
    Json c = Json::object();
    c["dim"] = t.dim();
    c["lattice"] = matrix_json(t.lattice().basis());
    c["translate"] = point_json(t.translate());
    c["index"] = r.indices[i];
    comps.push_back(std::move(c));
  }
  Json coeffs = Json::array();
  for (const auto& x : r.boundary_coeffs) coeffs.push_back(rational_json(x));
  Json out = Json::object();
  out["component_count"] = r.components.size();
  out["components"] = std::move(comps);
  out["orbits"] = r.orbits;
  out["boundary_coeffs"] = std::move(coeffs);
  out["intersection_dim"] = r.intersection_dim;
  return out;
}

Json reid_tai_json(const FiniteGroupAction& g, const ReidTaiResult& r, unsigned conductor) {
  Json out = Json::object();
  out["holds"] = r.holds;
  out["conductor"] = conductor;
  if (r.witness) {
    Json w = element_json(g.element(*r.witness));
    w["index"] = *r.witness;
    w["age"] = rational_json(*r.witness_age);
    out["witness"] = std::move(w);
  } else {
    out["witness"] = nullptr;
  }
  return out;
}

Json decomposition_json(const DecompositionResult& d) {
  Json factors = Json::array();
  for (const auto& l : d.abelian_factors)
    factors.push_back(Json{{"dim", l.rank() / 2}, {"lattice", matrix_json(l.basis())}});
  Json stages = Json::array();
  for (const auto& s : d.stages) {
    Json e = Json::object();
    e["n_order"] = s.n_order;
    e["abelian_dim"] = s.abelian_dim;
    e["complement_dim"] = s.complement_dim;
    e["ker_mu_order"] = int_json(s.ker_mu_order);
    e["n_tilde_order"] = s.n_tilde_order;
    e["n_c_order"] = s.n_c_order;
    e["quasietale_outside_check"] = s.quasietale_outside_check;
    e["fano_kappa_check"] = s.fano_kappa_check;
    stages.push_back(std::move(e));
  }
  Json fano = Json::object();
  fano["dim"] = d.fano_part.dim();
  fano["group_order"] = d.fano_part.order();
  fano["lattice"] = matrix_json(d.fano_part.embedding());
  Json out = Json::object();
  out["q_circle"] = d.total_abelian_dim;
  out["q_abelian"] = d.fano_part.dim() == 0;
  out["abelian_factors"] = std::move(factors);
  out["fano_part"] = std::move(fano);
  out["fano_kappa_check"] = d.fano_kappa_check;
  out["stages"] = std::move(stages);
  return out;
}

std::string scalar_md(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void render_md(const Json& v, const std::string& path, std::ostringstream& os) {
  if (v.is_object()) {
    for (const auto& [key, child] : v.items())
      render_md(child, path.empty() ? key : path + "." + key, os);
    return;
  }
  os << "- " << path << ": " << scalar_md(v) << "\n";
}

std::string to_markdown(const Json& doc) {
  std::ostringstream os;
  os << "# fqav " << doc.at("command").get<std::string>() << "\n";
  for (const auto& [key, section] : doc.items()) {
    if (key == "schema_version" || key == "command") continue;
    os << "\n## " << key << "\n\n";
    if (section.is_object())
      render_md(section, "", os);
    else
      os << "- " << scalar_md(section) << "\n";
  }
  return os.str();
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

}  // namespace

// ------------------------------------------------------------------- input

ActionInput parse_input(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("syntax", "", line_of(text, e.byte), e.what());
  }
  if (!doc.is_object()) fail("schema", "", "top level must be an object");

  if (doc.contains("schema_version")) {
    const Json& v = doc["schema_version"];
    if (!v.is_number_integer() || v.get<long>() != kSchemaVersion)
      fail("schema", "/schema_version", "unsupported schema_version");
  }
  for (const auto& [key, _] : doc.items())
    if (key != "schema_version" && key != "factors" && key != "generators" && key != "options")
      fail("schema", "/" + key, "unknown field '" + key + "'");

  ActionInput out;
  const Json& factors = require(doc, "factors", "");
  if (!factors.is_array() || factors.empty())
    fail("schema", "/factors", "factors must be a nonempty array");
  for (std::size_t j = 0; j < factors.size(); ++j) {
    const std::string at = "/factors/" + std::to_string(j);
    const Json& cm = require(factors[j], "cm", at);
    const std::string name = cm.is_string() ? cm.get<std::string>() : "";
    if (name == "zeta4") {
      out.factors.push_back(EllipticFactor::zeta4());
    } else if (name == "zeta6") {
      out.factors.push_back(EllipticFactor::zeta6());
    } else if (name == "generic") {
      std::string label = "_" + std::to_string(j);
      if (factors[j].contains("label")) {
        const Json& l = factors[j]["label"];
        if (!l.is_string() || l.get<std::string>().empty())
          fail("schema", at + "/label", "label must be a nonempty string");
        label = l.get<std::string>();
      }
      out.factors.push_back(EllipticFactor::generic(std::move(label)));
    } else {
      fail("schema", at + "/cm", "cm must be \"zeta4\", \"zeta6\" or \"generic\"");
    }
  }
  const AbelianVarietyModel model(out.factors);
  const std::size_t n = model.dim();

  if (doc.contains("options")) {
    const Json& opts = doc["options"];
    if (!opts.is_object()) fail("schema", "/options", "options must be an object");
    for (const auto& [key, v] : opts.items()) {
      if (key != "group_cap") fail("schema", "/options/" + key, "unknown option '" + key + "'");
      if (!v.is_number_unsigned() || v.get<std::size_t>() == 0)
        fail("schema", "/options/group_cap", "group_cap must be a positive integer");
      out.group_cap = v.get<std::size_t>();
    }
  }

  const Json& gens = require(doc, "generators", "");
  if (!gens.is_array()) fail("schema", "/generators", "generators must be an array");
  for (std::size_t g = 0; g < gens.size(); ++g) {
    const std::string at = "/generators/" + std::to_string(g);
    const Json& hol = require(gens[g], "holonomy", at);
    if (!hol.is_array() || hol.size() != n)
      fail("schema", at + "/holonomy", "holonomy must have " + std::to_string(n) + " rows");
    EndoBlockMatrix phi(n);
    for (std::size_t j = 0; j < n; ++j) {
      const std::string row_at = at + "/holonomy/" + std::to_string(j);
      if (!hol[j].is_array() || hol[j].size() != n)
        fail("schema", row_at, "holonomy row must have " + std::to_string(n) + " entries");
      for (std::size_t k = 0; k < n; ++k) {
        const std::string entry_at = row_at + "/" + std::to_string(k);
        const Json& e = hol[j][k];
        if (!e.is_array() || e.size() != 2) fail("schema", entry_at, "block must be [c, d]");
        phi(j, k).c = parse_integer(e[0], entry_at + "/0");
        phi(j, k).d = parse_integer(e[1], entry_at + "/1");
      }
    }
    try {
      validate_endomorphism(model, phi);
    } catch (const MathError& e) {
      fail("not-endomorphism", at + "/holonomy", e.what());
    }
    try {
      multiplicative_order(rational_rep(model, phi), out.group_cap);
    } catch (const MathError& e) {
      fail("not-finite-order", at + "/holonomy", e.what());
    }

    const Json& tr = require(gens[g], "translation", at);
    if (!tr.is_array() || tr.size() != 2 * n)
      fail("schema", at + "/translation",
           "translation must have " + std::to_string(2 * n) + " entries");
    RatVector coords;
    for (std::size_t i = 0; i < tr.size(); ++i)
      coords.push_back(parse_rational(tr[i], at + "/translation/" + std::to_string(i)));
    for (const auto& [key, _] : gens[g].items())
      if (key != "holonomy" && key != "translation")
        fail("schema", at + "/" + key, "unknown field '" + key + "'");
    out.generators.push_back({std::move(phi), TorsionPoint(std::move(coords))});
  }
  return out;
}

std::string serialize_input(const ActionInput& input) { return dump(input_json(input)); }

// ---------------------------------------------------------------- commands

std::optional<Command> parse_command(std::string_view name) {
  if (name == "validate") return Command::Validate;
  if (name == "classify") return Command::Classify;
  if (name == "ramification") return Command::Ramification;
  if (name == "reidtai") return Command::ReidTai;
  if (name == "decompose") return Command::Decompose;
  if (name == "report") return Command::Report;
  return std::nullopt;
}

std::string to_string(Command cmd) {
  switch (cmd) {
    case Command::Validate:
      return "validate";
    case Command::Classify:
      return "classify";
    case Command::Ramification:
      return "ramification";
    case Command::ReidTai:
      return "reidtai";
    case Command::Decompose:
      return "decompose";
    case Command::Report:
      return "report";
  }
  return "?";
}

CommandResult run_command(Command cmd, std::string_view input_text,
                          const CommandOptions& options) {
  CommandResult out;
  try {
    ActionInput input = parse_input(input_text);
    if (options.cap) {
      if (*options.cap == 0) throw MathError("group cap must be positive");
      input.group_cap = *options.cap;
    }
    const FiniteGroupAction g = close_group(input.variety(), input.generators, input.group_cap);

    Json doc = Json::object();
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = to_string(cmd);
    doc["input"] = input_json(input);
    doc["group"] = group_json(g);

    const bool all = cmd == Command::Report;
    std::optional<DecompositionResult> decomposition;
    if (all || cmd == Command::Classify || cmd == Command::Decompose)
      decomposition = decompose(g);
    if (all || cmd == Command::Classify)
      doc["classification"] =
          classification_json(classification_report(g, *decomposition, options.conductor));
    if (all || cmd == Command::Ramification)
      doc["ramification"] = ramification_json(ramification_data(g));
    if (all || cmd == Command::ReidTai) {
      const FieldPtr field = age_field(g, options.conductor);
      doc["reid_tai"] = reid_tai_json(g, reid_tai(g, field), field->conductor());
    }
    if (all || cmd == Command::Decompose) doc["decomposition"] = decomposition_json(*decomposition);

    out.document = options.format == Format::Json ? dump(doc) : to_markdown(doc);
  } catch (const InputError& e) {
    out.exit_code = 1;
    std::ostringstream os;
    os << "error[" << e.code() << "]";
    if (!e.field().empty()) os << " at " << e.field();
    if (e.line()) os << " (line " << *e.line() << ")";
    os << ": " << e.what() << "\n";
    out.diagnostics = os.str();
  } catch (const MathError& e) {
    out.exit_code = 1;
    out.diagnostics = std::string("error: ") + e.what() + "\n";
  } catch (const CertificateFailure& e) {
    out.exit_code = 2;
    out.diagnostics = std::string("certificate failure: ") + e.what() + "\n";
  }
  return out;
}

std::string reserialize_report(std::string_view json_text) {
  return dump(Json::parse(json_text.begin(), json_text.end()));
}

}  // namespace fqav
