#include "quadanchor/report_io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "quadanchor/cpoly.hpp"
#include "quadanchor/errors.hpp"

namespace quadanchor {

namespace {

using nlohmann::json;

std::string trimmed(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

// "sign, digits" split; accepts a single leading + or -.
bool split_sign(const std::string& s, bool& neg, std::string& digits) {
  if (s.empty()) return false;
  size_t b = 0;
  neg = false;
  if (s[0] == '+' || s[0] == '-') {
    neg = (s[0] == '-');
    b = 1;
  }
  digits = s.substr(b);
  return true;
}

Rat integer_rat(const std::string& s) {
  bool neg = false;
  std::string digits;
  if (!split_sign(s, neg, digits) || !all_digits(digits))
    throw input_error("not an integer literal: \"" + s + "\"");
  mpz_class z(digits, 10);
  if (neg) z = -z;
  return Rat(z);
}

}  // namespace

Rat rat_from_text(const std::string& text) {
  const std::string s = trimmed(text);
  if (s.empty()) throw input_error("empty numeric literal");

  const size_t slash = s.find('/');
  if (slash != std::string::npos) {
    if (s.find('/', slash + 1) != std::string::npos || s.find('.') != std::string::npos)
      throw input_error("malformed fraction: \"" + s + "\"");
    const Rat num = integer_rat(s.substr(0, slash));
    const Rat den = integer_rat(s.substr(slash + 1));
    if (den == 0) throw input_error("zero denominator: \"" + s + "\"");
    Rat r = num / den;
    r.canonicalize();
    return r;
  }

  const size_t dot = s.find('.');
  if (dot != std::string::npos) {
    if (s.find('.', dot + 1) != std::string::npos)
      throw input_error("malformed decimal: \"" + s + "\"");
    bool neg = false;
    std::string body;
    if (!split_sign(s, neg, body))
      throw input_error("malformed decimal: \"" + s + "\"");
    const size_t bdot = body.find('.');
    const std::string ip = body.substr(0, bdot);
    const std::string fp = body.substr(bdot + 1);
    if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) ||
        (!fp.empty() && !all_digits(fp)))
      throw input_error("malformed decimal: \"" + s + "\"");
    mpz_class num(ip.empty() ? std::string("0") : ip, 10);
    mpz_class den(1);
    for (char c : fp) {
      num = num * 10 + (c - '0');
      den *= 10;
    }
    if (neg) num = -num;
    Rat r(num, den);
    r.canonicalize();
    return r;
  }

  return integer_rat(s);
}

std::string rat_to_text(const Rat& r) { return r.get_str(); }

const char* classification_name(Classification c) {
  switch (c) {
    case Classification::Finite: return "Finite";
    case Classification::PositiveDimensional: return "PositiveDimensional";
    case Classification::InvalidInput: return "InvalidInput";
  }
  return "InvalidInput";
}

Classification classification_from(const std::string& s) {
  if (s == "Finite") return Classification::Finite;
  if (s == "PositiveDimensional") return Classification::PositiveDimensional;
  if (s == "InvalidInput") return Classification::InvalidInput;
  throw input_error("unknown classification: \"" + s + "\"");
}

namespace {

Rat scalar_field(const json& v, const std::string& where) {
  if (v.is_number_integer())
    return Rat(static_cast<long>(v.get<long long>()));
  if (v.is_string()) {
    try {
      return rat_from_text(v.get<std::string>());
    } catch (const input_error& e) {
      throw input_error(where + ": " + e.what());
    }
  }
  if (v.is_number())
    throw input_error(where +
                      ": non-integer numeric literal; write it as a string "
                      "(\"1.1\" or \"11/10\") to keep it exact");
  throw input_error(where + ": expected an integer, a decimal string, or a "
                            "rational string \"p/q\"");
}

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : allowed)
      if (it.key() == k) { known = true; break; }
    if (!known) throw input_error(where + ": unknown field \"" + it.key() + "\"");
  }
}

}  // namespace

ConfigDocument parse_config_text(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw input_error(std::string("config parse error: ") + e.what());
  }
  if (!root.is_object()) throw input_error("config root must be an object");
  check_keys(root, "config", {"points", "k", "tolerances", "seed"});

  ConfigDocument doc;
  if (!root.contains("points") || !root["points"].is_object())
    throw input_error("config: missing \"points\" object");
  if (!root.contains("k") || !root["k"].is_object())
    throw input_error("config: missing \"k\" object");
  check_keys(root["points"], "points", {"A", "B", "C", "D"});
  check_keys(root["k"], "k", {"A", "B", "C", "D"});

  for (Label l : kLabels) {
    const std::string name = label_name(l);
    if (!root["points"].contains(name))
      throw input_error("points: missing label " + name);
    const json& pt = root["points"][name];
    if (!pt.is_array() || pt.size() != 2)
      throw input_error("points." + name + ": expected [x, y]");
    doc.config.anchor(l).x = scalar_field(pt[0], "points." + name + "[0]");
    doc.config.anchor(l).y = scalar_field(pt[1], "points." + name + "[1]");
    if (!root["k"].contains(name))
      throw input_error("k: missing label " + name);
    doc.config.constant(l) = scalar_field(root["k"][name], "k." + name);
  }

  if (root.contains("tolerances")) {
    const json& t = root["tolerances"];
    if (!t.is_object()) throw input_error("tolerances: expected an object");
    check_keys(t, "tolerances", {"tol_accept", "tol_real", "dedupe"});
    for (const char* key : {"tol_accept", "tol_real", "dedupe"}) {
      if (!t.contains(key)) continue;
      if (!t[key].is_number())
        throw input_error(std::string("tolerances.") + key + ": expected a number");
      const double v = t[key].get<double>();
      if (!(v > 0))
        throw input_error(std::string("tolerances.") + key + ": must be positive");
      if (key == std::string("tol_accept")) doc.tolerances.tol_accept = v;
      else if (key == std::string("tol_real")) doc.tolerances.tol_real = v;
      else doc.tolerances.dedupe = v;
    }
  }
  if (root.contains("seed")) {
    if (!root["seed"].is_number_integer() || root["seed"].get<long long>() < 0)
      throw input_error("seed: expected a non-negative integer");
    doc.tolerances.seed = static_cast<unsigned>(root["seed"].get<long long>());
  }
  return doc;
}

ConfigDocument load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open input file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

namespace {

// Serialization is written by hand so every double is emitted with 17
// significant digits (which also makes the JSON text a fixpoint under
// parse + re-serialize).
std::string jnum(double v) {
  if (v == 0.0) v = 0.0;  // fold the sign of zero; "-0" reparses as integer 0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string jstr(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
  return out;
}

void emit_cpoint(std::ostringstream& os, const CPoint2& p) {
  os << "[[" << jnum(p[0].real()) << ", " << jnum(p[0].imag()) << "], ["
     << jnum(p[1].real()) << ", " << jnum(p[1].imag()) << "]]";
}

CPoint2 read_cpoint(const json& v, const char* where) {
  if (!v.is_array() || v.size() != 2)
    throw input_error(std::string(where) + ": expected two [re, im] pairs");
  CPoint2 p;
  for (int i = 0; i < 2; ++i) {
    const json& c = v[i];
    if (!c.is_array() || c.size() != 2 || !c[0].is_number() || !c[1].is_number())
      throw input_error(std::string(where) + ": expected [re, im]");
    p[i] = Cx(c[0].get<double>(), c[1].get<double>());
  }
  return p;
}

}  // namespace

std::string report_to_json(const ReportDocument& doc) {
  std::ostringstream os;
  os << "{\n";
  os << "  \"version\": " << jstr(doc.version) << ",\n";
  os << "  \"classification\": "
     << jstr(classification_name(doc.report.classification)) << ",\n";

  const ValidationReport& va = doc.report.validation;
  os << "  \"validation\": {\n";
  os << "    \"condition_i\": " << (va.condition_i_ok ? "true" : "false") << ",\n";
  os << "    \"condition_ii\": " << (va.condition_ii_ok ? "true" : "false") << ",\n";
  os << "    \"violating_triples\": [";
  for (size_t i = 0; i < va.violating_triples.size(); ++i) {
    const auto& t = va.violating_triples[i];
    os << (i ? ", " : "") << "[" << jstr(label_name(t[0])) << ", "
       << jstr(label_name(t[1])) << ", " << jstr(label_name(t[2])) << "]";
  }
  os << "],\n";
  os << "    \"details\": " << jstr(va.details) << "\n  },\n";

  os << "  \"bezout_ceiling\": " << doc.report.bezout_ceiling << ",\n";

  os << "  \"solutions\": [";
  for (size_t i = 0; i < doc.report.solutions.size(); ++i) {
    const SolutionPair& s = doc.report.solutions[i];
    os << (i ? "," : "") << "\n    {\"X\": ";
    emit_cpoint(os, s.X);
    os << ", \"Y\": ";
    emit_cpoint(os, s.Y);
    os << ", \"residual\": " << jnum(s.residual)
       << ", \"is_real\": " << (s.is_real ? "true" : "false")
       << ", \"multiplicity\": " << s.multiplicity << "}";
  }
  os << (doc.report.solutions.empty() ? "]" : "\n  ]") << ",\n";

  if (doc.report.classification == Classification::PositiveDimensional) {
    const RatMPoly& w = doc.report.witness_curve;
    os << "  \"witness_curve\": {\"vars\": [";
    for (size_t i = 0; i < w.vars().size(); ++i)
      os << (i ? ", " : "") << jstr(w.vars()[i]);
    os << "], \"terms\": [";
    bool first = true;
    w.for_each_term([&](const std::vector<int>& exps, const Rat& c) {
      os << (first ? "" : ", ") << "{\"exps\": [";
      for (size_t i = 0; i < exps.size(); ++i) os << (i ? ", " : "") << exps[i];
      os << "], \"coeff\": " << jstr(rat_to_text(c)) << "}";
      first = false;
    });
    os << "]},\n";
  }

  os << "  \"diagnostics\": [";
  for (size_t i = 0; i < doc.report.diagnostics.size(); ++i)
    os << (i ? ", " : "") << jstr(doc.report.diagnostics[i]);
  os << "],\n";

  os << "  \"input\": {\"points\": {";
  for (Label l : kLabels) {
    const Point2& p = doc.input.anchor(l);
    os << (l == Label::A ? "" : ", ") << jstr(label_name(l)) << ": ["
       << jstr(rat_to_text(p.x)) << ", " << jstr(rat_to_text(p.y)) << "]";
  }
  os << "}, \"k\": {";
  for (Label l : kLabels) {
    os << (l == Label::A ? "" : ", ") << jstr(label_name(l)) << ": "
       << jstr(rat_to_text(doc.input.constant(l)));
  }
  os << "}},\n";

  os << "  \"timing_ms\": " << jnum(doc.timing_ms) << "\n";
  os << "}\n";
  return os.str();
}

ReportDocument report_from_json(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw input_error(std::string("report parse error: ") + e.what());
  }
  if (!root.is_object()) throw input_error("report root must be an object");

  ReportDocument doc;
  try {
    doc.version = root.at("version").get<std::string>();
    doc.report.classification =
        classification_from(root.at("classification").get<std::string>());

    const json& va = root.at("validation");
    doc.report.validation.condition_i_ok = va.at("condition_i").get<bool>();
    doc.report.validation.condition_ii_ok = va.at("condition_ii").get<bool>();
    for (const json& t : va.at("violating_triples")) {
      std::array<Label, 3> triple{};
      for (int i = 0; i < 3; ++i) {
        auto l = label_from(t.at(i).get<std::string>());
        if (!l) throw input_error("validation: unknown label in triple");
        triple[i] = *l;
      }
      doc.report.validation.violating_triples.push_back(triple);
    }
    doc.report.validation.details = va.at("details").get<std::string>();

    doc.report.bezout_ceiling = root.at("bezout_ceiling").get<int>();

    for (const json& s : root.at("solutions")) {
      SolutionPair sp;
      sp.X = read_cpoint(s.at("X"), "solutions.X");
      sp.Y = read_cpoint(s.at("Y"), "solutions.Y");
      sp.residual = s.at("residual").get<double>();
      sp.is_real = s.at("is_real").get<bool>();
      sp.multiplicity = s.at("multiplicity").get<int>();
      doc.report.solutions.push_back(sp);
    }

    if (root.contains("witness_curve")) {
      const json& w = root["witness_curve"];
      std::vector<std::string> names;
      for (const json& v : w.at("vars")) names.push_back(v.get<std::string>());
      RatMPoly poly = RatMPoly::with_vars(names);
      for (const json& t : w.at("terms")) {
        std::vector<int> exps;
        for (const json& e : t.at("exps")) exps.push_back(e.get<int>());
        poly.set_term(exps, rat_from_text(t.at("coeff").get<std::string>()));
      }
      doc.report.witness_curve = poly.normalized();
    }

    for (const json& d : root.at("diagnostics"))
      doc.report.diagnostics.push_back(d.get<std::string>());

    const json& in = root.at("input");
    for (Label l : kLabels) {
      const std::string name = label_name(l);
      const json& pt = in.at("points").at(name);
      doc.input.anchor(l).x = rat_from_text(pt.at(0).get<std::string>());
      doc.input.anchor(l).y = rat_from_text(pt.at(1).get<std::string>());
      doc.input.constant(l) = rat_from_text(in.at("k").at(name).get<std::string>());
    }

    doc.timing_ms = root.at("timing_ms").get<double>();
  } catch (const json::exception& e) {
    throw input_error(std::string("report field error: ") + e.what());
  }
  return doc;
}

std::string report_to_csv(const ReportDocument& doc) {
  std::ostringstream os;
  os << "x1,x2,y1,y2,residual,multiplicity\n";
  for (const SolutionPair& s : doc.report.solutions) {
    if (!s.is_real) continue;
    os << jnum(s.X[0].real()) << "," << jnum(s.X[1].real()) << ","
       << jnum(s.Y[0].real()) << "," << jnum(s.Y[1].real()) << ","
       << jnum(s.residual) << "," << s.multiplicity << "\n";
  }
  return os.str();
}

}  // namespace quadanchor
