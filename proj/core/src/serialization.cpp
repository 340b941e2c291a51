#include "polyconv/serialization.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>

namespace polyconv {

namespace {

std::string format_double(double x) {
  if (!std::isfinite(x)) throw FormatError("cannot serialize a non-finite number");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

bool is_scalar(const Json& j) { return !j.is_array() && !j.is_object(); }

void write(const Json& j, std::string& out, int indent, int depth) {
  const bool pretty = indent >= 0;
  auto newline = [&](int level) {
    if (!pretty) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent) * level, ' ');
  };
  switch (j.type()) {
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      const bool flat = std::all_of(j.begin(), j.end(), is_scalar);
      out += '[';
      bool first = true;
      for (const auto& item : j) {
        if (!first) out += flat && pretty ? ", " : ",";
        if (!flat) newline(depth + 1);
        write(item, out, indent, depth + 1);
        first = false;
      }
      if (!flat) newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ',';
        newline(depth + 1);
        out += Json(key).dump();
        out += pretty ? ": " : ":";
        write(value, out, indent, depth + 1);
        first = false;
      }
      newline(depth);
      out += '}';
      return;
    }
    default:
      out += j.dump();
      return;
  }
}

const Json& field(const Json& j, const char* name) {
  if (!j.is_object()) throw FormatError(std::string("expected an object holding '") + name + "'");
  const auto it = j.find(name);
  if (it == j.end()) throw FormatError(std::string("missing field '") + name + "'");
  return *it;
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) throw FormatError(std::string(what) + " must be a number");
  return j.get<double>();
}

int integer(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw FormatError(std::string(what) + " must be an integer");
  return j.get<int>();
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::string dump(const Json& j, int indent) {
  std::string out;
  write(j, out, indent, 0);
  return out;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(e.what());
  }
}

Json to_json(const MultilinearPoly& f) {
  Json coeffs = Json::array();
  for (const auto& [s, c] : f.coeffs()) {
    Json members = Json::array();
    for (int i : subset_members(s)) members.push_back(i + 1);
    coeffs.push_back(Json{{"S", std::move(members)}, {"c", c}});
  }
  return Json{{"n", f.n()}, {"coeffs", std::move(coeffs)}};
}

MultilinearPoly poly_from_json(const Json& j) {
  const int n = integer(field(j, "n"), "n");
  const Json& coeffs = field(j, "coeffs");
  if (!coeffs.is_array()) throw FormatError("coeffs must be an array");
  std::vector<std::pair<Subset, double>> terms;
  for (const auto& term : coeffs) {
    const Json& members = field(term, "S");
    if (!members.is_array()) throw FormatError("S must be an array");
    Subset s = 0;
    for (const auto& m : members) {
      const int i = integer(m, "S entry");
      if (i < 1 || i > n) throw FormatError("S entry " + std::to_string(i) + " outside [1, n]");
      if (s & bit(i - 1)) throw FormatError("S entry " + std::to_string(i) + " repeated");
      s |= bit(i - 1);
    }
    terms.emplace_back(s, number(field(term, "c"), "c"));
  }
  try {
    return MultilinearPoly::from_terms(n, terms);
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

Json to_json(const RawPoly& g) {
  Json terms = Json::array();
  for (const auto& term : g.terms()) {
    terms.push_back(Json{{"alpha", term.exponents}, {"c", term.coeff}});
  }
  return Json{{"n", g.n()}, {"terms", std::move(terms)}};
}

RawPoly raw_poly_from_json(const Json& j) {
  const int n = integer(field(j, "n"), "n");
  const Json& terms = field(j, "terms");
  if (!terms.is_array()) throw FormatError("terms must be an array");
  std::vector<RawTerm> out;
  for (const auto& term : terms) {
    const Json& alpha = field(term, "alpha");
    if (!alpha.is_array()) throw FormatError("alpha must be an array");
    RawTerm t;
    for (const auto& e : alpha) {
      if (!e.is_number_unsigned() && !(e.is_number_integer() && e.get<long long>() >= 0)) {
        throw FormatError("exponents must be nonnegative integers");
      }
      t.exponents.push_back(e.get<unsigned>());
    }
    t.coeff = number(field(term, "c"), "c");
    out.push_back(std::move(t));
  }
  try {
    return RawPoly(n, std::move(out));
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

Json to_json(const ZnFunction& g) { return Json{{"n", g.modulus}, {"values", g.values}}; }

ZnFunction zn_function_from_json(const Json& j) {
  const int n = integer(field(j, "n"), "n");
  const Json& values = field(j, "values");
  if (!values.is_array() || static_cast<int>(values.size()) != n) {
    throw FormatError("values must be an array of length n");
  }
  std::vector<double> v;
  for (const auto& x : values) v.push_back(number(x, "value"));
  return ZnFunction(std::move(v));
}

Json matrix_to_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const Json& j) {
  if (!j.is_array()) throw FormatError("matrix must be an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(j.front().size());
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = j[r];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw FormatError("matrix rows must be arrays of equal length");
    }
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = number(row[c], "matrix entry");
  }
  return m;
}

Json vector_to_json(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Eigen::VectorXd vector_from_json(const Json& j) {
  if (!j.is_array()) throw FormatError("vector must be an array");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = number(j[i], "vector entry");
  return v;
}

Json to_json(const CommutingTuple& t) {
  Json matrices = Json::array();
  for (const auto& a : t.matrices) matrices.push_back(matrix_to_json(a));
  Json out{{"d", t.d},
           {"alphabet", t.alphabet_size()},
           {"matrices", std::move(matrices)},
           {"u", vector_to_json(t.u)},
           {"v", vector_to_json(t.v)}};
  if (!t.grading.empty()) out["grading"] = t.grading;
  return out;
}

CommutingTuple tuple_from_json(const Json& j) {
  CommutingTuple t;
  t.d = integer(field(j, "d"), "d");
  const int alphabet = integer(field(j, "alphabet"), "alphabet");
  const Json& matrices = field(j, "matrices");
  if (!matrices.is_array() || static_cast<int>(matrices.size()) != alphabet) {
    throw FormatError("tuple needs one matrix per alphabet symbol");
  }
  for (const auto& m : matrices) {
    t.matrices.push_back(matrix_from_json(m));
    if (t.matrices.back().rows() != t.d || t.matrices.back().cols() != t.d) {
      throw FormatError("tuple matrix is not d x d");
    }
  }
  t.u = vector_from_json(field(j, "u"));
  t.v = vector_from_json(field(j, "v"));
  if (t.u.size() != t.d || t.v.size() != t.d) throw FormatError("tuple vectors are not of length d");
  if (const auto it = j.find("grading"); it != j.end()) {
    t.grading = it->get<std::vector<int>>();
  }
  return t;
}

Json witness_to_json(const SDPWitness& wit) {
  Json positions = Json::array();
  for (const auto& position : wit.family) {
    Json mats = Json::array();
    for (const auto& a : position) mats.push_back(matrix_to_json(a));
    positions.push_back(std::move(mats));
  }
  return Json{{"phi", to_json(wit.phi)},
              {"w", wit.w},
              {"d", wit.d},
              {"alphabet", wit.alphabet_size()},
              {"matrices", std::move(positions)},
              {"u", vector_to_json(wit.u)},
              {"v", vector_to_json(wit.v)}};
}

SDPWitness witness_from_json(const Json& j, const MultilinearPoly& target) {
  SDPWitness wit;
  wit.target = target;
  wit.phi = poly_from_json(field(j, "phi"));
  wit.w = number(field(j, "w"), "w");
  wit.d = integer(field(j, "d"), "d");
  const int alphabet = integer(field(j, "alphabet"), "alphabet");
  if (alphabet != wit.alphabet_size()) {
    throw FormatError("witness alphabet " + std::to_string(alphabet) + " does not equal phi.n + 1");
  }
  const Json& positions = field(j, "matrices");
  if (!positions.is_array() || positions.empty()) {
    throw FormatError("witness matrices must be a non-empty array of positions");
  }
  wit.t = static_cast<int>(positions.size());
  for (const auto& position : positions) {
    if (!position.is_array() || static_cast<int>(position.size()) != alphabet) {
      throw FormatError("each witness position needs one matrix per alphabet symbol");
    }
    std::vector<Eigen::MatrixXd> mats;
    for (const auto& m : position) {
      mats.push_back(matrix_from_json(m));
      if (mats.back().rows() != wit.d || mats.back().cols() != wit.d) {
        throw FormatError("witness matrix is not d x d");
      }
    }
    wit.family.push_back(std::move(mats));
  }
  wit.u = vector_from_json(field(j, "u"));
  wit.v = vector_from_json(field(j, "v"));
  if (wit.u.size() != wit.d || wit.v.size() != wit.d) {
    throw FormatError("witness vectors are not of length d");
  }
  if (wit.target.n() != wit.phi.n()) throw FormatError("target and phi variable counts differ");
  return wit;
}

Json to_json(const Certificate& cert) {
  Json provenance{{"seed", cert.provenance.seed ? Json(*cert.provenance.seed) : Json(nullptr)},
                  {"code-version", cert.provenance.code_version},
                  {"timestamp", cert.provenance.timestamp},
                  {"witness_hash", cert.provenance.witness_hash}};
  return Json{{"kind", to_string(cert.kind)},
              {"target", to_json(cert.target)},
              {"C", cert.c},
              {"epsilon", cert.epsilon},
              {"value", cert.value},
              {"queries", cert.queries},
              {"witness", witness_to_json(cert.witness)},
              {"provenance", std::move(provenance)}};
}

Certificate certificate_from_json(const Json& j) {
  Certificate cert;
  const Json& kind = field(j, "kind");
  if (!kind.is_string()) throw FormatError("kind must be a string");
  cert.kind = certificate_kind_from_string(kind.get<std::string>());
  cert.target = poly_from_json(field(j, "target"));
  cert.c = number(field(j, "C"), "C");
  cert.epsilon = number(field(j, "epsilon"), "epsilon");
  cert.value = number(field(j, "value"), "value");
  cert.queries = integer(field(j, "queries"), "queries");
  cert.witness = witness_from_json(field(j, "witness"), cert.target);
  const Json& provenance = field(j, "provenance");
  const Json& seed = field(provenance, "seed");
  if (!seed.is_null()) {
    if (!seed.is_number_unsigned() && !seed.is_number_integer()) {
      throw FormatError("seed must be an integer or null");
    }
    cert.provenance.seed = seed.get<std::uint64_t>();
  }
  auto text = [&](const char* name) {
    const Json& x = field(provenance, name);
    if (!x.is_string()) throw FormatError(std::string(name) + " must be a string");
    return x.get<std::string>();
  };
  cert.provenance.code_version = text("code-version");
  cert.provenance.timestamp = text("timestamp");
  cert.provenance.witness_hash = text("witness_hash");
  return cert;
}

std::string witness_hash(const SDPWitness& wit) {
  const Json payload{{"target", to_json(wit.target)}, {"witness", witness_to_json(wit)}};
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, fnv1a(dump(payload, -1)));
  return buf;
}

}  // namespace polyconv
