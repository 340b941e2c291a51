#pragma once

// JSON forms of every exchanged object. Subsets are written 1-based
// ({"S": [1, 3, 4]}); doubles are written with 17 significant digits and
// object fields keep a fixed order.
//
//   MultilinearPoly  {"n": int, "coeffs": [{"S": [ints], "c": float}]}
//   RawPoly          {"n": int, "terms": [{"alpha": [ints], "c": float}]}
//   ZnFunction       {"n": int, "values": [floats]}
//   CommutingTuple   {"d", "alphabet", "matrices", "u", "v"[, "grading"]}
//   Certificate      {"kind", "target", "C", "epsilon", "value", "queries",
//                     "witness": {"phi", "w", "d", "alphabet", "matrices", "u", "v"},
//                     "provenance": {"seed", "code-version", "timestamp", "witness_hash"}}
//
// Matrices are arrays of rows. Witness matrices are nested per position.

#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <json.hpp>

#include "polyconv/boolean_poly.hpp"
#include "polyconv/constructions.hpp"
#include "polyconv/sdp_witness.hpp"
#include "polyconv/varopoulos.hpp"

namespace polyconv {

using Json = nlohmann::ordered_json;

// Malformed or schema-violating input.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Serializes with %.17g doubles; indent < 0 gives the compact form. Arrays
// of scalars stay on one line.
std::string dump(const Json& j, int indent = 2);

// Parses text, rethrowing nlohmann errors as FormatError.
Json parse_json(const std::string& text);

Json to_json(const MultilinearPoly& f);
MultilinearPoly poly_from_json(const Json& j);

Json to_json(const RawPoly& g);
RawPoly raw_poly_from_json(const Json& j);

Json to_json(const ZnFunction& g);
ZnFunction zn_function_from_json(const Json& j);

Json matrix_to_json(const Eigen::MatrixXd& m);
Eigen::MatrixXd matrix_from_json(const Json& j);
Json vector_to_json(const Eigen::VectorXd& v);
Eigen::VectorXd vector_from_json(const Json& j);

Json to_json(const CommutingTuple& t);
CommutingTuple tuple_from_json(const Json& j);

// The "witness" object of a certificate (the target lives outside it).
Json witness_to_json(const SDPWitness& wit);
SDPWitness witness_from_json(const Json& j, const MultilinearPoly& target);

Json to_json(const Certificate& cert);
Certificate certificate_from_json(const Json& j);

// FNV-1a 64 over the compact dump of {target, witness}, as 16 hex digits.
std::string witness_hash(const SDPWitness& wit);

}  // namespace polyconv
