#include <doctest.h>

#include <cmath>

#include "polyconv/constructions.hpp"
#include "polyconv/serialization.hpp"

using namespace polyconv;

TEST_CASE("polynomial JSON is 1-based and round-trips") {
  const MultilinearPoly f(4, {{0b0101, 0.5}, {0b1110, -2.0}});
  const Json j = to_json(f);
  CHECK(j["n"] == 4);
  CHECK(j["coeffs"][0]["S"] == Json::array({1, 3}));
  CHECK(poly_from_json(j) == f);
  CHECK(poly_from_json(parse_json(dump(j))) == f);
}

TEST_CASE("polynomial JSON rejects bad subsets") {
  CHECK_THROWS_AS(poly_from_json(parse_json(R"({"n": 2, "coeffs": [{"S": [3], "c": 1}]})")),
                  FormatError);
  CHECK_THROWS_AS(poly_from_json(parse_json(R"({"n": 2, "coeffs": [{"S": [1, 1], "c": 1}]})")),
                  FormatError);
  CHECK_THROWS_AS(poly_from_json(parse_json(R"({"n": 2})")), FormatError);
}

TEST_CASE("RawPoly and ZnFunction round-trip") {
  const RawPoly g(2, {{{2, 2}, 1.0}, {{0, 1}, -3.0}});
  const RawPoly back = raw_poly_from_json(parse_json(dump(to_json(g))));
  CHECK(back.n() == 2);
  CHECK(back.terms().size() == 2);
  const std::array<unsigned, 2> alpha{0, 1};
  CHECK(back.coefficient(alpha) == -3.0);
  CHECK_THROWS_AS(raw_poly_from_json(parse_json(R"({"n": 1, "terms": [{"alpha": [-1], "c": 1}]})")),
                  FormatError);

  const ZnFunction mu = mobius(11);
  CHECK(zn_function_from_json(parse_json(dump(to_json(mu)))) == mu);
  CHECK_THROWS_AS(zn_function_from_json(parse_json(R"({"n": 3, "values": [1, 2]})")), FormatError);
}

TEST_CASE("doubles keep 17 significant digits") {
  const double x = 1.0 / 3.0;
  const std::string text = dump(Json{{"x", x}}, -1);
  CHECK(text == R"({"x":0.33333333333333331})");
  CHECK(parse_json(text)["x"].get<double>() == x);
  CHECK_THROWS_AS(dump(Json{{"x", std::nan("")}}), FormatError);
}

TEST_CASE("scalar arrays stay on one line") {
  const std::string text = dump(Json{{"v", Json::array({1, 2, 3})}});
  CHECK(text.find("[1, 2, 3]") != std::string::npos);
}

TEST_CASE("tuple JSON round-trip keeps grading") {
  const CommutingTuple t = build_chsh();
  const Json j = to_json(t);
  CHECK(j["alphabet"] == 5);
  const CommutingTuple back = tuple_from_json(parse_json(dump(j)));
  CHECK(back.d == t.d);
  CHECK(back.grading == t.grading);
  for (int i = 0; i < 5; ++i) CHECK(back.matrices[i] == t.matrices[i]);
  CHECK(back.u == t.u);
  CHECK(back.v == t.v);
}

TEST_CASE("certificate round-trip is bit-exact") {
  const Certificate cert = certify(build_chsh_witness(), 0.29);
  const Json j = to_json(cert);
  const std::vector<std::string> keys{"kind", "target", "C", "epsilon", "value", "queries",
                                      "witness", "provenance"};
  std::vector<std::string> got;
  for (const auto& [k, v] : j.items()) got.push_back(k);
  CHECK(got == keys);
  const Certificate back = certificate_from_json(parse_json(dump(j)));
  CHECK(back.value == cert.value);
  CHECK(back.epsilon == cert.epsilon);
  CHECK(back.witness.w == cert.witness.w);
  CHECK(witness_hash(back.witness) == cert.provenance.witness_hash);
  CHECK(back.provenance.timestamp == cert.provenance.timestamp);
  CHECK(dump(to_json(back)) == dump(j));
}

TEST_CASE("witness hash is sensitive to the witness") {
  const SDPWitness a = build_chsh_witness();
  SDPWitness b = a;
  CHECK(witness_hash(a) == witness_hash(b));
  b.family[1][0](1, 0) += 1e-15;
  CHECK(witness_hash(a) != witness_hash(b));
}

TEST_CASE("parse errors surface as FormatError") {
  CHECK_THROWS_AS(parse_json("{\"kind\": "), FormatError);
  CHECK_THROWS_AS(certificate_from_json(parse_json("{}")), FormatError);
}
