#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "polyconv/serialization.hpp"

using namespace polyconv;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "polyconv");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "polyconv_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("chsh default run writes a certificate") {
  const fs::path path = scratch("chsh.json");
  const Result r = run({"chsh", "--out", path.string()});
  CHECK(r.code == cli::kOk);
  const Json report = parse_json(r.out);
  CHECK(std::abs(report["objective"].get<double>() - (1.0 - 1.0 / std::sqrt(2.0))) <= 1e-12);
  CHECK(report["moments"].size() == 25);
  const Json cert = parse_json(slurp(path));
  CHECK(cert["queries"] == 1);
  CHECK(cert["epsilon"].get<double>() == 0.29);
  CHECK(run({"verify", path.string()}).code == cli::kOk);
}

TEST_CASE("chsh exit codes") {
  CHECK(run({"chsh", "--epsilon", "0.3"}).code == cli::kEpsilonTooLarge);
  CHECK(run({"chsh", "--cap", "26"}).code == cli::kCapExceeded);
  CHECK(run({"chsh", "--cap", "26", "--unsound-ok"}).code == cli::kOk);
  CHECK(run({"chsh", "--format", "xml"}).code == cli::kParseError);
  CHECK(run({}).code == cli::kParseError);
  CHECK(run({"--help"}).code == cli::kOk);
}

TEST_CASE("chsh text format renders the moment table") {
  const Result r = run({"chsh", "--format", "text"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("moments:") != std::string::npos);
  CHECK(r.out.find("(5,5)") != std::string::npos);
  std::size_t rows = 0;
  std::istringstream lines(r.out);
  for (std::string line; std::getline(lines, line);) {
    if (line.rfind("  (", 0) == 0) ++rows;
  }
  CHECK(rows == 25);
}

TEST_CASE("text output renders the JSON numbers verbatim") {
  const Result json = run({"random", "--n", "8", "--seed", "2"});
  const Result text = run({"random", "--n", "8", "--seed", "2", "--format", "text"});
  const Json report = parse_json(json.out);
  for (const char* key : {"delta", "counterexample_ratio", "linf", "l1"}) {
    const std::string line = std::string(key) + ": " + dump(report[key], -1) + "\n";
    CHECK(text.out.find(line) != std::string::npos);
  }
}

TEST_CASE("random reports Parseval and handles small and large n") {
  const Result r = run({"random", "--n", "10", "--seed", "1"});
  CHECK(r.code == cli::kOk);
  const Json report = parse_json(r.out);
  CHECK(report["l2_squared"].get<double>() == 120.0);
  CHECK(report.contains("quartic"));

  const Result small = run({"random", "--n", "3", "--seed", "7"});
  CHECK(small.code == cli::kOk);
  const Json q = parse_json(small.out)["quartic"];
  CHECK(q["objective"].get<double>() <= 1e-12);
  CHECK(q["certificate"]["issued"] == false);
  CHECK(q["certificate"]["reason"] == "bound not positive at this size");

  CHECK(run({"random", "--n", "25"}).code == cli::kCapExceeded);
  const Result sampled = run({"random", "--n", "25", "--unsound-ok"});
  CHECK(sampled.code == cli::kOk);
  CHECK(parse_json(sampled.out)["linf_exact"] == false);
  CHECK(run({"random", "--n", "2"}).code == cli::kPrecondition);
}

TEST_CASE("random with a scaled target issues a multiplicative certificate") {
  const fs::path path = scratch("random_scaled.json");
  // n = 5 AP-scale check happens elsewhere; here a large C makes the bound positive
  const Result r = run({"random", "--n", "6", "--seed", "1", "--scale", "50", "--out", path.string()});
  CHECK(r.code == cli::kOk);
  const Json q = parse_json(r.out)["quartic"];
  REQUIRE(q["positive"] == true);
  CHECK(q["certificate"]["kind"] == "multiplicative");
  CHECK(run({"verify", path.string()}).code == cli::kOk);
}

TEST_CASE("explicit command") {
  const Result r = run({"explicit", "--n", "5"});
  CHECK(r.code == cli::kOk);
  const Json report = parse_json(r.out);
  CHECK(report["l2_squared"].get<double>() == 15.0);
  CHECK(report["delta"].get<double>() <= 1.0 + 1e-12);
  CHECK(report["von_neumann"]["holds"] == true);
  CHECK(report["quartic"]["certificate"]["issued"] == true);

  CHECK(run({"explicit", "--n", "6"}).code == cli::kPrecondition);

  const Json big = parse_json(run({"explicit", "--n", "25"}).out);
  CHECK(big["squarefree_count"] == 16);
  CHECK(std::abs(big["squarefree_density"].get<double>() - 0.64) <= 1e-15);
  CHECK(big["asymptotic_density"].get<double>() == doctest::Approx(0.6079271018540267));
  CHECK(big["delta"].get<double>() <= 1.0 + 1e-12);
}

TEST_CASE("verify detects tampering and truncation") {
  const fs::path path = scratch("tamper.json");
  REQUIRE(run({"chsh", "--out", path.string()}).code == cli::kOk);
  Json cert = parse_json(slurp(path));
  cert["witness"]["matrices"][0][1][2][0] = 0.5;
  const fs::path edited = scratch("tamper_edited.json");
  std::ofstream(edited) << dump(cert);
  CHECK(run({"verify", edited.string()}).code == cli::kVerifyFailed);

  const std::string text = slurp(path);
  const fs::path cut = scratch("truncated.json");
  std::ofstream(cut) << text.substr(0, text.size() / 2);
  CHECK(run({"verify", cut.string()}).code == cli::kParseError);
  CHECK(run({"verify", scratch("missing.json").string()}).code == cli::kParseError);

  Json high = parse_json(text);
  high["epsilon"] = 0.5;
  const fs::path eps = scratch("epsilon.json");
  std::ofstream(eps) << dump(high);
  CHECK(run({"verify", eps.string()}).code == cli::kVerifyFailed);
}

TEST_CASE("gowers command") {
  const Json r = parse_json(run({"gowers", "--n", "7", "--function", "indicator"}).out);
  CHECK(std::abs(r["u3"].get<double>() - 1.0 / std::sqrt(7.0)) <= 1e-10);
  CHECK(run({"gowers", "--n", "600"}).code == cli::kCapExceeded);
  CHECK(run({"gowers", "--function", "nope"}).code == cli::kParseError);
}

TEST_CASE("reduce command") {
  const Result r = run({"reduce"});
  CHECK(r.code == cli::kOk);
  const Json report = parse_json(r.out);
  CHECK(report["zero"] == true);
  CHECK(report["max_pointwise_difference"].get<double>() == 0.0);

  const fs::path path = scratch("raw.json");
  std::ofstream(path) << R"({"n": 2, "terms": [{"alpha": [2, 1], "c": 3}]})";
  const Json reduced = parse_json(run({"reduce", path.string()}).out)["reduced"];
  CHECK(reduced["coeffs"][0]["S"] == Json::array({2}));
  CHECK(reduced["coeffs"][0]["c"].get<double>() == 3.0);
}

#ifdef POLYCONV_EXE
TEST_CASE("certificates verify in a fresh process") {
  const fs::path path = scratch("fresh.json");
  const std::string exe = POLYCONV_EXE;
  const std::string quiet = " > /dev/null 2>&1";
  REQUIRE(std::system((exe + " chsh --out " + path.string() + quiet).c_str()) == 0);
  CHECK(std::system((exe + " verify " + path.string() + quiet).c_str()) == 0);
}
#endif
