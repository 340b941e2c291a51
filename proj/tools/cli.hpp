#pragma once

// polyconv command-line front end. Every command builds a JSON report; the
// text format is a rendering of that same report.
//
// Exit codes:
//   0 ok, 1 parse/usage error, 2 verification failed, 3 epsilon too large,
//   4 enumeration cap exceeded, 5 precondition violated.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "polyconv/serialization.hpp"

namespace polyconv::cli {

enum ExitCode : int {
  kOk = 0,
  kParseError = 1,
  kVerifyFailed = 2,
  kEpsilonTooLarge = 3,
  kCapExceeded = 4,
  kPrecondition = 5,
};

enum class Format { json, text };

struct RunConfig {
  std::string subcommand;
  std::optional<int> n;
  std::uint64_t seed = 1;
  std::optional<double> epsilon;
  std::optional<double> scale;  // C for multiplicative certificates
  std::string out;
  Format format = Format::json;
  int cap = kDefaultEnumerationCap;
  bool unsound_ok = false;
  std::string input;
  std::string function = "mobius";
};

inline constexpr double kDefaultChshEpsilon = 0.29;
inline constexpr int kExplicitMaxN = 64;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

int cmd_chsh(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_random(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_explicit(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_gowers(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_reduce(const RunConfig& config, std::ostream& out, std::ostream& err);

// Key/value and table rendering of a report; numbers use the JSON spelling.
std::string render_text(const Json& report);

}  // namespace polyconv::cli
