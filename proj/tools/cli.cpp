#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>

#include <CLI11.hpp>

#include "polyconv/boolean_poly.hpp"
#include "polyconv/constructions.hpp"
#include "polyconv/errors.hpp"
#include "polyconv/sdp_witness.hpp"
#include "polyconv/slices.hpp"
#include "polyconv/varopoulos.hpp"

namespace polyconv::cli {

namespace {

constexpr int kMaxCap = 30;

EnumerationOptions enumeration(const RunConfig& config) {
  EnumerationOptions options;
  options.cap = config.cap;
  options.allow_sampling = config.unsound_ok;
  options.seed = config.seed;
  return options;
}

void check_cap(const RunConfig& config) {
  if (config.cap < 1 || config.cap > kMaxCap) {
    throw PreconditionError("--cap must lie in [1, " + std::to_string(kMaxCap) + "]");
  }
  if (config.cap > kDefaultEnumerationCap && !config.unsound_ok) {
    throw CapExceededError("--cap above the default " + std::to_string(kDefaultEnumerationCap) +
                           " requires --unsound-ok");
  }
}

void emit(const Json& report, const RunConfig& config, std::ostream& out) {
  if (config.format == Format::text) {
    out << render_text(report);
  } else {
    out << dump(report) << '\n';
  }
}

std::string sequence_label(std::span<const int> seq) {
  std::string s = "(";
  for (std::size_t k = 0; k < seq.size(); ++k) {
    if (k) s += ',';
    s += std::to_string(seq[k] + 1);
  }
  return s + ")";
}

Json membership_json(const MembershipReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    checks.push_back(Json{{"name", c.name},
                          {"observed", c.observed},
                          {"violation", std::isfinite(c.violation) ? Json(c.violation) : Json(nullptr)},
                          {"passed", c.passed}});
  }
  return Json{{"passed", r.passed()},
              {"sequences_checked", r.sequences_checked},
              {"max_violation", r.max_moment_violation},
              {"first_failure", r.first_failure ? Json(sequence_label(*r.first_failure)) : Json(nullptr)},
              {"checks", std::move(checks)}};
}

std::string statement(const Certificate& cert) {
  std::ostringstream s;
  s.precision(17);
  s << "no " << cert.queries << "-query algorithm A satisfies |E[A(x)] - ";
  if (cert.kind == CertificateKind::multiplicative) s << cert.c << "*";
  s << "g(x)| <= " << cert.epsilon << " for every x";
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream file(path);
  if (!file) throw FormatError("cannot open " + path + " for writing");
  file << text << '\n';
  if (!file) throw FormatError("failed writing " + path);
}

// Issues the certificate, writes it to --out when given, and returns the
// report section describing it.
Json issue_certificate(const SDPWitness& wit, double epsilon, const CertifyOptions& options,
                       const RunConfig& config) {
  const Certificate cert = certify(wit, epsilon, options);
  const Json document = to_json(cert);
  Json section{{"issued", true},
               {"kind", to_string(cert.kind)},
               {"C", cert.c},
               {"epsilon", cert.epsilon},
               {"value", cert.value},
               {"queries", cert.queries},
               {"statement", statement(cert)},
               {"witness_hash", cert.provenance.witness_hash}};
  if (!config.out.empty()) {
    write_file(config.out, dump(document));
    section["path"] = config.out;
  } else if (config.format == Format::json) {
    section["document"] = document;
  } else {
    section["path"] = "(not saved; pass --out to write the certificate)";
  }
  return section;
}

Json not_issued(const std::string& reason) { return Json{{"issued", false}, {"reason", reason}}; }

CertifyOptions certify_options(const RunConfig& config) {
  CertifyOptions options;
  options.enumeration = enumeration(config);
  options.seed = config.seed;
  if (config.scale) {
    options.kind = CertificateKind::multiplicative;
    options.c = *config.scale;
  }
  return options;
}

// The quartic witness section shared by `random` and `explicit`; sets the
// exit code when a requested certificate cannot be issued.
Json quartic_section(const MultilinearPoly& f, const RunConfig& config, int& exit_code) {
  const EnumerationOptions options = enumeration(config);
  const QuarticBound q = quartic_lower_bound(f, options);
  SDPWitness wit = q.witness;
  double value = q.objective;
  if (config.scale) {
    if (!(*config.scale > 0.0)) throw PreconditionError("--scale must be positive");
    wit = with_scaled_target(wit, *config.scale);
    value = objective(wit, options);
  }
  const MembershipReport membership = verify_membership(wit, options);
  Json section{{"objective", value},
               {"closed_form", q.closed_form},
               {"w", wit.w},
               {"l1", q.l1},
               {"linf", q.linf},
               {"positive", value > kWitnessTolerance},
               {"positivity_threshold_C", positivity_threshold(q.witness, options)},
               {"dimension", wit.d},
               {"membership", membership_json(membership)}};
  if (!membership.passed()) {
    section["certificate"] = not_issued("witness failed verification");
    exit_code = kVerifyFailed;
    return section;
  }
  // values within the verification tolerance of zero are not evidence
  if (!(value > kWitnessTolerance)) {
    section["certificate"] = not_issued("bound not positive at this size");
    if (config.epsilon) exit_code = kEpsilonTooLarge;
    return section;
  }
  const double epsilon = config.epsilon.value_or(value / 2.0);
  if (!(value > epsilon)) {
    section["certificate"] = not_issued("epsilon is not below the objective");
    exit_code = kEpsilonTooLarge;
    return section;
  }
  section["certificate"] = issue_certificate(wit, epsilon, certify_options(config), config);
  return section;
}

double binomial3(int n) { return n * (n - 1.0) * (n - 2.0) / 6.0; }

std::string read_input(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::ifstream file(path);
  if (!file) throw FormatError("cannot read " + path);
  return std::string(std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>());
}

std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "-";
  return dump(j, -1);
}

bool is_scalar(const Json& j) { return !j.is_array() && !j.is_object(); }

void render_table(const Json& rows, std::string& out, int depth) {
  std::vector<std::string> columns;
  for (const auto& row : rows) {
    for (const auto& [key, value] : row.items()) {
      if (std::find(columns.begin(), columns.end(), key) == columns.end()) columns.push_back(key);
    }
  }
  std::vector<std::vector<std::string>> cells;
  std::vector<std::size_t> width(columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) width[c] = columns[c].size();
  for (const auto& row : rows) {
    std::vector<std::string> line;
    for (std::size_t c = 0; c < columns.size(); ++c) {
      const auto it = row.find(columns[c]);
      line.push_back(it == row.end() ? "" : scalar_text(*it));
      width[c] = std::max(width[c], line.back().size());
    }
    cells.push_back(std::move(line));
  }
  const std::string pad(2 * depth, ' ');
  auto print = [&](const std::vector<std::string>& line) {
    out += pad;
    for (std::size_t c = 0; c < line.size(); ++c) {
      out += line[c];
      if (c + 1 < line.size()) out += std::string(width[c] - line[c].size() + 2, ' ');
    }
    out += '\n';
  };
  print(columns);
  for (const auto& line : cells) print(line);
}

void render(const Json& j, std::string& out, int depth) {
  const std::string pad(2 * depth, ' ');
  for (const auto& [key, value] : j.items()) {
    if (is_scalar(value)) {
      out += pad + key + ": " + scalar_text(value) + '\n';
    } else if (value.is_object()) {
      out += pad + key + ":\n";
      render(value, out, depth + 1);
    } else if (value.empty() || std::all_of(value.begin(), value.end(), is_scalar)) {
      out += pad + key + ": " + dump(value) + '\n';
    } else if (std::all_of(value.begin(), value.end(), [](const Json& x) { return x.is_object(); })) {
      out += pad + key + ":\n";
      render_table(value, out, depth + 1);
    } else {
      out += pad + key + ": " + dump(value, -1) + '\n';
    }
  }
}

}  // namespace

std::string render_text(const Json& report) {
  std::string out;
  render(report, out, 0);
  return out;
}

int cmd_chsh(const RunConfig& config, std::ostream& out, std::ostream&) {
  check_cap(config);
  const EnumerationOptions options = enumeration(config);
  const SDPWitness wit = build_chsh_witness();
  const MembershipReport membership = verify_membership(wit, options);
  const double value = objective(wit, options);

  Json moments = Json::array();
  const int m = wit.alphabet_size();
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const std::array<int, 2> seq{i, j};
      const double expected = hat_seq(wit.phi, seq) / wit.w;
      const double moment =
          wit.u.dot(wit.family[0][i] * (wit.family[1][j] * wit.v));
      moments.push_back(Json{{"i", sequence_label(seq)},
                             {"phi_hat_over_w", expected},
                             {"moment", moment},
                             {"abs_error", std::abs(moment - expected)}});
    }
  }

  Json report{{"command", "chsh"},
              {"target", to_json(wit.target)},
              {"t", wit.t},
              {"w", wit.w},
              {"objective", value},
              {"objective_expected", 1.0 - 1.0 / std::numbers::sqrt2},
              {"membership", membership_json(membership)},
              {"moments", std::move(moments)}};
  int code = kOk;
  const double epsilon = config.epsilon.value_or(kDefaultChshEpsilon);
  if (!membership.passed()) {
    report["certificate"] = not_issued("witness failed verification");
    code = kVerifyFailed;
  } else if (!(value > epsilon)) {
    report["certificate"] = not_issued("epsilon is not below the objective");
    code = kEpsilonTooLarge;
  } else {
    CertifyOptions copts;
    copts.enumeration = options;
    report["certificate"] = issue_certificate(wit, epsilon, copts, config);
  }
  emit(report, config, out);
  return code;
}

int cmd_random(const RunConfig& config, std::ostream& out, std::ostream&) {
  check_cap(config);
  const int n = config.n.value_or(10);
  if (n < 3 || n > kMaxVariables) throw PreconditionError("random needs 3 <= n <= 64");
  const bool exact = n + 1 <= config.cap;
  if (!exact && !config.unsound_ok) {
    throw CapExceededError("n = " + std::to_string(n) + " needs exact enumeration of 2^" +
                           std::to_string(n + 1) + " points, above the cap 2^" +
                           std::to_string(config.cap) + "; pass --unsound-ok for sampled bounds");
  }
  const MultilinearPoly f = random_cubic(n, config.seed);
  const double d = delta(f);
  Json report{{"command", "random"},
              {"n", n},
              {"seed", config.seed},
              {"terms", f.num_terms()},
              {"l2_squared", f.coefficient_square_sum()},
              {"l2_squared_expected", binomial3(n)},
              {"delta", d},
              {"counterexample_ratio", counterexample_ratio(f)}};
  int code = kOk;
  if (exact) {
    const CubeStatistics stats = cube_statistics(f, enumeration(config));
    report["l2_squared_enumerated"] = stats.l2_squared;
    report["l1"] = stats.l1;
    report["linf"] = stats.linf;
    report["linf_exact"] = true;
    report["slice_ratio"] = stats.l2_squared / (d * stats.linf);
    report["quartic"] = quartic_section(f, config, code);
  } else {
    const NormValue sup = p_norm(f, kInfinity, enumeration(config));
    report["linf"] = sup.value;
    report["linf_exact"] = false;
    report["note"] = "sup norm is a sampled lower bound only; no quartic witness or certificate";
  }
  emit(report, config, out);
  return code;
}

int cmd_explicit(const RunConfig& config, std::ostream& out, std::ostream&) {
  check_cap(config);
  const int n = config.n.value_or(5);
  if (n < 2) throw PreconditionError("explicit needs n >= 2");
  if (std::gcd(n, 6) != 1) {
    throw PreconditionError("n = " + std::to_string(n) +
                            " is not coprime to 6, which the von Neumann bound requires");
  }
  if (n > kExplicitMaxN) {
    throw CapExceededError("explicit computes dense slices for n <= " +
                           std::to_string(kExplicitMaxN));
  }
  const ZnFunction f0 = mobius(n);
  const std::int64_t squarefree = squarefree_count(n);
  double f0_square_sum = 0.0;
  for (double x : f0.values) f0_square_sum += x * x;
  const double asymptotic = 6.0 / (std::numbers::pi * std::numbers::pi);
  const double density = static_cast<double>(squarefree) / n;

  const bool representable = 3 * n <= kMaxVariables;
  const double d = representable ? delta(ap_form(n, f0).poly) : ap_form_delta(f0);
  const double l2 = ap_form_l2_squared(f0);
  const double u3 = gowers_u3(f0);

  Json report{{"command", "explicit"},
              {"n", n},
              {"variables", 3 * n},
              {"f0", to_json(f0)},
              {"squarefree_count", squarefree},
              {"squarefree_density", density},
              {"asymptotic_density", asymptotic},
              {"density_gap", density - asymptotic},
              {"density_note", "finite-n sieve count; the gap to 6/pi^2 shrinks like 1/sqrt(n)"},
              {"f0_square_sum", f0_square_sum},
              {"u3", u3},
              {"l2_squared", l2},
              {"delta", d},
              {"counterexample_ratio", d > 0.0 ? Json(l2 / d) : Json(nullptr)}};

  const EnumerationOptions options = enumeration(config);
  if (3 * n <= config.cap || (representable && config.unsound_ok)) {
    const VonNeumannReport vn = check_von_neumann(n, f0, options);
    report["von_neumann"] = Json{{"sup_norm", vn.sup_norm},
                                 {"sup_norm_exact", vn.sup_norm_exact},
                                 {"bound", vn.bound},
                                 {"ratio", vn.ratio},
                                 {"holds", vn.holds},
                                 {"one_sided", !vn.sup_norm_exact}};
  } else {
    report["von_neumann"] = not_issued("3n = " + std::to_string(3 * n) +
                                       " variables exceed the exact enumeration cap");
    report["von_neumann"].erase("issued");
  }

  int code = kOk;
  if (representable && 3 * n + 1 <= config.cap && d > 0.0) {
    report["quartic"] = quartic_section(ap_form(n, f0).poly, config, code);
  }
  emit(report, config, out);
  return code;
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.input.empty()) throw FormatError("verify needs a certificate path");
  Certificate cert;
  try {
    cert = certificate_from_json(parse_json(read_input(config.input)));
  } catch (const FormatError&) {
    throw;
  } catch (const std::exception& e) {
    throw FormatError(e.what());
  }
  EnumerationOptions options = enumeration(config);
  const std::string hash = witness_hash(cert.witness);
  const MembershipReport membership = verify_membership(cert.witness, options);
  const double recomputed = objective(cert.witness, options);
  const double difference = std::abs(recomputed - cert.value);
  const bool reproduces = difference <= kWitnessTolerance * std::max(1.0, std::abs(cert.value));
  const bool hash_ok = hash == cert.provenance.witness_hash;
  const bool queries_ok = cert.queries == cert.witness.t / 2;
  const bool beats_epsilon = cert.value > cert.epsilon && cert.epsilon >= 0.0;
  const bool passed = hash_ok && queries_ok && membership.passed() && reproduces && beats_epsilon;

  Json report{{"command", "verify"},
              {"path", config.input},
              {"kind", to_string(cert.kind)},
              {"queries", cert.queries},
              {"epsilon", cert.epsilon},
              {"stored_value", cert.value},
              {"recomputed_value", recomputed},
              {"difference", difference},
              {"bit_identical", recomputed == cert.value},
              {"hash_ok", hash_ok},
              {"queries_ok", queries_ok},
              {"value_exceeds_epsilon", beats_epsilon},
              {"membership", membership_json(membership)},
              {"passed", passed}};
  emit(report, config, out);
  if (!passed) {
    err << "certificate did not verify\n";
    return kVerifyFailed;
  }
  return kOk;
}

int cmd_gowers(const RunConfig& config, std::ostream& out, std::ostream&) {
  ZnFunction g;
  std::string name = config.function;
  if (!config.input.empty()) {
    g = zn_function_from_json(parse_json(read_input(config.input)));
    name = "file";
  } else {
    const int n = config.n.value_or(5);
    if (n < 1) throw PreconditionError("gowers needs n >= 1");
    if (n > kGowersCap) throw CapExceededError("gowers is exact only for n <= 512");
    if (config.function == "mobius") {
      g = mobius(n);
    } else if (config.function == "indicator") {
      g = indicator_of_zero(n);
    } else if (config.function == "ones") {
      g = constant_function(n, 1.0);
    } else {
      throw PreconditionError("unknown function '" + config.function + "'");
    }
  }
  Json report{{"command", "gowers"},
              {"n", g.modulus},
              {"function", name},
              {"u3", gowers_u3(g)},
              {"bounded", g.is_bounded()}};
  emit(report, config, out);
  return kOk;
}

int cmd_reduce(const RunConfig& config, std::ostream& out, std::ostream&) {
  RawPoly g;
  bool builtin = config.input.empty();
  if (builtin) {
    // x1^2 x2^2 - x1^2 - x2^2 + 1, which vanishes on the cube.
    g = RawPoly(2, {{{2, 2}, 1.0}, {{0, 0}, 1.0}, {{2, 0}, -1.0}, {{0, 2}, -1.0}});
  } else {
    g = raw_poly_from_json(parse_json(read_input(config.input)));
  }
  const MultilinearPoly reduced = multilinear_reduce(g);
  Json report{{"command", "reduce"},
              {"input", builtin ? Json("built-in: x1^2 x2^2 - x1^2 - x2^2 + 1") : Json(config.input)},
              {"raw", to_json(g)},
              {"reduced", to_json(reduced)},
              {"zero", reduced.is_zero()}};
  if (g.n() <= 20) {
    double worst = 0.0;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << g.n()); ++x) {
      worst = std::max(worst, std::abs(g.evaluate_point(x) - reduced.evaluate_point(x)));
    }
    report["max_pointwise_difference"] = worst;
  }
  emit(report, config, out);
  return kOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Counterexample constructions and SDP certificates for query-algorithm lower bounds",
               "polyconv"};
  app.require_subcommand(1);
  RunConfig config;

  const std::map<std::string, Format> formats{{"json", Format::json}, {"text", Format::text}};
  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", config.format, "Output format")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    sub->add_option("--cap", config.cap, "Exact enumeration cap (log2 of points)");
    sub->add_flag("--unsound-ok", config.unsound_ok,
                  "Allow sampled lower bounds and caps above the default");
  };

  auto* chsh = app.add_subcommand("chsh", "CHSH witness: no 1-query algorithm within 1 - 1/sqrt(2)");
  chsh->add_option("--epsilon", config.epsilon, "Additive error to rule out (default 0.29)");
  chsh->add_option("--out", config.out, "Write the certificate JSON here");
  common(chsh);

  auto* random = app.add_subcommand("random", "Random sign cubic form and its quartic witness");
  random->add_option("--n", config.n, "Number of variables (default 10)");
  random->add_option("--seed", config.seed, "SplitMix64 seed (default 1)");
  random->add_option("--epsilon", config.epsilon, "Error to rule out (default objective / 2)");
  random->add_option("--scale", config.scale, "Certify the scaled target C*g");
  random->add_option("--out", config.out, "Write the certificate JSON here");
  common(random);

  auto* expl = app.add_subcommand("explicit", "Moebius arithmetic-progression form");
  expl->add_option("--n", config.n, "Modulus, coprime to 6 (default 5)");
  expl->add_option("--epsilon", config.epsilon, "Error to rule out (default objective / 2)");
  expl->add_option("--scale", config.scale, "Certify the scaled target C*g");
  expl->add_option("--out", config.out, "Write the certificate JSON here");
  common(expl);

  auto* verify = app.add_subcommand("verify", "Re-check a certificate from its embedded witness");
  verify->add_option("certificate", config.input, "Certificate JSON path")->required();
  common(verify);

  auto* gowers = app.add_subcommand("gowers", "Gowers U^3 norm of a function on Z_n");
  gowers->add_option("--n", config.n, "Modulus (default 5)");
  gowers->add_option("--function", config.function, "mobius | indicator | ones")
      ->check(CLI::IsMember({"mobius", "indicator", "ones"}));
  gowers->add_option("input", config.input, "ZnFunction JSON path instead of --function");
  common(gowers);

  auto* reduce = app.add_subcommand("reduce", "Multilinear reduction of a raw polynomial");
  reduce->add_option("input", config.input, "RawPoly JSON path, or - for stdin");
  common(reduce);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParseError;
  }

  const CLI::App* chosen = app.get_subcommands().front();
  config.subcommand = chosen->get_name();
  try {
    if (config.subcommand == "chsh") return cmd_chsh(config, out, err);
    if (config.subcommand == "random") return cmd_random(config, out, err);
    if (config.subcommand == "explicit") return cmd_explicit(config, out, err);
    if (config.subcommand == "verify") return cmd_verify(config, out, err);
    if (config.subcommand == "gowers") return cmd_gowers(config, out, err);
    if (config.subcommand == "reduce") return cmd_reduce(config, out, err);
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const VerificationError& e) {
    err << "error: " << e.what() << '\n';
    return kVerifyFailed;
  } catch (const EpsilonTooLargeError& e) {
    err << "error: " << e.what() << '\n';
    return kEpsilonTooLarge;
  } catch (const CapExceededError& e) {
    err << "error: " << e.what() << '\n';
    return kCapExceeded;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kPrecondition;
  }
  return kParseError;
}

}  // namespace polyconv::cli
