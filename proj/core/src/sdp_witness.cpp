#include "polyconv/sdp_witness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <sstream>

#include "polyconv/errors.hpp"
#include "polyconv/serialization.hpp"
#include "polyconv/slices.hpp"

#ifndef POLYCONV_VERSION
#define POLYCONV_VERSION "unknown"
#endif

namespace polyconv {

namespace {

PropertyCheck check(std::string name, double observed, double violation, double tolerance) {
  return {std::move(name), observed, violation, tolerance, violation <= tolerance};
}

void require_shape(const SDPWitness& wit) {
  const auto m = static_cast<std::size_t>(wit.alphabet_size());
  if (wit.t < 1) throw DimensionError("witness needs t >= 1");
  if (wit.family.size() != static_cast<std::size_t>(wit.t)) {
    throw DimensionError("witness has " + std::to_string(wit.family.size()) +
                         " positions, expected t = " + std::to_string(wit.t));
  }
  if (wit.u.size() != wit.d || wit.v.size() != wit.d) {
    throw DimensionError("witness vectors do not have dimension d = " + std::to_string(wit.d));
  }
  for (const auto& position : wit.family) {
    if (position.size() != m) {
      throw DimensionError("witness position covers " + std::to_string(position.size()) +
                           " symbols, expected " + std::to_string(m));
    }
    for (const auto& a : position) {
      if (a.rows() != wit.d || a.cols() != wit.d) {
        throw DimensionError("witness matrix is not " + std::to_string(wit.d) + "x" +
                             std::to_string(wit.d));
      }
    }
  }
  if (wit.target.n() != wit.phi.n()) {
    throw DimensionError("target and phi live on different variable counts");
  }
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Depth-first walk of [m]^t in lexicographic order carrying the row vector
// u^T A_1(i_1) ... A_p(i_p) and the xor of the indices seen so far.
struct MomentWalker {
  const SDPWitness& wit;
  MembershipReport& report;
  std::vector<int> sequence;

  void walk(int position, const Eigen::RowVectorXd& row, Subset product) {
    const int m = wit.alphabet_size();
    const int pad = wit.phi.n();
    if (position == wit.t) {
      const double moment = row.dot(wit.v.transpose());
      const double expected = wit.phi.coefficient(product) / wit.w;
      const double violation = std::abs(moment - expected);
      ++report.sequences_checked;
      report.max_moment_violation = std::max(report.max_moment_violation, violation);
      if (violation > kWitnessTolerance && !report.first_failure) report.first_failure = sequence;
      return;
    }
    for (int s = 0; s < m; ++s) {
      sequence[position] = s;
      const Subset next = s < pad ? product ^ bit(s) : product;
      walk(position + 1, row * wit.family[position][s], next);
    }
  }
};

}  // namespace

std::vector<std::vector<Eigen::MatrixXd>> repeat_family(const CommutingTuple& tuple, int t) {
  return std::vector<std::vector<Eigen::MatrixXd>>(t, tuple.matrices);
}

bool MembershipReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

MembershipReport verify_membership(const SDPWitness& wit, const EnumerationOptions& options) {
  require_shape(wit);
  const double m = wit.alphabet_size();
  if (std::pow(m, wit.t) > static_cast<double>(kMaxMembershipSequences)) {
    throw CapExceededError("membership check over m^t = " + std::to_string(std::pow(m, wit.t)) +
                           " sequences exceeds 10^7");
  }
  MembershipReport report;
  const double l1 = p_norm(wit.phi, 1.0, options).value;
  report.checks.push_back(check("phi_l1", l1, std::abs(l1 - 1.0), kWitnessTolerance));
  {
    PropertyCheck positive{"w_positive", wit.w, std::max(0.0, -wit.w), 0.0, wit.w > 0.0};
    report.checks.push_back(positive);
  }
  const double nu = wit.u.norm();
  const double nv = wit.v.norm();
  report.checks.push_back(check("unit_u", nu, std::abs(nu - 1.0), kWitnessTolerance));
  report.checks.push_back(check("unit_v", nv, std::abs(nv - 1.0), kWitnessTolerance));
  double max_norm = 0.0;
  for (const auto& position : wit.family)
    for (const auto& a : position) max_norm = std::max(max_norm, spectral_norm(a));
  report.checks.push_back(
      check("contraction", max_norm, std::max(0.0, max_norm - 1.0), kWitnessTolerance));

  if (wit.w > 0.0) {
    MomentWalker walker{wit, report, std::vector<int>(wit.t, 0)};
    walker.walk(0, wit.u.transpose(), 0);
    report.checks.push_back(check("moments", report.max_moment_violation,
                                  report.max_moment_violation, kWitnessTolerance));
  } else {
    report.checks.push_back({"moments", 0.0, kInfinity, kWitnessTolerance, false});
  }
  return report;
}

double objective(const SDPWitness& wit, const EnumerationOptions& options) {
  return cube_correlation(wit.phi, wit.target, options) - wit.w;
}

double objective_fourier(const SDPWitness& wit) {
  if (wit.phi.n() != wit.target.n()) {
    throw DimensionError("target and phi live on different variable counts");
  }
  double s = 0.0;
  for (const auto& [mask, c] : wit.phi.coeffs()) s += c * wit.target.coefficient(mask);
  return s - wit.w;
}

double positivity_threshold(const SDPWitness& wit, const EnumerationOptions& options) {
  const double correlation = cube_correlation(wit.phi, wit.target, options);
  return correlation > 0.0 ? wit.w / correlation : kInfinity;
}

SDPWitness with_scaled_target(const SDPWitness& wit, double c) {
  SDPWitness out = wit;
  out.target = wit.target.scaled(c);
  return out;
}

SDPWitness build_chsh_witness() {
  const CommutingTuple tuple = build_chsh();
  SDPWitness wit;
  wit.target = chsh_form();
  wit.t = 2;
  wit.phi = wit.target;
  wit.w = 1.0 / std::sqrt(2.0);
  wit.d = tuple.d;
  wit.family = repeat_family(tuple, 2);
  wit.u = tuple.u;
  wit.v = tuple.v;
  return wit;
}

QuarticBound quartic_lower_bound(const MultilinearPoly& f, const EnumerationOptions& options) {
  require_cubic_form(f);
  if (f.is_zero()) throw PreconditionError("quartic_lower_bound needs a nonzero form");
  const int n = f.n();
  if (n + 1 > options.cap || n + 1 > kMaxVariables) {
    throw CapExceededError("quartic_lower_bound needs exact norms on n + 1 = " +
                           std::to_string(n + 1) + " variables, above the cap " +
                           std::to_string(options.cap));
  }
  QuarticBound out;
  const CubeStatistics stats = cube_statistics(f, options);
  out.l1 = stats.l1;
  out.l2_squared = stats.l2_squared;
  out.linf = stats.linf;
  out.delta = delta(f);
  if (out.delta == 0.0) throw PreconditionError("quartic_lower_bound needs Delta(f) > 0");

  const CommutingTuple tuple = extend_with_identity_and_zero(build_trilinear(f));
  const MultilinearPoly lifted = f.shifted(1, n + 1).times_variable(0);

  SDPWitness& wit = out.witness;
  wit.target = lifted.scaled(1.0 / out.linf);
  wit.t = 4;
  wit.phi = lifted.scaled(1.0 / out.l1);
  wit.w = out.delta / out.l1;
  wit.d = tuple.d;
  wit.family = repeat_family(tuple, 4);
  wit.u = tuple.u;
  wit.v = tuple.v;

  out.objective = objective(wit, options);
  out.closed_form = out.l2_squared / (out.l1 * out.linf) - out.delta / out.l1;
  return out;
}

std::string to_string(CertificateKind kind) {
  return kind == CertificateKind::additive ? "additive" : "multiplicative";
}

CertificateKind certificate_kind_from_string(const std::string& s) {
  if (s == "additive") return CertificateKind::additive;
  if (s == "multiplicative") return CertificateKind::multiplicative;
  throw FormatError("unknown certificate kind '" + s + "'");
}

Certificate certify(const SDPWitness& wit, double epsilon, const CertifyOptions& options) {
  if (!(epsilon >= 0.0)) throw PreconditionError("certify needs epsilon >= 0");
  if (!(options.c >= 0.0)) throw PreconditionError("certify needs C >= 0");
  const MembershipReport membership = verify_membership(wit, options.enumeration);
  if (!membership.passed()) {
    std::ostringstream msg;
    msg << "witness failed verification:";
    for (const auto& c : membership.checks) {
      if (!c.passed) msg << ' ' << c.name << " (violation " << c.violation << ")";
    }
    throw VerificationError(msg.str());
  }
  const double value = objective(wit, options.enumeration);
  if (!(value > epsilon)) throw EpsilonTooLargeError(value, epsilon);

  Certificate cert;
  cert.kind = options.kind;
  cert.target = wit.target;
  cert.c = options.c;
  cert.epsilon = epsilon;
  cert.value = value;
  cert.queries = wit.t / 2;
  cert.witness = wit;
  cert.provenance.seed = options.seed;
  cert.provenance.code_version = code_version();
  cert.provenance.timestamp = utc_timestamp();
  cert.provenance.witness_hash = witness_hash(wit);
  return cert;
}

std::string code_version() { return POLYCONV_VERSION; }

EpsilonTooLargeError::EpsilonTooLargeError(double objective, double epsilon)
    : std::runtime_error([&] {
        std::ostringstream msg;
        msg.precision(17);
        msg << "objective " << objective << " does not exceed epsilon " << epsilon;
        return msg.str();
      }()),
      objective_(objective),
      epsilon_(epsilon) {}

}  // namespace polyconv
