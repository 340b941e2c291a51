#pragma once

// Feasible points of the completely-bounded approximate-degree program
//
//   sdp(f, t) = max E_x phi(x) f(x) - w
//               s.t. ||phi||_1 = 1, (1/w) phi-hat in F(n+1, t),
//
// where F(m, t) holds the functions i -> <u, A_1(i_1) ... A_t(i_t) v> with
// contraction-valued maps A_p and unit vectors u, v. We only verify and
// certify feasible points; a feasible value above epsilon rules out
// floor(t/2)-query algorithms with additive error epsilon.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "polyconv/boolean_poly.hpp"
#include "polyconv/varopoulos.hpp"

namespace polyconv {

inline constexpr double kWitnessTolerance = 1e-9;
inline constexpr std::uint64_t kMaxMembershipSequences = 10'000'000;

// The alphabet is {0, ..., m-1} with m = phi.n() + 1; symbol phi.n() is the
// padding coordinate x_{n+1} = 1.
struct SDPWitness {
  MultilinearPoly target;
  int t = 0;
  MultilinearPoly phi;
  double w = 0.0;
  int d = 0;
  // family[p][s] is A_{p+1}(s).
  std::vector<std::vector<Eigen::MatrixXd>> family;
  Eigen::VectorXd u;
  Eigen::VectorXd v;

  int alphabet_size() const noexcept { return phi.n() + 1; }
};

// Witness that reuses one tuple (alphabet = phi.n() + 1) at all t positions.
std::vector<std::vector<Eigen::MatrixXd>> repeat_family(const CommutingTuple& tuple, int t);

struct MembershipReport {
  std::vector<PropertyCheck> checks;
  std::uint64_t sequences_checked = 0;
  double max_moment_violation = 0.0;
  // Lexicographically first sequence whose moment equation fails.
  std::optional<std::vector<int>> first_failure;

  bool passed() const;
};

// Checks ||phi||_1 = 1, w > 0, unit u and v, every A_p(s) a contraction, and
// (1/w) phi-hat(i) = <u, A_1(i_1) ... A_t(i_t) v> for all m^t sequences i.
MembershipReport verify_membership(const SDPWitness& wit, const EnumerationOptions& options = {});

// E_x phi(x) target(x) - w by exact enumeration.
double objective(const SDPWitness& wit, const EnumerationOptions& options = {});

// Same value from Fourier coefficients: sum_S phi_S target_S - w.
double objective_fourier(const SDPWitness& wit);

// Smallest C with C E[phi g] - w > 0, i.e. w / E[phi g].
double positivity_threshold(const SDPWitness& wit, const EnumerationOptions& options = {});

// Same witness with the target multiplied by c.
SDPWitness with_scaled_target(const SDPWitness& wit, double c);

// f = CHSH form, t = 2, phi = f, w = 1/sqrt(2), the CHSH tuple at both positions.
SDPWitness build_chsh_witness();

struct QuarticBound {
  SDPWitness witness;
  double objective = 0.0;
  // ||f||_2^2 / (||f||_1 ||f||_inf) - Delta(f) / ||f||_1
  double closed_form = 0.0;
  double l1 = 0.0;
  double l2_squared = 0.0;
  double linf = 0.0;
  double delta = 0.0;
};

// For a nonzero cubic form f on n variables, works on n+1 variables with x_0
// first: target g = x_0 f / ||f||_inf, phi = x_0 f / ||f||_1,
// w = Delta(f) / ||f||_1, t = 4, and the trilinear tuple extended by I and 0
// at all four positions. Needs n + 1 <= cap for the exact norms.
QuarticBound quartic_lower_bound(const MultilinearPoly& f, const EnumerationOptions& options = {});

enum class CertificateKind { additive, multiplicative };

std::string to_string(CertificateKind kind);
CertificateKind certificate_kind_from_string(const std::string& s);

struct Provenance {
  std::optional<std::uint64_t> seed;
  std::string code_version;
  std::string timestamp;
  std::string witness_hash;
};

// No floor(t/2)-query algorithm A has |E[A(x)] - target(x)| <= epsilon for
// all x, where target = C g for multiplicative certificates.
struct Certificate {
  CertificateKind kind = CertificateKind::additive;
  MultilinearPoly target;
  double c = 1.0;
  double epsilon = 0.0;
  double value = 0.0;
  int queries = 0;
  SDPWitness witness;
  Provenance provenance;
};

struct CertifyOptions {
  CertificateKind kind = CertificateKind::additive;
  double c = 1.0;
  std::optional<std::uint64_t> seed;
  EnumerationOptions enumeration;
};

// Verifies the witness and emits a certificate when objective > epsilon >= 0.
// Throws VerificationError or EpsilonTooLargeError otherwise.
Certificate certify(const SDPWitness& wit, double epsilon, const CertifyOptions& options = {});

// Version string compiled into the library.
std::string code_version();

}  // namespace polyconv
