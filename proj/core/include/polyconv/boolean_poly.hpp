#pragma once

// Multilinear polynomials on the Boolean cube {-1,1}^n, stored by their
// Fourier coefficients, plus exact cube-enumeration norms.
//
// Points of the cube are encoded as 64-bit masks: bit i set means x_i = -1.
// Subsets of variables use the same encoding, so chi_S(x) is the parity of
// popcount(S & x). Variables are 0-based throughout the C++ API.

#include <bit>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace polyconv {

using Subset = std::uint64_t;

inline constexpr int kMaxVariables = 64;
inline constexpr int kDefaultEnumerationCap = 24;

inline constexpr double kStructuralTolerance = 1e-9;
inline constexpr double kNormRelativeTolerance = 1e-6;

inline constexpr Subset bit(int i) { return Subset{1} << i; }

// +1 or -1: the character chi_S evaluated at the point encoded by `point`.
inline constexpr int character(Subset s, std::uint64_t point) {
  return (std::popcount(s & point) & 1) ? -1 : 1;
}

// Sorted 0-based member list of a subset.
std::vector<int> subset_members(Subset s);
Subset subset_from_members(std::span<const int> members, int n);

// Human-readable monomial, 1-based: "x1*x3*x4", or "1" for the empty set.
std::string monomial_name(Subset s);

class MultilinearPoly {
 public:
  MultilinearPoly() = default;
  explicit MultilinearPoly(int n);
  // Zero coefficients are dropped; every key must lie inside [0, n).
  MultilinearPoly(int n, std::map<Subset, double> coeffs);

  // Sums coefficients of repeated subsets.
  static MultilinearPoly from_terms(int n, std::span<const std::pair<Subset, double>> terms);

  int n() const noexcept { return n_; }
  const std::map<Subset, double>& coeffs() const noexcept { return coeffs_; }
  std::size_t num_terms() const noexcept { return coeffs_.size(); }
  bool is_zero() const noexcept { return coeffs_.empty(); }

  double coefficient(Subset s) const;

  // Largest |S| with nonzero c_S; -1 for the zero polynomial.
  int degree() const;
  bool is_homogeneous(int k) const;

  // Sum of c_S^2 (the squared 2-norm by Parseval) and sum of |c_S|.
  double coefficient_square_sum() const;
  double coefficient_abs_sum() const;

  // Value at a cube point encoded as a mask of negative coordinates.
  double evaluate_point(std::uint64_t negatives) const;

  MultilinearPoly scaled(double factor) const;
  // Relabels variable i to i + offset inside a space of new_n variables.
  MultilinearPoly shifted(int offset, int new_n) const;
  // Multiplies by x_var (var must not occur in the polynomial's support).
  MultilinearPoly times_variable(int var) const;

  friend bool operator==(const MultilinearPoly&, const MultilinearPoly&) = default;

 private:
  int n_ = 0;
  std::map<Subset, double> coeffs_;
};

// Value at a sign vector x in {-1,+1}^n.
double evaluate(const MultilinearPoly& f, std::span<const int> x);

struct EnumerationOptions {
  // Exact enumeration is allowed for n <= cap.
  int cap = kDefaultEnumerationCap;
  // Above the cap, fall back to sampling instead of throwing.
  bool allow_sampling = false;
  std::uint64_t seed = 0x5eed;
  std::size_t samples = 1u << 16;
  int local_search_starts = 64;
};

struct NormValue {
  double value = 0.0;
  // False when the value came from sampling; for p = infinity it is then a
  // lower bound only, for finite p a Monte Carlo estimate.
  bool exact = true;
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// ||f||_p = (E_x |f(x)|^p)^(1/p), or max_x |f(x)| for p = infinity.
NormValue p_norm(const MultilinearPoly& f, double p, const EnumerationOptions& options = {});

struct CubeStatistics {
  double l1 = 0.0;        // E|f|
  double l2_squared = 0.0;  // E f^2
  double linf = 0.0;      // max |f|
  std::uint64_t argmax = 0;  // a point attaining linf
};

// One exact pass computing the three norms used throughout.
CubeStatistics cube_statistics(const MultilinearPoly& f, const EnumerationOptions& options = {});

// E_x phi(x) f(x) by exact enumeration; both must share n.
double cube_correlation(const MultilinearPoly& phi, const MultilinearPoly& f,
                        const EnumerationOptions& options = {});

// phi-hat(i) = E_x phi(x) prod_j x_{i_j} with the padding index n meaning the
// constant 1. Indices must lie in [0, n].
double hat_seq(const MultilinearPoly& phi, std::span<const int> sequence);

// Exact sum over the cube of chi_S chi_T (equals 2^n delta_{S,T}).
std::int64_t character_sum(int n, Subset s, Subset t);

struct OrthogonalityReport {
  int n = 0;
  std::uint64_t pairs_checked = 0;
  double max_deviation = 0.0;
  bool passed = false;
};

// Checks E_x chi_S(x) chi_T(x) = delta_{S,T} for every pair S, T of [n].
OrthogonalityReport orthogonality_check(int n);

struct RawTerm {
  std::vector<unsigned> exponents;
  double coeff = 0.0;
};

// Polynomial with arbitrary nonnegative exponents, x^alpha = prod x_i^alpha_i.
class RawPoly {
 public:
  RawPoly() = default;
  // Rejects exponent vectors of the wrong length and repeated exponent vectors.
  RawPoly(int n, std::vector<RawTerm> terms);

  int n() const noexcept { return n_; }
  const std::vector<RawTerm>& terms() const noexcept { return terms_; }
  // Coefficient of x^alpha, 0 when absent.
  double coefficient(std::span<const unsigned> alpha) const;
  double evaluate_point(std::uint64_t negatives) const;

 private:
  int n_ = 0;
  std::vector<RawTerm> terms_;
};

// Reduces exponents mod 2 (x_i^2 = 1 on the cube) and merges terms.
MultilinearPoly multilinear_reduce(const RawPoly& g);

}  // namespace polyconv
