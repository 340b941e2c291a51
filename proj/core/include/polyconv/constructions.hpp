#pragma once

// The two counterexample families: random sign cubic forms and the
// arithmetic-progression form driven by a function on Z_n (the Moebius
// function in practice), together with the Gowers U^3 machinery that bounds
// the latter's sup norm.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "polyconv/boolean_poly.hpp"

namespace polyconv {

inline constexpr int kGowersCap = 512;

// A real function on Z_n, values[a] for a = 0, ..., n-1.
struct ZnFunction {
  int modulus = 0;
  std::vector<double> values;

  ZnFunction() = default;
  explicit ZnFunction(std::vector<double> v);

  double operator()(long long a) const;
  // |values[a]| <= 1 everywhere.
  bool is_bounded() const;
  ZnFunction scaled(double factor) const;

  friend bool operator==(const ZnFunction&, const ZnFunction&) = default;
};

ZnFunction constant_function(int n, double value);
ZnFunction indicator_of_zero(int n);

// Cubic form with independent uniform +-1 coefficients on all 3-subsets.
// Subsets are visited in lexicographic order {0,1,2}, {0,1,3}, ... and each
// draws one SplitMix64 output seeded by `seed`; the sign is + when the top
// bit is clear. Requires 3 <= n <= 64.
MultilinearPoly random_cubic(int n, std::uint64_t seed);

// Moebius function on {0, ..., n-1} (linear sieve) with the value at 0 set
// to 0. Requires n >= 2.
ZnFunction mobius(int n);

// Number of square-free integers in {1, ..., n}.
std::int64_t squarefree_count(int n);

// Flattening of [3] x Z_n: variable (block, a) with block in {0, 1, 2} maps
// to block * n + a.
struct APFormIndex {
  int modulus = 0;

  int variable(int block, long long a) const;
  std::pair<int, int> coordinate(int variable) const;
};

struct APForm {
  MultilinearPoly poly;
  APFormIndex index;
  std::vector<std::string> warnings;
};

// f(x) = sum_{a,b in Z_n} x(1,a) x(2,a+b) x(3,a+2b) f0(a+3b) on 3n variables.
// Warns (does not reject) when gcd(n, 6) != 1 or f0 leaves [-1, 1].
APForm ap_form(int n, const ZnFunction& f0);

// Slice of the AP form at `variable` (flattened as in APFormIndex), built
// straight from f0. Works for any n, including 3n > 64 where the form itself
// cannot be stored as a MultilinearPoly.
Eigen::MatrixXd ap_form_slice(const ZnFunction& f0, int variable);

// Delta(f) of the AP form from its slices, and ||f||_2^2 = n sum_a f0(a)^2.
double ap_form_delta(const ZnFunction& f0);
double ap_form_l2_squared(const ZnFunction& f0);

// ||g||_{U^3} = (E_{a,b,c,d} prod_{w in {0,1}^3} g(a + w.(b,c,d)))^(1/8).
double gowers_u3(const ZnFunction& g);

struct VonNeumannReport {
  int n = 0;
  double sup_norm = 0.0;   // ||f||_inf of the AP form
  bool sup_norm_exact = true;
  double u3 = 0.0;         // ||f0||_{U^3}
  double bound = 0.0;      // n^2 ||f0||_{U^3}
  double ratio = 0.0;      // sup_norm / bound, 0 when the bound is 0
  bool holds = false;      // ratio <= 1 + 1e-9 (one-sided when sampled)
};

// Compares ||f||_inf with n^2 ||f0||_{U^3} for the AP form. Requires
// gcd(n, 6) = 1. With 3n above the enumeration cap and sampling allowed, the
// sup norm is a lower bound and the comparison only one-sided.
VonNeumannReport check_von_neumann(int n, const ZnFunction& f0,
                                   const EnumerationOptions& options = {});

// ||f||_2^2 / Delta(f), computed as sum c_S^2 / Delta(f).
double counterexample_ratio(const MultilinearPoly& f);

}  // namespace polyconv
