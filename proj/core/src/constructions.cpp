#include "polyconv/constructions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "polyconv/errors.hpp"
#include "polyconv/prng.hpp"
#include "polyconv/slices.hpp"

namespace polyconv {

namespace {

long long mod(long long a, int n) {
  const long long r = a % n;
  return r < 0 ? r + n : r;
}

// Moebius function on [0, limit) by a linear sieve; mu(0) = 0.
std::vector<int> mobius_table(int limit) {
  std::vector<int> mu(std::max(limit, 2), 0);
  std::vector<int> primes;
  std::vector<bool> composite(mu.size(), false);
  mu[1] = 1;
  for (int i = 2; i < limit; ++i) {
    if (!composite[i]) {
      primes.push_back(i);
      mu[i] = -1;
    }
    for (int p : primes) {
      const long long ip = static_cast<long long>(i) * p;
      if (ip >= limit) break;
      composite[ip] = true;
      if (i % p == 0) {
        mu[ip] = 0;
        break;
      }
      mu[ip] = -mu[i];
    }
  }
  mu.resize(limit);
  return mu;
}

}  // namespace

ZnFunction::ZnFunction(std::vector<double> v)
    : modulus(static_cast<int>(v.size())), values(std::move(v)) {
  if (modulus < 1) throw PreconditionError("a function on Z_n needs n >= 1");
}

double ZnFunction::operator()(long long a) const { return values[mod(a, modulus)]; }

bool ZnFunction::is_bounded() const {
  return std::all_of(values.begin(), values.end(), [](double x) { return std::abs(x) <= 1.0; });
}

ZnFunction ZnFunction::scaled(double factor) const {
  std::vector<double> out(values);
  for (double& x : out) x *= factor;
  return ZnFunction(std::move(out));
}

ZnFunction constant_function(int n, double value) {
  return ZnFunction(std::vector<double>(n, value));
}

ZnFunction indicator_of_zero(int n) {
  std::vector<double> v(n, 0.0);
  v.at(0) = 1.0;
  return ZnFunction(std::move(v));
}

MultilinearPoly random_cubic(int n, std::uint64_t seed) {
  if (n < 3 || n > kMaxVariables) {
    throw PreconditionError("random_cubic needs 3 <= n <= 64, got " + std::to_string(n));
  }
  SplitMix64 rng(seed);
  std::map<Subset, double> coeffs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        coeffs.emplace(bit(i) | bit(j) | bit(k), static_cast<double>(rng.next_sign()));
  return MultilinearPoly(n, std::move(coeffs));
}

ZnFunction mobius(int n) {
  if (n < 2) throw PreconditionError("mobius needs n >= 2, got " + std::to_string(n));
  const auto mu = mobius_table(n);
  return ZnFunction(std::vector<double>(mu.begin(), mu.end()));
}

std::int64_t squarefree_count(int n) {
  if (n < 1) throw PreconditionError("squarefree_count needs n >= 1");
  const auto mu = mobius_table(n + 1);
  std::int64_t count = 0;
  for (int a = 1; a <= n; ++a) count += mu[a] != 0;
  return count;
}

int APFormIndex::variable(int block, long long a) const {
  if (block < 0 || block > 2) throw DimensionError("AP form blocks are 0, 1, 2");
  return block * modulus + static_cast<int>(mod(a, modulus));
}

std::pair<int, int> APFormIndex::coordinate(int variable) const {
  if (variable < 0 || variable >= 3 * modulus) throw DimensionError("variable outside [0, 3n)");
  return {variable / modulus, variable % modulus};
}

APForm ap_form(int n, const ZnFunction& f0) {
  if (n < 2) throw PreconditionError("ap_form needs n >= 2");
  if (f0.modulus != n) {
    throw DimensionError("f0 is defined on Z_" + std::to_string(f0.modulus) + ", expected Z_" +
                         std::to_string(n));
  }
  if (3 * n > kMaxVariables) throw PreconditionError("ap_form needs 3n <= 64 variables");
  APForm out;
  out.index = APFormIndex{n};
  if (std::gcd(n, 6) != 1) {
    out.warnings.push_back("n = " + std::to_string(n) +
                           " is not coprime to 6; the generalized von Neumann bound does not apply");
  }
  if (!f0.is_bounded()) out.warnings.push_back("f0 leaves [-1, 1]; Delta(f) <= 1 may fail");

  std::map<Subset, double> coeffs;
  for (long long a = 0; a < n; ++a) {
    for (long long b = 0; b < n; ++b) {
      const double c = f0(a + 3 * b);
      if (c == 0.0) continue;
      const Subset s = bit(out.index.variable(0, a)) | bit(out.index.variable(1, a + b)) |
                       bit(out.index.variable(2, a + 2 * b));
      coeffs.emplace(s, c);
    }
  }
  out.poly = MultilinearPoly(3 * n, std::move(coeffs));
  return out;
}

Eigen::MatrixXd ap_form_slice(const ZnFunction& f0, int variable) {
  const int n = f0.modulus;
  const APFormIndex index{n};
  index.coordinate(variable);
  if (3 * n > kMaxSliceDimension) throw PreconditionError("AP slice dimension above the dense cap");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(3 * n, 3 * n);
  for (long long a = 0; a < n; ++a) {
    for (long long b = 0; b < n; ++b) {
      const double c = f0(a + 3 * b);
      if (c == 0.0) continue;
      const std::array<int, 3> vars{index.variable(0, a), index.variable(1, a + b),
                                    index.variable(2, a + 2 * b)};
      for (int k = 0; k < 3; ++k) {
        if (vars[k] != variable) continue;
        const int j = vars[(k + 1) % 3];
        const int l = vars[(k + 2) % 3];
        m(j, l) = c;
        m(l, j) = c;
      }
    }
  }
  return m;
}

double ap_form_delta(const ZnFunction& f0) {
  double best = 0.0;
  for (int v = 0; v < 3 * f0.modulus; ++v) best = std::max(best, operator_norm(ap_form_slice(f0, v)));
  return best;
}

double ap_form_l2_squared(const ZnFunction& f0) {
  double s = 0.0;
  for (double x : f0.values) s += x * x;
  return f0.modulus * s;
}

double gowers_u3(const ZnFunction& g) {
  const int n = g.modulus;
  if (n < 1) throw PreconditionError("gowers_u3 needs a function on Z_n with n >= 1");
  if (n > kGowersCap) {
    throw CapExceededError("gowers_u3 is exact only for n <= " + std::to_string(kGowersCap));
  }
  // For fixed (b, c), put h(a) = g(a) g(a+b) g(a+c) g(a+b+c). The eight-fold
  // product at (a, b, c, d) is h(a) h(a+d), so summing over a and d gives
  // (sum_a h(a))^2.
  double total = 0.0;
  for (int b = 0; b < n; ++b) {
    for (int c = 0; c < n; ++c) {
      double s = 0.0;
      for (int a = 0; a < n; ++a) s += g(a) * g(a + b) * g(a + c) * g(a + b + c);
      total += s * s;
    }
  }
  const double mean = total / std::pow(static_cast<double>(n), 4);
  if (mean < -1e-12) throw std::logic_error("negative U^3 average");
  return std::pow(std::max(mean, 0.0), 1.0 / 8.0);
}

VonNeumannReport check_von_neumann(int n, const ZnFunction& f0,
                                   const EnumerationOptions& options) {
  if (std::gcd(n, 6) != 1) {
    throw PreconditionError("the generalized von Neumann inequality needs n coprime to 6, got n = " +
                            std::to_string(n));
  }
  const APForm form = ap_form(n, f0);
  VonNeumannReport report;
  report.n = n;
  const NormValue sup = p_norm(form.poly, kInfinity, options);
  report.sup_norm = sup.value;
  report.sup_norm_exact = sup.exact;
  report.u3 = gowers_u3(f0);
  report.bound = static_cast<double>(n) * n * report.u3;
  report.ratio = report.bound > 0.0 ? report.sup_norm / report.bound : 0.0;
  report.holds = report.ratio <= 1.0 + 1e-9;
  return report;
}

double counterexample_ratio(const MultilinearPoly& f) {
  const double scale = delta(f);
  if (scale == 0.0) throw PreconditionError("counterexample_ratio needs Delta(f) > 0");
  return f.coefficient_square_sum() / scale;
}

}  // namespace polyconv
