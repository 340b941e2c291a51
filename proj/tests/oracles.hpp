#pragma once

// Independent reference implementations used only by the tests. They work
// from sign vectors and plain loops rather than the library's bitmask
// enumeration, so agreement is a real cross-check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "polyconv/boolean_poly.hpp"
#include "polyconv/constructions.hpp"

namespace oracle {

inline std::vector<int> signs_of(std::uint64_t index, int n) {
  std::vector<int> x(n);
  for (int i = 0; i < n; ++i) x[i] = ((index >> i) & 1) ? -1 : 1;
  return x;
}

// Sum_S c_S prod_{i in S} x_i with an explicit product per monomial.
inline double evaluate(const polyconv::MultilinearPoly& f, const std::vector<int>& x) {
  double total = 0.0;
  for (const auto& [s, c] : f.coeffs()) {
    double term = c;
    for (int i = 0; i < f.n(); ++i) {
      if ((s >> i) & 1) term *= x[i];
    }
    total += term;
  }
  return total;
}

struct Norms {
  double l1 = 0.0;
  double l2_squared = 0.0;
  double linf = 0.0;
};

inline Norms norms(const polyconv::MultilinearPoly& f) {
  Norms out;
  const std::uint64_t points = std::uint64_t{1} << f.n();
  for (std::uint64_t k = 0; k < points; ++k) {
    const double y = evaluate(f, signs_of(k, f.n()));
    out.l1 += std::abs(y);
    out.l2_squared += y * y;
    out.linf = std::max(out.linf, std::abs(y));
  }
  out.l1 /= static_cast<double>(points);
  out.l2_squared /= static_cast<double>(points);
  return out;
}

// E_x phi(x) prod_j x_{i_j}, with index n standing for the constant 1.
inline double hat_seq(const polyconv::MultilinearPoly& phi, const std::vector<int>& seq) {
  const int n = phi.n();
  const std::uint64_t points = std::uint64_t{1} << n;
  double total = 0.0;
  for (std::uint64_t k = 0; k < points; ++k) {
    const auto x = signs_of(k, n);
    double prod = evaluate(phi, x);
    for (int i : seq) prod *= (i == n) ? 1 : x[i];
    total += prod;
  }
  return total / static_cast<double>(points);
}

// Largest |eigenvalue| of a symmetric matrix: power iteration on M^2 for
// the top value, then deflation to confirm no larger value was missed.
inline double power_iteration_norm(const Eigen::MatrixXd& m, int iterations = 20000) {
  const Eigen::MatrixXd sq = m * m;
  const auto n = sq.rows();
  auto dominant = [&](const Eigen::MatrixXd& a, Eigen::VectorXd& vec) {
    vec = Eigen::VectorXd::LinSpaced(n, 1.0, 2.0);
    vec.normalize();
    double lambda = 0.0;
    for (int it = 0; it < iterations; ++it) {
      Eigen::VectorXd next = a * vec;
      const double norm = next.norm();
      if (norm == 0.0) return 0.0;
      vec = next / norm;
      lambda = vec.dot(a * vec);
    }
    return lambda;
  };
  Eigen::VectorXd top;
  const double first = dominant(sq, top);
  Eigen::VectorXd other;
  const double second = dominant(sq - first * top * top.transpose(), other);
  return std::sqrt(std::max(first, second));
}

// Direct quadruple average of the eight-fold product.
inline double gowers_u3(const polyconv::ZnFunction& g) {
  const int n = g.modulus;
  double total = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          total += g(a) * g(a + b) * g(a + c) * g(a + d) * g(a + b + c) * g(a + b + d) *
                   g(a + c + d) * g(a + b + c + d);
        }
  const double mean = total / std::pow(static_cast<double>(n), 4);
  return std::pow(std::max(0.0, mean), 1.0 / 8.0);
}

// Square-free count in [1, n] by crossing out multiples of p^2.
inline std::int64_t squarefree_count(int n) {
  std::vector<bool> crossed(n + 1, false);
  for (long long p = 2; p * p <= n; ++p) {
    for (long long k = p * p; k <= n; k += p * p) crossed[k] = true;
  }
  std::int64_t count = 0;
  for (int a = 1; a <= n; ++a) count += crossed[a] ? 0 : 1;
  return count;
}

// Moebius value by trial division.
inline int mobius(int a) {
  if (a == 0) return 0;
  int sign = 1;
  for (int p = 2; p * p <= a; ++p) {
    if (a % p == 0) {
      a /= p;
      if (a % p == 0) return 0;
      sign = -sign;
    }
  }
  return a > 1 ? -sign : sign;
}

inline double binomial3(int n) { return n * (n - 1.0) * (n - 2.0) / 6.0; }

// Spearman rank correlation without tie handling (inputs are distinct).
inline double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  auto ranks = [](const std::vector<double>& v) {
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    for (std::size_t k = 0; k < order.size(); ++k) r[order[k]] = static_cast<double>(k);
    return r;
  };
  const auto rx = ranks(x);
  const auto ry = ranks(y);
  const double n = static_cast<double>(x.size());
  double d2 = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) d2 += (rx[k] - ry[k]) * (rx[k] - ry[k]);
  return 1.0 - 6.0 * d2 / (n * (n * n - 1.0));
}

}  // namespace oracle
