#include "polyconv/varopoulos.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "polyconv/errors.hpp"
#include "polyconv/prng.hpp"
#include "polyconv/slices.hpp"

namespace polyconv {

namespace {

PropertyCheck make_check(std::string name, double observed, double violation, double tolerance) {
  return {std::move(name), observed, violation, tolerance, violation <= tolerance};
}

bool is_exact_zero(const Eigen::MatrixXd& m) { return (m.array() == 0.0).all(); }

bool words_vanish_from(const CommutingTuple& t, const Eigen::MatrixXd& prefix, int remaining) {
  if (remaining == 0) return is_exact_zero(prefix);
  for (const auto& a : t.matrices) {
    if (!words_vanish_from(t, prefix * a, remaining - 1)) return false;
  }
  return true;
}

// {0} u S with S a 3-subset of {1, ..., n}: exactly one zero and three
// distinct indices from [1, n].
bool is_cubic_support(const std::array<int, 4>& seq, int n) {
  int zeros = 0;
  std::array<int, 3> rest{};
  int k = 0;
  for (int s : seq) {
    if (s == 0) {
      ++zeros;
    } else if (s > n || k == 3) {
      return false;
    } else {
      rest[k++] = s;
    }
  }
  if (zeros != 1) return false;
  return rest[0] != rest[1] && rest[0] != rest[2] && rest[1] != rest[2];
}

}  // namespace

double tuple_moment(const CommutingTuple& t, std::span<const int> sequence) {
  Eigen::VectorXd x = t.v;
  for (auto it = sequence.rbegin(); it != sequence.rend(); ++it) {
    if (*it < 0 || *it >= t.alphabet_size()) {
      throw DimensionError("symbol " + std::to_string(*it) + " outside the alphabet of size " +
                           std::to_string(t.alphabet_size()));
    }
    x = t.matrices[*it] * x;
  }
  return t.u.dot(x);
}

CommutingTuple build_trilinear(const MultilinearPoly& f) {
  require_cubic_form(f);
  const double scale = delta(f);
  if (scale == 0.0) {
    throw PreconditionError("Delta(f) = 0: the normalization W_i = M_i / Delta(f) is undefined");
  }
  const int n = f.n();
  const int d = 2 * n + 2;
  CommutingTuple t;
  t.d = d;
  t.u = Eigen::VectorXd::Unit(d, d - 1);
  t.v = Eigen::VectorXd::Unit(d, 0);
  t.grading.assign(d, 0);
  for (int r = 1; r <= n; ++r) t.grading[r] = 1;
  for (int r = n + 1; r <= 2 * n; ++r) t.grading[r] = 2;
  t.grading[d - 1] = 3;

  t.matrices.reserve(n);
  for (int i = 0; i < n; ++i) {
    const Eigen::MatrixXd w = slice(f, i).matrix / scale;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(d, d);
    a(1 + i, 0) = 1.0;
    a.block(n + 1, 1, n, n) = w.transpose();
    a(d - 1, n + 1 + i) = 1.0;
    t.matrices.push_back(std::move(a));
  }
  return t;
}

MultilinearPoly chsh_form() {
  return MultilinearPoly(4, {{bit(0) | bit(2), 0.5},
                             {bit(0) | bit(3), 0.5},
                             {bit(1) | bit(2), 0.5},
                             {bit(1) | bit(3), -0.5}});
}

CommutingTuple build_chsh() {
  const MultilinearPoly f = chsh_form();
  constexpr int n = 4;
  constexpr int d = 6;
  CommutingTuple t;
  t.d = d;
  t.u = Eigen::VectorXd::Unit(d, d - 1);
  t.v = Eigen::VectorXd::Unit(d, 0);
  t.grading = {0, 1, 1, 1, 1, 2};
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
    for (int j = 0; j < n; ++j) {
      if (j != i) w(j) = std::sqrt(2.0) * f.coefficient(bit(i) | bit(j));
    }
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(d, d);
    a.block(1, 0, n, 1) = w;
    a(d - 1, 1 + i) = 1.0;
    t.matrices.push_back(std::move(a));
  }
  t.matrices.push_back(Eigen::MatrixXd::Zero(d, d));
  return t;
}

CommutingTuple extend_with_identity_and_zero(const CommutingTuple& t) {
  CommutingTuple out;
  out.d = t.d;
  out.u = t.u;
  out.v = t.v;
  out.matrices.reserve(t.matrices.size() + 2);
  out.matrices.push_back(Eigen::MatrixXd::Identity(t.d, t.d));
  out.matrices.insert(out.matrices.end(), t.matrices.begin(), t.matrices.end());
  out.matrices.push_back(Eigen::MatrixXd::Zero(t.d, t.d));
  return out;
}

bool TupleReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

const PropertyCheck& TupleReport::at(const std::string& name) const {
  const auto it = std::find_if(checks.begin(), checks.end(),
                               [&](const auto& c) { return c.name == name; });
  if (it == checks.end()) throw std::out_of_range("no property check named " + name);
  return *it;
}

TupleReport verify_tuple(const CommutingTuple& t, const MultilinearPoly& f) {
  const int n = f.n();
  if (t.alphabet_size() < n) {
    throw DimensionError("tuple alphabet of size " + std::to_string(t.alphabet_size()) +
                         " does not cover " + std::to_string(n) + " variables");
  }
  const double scale = delta(f);
  TupleReport report;

  double max_norm = 0.0;
  for (const auto& a : t.matrices) max_norm = std::max(max_norm, spectral_norm(a));
  report.checks.push_back(
      make_check("contraction", max_norm, std::max(0.0, max_norm - 1.0), kTupleTolerance));

  const double nu = t.u.norm();
  const double nv = t.v.norm();
  const double uv = t.u.dot(t.v);
  report.checks.push_back(make_check("unit_u", nu, std::abs(nu - 1.0), kTupleTolerance));
  report.checks.push_back(make_check("unit_v", nv, std::abs(nv - 1.0), kTupleTolerance));
  report.checks.push_back(make_check("orthogonal_uv", uv, std::abs(uv), kTupleTolerance));

  double commutator = 0.0;
  for (int i = 0; i < t.alphabet_size(); ++i) {
    for (int j = i + 1; j < t.alphabet_size(); ++j) {
      const auto& a = t.matrices[i];
      const auto& b = t.matrices[j];
      commutator = std::max(commutator, (a * b - b * a).norm());
    }
  }
  report.checks.push_back(make_check("commutators", commutator, commutator, kTupleTolerance));

  std::vector<Eigen::VectorXd> av(n);
  std::vector<Eigen::VectorXd> ua(n);
  double square = 0.0;
  double linear = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto& a = t.matrices[i];
    square = std::max(square, (a * a).cwiseAbs().maxCoeff());
    av[i] = a * t.v;
    ua[i] = a.transpose() * t.u;
    linear = std::max(linear, std::abs(t.u.dot(av[i])));
  }
  report.checks.push_back(make_check("square_zero", square, square, kMomentTolerance));
  report.checks.push_back(make_check("linear_moment", linear, linear, kMomentTolerance));

  double quadratic = 0.0;
  double cubic = 0.0;
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      const Eigen::VectorXd ajk = t.matrices[j] * av[k];
      quadratic = std::max(quadratic, std::abs(t.u.dot(ajk)));
      if (j == k) continue;
      for (int i = 0; i < n; ++i) {
        if (i == j || i == k) continue;
        const double expected =
            scale == 0.0 ? 0.0 : f.coefficient(bit(i) | bit(j) | bit(k)) / scale;
        cubic = std::max(cubic, std::abs(ua[i].dot(ajk) - expected));
      }
    }
  }
  report.checks.push_back(make_check("quadratic_moment", quadratic, quadratic, kMomentTolerance));
  report.checks.push_back(make_check("cubic_moment", cubic, cubic, kMomentTolerance));
  return report;
}

bool respects_grading(const CommutingTuple& t) {
  if (t.grading.size() != static_cast<std::size_t>(t.d)) return false;
  for (const auto& a : t.matrices) {
    for (int r = 0; r < a.rows(); ++r) {
      for (int c = 0; c < a.cols(); ++c) {
        if (a(r, c) != 0.0 && t.grading[r] != t.grading[c] + 1) return false;
      }
    }
  }
  return true;
}

bool words_vanish_exactly(const CommutingTuple& t, int length) {
  if (length <= 0) return false;
  for (const auto& a : t.matrices) {
    if (!words_vanish_from(t, a, length - 1)) return false;
  }
  return true;
}

double quartic_moment(const CommutingTuple& t, const MultilinearPoly& f) {
  if (t.alphabet_size() != f.n()) {
    throw DimensionError("tuple alphabet of size " + std::to_string(t.alphabet_size()) +
                         " does not match " + std::to_string(f.n()) + " variables");
  }
  require_cubic_form(f);
  const CommutingTuple extended = extend_with_identity_and_zero(t);
  double total = 0.0;
  for (const auto& [s, c] : f.coeffs()) {
    const auto m = subset_members(s);
    const std::array<int, 4> word{0, m[0] + 1, m[1] + 1, m[2] + 1};
    total += c * tuple_moment(extended, word);
  }
  return total;
}

VanishingReport four_index_vanishing(const CommutingTuple& extended, std::uint64_t seed,
                                     std::uint64_t samples) {
  const int m = extended.alphabet_size();
  const int n = m - 2;
  if (n < 0) throw DimensionError("extended alphabet needs at least the symbols 0 and n+1");

  // <u, A_a A_b A_c A_d v> = (A_b^T A_a^T u) . (A_c A_d v)
  std::vector<Eigen::VectorXd> left(static_cast<std::size_t>(m) * m);
  std::vector<Eigen::VectorXd> right(static_cast<std::size_t>(m) * m);
  for (int a = 0; a < m; ++a) {
    const Eigen::VectorXd ua = extended.matrices[a].transpose() * extended.u;
    const Eigen::VectorXd dv = extended.matrices[a] * extended.v;
    for (int b = 0; b < m; ++b) {
      left[a * m + b] = extended.matrices[b].transpose() * ua;
      right[b * m + a] = extended.matrices[b] * dv;
    }
  }

  VanishingReport report;
  auto visit = [&](const std::array<int, 4>& seq) {
    if (is_cubic_support(seq, n)) {
      ++report.sequences_skipped;
      return;
    }
    ++report.sequences_checked;
    const double value =
        std::abs(left[seq[0] * m + seq[1]].dot(right[seq[2] * m + seq[3]]));
    if (report.worst_sequence.empty() || value > report.max_abs) {
      report.max_abs = value;
      report.worst_sequence.assign(seq.begin(), seq.end());
    }
  };

  report.exhaustive = n <= 8;
  if (report.exhaustive) {
    std::array<int, 4> seq{};
    for (seq[0] = 0; seq[0] < m; ++seq[0])
      for (seq[1] = 0; seq[1] < m; ++seq[1])
        for (seq[2] = 0; seq[2] < m; ++seq[2])
          for (seq[3] = 0; seq[3] < m; ++seq[3]) visit(seq);
  } else {
    SplitMix64 rng(seed);
    for (std::uint64_t s = 0; s < samples; ++s) {
      std::array<int, 4> seq{};
      for (auto& x : seq) x = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(m)));
      visit(seq);
    }
  }
  report.passed = report.max_abs <= kMomentTolerance;
  return report;
}

}  // namespace polyconv
