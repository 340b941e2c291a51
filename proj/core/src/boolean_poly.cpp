#include "polyconv/boolean_poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "enumeration.hpp"
#include "polyconv/errors.hpp"
#include "polyconv/prng.hpp"

namespace polyconv {

namespace {

void check_variable_count(int n) {
  if (n < 0 || n > kMaxVariables) {
    throw DimensionError("variable count " + std::to_string(n) + " outside [0, 64]");
  }
}

Subset full_mask(int n) { return n == 64 ? ~Subset{0} : bit(n) - 1; }

void require_exact(int n, const EnumerationOptions& options, const char* what) {
  if (n > options.cap) {
    throw CapExceededError(std::string(what) + ": exact enumeration of 2^" + std::to_string(n) +
                           " points exceeds the cap 2^" + std::to_string(options.cap));
  }
}

struct Moments {
  double abs_sum = 0.0;
  double square_sum = 0.0;
  double max_abs = -1.0;
  std::uint64_t argmax = 0;
};

Moments fold_moments(const Moments& a, const Moments& b) {
  Moments r;
  r.abs_sum = a.abs_sum + b.abs_sum;
  r.square_sum = a.square_sum + b.square_sum;
  // Ties keep the earlier (smaller) point.
  if (b.max_abs > a.max_abs) {
    r.max_abs = b.max_abs;
    r.argmax = b.argmax;
  } else {
    r.max_abs = a.max_abs;
    r.argmax = a.argmax;
  }
  return r;
}

Moments exact_moments(const MultilinearPoly& f) {
  const detail::BlockEvaluator eval(f);
  const std::size_t size = eval.block_size();
  const int low = eval.low_bits();
  auto block_fn = [&](std::uint64_t block) {
    std::vector<double> values(size);
    eval.fill(block, values);
    Moments m;
    for (std::size_t x = 0; x < size; ++x) {
      const double a = std::abs(values[x]);
      m.abs_sum += a;
      m.square_sum += values[x] * values[x];
      if (a > m.max_abs) {
        m.max_abs = a;
        m.argmax = (block << low) | x;
      }
    }
    return m;
  };
  return detail::reduce_blocks(eval.num_blocks(), block_fn, Moments{}, fold_moments);
}

double exact_power_mean(const MultilinearPoly& f, double p) {
  const detail::BlockEvaluator eval(f);
  const std::size_t size = eval.block_size();
  auto block_fn = [&](std::uint64_t block) {
    std::vector<double> values(size);
    eval.fill(block, values);
    double s = 0.0;
    for (double v : values) s += std::pow(std::abs(v), p);
    return s;
  };
  const double total =
      detail::reduce_blocks(eval.num_blocks(), block_fn, 0.0, std::plus<double>{});
  return total / std::ldexp(1.0, f.n());
}

std::uint64_t random_point(SplitMix64& rng, int n) { return rng.next() & full_mask(n); }

// Greedy single-flip ascent of sign * f from `start`.
double local_ascent(const MultilinearPoly& f, std::uint64_t start, double sign) {
  std::uint64_t x = start;
  double best = sign * f.evaluate_point(x);
  for (bool improved = true; improved;) {
    improved = false;
    int best_flip = -1;
    for (int i = 0; i < f.n(); ++i) {
      const double candidate = sign * f.evaluate_point(x ^ bit(i));
      if (candidate > best) {
        best = candidate;
        best_flip = i;
      }
    }
    if (best_flip >= 0) {
      x ^= bit(best_flip);
      improved = true;
    }
  }
  return best;
}

NormValue sampled_norm(const MultilinearPoly& f, double p, const EnumerationOptions& options) {
  SplitMix64 rng(options.seed);
  if (std::isinf(p)) {
    double best = 0.0;
    for (int s = 0; s < options.local_search_starts; ++s) {
      const std::uint64_t start = random_point(rng, f.n());
      best = std::max({best, local_ascent(f, start, 1.0), local_ascent(f, start, -1.0)});
    }
    return {best, false};
  }
  double total = 0.0;
  for (std::size_t s = 0; s < options.samples; ++s) {
    total += std::pow(std::abs(f.evaluate_point(random_point(rng, f.n()))), p);
  }
  return {std::pow(total / static_cast<double>(options.samples), 1.0 / p), false};
}

}  // namespace

std::vector<int> subset_members(Subset s) {
  std::vector<int> members;
  members.reserve(std::popcount(s));
  while (s) {
    members.push_back(std::countr_zero(s));
    s &= s - 1;
  }
  return members;
}

Subset subset_from_members(std::span<const int> members, int n) {
  Subset s = 0;
  for (int i : members) {
    if (i < 0 || i >= n) {
      throw DimensionError("variable index " + std::to_string(i) + " outside [0, " +
                           std::to_string(n) + ")");
    }
    if (s & bit(i)) throw DimensionError("variable index " + std::to_string(i) + " repeated");
    s |= bit(i);
  }
  return s;
}

std::string monomial_name(Subset s) {
  if (s == 0) return "1";
  std::string out;
  for (int i : subset_members(s)) {
    if (!out.empty()) out += '*';
    out += 'x' + std::to_string(i + 1);
  }
  return out;
}

MultilinearPoly::MultilinearPoly(int n) : n_(n) { check_variable_count(n); }

MultilinearPoly::MultilinearPoly(int n, std::map<Subset, double> coeffs) : n_(n) {
  check_variable_count(n);
  const Subset allowed = full_mask(n);
  for (auto it = coeffs.begin(); it != coeffs.end();) {
    if (it->first & ~allowed) {
      throw DimensionError("monomial " + monomial_name(it->first) + " uses a variable beyond n = " +
                           std::to_string(n));
    }
    it = (it->second == 0.0) ? coeffs.erase(it) : std::next(it);
  }
  coeffs_ = std::move(coeffs);
}

MultilinearPoly MultilinearPoly::from_terms(int n,
                                            std::span<const std::pair<Subset, double>> terms) {
  std::map<Subset, double> merged;
  for (const auto& [s, c] : terms) merged[s] += c;
  return MultilinearPoly(n, std::move(merged));
}

double MultilinearPoly::coefficient(Subset s) const {
  const auto it = coeffs_.find(s);
  return it == coeffs_.end() ? 0.0 : it->second;
}

int MultilinearPoly::degree() const {
  int d = -1;
  for (const auto& [s, c] : coeffs_) d = std::max(d, std::popcount(s));
  return d;
}

bool MultilinearPoly::is_homogeneous(int k) const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [k](const auto& term) { return std::popcount(term.first) == k; });
}

double MultilinearPoly::coefficient_square_sum() const {
  double s = 0.0;
  for (const auto& [mask, c] : coeffs_) s += c * c;
  return s;
}

double MultilinearPoly::coefficient_abs_sum() const {
  double s = 0.0;
  for (const auto& [mask, c] : coeffs_) s += std::abs(c);
  return s;
}

double MultilinearPoly::evaluate_point(std::uint64_t negatives) const {
  double value = 0.0;
  for (const auto& [s, c] : coeffs_) value += character(s, negatives) > 0 ? c : -c;
  return value;
}

MultilinearPoly MultilinearPoly::scaled(double factor) const {
  std::map<Subset, double> out;
  for (const auto& [s, c] : coeffs_) out.emplace(s, c * factor);
  return MultilinearPoly(n_, std::move(out));
}

MultilinearPoly MultilinearPoly::shifted(int offset, int new_n) const {
  if (offset < 0 || n_ + offset > new_n) {
    throw DimensionError("cannot shift " + std::to_string(n_) + " variables by " +
                         std::to_string(offset) + " into " + std::to_string(new_n));
  }
  std::map<Subset, double> out;
  for (const auto& [s, c] : coeffs_) out.emplace(s << offset, c);
  return MultilinearPoly(new_n, std::move(out));
}

MultilinearPoly MultilinearPoly::times_variable(int var) const {
  if (var < 0 || var >= n_) throw DimensionError("variable " + std::to_string(var) + " out of range");
  std::map<Subset, double> out;
  for (const auto& [s, c] : coeffs_) {
    if (s & bit(var)) {
      throw PreconditionError("monomial " + monomial_name(s) + " already contains x" +
                              std::to_string(var + 1));
    }
    out.emplace(s | bit(var), c);
  }
  return MultilinearPoly(n_, std::move(out));
}

double evaluate(const MultilinearPoly& f, std::span<const int> x) {
  if (x.size() != static_cast<std::size_t>(f.n())) {
    throw DimensionError("expected a point of length " + std::to_string(f.n()) + ", got " +
                         std::to_string(x.size()));
  }
  std::uint64_t negatives = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == -1) {
      negatives |= bit(static_cast<int>(i));
    } else if (x[i] != 1) {
      throw DimensionError("coordinate " + std::to_string(i) + " is " + std::to_string(x[i]) +
                           ", expected -1 or +1");
    }
  }
  return f.evaluate_point(negatives);
}

NormValue p_norm(const MultilinearPoly& f, double p, const EnumerationOptions& options) {
  if (!(p >= 1.0)) throw PreconditionError("p-norm needs p in [1, inf], got " + std::to_string(p));
  if (f.n() > options.cap) {
    if (!options.allow_sampling) require_exact(f.n(), options, "p_norm");
    return sampled_norm(f, p, options);
  }
  if (std::isinf(p)) return {exact_moments(f).max_abs, true};
  if (p == 1.0) return {exact_moments(f).abs_sum / std::ldexp(1.0, f.n()), true};
  if (p == 2.0) return {std::sqrt(exact_moments(f).square_sum / std::ldexp(1.0, f.n())), true};
  return {std::pow(exact_power_mean(f, p), 1.0 / p), true};
}

CubeStatistics cube_statistics(const MultilinearPoly& f, const EnumerationOptions& options) {
  require_exact(f.n(), options, "cube_statistics");
  const Moments m = exact_moments(f);
  const double points = std::ldexp(1.0, f.n());
  return {m.abs_sum / points, m.square_sum / points, m.max_abs, m.argmax};
}

double cube_correlation(const MultilinearPoly& phi, const MultilinearPoly& f,
                        const EnumerationOptions& options) {
  if (phi.n() != f.n()) {
    throw DimensionError("correlation of polynomials on " + std::to_string(phi.n()) + " and " +
                         std::to_string(f.n()) + " variables");
  }
  require_exact(f.n(), options, "cube_correlation");
  const detail::BlockEvaluator eval_phi(phi);
  const detail::BlockEvaluator eval_f(f);
  const std::size_t size = eval_f.block_size();
  auto block_fn = [&](std::uint64_t block) {
    std::vector<double> a(size), b(size);
    eval_phi.fill(block, a);
    eval_f.fill(block, b);
    double s = 0.0;
    for (std::size_t x = 0; x < size; ++x) s += a[x] * b[x];
    return s;
  };
  const double total =
      detail::reduce_blocks(eval_f.num_blocks(), block_fn, 0.0, std::plus<double>{});
  return total / std::ldexp(1.0, f.n());
}

double hat_seq(const MultilinearPoly& phi, std::span<const int> sequence) {
  Subset product = 0;
  for (int i : sequence) {
    if (i < 0 || i > phi.n()) {
      throw DimensionError("sequence index " + std::to_string(i) + " outside [0, " +
                           std::to_string(phi.n()) + "]");
    }
    if (i < phi.n()) product ^= bit(i);
  }
  return phi.coefficient(product);
}

std::int64_t character_sum(int n, Subset s, Subset t) {
  if (n < 0 || n > 30) throw PreconditionError("character_sum enumerates at most 2^30 points");
  if ((s | t) & ~full_mask(n)) throw DimensionError("subset outside [n]");
  std::int64_t total = 0;
  const std::uint64_t points = std::uint64_t{1} << n;
  for (std::uint64_t x = 0; x < points; ++x) total += character(s, x) * character(t, x);
  return total;
}

OrthogonalityReport orthogonality_check(int n) {
  if (n < 0 || n > 12) throw PreconditionError("orthogonality_check is exhaustive for n <= 12");
  const std::uint64_t count = std::uint64_t{1} << n;
  // chi_S chi_T = chi_{S xor T} pointwise; tabulate the exact sum of every
  // character once, then scan all pairs against it.
  std::vector<std::int64_t> sums(count, 0);
  for (std::uint64_t u = 0; u < count; ++u) {
    std::int64_t total = 0;
    for (std::uint64_t x = 0; x < count; ++x) total += character(u, x);
    sums[u] = total;
  }
  OrthogonalityReport report;
  report.n = n;
  std::int64_t worst = 0;
  for (std::uint64_t s = 0; s < count; ++s) {
    for (std::uint64_t t = 0; t < count; ++t) {
      const std::int64_t expected = (s == t) ? static_cast<std::int64_t>(count) : 0;
      worst = std::max<std::int64_t>(worst, std::abs(sums[s ^ t] - expected));
      ++report.pairs_checked;
    }
  }
  report.max_deviation = static_cast<double>(worst) / static_cast<double>(count);
  report.passed = worst == 0;
  return report;
}

RawPoly::RawPoly(int n, std::vector<RawTerm> terms) : n_(n) {
  check_variable_count(n);
  for (const auto& term : terms) {
    if (term.exponents.size() != static_cast<std::size_t>(n)) {
      throw DimensionError("exponent vector of length " + std::to_string(term.exponents.size()) +
                           ", expected " + std::to_string(n));
    }
  }
  for (std::size_t a = 0; a < terms.size(); ++a) {
    for (std::size_t b = a + 1; b < terms.size(); ++b) {
      if (terms[a].exponents == terms[b].exponents) {
        throw PreconditionError("two raw terms share the same exponent vector");
      }
    }
  }
  terms_ = std::move(terms);
}

double RawPoly::coefficient(std::span<const unsigned> alpha) const {
  for (const auto& term : terms_) {
    if (std::equal(term.exponents.begin(), term.exponents.end(), alpha.begin(), alpha.end())) {
      return term.coeff;
    }
  }
  return 0.0;
}

double RawPoly::evaluate_point(std::uint64_t negatives) const {
  double value = 0.0;
  for (const auto& term : terms_) {
    int sign = 1;
    for (int i = 0; i < n_; ++i) {
      if ((negatives & bit(i)) && (term.exponents[i] & 1u)) sign = -sign;
    }
    value += sign * term.coeff;
  }
  return value;
}

MultilinearPoly multilinear_reduce(const RawPoly& g) {
  std::vector<std::pair<Subset, double>> reduced;
  reduced.reserve(g.terms().size());
  for (const auto& term : g.terms()) {
    Subset s = 0;
    for (int i = 0; i < g.n(); ++i) {
      if (term.exponents[i] & 1u) s |= bit(i);
    }
    reduced.emplace_back(s, term.coeff);
  }
  return MultilinearPoly::from_terms(g.n(), reduced);
}

}  // namespace polyconv
