#include "polyconv/slices.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>
#include <string>

#include "polyconv/errors.hpp"

namespace polyconv {

namespace {

// With at most one nonzero per row and per column the matrix is a weighted
// partial permutation and its norm is max |entry|, exactly.
std::optional<double> monomial_matrix_norm(const Eigen::MatrixXd& m) {
  std::vector<char> column_used(m.cols(), 0);
  double best = 0.0;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    bool row_used = false;
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (m(r, c) == 0.0) continue;
      if (row_used || column_used[c]) return std::nullopt;
      row_used = true;
      column_used[c] = 1;
      best = std::max(best, std::abs(m(r, c)));
    }
  }
  return best;
}

}  // namespace

void require_cubic_form(const MultilinearPoly& f) {
  for (const auto& [s, c] : f.coeffs()) {
    if (std::popcount(s) != 3) {
      throw PreconditionError("monomial " + monomial_name(s) + " has degree " +
                              std::to_string(std::popcount(s)) +
                              "; expected a multilinear cubic form");
    }
  }
  if (f.n() > kMaxSliceDimension) {
    throw PreconditionError("slices are dense and capped at " +
                            std::to_string(kMaxSliceDimension) + " rows");
  }
}

SliceMatrix slice(const MultilinearPoly& f, int i) {
  require_cubic_form(f);
  if (i < 0 || i >= f.n()) {
    throw DimensionError("slice index " + std::to_string(i) + " outside [0, " +
                         std::to_string(f.n()) + ")");
  }
  SliceMatrix out{i, Eigen::MatrixXd::Zero(f.n(), f.n())};
  for (const auto& [s, c] : f.coeffs()) {
    if (!(s & bit(i))) continue;
    const auto rest = subset_members(s & ~bit(i));
    out.matrix(rest[0], rest[1]) = c;
    out.matrix(rest[1], rest[0]) = c;
  }
  return out;
}

double operator_norm(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw DimensionError("operator_norm needs a square matrix");
  if (m != m.transpose()) throw PreconditionError("operator_norm needs a symmetric matrix");
  if (m.size() == 0) return 0.0;
  if (const auto exact = monomial_matrix_norm(m)) return *exact;
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

double spectral_norm(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  if (const auto exact = monomial_matrix_norm(m)) return *exact;
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues()(0);
}

double delta(const MultilinearPoly& f) {
  require_cubic_form(f);
  double best = 0.0;
  for (int i = 0; i < f.n(); ++i) best = std::max(best, operator_norm(slice(f, i).matrix));
  return best;
}

}  // namespace polyconv
