#pragma once

// Slice matrices of multilinear cubic forms and the slice norm Delta(f).

#include <Eigen/Dense>

#include "polyconv/boolean_poly.hpp"

namespace polyconv {

inline constexpr int kMaxSliceDimension = 4096;

// The i-th slice of a cubic form: entry (j, k) is c_{i,j,k} for pairwise
// distinct i, j, k and zero otherwise. Symmetric, zero diagonal, zero row
// and column i.
struct SliceMatrix {
  int index = 0;
  Eigen::MatrixXd matrix;
};

// Throws PreconditionError naming the first monomial that is not of degree 3.
void require_cubic_form(const MultilinearPoly& f);

SliceMatrix slice(const MultilinearPoly& f, int i);

// Largest absolute eigenvalue of a symmetric matrix. Exact symmetry is required.
// Matrices with at most one nonzero per row and column skip the eigensolver
// and return max |entry| exactly.
double operator_norm(const Eigen::MatrixXd& m);

// Largest singular value of an arbitrary real matrix (same shortcut).
double spectral_norm(const Eigen::MatrixXd& m);

// max_i ||M_i||.
double delta(const MultilinearPoly& f);

}  // namespace polyconv
