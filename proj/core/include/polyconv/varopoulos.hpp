#pragma once

// Commuting contraction tuples whose low moments reproduce the coefficients
// of a cubic form (trilinear construction) or of the CHSH bilinear form, and
// exhaustive checkers for their defining identities.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "polyconv/boolean_poly.hpp"

namespace polyconv {

inline constexpr double kTupleTolerance = 1e-12;
inline constexpr double kMomentTolerance = 1e-10;

// Matrices A(0), ..., A(m-1) on R^d plus vectors u, v. When `grading` is
// non-empty it assigns a level to every coordinate and each matrix maps
// level k into level k + 1, so products longer than the top level vanish.
struct CommutingTuple {
  int d = 0;
  std::vector<Eigen::MatrixXd> matrices;
  Eigen::VectorXd u;
  Eigen::VectorXd v;
  std::vector<int> grading;

  int alphabet_size() const noexcept { return static_cast<int>(matrices.size()); }
};

// <u, A(s_1) A(s_2) ... A(s_k) v>.
double tuple_moment(const CommutingTuple& t, std::span<const int> sequence);

// (2n+2)-dimensional tuple for a nonzero cubic form: A_i has e_i below the
// first coordinate, (M_i / Delta(f))^T in the middle and e_i^T above the last.
// u = e_{2n+1}, v = e_1 (1-based).
CommutingTuple build_trilinear(const MultilinearPoly& f);

// The 6-dimensional tuple for the CHSH form with A(5) = 0.
CommutingTuple build_chsh();

// Alphabet {I, A(0), ..., A(m-1), 0}: the identity prepended and the zero
// matrix appended. The grading is dropped since I preserves levels.
CommutingTuple extend_with_identity_and_zero(const CommutingTuple& t);

// The CHSH form (x1 (x3 + x4) + x2 (x3 - x4)) / 2.
MultilinearPoly chsh_form();

struct PropertyCheck {
  std::string name;
  double observed = 0.0;   // the measured quantity (norm, inner product, ...)
  double violation = 0.0;  // distance from the required value
  double tolerance = 0.0;
  bool passed = false;
};

struct TupleReport {
  std::vector<PropertyCheck> checks;

  bool passed() const;
  const PropertyCheck& at(const std::string& name) const;
};

// Contraction norms, unit and orthogonal u, v, pairwise commutators, and
//   A_i^2 = 0, <u, A_i v> = 0, <u, A_i A_j v> = 0,
//   <u, A_i A_j A_k v> = c_{i,j,k} / Delta(f) for distinct i, j, k.
TupleReport verify_tuple(const CommutingTuple& t, const MultilinearPoly& f);

// True when every nonzero entry (r, c) of every matrix has
// grading[r] == grading[c] + 1.
bool respects_grading(const CommutingTuple& t);

// Multiplies out every length-`length` word over the alphabet and checks
// the product is exactly the zero matrix.
bool words_vanish_exactly(const CommutingTuple& t, int length);

// Sum_S c_S <u, A_0 chi_S(A) v> over the extended alphabet (A_0 = I,
// A_{n+1} = 0), i.e. <u, h(A) v> for h = x_0 f. Equals ||f||_2^2 / Delta(f).
double quartic_moment(const CommutingTuple& t, const MultilinearPoly& f);

struct VanishingReport {
  std::uint64_t sequences_checked = 0;
  std::uint64_t sequences_skipped = 0;  // the {0} u S sequences
  bool exhaustive = false;
  double max_abs = 0.0;
  std::vector<int> worst_sequence;
  bool passed = false;
};

// For an extended tuple (alphabet {0, ..., n+1}), checks
// <u, A_i A_j A_k A_l v> = 0 for every sequence whose multiset is not
// {0} u S with S a 3-subset of {1, ..., n}. Exhaustive when n <= 8,
// otherwise `samples` seeded random sequences.
VanishingReport four_index_vanishing(const CommutingTuple& extended, std::uint64_t seed = 1,
                                     std::uint64_t samples = 100000);

}  // namespace polyconv
