#pragma once

// Exhaustive cube evaluation in blocks of 2^L consecutive points.
//
// A point splits into low bits (L of them) and high bits. Every monomial
// factors as chi_S(x) = chi_{S_low}(x_low) * chi_{S_high}(x_high), so
// grouping terms by their high part H gives tables
//   T_H(x_low) = sum_{S : S_high = H} c_S chi_{S_low}(x_low)
// and f(x) = sum_H chi_H(x_high) T_H(x_low). One block is filled with
// (#distinct H) * 2^L multiply-adds.

#include <algorithm>
#include <cstdint>
#include <span>
#include <thread>
#include <vector>

#include "polyconv/boolean_poly.hpp"

namespace polyconv::detail {

inline constexpr int kMaxLowBits = 12;

class BlockEvaluator {
 public:
  explicit BlockEvaluator(const MultilinearPoly& f);

  int low_bits() const noexcept { return low_bits_; }
  std::size_t block_size() const noexcept { return std::size_t{1} << low_bits_; }
  std::uint64_t num_blocks() const noexcept { return std::uint64_t{1} << (n_ - low_bits_); }

  // Values at points (block << L) | low for low = 0 .. 2^L - 1.
  void fill(std::uint64_t block, std::span<double> out) const;

 private:
  int n_ = 0;
  int low_bits_ = 0;
  std::vector<Subset> high_parts_;
  std::vector<std::vector<double>> tables_;
};

// Computes fn(block) for every block and folds the partials in block order.
// Threads only change who computes a partial, never the summation order.
template <class Partial, class BlockFn, class Fold>
Partial reduce_blocks(std::uint64_t num_blocks, BlockFn block_fn, Partial init, Fold fold) {
  std::vector<Partial> partials(num_blocks);
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  if (num_blocks < 16) workers = 1;
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, num_blocks));
  if (workers <= 1) {
    for (std::uint64_t b = 0; b < num_blocks; ++b) partials[b] = block_fn(b);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::uint64_t b = w; b < num_blocks; b += workers) partials[b] = block_fn(b);
      });
    }
  }
  Partial acc = init;
  for (const auto& p : partials) acc = fold(acc, p);
  return acc;
}

}  // namespace polyconv::detail
