#include "enumeration.hpp"

#include <algorithm>
#include <unordered_map>

namespace polyconv::detail {

BlockEvaluator::BlockEvaluator(const MultilinearPoly& f)
    : n_(f.n()), low_bits_(std::min(f.n(), kMaxLowBits)) {
  const std::size_t size = block_size();
  const Subset low_mask = (low_bits_ == 64) ? ~Subset{0} : bit(low_bits_) - 1;

  std::unordered_map<Subset, std::size_t> slot;
  for (const auto& [s, c] : f.coeffs()) {
    const Subset high = s >> low_bits_;
    auto [it, inserted] = slot.try_emplace(high, high_parts_.size());
    if (inserted) {
      high_parts_.push_back(high);
      tables_.emplace_back(size, 0.0);
    }
    auto& table = tables_[it->second];
    const Subset low = s & low_mask;
    for (std::size_t x = 0; x < size; ++x) {
      table[x] += character(low, x) > 0 ? c : -c;
    }
  }
}

void BlockEvaluator::fill(std::uint64_t block, std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t h = 0; h < high_parts_.size(); ++h) {
    const auto& table = tables_[h];
    if (character(high_parts_[h], block) > 0) {
      for (std::size_t x = 0; x < out.size(); ++x) out[x] += table[x];
    } else {
      for (std::size_t x = 0; x < out.size(); ++x) out[x] -= table[x];
    }
  }
}

}  // namespace polyconv::detail
