#pragma once

#include <cstdint>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "tmlab/machine.hpp"

namespace tmlab {

// Two-sided growable tape over {0,1}; cells outside the backing store read 0.
// Tracks the touched extent: every cell the head has visited or written.
// One simulation owns its tape exclusively; copies are independent.
class Tape {
 public:
  explicit Tape(std::string_view input = {}) {
    cells_.assign(input.size() + 2 * kChunk, 0);
    origin_ = -static_cast<long>(kChunk);
    for (std::size_t i = 0; i < input.size(); ++i) {
      if (input[i] != '0' && input[i] != '1')
        throw std::invalid_argument("tape input must be over {0,1}");
      cells_[kChunk + i] = static_cast<Symbol>(input[i] - '0');
    }
    rightmost_ = input.empty() ? 0 : static_cast<long>(input.size()) - 1;
  }

  Symbol read(long pos) const {
    std::size_t idx = static_cast<std::size_t>(pos - origin_);
    return idx < cells_.size() ? cells_[idx] : 0;
  }
  Symbol at_head() const { return cells_[static_cast<std::size_t>(head_ - origin_)]; }
  void write_at_head(Symbol s) { cells_[static_cast<std::size_t>(head_ - origin_)] = s; }

  void move_head(int delta) {
    head_ += delta;
    if (head_ < leftmost_) {
      leftmost_ = head_;
      if (head_ - origin_ < 0) grow_front();
    } else if (head_ > rightmost_) {
      rightmost_ = head_;
      if (static_cast<std::size_t>(head_ - origin_) >= cells_.size()) grow_back();
    }
  }

  long head() const { return head_; }
  long leftmost() const { return leftmost_; }
  long rightmost() const { return rightmost_; }

  // Direct view of the backing store, for bulk scans.
  const Symbol* store_data() const { return cells_.data(); }
  long store_origin() const { return origin_; }
  std::size_t store_size() const { return cells_.size(); }

  std::uint64_t count_ones() const {
    std::uint64_t n = 0;
    for (long p = leftmost_; p <= rightmost_; ++p) n += read(p);
    return n;
  }

 private:
  static constexpr std::size_t kChunk = 1024;

  void grow_front() {
    std::size_t add = cells_.size();
    cells_.insert(cells_.begin(), add, 0);
    origin_ -= static_cast<long>(add);
  }
  void grow_back() { cells_.resize(cells_.size() * 2, 0); }

  std::vector<Symbol> cells_;
  long origin_ = 0;
  long head_ = 0;
  long leftmost_ = 0;
  long rightmost_ = 0;
};

}  // namespace tmlab
