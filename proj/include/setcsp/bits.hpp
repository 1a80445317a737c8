#pragma once

#include <cstdint>
#include <vector>

namespace setcsp {

/// Fixed-size bit vector used for set values over a finite block universe.
class Bits {
 public:
  Bits() = default;
  explicit Bits(int size, bool fill = false)
      : size_(size), w_((size + 63) / 64, fill ? ~0ull : 0ull) {
    trim();
  }

  int size() const { return size_; }

  bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  void set(int i) { w_[i >> 6] |= 1ull << (i & 63); }
  void reset(int i) { w_[i >> 6] &= ~(1ull << (i & 63)); }

  Bits& operator|=(const Bits& o) {
    for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }
  Bits& operator&=(const Bits& o) {
    for (size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }

  // Union with the complement of `o` (relative to the universe).
  Bits& or_complement(const Bits& o) {
    for (size_t i = 0; i < w_.size(); ++i) w_[i] |= ~o.w_[i];
    trim();
    return *this;
  }

  void clear() {
    for (auto& w : w_) w = 0;
  }
  void fill() {
    for (auto& w : w_) w = ~0ull;
    trim();
  }

  bool full() const {
    if (size_ == 0) return true;
    for (size_t i = 0; i + 1 < w_.size(); ++i)
      if (w_[i] != ~0ull) return false;
    int tail = size_ & 63;
    uint64_t mask = tail == 0 ? ~0ull : (~0ull >> (64 - tail));
    return w_.back() == mask;
  }
  bool any() const {
    for (auto w : w_)
      if (w) return true;
    return false;
  }
  bool none() const { return !any(); }

  bool operator==(const Bits&) const = default;

 private:
  void trim() {
    if (w_.empty()) return;
    int tail = size_ & 63;
    if (tail != 0) w_.back() &= ~0ull >> (64 - tail);
  }

  int size_ = 0;
  std::vector<uint64_t> w_;
};

}  // namespace setcsp
