#pragma once

#include <cstdint>
#include <cstddef>
#include <vector>
#include <bit>
#include <functional>

namespace avsp {

// Fixed-size bit vector sized at construction. Word count stays constant for
// the lifetime of the set, so bitwise ops never reallocate.
class Bitset {
public:
  Bitset() = default;
  explicit Bitset(std::size_t nbits)
      : nbits_(nbits), w_((nbits + 63) / 64, 0) {}

  std::size_t size() const { return nbits_; }
  std::size_t words() const { return w_.size(); }
  const std::uint64_t* data() const { return w_.data(); }
  std::uint64_t* data() { return w_.data(); }

  void set(std::size_t i) { w_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
  void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(std::size_t i) const {
    return (w_[i >> 6] >> (i & 63)) & 1;
  }
  void clear() { std::fill(w_.begin(), w_.end(), 0); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : w_) c += std::popcount(w);
    return c;
  }
  bool any() const {
    for (auto w : w_) if (w) return true;
    return false;
  }
  bool none() const { return !any(); }

  bool intersects(const Bitset& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & o.w_[i]) return true;
    return false;
  }
  bool is_subset_of(const Bitset& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }
  std::size_t count_and(const Bitset& o) const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < w_.size(); ++i)
      c += std::popcount(w_[i] & o.w_[i]);
    return c;
  }

  Bitset& operator|=(const Bitset& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }
  Bitset& operator&=(const Bitset& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }
  Bitset& operator^=(const Bitset& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
    return *this;
  }
  Bitset& and_not(const Bitset& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
    return *this;
  }

  friend Bitset operator|(Bitset a, const Bitset& b) { a |= b; return a; }
  friend Bitset operator&(Bitset a, const Bitset& b) { a &= b; return a; }

  // index of lowest set bit, or npos
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t first() const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i]) return (i << 6) + std::countr_zero(w_[i]);
    return npos;
  }
  std::size_t next(std::size_t prev) const {
    std::size_t i = (prev + 1) >> 6;
    if (i >= w_.size()) return npos;
    std::uint64_t w = w_[i] & ~((std::uint64_t{1} << ((prev + 1) & 63)) - 1);
    if ((prev + 1) & 63) {
      if (w) return (i << 6) + std::countr_zero(w);
      ++i;
    } else if (w_[i]) {
      return (i << 6) + std::countr_zero(w_[i]);
    } else {
      ++i;
    }
    for (; i < w_.size(); ++i)
      if (w_[i]) return (i << 6) + std::countr_zero(w_[i]);
    return npos;
  }

  void clear_below(std::size_t i) {  // zero all bits < i
    std::size_t full = std::min(i >> 6, w_.size());
    for (std::size_t k = 0; k < full; ++k) w_[k] = 0;
    if (full < w_.size() && (i & 63))
      w_[full] &= ~((std::uint64_t{1} << (i & 63)) - 1);
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < w_.size(); ++i) {
      std::uint64_t w = w_[i];
      while (w) {
        f((i << 6) + std::countr_zero(w));
        w &= w - 1;
      }
    }
  }

  bool operator==(const Bitset& o) const = default;
  auto operator<=>(const Bitset& o) const { return w_ <=> o.w_; }

  std::size_t hash() const {
    std::size_t h = 1469598103934665603ull;
    for (auto w : w_) {
      h ^= w;
      h *= 1099511628211ull;
    }
    return h;
  }

private:
  std::size_t nbits_ = 0;
  std::vector<std::uint64_t> w_;
};

struct BitsetHash {
  std::size_t operator()(const Bitset& b) const { return b.hash(); }
};

}  // namespace avsp
