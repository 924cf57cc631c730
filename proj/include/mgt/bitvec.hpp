#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace mgt {

// Fixed-width bit vector over 64-bit words. Bit i of a length-n vector is
// addressed LSB-first within words; trailing bits of the last word stay zero.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t nbits) : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

  std::size_t size() const { return nbits_; }

  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i) { words_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  int popcount() const {
    int n = 0;
    for (std::uint64_t w : words_) n += std::popcount(w);
    return n;
  }

  bool none() const {
    for (std::uint64_t w : words_)
      if (w) return false;
    return true;
  }

  BitVec& operator|=(const BitVec& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  friend BitVec operator|(BitVec a, const BitVec& b) {
    a |= b;
    return a;
  }

  bool is_subset_of(const BitVec& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  bool intersects(const BitVec& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }

  int popcount_or(const BitVec& o) const {
    int n = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) n += std::popcount(words_[i] | o.words_[i]);
    return n;
  }

  bool operator==(const BitVec& o) const = default;

  // Deterministic total order (word-wise), used to dedup outcome sets.
  bool operator<(const BitVec& o) const {
    if (nbits_ != o.nbits_) return nbits_ < o.nbits_;
    return words_ < o.words_;
  }

  std::size_t hash() const {
    std::size_t h = nbits_;
    for (std::uint64_t w : words_) h = h * 0x9E3779B97F4A7C15ull + std::hash<std::uint64_t>{}(w);
    return h;
  }

  std::vector<std::int32_t> support() const {
    std::vector<std::int32_t> out;
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      std::uint64_t w = words_[wi];
      while (w) {
        int b = std::countr_zero(w);
        out.push_back(static_cast<std::int32_t>(wi * 64 + b));
        w &= w - 1;
      }
    }
    return out;
  }

  std::string to_string() const {
    std::string s(nbits_, '0');
    for (std::size_t i = 0; i < nbits_; ++i)
      if (test(i)) s[i] = '1';
    return s;
  }

  static BitVec from_string(const std::string& s);

 private:
  std::size_t nbits_ = 0;
  std::vector<std::uint64_t> words_;
};

struct BitVecHash {
  std::size_t operator()(const BitVec& b) const { return b.hash(); }
};

}  // namespace mgt
