// Copyright 2026 The symlift authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace symlift {

// Fixed-width bit vector indexed by atom rank. Bit i carries weight 2^i, so
// ordinary big-integer comparison (highest word first) is the lexicographic
// order with the highest rank as most significant bit.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  std::size_t size() const { return n_; }

  bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  void set(std::size_t i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  void assign(std::size_t i, bool v) { v ? set(i) : reset(i); }
  void clear() { std::fill(w_.begin(), w_.end(), 0); }

  std::size_t count() const;
  bool any() const;

  Bitset operator&(const Bitset& o) const;
  Bitset operator|(const Bitset& o) const;
  Bitset andNot(const Bitset& o) const;  // *this & ~o

  bool operator==(const Bitset& o) const { return n_ == o.n_ && w_ == o.w_; }
  bool operator!=(const Bitset& o) const { return !(*this == o); }

  // Value comparison: bit i weighs 2^i.
  bool lexLess(const Bitset& o) const;

  template <typename Fn>
  void forEachSet(Fn&& fn) const {
    for (std::size_t word = 0; word < w_.size(); ++word) {
      std::uint64_t bits = w_[word];
      while (bits) {
        const int b = __builtin_ctzll(bits);
        fn(word * 64 + static_cast<std::size_t>(b));
        bits &= bits - 1;
      }
    }
  }

  std::size_t hash() const;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

struct BitsetHash {
  std::size_t operator()(const Bitset& b) const { return b.hash(); }
};

struct BitsetLexLess {
  bool operator()(const Bitset& a, const Bitset& b) const { return a.lexLess(b); }
};

// The bit string of an interpretation projected to the solution atoms,
// packed so that bit k is the k-th solution atom in rank order.
struct LexValue {
  Bitset bits;

  bool operator==(const LexValue& o) const { return bits == o.bits; }
  bool operator<(const LexValue& o) const { return bits.lexLess(o.bits); }
  bool operator<=(const LexValue& o) const { return *this == o || *this < o; }

  // MSB-first digit string, e.g. "100010001" for the 3x3 identity matching.
  std::string toBinaryString() const;
  // Plain integer value; only valid up to 64 solution atoms.
  std::uint64_t toUint64() const;
};

}  // namespace symlift
