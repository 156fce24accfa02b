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

#include "symlift/interpretation.hpp"

#include <algorithm>
#include <stdexcept>

namespace symlift {

std::size_t Bitset::count() const {
  std::size_t c = 0;
  for (auto w : w_) c += static_cast<std::size_t>(__builtin_popcountll(w));
  return c;
}

bool Bitset::any() const {
  return std::any_of(w_.begin(), w_.end(), [](std::uint64_t w) { return w != 0; });
}

Bitset Bitset::operator&(const Bitset& o) const {
  Bitset r(n_);
  for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] & o.w_[i];
  return r;
}

Bitset Bitset::operator|(const Bitset& o) const {
  Bitset r(n_);
  for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] | o.w_[i];
  return r;
}

Bitset Bitset::andNot(const Bitset& o) const {
  Bitset r(n_);
  for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] & ~o.w_[i];
  return r;
}

bool Bitset::lexLess(const Bitset& o) const {
  for (std::size_t i = w_.size(); i-- > 0;) {
    if (w_[i] != o.w_[i]) return w_[i] < o.w_[i];
  }
  return false;
}

std::size_t Bitset::hash() const {
  std::size_t h = 0x9e3779b97f4a7c15ull ^ n_;
  for (auto w : w_) h = (h ^ w) * 0x100000001b3ull;
  return h;
}

std::string LexValue::toBinaryString() const {
  std::string s(bits.size(), '0');
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits.test(i)) s[bits.size() - 1 - i] = '1';
  return s;
}

std::uint64_t LexValue::toUint64() const {
  if (bits.size() > 64) throw std::runtime_error("lex value exceeds 64 bits");
  std::uint64_t v = 0;
  bits.forEachSet([&](std::size_t i) { v |= std::uint64_t{1} << i; });
  return v;
}

}  // namespace symlift
