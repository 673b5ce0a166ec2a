// Copyright 2026 The Atomset Authors
//
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

#ifndef ATOMSET_CARD_HPP_
#define ATOMSET_CARD_HPP_

#include <cstdint>
#include <string>

#include "atomset/atoms.hpp"

namespace atomset {

// Exact cardinality classification of a definable set: empty, a known finite
// count, or infinite. Finite(0) normalizes to Empty.
class CardClass {
 public:
  static CardClass Empty() { return CardClass(Kind::kEmpty, 0); }
  static CardClass Finite(std::uint64_t n) {
    return n == 0 ? Empty() : CardClass(Kind::kFinite, n);
  }
  static CardClass Infinite() { return CardClass(Kind::kInfinite, 0); }

  bool is_empty() const { return kind_ == Kind::kEmpty; }
  bool is_finite() const { return kind_ != Kind::kInfinite; }
  bool is_strictly_finite() const { return kind_ == Kind::kFinite; }
  bool is_infinite() const { return kind_ == Kind::kInfinite; }

  std::uint64_t finite_count() const {
    if (is_infinite()) throw PreconditionError("finite_count of an infinite set");
    return count_;
  }

  std::string to_string() const {
    switch (kind_) {
      case Kind::kEmpty:
        return "empty";
      case Kind::kFinite:
        return "finite(" + std::to_string(count_) + ")";
      default:
        return "infinite";
    }
  }

  friend bool operator==(const CardClass&, const CardClass&) = default;

 private:
  enum class Kind { kEmpty, kFinite, kInfinite };
  CardClass(Kind kind, std::uint64_t count) : kind_(kind), count_(count) {}

  Kind kind_;
  std::uint64_t count_;
};

// n(n-1)...(n-k+1); 1 for k == 0, 0 for k > n. Exact, sizes stay desk-scale.
inline std::uint64_t falling_factorial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < k; ++i) out *= n - i;
  return out;
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t out = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    out = out * (n - k + i) / i;
  }
  return out;
}

}  // namespace atomset

#endif  // ATOMSET_CARD_HPP_
