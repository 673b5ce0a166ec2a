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

// Desk-scale finiteness-notion constructions on explicit finite data: the
// fiber-union transform of a finite-to-one table, and the brute-force
// refutation of inexhaustibility for finite sets.

#ifndef ATOMSET_NOTIONS_HPP_
#define ATOMSET_NOTIONS_HPP_

#include <algorithm>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "atomset/atoms.hpp"

namespace atomset {

// A finite-to-one assignment of natural numbers to finite atom sets; fibers
// are finite because the table is.
class FiniteToOneTable {
 public:
  FiniteToOneTable() = default;
  explicit FiniteToOneTable(std::vector<std::pair<AtomSet, std::uint32_t>> entries)
      : entries_(std::move(entries)) {
    std::vector<AtomSet> domain;
    domain.reserve(entries_.size());
    for (const auto& [s, n] : entries_) domain.push_back(s);
    std::sort(domain.begin(), domain.end());
    if (std::adjacent_find(domain.begin(), domain.end()) != domain.end()) {
      throw PreconditionError("duplicate domain entries in the table");
    }
  }

  const std::vector<std::pair<AtomSet, std::uint32_t>>& entries() const {
    return entries_;
  }

 private:
  std::vector<std::pair<AtomSet, std::uint32_t>> entries_;
};

// For each value n, the union of the sets in its fiber. The sequence covers
// the table's domain: every domain entry is a subset of the union of the
// returned sets, which the caller can (and our tests do) check directly.
inline std::vector<AtomSet> wdstar_transform(const FiniteToOneTable& table) {
  std::map<std::uint32_t, AtomSet> unions;
  std::uint32_t max_value = 0;
  for (const auto& [s, n] : table.entries()) {
    auto [it, inserted] = unions.emplace(n, s);
    if (!inserted) it->second = it->second.union_with(s);
    max_value = std::max(max_value, n);
  }
  if (unions.empty()) return {};
  std::vector<AtomSet> out(max_value + 1);
  for (auto& [n, u] : unions) out[n] = std::move(u);
  return out;
}

// A two-piece covering of an n-element set into which the whole set cannot
// be injected on either side.
struct SplitWitness {
  AtomSet whole;
  AtomSet left;
  AtomSet right;
};

// No finite set with at least two elements is inexhaustible: some
// decomposition A = B ∪ C admits no injection of A into B or into C. Search
// all coverings of the first n atoms and return the first witness; for
// finite sets an injection into a part exists exactly when the part has at
// least n elements.
inline SplitWitness inexhaustible_finite_check(std::uint32_t n) {
  if (n < 2) {
    throw PreconditionError("inexhaustibility is only defined for more than one element");
  }
  AtomSet whole = AtomSet::first(n);
  // Each atom goes to the left piece, the right piece, or both.
  std::uint64_t combos = 1;
  for (std::uint32_t i = 0; i < n; ++i) combos *= 3;
  for (std::uint64_t code = 0; code < combos; ++code) {
    std::vector<Atom> left, right;
    std::uint64_t rest = code;
    for (std::uint32_t i = 0; i < n; ++i) {
      switch (rest % 3) {
        case 0:
          left.emplace_back(i);
          break;
        case 1:
          right.emplace_back(i);
          break;
        default:
          left.emplace_back(i);
          right.emplace_back(i);
          break;
      }
      rest /= 3;
    }
    if (left.size() < n && right.size() < n) {
      return {whole, AtomSet(std::move(left)), AtomSet(std::move(right))};
    }
  }
  throw Error("no witness decomposition found");  // unreachable for n >= 2
}

}  // namespace atomset

#endif  // ATOMSET_NOTIONS_HPP_
