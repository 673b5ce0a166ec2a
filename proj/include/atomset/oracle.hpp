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

// Brute-force ground truth. Everything here evaluates the defining predicates
// of the symbolic objects directly over the first N atoms and never calls the
// symbolic operations it is used to validate.

#ifndef ATOMSET_ORACLE_HPP_
#define ATOMSET_ORACLE_HPP_

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "atomset/atoms.hpp"
#include "atomset/definable_map.hpp"
#include "atomset/relations.hpp"
#include "atomset/subset_sets.hpp"
#include "atomset/tuple_set.hpp"

namespace atomset::oracle {

// The finite universe given by the first N atoms of the global supply.
struct Window {
  std::uint32_t size = 0;

  std::vector<Atom> atoms() const {
    std::vector<Atom> out;
    out.reserve(size);
    for (std::uint32_t i = 0; i < size; ++i) out.emplace_back(i);
    return out;
  }

  bool contains(const AtomSet& s) const {
    return s.empty() || s.atoms().back().index() < size;
  }
};

// All k-element subsets of the window, in lexicographic order.
inline std::vector<AtomSet> all_ksets(const Window& w, std::uint32_t k) {
  std::vector<AtomSet> out;
  if (k > w.size) return out;
  std::vector<std::uint32_t> idx(k);
  for (std::uint32_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    std::vector<Atom> atoms;
    atoms.reserve(k);
    for (std::uint32_t i : idx) atoms.emplace_back(i);
    out.emplace_back(std::move(atoms));
    std::uint32_t pos = k;
    while (pos > 0 && idx[pos - 1] == w.size - (k - pos) - 1) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::uint32_t i = pos; i < k; ++i) idx[i] = idx[i - 1] + 1;
  }
  return out;
}

// All subsets of the window of size at most max_size.
inline std::vector<AtomSet> all_small_sets(const Window& w, std::uint32_t max_size) {
  std::vector<AtomSet> out;
  for (std::uint32_t k = 0; k <= std::min(max_size, w.size); ++k) {
    std::vector<AtomSet> layer = all_ksets(w, k);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

// All k-tuples over the window, odometer order.
inline std::vector<std::vector<Atom>> all_tuples(const Window& w, std::uint32_t k) {
  std::vector<std::vector<Atom>> out;
  if (k > 0 && w.size == 0) return out;
  std::vector<std::uint32_t> idx(k, 0);
  while (true) {
    std::vector<Atom> tuple;
    tuple.reserve(k);
    for (std::uint32_t i : idx) tuple.emplace_back(i);
    out.push_back(std::move(tuple));
    std::uint32_t pos = k;
    while (pos > 0 && idx[pos - 1] + 1 == w.size) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::uint32_t i = pos; i < k; ++i) idx[i] = 0;
  }
  return out;
}

// Membership of a tuple in one cell: coordinates agree exactly when their
// codes agree, pinned coordinates equal their atom, fresh coordinates lie
// outside the whole context.
inline bool tuple_in_cell(const std::vector<Atom>& tuple, const Cell& cell,
                          const AtomSet& context) {
  const std::vector<CellCode>& codes = cell.codes();
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (codes[i].is_param()) {
      if (tuple[i] != codes[i].atom()) return false;
    } else if (context.contains(tuple[i])) {
      return false;
    }
    for (std::size_t j = i + 1; j < tuple.size(); ++j) {
      if ((tuple[i] == tuple[j]) != (codes[i] == codes[j])) return false;
    }
  }
  return true;
}

inline bool tuple_in(const TupleSet& x, const std::vector<Atom>& tuple) {
  for (const Cell& cell : x.cells()) {
    if (tuple_in_cell(tuple, cell, x.context())) return true;
  }
  return false;
}

// s contains p and avoids q.
inline bool kset_in_basis(const PQBasis& b, const AtomSet& s) {
  return s.size() == b.k() && s.contains_all(b.p()) && s.disjoint_with(b.q());
}

// s lies in some component: contains the trace, avoids the rest of the
// support.
inline bool kset_in_family(const KSubsetSet& c, const AtomSet& s) {
  if (s.size() != c.k()) return false;
  for (const AtomSet& p : c.traces()) {
    if (s.contains_all(p) && s.disjoint_with(c.support().minus(p))) return true;
  }
  return false;
}

// (s, t) realizes some orbit descriptor of r.
inline bool pair_in_relation(const Relation& r, const AtomSet& s, const AtomSet& t) {
  if (s.size() != r.n1() || t.size() != r.n2()) return false;
  for (const PairOrbit& orbit : r.orbits()) {
    if (s.intersect_with(r.support()) == orbit.left_trace &&
        t.intersect_with(r.support()) == orbit.right_trace &&
        s.intersect_with(t).minus(r.support()).size() == orbit.overlap) {
      return true;
    }
  }
  return false;
}

inline void require_window(const Window& w, const AtomSet& needed) {
  if (!w.contains(needed)) {
    throw PreconditionError("window does not contain the object's parameters");
  }
}

inline std::vector<std::vector<Atom>> enumerate(const TupleSet& x, const Window& w) {
  require_window(w, x.context());
  std::vector<std::vector<Atom>> out;
  for (const std::vector<Atom>& tuple : all_tuples(w, x.arity())) {
    if (tuple_in(x, tuple)) out.push_back(tuple);
  }
  return out;
}

inline std::vector<AtomSet> enumerate(const PQBasis& b, const Window& w) {
  require_window(w, b.p().union_with(b.q()));
  std::vector<AtomSet> out;
  for (const AtomSet& s : all_ksets(w, b.k())) {
    if (kset_in_basis(b, s)) out.push_back(s);
  }
  return out;
}

inline std::vector<AtomSet> enumerate(const KSubsetSet& c, const Window& w) {
  require_window(w, c.support());
  std::vector<AtomSet> out;
  for (const AtomSet& s : all_ksets(w, c.k())) {
    if (kset_in_family(c, s)) out.push_back(s);
  }
  return out;
}

inline std::vector<std::pair<AtomSet, AtomSet>> enumerate(const Relation& r,
                                                          const Window& w) {
  require_window(w, r.support());
  std::vector<std::pair<AtomSet, AtomSet>> out;
  for (const AtomSet& s : all_ksets(w, r.n1())) {
    for (const AtomSet& t : all_ksets(w, r.n2())) {
      if (pair_in_relation(r, s, t)) out.emplace_back(s, t);
    }
  }
  return out;
}

enum class Growth { kEmpty, kFinite, kGrowing };

struct GrowthResult {
  Growth kind = Growth::kEmpty;
  std::uint64_t count = 0;  // the stable count, when finite

  std::string to_string() const {
    switch (kind) {
      case Growth::kEmpty:
        return "empty";
      case Growth::kFinite:
        return "finite(" + std::to_string(count) + ")";
      default:
        return "growing";
    }
  }
};

namespace detail {

inline GrowthResult classify_counts(std::uint64_t c1, std::uint64_t c2, std::uint64_t c3) {
  if (c1 == 0 && c2 == 0 && c3 == 0) return {Growth::kEmpty, 0};
  if (c1 == c2 && c2 == c3) return {Growth::kFinite, c1};
  if (c1 < c2 && c2 < c3) return {Growth::kGrowing, 0};
  throw Error("window counts neither stable nor strictly increasing");
}

inline void require_threshold(std::uint32_t n1, std::uint32_t n2, std::uint32_t n3,
                              std::size_t support_size, std::uint32_t arity) {
  if (!(n1 < n2 && n2 < n3)) {
    throw PreconditionError("window sizes must be strictly increasing");
  }
  if (n1 < support_size + arity + 1) {
    throw PreconditionError("first window is below the stabilization threshold");
  }
}

}  // namespace detail

inline GrowthResult growth_classify(const TupleSet& x, std::uint32_t n1,
                                    std::uint32_t n2, std::uint32_t n3) {
  detail::require_threshold(n1, n2, n3, x.context().size(), x.arity());
  return detail::classify_counts(enumerate(x, {n1}).size(), enumerate(x, {n2}).size(),
                                 enumerate(x, {n3}).size());
}

inline GrowthResult growth_classify(const PQBasis& b, std::uint32_t n1,
                                    std::uint32_t n2, std::uint32_t n3) {
  detail::require_threshold(n1, n2, n3, b.p().union_with(b.q()).size(), b.k());
  return detail::classify_counts(enumerate(b, {n1}).size(), enumerate(b, {n2}).size(),
                                 enumerate(b, {n3}).size());
}

inline GrowthResult growth_classify(const KSubsetSet& c, std::uint32_t n1,
                                    std::uint32_t n2, std::uint32_t n3) {
  detail::require_threshold(n1, n2, n3, c.support().size(), c.k());
  return detail::classify_counts(enumerate(c, {n1}).size(), enumerate(c, {n2}).size(),
                                 enumerate(c, {n3}).size());
}

inline GrowthResult growth_classify(const Relation& r, std::uint32_t n1,
                                    std::uint32_t n2, std::uint32_t n3) {
  detail::require_threshold(n1, n2, n3, r.support().size(), r.n1() + r.n2());
  return detail::classify_counts(enumerate(r, {n1}).size(), enumerate(r, {n2}).size(),
                                 enumerate(r, {n3}).size());
}

struct MapCheckResult {
  bool surjective = false;
  bool injective = false;
  std::optional<AtomSet> missing;  // a window set with no preimage
  std::optional<std::pair<AtomSet, AtomSet>> collision;
};

// Brute force over every window set of size at most the rank: applies the
// matching rule directly and checks image coverage and collisions.
inline MapCheckResult oracle_map_check(const DefinableMap& f, const Window& w) {
  require_window(w, f.params());
  if (w.size < f.params().size() + f.rank() + 2) {
    throw PreconditionError("window too small for a faithful map check");
  }
  std::vector<AtomSet> universe = all_small_sets(w, f.rank());
  MapCheckResult result;
  result.surjective = true;
  result.injective = true;
  std::map<AtomSet, AtomSet> image_to_input;
  std::vector<AtomSet> images;
  for (const AtomSet& s : universe) {
    const MapRule& rule =
        f.rules().at({s.intersect_with(f.params()), static_cast<std::uint32_t>(s.size())});
    AtomSet image = rule.out_params;
    if (rule.include_fresh) image = image.union_with(s.minus(f.params()));
    auto [it, inserted] = image_to_input.emplace(image, s);
    if (!inserted && result.injective) {
      result.injective = false;
      result.collision = std::make_pair(it->second, s);
    }
    images.push_back(std::move(image));
  }
  std::sort(images.begin(), images.end());
  for (const AtomSet& s : universe) {
    if (!std::binary_search(images.begin(), images.end(), s)) {
      result.surjective = false;
      result.missing = s;
      break;
    }
  }
  return result;
}

}  // namespace atomset::oracle

#endif  // ATOMSET_ORACLE_HPP_
