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

// Seeded generators for randomized property suites. All draws go through
// mt19937 directly so identical seeds give identical objects on every
// platform.

#ifndef ATOMSET_GENERATORS_HPP_
#define ATOMSET_GENERATORS_HPP_

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "atomset/definable_map.hpp"
#include "atomset/notions.hpp"
#include "atomset/relations.hpp"
#include "atomset/subset_sets.hpp"
#include "atomset/tuple_set.hpp"

namespace atomset {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(static_cast<std::uint32_t>(seed)) {}

  // Uniform-ish draw in [0, n); n must be positive.
  std::uint32_t below(std::uint32_t n) { return engine_() % n; }

  bool flip() { return (engine_() & 1u) != 0; }

 private:
  std::mt19937 engine_;
};

inline AtomSet random_subset(Rng& rng, const AtomSet& pool) {
  std::vector<Atom> out;
  for (Atom a : pool) {
    if (rng.flip()) out.push_back(a);
  }
  return AtomSet(std::move(out));
}

inline TupleSet random_tuple_set(Rng& rng, std::uint32_t max_k,
                                 std::uint32_t max_support) {
  std::uint32_t k = rng.below(max_k + 1);
  AtomSet context = AtomSet::first(rng.below(max_support + 1));
  std::vector<Cell> cells;
  for (const Cell& cell : all_cells(k, context)) {
    if (rng.flip()) cells.push_back(cell);
  }
  return ts_tighten(TupleSet(k, std::move(context), std::move(cells)));
}

inline PQBasis random_basis(Rng& rng, std::uint32_t max_part, std::uint32_t max_k) {
  std::uint32_t np = rng.below(max_part + 1);
  std::uint32_t nq = rng.below(max_part + 1);
  std::uint32_t overlap = rng.flip() ? 0 : rng.below(std::min(np, nq) + 1);
  std::vector<Atom> p, q;
  for (std::uint32_t i = 0; i < np; ++i) p.emplace_back(i);
  for (std::uint32_t i = 0; i < nq; ++i) q.emplace_back(np - overlap + i);
  return PQBasis(AtomSet(std::move(p)), AtomSet(std::move(q)), rng.below(max_k + 1));
}

inline PQBasis random_infinite_basis(Rng& rng, std::uint32_t max_part,
                                     std::uint32_t max_k) {
  while (true) {
    PQBasis b = random_basis(rng, max_part, max_k);
    if (pq_card(b).is_infinite()) return b;
  }
}

inline KSubsetSet random_family(Rng& rng, std::uint32_t max_k,
                                std::uint32_t max_support) {
  std::uint32_t k = rng.below(max_k + 1);
  AtomSet support = AtomSet::first(rng.below(max_support + 1));
  std::vector<AtomSet> traces;
  for (const AtomSet& p : KSubsetSet::all_subsets(support)) {
    if (p.size() <= k && rng.flip()) traces.push_back(p);
  }
  return kss_tighten(KSubsetSet(k, std::move(support), std::move(traces)));
}

inline KSubsetSet random_family_of_arity(Rng& rng, std::uint32_t k,
                                         std::uint32_t max_support = 2) {
  AtomSet support = AtomSet::first(rng.below(max_support + 1));
  std::vector<AtomSet> traces;
  for (const AtomSet& p : KSubsetSet::all_subsets(support)) {
    if (p.size() <= k && rng.flip()) traces.push_back(p);
  }
  return KSubsetSet(k, std::move(support), std::move(traces));
}

// Every orbit descriptor over the support with the given arities; only the
// disjoint ones (no overlap inside or outside the support) when requested.
inline std::vector<PairOrbit> all_pair_orbits(const AtomSet& support, std::uint32_t n1,
                                              std::uint32_t n2, bool disjoint_only) {
  std::vector<PairOrbit> out;
  for (const AtomSet& ps : KSubsetSet::all_subsets(support)) {
    if (ps.size() > n1) continue;
    for (const AtomSet& pt : KSubsetSet::all_subsets(support)) {
      if (pt.size() > n2) continue;
      if (disjoint_only && !ps.disjoint_with(pt)) continue;
      std::uint32_t max_overlap =
          std::min(n1 - static_cast<std::uint32_t>(ps.size()),
                   n2 - static_cast<std::uint32_t>(pt.size()));
      std::uint32_t top = disjoint_only ? 0 : max_overlap;
      for (std::uint32_t m = 0; m <= top; ++m) out.push_back({ps, pt, m});
    }
  }
  return out;
}

inline Relation random_relation(Rng& rng, std::uint32_t max_support,
                                std::uint32_t max_n, bool disjoint_only) {
  while (true) {
    std::uint32_t n1 = 1 + rng.below(max_n);
    std::uint32_t n2 = 1 + rng.below(max_n);
    AtomSet support = AtomSet::first(rng.below(max_support + 1));
    std::vector<PairOrbit> chosen;
    for (const PairOrbit& orbit : all_pair_orbits(support, n1, n2, disjoint_only)) {
      if (rng.flip()) chosen.push_back(orbit);
    }
    if (chosen.empty()) continue;
    return Relation(n1, n2, std::move(support), std::move(chosen));
  }
}

inline Relation random_infinite_disjoint_relation(Rng& rng, std::uint32_t max_support,
                                                  std::uint32_t max_n) {
  while (true) {
    Relation r = random_relation(rng, max_support, max_n, /*disjoint_only=*/true);
    if (rel_card(r).is_infinite()) return r;
  }
}

// All rule choices admissible for one input orbit under the rank bound.
inline std::vector<MapRule> admissible_rules(const AtomSet& params,
                                             const OrbitDescriptor& d,
                                             std::uint32_t rank) {
  std::vector<MapRule> out;
  for (const AtomSet& outp : KSubsetSet::all_subsets(params)) {
    for (bool fresh : {false, true}) {
      if (fresh && d.free_part() == 0) continue;  // normalizes to fresh=no
      std::uint32_t size = static_cast<std::uint32_t>(outp.size()) +
                           (fresh ? d.free_part() : 0);
      if (size <= rank) out.push_back({outp, fresh});
    }
  }
  return out;
}

inline DefinableMap random_map(Rng& rng, const AtomSet& params, std::uint32_t rank) {
  std::map<OrbitDescriptor, MapRule> rules;
  for (const OrbitDescriptor& d : DefinableMap::all_descriptors(params, rank)) {
    std::vector<MapRule> options = admissible_rules(params, d, rank);
    rules[d] = options[rng.below(static_cast<std::uint32_t>(options.size()))];
  }
  return DefinableMap(params, rank, std::move(rules));
}

// A surjective map: input orbits are permuted within each class of equal
// free-part size, which every rule table can realize.
inline DefinableMap random_orbit_permutation_map(Rng& rng, const AtomSet& params,
                                                 std::uint32_t rank) {
  std::map<std::uint32_t, std::vector<OrbitDescriptor>> classes;
  for (const OrbitDescriptor& d : DefinableMap::all_descriptors(params, rank)) {
    classes[d.free_part()].push_back(d);
  }
  std::map<OrbitDescriptor, MapRule> rules;
  for (auto& [free, members] : classes) {
    std::vector<OrbitDescriptor> targets = members;
    for (std::size_t i = targets.size(); i > 1; --i) {
      std::swap(targets[i - 1], targets[rng.below(static_cast<std::uint32_t>(i))]);
    }
    for (std::size_t i = 0; i < members.size(); ++i) {
      rules[members[i]] = MapRule{targets[i].trace, free > 0};
    }
  }
  return DefinableMap(params, rank, std::move(rules));
}

inline FiniteToOneTable random_finite_to_one_table(Rng& rng, std::uint32_t max_entries,
                                                   std::uint32_t pool_size,
                                                   std::uint32_t max_value) {
  AtomSet pool = AtomSet::first(pool_size);
  std::vector<std::pair<AtomSet, std::uint32_t>> entries;
  std::vector<AtomSet> used;
  std::uint32_t wanted = rng.below(max_entries + 1);
  for (std::uint32_t i = 0; i < wanted; ++i) {
    AtomSet domain = random_subset(rng, pool);
    if (std::find(used.begin(), used.end(), domain) != used.end()) continue;
    used.push_back(domain);
    entries.emplace_back(std::move(domain), rng.below(max_value + 1));
  }
  return FiniteToOneTable(std::move(entries));
}

}  // namespace atomset

#endif  // ATOMSET_GENERATORS_HPP_
