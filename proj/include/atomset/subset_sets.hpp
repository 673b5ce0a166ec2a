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

#ifndef ATOMSET_SUBSET_SETS_HPP_
#define ATOMSET_SUBSET_SETS_HPP_

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "atomset/atoms.hpp"
#include "atomset/card.hpp"
#include "atomset/tuple_set.hpp"

namespace atomset {

// The basis set of k-element atom sets containing p and avoiding q.
// Overlapping p and q is permitted at construction; classification treats
// such a basis as a definable empty set.
class PQBasis {
 public:
  PQBasis(AtomSet p, AtomSet q, std::uint32_t k)
      : p_(std::move(p)), q_(std::move(q)), k_(k) {}

  const AtomSet& p() const { return p_; }
  const AtomSet& q() const { return q_; }
  std::uint32_t k() const { return k_; }

  friend auto operator<=>(const PQBasis&, const PQBasis&) = default;

 private:
  AtomSet p_;
  AtomSet q_;
  std::uint32_t k_;
};

inline bool pq_is_empty(const PQBasis& b) {
  return !b.p().disjoint_with(b.q()) || b.p().size() > b.k();
}

inline PQBasis pq_intersect(const PQBasis& a, const PQBasis& b) {
  if (a.k() != b.k()) throw PreconditionError("basis arity mismatch");
  return PQBasis(a.p().union_with(b.p()), a.q().union_with(b.q()), a.k());
}

// Empty | Finite(1) | Infinite, by the shape of (p, q, k) alone.
inline CardClass pq_card(const PQBasis& b) {
  if (pq_is_empty(b)) return CardClass::Empty();
  if (b.p().size() == b.k()) return CardClass::Finite(1);
  return CardClass::Infinite();
}

inline std::uint64_t pq_count_window(const PQBasis& b, std::uint32_t window) {
  for (Atom a : b.p().union_with(b.q())) {
    if (a.index() >= window) {
      throw PreconditionError("window does not contain the basis parameters");
    }
  }
  if (pq_is_empty(b)) return 0;
  std::uint64_t pool = window - b.p().union_with(b.q()).size();
  return binomial(pool, b.k() - b.p().size());
}

// Two members of an infinite basis whose union has exactly k+1 atoms, via the
// lowest-unused fresh policy.
inline std::pair<AtomSet, AtomSet> pq_witness_pair(const PQBasis& b) {
  if (!pq_card(b).is_infinite()) {
    throw PreconditionError("witness pair requires an infinite basis");
  }
  std::size_t need = b.k() - b.p().size();
  std::vector<Atom> pool = fresh_atoms(need + 1, b.p().union_with(b.q()));
  AtomSet first = b.p().union_with(
      AtomSet(std::vector<Atom>(pool.begin(), pool.begin() + need)));
  std::vector<Atom> second_tail(pool.begin(), pool.begin() + need - 1);
  second_tail.push_back(pool.back());
  AtomSet second = b.p().union_with(AtomSet(std::move(second_tail)));
  return {first, second};
}

// A definable family of k-element atom sets in trace normal form: a support S
// and the set of traces p (= s ∩ S for its members). Each trace p stands for
// the basis set with positive part p and negative part S \ p; distinct traces
// give disjoint components, and traces larger than k are dropped as empty.
class KSubsetSet {
 public:
  KSubsetSet(std::uint32_t k, AtomSet support, std::vector<AtomSet> traces)
      : k_(k), support_(std::move(support)) {
    for (AtomSet& trace : traces) {
      if (!support_.contains_all(trace)) {
        throw PreconditionError("trace not contained in the support");
      }
      if (trace.size() > k_) continue;
      traces_.push_back(std::move(trace));
    }
    std::sort(traces_.begin(), traces_.end());
    traces_.erase(std::unique(traces_.begin(), traces_.end()), traces_.end());
  }

  static KSubsetSet empty(std::uint32_t k) { return KSubsetSet(k, {}, {}); }

  static KSubsetSet full(std::uint32_t k, AtomSet support = {}) {
    std::vector<AtomSet> traces = all_subsets(support);
    return KSubsetSet(k, std::move(support), std::move(traces));
  }

  // All subsets of s, in canonical sorted order.
  static std::vector<AtomSet> all_subsets(const AtomSet& s) {
    std::vector<AtomSet> out;
    const std::vector<Atom>& atoms = s.atoms();
    out.reserve(1u << atoms.size());
    for (std::uint64_t mask = 0; mask < (1ull << atoms.size()); ++mask) {
      std::vector<Atom> subset;
      for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (mask & (1ull << i)) subset.push_back(atoms[i]);
      }
      out.emplace_back(std::move(subset));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::uint32_t k() const { return k_; }
  const AtomSet& support() const { return support_; }
  const std::vector<AtomSet>& traces() const { return traces_; }

  bool has_trace(const AtomSet& p) const {
    return std::binary_search(traces_.begin(), traces_.end(), p);
  }

  // The (p, q) pairs of the normal form, q = support \ p.
  std::vector<std::pair<AtomSet, AtomSet>> pairs() const {
    std::vector<std::pair<AtomSet, AtomSet>> out;
    out.reserve(traces_.size());
    for (const AtomSet& p : traces_) out.emplace_back(p, support_.minus(p));
    return out;
  }

  friend bool operator==(const KSubsetSet&, const KSubsetSet&) = default;

 private:
  std::uint32_t k_;
  AtomSet support_;
  std::vector<AtomSet> traces_;
};

// A single basis set in trace normal form over p ∪ q.
inline KSubsetSet pq_to_kss(const PQBasis& b) {
  AtomSet support = b.p().union_with(b.q());
  if (pq_is_empty(b)) return KSubsetSet(b.k(), std::move(support), {});
  return KSubsetSet(b.k(), std::move(support), {b.p()});
}

// Refines the traces to a larger support; extension unchanged.
inline KSubsetSet kss_rebase(const KSubsetSet& c, const AtomSet& new_support) {
  if (!new_support.contains_all(c.support())) {
    throw PreconditionError("rebase target must contain the current support");
  }
  AtomSet delta = new_support.minus(c.support());
  if (delta.empty()) return KSubsetSet(c.k(), new_support, c.traces());
  std::vector<AtomSet> traces;
  std::vector<AtomSet> extensions = KSubsetSet::all_subsets(delta);
  for (const AtomSet& p : c.traces()) {
    for (const AtomSet& extra : extensions) {
      traces.push_back(p.union_with(extra));
    }
  }
  return KSubsetSet(c.k(), new_support, std::move(traces));
}

inline KSubsetSet kss_union(const KSubsetSet& a, const KSubsetSet& b) {
  if (a.k() != b.k()) throw PreconditionError("arity mismatch");
  AtomSet support = a.support().union_with(b.support());
  KSubsetSet ar = kss_rebase(a, support);
  KSubsetSet br = kss_rebase(b, support);
  std::vector<AtomSet> traces = ar.traces();
  traces.insert(traces.end(), br.traces().begin(), br.traces().end());
  return KSubsetSet(a.k(), std::move(support), std::move(traces));
}

inline KSubsetSet kss_intersect(const KSubsetSet& a, const KSubsetSet& b) {
  if (a.k() != b.k()) throw PreconditionError("arity mismatch");
  AtomSet support = a.support().union_with(b.support());
  KSubsetSet ar = kss_rebase(a, support);
  KSubsetSet br = kss_rebase(b, support);
  std::vector<AtomSet> traces;
  std::set_intersection(ar.traces().begin(), ar.traces().end(),
                        br.traces().begin(), br.traces().end(),
                        std::back_inserter(traces));
  return KSubsetSet(a.k(), std::move(support), std::move(traces));
}

inline KSubsetSet kss_complement(const KSubsetSet& c) {
  std::vector<AtomSet> universe = KSubsetSet::all_subsets(c.support());
  std::vector<AtomSet> traces;
  std::set_difference(universe.begin(), universe.end(), c.traces().begin(),
                      c.traces().end(), std::back_inserter(traces));
  return KSubsetSet(c.k(), c.support(), std::move(traces));
}

// Infinite iff some component has |p| < k; otherwise one set per full trace.
inline CardClass kss_card(const KSubsetSet& c) {
  std::uint64_t singletons = 0;
  for (const AtomSet& p : c.traces()) {
    if (p.size() < c.k()) return CardClass::Infinite();
    ++singletons;
  }
  return CardClass::Finite(singletons);
}

inline std::uint64_t kss_count_window(const KSubsetSet& c, std::uint32_t window) {
  for (Atom a : c.support()) {
    if (a.index() >= window) {
      throw PreconditionError("window does not contain the support");
    }
  }
  std::uint64_t pool = window - c.support().size();
  std::uint64_t total = 0;
  for (const AtomSet& p : c.traces()) total += binomial(pool, c.k() - p.size());
  return total;
}

inline KSubsetSet kss_apply_perm(const KSubsetSet& c, const FinitePermutation& sigma) {
  std::vector<AtomSet> traces;
  traces.reserve(c.traces().size());
  for (const AtomSet& p : c.traces()) traces.push_back(sigma.apply(p));
  return KSubsetSet(c.k(), sigma.apply(c.support()), std::move(traces));
}

inline bool kss_extensionally_equal(const KSubsetSet& a, const KSubsetSet& b) {
  if (a.k() != b.k()) return false;
  AtomSet support = a.support().union_with(b.support());
  return kss_rebase(a, support).traces() == kss_rebase(b, support).traces();
}

inline AtomSet kss_support(const KSubsetSet& c) {
  std::vector<Atom> needed;
  for (Atom a : c.support()) {
    Atom b = fresh_atom(c.support());
    FinitePermutation swap = FinitePermutation::transposition(a, b);
    if (!kss_extensionally_equal(c, kss_apply_perm(c, swap))) needed.push_back(a);
  }
  return AtomSet(std::move(needed));
}

// The normal form: the same family re-expressed over exactly its minimal
// support, so the trace set is the canonical H.
inline KSubsetSet kss_normal_form(const KSubsetSet& c) {
  AtomSet support = kss_support(c);
  if (support == c.support()) return c;
  AtomSet dropped = c.support().minus(support);
  std::vector<AtomSet> extensions = KSubsetSet::all_subsets(dropped);
  std::vector<AtomSet> kept;
  for (const AtomSet& p : KSubsetSet::all_subsets(support)) {
    if (p.size() > c.k()) continue;
    bool all_in = true;
    for (const AtomSet& extra : extensions) {
      AtomSet refined = p.union_with(extra);
      if (refined.size() > c.k()) continue;  // empty component either way
      if (!c.has_trace(refined)) {
        all_in = false;
        break;
      }
    }
    if (all_in) kept.push_back(p);
  }
  KSubsetSet result(c.k(), support, std::move(kept));
  if (!kss_extensionally_equal(result, c)) {
    throw Error("normal form failed to preserve the extension");
  }
  return result;
}

// The canonical representation of the empty family carries no support; any
// nonempty trace family is already reconstructible from its rendering.
inline KSubsetSet kss_tighten(const KSubsetSet& c) {
  if (c.traces().empty()) return KSubsetSet::empty(c.k());
  return c;
}

// The symmetrization: all k-tuples of pairwise distinct coordinates whose
// underlying set lies in the family, as a TupleSet over the same support.
inline TupleSet kss_to_tuples(const KSubsetSet& c) {
  std::vector<Cell> cells;
  for (const AtomSet& p : c.traces()) {
    // Place the atoms of p injectively among the k coordinates; remaining
    // coordinates are pairwise distinct fresh blocks.
    std::vector<std::optional<Atom>> slot(c.k());
    std::function<void(std::size_t)> place = [&](std::size_t i) {
      if (i == p.size()) {
        std::vector<CellCode> codes;
        std::uint32_t next_fresh = 1;
        for (std::uint32_t pos = 0; pos < c.k(); ++pos) {
          codes.push_back(slot[pos].has_value() ? CellCode::param(*slot[pos])
                                                : CellCode::fresh(next_fresh++));
        }
        cells.emplace_back(std::move(codes));
        return;
      }
      for (std::uint32_t pos = 0; pos < c.k(); ++pos) {
        if (slot[pos].has_value()) continue;
        slot[pos] = p.atoms()[i];
        place(i + 1);
        slot[pos] = std::nullopt;
      }
    };
    place(0);
  }
  return TupleSet(c.k(), c.support(), std::move(cells));
}

// ---------------------------------------------------------------------------
// The explicit bijection between definable subsets of A (arity-1 sets, which
// are always finite or cofinite) and finite sets over A extended by one
// adjoined element `star`.

struct StarSet {
  AtomSet atoms;
  bool has_star = false;

  friend auto operator<=>(const StarSet&, const StarSet&) = default;
};

inline AtomSet ts1_finite_elements(const TupleSet& x) {
  std::vector<Atom> elems;
  for (const Cell& cell : x.cells()) elems.push_back(cell.codes()[0].atom());
  return AtomSet(std::move(elems));
}

// Finite sets map to their elements; cofinite sets map to the complement's
// elements plus star.
inline StarSet powerset_to_finsets(const TupleSet& x) {
  if (x.arity() != 1) throw PreconditionError("A+1 encoding requires arity 1");
  if (ts_card(x).is_finite()) return StarSet{ts1_finite_elements(x), false};
  TupleSet complement = ts_complement(x);
  if (!ts_card(complement).is_finite()) {
    throw Error("arity-1 set neither finite nor cofinite");
  }
  return StarSet{ts1_finite_elements(complement), true};
}

inline TupleSet finsets_to_powerset(const StarSet& s) {
  std::vector<Cell> cells;
  for (Atom a : s.atoms) cells.emplace_back(std::vector<CellCode>{CellCode::param(a)});
  TupleSet listed(1, s.atoms, std::move(cells));
  return s.has_star ? ts_complement(listed) : listed;
}

// ---------------------------------------------------------------------------
// Exhaustive dichotomy check at arity 1: every definable family of 1-element
// sets over a support of the given size is finite or has finite complement.

struct AmorphousReport {
  std::uint64_t sets_checked = 0;
  std::uint64_t finite_sets = 0;
  std::uint64_t cofinite_sets = 0;
  bool all_pass = false;
};

inline AmorphousReport verify_amorphous(std::uint32_t max_support) {
  AmorphousReport report;
  report.all_pass = true;
  for (std::uint32_t m = 0; m <= max_support; ++m) {
    AtomSet support = AtomSet::first(m);
    std::vector<AtomSet> candidates;
    for (const AtomSet& p : KSubsetSet::all_subsets(support)) {
      if (p.size() <= 1) candidates.push_back(p);
    }
    for (std::uint64_t mask = 0; mask < (1ull << candidates.size()); ++mask) {
      std::vector<AtomSet> traces;
      for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (mask & (1ull << i)) traces.push_back(candidates[i]);
      }
      KSubsetSet c(1, support, std::move(traces));
      bool finite = kss_card(c).is_finite();
      bool cofinite = kss_card(kss_complement(c)).is_finite();
      ++report.sets_checked;
      if (finite) ++report.finite_sets;
      if (cofinite) ++report.cofinite_sets;
      if (!finite && !cofinite) report.all_pass = false;
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// A rank-bounded definable subfamily of the finite sets: one trace family
// per occurring size.

class GradedFamily {
 public:
  GradedFamily() = default;
  explicit GradedFamily(std::map<std::uint32_t, KSubsetSet> grades)
      : grades_(std::move(grades)) {
    for (const auto& [k, c] : grades_) {
      if (c.k() != k) throw PreconditionError("grade arity mismatch");
    }
  }

  const std::map<std::uint32_t, KSubsetSet>& grades() const { return grades_; }

 private:
  std::map<std::uint32_t, KSubsetSet> grades_;
};

// The least size whose grade is infinite; absent when every grade is finite
// (and then the whole family is finite).
inline std::optional<std::uint32_t> gf_infinite_grade(const GradedFamily& family) {
  for (const auto& [k, c] : family.grades()) {
    if (kss_card(c).is_infinite()) return k;
  }
  return std::nullopt;
}

inline CardClass gf_card(const GradedFamily& family) {
  std::uint64_t total = 0;
  for (const auto& [k, c] : family.grades()) {
    CardClass card = kss_card(c);
    if (card.is_infinite()) return CardClass::Infinite();
    total += card.finite_count();
  }
  return CardClass::Finite(total);
}

}  // namespace atomset

#endif  // ATOMSET_SUBSET_SETS_HPP_
