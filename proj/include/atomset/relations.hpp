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

#ifndef ATOMSET_RELATIONS_HPP_
#define ATOMSET_RELATIONS_HPP_

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "atomset/atoms.hpp"
#include "atomset/card.hpp"
#include "atomset/subset_sets.hpp"

namespace atomset {

// One orbit of pairs (s, t) of atom sets under the permutations fixing the
// relation's support S pointwise: s meets S in exactly `left_trace`, t meets
// S in exactly `right_trace`, and s and t share exactly `overlap` atoms
// outside S.
struct PairOrbit {
  AtomSet left_trace;   // s ∩ S
  AtomSet right_trace;  // t ∩ S
  std::uint32_t overlap = 0;

  friend auto operator<=>(const PairOrbit&, const PairOrbit&) = default;
};

// A definable relation between n1-element and n2-element atom sets, stored
// as a disjoint union of pair orbits over a common support.
class Relation {
 public:
  Relation(std::uint32_t n1, std::uint32_t n2, AtomSet support,
           std::vector<PairOrbit> orbits)
      : n1_(n1), n2_(n2), support_(std::move(support)), orbits_(std::move(orbits)) {
    for (const PairOrbit& orbit : orbits_) {
      if (!support_.contains_all(orbit.left_trace) ||
          !support_.contains_all(orbit.right_trace)) {
        throw PreconditionError("orbit trace not contained in the support");
      }
      if (orbit.left_trace.size() > n1_ || orbit.right_trace.size() > n2_) {
        throw PreconditionError("orbit trace larger than the arity");
      }
      std::uint32_t left_free = n1_ - static_cast<std::uint32_t>(orbit.left_trace.size());
      std::uint32_t right_free = n2_ - static_cast<std::uint32_t>(orbit.right_trace.size());
      if (orbit.overlap > std::min(left_free, right_free)) {
        throw PreconditionError("orbit overlap exceeds the free parts");
      }
    }
    std::sort(orbits_.begin(), orbits_.end());
    orbits_.erase(std::unique(orbits_.begin(), orbits_.end()), orbits_.end());
  }

  std::uint32_t n1() const { return n1_; }
  std::uint32_t n2() const { return n2_; }
  const AtomSet& support() const { return support_; }
  const std::vector<PairOrbit>& orbits() const { return orbits_; }

  friend bool operator==(const Relation&, const Relation&) = default;

 private:
  std::uint32_t n1_;
  std::uint32_t n2_;
  AtomSet support_;
  std::vector<PairOrbit> orbits_;
};

inline bool orbit_is_singleton(const Relation& r, const PairOrbit& orbit) {
  return orbit.left_trace.size() == r.n1() && orbit.right_trace.size() == r.n2();
}

inline CardClass rel_card(const Relation& r) {
  std::uint64_t singletons = 0;
  for (const PairOrbit& orbit : r.orbits()) {
    if (!orbit_is_singleton(r, orbit)) return CardClass::Infinite();
    ++singletons;
  }
  return CardClass::Finite(singletons);
}

inline std::uint64_t rel_count_window(const Relation& r, std::uint32_t window) {
  for (Atom a : r.support()) {
    if (a.index() >= window) {
      throw PreconditionError("window does not contain the support");
    }
  }
  std::uint64_t pool = window - r.support().size();
  std::uint64_t total = 0;
  for (const PairOrbit& orbit : r.orbits()) {
    std::uint64_t left_free = r.n1() - orbit.left_trace.size();
    std::uint64_t right_free = r.n2() - orbit.right_trace.size();
    std::uint64_t m = orbit.overlap;
    // Shared outside atoms, then the left-only and right-only outside atoms.
    total += binomial(pool, m) * binomial(pool - m, left_free - m) *
             binomial(pool - left_free, right_free - m);
  }
  return total;
}

inline Relation rel_rebase(const Relation& r, const AtomSet& new_support) {
  if (!new_support.contains_all(r.support())) {
    throw PreconditionError("rebase target must contain the current support");
  }
  std::vector<PairOrbit> orbits = r.orbits();
  AtomSet support = r.support();
  for (Atom b : new_support.minus(r.support())) {
    std::vector<PairOrbit> next;
    std::uint32_t n1 = r.n1(), n2 = r.n2();
    for (const PairOrbit& orbit : orbits) {
      std::uint32_t left_free = n1 - static_cast<std::uint32_t>(orbit.left_trace.size());
      std::uint32_t right_free = n2 - static_cast<std::uint32_t>(orbit.right_trace.size());
      // b in neither side.
      next.push_back(orbit);
      // b on the left only.
      if (left_free >= 1 && orbit.overlap <= std::min(left_free - 1, right_free)) {
        next.push_back({orbit.left_trace.with(b), orbit.right_trace, orbit.overlap});
      }
      // b on the right only.
      if (right_free >= 1 && orbit.overlap <= std::min(left_free, right_free - 1)) {
        next.push_back({orbit.left_trace, orbit.right_trace.with(b), orbit.overlap});
      }
      // b in the shared outside part.
      if (orbit.overlap >= 1) {
        next.push_back({orbit.left_trace.with(b), orbit.right_trace.with(b),
                        orbit.overlap - 1});
      }
    }
    support = support.with(b);
    orbits = std::move(next);
  }
  return Relation(r.n1(), r.n2(), new_support, std::move(orbits));
}

inline Relation rel_apply_perm(const Relation& r, const FinitePermutation& sigma) {
  std::vector<PairOrbit> orbits;
  orbits.reserve(r.orbits().size());
  for (const PairOrbit& orbit : r.orbits()) {
    orbits.push_back({sigma.apply(orbit.left_trace), sigma.apply(orbit.right_trace),
                      orbit.overlap});
  }
  return Relation(r.n1(), r.n2(), sigma.apply(r.support()), std::move(orbits));
}

inline bool rel_extensionally_equal(const Relation& a, const Relation& b) {
  if (a.n1() != b.n1() || a.n2() != b.n2()) return false;
  AtomSet support = a.support().union_with(b.support());
  return rel_rebase(a, support).orbits() == rel_rebase(b, support).orbits();
}

inline AtomSet rel_support(const Relation& r) {
  std::vector<Atom> needed;
  for (Atom a : r.support()) {
    Atom b = fresh_atom(r.support());
    FinitePermutation swap = FinitePermutation::transposition(a, b);
    if (!rel_extensionally_equal(r, rel_apply_perm(r, swap))) needed.push_back(a);
  }
  return AtomSet(std::move(needed));
}

inline Relation rel_normal_form(const Relation& r) {
  AtomSet support = rel_support(r);
  if (support == r.support()) return r;
  std::vector<PairOrbit> kept;
  for (const PairOrbit& orbit : r.orbits()) {
    if (support.contains_all(orbit.left_trace) &&
        support.contains_all(orbit.right_trace)) {
      // Keep only the representative that mentions no dropped atom; its
      // rebase regenerates the full splitting.
      kept.push_back(orbit);
    }
  }
  Relation candidate(r.n1(), r.n2(), support, std::move(kept));
  if (!rel_extensionally_equal(candidate, r)) {
    throw Error("relation support minimization failed to preserve the extension");
  }
  return candidate;
}

// Membership of an explicit pair, straight from the orbit descriptors.
inline bool rel_contains_pair(const Relation& r, const AtomSet& s, const AtomSet& t) {
  if (s.size() != r.n1() || t.size() != r.n2()) return false;
  PairOrbit probe{s.intersect_with(r.support()), t.intersect_with(r.support()),
                  static_cast<std::uint32_t>(
                      s.intersect_with(t).minus(r.support()).size())};
  return std::binary_search(r.orbits().begin(), r.orbits().end(), probe);
}

// The right fiber {t : (s, t) in R} as a trace family over S ∪ s.
inline KSubsetSet rel_fiber_right(const Relation& r, const AtomSet& s) {
  if (s.size() != r.n1()) {
    throw PreconditionError("fiber argument has the wrong cardinality");
  }
  AtomSet context = r.support().union_with(s);
  AtomSet outside = s.minus(r.support());
  std::vector<AtomSet> traces;
  for (const PairOrbit& orbit : r.orbits()) {
    if (orbit.left_trace != s.intersect_with(r.support())) continue;
    // t meets S in right_trace and meets s \ S in any `overlap`-sized piece.
    for (const AtomSet& u : KSubsetSet::all_subsets(outside)) {
      if (u.size() != orbit.overlap) continue;
      traces.push_back(orbit.right_trace.union_with(u));
    }
  }
  return KSubsetSet(r.n2(), std::move(context), std::move(traces));
}

inline KSubsetSet rel_fiber_left(const Relation& r, const AtomSet& t) {
  if (t.size() != r.n2()) {
    throw PreconditionError("fiber argument has the wrong cardinality");
  }
  AtomSet context = r.support().union_with(t);
  AtomSet outside = t.minus(r.support());
  std::vector<AtomSet> traces;
  for (const PairOrbit& orbit : r.orbits()) {
    if (orbit.right_trace != t.intersect_with(r.support())) continue;
    for (const AtomSet& u : KSubsetSet::all_subsets(outside)) {
      if (u.size() != orbit.overlap) continue;
      traces.push_back(orbit.left_trace.union_with(u));
    }
  }
  return KSubsetSet(r.n1(), std::move(context), std::move(traces));
}

// Checks the hypothesis that every related pair is disjoint as sets.
inline bool rel_all_pairs_disjoint(const Relation& r) {
  for (const PairOrbit& orbit : r.orbits()) {
    if (orbit.overlap != 0) return false;
    if (!orbit.left_trace.disjoint_with(orbit.right_trace)) return false;
  }
  return true;
}

// Outcome of the fiber dichotomy: an explicit set on one side whose fiber on
// the other side is infinite.
struct RklVerdict {
  enum class Side { kLeft, kRight };
  Side side;
  AtomSet witness;
  KSubsetSet fiber;
};

// For an infinite relation of pairwise disjoint pairs, produces a left set
// with infinite right fiber, or a right set with infinite left fiber. The
// left case is preferred; the fiber is re-verified before returning.
inline RklVerdict rkl_decide(const Relation& r) {
  if (!rel_card(r).is_infinite()) {
    throw PreconditionError("fiber dichotomy requires an infinite relation");
  }
  if (!rel_all_pairs_disjoint(r)) {
    throw PreconditionError("fiber dichotomy requires pairwise disjoint pairs");
  }
  auto it = std::find_if(r.orbits().begin(), r.orbits().end(),
                         [&](const PairOrbit& o) { return !orbit_is_singleton(r, o); });
  const PairOrbit& orbit = *it;  // exists: the relation is infinite
  if (orbit.right_trace.size() < r.n2()) {
    std::vector<Atom> extra =
        fresh_atoms(r.n1() - orbit.left_trace.size(), r.support());
    AtomSet witness = orbit.left_trace.union_with(AtomSet(std::move(extra)));
    KSubsetSet fiber = rel_fiber_right(r, witness);
    if (!kss_card(fiber).is_infinite()) {
      throw Error("fiber dichotomy case split failed: right fiber not infinite");
    }
    return {RklVerdict::Side::kLeft, std::move(witness), std::move(fiber)};
  }
  AtomSet witness = orbit.right_trace;
  KSubsetSet fiber = rel_fiber_left(r, witness);
  if (!kss_card(fiber).is_infinite()) {
    throw Error("fiber dichotomy case split failed: left fiber not infinite");
  }
  return {RklVerdict::Side::kRight, std::move(witness), std::move(fiber)};
}

// Evidence that two distinct related pairs have overlapping basis sets: a
// k-set lying in the basis of both pairs, refuting pairwise disjointness of
// the induced family.
struct ContradictionCertificate {
  int case_id = 0;  // 1: shared left set, 2: shared right set
  AtomSet p1, q1;   // first realized pair
  AtomSet p2, q2;   // second realized pair
  AtomSet witness;  // member of both basis sets
  std::uint32_t k = 0;
};

inline void verify_certificate(const Relation& r, const ContradictionCertificate& cert) {
  auto in_basis = [&](const AtomSet& p, const AtomSet& q) {
    return cert.witness.size() == cert.k && cert.witness.contains_all(p) &&
           cert.witness.disjoint_with(q);
  };
  bool ok = cert.witness.size() == cert.k &&
            !(cert.p1 == cert.p2 && cert.q1 == cert.q2) &&
            rel_contains_pair(r, cert.p1, cert.q1) &&
            rel_contains_pair(r, cert.p2, cert.q2) &&
            in_basis(cert.p1, cert.q1) && in_basis(cert.p2, cert.q2);
  if (!ok) throw Error("contradiction certificate failed verification");
}

// Refutes the existence of a pairwise disjoint family: given an infinite
// relation of disjoint (p, q) pairs with |p| = n1 < k, produces two realized
// pairs together with an explicit k-set in both of their basis sets. Every
// certificate is re-verified by direct membership tests.
inline ContradictionCertificate refute_disjoint_family(const Relation& r,
                                                       std::uint32_t k) {
  if (r.n1() >= k) {
    throw PreconditionError("family refutation requires n1 < k so the bases are infinite");
  }
  RklVerdict verdict = rkl_decide(r);  // also enforces infinite + disjoint
  ContradictionCertificate cert;
  cert.k = k;
  if (verdict.side == RklVerdict::Side::kLeft) {
    const AtomSet& p = verdict.witness;
    const KSubsetSet& fiber = verdict.fiber;
    auto trace = std::find_if(fiber.traces().begin(), fiber.traces().end(),
                              [&](const AtomSet& t) { return t.size() < r.n2(); });
    std::size_t need = r.n2() - trace->size();
    std::vector<Atom> pool =
        fresh_atoms(2 * need, r.support().union_with(p).union_with(*trace));
    AtomSet q = trace->union_with(
        AtomSet(std::vector<Atom>(pool.begin(), pool.begin() + need)));
    AtomSet q2 = trace->union_with(
        AtomSet(std::vector<Atom>(pool.begin() + need, pool.end())));
    AtomSet avoid = r.support().union_with(p).union_with(q).union_with(q2);
    AtomSet witness = p.union_with(AtomSet(fresh_atoms(k - r.n1(), avoid)));
    cert.case_id = 1;
    cert.p1 = p;
    cert.q1 = std::move(q);
    cert.p2 = p;
    cert.q2 = std::move(q2);
    cert.witness = std::move(witness);
  } else {
    const AtomSet& q = verdict.witness;
    const KSubsetSet& fiber = verdict.fiber;
    auto trace = std::find_if(fiber.traces().begin(), fiber.traces().end(),
                              [&](const AtomSet& t) { return t.size() < r.n1(); });
    std::size_t need = r.n1() - trace->size();
    std::vector<Atom> pool =
        fresh_atoms(need + 1, r.support().union_with(q).union_with(*trace));
    AtomSet p = trace->union_with(
        AtomSet(std::vector<Atom>(pool.begin(), pool.begin() + need)));
    std::vector<Atom> tail(pool.begin(), pool.begin() + need - 1);
    tail.push_back(pool.back());
    AtomSet p2 = trace->union_with(AtomSet(std::move(tail)));
    AtomSet avoid = r.support().union_with(q).union_with(p).union_with(p2);
    AtomSet witness =
        p.union_with(p2).union_with(AtomSet(fresh_atoms(k - (r.n1() + 1), avoid)));
    cert.case_id = 2;
    cert.p1 = std::move(p);
    cert.q1 = q;
    cert.p2 = std::move(p2);
    cert.q2 = q;
    cert.witness = std::move(witness);
  }
  verify_certificate(r, cert);
  return cert;
}

}  // namespace atomset

#endif  // ATOMSET_RELATIONS_HPP_
