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

// The reproducibility suite: every classification law, normal form, witness
// construction, fiber dichotomy, family refutation, and map theorem instance
// is checked symbolically and against the brute-force window oracle. The CLI
// `verify-facts` command and the acceptance test binary both run this suite.

#ifndef ATOMSET_VERIFY_HPP_
#define ATOMSET_VERIFY_HPP_

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "atomset/dsl.hpp"
#include "atomset/generators.hpp"
#include "atomset/oracle.hpp"

namespace atomset {

struct FactResult {
  std::string id;
  std::string summary;
  bool pass = false;
  std::uint64_t checked = 0;
  double seconds = 0.0;
  std::string detail;  // first failure, or extra statistics
};

struct SuiteOptions {
  std::uint64_t seed = 0;
  std::uint32_t witness_cases = 200;
  std::uint32_t normal_form_cases = 500;
  std::uint32_t rkl_cases = 200;
  std::uint32_t map_cases = 300;
  std::uint32_t map_permutation_cases = 120;
  std::uint32_t boolean_cases = 1000;
  std::uint32_t roundtrip_cases = 1000;
  std::uint32_t table_cases = 100;
};

namespace verify_detail {

class Check {
 public:
  Check(std::string id, std::string summary)
      : start_(std::chrono::steady_clock::now()) {
    result_.id = std::move(id);
    result_.summary = std::move(summary);
    result_.pass = true;
  }

  void count() { ++result_.checked; }

  void fail(const std::string& detail) {
    if (result_.pass) result_.detail = detail;
    result_.pass = false;
  }

  void require(bool ok, const std::string& detail) {
    count();
    if (!ok) fail(detail);
  }

  void note(const std::string& detail) {
    if (result_.detail.empty()) result_.detail = detail;
  }

  FactResult finish() {
    result_.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
            .count();
    return result_;
  }

 private:
  FactResult result_;
  std::chrono::steady_clock::time_point start_;
};

inline bool growth_matches(const CardClass& symbolic, const oracle::GrowthResult& g) {
  if (symbolic.is_empty()) return g.kind == oracle::Growth::kEmpty;
  if (symbolic.is_infinite()) return g.kind == oracle::Growth::kGrowing;
  return g.kind == oracle::Growth::kFinite && g.count == symbolic.finite_count();
}

}  // namespace verify_detail

// Basis classification: the closed-form empty/finite/infinite laws agree with
// window enumeration for every shape with |p|, |q| <= 5, k <= 6, and the
// closed-form window counts match the enumeration exactly.
inline FactResult verify_nonempty(const SuiteOptions& = {}) {
  verify_detail::Check check("nonempty", "basis classification vs oracle growth");
  for (std::uint32_t np = 0; np <= 5; ++np) {
    for (std::uint32_t nq = 0; nq <= 5; ++nq) {
      for (std::uint32_t overlap = 0; overlap <= std::min(np, nq); ++overlap) {
        std::vector<Atom> p, q;
        for (std::uint32_t i = 0; i < np; ++i) p.emplace_back(i);
        for (std::uint32_t i = 0; i < nq; ++i) q.emplace_back(np - overlap + i);
        AtomSet ps(std::move(p)), qs(std::move(q));
        for (std::uint32_t k = 0; k <= 6; ++k) {
          PQBasis b(ps, qs, k);
          std::uint32_t base =
              static_cast<std::uint32_t>(ps.union_with(qs).size()) + k;
          oracle::GrowthResult growth =
              oracle::growth_classify(b, base + 1, base + 3, base + 5);
          bool counts_ok = true;
          for (std::uint32_t n : {base + 1, base + 3, base + 5}) {
            counts_ok = counts_ok &&
                        pq_count_window(b, n) == oracle::enumerate(b, {n}).size();
          }
          NameTable names;
          check.require(
              verify_detail::growth_matches(pq_card(b), growth) && counts_ok,
              "disagreement for " + dsl::print(b, names));
        }
      }
    }
  }
  return check.finish();
}

// Witness pairs: two basis members whose union has exactly k+1 atoms, with
// membership verified directly.
inline FactResult verify_witness_pairs(const SuiteOptions& options = {}) {
  verify_detail::Check check("nonempty.witness", "basis witness pairs with |union| = k+1");
  Rng rng(options.seed + 1);
  for (std::uint32_t i = 0; i < options.witness_cases; ++i) {
    PQBasis b = random_infinite_basis(rng, 5, 6);
    auto [s1, s2] = pq_witness_pair(b);
    bool ok = oracle::kset_in_basis(b, s1) && oracle::kset_in_basis(b, s2) &&
              s1 != s2 && s1.union_with(s2).size() == b.k() + 1;
    NameTable names;
    check.require(ok, "bad witness pair for " + dsl::print(b, names));
  }
  return check.finish();
}

// Normal form: support minimization preserves the extension and the computed
// support is minimal under the transposition test; the support also agrees
// with the support of the symmetrized tuple set.
inline FactResult verify_normal_form(const SuiteOptions& options = {}) {
  verify_detail::Check check("normalform", "trace normal form round trip + minimal support");
  Rng rng(options.seed + 2);
  for (std::uint32_t i = 0; i < options.normal_form_cases; ++i) {
    KSubsetSet c = random_family(rng, 4, 4);
    KSubsetSet nf = kss_normal_form(c);
    std::uint32_t window =
        static_cast<std::uint32_t>(c.support().size()) + c.k() + 3;
    bool extension_ok = oracle::enumerate(c, {window}) == oracle::enumerate(nf, {window});
    bool minimal = true;
    for (Atom a : nf.support()) {
      Atom b = fresh_atom(nf.support().union_with(c.support()));
      FinitePermutation swap = FinitePermutation::transposition(a, b);
      if (kss_extensionally_equal(nf, kss_apply_perm(nf, swap))) minimal = false;
    }
    // The paper-facing consistency check: the subset-level support must match
    // the tuple-level support of the symmetrization. A mismatch is surfaced
    // as a failure, never resolved silently.
    bool symmetrized_ok = ts_support(kss_to_tuples(c)) == nf.support();
    bool rebase_ok = kss_rebase(nf, c.support()).traces() == c.traces();
    NameTable names;
    check.require(extension_ok && minimal && symmetrized_ok && rebase_ok,
                  "normal form failure for " + dsl::print(c, names));
  }
  return check.finish();
}

// Dichotomy at arity 1: every family of singletons over supports of size <= 3
// is finite or has finite complement.
inline FactResult verify_amorphous_dichotomy(const SuiteOptions& = {}) {
  verify_detail::Check check("amorphdef", "arity-1 families are finite or cofinite");
  AmorphousReport report = verify_amorphous(3);
  for (std::uint64_t i = 0; i < report.sets_checked; ++i) check.count();
  if (!report.all_pass) check.fail("a family was neither finite nor cofinite");
  check.note("finite " + std::to_string(report.finite_sets) + ", cofinite " +
             std::to_string(report.cofinite_sets));
  return check.finish();
}

// The adjoined-element encoding is a bijection, exhaustively for supports of
// size <= 4: both round trips are identities and distinct sets get distinct
// encodings.
inline FactResult verify_a_plus_1(const SuiteOptions& = {}) {
  verify_detail::Check check("a_plus_1", "finite/cofinite <-> star-set bijection");
  for (std::uint32_t m = 0; m <= 4; ++m) {
    AtomSet support = AtomSet::first(m);
    std::vector<Cell> cells = all_cells(1, support);
    std::map<StarSet, TupleSet> images;
    for (std::uint64_t mask = 0; mask < (1ull << cells.size()); ++mask) {
      std::vector<Cell> chosen;
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (mask & (1ull << i)) chosen.push_back(cells[i]);
      }
      TupleSet x(1, support, std::move(chosen));
      StarSet encoded = powerset_to_finsets(x);
      bool round_trip = ts_extensionally_equal(finsets_to_powerset(encoded), x);
      auto [it, inserted] = images.emplace(encoded, x);
      bool injective = inserted || ts_extensionally_equal(it->second, x);
      check.require(round_trip && injective, "encoding failed at support size " +
                                                 std::to_string(m));
    }
    // Inverse direction: every star-set over the support decodes and
    // re-encodes to itself.
    for (const AtomSet& atoms : KSubsetSet::all_subsets(support)) {
      for (bool star : {false, true}) {
        StarSet s{atoms, star};
        check.require(powerset_to_finsets(finsets_to_powerset(s)) == s,
                      "inverse round trip failed at support size " + std::to_string(m));
      }
    }
  }
  return check.finish();
}

// Fiber dichotomy: the decision procedure returns a witness whose fiber is
// symbolically infinite and whose oracle fiber counts strictly increase.
inline FactResult verify_rkl(const SuiteOptions& options = {}) {
  verify_detail::Check check("rkl", "fiber dichotomy witnesses vs oracle fiber growth");
  Rng rng(options.seed + 3);
  for (std::uint32_t i = 0; i < options.rkl_cases; ++i) {
    Relation r = random_infinite_disjoint_relation(rng, 2, 2);
    RklVerdict verdict = rkl_decide(r);
    bool ok = kss_card(verdict.fiber).is_infinite();
    std::vector<std::uint64_t> counts;
    for (std::uint32_t n : {8u, 10u, 12u}) {
      std::uint64_t count = 0;
      if (verdict.side == RklVerdict::Side::kLeft) {
        for (const AtomSet& t : oracle::all_ksets({n}, r.n2())) {
          if (oracle::pair_in_relation(r, verdict.witness, t)) ++count;
        }
      } else {
        for (const AtomSet& s : oracle::all_ksets({n}, r.n1())) {
          if (oracle::pair_in_relation(r, s, verdict.witness)) ++count;
        }
      }
      counts.push_back(count);
    }
    ok = ok && counts[0] < counts[1] && counts[1] < counts[2];
    // The fiber family itself must agree with the oracle fiber.
    ok = ok && oracle::enumerate(verdict.fiber, {12}).size() == counts[2];
    NameTable names;
    check.require(ok, "fiber growth failure for " + dsl::print(r, names));
  }
  return check.finish();
}

// Family refutation: for every relation satisfying the disjointness and
// arity hypotheses (support <= 2, n1 < k <= 3, n2 <= 2), the refuter finds a
// membership-verified common element of two distinct basis sets.
inline FactResult verify_refuter(const SuiteOptions& = {}) {
  verify_detail::Check check("no_disjoint_family",
                             "every hypothesis-satisfying relation is refuted");
  for (std::uint32_t support_size = 0; support_size <= 2; ++support_size) {
    AtomSet support = AtomSet::first(support_size);
    for (std::uint32_t n1 = 1; n1 <= 2; ++n1) {
      for (std::uint32_t n2 = 1; n2 <= 2; ++n2) {
        std::vector<PairOrbit> orbits =
            all_pair_orbits(support, n1, n2, /*disjoint_only=*/true);
        for (std::uint64_t mask = 1; mask < (1ull << orbits.size()); ++mask) {
          std::vector<PairOrbit> chosen;
          for (std::size_t i = 0; i < orbits.size(); ++i) {
            if (mask & (1ull << i)) chosen.push_back(orbits[i]);
          }
          Relation r(n1, n2, support, std::move(chosen));
          if (!rel_card(r).is_infinite()) continue;
          for (std::uint32_t k = n1 + 1; k <= 3; ++k) {
            try {
              ContradictionCertificate cert = refute_disjoint_family(r, k);
              // Re-verify from scratch with the oracle predicates.
              bool ok = cert.witness.size() == k &&
                        oracle::pair_in_relation(r, cert.p1, cert.q1) &&
                        oracle::pair_in_relation(r, cert.p2, cert.q2) &&
                        oracle::kset_in_basis(PQBasis(cert.p1, cert.q1, k),
                                              cert.witness) &&
                        oracle::kset_in_basis(PQBasis(cert.p2, cert.q2, k),
                                              cert.witness) &&
                        !(cert.p1 == cert.p2 && cert.q1 == cert.q2);
              NameTable names;
              check.require(ok, "unverified certificate for " + dsl::print(r, names));
            } catch (const Error& e) {
              check.count();
              NameTable names;
              check.fail(std::string("refuter failed: ") + e.what() + " on " +
                         dsl::print(r, names));
            }
          }
        }
      }
    }
  }
  return check.finish();
}

// Map theorem instances: whenever a rule table is surjective it is injective
// and fully periodic; verdicts cross-checked against the brute-force window
// check.
inline FactResult verify_surjective_injective(const SuiteOptions& options = {}) {
  verify_detail::Check check("surjective_injective",
                             "surjective rule tables are injective and periodic");
  Rng rng(options.seed + 4);
  std::uint64_t surjective_count = 0;
  auto run_one = [&](const DefinableMap& f) {
    TheoremReport report = check_theorem_instance(f);
    oracle::MapCheckResult ground = oracle::oracle_map_check(
        f, {static_cast<std::uint32_t>(f.params().size()) + f.rank() + 2});
    SurjectivityResult surj = map_is_surjective(f);
    InjectivityResult inj = map_is_injective(f);
    bool agree = surj.surjective == ground.surjective &&
                 inj.injective == ground.injective;
    if (surj.surjective) ++surjective_count;
    NameTable names;
    check.require(report.pass && agree,
                  std::string(report.pass ? "oracle disagreement" : "theorem violation") +
                      " for\n" + dsl::print(f, names));
  };
  for (std::uint32_t i = 0; i < options.map_cases; ++i) {
    AtomSet params = AtomSet::first(rng.below(3));
    std::uint32_t rank = 1 + rng.below(3);
    run_one(random_map(rng, params, rank));
  }
  for (std::uint32_t i = 0; i < options.map_permutation_cases; ++i) {
    AtomSet params = AtomSet::first(rng.below(3));
    std::uint32_t rank = 1 + rng.below(3);
    run_one(random_orbit_permutation_map(rng, params, rank));
  }
  check.note("surjective instances: " + std::to_string(surjective_count));
  return check.finish();
}

// Boolean-algebra laws extensionally at threshold windows, plus the
// parse/print round trip for every object kind.
inline FactResult verify_boolean_and_roundtrip(const SuiteOptions& options = {}) {
  verify_detail::Check check("boolean_dsl", "De Morgan + double complement + round trip");
  Rng rng(options.seed + 5);
  for (std::uint32_t i = 0; i < options.boolean_cases; ++i) {
    if (i % 2 == 0) {
      std::uint32_t k = rng.below(3) + 1;
      AtomSet context = AtomSet::first(rng.below(3));
      auto pick = [&]() {
        std::vector<Cell> cells;
        for (const Cell& cell : all_cells(k, context)) {
          if (rng.flip()) cells.push_back(cell);
        }
        return TupleSet(k, context, std::move(cells));
      };
      TupleSet x = pick(), y = pick();
      TupleSet lhs = ts_complement(ts_union(x, y));
      TupleSet rhs = ts_intersect(ts_complement(x), ts_complement(y));
      std::uint32_t window = static_cast<std::uint32_t>(context.size()) + k + 2;
      bool de_morgan = oracle::enumerate(lhs, {window}) == oracle::enumerate(rhs, {window});
      bool laws = lhs == rhs && ts_complement(ts_complement(x)) == x;
      check.require(de_morgan && laws, "tuple-set Boolean law failure");
    } else {
      KSubsetSet x = random_family(rng, 3, 3);
      KSubsetSet y = random_family(rng, 3, 3);
      while (y.k() != x.k()) y = random_family(rng, 3, 3);
      KSubsetSet lhs = kss_complement(kss_union(x, y));
      KSubsetSet rhs = kss_intersect(kss_complement(kss_rebase(
                                         x, x.support().union_with(y.support()))),
                                     kss_complement(kss_rebase(
                                         y, x.support().union_with(y.support()))));
      std::uint32_t window =
          static_cast<std::uint32_t>(x.support().union_with(y.support()).size()) +
          x.k() + 2;
      bool de_morgan = oracle::enumerate(lhs, {window}) == oracle::enumerate(rhs, {window});
      bool structural = lhs == rhs;
      bool dbl = kss_complement(kss_complement(x)) == x;
      check.require(de_morgan && structural && dbl, "family Boolean law failure");
    }
  }
  for (std::uint32_t i = 0; i < options.roundtrip_cases; ++i) {
    NameTable names;
    dsl::CompiledObject obj = [&]() -> dsl::CompiledObject {
      switch (i % 5) {
        case 0: return random_tuple_set(rng, 3, 3);
        case 1: return random_basis(rng, 3, 4);
        case 2: return random_family(rng, 4, 3);
        case 3: return random_relation(rng, 2, 2, rng.flip());
        default: return random_map(rng, AtomSet::first(rng.below(3)), 1 + rng.below(2));
      }
    }();
    std::string text = dsl::print(obj, names);
    try {
      dsl::CompiledObject back = dsl::parse_and_compile(text, names);
      check.require(back == obj, "round trip mismatch for: " + text);
    } catch (const Error& e) {
      check.count();
      check.fail("round trip parse failure for: " + text + " (" + e.what() + ")");
    }
  }
  return check.finish();
}

// Finiteness-notion constructions on explicit data.
inline FactResult verify_notions(const SuiteOptions& options = {}) {
  verify_detail::Check check("wdstar_inexhaustible",
                             "fiber-union containment + finite split witnesses");
  Rng rng(options.seed + 6);
  for (std::uint32_t i = 0; i < options.table_cases; ++i) {
    FiniteToOneTable table = random_finite_to_one_table(rng, 8, 5, 4);
    std::vector<AtomSet> unions = wdstar_transform(table);
    AtomSet total;
    for (const AtomSet& u : unions) total = total.union_with(u);
    bool ok = true;
    for (const auto& [s, n] : table.entries()) {
      ok = ok && n < unions.size() && unions[n].contains_all(s) && total.contains_all(s);
    }
    check.require(ok, "fiber-union containment failed");
  }
  for (std::uint32_t n = 2; n <= 10; ++n) {
    SplitWitness w = inexhaustible_finite_check(n);
    bool covers = w.left.union_with(w.right) == w.whole;
    bool blocks = w.left.size() < n && w.right.size() < n;
    check.require(covers && blocks, "bad split witness at n=" + std::to_string(n));
  }
  return check.finish();
}

inline std::vector<FactResult> run_fact_suite(const SuiteOptions& options = {}) {
  return {
      verify_nonempty(options),
      verify_witness_pairs(options),
      verify_normal_form(options),
      verify_amorphous_dichotomy(options),
      verify_a_plus_1(options),
      verify_rkl(options),
      verify_refuter(options),
      verify_surjective_injective(options),
      verify_boolean_and_roundtrip(options),
      verify_notions(options),
  };
}

}  // namespace atomset

#endif  // ATOMSET_VERIFY_HPP_
