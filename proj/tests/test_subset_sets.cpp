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

#include "atomset/subset_sets.hpp"

#include <gtest/gtest.h>

#include "atomset/generators.hpp"
#include "atomset/oracle.hpp"

namespace atomset {
namespace {

const Atom kA(0), kB(1), kC(2), kD(3);

TEST(BasisTest, EmptinessLaw) {
  EXPECT_TRUE(pq_is_empty(PQBasis({kA}, {kA}, 2)));
  EXPECT_TRUE(pq_is_empty(PQBasis({kA, kB, kC}, {}, 2)));
  EXPECT_FALSE(pq_is_empty(PQBasis({}, {}, 0)));
  EXPECT_EQ(pq_card(PQBasis({}, {}, 0)), CardClass::Finite(1));  // the empty set
}

TEST(BasisTest, IntersectionLaw) {
  PQBasis meet = pq_intersect(PQBasis({kA}, {kB}, 3), PQBasis({kC}, {kD}, 3));
  EXPECT_EQ(meet, PQBasis({kA, kC}, {kB, kD}, 3));
  PQBasis b({kA}, {kB}, 3);
  EXPECT_EQ(pq_intersect(b, b), b);
  PQBasis clash = pq_intersect(PQBasis({kA}, {}, 2), PQBasis({}, {kA}, 2));
  EXPECT_EQ(pq_card(clash), CardClass::Empty());
  EXPECT_TRUE(oracle::enumerate(clash, {6}).empty());
  EXPECT_THROW(pq_intersect(PQBasis({}, {}, 2), PQBasis({}, {}, 3)), PreconditionError);
}

TEST(BasisTest, IntersectionIsExtensional) {
  Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    PQBasis b1 = random_basis(rng, 3, 4);
    PQBasis b2(random_basis(rng, 3, 4).p(), random_basis(rng, 3, 4).q(), b1.k());
    PQBasis meet = pq_intersect(b1, b2);
    oracle::Window w{10};
    for (const AtomSet& s : oracle::all_ksets(w, b1.k())) {
      EXPECT_EQ(oracle::kset_in_basis(meet, s),
                oracle::kset_in_basis(b1, s) && oracle::kset_in_basis(b2, s));
    }
  }
}

TEST(BasisTest, CardinalityLaw) {
  EXPECT_EQ(pq_card(PQBasis({kA}, {kB}, 2)), CardClass::Infinite());
  EXPECT_EQ(pq_card(PQBasis({kA, kB}, {kC}, 2)), CardClass::Finite(1));
  EXPECT_EQ(pq_card(PQBasis({kA}, {kA}, 5)), CardClass::Empty());
  // The single member of a full basis is p itself.
  std::vector<AtomSet> members = oracle::enumerate(PQBasis({kA, kB}, {kC}, 2), {6});
  ASSERT_EQ(members.size(), 1u);
  EXPECT_EQ(members[0], AtomSet({kA, kB}));
}

TEST(BasisTest, WindowCounts) {
  EXPECT_EQ(pq_count_window(PQBasis({kA}, {kB}, 2), 5), 3u);
  EXPECT_EQ(pq_count_window(PQBasis({}, {}, 2), 4), 6u);
  EXPECT_EQ(pq_count_window(PQBasis({kA}, {kA}, 2), 4), 0u);
  EXPECT_THROW(pq_count_window(PQBasis({kA}, {kB}, 2), 1), PreconditionError);
  Rng rng(37);
  for (int trial = 0; trial < 200; ++trial) {
    PQBasis b = random_basis(rng, 4, 5);
    std::uint32_t window =
        static_cast<std::uint32_t>(b.p().union_with(b.q()).size()) + b.k() + 2;
    EXPECT_EQ(pq_count_window(b, window), oracle::enumerate(b, {window}).size());
  }
}

TEST(BasisTest, WitnessPairs) {
  auto [s1, s2] = pq_witness_pair(PQBasis({}, {}, 2));
  EXPECT_EQ(s1, AtomSet::of_indices({0, 1}));
  EXPECT_EQ(s2, AtomSet::of_indices({0, 2}));
  auto [t1, t2] = pq_witness_pair(PQBasis({kA}, {kB}, 2));
  EXPECT_EQ(t1, AtomSet::of_indices({0, 2}));
  EXPECT_EQ(t2, AtomSet::of_indices({0, 3}));
  EXPECT_THROW(pq_witness_pair(PQBasis({kA, kB}, {}, 2)), PreconditionError);
  Rng rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    PQBasis b = random_infinite_basis(rng, 4, 5);
    auto [w1, w2] = pq_witness_pair(b);
    EXPECT_TRUE(oracle::kset_in_basis(b, w1));
    EXPECT_TRUE(oracle::kset_in_basis(b, w2));
    EXPECT_EQ(w1.union_with(w2).size(), b.k() + 1);
  }
}

TEST(FamilyTest, RebaseSplitsTraces) {
  KSubsetSet contains_a(2, {kA}, {{kA}});
  KSubsetSet rebased = kss_rebase(contains_a, {kA, kB});
  EXPECT_EQ(rebased, KSubsetSet(2, {kA, kB}, {{kA}, {kA, kB}}));
  EXPECT_EQ(oracle::enumerate(contains_a, {5}), oracle::enumerate(rebased, {5}));

  KSubsetSet full = KSubsetSet::full(2);
  EXPECT_EQ(kss_rebase(full, {kA}), KSubsetSet(2, {kA}, {{}, {kA}}));
  EXPECT_EQ(kss_rebase(contains_a, {kA}), contains_a);
  EXPECT_THROW(kss_rebase(contains_a, {}), PreconditionError);
}

TEST(FamilyTest, RebasePreservesExtension) {
  Rng rng(43);
  for (int trial = 0; trial < 150; ++trial) {
    KSubsetSet c = random_family(rng, 4, 3);
    AtomSet bigger = c.support().union_with(AtomSet::first(rng.below(5)));
    KSubsetSet rebased = kss_rebase(c, bigger);
    std::uint32_t window = static_cast<std::uint32_t>(bigger.size()) + c.k() + 2;
    EXPECT_EQ(oracle::enumerate(c, {window}), oracle::enumerate(rebased, {window}));
  }
}

TEST(FamilyTest, BooleanOperations) {
  KSubsetSet contains_a(2, {kA}, {{kA}});
  KSubsetSet complement = kss_complement(contains_a);
  EXPECT_EQ(complement, KSubsetSet(2, {kA}, {{}}));
  EXPECT_EQ(oracle::enumerate(complement, {5}).size(),
            binomial(5, 2) - oracle::enumerate(contains_a, {5}).size());
  EXPECT_TRUE(kss_extensionally_equal(kss_union(contains_a, complement),
                                      KSubsetSet::full(2)));
  // Distinct traces over the same support are disjoint.
  KSubsetSet left(2, {kA, kB}, {{kA}});
  KSubsetSet right(2, {kA, kB}, {{kB}});
  EXPECT_EQ(kss_card(kss_intersect(left, right)), CardClass::Empty());
  EXPECT_THROW(kss_union(contains_a, KSubsetSet::full(3)), PreconditionError);
}

TEST(FamilyTest, CardinalityByTraces) {
  EXPECT_EQ(kss_card(KSubsetSet::full(2)), CardClass::Infinite());
  EXPECT_EQ(kss_card(KSubsetSet(2, {kA, kB}, {{kA, kB}})), CardClass::Finite(1));
  EXPECT_EQ(kss_card(KSubsetSet::empty(2)), CardClass::Empty());
  Rng rng(47);
  for (int trial = 0; trial < 150; ++trial) {
    KSubsetSet c = random_family(rng, 4, 3);
    std::uint32_t base = static_cast<std::uint32_t>(c.support().size()) + c.k() + 1;
    oracle::GrowthResult growth = oracle::growth_classify(c, base, base + 2, base + 4);
    CardClass card = kss_card(c);
    if (card.is_empty()) {
      EXPECT_EQ(growth.kind, oracle::Growth::kEmpty);
    } else if (card.is_infinite()) {
      EXPECT_EQ(growth.kind, oracle::Growth::kGrowing);
    } else {
      EXPECT_EQ(growth.kind, oracle::Growth::kFinite);
      EXPECT_EQ(growth.count, card.finite_count());
    }
    EXPECT_EQ(kss_count_window(c, base), oracle::enumerate(c, {base}).size());
  }
}

TEST(FamilyTest, NormalFormExamples) {
  // "2-sets containing a", expressed over {a, b} with a redundant b.
  KSubsetSet wide(2, {kA, kB}, {{kA}, {kA, kB}});
  EXPECT_EQ(kss_support(wide), AtomSet({kA}));
  KSubsetSet nf = kss_normal_form(wide);
  EXPECT_EQ(nf, KSubsetSet(2, {kA}, {{kA}}));
  auto pairs = nf.pairs();
  ASSERT_EQ(pairs.size(), 1u);
  EXPECT_EQ(pairs[0].first, AtomSet({kA}));
  EXPECT_TRUE(pairs[0].second.empty());

  // Both traces over {a} present: the family is the full one, support empty.
  KSubsetSet both(2, {kA}, {{}, {kA}});
  EXPECT_EQ(kss_normal_form(both), KSubsetSet::full(2));

  EXPECT_EQ(kss_normal_form(KSubsetSet(2, {kA}, {})), KSubsetSet::empty(2));
}

TEST(FamilyTest, NormalFormRoundTripAndMinimality) {
  Rng rng(53);
  for (int trial = 0; trial < 200; ++trial) {
    KSubsetSet c = random_family(rng, 4, 4);
    KSubsetSet nf = kss_normal_form(c);
    EXPECT_EQ(kss_rebase(nf, c.support()).traces(), c.traces());
    std::uint32_t window = static_cast<std::uint32_t>(c.support().size()) + c.k() + 3;
    EXPECT_EQ(oracle::enumerate(c, {window}), oracle::enumerate(nf, {window}));
    for (Atom a : nf.support()) {
      Atom b = fresh_atom(c.support());
      EXPECT_FALSE(kss_extensionally_equal(
          nf, kss_apply_perm(nf, FinitePermutation::transposition(a, b))));
    }
  }
}

TEST(FamilyTest, SubsetAndTupleSupportsAgree) {
  Rng rng(59);
  for (int trial = 0; trial < 100; ++trial) {
    KSubsetSet c = random_family(rng, 3, 3);
    EXPECT_EQ(kss_support(c), ts_support(kss_to_tuples(c)));
  }
}

TEST(FamilyTest, SymmetrizationMatchesOracle) {
  KSubsetSet contains_a(2, {kA}, {{kA}});
  TupleSet tuples = kss_to_tuples(contains_a);
  oracle::Window w{5};
  std::uint64_t expected = 0;
  for (const std::vector<Atom>& tuple : oracle::all_tuples(w, 2)) {
    if (tuple[0] == tuple[1]) continue;
    if (oracle::kset_in_family(contains_a, AtomSet({tuple[0], tuple[1]}))) ++expected;
  }
  EXPECT_EQ(oracle::enumerate(tuples, w).size(), expected);
}

TEST(AmorphousTest, ExhaustiveDichotomy) {
  AmorphousReport report = verify_amorphous(2);
  EXPECT_TRUE(report.all_pass);
  EXPECT_GT(report.sets_checked, 0u);
  // {x : x != a} is cofinite with complement of size 1.
  KSubsetSet avoids_a(1, {kA}, {{}});
  EXPECT_EQ(kss_card(avoids_a), CardClass::Infinite());
  EXPECT_EQ(kss_card(kss_complement(avoids_a)), CardClass::Finite(1));
  // {a, b} as a family of singletons.
  KSubsetSet two(1, {kA, kB}, {{kA}, {kB}});
  EXPECT_EQ(kss_card(two), CardClass::Finite(2));
}

TEST(GradedFamilyTest, InfiniteGrade) {
  std::map<std::uint32_t, KSubsetSet> grades;
  grades.emplace(1, KSubsetSet(1, {kA, kB}, {{kA}, {kB}}));  // finite, 2 sets
  grades.emplace(2, KSubsetSet::full(2));                    // infinite
  GradedFamily family(std::move(grades));
  EXPECT_EQ(gf_infinite_grade(family), 2u);
  EXPECT_EQ(gf_card(family), CardClass::Infinite());

  std::map<std::uint32_t, KSubsetSet> finite_grades;
  finite_grades.emplace(1, KSubsetSet(1, {kA, kB}, {{kA}, {kB}}));
  finite_grades.emplace(2, KSubsetSet(2, {kA, kB}, {{kA, kB}}));
  GradedFamily finite_family(std::move(finite_grades));
  EXPECT_EQ(gf_infinite_grade(finite_family), std::nullopt);
  EXPECT_EQ(gf_card(finite_family), CardClass::Finite(3));
}

TEST(GradedFamilyTest, InfiniteGradeAgreesWithOracleGrowth) {
  Rng rng(61);
  for (int trial = 0; trial < 50; ++trial) {
    std::map<std::uint32_t, KSubsetSet> grades;
    for (std::uint32_t k = 0; k <= 2; ++k) {
      if (rng.flip()) grades.emplace(k, random_family_of_arity(rng, k));
    }
    GradedFamily family(std::move(grades));
    std::optional<std::uint32_t> grade = gf_infinite_grade(family);
    for (const auto& [k, c] : family.grades()) {
      std::uint32_t base = static_cast<std::uint32_t>(c.support().size()) + k + 1;
      bool growing =
          oracle::growth_classify(c, base, base + 2, base + 4).kind ==
          oracle::Growth::kGrowing;
      if (grade.has_value() && k < *grade) {
        EXPECT_FALSE(growing);
      }
      if (grade.has_value() && k == *grade) {
        EXPECT_TRUE(growing);
      }
      if (!grade.has_value()) {
        EXPECT_FALSE(growing);
      }
    }
  }
}

TEST(StarSetTest, EncodingExamples) {
  TupleSet two(1, {kA, kB},
               {Cell({CellCode::param(kA)}), Cell({CellCode::param(kB)})});
  EXPECT_EQ(powerset_to_finsets(two), (StarSet{{kA, kB}, false}));

  TupleSet avoids_a(1, {kA}, {Cell({CellCode::fresh(1)})});
  StarSet encoded = powerset_to_finsets(avoids_a);
  EXPECT_EQ(encoded, (StarSet{{kA}, true}));
  EXPECT_TRUE(ts_extensionally_equal(finsets_to_powerset(encoded), avoids_a));

  EXPECT_EQ(powerset_to_finsets(TupleSet::full(1)), (StarSet{{}, true}));
  EXPECT_EQ(powerset_to_finsets(TupleSet::empty(1)), (StarSet{{}, false}));
  EXPECT_THROW(powerset_to_finsets(TupleSet::full(2)), PreconditionError);
}

TEST(StarSetTest, ExhaustiveBijection) {
  for (std::uint32_t m = 0; m <= 4; ++m) {
    AtomSet support = AtomSet::first(m);
    std::vector<Cell> cells = all_cells(1, support);
    std::set<StarSet> seen;
    for (std::uint64_t mask = 0; mask < (1ull << cells.size()); ++mask) {
      std::vector<Cell> chosen;
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (mask & (1ull << i)) chosen.push_back(cells[i]);
      }
      TupleSet x(1, support, std::move(chosen));
      StarSet encoded = powerset_to_finsets(x);
      EXPECT_TRUE(seen.insert(encoded).second);  // injective
      EXPECT_TRUE(ts_extensionally_equal(finsets_to_powerset(encoded), x));
    }
    for (const AtomSet& atoms : KSubsetSet::all_subsets(support)) {
      for (bool star : {false, true}) {
        StarSet s{atoms, star};
        EXPECT_EQ(powerset_to_finsets(finsets_to_powerset(s)), s);
      }
    }
  }
}

}  // namespace
}  // namespace atomset
