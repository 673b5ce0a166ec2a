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

#include "atomset/oracle.hpp"

#include <gtest/gtest.h>

#include "atomset/generators.hpp"

namespace atomset {
namespace {

const Atom kA(0), kB(1);

TEST(WindowTest, Enumerators) {
  oracle::Window w{4};
  EXPECT_EQ(oracle::all_ksets(w, 0).size(), 1u);
  EXPECT_EQ(oracle::all_ksets(w, 2).size(), 6u);
  EXPECT_EQ(oracle::all_ksets(w, 5).size(), 0u);
  EXPECT_EQ(oracle::all_tuples(w, 0).size(), 1u);
  EXPECT_EQ(oracle::all_tuples(w, 3).size(), 64u);
  EXPECT_EQ(oracle::all_tuples({0}, 2).size(), 0u);
  EXPECT_EQ(oracle::all_small_sets(w, 2).size(), 1u + 4u + 6u);
}

TEST(EnumerateTest, BasisExample) {
  // a = atom 0, b = atom 1; the members are {a, x2} and {a, x3}.
  std::vector<AtomSet> members = oracle::enumerate(PQBasis({kA}, {kB}, 2), {4});
  ASSERT_EQ(members.size(), 2u);
  EXPECT_EQ(members[0], AtomSet::of_indices({0, 2}));
  EXPECT_EQ(members[1], AtomSet::of_indices({0, 3}));
}

TEST(EnumerateTest, DistinctPairs) {
  TupleSet x(2, {}, {Cell({CellCode::fresh(1), CellCode::fresh(2)})});
  EXPECT_EQ(oracle::enumerate(x, {3}).size(), 6u);
}

TEST(EnumerateTest, EmptyObjects) {
  EXPECT_TRUE(oracle::enumerate(TupleSet::empty(2), {4}).empty());
  EXPECT_TRUE(oracle::enumerate(KSubsetSet::empty(2), {4}).empty());
  EXPECT_TRUE(oracle::enumerate(PQBasis({kA}, {kA}, 2), {4}).empty());
}

TEST(EnumerateTest, WindowMustContainParameters) {
  EXPECT_THROW(oracle::enumerate(PQBasis({kA}, {kB}, 2), {1}), PreconditionError);
}

TEST(EnumerateTest, Deterministic) {
  Rng rng(67);
  for (int trial = 0; trial < 20; ++trial) {
    KSubsetSet c = random_family(rng, 3, 3);
    EXPECT_EQ(oracle::enumerate(c, {8}), oracle::enumerate(c, {8}));
  }
}

TEST(GrowthTest, BasisExamples) {
  PQBasis growing({kA}, {kB}, 2);
  EXPECT_EQ(oracle::enumerate(growing, {4}).size(), 2u);
  EXPECT_EQ(oracle::enumerate(growing, {6}).size(), 4u);
  EXPECT_EQ(oracle::enumerate(growing, {8}).size(), 6u);
  EXPECT_EQ(oracle::growth_classify(growing, 5, 7, 9).kind, oracle::Growth::kGrowing);

  oracle::GrowthResult pinned =
      oracle::growth_classify(PQBasis({kA, kB}, {}, 2), 5, 7, 9);
  EXPECT_EQ(pinned.kind, oracle::Growth::kFinite);
  EXPECT_EQ(pinned.count, 1u);

  EXPECT_EQ(oracle::growth_classify(PQBasis({kA}, {kA}, 2), 4, 6, 8).kind,
            oracle::Growth::kEmpty);
}

TEST(GrowthTest, ThresholdEnforced) {
  PQBasis b({kA}, {kB}, 2);  // support 2, arity 2: first window must be >= 5
  EXPECT_THROW(oracle::growth_classify(b, 4, 6, 8), PreconditionError);
  EXPECT_THROW(oracle::growth_classify(b, 6, 6, 8), PreconditionError);
  EXPECT_NO_THROW(oracle::growth_classify(b, 5, 6, 7));
}

DefinableMap erase_map(std::uint32_t rank) {
  std::map<OrbitDescriptor, MapRule> rules;
  for (const OrbitDescriptor& d : DefinableMap::all_descriptors({kA}, rank)) {
    rules[d] = MapRule{{}, true};  // drop a, keep the rest
  }
  return DefinableMap({kA}, rank, std::move(rules));
}

DefinableMap toggle_map(std::uint32_t rank) {
  std::map<OrbitDescriptor, MapRule> rules;
  for (const OrbitDescriptor& d : DefinableMap::all_descriptors({kA}, rank)) {
    if (d.trace.contains(kA)) {
      rules[d] = MapRule{{}, true};  // remove a
    } else if (d.size < rank) {
      rules[d] = MapRule{{kA}, true};  // add a
    } else {
      rules[d] = MapRule{{}, true};  // no room: keep as is
    }
  }
  return DefinableMap({kA}, rank, std::move(rules));
}

TEST(MapCheckTest, Examples) {
  oracle::MapCheckResult identity =
      oracle::oracle_map_check(DefinableMap::identity({kA}, 2), {5});
  EXPECT_TRUE(identity.surjective);
  EXPECT_TRUE(identity.injective);

  oracle::MapCheckResult erase = oracle::oracle_map_check(erase_map(2), {5});
  EXPECT_FALSE(erase.surjective);
  EXPECT_FALSE(erase.injective);
  ASSERT_TRUE(erase.missing.has_value());
  EXPECT_TRUE(erase.missing->contains(kA));
  ASSERT_TRUE(erase.collision.has_value());

  oracle::MapCheckResult toggle = oracle::oracle_map_check(toggle_map(2), {5});
  EXPECT_TRUE(toggle.surjective);
  EXPECT_TRUE(toggle.injective);
}

TEST(MapCheckTest, WindowTooSmall) {
  EXPECT_THROW(oracle::oracle_map_check(erase_map(2), {4}), PreconditionError);
}

}  // namespace
}  // namespace atomset
