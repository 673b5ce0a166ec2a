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

#include "atomset/dsl.hpp"

#include <gtest/gtest.h>

#include "atomset/generators.hpp"
#include "atomset/oracle.hpp"

namespace atomset {
namespace {

using dsl::CompiledObject;
using dsl::ParseError;

CompiledObject compile_text(const std::string& text, NameTable& table) {
  return dsl::parse_and_compile(text, table);
}

TEST(ParseTest, BasisLiteral) {
  NameTable table;
  CompiledObject obj = compile_text("basis(+{a} -{b}, 2)", table);
  const PQBasis& b = std::get<PQBasis>(obj);
  EXPECT_EQ(b.p(), AtomSet({Atom(0)}));
  EXPECT_EQ(b.q(), AtomSet({Atom(1)}));
  EXPECT_EQ(b.k(), 2u);
  EXPECT_EQ(dsl::print(obj, table), "basis(+{a} -{b}, 2)");
}

TEST(ParseTest, TupleComprehension) {
  NameTable table;
  CompiledObject obj = compile_text("{ (x) | x != a }", table);
  const TupleSet& x = std::get<TupleSet>(obj);
  EXPECT_EQ(ts_card(x), CardClass::Infinite());
  EXPECT_EQ(ts_card(ts_complement(x)), CardClass::Finite(1));
  EXPECT_EQ(dsl::print(obj, table), "{ (v1) | v1 != a }");
}

TEST(ParseTest, SubsetComprehensionEqualsBasis) {
  NameTable table;
  CompiledObject left = compile_text("{ s : 2 | a in s & b notin s }", table);
  CompiledObject right = compile_text("basis(+{a} -{b}, 2)", table);
  EXPECT_TRUE(kss_extensionally_equal(std::get<KSubsetSet>(left),
                                      pq_to_kss(std::get<PQBasis>(right))));
}

TEST(ParseTest, FormulaConnectives) {
  NameTable table;
  // Negation and parentheses: !(x = a | x = b) is the doubly cofinite cell.
  CompiledObject obj = compile_text("{ (x) | !(x = a | x = b) }", table);
  const TupleSet& x = std::get<TupleSet>(obj);
  EXPECT_EQ(ts_card(ts_complement(x)), CardClass::Finite(2));
  // Parameter-to-parameter literals are constant.
  CompiledObject empty = compile_text("{ (x) | a = b }", table);
  EXPECT_EQ(ts_card(std::get<TupleSet>(empty)), CardClass::Empty());
  CompiledObject diag = compile_text("{ (x, y) | x = y }", table);
  EXPECT_EQ(std::get<TupleSet>(diag).cells().size(), 1u);
}

TEST(ParseTest, ArityZeroComprehensions) {
  NameTable table;
  EXPECT_EQ(ts_card(std::get<TupleSet>(compile_text("{ () | true }", table))),
            CardClass::Finite(1));
  EXPECT_EQ(ts_card(std::get<TupleSet>(compile_text("{ () | false }", table))),
            CardClass::Empty());
}

TEST(ParseTest, EmptyFamilyLiteral) {
  NameTable table;
  CompiledObject obj = compile_text("empty(3)", table);
  EXPECT_EQ(std::get<KSubsetSet>(obj), KSubsetSet::empty(3));
  EXPECT_EQ(dsl::print(obj, table), "empty(3)");
}

TEST(ParseTest, UnionIntersectComplement) {
  NameTable table;
  CompiledObject obj =
      compile_text("~(basis(+{a} -{}, 2) | { s : 2 | b in s })", table);
  const KSubsetSet& c = std::get<KSubsetSet>(obj);
  // Complement of "contains a or contains b" = sets avoiding both.
  KSubsetSet expected = pq_to_kss(PQBasis({}, {Atom(0), Atom(1)}, 2));
  EXPECT_TRUE(kss_extensionally_equal(c, expected));
}

TEST(ParseTest, RelationLiteral) {
  NameTable table;
  CompiledObject obj =
      compile_text("rel(1, 1) S={a} { ps={} pt={a} m=0 }", table);
  const Relation& r = std::get<Relation>(obj);
  EXPECT_EQ(r.n1(), 1u);
  EXPECT_EQ(r.support(), AtomSet({Atom(0)}));
  ASSERT_EQ(r.orbits().size(), 1u);
  EXPECT_EQ(r.orbits()[0].right_trace, AtomSet({Atom(0)}));
  EXPECT_EQ(dsl::print(obj, table), "rel(1, 1) S={a} { ps={} pt={a} m=0 }");
  // Implicit support = union of mentioned atoms.
  CompiledObject implicit = compile_text("rel(1, 1) { ps={} pt={a} m=0 }", table);
  EXPECT_EQ(std::get<Relation>(implicit), r);
}

TEST(ParseTest, MapFile) {
  NameTable table;
  std::string text =
      "map P={a} rank=1\n"
      "rule p={} k=0 -> out={} fresh=no\n"
      "rule p={} k=1 -> out={} fresh=yes\n"
      "rule p={a} k=1 -> out={a} fresh=no\n";
  CompiledObject obj = compile_text(text, table);
  const DefinableMap& f = std::get<DefinableMap>(obj);
  EXPECT_EQ(f.rank(), 1u);
  EXPECT_EQ(map_eval(f, {Atom(1)}), AtomSet({Atom(1)}));
  EXPECT_EQ(dsl::print(obj, table), text);
}

TEST(ParseTest, MapFileErrors) {
  NameTable table;
  // Missing rule for orbit ({a}, 1).
  EXPECT_THROW(compile_text("map P={a} rank=1\n"
                            "rule p={} k=0 -> out={} fresh=no\n"
                            "rule p={} k=1 -> out={} fresh=yes\n",
                            table),
               ParseError);
  // Rank-bound violation: out={a} plus the fresh part of a rank-1 orbit.
  NameTable table2;
  EXPECT_THROW(compile_text("map P={a} rank=1\n"
                            "rule p={} k=0 -> out={} fresh=no\n"
                            "rule p={} k=1 -> out={a} fresh=yes\n"
                            "rule p={a} k=1 -> out={a} fresh=no\n",
                            table2),
               ParseError);
  // Duplicate rule.
  NameTable table3;
  EXPECT_THROW(compile_text("map P={a} rank=1\n"
                            "rule p={} k=0 -> out={} fresh=no\n"
                            "rule p={} k=0 -> out={} fresh=no\n",
                            table3),
               ParseError);
  // Output atom outside P.
  NameTable table4;
  EXPECT_THROW(compile_text("map P={a} rank=1\n"
                            "rule p={} k=0 -> out={b} fresh=no\n"
                            "rule p={} k=1 -> out={} fresh=yes\n"
                            "rule p={a} k=1 -> out={a} fresh=no\n",
                            table4),
               ParseError);
}

TEST(ParseTest, ErrorPositions) {
  NameTable table;
  try {
    compile_text("basis(+{a} -{b}", table);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position().line, 1);
    EXPECT_EQ(e.position().column, 16);
  }
  try {
    compile_text("{ (x) |\n x = }", table);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position().line, 2);
    EXPECT_GT(e.position().column, 1);
  }
  EXPECT_THROW(compile_text("basis(+{a} -{b}, 2) extra", table), ParseError);
  EXPECT_THROW(compile_text("@#$", table), ParseError);
}

TEST(ParseTest, NameRules) {
  NameTable table;
  EXPECT_THROW(compile_text("basis(+{star} -{}, 1)", table), Error);
  EXPECT_THROW(compile_text("{ s : 1 | s in s }", table), ParseError);
  // Explicit indices bind to their atom; aliases avoid reserved indices.
  NameTable table2;
  CompiledObject obj = compile_text("basis(+{a, x0} -{}, 2)", table2);
  const PQBasis& b = std::get<PQBasis>(obj);
  EXPECT_EQ(b.p(), AtomSet::of_indices({0, 1}));  // x0 -> 0, a -> 1
  EXPECT_EQ(table2.name_of(Atom(1)), "a");
  // Alias takes an index, a later explicit reference to it is a clash.
  NameTable table3;
  compile_text("basis(+{a} -{}, 1)", table3);
  EXPECT_THROW(compile_text("basis(+{x0} -{}, 1)", table3), Error);
}

TEST(ParseTest, KindMismatches) {
  NameTable table;
  EXPECT_THROW(compile_text("{ (x) | x != a } | { s : 1 | a in s }", table), ParseError);
  EXPECT_THROW(compile_text("basis(+{a} -{}, 2) | basis(+{a} -{}, 3)", table), ParseError);
  EXPECT_THROW(compile_text("{ (x) | x != a } | { (x, y) | x = y }", table), ParseError);
  EXPECT_THROW(compile_text("~rel(1, 1) { ps={} pt={} m=0 }", table), ParseError);
}

TEST(ParseTest, PathologicalNestingIsRejectedCleanly) {
  NameTable table;
  std::string deep(5000, '~');
  EXPECT_THROW(compile_text(deep + "empty(1)", table), ParseError);
  std::string parens(5000, '(');
  EXPECT_THROW(compile_text("{ s : 1 | " + parens + "true", table), ParseError);
}

TEST(ParseTest, CommentsAndWhitespace) {
  NameTable table;
  CompiledObject obj =
      compile_text("# a cofinite line\n  { (x) |\n    x != a }  # trailing\n", table);
  EXPECT_EQ(ts_card(std::get<TupleSet>(obj)), CardClass::Infinite());
}

TEST(PrintTest, EmptyAndFullForms) {
  NameTable table;
  EXPECT_EQ(dsl::print(CompiledObject(TupleSet::empty(2)), table),
            "{ (v1, v2) | false }");
  EXPECT_EQ(dsl::print(CompiledObject(KSubsetSet::full(2)), table),
            "{ s : 2 | true }");
  EXPECT_EQ(dsl::print(CompiledObject(KSubsetSet::empty(2)), table), "empty(2)");
  EXPECT_EQ(dsl::print(CompiledObject(TupleSet::full(0)), table), "{ () | true }");
}

TEST(PrintTest, VariableNamesAvoidAtomNames) {
  NameTable table;
  table.bind("v1");  // binds the alias v1 to atom 0
  TupleSet x(1, {Atom(0)}, {Cell({CellCode::fresh(1)})});
  std::string text = dsl::print(CompiledObject(x), table);
  EXPECT_EQ(text, "{ (v2) | v2 != v1 }");
  CompiledObject back = dsl::parse_and_compile(text, table);
  EXPECT_EQ(std::get<TupleSet>(back), x);
}

TEST(PrintTest, StarSets) {
  NameTable table;
  table.bind("a");
  EXPECT_EQ(dsl::print(StarSet{{Atom(0)}, true}, table), "{a, star}");
  EXPECT_EQ(dsl::print(StarSet{{}, false}, table), "{}");
}

TEST(RoundTripTest, AllKinds) {
  Rng rng(101);
  for (int trial = 0; trial < 250; ++trial) {
    NameTable table;
    CompiledObject obj = [&]() -> CompiledObject {
      switch (trial % 5) {
        case 0: return random_tuple_set(rng, 3, 3);
        case 1: return random_basis(rng, 3, 4);
        case 2: return random_family(rng, 4, 3);
        case 3: return random_relation(rng, 2, 2, rng.flip());
        default: return random_map(rng, AtomSet::first(rng.below(3)), 1 + rng.below(2));
      }
    }();
    std::string text = dsl::print(obj, table);
    CompiledObject back = dsl::parse_and_compile(text, table);
    EXPECT_EQ(back, obj) << "round trip failed for: " << text;
    EXPECT_EQ(dsl::print(back, table), text);
  }
}

TEST(TableFileTest, ParseAndPrint) {
  NameTable table;
  FiniteToOneTable parsed = dsl::parse_table("({a, b}, 1)\n({c}, 0)\n", table);
  ASSERT_EQ(parsed.entries().size(), 2u);
  EXPECT_EQ(parsed.entries()[0].second, 1u);
  EXPECT_EQ(dsl::print(parsed, table), "({a, b}, 1)\n({c}, 0)\n");
  EXPECT_THROW(dsl::parse_table("({a}, 1)\n({a}, 2)\n", table), ParseError);
}

TEST(AtomSetLiteralTest, Parse) {
  NameTable table;
  EXPECT_EQ(dsl::parse_atom_set("{a, x4}", table),
            AtomSet(std::vector<Atom>{Atom(0), Atom(4)}));
  EXPECT_EQ(dsl::parse_atom_set("{}", table), AtomSet{});
  EXPECT_THROW(dsl::parse_atom_set("{a", table), ParseError);
}

}  // namespace
}  // namespace atomset
