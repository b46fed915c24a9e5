#include <gtest/gtest.h>

#include <random>

#include "simplexlab/experiments.hpp"
#include "simplexlab/io.hpp"
#include "simplexlab/rewrite.hpp"
#include "simplexlab/structure.hpp"
#include "simplexlab/threshold.hpp"
#include "simplexlab/verify.hpp"

using namespace simplexlab;

namespace {

SimplexStructure tree(std::vector<std::pair<std::string, std::vector<std::string>>> s) {
  SimplexStructure out;
  for (auto& [id, vs] : s) out.simplices.push_back({id, vs});
  return out;
}

SimplexStructure bowtie() { return tree({{"S0", {"a", "b", "c"}}, {"S1", {"c", "d", "e"}}}); }
SimplexStructure kite() { return tree({{"K0", {"p", "q", "r", "s"}}, {"K1", {"s", "t"}}}); }
SimplexStructure chain3() {
  return tree({{"S0", {"a", "b", "c"}}, {"S1", {"c", "d", "e"}}, {"S2", {"e", "f", "g"}}});
}

std::size_t vertex_total(const SimplexStructure& s) { return s.vertex_names().size(); }

}  // namespace

TEST(Validate, Examples) {
  EXPECT_TRUE(validate(tree({{"S0", {"a", "b", "c"}}})).ok);
  auto glued = validate(tree({{"S0", {"a", "b", "c"}}, {"S1", {"b", "c", "d"}}}));
  EXPECT_FALSE(glued.ok);
  EXPECT_EQ(glued.axiom, 1);
  auto loop = validate(tree({{"S0", {"a", "b"}}, {"S1", {"b", "c"}}, {"S2", {"c", "a"}}}));
  EXPECT_FALSE(loop.ok);
  EXPECT_EQ(loop.axiom, 3);
  auto split = validate(tree({{"S0", {"a", "b"}}, {"S1", {"c", "d"}}}));
  EXPECT_FALSE(split.ok);
  EXPECT_EQ(split.axiom, 2);
  EXPECT_EQ(validate(tree({{"S0", {"a"}}})).axiom, 0);
  EXPECT_EQ(validate(tree({{"S0", {"a", "b"}}, {"S0", {"b", "c"}}})).axiom, 0);
}

TEST(Validate, Cycles) {
  auto c = tree({{"S0", {"a", "b"}}, {"S1", {"b", "c"}}, {"S2", {"c", "a"}}});
  c.kind = StructureKind::cycle;
  EXPECT_TRUE(validate(c).ok);
  auto two = tree({{"S0", {"a", "b"}}, {"S1", {"b", "a"}}});
  two.kind = StructureKind::cycle;
  EXPECT_FALSE(validate(two).ok);
  auto chord = tree({{"S0", {"a", "b"}}, {"S1", {"b", "c"}}, {"S2", {"c", "d", "b"}}, {"S3", {"d", "a"}}});
  chord.kind = StructureKind::cycle;
  EXPECT_FALSE(validate(chord).ok);
}

TEST(Roles, Bowtie) {
  auto roles = classify_vertices({bowtie(), "S0", std::nullopt});
  EXPECT_EQ(roles["S0"].child_vertices, std::vector<std::string>{"c"});
  EXPECT_EQ(roles["S0"].free_vertices, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(roles["S1"].parent_vertex, std::optional<std::string>("c"));
  EXPECT_EQ(roles["S1"].free_vertices, (std::vector<std::string>{"d", "e"}));
  EXPECT_EQ(roles["S1"].depth, 1);
}

TEST(Roles, SingleSimplexAndChain) {
  auto single = classify_vertices({tree({{"S0", {"a", "b", "c"}}}), "S0", std::nullopt});
  EXPECT_EQ(single["S0"].free_vertices.size(), 3u);
  auto roles = classify_vertices({chain3(), "S0", std::nullopt});
  EXPECT_EQ(roles["S1"].parent_vertex, std::optional<std::string>("c"));
  EXPECT_EQ(roles["S1"].child_vertices, std::vector<std::string>{"e"});
  EXPECT_THROW(classify_vertices({bowtie(), "S0", std::string("c")}), ParameterError);
}

TEST(Counts, NkAndClassExponent) {
  EXPECT_EQ(n_k(bowtie(), 1), 3);
  EXPECT_EQ(n_k(chain3(), 1), 4);
  EXPECT_EQ(n_k(tree({{"S0", {"a", "b", "c", "d"}}}), 2), 3);
  EXPECT_EQ(c_simplex(1, 5), 1);
  EXPECT_EQ(c_simplex(2, 2), 3);
  EXPECT_EQ(c_simplex(3, 2), 5);
  EXPECT_EQ(c_structure(bowtie(), 2), 6);
  EXPECT_EQ(c_structure(kite(), 2), 6);
  EXPECT_EQ(c_structure(tree({{"S0", {"a", "b"}}, {"S1", {"b", "c"}}}), 4), 2);
}

TEST(Canonical, InvariantUnderRenaming) {
  auto a = bowtie();
  auto b = tree({{"X", {"z", "y", "x"}}, {"Y", {"u", "v", "x"}}});
  EXPECT_EQ(canonical_form(a), canonical_form(b));
  EXPECT_NE(canonical_form(a), canonical_form(kite()));
  EXPECT_EQ(structural_hash(a), structural_hash(b));
}

TEST(Io, RoundTrip) {
  RootedTree t{bowtie(), "S1", std::nullopt};
  auto back = structure_from_json(to_json(t));
  EXPECT_EQ(back.rooted().root, "S1");
  EXPECT_EQ(canonical_form(back.structure), canonical_form(t.structure));
  EXPECT_THROW(structure_from_json(json::parse(R"({"kind":"blob","simplices":[]})")), ParameterError);
  EXPECT_THROW(structure_from_json(json::parse(R"({"simplices":[{"id":"S0"}]})")), ParameterError);
  EXPECT_THROW(structure_from_json(json::parse(R"({"simplices":[{"id":"S0","vertices":["a","b"]}],"root":"S9"})")),
               ParameterError);
}

TEST(BranchShift, DuplicatesAndDrops) {
  // root tetrahedron, a triangle hanging off it with two edges at v1 and one at v2
  auto s = tree({{"R", {"r0", "r1", "r2", "r3"}},
                 {"T", {"r3", "v1", "v2"}},
                 {"G1", {"v1", "g1"}},
                 {"G2", {"v1", "g2"}},
                 {"B", {"v2", "b1"}}});
  RootedTree t{s, "R", std::nullopt};
  auto [t1, t2] = branch_shift(t, "T", "v1", "T", "v2");
  auto at = [](const SimplexStructure& x, const std::string& v) {
    int n = 0;
    for (const auto& sx : x.simplices) n += sx.dim() == 1 && sx.contains(v);
    return n;
  };
  EXPECT_EQ(t1.structure.simplices.size(), 6u);
  EXPECT_EQ(at(t1.structure, "v1"), 4);
  EXPECT_EQ(at(t1.structure, "v2"), 0);
  EXPECT_EQ(t2.structure.simplices.size(), 4u);
  EXPECT_EQ(at(t2.structure, "v1"), 0);
  EXPECT_EQ(at(t2.structure, "v2"), 2);
  for (int k = 1; k <= 4; ++k) {
    EXPECT_EQ(n_k(t1.structure, k), n_k(s, k));
    EXPECT_EQ(n_k(t2.structure, k), n_k(s, k));
  }
  for (int d = 2; d <= 5; ++d) {
    EXPECT_EQ(2 * c_structure(s, d), c_structure(t1.structure, d) + c_structure(t2.structure, d));
  }
  EXPECT_EQ(vertex_total(t1.structure) + vertex_total(t2.structure), 2 * vertex_total(s));
}

TEST(BranchShift, SingleEdgeBranches) {
  auto s = tree({{"S0", {"a", "b", "c"}}, {"E1", {"b", "x"}}, {"E2", {"c", "y"}}});
  auto [t1, t2] = branch_shift({s, "S0", std::nullopt}, "S0", "b", "S0", "c");
  auto want = tree({{"S0", {"a", "b", "c"}}, {"E1", {"b", "x"}}, {"E2", {"b", "y"}}});
  EXPECT_EQ(canonical_form(t1.structure), canonical_form(want));
  EXPECT_EQ(canonical_form(t2.structure), canonical_form(want));
}

TEST(BranchShift, Rejections) {
  RootedTree t{bowtie(), "S0", std::nullopt};
  EXPECT_THROW(branch_shift(t, "S0", "a", "S0", "c"), ParameterError);
  EXPECT_THROW(branch_shift(t, "S0", "c", "S0", "c"), ParameterError);
  auto nested = tree({{"S0", {"a", "b", "c"}}, {"S1", {"c", "d", "e"}}, {"S2", {"e", "f"}}, {"S3", {"b", "g"}}});
  EXPECT_THROW(branch_shift({nested, "S0", std::nullopt}, "S0", "c", "S1", "e"), ParameterError);
}

TEST(Unbalance, BowtieToKite) {
  RootedTree t{bowtie(), "S0", std::nullopt};
  auto [t1, t2] = simplex_unbalance(t, "S0", 1, "S1", 1);
  EXPECT_EQ(canonical_form(t1.structure), canonical_form(kite()));
  EXPECT_EQ(canonical_form(t2.structure), canonical_form(kite()));
  EXPECT_EQ(n_k(t1.structure, 1), 3);
}

TEST(Unbalance, TriangleBranches) {
  auto s = tree({{"R", {"a", "b", "c"}}, {"G", {"b", "g1", "g2"}}, {"B", {"c", "b1", "b2"}}});
  auto [t1, t2] = simplex_unbalance({s, "R", std::nullopt}, "G", 1, "B", 1);
  EXPECT_EQ(t1.structure.get("G").dim(), 3);
  EXPECT_EQ(t1.structure.get("B").dim(), 1);
  EXPECT_EQ(t2.structure.get("G").dim(), 1);
  EXPECT_EQ(t2.structure.get("B").dim(), 3);
  EXPECT_EQ(n_k(t1.structure, 1), n_k(s, 1));
  EXPECT_THROW(simplex_unbalance({s, "R", std::nullopt}, "G", 2, "B", 1), ParameterError);
  EXPECT_THROW(simplex_unbalance({s, "R", std::nullopt}, "G", 1, "G", 1), ParameterError);
}

TEST(ExponentIdentity, Cases) {
  auto r = exponent_identity_check(4, 2, 2);
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(-r.c_part, 2 - 2 - 1);  // c(T) - c(T') = n - m - 1
  EXPECT_EQ(r.stab_part, -r.c_part);
  auto big = exponent_identity_check(3, 5, 4);
  EXPECT_TRUE(big.ok);
  EXPECT_EQ(big.stab_part, 0);
  EXPECT_EQ(big.c_part, 0);
  for (int d = 2; d <= 6; ++d) {
    for (int n = 1; n <= 8; ++n) {
      for (int m = 1; m <= 8; ++m) EXPECT_TRUE(exponent_identity_check(d, n, m).ok) << d << " " << n << " " << m;
    }
  }
  EXPECT_THROW(exponent_identity_check(1, 1, 1), ParameterError);
}

TEST(Canonicalize, FixpointAndBowtie) {
  auto single = tree({{"S0", {"a", "b", "c", "d"}}});
  auto r0 = canonicalize({single, "S0", std::nullopt}, 1);
  ASSERT_EQ(r0.terminals.size(), 1u);
  EXPECT_TRUE(r0.trace.empty());
  auto r = canonicalize({bowtie(), "S0", std::nullopt}, 1);
  ASSERT_EQ(r.terminals.size(), 1u);
  EXPECT_EQ(canonical_form(r.terminals[0].structure), canonical_form(kite()));
}

TEST(Canonicalize, ChainOfTriangles) {
  auto r = canonicalize({chain3(), "S1", std::nullopt}, 1);
  ASSERT_FALSE(r.terminals.empty());
  for (const auto& t : r.terminals) {
    int big = 0;
    for (const auto& s : t.structure.simplices) {
      if (s.dim() > 1) {
        ++big;
        EXPECT_EQ(s.dim(), 4);
      }
    }
    EXPECT_EQ(big, 1);
  }
}

TEST(Canonicalize, RandomTreesConserve) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 100; ++i) {
    auto s = random_tree(rng, 6, 4);
    EXPECT_EQ(detail::check_rewrites({s, s.simplices.front().id, std::nullopt}), "") << canonical_form(s);
  }
}

TEST(CycleUnbalance, ThreeTriangles) {
  auto c = tree({{"S0", {"a", "b", "x"}}, {"S1", {"b", "c", "y"}}, {"S2", {"c", "a", "z"}}});
  c.kind = StructureKind::cycle;
  std::vector<RewriteStep> trace;
  auto forms = cycle_normal_forms(c, &trace);
  EXPECT_GE(trace.size(), 2u);
  for (const auto& f : forms) {
    int sum = 0, top = 0;
    for (const auto& s : f.simplices) {
      sum += s.dim();
      top = std::max(top, s.dim());
    }
    EXPECT_EQ(sum, 6);
    EXPECT_EQ(top, 4);
    EXPECT_EQ(vertex_total(f), vertex_total(c));
  }
  auto edges = tree({{"S0", {"a", "b"}}, {"S1", {"b", "c"}}, {"S2", {"c", "a"}}});
  edges.kind = StructureKind::cycle;
  EXPECT_EQ(cycle_normal_forms(edges).size(), 1u);
}

TEST(Threshold, WorkedValues) {
  auto p = predict_threshold(chain3(), 4, 1);
  EXPECT_EQ(p.rows[0].route, "general-d");
  EXPECT_EQ(p.rows[0].s, Rational(17, 5));
  ASSERT_EQ(p.rows.size(), 2u);
  EXPECT_EQ(p.rows[1].route, "small-simplex");
  EXPECT_EQ(p.rows[1].s, Rational(7, 2));
  auto b = predict_threshold(bowtie(), 2, 1);
  ASSERT_EQ(b.rows.size(), 2u);
  EXPECT_EQ(b.rows[1].route, "plane");
  EXPECT_EQ(b.rows[1].s, Rational(12, 7));
  EXPECT_EQ(b.minimum, Rational(12, 7));
}

TEST(Threshold, AllK) {
  auto sweep = predict_all_k(chain3(), 4);
  EXPECT_EQ(sweep.per_k.size(), 2u);
  EXPECT_EQ(sweep.best, Rational(17, 5));
  EXPECT_EQ(sweep.best_k, 1);
  EXPECT_THROW(predict_threshold(chain3(), 4, 3), ParameterError);
  auto c = chain3();
  c.kind = StructureKind::cycle;
  EXPECT_THROW(predict_threshold(c, 4, 1), ParameterError);
}
