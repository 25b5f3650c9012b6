#include <set>

#include <gtest/gtest.h>

#include "braidbu/config_space.hpp"

using namespace braidbu;

namespace {

ConfCell cell_of(const Graph& g, std::initializer_list<const char*> names) {
  ConfCell c;
  for (const char* n : names) c.push_back(*g.parse_cell(n));
  return c;
}

long alternating_sum(const CubeComplex& c) {
  long total = 0;
  for (int d = 0; d <= c.dimension(); ++d) total += (d % 2 ? -1L : 1L) * c.count(d);
  return total;
}

}  // namespace

TEST(Dconf, PathOfThreeVertices) {
  const CubeComplex c = build_dconf(make_path(3), 2);
  EXPECT_EQ(c.count(0), 6);
  EXPECT_EQ(c.count(1), 4);
  EXPECT_EQ(c.count(2), 0);
  EXPECT_EQ(chi_oracle(c), 2);
  EXPECT_EQ(components(c), 2);
}

TEST(Dconf, LollipopCounts) {
  const CubeComplex two = build_dconf(make_lollipop(2), 2);
  EXPECT_EQ(two.count(0), 12);
  EXPECT_EQ(two.count(1), 16);
  EXPECT_EQ(two.count(2), 2);
  EXPECT_EQ(chi_oracle(two), -2);

  const CubeComplex three = build_dconf(make_lollipop(3), 3);
  EXPECT_EQ(three.count(0), 120);
  EXPECT_EQ(three.count(1), 216);
  EXPECT_EQ(three.count(2), 96);
  EXPECT_EQ(three.count(3), 12);
  EXPECT_EQ(chi_oracle(three), -12);
  EXPECT_EQ(chi_oracle(three), alternating_sum(three));
}

TEST(Dconf, Connectivity) {
  EXPECT_EQ(components(build_dconf(make_star(3, 2), 2)), 1);
  for (int m = 2; m <= 3; ++m) EXPECT_EQ(components(build_dconf(make_lollipop(m), m)), 1);
  EXPECT_EQ(components(build_dconf(make_path(5), 3)), 6);
}

TEST(Dconf, CellsHaveDisjointClosures) {
  const Graph g = make_lollipop(3);
  const CubeComplex c = build_dconf(g, 3);
  for (int d = 0; d <= c.dimension(); ++d) {
    for (int i = 0; i < c.count(d); ++i) {
      std::multiset<int> touched;
      for (int x : c.cell(d, i)) {
        const auto [lo, hi] = g.closure(x);
        touched.insert(lo);
        if (hi != lo) touched.insert(hi);
      }
      for (int v : touched) ASSERT_EQ(touched.count(v), 1u) << c.describe(d, i);
      ASSERT_EQ(cell_dimension(g, c.cell(d, i)), d);
    }
  }
}

TEST(Dconf, RejectsBadParticleCount) { EXPECT_THROW(build_dconf(make_path(3), 0), InvalidParameter); }

TEST(Action, Examples) {
  const Graph g = make_lollipop(2);
  const ConfCell c = cell_of(g, {"a1", "2"});
  EXPECT_EQ(act(Permutation::identity(2), c), c);
  EXPECT_EQ(act(Permutation::parse_cycles(2, "(12)"), c), cell_of(g, {"2", "a1"}));
}

TEST(Action, IsALeftAction) {
  const Graph g = make_lollipop(3);
  const ConfCell c = cell_of(g, {"0", "a", "3"});
  for (const auto& s : Permutation::all(3)) {
    for (const auto& t : Permutation::all(3)) {
      EXPECT_EQ(act(s, act(t, c)), act(s * t, c));
    }
  }
}

TEST(Action, RotateMatchesCycleAction) {
  const Graph g = make_lollipop(3);
  const ConfCell c = cell_of(g, {"0", "a", "3"});
  for (int k = 0; k < 3; ++k) EXPECT_EQ(rotate(c, k), act(rotation_cycle(3, 1).pow(k), c));
}

TEST(Quotient, OrbitsAreFreeAndOfSizeM) {
  for (int m = 2; m <= 3; ++m) {
    const CubeComplex c = build_dconf(make_lollipop(m), m);
    const QuotientComplex q = build_quotient(c);
    for (int d = 0; d <= c.dimension(); ++d) {
      EXPECT_EQ(q.count(d) * m, c.count(d));
      for (int o = 0; o < q.count(d); ++o) {
        std::set<int> members;
        for (int k = 0; k < m; ++k) {
          const int idx = q.member(d, o, k);
          members.insert(idx);
          EXPECT_EQ(q.orbit_of(d, idx), o);
          EXPECT_EQ(c.cell(d, idx), rotate(c.cell(d, q.representative(d, o)), k));
        }
        EXPECT_EQ(static_cast<int>(members.size()), m);
      }
    }
    EXPECT_EQ(chi_oracle(c), m * chi_oracle(q));
  }
}

TEST(Quotient, SizeTwoChi) {
  const QuotientComplex q = build_quotient(build_dconf(make_lollipop(2), 2));
  EXPECT_EQ(chi_oracle(q), -1);
  EXPECT_EQ(components(q), 1);
}

TEST(Quotient, CriticalEdgeOrbitsAtSizeTwo) {
  const Graph g = make_lollipop(2);
  const CubeComplex c = build_dconf(g, 2);
  const QuotientComplex q = build_quotient(c);
  EXPECT_EQ(q.orbit_of(1, c.index_of(cell_of(g, {"a", "2"}))), q.orbit_of(1, c.index_of(cell_of(g, {"2", "a"}))));
  EXPECT_EQ(q.orbit_of(1, c.index_of(cell_of(g, {"0", "a"}))), q.orbit_of(1, c.index_of(cell_of(g, {"a", "0"}))));
  EXPECT_NE(q.orbit_of(1, c.index_of(cell_of(g, {"a", "2"}))), q.orbit_of(1, c.index_of(cell_of(g, {"0", "a"}))));
}

TEST(Quotient, FacetsProjectOrbitwise) {
  const CubeComplex c = build_dconf(make_lollipop(3), 3);
  const QuotientComplex q = build_quotient(c);
  for (int o = 0; o < q.count(2); ++o) {
    const auto& up = c.facets(2, q.representative(2, o));
    const auto& down = q.facets(2, o);
    ASSERT_EQ(up.size(), down.size());
    for (std::size_t i = 0; i < up.size(); ++i) {
      EXPECT_EQ(down[i].low, q.orbit_of(1, up[i].low));
      EXPECT_EQ(down[i].high, q.orbit_of(1, up[i].high));
    }
  }
}
