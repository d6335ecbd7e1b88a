#include <gtest/gtest.h>

#include <random>

#include "gtc/error.hpp"
#include "gtc/homology.hpp"

using namespace gtc;

namespace {

CatPtr crown() { return standard::poset({"a", "b", "c", "d"}, {{"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}}); }

CatPtr zigzag() { return standard::poset({"a", "b", "c", "d"}, {{"a", "b"}, {"c", "b"}, {"c", "d"}}); }

// Random poset on n points: i < j kept with probability p, then closed.
CatPtr random_poset(std::mt19937_64& rng, unsigned n, double p) {
  std::bernoulli_distribution keep(p);
  std::vector<std::vector<bool>> lt(n, std::vector<bool>(n, false));
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = i + 1; j < n; ++j) lt[i][j] = keep(rng);
  for (unsigned k = 0; k < n; ++k)
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = 0; j < n; ++j)
        if (lt[i][k] && lt[k][j]) lt[i][j] = true;
  std::vector<std::string> names;
  for (unsigned i = 0; i < n; ++i) names.push_back("p" + std::to_string(i));
  std::vector<std::pair<std::string, std::string>> rel;
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j)
      if (lt[i][j]) rel.emplace_back(names[i], names[j]);
  return standard::poset(names, rel);
}

// Euler characteristic of a finite poset counted from strict chains.
long chain_euler_characteristic(const FinCategory& c) {
  const std::size_t n = c.num_objects();
  // chains_from[x][k] = strict chains of length k starting at x.
  std::vector<std::vector<long>> chains(n, std::vector<long>(n + 1, 0));
  std::vector<Obj> order(n);
  for (Obj x = 0; x < n; ++x) order[x] = x;
  // Longest-path order so that successors are processed first.
  std::vector<std::size_t> height(n, 0);
  for (std::size_t round = 0; round < n; ++round)
    for (Mor f = 0; f < c.num_morphisms(); ++f)
      if (!c.is_identity(f)) height[c.src(f)] = std::max(height[c.src(f)], height[c.tgt(f)] + 1);
  std::sort(order.begin(), order.end(), [&](Obj a, Obj b) { return height[a] < height[b]; });
  for (Obj x : order) {
    chains[x][0] = 1;
    for (Mor f : c.outgoing(x)) {
      if (c.is_identity(f)) continue;
      for (std::size_t k = 1; k <= n; ++k) chains[x][k] += chains[c.tgt(f)][k - 1];
    }
  }
  long chi = 0;
  for (Obj x = 0; x < n; ++x)
    for (std::size_t k = 0; k <= n; ++k) chi += (k % 2 == 0 ? 1 : -1) * chains[x][k];
  return chi;
}

void expect_group(const HomologyGroup& g, std::size_t betti, std::vector<long> torsion) {
  EXPECT_EQ(g.betti, betti);
  std::vector<Integer> t(torsion.begin(), torsion.end());
  EXPECT_EQ(g.torsion, t);
}

}  // namespace

TEST(Nerve, Sizes) {
  EXPECT_EQ(nerve(standard::delta(1), 3).sizes(), (std::vector<std::size_t>{2, 1, 0, 0}));
  EXPECT_EQ(nerve(standard::cyclic_group(2), 3).sizes(), (std::vector<std::size_t>{1, 1, 1, 1}));
  EXPECT_EQ(nerve(standard::terminal(), 5).sizes(), (std::vector<std::size_t>{1, 0, 0, 0, 0, 0}));
  EXPECT_EQ(nerve(standard::delta(2), 3).sizes(), (std::vector<std::size_t>{3, 3, 1, 0}));
}

TEST(Nerve, FacesListed) {
  auto n = nerve(standard::cyclic_group(3), 3);
  for (unsigned k = 1; k <= 3; ++k) {
    for (const auto& fs : n.faces[k]) {
      EXPECT_EQ(fs.size(), k + 1);
      for (const auto& f : fs) {
        if (f.index != kUnset) EXPECT_LT(f.index, n.simplices[k - 1].size());
      }
    }
  }
}

TEST(Nerve, Capped) { EXPECT_THROW(nerve(standard::cyclic_group(3), 8, EnumerationLimits{100}), Error); }

TEST(Chains, BG2BoundaryIsTwo) {
  auto cx = normalized_chains(nerve(standard::cyclic_group(2), 3));
  EXPECT_EQ(cx.boundary[2], IntMatrix::from_rows({{2}}));
  EXPECT_EQ(smith_normal_form(cx.boundary[2]).d, IntMatrix::from_rows({{2}}));
  EXPECT_TRUE(cx.boundary[1].is_zero());
}

TEST(Chains, SquareToZero) {
  std::vector<CatPtr> cs{standard::delta(3), standard::cyclic_group(4), standard::idempotent_monoid(),
                         standard::free_iso(), crown(), standard::product(standard::delta(1), standard::cyclic_group(2))};
  for (const auto& c : cs) EXPECT_TRUE(normalized_chains(nerve(c, 4)).squares_to_zero());
  std::mt19937_64 rng(3);
  for (int t = 0; t < 30; ++t) EXPECT_TRUE(normalized_chains(nerve(random_poset(rng, 6, 0.4), 5)).squares_to_zero());
}

TEST(Homology, Examples) {
  auto d2 = homology(standard::delta(2), 3);
  expect_group(d2.groups[0], 1, {});
  for (unsigned k = 1; k <= 3; ++k) expect_group(d2.groups[k], 0, {});

  auto bg2 = homology(standard::cyclic_group(2), 3);
  expect_group(bg2.groups[0], 1, {});
  expect_group(bg2.groups[1], 0, {2});
  expect_group(bg2.groups[2], 0, {});
  expect_group(bg2.groups[3], 0, {2});
  EXPECT_TRUE(bg2.groups[3].valid);
  EXPECT_FALSE(bg2.groups[4].valid);

  auto ee = homology(standard::discrete(2), 1);
  expect_group(ee.groups[0], 2, {});
}

TEST(Homology, CyclicGroups) {
  // H_odd(Z/n) = Z/n, H_even>0 = 0.
  for (unsigned n = 2; n <= 5; ++n) {
    auto h = homology(standard::cyclic_group(n), 4);
    for (unsigned k = 1; k <= 4; ++k) {
      if (k % 2 == 1) expect_group(h.groups[k], 0, {static_cast<long>(n)});
      else expect_group(h.groups[k], 0, {});
    }
  }
}

TEST(Homology, CrownIsCircle) {
  auto h = homology(crown(), 2);
  expect_group(h.groups[0], 1, {});
  expect_group(h.groups[1], 1, {});
  expect_group(h.groups[2], 0, {});
}

TEST(Homology, H0CountsComponents) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 30; ++t) {
    auto c = random_poset(rng, 7, 0.25);
    auto h = homology(c, 1);
    EXPECT_EQ(h.groups[0].betti, connected_components(*c).size());
  }
}

TEST(Homology, EulerCharacteristicOfPosets) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 30; ++t) {
    auto c = random_poset(rng, 6, 0.5);
    auto h = homology(c, 6);
    long chi = 0;
    for (unsigned k = 0; k <= 6; ++k) chi += (k % 2 == 0 ? 1 : -1) * static_cast<long>(h.groups[k].betti);
    EXPECT_EQ(chi, chain_euler_characteristic(*c));
  }
}

TEST(Homology, Json) {
  auto j = to_json(homology(standard::cyclic_group(2), 1));
  EXPECT_EQ(j["1"]["torsion"], Json::array({2}));
  EXPECT_EQ(j["2"]["valid"], false);
}

TEST(Aspherical, Examples) {
  auto w1 = LocalizerSpec::w1();
  auto wi = LocalizerSpec::winfty(3);
  auto d1 = is_aspherical(standard::delta(1), w1);
  EXPECT_TRUE(d1.is_yes());
  EXPECT_EQ(d1.evidence["reason"], "terminal object");

  auto bg2 = is_aspherical(standard::cyclic_group(2), w1);
  EXPECT_TRUE(bg2.is_no());
  EXPECT_EQ(bg2.evidence["abelianization"]["torsion"], Json::array({2}));

  EXPECT_TRUE(is_aspherical(standard::discrete(2), w1).is_no());
  auto ee = is_aspherical(standard::discrete(2), wi);
  EXPECT_TRUE(ee.is_no());
  EXPECT_TRUE(is_aspherical(standard::empty(), wi).is_no());
}

TEST(Aspherical, ZigzagWithoutExtremalObjects) {
  auto z = zigzag();
  auto ext = extremal_objects(*z);
  EXPECT_TRUE(ext.terminal.empty());
  EXPECT_TRUE(ext.initial.empty());
  EXPECT_TRUE(is_aspherical(z, LocalizerSpec::w1()).is_yes());
  EXPECT_FALSE(is_aspherical(z, LocalizerSpec::winfty()).is_no());
}

TEST(Aspherical, Crown) {
  EXPECT_TRUE(is_aspherical(crown(), LocalizerSpec::w1()).is_no());
  auto v = is_aspherical(crown(), LocalizerSpec::winfty());
  EXPECT_TRUE(v.is_no());
  EXPECT_EQ(v.evidence["reason"], "nonzero reduced homology");
}

TEST(Aspherical, GroupoidsUnderW1) {
  // Connected with trivial automorphisms exactly.
  std::vector<std::pair<CatPtr, bool>> cases{{standard::free_iso(), true},
                                             {standard::cyclic_group(2), false},
                                             {standard::cyclic_group(3), false},
                                             {standard::discrete(2), false},
                                             {standard::product(standard::free_iso(), standard::free_iso()), true},
                                             {standard::product(standard::free_iso(), standard::cyclic_group(2)), false},
                                             {standard::coproduct(standard::free_iso(), standard::terminal()), false}};
  for (const auto& [g, expected] : cases) {
    auto v = is_aspherical(g, LocalizerSpec::w1());
    EXPECT_EQ(v.is_yes(), expected);
    EXPECT_EQ(v.is_no(), !expected);
  }
}

TEST(Aspherical, EquivalentCategoriesAgree) {
  std::vector<std::pair<CatPtr, CatPtr>> pairs{
      {standard::free_iso(), standard::terminal()},
      {standard::product(standard::free_iso(), standard::cyclic_group(2)), standard::cyclic_group(2)},
      {standard::product(standard::delta(1), standard::free_iso()), standard::delta(1)}};
  for (const auto& loc : {LocalizerSpec::w1(), LocalizerSpec::winfty(2)}) {
    for (const auto& [a, b] : pairs) {
      auto va = is_aspherical(a, loc);
      auto vb = is_aspherical(b, loc);
      EXPECT_FALSE((va.is_yes() && vb.is_no()) || (va.is_no() && vb.is_yes()));
    }
  }
}

TEST(AsphericalMorphism, Examples) {
  auto w1 = LocalizerSpec::w1();
  auto d1 = standard::delta(1);
  auto e = standard::terminal();
  EXPECT_TRUE(is_aspherical_morphism(FinFunctor::identity(standard::meet_semilattice3()), w1).is_yes());
  EXPECT_TRUE(is_aspherical_morphism(FinFunctor::to_terminal(d1, e), w1).is_yes());
  auto at1 = is_aspherical_morphism(FinFunctor::constant(e, d1, 1), w1);
  EXPECT_TRUE(at1.is_no());
  EXPECT_EQ(at1.evidence["slices"][0]["evidence"]["reason"], "empty category");
}

TEST(WeakEquivalence, Examples) {
  auto j = standard::free_iso();
  auto e = standard::terminal();
  for (const auto& loc : {LocalizerSpec::w1(), LocalizerSpec::winfty(2)}) {
    EXPECT_TRUE(is_weak_equivalence(FinFunctor::to_terminal(j, e), loc).is_yes());
    EXPECT_TRUE(is_weak_equivalence(FinFunctor::to_terminal(standard::cyclic_group(2), e), loc).is_no());
    EXPECT_TRUE(is_weak_equivalence(FinFunctor::to_terminal(crown(), e), loc).is_no());
  }
}

TEST(Thomason, IdentityAndPointBase) {
  auto a = standard::delta(1);
  auto x = presheaves::constant(a, standard::meet_semilattice3(), ValueKind::Category);
  for (const auto& loc : {LocalizerSpec::w1(), LocalizerSpec::winfty(2)}) {
    auto r = thomason_check(PresheafMorphism::identity(x), loc);
    for (const auto& v : r.pointwise) EXPECT_TRUE(v.is_yes());
    EXPECT_TRUE(r.total.is_yes());
    EXPECT_TRUE(r.consistent);
  }
  auto e = standard::terminal();
  auto j = presheaves::constant(e, standard::free_iso(), ValueKind::Groupoid);
  auto t = presheaves::terminal(e);
  auto r = thomason_check(PresheafMorphism::to_terminal(j, t), LocalizerSpec::w1());
  EXPECT_EQ(r.total.answer, r.pointwise[0].answer);
  EXPECT_TRUE(r.total.is_yes());
}

TEST(Thomason, SweepConsistent) {
  auto a = standard::delta(1);
  std::vector<PresheafPtr> xs{presheaves::terminal(a), presheaves::representable(a, 0),
                              presheaves::representable(a, 1),
                              presheaves::constant(a, standard::free_iso(), ValueKind::Groupoid),
                              presheaves::constant(a, standard::cyclic_group(2), ValueKind::Groupoid)};
  for (const auto& x : xs) {
    for (const auto& y : xs) {
      for (const auto& phi : enumerate_presheaf_morphisms(x, y)) {
        EXPECT_TRUE(thomason_check(phi, LocalizerSpec::w1()).consistent);
      }
    }
  }
}
