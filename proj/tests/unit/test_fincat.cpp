#include <gtest/gtest.h>

#include <random>

#include "gtc/fincat.hpp"

using namespace gtc;

namespace {

// Brute force over every pair of maps; independent of the backtracking search.
std::size_t count_functors_brute(const CatPtr& c, const CatPtr& d) {
  const std::size_t n = c->num_objects();
  const std::size_t m = c->num_morphisms();
  std::vector<Obj> omap(n, 0);
  std::vector<Mor> mmap(m, 0);
  std::size_t count = 0;
  std::function<void(std::size_t)> objs;
  std::function<void(std::size_t)> mors = [&](std::size_t k) {
    if (k == m) {
      if (!functor_defect(*c, *d, omap, mmap)) ++count;
      return;
    }
    for (Mor g = 0; g < d->num_morphisms(); ++g) {
      mmap[k] = g;
      mors(k + 1);
    }
  };
  objs = [&](std::size_t k) {
    if (k == n) {
      mors(0);
      return;
    }
    for (Obj y = 0; y < d->num_objects(); ++y) {
      omap[k] = y;
      objs(k + 1);
    }
  };
  objs(0);
  return count;
}

CatPtr delta1_document() {
  CategoryBuilder b;
  const Obj x0 = b.add_object("0");
  const Obj x1 = b.add_object("1");
  b.add_identity(x0, "id0");
  b.add_identity(x1, "id1");
  b.add_morphism("d", x0, x1);
  return b.build();
}

}  // namespace

TEST(FinCategory, TerminalHasOneObject) {
  auto e = standard::terminal();
  EXPECT_EQ(e->num_objects(), 1u);
  EXPECT_EQ(e->num_morphisms(), 1u);
}

TEST(FinCategory, Delta1DocumentValidates) {
  auto c = delta1_document();
  EXPECT_EQ(c->num_morphisms(), 3u);
  const Mor d = *c->find_morphism("d");
  EXPECT_EQ(c->compose(d, c->identity(0)), d);
  EXPECT_EQ(c->compose(c->identity(1), d), d);
}

TEST(FinCategory, IllTypedCompositeRejected) {
  CategoryBuilder b;
  const Obj x0 = b.add_object("0");
  const Obj x1 = b.add_object("1");
  b.add_identity(x0, "id0");
  b.add_identity(x1, "id1");
  const Mor d = b.add_morphism("d", x0, x1);
  try {
    b.set_composite(d, d, d);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingComposite);
  }
}

TEST(FinCategory, MissingCompositeNamed) {
  CategoryBuilder b;
  const Obj x = b.add_object("*");
  b.add_identity(x, "id");
  b.add_morphism("s", x, x);
  try {
    b.build();
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingComposite);
    EXPECT_NE(std::string(e.what()).find("s"), std::string::npos);
  }
}

TEST(FinCategory, AssociativityViolationDetected) {
  // s o s = t, t o s = s, s o t = t, t o t = t is not associative:
  // (s o s) o s = t o s = s but s o (s o s) = s o t = t.
  CategoryBuilder b;
  const Obj x = b.add_object("*");
  b.add_identity(x, "id");
  const Mor s = b.add_morphism("s", x, x);
  const Mor t = b.add_morphism("t", x, x);
  b.set_composite(s, s, t);
  b.set_composite(t, s, s);
  b.set_composite(s, t, t);
  b.set_composite(t, t, t);
  try {
    b.build();
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::AssociativityViolation);
  }
}

TEST(FinCategory, IdentityViolationDetected) {
  CategoryBuilder b;
  const Obj x = b.add_object("*");
  b.add_identity(x, "id");
  const Mor s = b.add_morphism("s", x, x);
  const Mor id = 0;
  b.set_composite(s, s, s);
  b.set_composite(id, s, id);
  try {
    b.build();
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IdentityViolation);
  }
}

TEST(FinCategory, PosetRelationChecked) {
  EXPECT_THROW(standard::poset({"a", "b"}, {{"a", "b"}, {"b", "a"}}), Error);
  EXPECT_THROW(standard::poset({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}), Error);
  try {
    standard::poset({"a"}, {{"a", "z"}});
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidPosetRelation);
  }
}

TEST(FinCategory, StandardSizes) {
  EXPECT_EQ(standard::delta(1)->num_morphisms(), 3u);
  EXPECT_EQ(standard::delta(2)->num_morphisms(), 6u);
  EXPECT_EQ(standard::delta(3)->num_morphisms(), 10u);
  auto bg2 = standard::cyclic_group(2);
  ASSERT_EQ(bg2->num_morphisms(), 2u);
  const Mor s = *bg2->find_morphism("s");
  EXPECT_EQ(bg2->compose(s, s), bg2->identity(0));
  auto bg3 = standard::cyclic_group(3);
  // Multiplication table of Z/3 by addition of exponents.
  for (Mor a = 0; a < 3; ++a)
    for (Mor b = 0; b < 3; ++b) EXPECT_EQ(bg3->compose(a, b), (a + b) % 3);
  EXPECT_TRUE(standard::free_iso()->is_groupoid());
  EXPECT_TRUE(standard::discrete(2)->is_discrete());
  EXPECT_TRUE(standard::empty()->num_objects() == 0);
}

TEST(FinCategory, ProductWithTerminalIsIsomorphic) {
  for (const CatPtr& a : {standard::delta(2), standard::free_iso(), standard::cyclic_group(3)}) {
    auto p = standard::product(standard::terminal(), a);
    auto iso = find_isomorphism(p, a);
    ASSERT_TRUE(iso.has_value());
    EXPECT_TRUE(iso->is_bijective());
  }
}

TEST(FinCategory, OppositeIsInvolutive) {
  for (const CatPtr& a : {standard::delta(2), standard::idempotent_monoid(),
                          standard::product(standard::delta(1), standard::delta(1))}) {
    EXPECT_TRUE(same_structure(*standard::opposite(standard::opposite(a)), *a));
  }
}

TEST(FinCategory, ExtremalObjects) {
  auto d1 = standard::delta(1);
  auto ex = extremal_objects(*d1);
  EXPECT_EQ(ex.terminal, std::vector<Obj>{1});
  EXPECT_EQ(ex.initial, std::vector<Obj>{0});
  auto j = extremal_objects(*standard::free_iso());
  EXPECT_EQ(j.terminal.size(), 2u);
  EXPECT_EQ(j.initial.size(), 2u);
  auto bg = extremal_objects(*standard::cyclic_group(2));
  EXPECT_TRUE(bg.terminal.empty());
  EXPECT_TRUE(bg.initial.empty());
}

TEST(FinCategory, TerminalObjectsHaveSingletonHoms) {
  for (const CatPtr& c : {standard::delta(3), standard::join_semilattice3(), standard::free_iso()}) {
    for (Obj t : extremal_objects(*c).terminal)
      for (Obj x = 0; x < c->num_objects(); ++x) EXPECT_EQ(c->hom(x, t).size(), 1u);
  }
}

TEST(FinCategory, IsoClasses) {
  EXPECT_EQ(iso_classes(*standard::delta(1)).size(), 2u);
  EXPECT_EQ(iso_classes(*standard::free_iso()).size(), 1u);
  EXPECT_EQ(iso_classes(*standard::cyclic_group(2)).size(), 1u);
}

TEST(Slice, OverTopOfDelta1) {
  auto d1 = standard::delta(1);
  auto s = slice(d1, 1);
  EXPECT_TRUE(find_isomorphism(s.category, d1).has_value());
  auto s0 = slice(d1, 0);
  EXPECT_EQ(s0.category->num_objects(), 1u);
}

TEST(Slice, DiagonalOverOffDiagonalPair) {
  auto d1 = standard::delta(1);
  auto d1sq = standard::product(d1, d1);
  auto diag = standard::diagonal(d1, d1sq);
  const Obj target = *d1sq->find_object("(0,1)");
  auto s = slice(diag, target);
  // Pairs (a, a->0, a->1): only a = 0 qualifies.
  EXPECT_EQ(s.category->num_objects(), 1u);
  EXPECT_EQ(s.category->num_morphisms(), 1u);
}

TEST(Slice, ProjectionIsFaithfulAndCommutes) {
  auto d2 = standard::delta(2);
  auto m3 = standard::meet_semilattice3();
  auto p = standard::product(d2, m3);
  auto u = standard::left_projection(p);
  for (Obj b = 0; b < d2->num_objects(); ++b) {
    auto s = slice(u, b);
    for (Obj o = 0; o < s.category->num_objects(); ++o) {
      EXPECT_EQ(u(s.projection(o)), u(s.object_index[o].first));
      for (Obj o2 = 0; o2 < s.category->num_objects(); ++o2) {
        std::set<Mor> images;
        for (Mor f : s.category->hom(o, o2)) images.insert(s.projection.on_morphism(f));
        EXPECT_EQ(images.size(), s.category->hom(o, o2).size());
      }
    }
  }
}

TEST(Fibration, ProductProjection) {
  auto p = standard::product(standard::delta(1), standard::free_iso());
  EXPECT_TRUE(is_grothendieck_fibration(standard::left_projection(p)).is_fibration);
}

TEST(Fibration, PointAtTopIsNot) {
  auto d1 = standard::delta(1);
  auto u = FinFunctor::constant(standard::terminal(), d1, 1);
  auto r = is_grothendieck_fibration(u);
  EXPECT_FALSE(r.is_fibration);
  ASSERT_TRUE(r.failure.has_value());
}

TEST(Fibration, IdentityAlways) {
  for (const CatPtr& c : {standard::delta(2), standard::cyclic_group(3), standard::idempotent_monoid(),
                          standard::meet_semilattice3()}) {
    EXPECT_TRUE(is_grothendieck_fibration(FinFunctor::identity(c)).is_fibration);
  }
}

TEST(NaturalTransformations, IdentityToConstantTop) {
  auto d1 = standard::delta(1);
  auto id = FinFunctor::identity(d1);
  auto top = FinFunctor::constant(d1, d1, 1);
  EXPECT_EQ(natural_transformations(id, top, false).size(), 1u);
  auto bottom = FinFunctor::constant(d1, d1, 0);
  EXPECT_TRUE(natural_transformations(bottom, top, true).empty());
  auto self = natural_transformations(id, id, false);
  EXPECT_NE(std::find(self.begin(), self.end(), NatTransf::identity(id)), self.end());
}

TEST(Functors, EnumerationMatchesBruteForce) {
  std::vector<CatPtr> cats = {standard::terminal(),   standard::delta(1),
                              standard::delta(2),     standard::free_iso(),
                              standard::cyclic_group(2), standard::cyclic_group(3),
                              standard::idempotent_monoid(), standard::discrete(2),
                              standard::meet_semilattice3()};
  for (const auto& c : cats) {
    for (const auto& d : cats) {
      if (c->num_morphisms() > 4 || d->num_morphisms() > 6) continue;
      EXPECT_EQ(enumerate_functors(c, d).size(), count_functors_brute(c, d))
          << c->num_objects() << " -> " << d->num_objects();
    }
  }
}

TEST(Functors, KnownCounts) {
  // Monotone maps [2] -> [1]: 4; endomorphisms of Z/2: 2; Z/3 -> Z/2: 1.
  EXPECT_EQ(enumerate_functors(standard::delta(2), standard::delta(1)).size(), 4u);
  EXPECT_EQ(enumerate_functors(standard::cyclic_group(2), standard::cyclic_group(2)).size(), 2u);
  EXPECT_EQ(enumerate_functors(standard::cyclic_group(3), standard::cyclic_group(2)).size(), 1u);
}

TEST(Functors, CapRaisesSizeExceeded) {
  try {
    enumerate_functors(standard::discrete(6), standard::delta(3), EnumerationLimits{100});
    FAIL() << "expected SizeExceeded";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SizeExceeded);
  }
}

TEST(Functors, ConstructorValidates) {
  auto d1 = standard::delta(1);
  EXPECT_THROW(FinFunctor(d1, d1, {1, 0}, {1, 0, 2}), Error);
}

TEST(Functors, CompositeFunctorsAreFunctors) {
  std::mt19937 rng(7);
  auto a = standard::delta(2);
  auto b = standard::product(standard::delta(1), standard::delta(1));
  auto fs = enumerate_functors(a, b);
  auto gs = enumerate_functors(b, a);
  for (int i = 0; i < 50; ++i) {
    const auto& f = fs[rng() % fs.size()];
    const auto& g = gs[rng() % gs.size()];
    auto gf = compose(g, f);
    EXPECT_FALSE(functor_defect(*gf.dom(), *gf.cod(), gf.object_map(), gf.morphism_map()));
  }
}
