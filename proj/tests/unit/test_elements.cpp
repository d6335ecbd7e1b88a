#include <gtest/gtest.h>

#include <random>

#include "gtc/elements.hpp"
#include "gtc/error.hpp"

using namespace gtc;

namespace {

bool isomorphic(const CatPtr& a, const CatPtr& b) { return find_isomorphism(a, b).has_value(); }

std::vector<PresheafPtr> sample_presheaves(const CatPtr& base) {
  std::vector<PresheafPtr> out{presheaves::terminal(base)};
  for (Obj a = 0; a < base->num_objects(); ++a) out.push_back(presheaves::representable(base, a));
  for (Obj a = 0; a < base->num_objects(); ++a)
    for (Obj b = a; b < base->num_objects(); ++b)
      out.push_back(presheaves::product(presheaves::representable(base, a), presheaves::representable(base, b)));
  out.push_back(presheaves::constant(base, standard::cyclic_group(2), ValueKind::Groupoid));
  out.push_back(presheaves::constant(base, standard::free_iso(), ValueKind::Groupoid));
  return out;
}

// Set-valued presheaf on Delta_1 with X(1) = {*}, X(0) = {x, y}, X(d)(*) = x.
PresheafPtr two_to_one() {
  auto d1 = standard::delta(1);
  CategoryBuilder b0;
  for (const char* n : {"x", "y"}) b0.add_identity(b0.add_object(n), std::string("id_") + n);
  CategoryBuilder b1;
  b1.add_identity(b1.add_object("*"), "id_*");
  CatPtr x0 = b0.build(), x1 = b1.build();
  std::vector<FinFunctor> actions;
  for (Mor f = 0; f < d1->num_morphisms(); ++f) {
    if (d1->src(f) == 0 && d1->tgt(f) == 0) actions.push_back(FinFunctor::identity(x0));
    else if (d1->src(f) == 1) actions.push_back(FinFunctor::identity(x1));
    else actions.emplace_back(x1, x0, std::vector<Obj>{0}, std::vector<Mor>{0});
  }
  return std::make_shared<const Presheaf>(d1, ValueKind::Set, std::vector<CatPtr>{x0, x1}, std::move(actions));
}

}  // namespace

TEST(Elements, TerminalGivesBase) {
  for (auto base : {standard::delta(2), standard::meet_semilattice3(), standard::cyclic_group(3)}) {
    auto r = elements(presheaves::terminal(base));
    EXPECT_TRUE(isomorphic(r.total, base));
  }
}

TEST(Elements, RepresentableGivesSlice) {
  for (auto base : {standard::delta(2), standard::join_semilattice3(), standard::idempotent_monoid()}) {
    for (Obj a = 0; a < base->num_objects(); ++a) {
      auto r = elements(presheaves::representable(base, a));
      EXPECT_TRUE(isomorphic(r.total, slice(base, a).category));
    }
  }
}

TEST(Elements, ConstantGroupOverPoint) {
  auto bg2 = standard::cyclic_group(2);
  auto r = elements(presheaves::constant(standard::terminal(), bg2, ValueKind::Groupoid));
  EXPECT_TRUE(isomorphic(r.total, bg2));
}

TEST(Elements, ObjectNames) {
  auto d1 = standard::delta(1);
  auto r = elements(presheaves::representable(d1, 1));
  EXPECT_EQ(r.total->object_id(0), "(0,0_1)");
  EXPECT_EQ(r.total->object_id(1), "(1,id_1)");
}

TEST(Grothendieck, ConstantCategoryIsProduct) {
  auto a = standard::delta(1);
  auto c = standard::meet_semilattice3();
  auto r = grothendieck(presheaves::constant(a, c, ValueKind::Category));
  EXPECT_TRUE(isomorphic(r.total, standard::product(a, c)));
}

TEST(Grothendieck, AgreesWithElementsOnGroupoids) {
  for (const auto& x : sample_presheaves(standard::delta(1))) {
    auto e = elements(x);
    auto g = grothendieck(x);
    EXPECT_TRUE(same_structure(*e.total, *g.total));
  }
}

TEST(Grothendieck, ElementsRejectsCategoryValues) {
  auto x = presheaves::constant(standard::terminal(), standard::delta(1), ValueKind::Category);
  EXPECT_THROW(elements(x), Error);
}

TEST(Grothendieck, TwoToOneUnfolding) {
  auto x = two_to_one();
  auto r = grothendieck(x);
  EXPECT_EQ(r.total->num_objects(), 3u);
  const Obj star = *r.total->find_object("(1,*)");
  const Obj px = *r.total->find_object("(0,x)");
  const Obj py = *r.total->find_object("(0,y)");
  EXPECT_EQ(r.total->hom(px, star).size(), 1u);
  EXPECT_EQ(r.total->hom(py, star).size(), 0u);
  EXPECT_EQ(r.total->num_morphisms(), 4u);
}

TEST(Elements, ZetaIsFibration) {
  for (auto base : {standard::delta(1), standard::meet_semilattice3(), standard::cyclic_group(2)}) {
    for (const auto& x : sample_presheaves(base)) {
      EXPECT_TRUE(is_grothendieck_fibration(elements(x).zeta).is_fibration);
    }
  }
  auto c = presheaves::constant(standard::delta(1), standard::delta(1), ValueKind::Category);
  EXPECT_TRUE(is_grothendieck_fibration(grothendieck(c).zeta).is_fibration);
}

TEST(Elements, SetValuedHasOnlyIdentityFiberParts) {
  auto x = two_to_one();
  auto r = elements(x);
  for (const auto& [f, k, z] : r.morphism_index) {
    EXPECT_TRUE(x->value(x->base()->src(f))->is_identity(k));
  }
}

TEST(ElementsMap, IdentityAndComposite) {
  auto base = standard::delta(1);
  auto xs = sample_presheaves(base);
  for (const auto& x : xs) {
    auto id = elements_map(PresheafMorphism::identity(x));
    EXPECT_EQ(id, FinFunctor::identity(id.dom()));
  }
  // Composites along X -> Y -> Z for every pair of enumerated morphisms.
  auto x = xs[3];
  auto y = xs[1];
  auto z = xs[0];
  for (const auto& phi : enumerate_presheaf_morphisms(x, y)) {
    for (const auto& psi : enumerate_presheaf_morphisms(y, z)) {
      auto ex = grothendieck(x), ey = grothendieck(y), ez = grothendieck(z);
      auto lhs = elements_map(compose(psi, phi), ex, ez);
      auto rhs = compose(elements_map(psi, ey, ez), elements_map(phi, ex, ey));
      EXPECT_EQ(lhs, rhs);
    }
  }
}

TEST(ElementsMap, CommutesWithZeta) {
  auto base = standard::meet_semilattice3();
  auto xs = sample_presheaves(base);
  for (const auto& x : xs) {
    for (const auto& y : xs) {
      auto ex = grothendieck(x), ey = grothendieck(y);
      for (const auto& phi : enumerate_presheaf_morphisms(x, y)) {
        auto m = elements_map(phi, ex, ey);
        EXPECT_EQ(compose(ey.zeta, m), ex.zeta);
      }
    }
  }
}

TEST(ElementsMap, IsoGivesIso) {
  auto j = standard::free_iso();
  auto x = presheaves::constant(standard::delta(1), j, ValueKind::Groupoid);
  for (const auto& phi : enumerate_presheaf_morphisms(x, x)) {
    bool pointwise_iso = true;
    for (const auto& c : phi.components()) pointwise_iso = pointwise_iso && c.is_bijective();
    if (pointwise_iso) EXPECT_TRUE(elements_map(phi).is_bijective());
  }
}

TEST(BaseChange, IdentityIsIso) {
  auto base = standard::meet_semilattice3();
  for (const auto& x : sample_presheaves(base)) {
    auto bc = base_change_square(FinFunctor::identity(base), x);
    EXPECT_TRUE(bc.lambda.is_bijective());
    EXPECT_TRUE(bc.pullback.is_pullback());
  }
}

TEST(BaseChange, PointIntoDelta1) {
  auto d1 = standard::delta(1);
  auto u = FinFunctor::constant(standard::terminal(), d1, 1);
  auto bc = base_change_square(u, presheaves::representable(d1, 1));
  EXPECT_EQ(bc.restricted.total->num_objects(), 1u);
  const Obj image = bc.lambda(0);
  EXPECT_EQ(bc.original.total->object_id(image), "(1,id_1)");
  auto ext = extremal_objects(*bc.original.total);
  ASSERT_EQ(ext.terminal.size(), 1u);
  EXPECT_EQ(ext.terminal[0], image);
  EXPECT_TRUE(bc.pullback.is_pullback());
}

TEST(BaseChange, AlwaysPullback) {
  std::vector<CatPtr> bases{standard::delta(1), standard::delta(2), standard::join_semilattice3(),
                            standard::cyclic_group(2)};
  for (const auto& a : bases) {
    for (const auto& b : bases) {
      if (a->num_objects() > 3 || b->num_objects() > 3) continue;
      for (const auto& u : enumerate_functors(a, b)) {
        for (const auto& x : sample_presheaves(b)) {
          auto bc = base_change_square(u, x);
          EXPECT_TRUE(bc.pullback.is_pullback()) << bc.pullback.failure;
        }
      }
    }
  }
}

TEST(BaseChange, RestrictedRepresentableIsCommaSlice) {
  auto a = standard::delta(1);
  auto b = standard::join_semilattice3();
  for (const auto& u : enumerate_functors(a, b)) {
    for (Obj t = 0; t < b->num_objects(); ++t) {
      auto el = elements(restrict(u, presheaves::representable(b, t)));
      EXPECT_TRUE(isomorphic(el.total, slice(u, t).category));
    }
  }
}

TEST(PullbackCheck, DetectsNonPullback) {
  // e -> e x e diagonal-ish square over e where P has too few objects.
  auto d1 = standard::delta(1);
  auto e = standard::terminal();
  auto to_e = FinFunctor::to_terminal(d1, e);
  auto id = FinFunctor::identity(d1);
  // P = d1, E = d1, A = d1, B = e: fiber product is d1 x d1, not d1.
  auto c = check_strict_pullback(id, id, to_e, to_e);
  EXPECT_TRUE(c.commutes);
  EXPECT_FALSE(c.is_pullback());
}

TEST(Elements, PreservesProducts) {
  for (auto base : {standard::delta(1), standard::meet_semilattice3()}) {
    auto xs = sample_presheaves(base);
    for (std::size_t i = 0; i < xs.size(); i += 2) {
      for (std::size_t j = 0; j < xs.size(); j += 3) {
        auto xy = presheaves::product(xs[i], xs[j]);
        auto exy = grothendieck(xy), ex = grothendieck(xs[i]), ey = grothendieck(xs[j]);
        auto left = elements_map(left_projection(xy, xs[i]), exy, ex);
        auto top = elements_map(right_projection(xy, xs[j]), exy, ey);
        auto c = check_strict_pullback(top, left, ey.zeta, ex.zeta);
        EXPECT_TRUE(c.is_pullback()) << c.failure;
      }
    }
  }
}

TEST(IteratedElements, Examples) {
  auto e = standard::terminal();
  auto ee = standard::product(e, e);
  auto r = iterated_elements_check(presheaves::terminal(ee));
  EXPECT_EQ(r.direct.total->num_objects(), 1u);
  EXPECT_TRUE(r.iso.is_bijective());

  auto d1 = standard::delta(1);
  auto sq = standard::product(d1, d1);
  auto t = iterated_elements_check(presheaves::terminal(sq));
  EXPECT_TRUE(isomorphic(t.iterated.total, sq));
  for (Obj o = 0; o < sq->num_objects(); ++o) {
    auto rr = iterated_elements_check(presheaves::representable(sq, o));
    EXPECT_TRUE(isomorphic(rr.iterated.total, slice(sq, o).category));
  }
}

TEST(IteratedElements, ProductsOfRepresentables) {
  auto sq = standard::product(standard::delta(1), standard::join_semilattice3());
  for (Obj a = 0; a < sq->num_objects(); a += 2) {
    for (Obj b = 1; b < sq->num_objects(); b += 2) {
      auto x = presheaves::product(presheaves::representable(sq, a), presheaves::representable(sq, b));
      EXPECT_NO_THROW(iterated_elements_check(x));
    }
  }
}

TEST(IteratedElements, NeedsProductBase) {
  EXPECT_THROW(iterated_elements_check(presheaves::terminal(standard::delta(1))), Error);
}
