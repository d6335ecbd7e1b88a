#include <gtest/gtest.h>

#include <random>

#include "gtc/error.hpp"
#include "gtc/presheaf.hpp"

using namespace gtc;

namespace {

Obj obj(const CatPtr& c, const std::string& id) { return *c->find_object(id); }

// A random presheaf of sets on Delta_n: a chain of maps between small sets.
PresheafPtr random_chain_presheaf(std::mt19937_64& rng, unsigned n) {
  auto base = standard::delta(n);
  std::uniform_int_distribution<unsigned> size(1, 3);
  std::vector<CatPtr> values;
  for (unsigned i = 0; i <= n; ++i) values.push_back(standard::discrete(size(rng)));
  // step[i] : X(i+1) -> X(i)
  std::vector<std::vector<Obj>> step(n);
  for (unsigned i = 0; i < n; ++i) {
    std::uniform_int_distribution<Obj> pick(0, static_cast<Obj>(values[i]->num_objects() - 1));
    for (Obj z = 0; z < values[i + 1]->num_objects(); ++z) step[i].push_back(pick(rng));
  }
  std::vector<FinFunctor> actions;
  for (Mor f = 0; f < base->num_morphisms(); ++f) {
    const Obj a = base->src(f);
    const Obj b = base->tgt(f);
    std::vector<Obj> omap;
    for (Obj z = 0; z < values[b]->num_objects(); ++z) {
      Obj w = z;
      for (Obj k = b; k > a; --k) w = step[k - 1][w];
      omap.push_back(w);
    }
    actions.emplace_back(values[b], values[a], omap, omap);
  }
  return std::make_shared<const Presheaf>(base, ValueKind::Set, std::move(values), std::move(actions));
}

// Naive count of natural transformations between set-valued presheaves: all
// tuples of maps, then check every naturality square.
std::size_t brute_force_morphism_count(const PresheafPtr& x, const PresheafPtr& y) {
  const FinCategory& a = *x->base();
  std::size_t count = 0;
  std::vector<std::vector<Obj>> maps(a.num_objects());
  std::function<void(Obj)> rec = [&](Obj o) {
    if (o == a.num_objects()) {
      for (Mor f = 0; f < a.num_morphisms(); ++f) {
        for (Obj z = 0; z < x->value(a.tgt(f))->num_objects(); ++z) {
          if (y->action(f)(maps[a.tgt(f)][z]) != maps[a.src(f)][x->action(f)(z)]) return;
        }
      }
      ++count;
      return;
    }
    const std::size_t n = x->value(o)->num_objects();
    const std::size_t m = y->value(o)->num_objects();
    maps[o].assign(n, 0);
    if (n > 0 && m == 0) return;
    std::function<void(std::size_t)> fill = [&](std::size_t i) {
      if (i == n) {
        rec(o + 1);
        return;
      }
      for (Obj v = 0; v < m; ++v) {
        maps[o][i] = v;
        fill(i + 1);
      }
    };
    fill(0);
  };
  rec(0);
  return count;
}

}  // namespace

TEST(Presheaf, RepresentableOnDelta1) {
  auto d1 = standard::delta(1);
  auto y0 = presheaves::representable(d1, obj(d1, "0"));
  EXPECT_EQ(y0->value(obj(d1, "0"))->num_objects(), 1u);
  EXPECT_EQ(y0->value(obj(d1, "1"))->num_objects(), 0u);
  auto y1 = presheaves::representable(d1, obj(d1, "1"));
  EXPECT_EQ(y1->value(obj(d1, "0"))->num_objects(), 1u);
  EXPECT_EQ(y1->value(obj(d1, "1"))->num_objects(), 1u);
  EXPECT_EQ(y1->value(obj(d1, "0"))->object_id(0), "0_1");
  EXPECT_TRUE(y1->values_are_discrete());
}

TEST(Presheaf, ProductOfRepresentables) {
  auto d1 = standard::delta(1);
  auto p = presheaves::product(presheaves::representable(d1, 0), presheaves::representable(d1, 1));
  EXPECT_EQ(p->value(0)->num_objects(), 1u);
  EXPECT_EQ(p->value(1)->num_objects(), 0u);
  // Hom(y0 x y1, y0) has exactly one element.
  EXPECT_EQ(enumerate_presheaf_morphisms(p, presheaves::representable(d1, 0)).size(), 1u);
}

TEST(Presheaf, YonedaCount) {
  auto c = standard::meet_semilattice3();
  for (Obj a = 0; a < c->num_objects(); ++a) {
    auto ya = presheaves::representable(c, a);
    for (Obj b = 0; b < c->num_objects(); ++b) {
      auto yb = presheaves::representable(c, b);
      EXPECT_EQ(enumerate_presheaf_morphisms(ya, yb).size(), c->hom(a, b).size());
    }
  }
}

TEST(Presheaf, ActionFunctorialityRejected) {
  auto d2 = standard::delta(2);
  auto two = standard::discrete(2);
  std::vector<CatPtr> values(3, two);
  std::vector<FinFunctor> actions;
  auto swap = FinFunctor(two, two, {1, 0}, {1, 0});
  for (Mor f = 0; f < d2->num_morphisms(); ++f) {
    actions.push_back(d2->is_identity(f) ? FinFunctor::identity(two) : swap);
  }
  // X(0_2) must equal X(0_1) o X(1_2) = identity.
  try {
    Presheaf bad(d2, ValueKind::Set, values, actions);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::FunctorialityViolation);
  }
}

TEST(Presheaf, KindChecked) {
  auto e = standard::terminal();
  try {
    presheaves::constant(e, standard::delta(1), ValueKind::Set);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::DiscretenessViolation);
  }
  try {
    presheaves::constant(e, standard::delta(1), ValueKind::Groupoid);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::NotAGroupoid);
  }
  EXPECT_NO_THROW(presheaves::constant(e, standard::free_iso(), ValueKind::Groupoid));
}

TEST(Presheaf, RestrictAlongFunctor) {
  auto d1 = standard::delta(1);
  auto e = standard::terminal();
  auto at1 = FinFunctor::constant(e, d1, 1);
  auto y1 = presheaves::representable(d1, 0);
  auto r = restrict(at1, y1);
  EXPECT_EQ(r->value(0)->num_objects(), 0u);
}

TEST(Presheaf, MorphismCountMatchesBruteForce) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const unsigned n = 1 + trial % 3;
    auto x = random_chain_presheaf(rng, n);
    auto y = random_chain_presheaf(rng, n);
    EXPECT_EQ(enumerate_presheaf_morphisms(x, y).size(), brute_force_morphism_count(x, y));
  }
}

TEST(Presheaf, MorphismsAreNatural) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    auto x = random_chain_presheaf(rng, 2);
    auto y = random_chain_presheaf(rng, 2);
    for (const auto& m : enumerate_presheaf_morphisms(x, y)) {
      EXPECT_FALSE(naturality_defect(*x, *y, m.components()).has_value());
    }
  }
}

TEST(Presheaf, PairingAndProjections) {
  std::mt19937_64 rng(9);
  auto x = random_chain_presheaf(rng, 1);
  auto y = random_chain_presheaf(rng, 1);
  auto xy = presheaves::product(x, y);
  auto px = left_projection(xy, x);
  auto py = right_projection(xy, y);
  auto pair = pairing(px, py, xy);
  EXPECT_EQ(pair, PresheafMorphism::identity(xy));
  EXPECT_FALSE(naturality_defect(*xy, *x, px.components()).has_value());
}

TEST(Presheaf, TwoMorphismsOverPointMatchNatIsos) {
  auto e = standard::terminal();
  auto j = standard::free_iso();
  auto x = presheaves::constant(e, j, ValueKind::Groupoid);
  auto fs = enumerate_presheaf_morphisms(x, x);
  ASSERT_EQ(fs.size(), enumerate_functors(j, j).size());
  for (const auto& phi : fs) {
    for (const auto& psi : fs) {
      auto twos = two_morphisms(phi, psi);
      auto direct = natural_transformations(phi.component(0), psi.component(0), true);
      EXPECT_EQ(twos.size(), direct.size());
    }
  }
}

TEST(Presheaf, TwoMorphismInverses) {
  auto d1 = standard::delta(1);
  auto j = standard::free_iso();
  auto x = presheaves::constant(d1, j, ValueKind::Groupoid);
  auto fs = enumerate_presheaf_morphisms(x, x);
  std::size_t seen = 0;
  for (const auto& phi : fs) {
    for (const auto& psi : fs) {
      for (const auto& alpha : two_morphisms(phi, psi)) {
        EXPECT_FALSE(whiskering_defect(phi, psi, alpha.components).has_value());
        auto inv = inverse(alpha, phi, psi);
        EXPECT_FALSE(whiskering_defect(psi, phi, inv.components).has_value());
        ++seen;
      }
    }
  }
  EXPECT_GT(seen, 0u);
}

TEST(Presheaf, WhiskeringRejectsMismatchedComponents) {
  // Base Delta_1, value J everywhere with identity actions: a 2-morphism
  // id => id must use the same automorphism component over both objects.
  auto d1 = standard::delta(1);
  auto j = standard::free_iso();
  auto x = presheaves::constant(d1, j, ValueKind::Groupoid);
  auto id = PresheafMorphism::identity(x);
  auto twos = two_morphisms(id, id);
  EXPECT_EQ(twos.size(), 1u);
}

TEST(Homotopy, IdentityToConstantOnDelta1) {
  auto m = delta1_multiplicative();
  auto d1 = m.interval.category;
  auto id = FinFunctor::identity(d1);
  auto c1 = FinFunctor::constant(d1, d1, 1);
  auto hs = homotopies(m.interval, id, c1);
  EXPECT_EQ(hs.size(), 1u);
  EXPECT_EQ(hs[0], *m.op);
  auto r = enumerate_homotopies(m.interval, id, c1);
  EXPECT_EQ(r.direct_count, 1u);
  EXPECT_TRUE(r.homotopic);
  EXPECT_EQ(r.hom_size, 3u);
}

TEST(Homotopy, NoDirectHomotopyBackwards) {
  auto m = delta1_multiplicative();
  auto d1 = m.interval.category;
  auto id = FinFunctor::identity(d1);
  auto c1 = FinFunctor::constant(d1, d1, 1);
  auto r = enumerate_homotopies(m.interval, c1, id);
  EXPECT_EQ(r.direct_count, 0u);
  EXPECT_TRUE(r.homotopic);
}

TEST(Homotopy, ReflexiveDegenerate) {
  auto i = Interval::in_category(standard::delta(1), 0, 1);
  auto x = standard::meet_semilattice3();
  auto f = FinFunctor::identity(x);
  EXPECT_GE(homotopies(i, f, f).size(), 1u);
}

TEST(Homotopy, Contractibility) {
  auto i = Interval::in_category(standard::delta(1), 0, 1);
  EXPECT_TRUE(is_contractible(i, standard::delta(1)));
  EXPECT_TRUE(is_contractible(i, standard::delta(2)));
  EXPECT_TRUE(is_contractible(i, standard::meet_semilattice3()));
  EXPECT_TRUE(is_contractible(i, standard::terminal()));
  EXPECT_FALSE(is_contractible(i, standard::discrete(2)));
  EXPECT_FALSE(is_contractible(i, standard::empty()));
  auto j = Interval::in_category(standard::free_iso(), 0, 1);
  EXPECT_TRUE(is_contractible(j, standard::free_iso()));
  EXPECT_FALSE(is_contractible(j, standard::delta(1)));
}

TEST(Homotopy, PresheafAmbient) {
  auto d1 = standard::delta(1);
  auto y1 = presheaves::representable(d1, 1);
  auto y0 = presheaves::representable(d1, 0);
  // Two disjoint points as the interval; y1 is terminal, y0 has no global point.
  auto two = presheaves::constant(d1, standard::discrete(2), ValueKind::Set);
  auto i = Interval::in_presheaves(two, {0, 0}, {1, 1});
  EXPECT_TRUE(is_contractible(i, y1));
  EXPECT_FALSE(is_contractible(i, y0));
  auto t = presheaves::terminal(d1);
  EXPECT_TRUE(is_contractible(i, t));
  auto f = PresheafMorphism::identity(y1);
  auto r = enumerate_homotopies(i, f, f);
  EXPECT_TRUE(r.homotopic);
  EXPECT_EQ(r.direct_count, 1u);
}

TEST(Homotopy, IncompatiblePointRejected) {
  auto d1 = standard::delta(1);
  auto j = presheaves::constant(d1, standard::discrete(2), ValueKind::Set);
  EXPECT_THROW(Interval::in_presheaves(j, {0, 1}, {1, 1}), Error);
}
