#include "gtc/presheaf.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace gtc {

std::string_view to_string(ValueKind k) {
  switch (k) {
    case ValueKind::Set: return "set";
    case ValueKind::Groupoid: return "groupoid";
    case ValueKind::Category: return "category";
  }
  return "category";
}

namespace {

bool is_identity_functor(const FinFunctor& f) {
  for (Obj x = 0; x < f.object_map().size(); ++x)
    if (f(x) != x) return false;
  for (Mor m = 0; m < f.morphism_map().size(); ++m)
    if (f.on_morphism(m) != m) return false;
  return true;
}

bool same_maps_after(const FinFunctor& lhs_outer, const FinFunctor& lhs_inner, const FinFunctor& rhs_outer,
                     const FinFunctor& rhs_inner) {
  const FinCategory& d = *lhs_inner.dom();
  for (Obj x = 0; x < d.num_objects(); ++x) {
    if (lhs_outer(lhs_inner(x)) != rhs_outer(rhs_inner(x))) return false;
  }
  for (Mor m = 0; m < d.num_morphisms(); ++m) {
    if (lhs_outer.on_morphism(lhs_inner.on_morphism(m)) != rhs_outer.on_morphism(rhs_inner.on_morphism(m))) {
      return false;
    }
  }
  return true;
}

std::vector<std::uint32_t> functor_key(const FinFunctor& f) {
  std::vector<std::uint32_t> k = f.object_map();
  k.insert(k.end(), f.morphism_map().begin(), f.morphism_map().end());
  return k;
}

std::vector<std::uint32_t> morphism_key(const std::vector<FinFunctor>& components) {
  std::vector<std::uint32_t> k;
  for (const FinFunctor& f : components) {
    k.insert(k.end(), f.object_map().begin(), f.object_map().end());
    k.insert(k.end(), f.morphism_map().begin(), f.morphism_map().end());
  }
  return k;
}

struct Closure {
  std::map<std::vector<std::uint32_t>, std::uint32_t> index;
  std::vector<std::uint32_t> parent;

  std::uint32_t add(std::vector<std::uint32_t> key) {
    auto [it, inserted] = index.emplace(std::move(key), static_cast<std::uint32_t>(parent.size()));
    if (inserted) parent.push_back(it->second);
    return it->second;
  }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::optional<std::uint32_t> lookup(const std::vector<std::uint32_t>& key) const {
    auto it = index.find(key);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }
};

}  // namespace

// ---------------------------------------------------------------------------
// Presheaf

Presheaf::Presheaf(CatPtr base, ValueKind kind, std::vector<CatPtr> values, std::vector<FinFunctor> actions)
    : base_(std::move(base)), kind_(kind), values_(std::move(values)), actions_(std::move(actions)) {
  const FinCategory& a = *base_;
  if (values_.size() != a.num_objects() || actions_.size() != a.num_morphisms()) {
    throw Error(ErrorCode::ValidationError, "presheaf needs one value per object and one action per morphism");
  }
  for (Obj x = 0; x < a.num_objects(); ++x) {
    const FinCategory& v = *values_[x];
    if (kind_ == ValueKind::Set && !v.is_discrete()) {
      throw Error(ErrorCode::DiscretenessViolation, "value at '" + a.object_id(x) + "' is not discrete");
    }
    if (kind_ == ValueKind::Groupoid && !v.is_groupoid()) {
      throw Error(ErrorCode::NotAGroupoid, "value at '" + a.object_id(x) + "' is not a groupoid");
    }
  }
  for (Mor f = 0; f < a.num_morphisms(); ++f) {
    const FinFunctor& xf = actions_[f];
    if (!same_structure(*xf.dom(), *values_[a.tgt(f)]) || !same_structure(*xf.cod(), *values_[a.src(f)])) {
      throw Error(ErrorCode::FunctorialityViolation,
                  "action of '" + a.morphism_id(f) + "' does not go from the value at its target to the value at its source");
    }
    if (a.is_identity(f) && !is_identity_functor(xf)) {
      throw Error(ErrorCode::FunctorialityViolation, "action of identity '" + a.morphism_id(f) + "' is not the identity");
    }
  }
  for (Mor f = 0; f < a.num_morphisms(); ++f) {
    for (Mor g : a.outgoing(a.tgt(f))) {
      const Mor gf = a.compose(g, f);
      // X(g o f) = X(f) o X(g)
      if (!same_maps_after(actions_[f], actions_[g], actions_[gf], FinFunctor::identity(values_[a.tgt(g)]))) {
        throw Error(ErrorCode::FunctorialityViolation,
                    "X(" + a.morphism_id(g) + " o " + a.morphism_id(f) + ") != X(" + a.morphism_id(f) + ") o X(" +
                        a.morphism_id(g) + ")");
      }
    }
  }
}

bool Presheaf::values_are_groupoids() const {
  return std::all_of(values_.begin(), values_.end(), [](const CatPtr& c) { return c->is_groupoid(); });
}

bool Presheaf::values_are_discrete() const {
  return std::all_of(values_.begin(), values_.end(), [](const CatPtr& c) { return c->is_discrete(); });
}

bool same_presheaf(const Presheaf& x, const Presheaf& y) {
  if (x.kind() != y.kind() || !same_structure(*x.base(), *y.base())) return false;
  for (Obj a = 0; a < x.base()->num_objects(); ++a) {
    if (!same_structure(*x.value(a), *y.value(a))) return false;
  }
  for (Mor f = 0; f < x.base()->num_morphisms(); ++f) {
    if (x.action(f).object_map() != y.action(f).object_map() ||
        x.action(f).morphism_map() != y.action(f).morphism_map()) {
      return false;
    }
  }
  return true;
}

FinFunctor product_functor(const FinFunctor& f, const FinFunctor& g, const CatPtr& dom, const CatPtr& cod) {
  const ProductStructure* pd = dom->product_structure();
  const ProductStructure* pc = cod->product_structure();
  if (pd == nullptr || pc == nullptr) {
    throw Error(ErrorCode::PreconditionViolation, "product_functor needs product categories");
  }
  const std::size_t nb = pd->right->num_objects();
  const std::size_t mb = pd->right->num_morphisms();
  const std::size_t nd = pc->right->num_objects();
  const std::size_t md = pc->right->num_morphisms();
  std::vector<Obj> omap(dom->num_objects());
  std::vector<Mor> mmap(dom->num_morphisms());
  for (Obj x = 0; x < omap.size(); ++x) omap[x] = static_cast<Obj>(f(x / nb) * nd + g(x % nb));
  for (Mor m = 0; m < mmap.size(); ++m) {
    mmap[m] = static_cast<Mor>(f.on_morphism(m / mb) * md + g.on_morphism(m % mb));
  }
  return make_functor_unchecked(dom, cod, std::move(omap), std::move(mmap));
}

namespace presheaves {

namespace {

CatPtr discrete_on(const std::vector<std::string>& names) {
  CategoryBuilder b;
  for (const auto& n : names) {
    const Obj x = b.add_object(n);
    b.add_identity(x, n);
  }
  return b.build();
}

ValueKind join(ValueKind a, ValueKind b) { return static_cast<ValueKind>(std::max(static_cast<int>(a), static_cast<int>(b))); }

}  // namespace

PresheafPtr terminal(const CatPtr& base) {
  return constant(base, standard::terminal(), ValueKind::Set);
}

PresheafPtr representable(const CatPtr& base, Obj a) {
  const FinCategory& c = *base;
  std::vector<CatPtr> values(c.num_objects());
  std::vector<std::map<Mor, Obj>> position(c.num_objects());
  for (Obj b = 0; b < c.num_objects(); ++b) {
    std::vector<std::string> names;
    for (Mor q : c.hom(b, a)) {
      position[b][q] = static_cast<Obj>(names.size());
      names.push_back(c.morphism_id(q));
    }
    values[b] = discrete_on(names);
  }
  std::vector<FinFunctor> actions;
  for (Mor f = 0; f < c.num_morphisms(); ++f) {
    const Obj b = c.src(f);
    const Obj b2 = c.tgt(f);
    std::vector<Obj> omap;
    for (Mor q : c.hom(b2, a)) omap.push_back(position[b].at(c.compose(q, f)));
    std::vector<Mor> mmap = omap;
    actions.push_back(make_functor_unchecked(values[b2], values[b], std::move(omap), std::move(mmap)));
  }
  return std::make_shared<const Presheaf>(base, ValueKind::Set, std::move(values), std::move(actions));
}

PresheafPtr product(const PresheafPtr& x, const PresheafPtr& y) {
  if (!same_structure(*x->base(), *y->base())) {
    throw Error(ErrorCode::PreconditionViolation, "product of presheaves on different bases");
  }
  const FinCategory& c = *x->base();
  std::vector<CatPtr> values(c.num_objects());
  for (Obj a = 0; a < c.num_objects(); ++a) values[a] = standard::product(x->value(a), y->value(a));
  std::vector<FinFunctor> actions;
  for (Mor f = 0; f < c.num_morphisms(); ++f) {
    actions.push_back(product_functor(x->action(f), y->action(f), values[c.tgt(f)], values[c.src(f)]));
  }
  return std::make_shared<const Presheaf>(x->base(), join(x->kind(), y->kind()), std::move(values),
                                          std::move(actions));
}

PresheafPtr constant(const CatPtr& base, const CatPtr& value, ValueKind kind) {
  std::vector<CatPtr> values(base->num_objects(), value);
  std::vector<FinFunctor> actions(base->num_morphisms(), FinFunctor::identity(value));
  return std::make_shared<const Presheaf>(base, kind, std::move(values), std::move(actions));
}

PresheafPtr with_kind(const PresheafPtr& x, ValueKind kind) {
  return std::make_shared<const Presheaf>(x->base(), kind, x->values(), x->actions());
}

}  // namespace presheaves

PresheafPtr restrict(const FinFunctor& u, const PresheafPtr& x) {
  if (!same_structure(*u.cod(), *x->base())) {
    throw Error(ErrorCode::PreconditionViolation, "restriction along a functor into a different base");
  }
  const FinCategory& a = *u.dom();
  std::vector<CatPtr> values(a.num_objects());
  for (Obj o = 0; o < a.num_objects(); ++o) values[o] = x->value(u(o));
  std::vector<FinFunctor> actions;
  for (Mor f = 0; f < a.num_morphisms(); ++f) actions.push_back(x->action(u.on_morphism(f)));
  return std::make_shared<const Presheaf>(u.dom(), x->kind(), std::move(values), std::move(actions));
}

// ---------------------------------------------------------------------------
// Morphisms

std::optional<std::string> naturality_defect(const Presheaf& x, const Presheaf& y,
                                             const std::vector<FinFunctor>& components) {
  const FinCategory& a = *x.base();
  if (components.size() != a.num_objects()) return "wrong number of components";
  for (Obj o = 0; o < a.num_objects(); ++o) {
    if (!same_structure(*components[o].dom(), *x.value(o)) || !same_structure(*components[o].cod(), *y.value(o))) {
      return "component at '" + a.object_id(o) + "' has the wrong domain or codomain";
    }
  }
  for (Mor f = 0; f < a.num_morphisms(); ++f) {
    if (a.is_identity(f)) continue;
    if (!same_maps_after(y.action(f), components[a.tgt(f)], components[a.src(f)], x.action(f))) {
      return "naturality fails at '" + a.morphism_id(f) + "'";
    }
  }
  return std::nullopt;
}

PresheafMorphism::PresheafMorphism(PresheafPtr source, PresheafPtr target, std::vector<FinFunctor> components)
    : source_(std::move(source)), target_(std::move(target)), components_(std::move(components)) {
  if (!same_structure(*source_->base(), *target_->base())) {
    throw Error(ErrorCode::PreconditionViolation, "presheaf morphism between different bases");
  }
  if (auto defect = naturality_defect(*source_, *target_, components_)) {
    throw Error(ErrorCode::PreconditionViolation, *defect);
  }
}

PresheafMorphism::PresheafMorphism(Unchecked, PresheafPtr source, PresheafPtr target,
                                   std::vector<FinFunctor> components)
    : source_(std::move(source)), target_(std::move(target)), components_(std::move(components)) {}

PresheafMorphism make_morphism_unchecked(PresheafPtr source, PresheafPtr target,
                                         std::vector<FinFunctor> components) {
  return PresheafMorphism(PresheafMorphism::Unchecked{}, std::move(source), std::move(target),
                          std::move(components));
}

PresheafMorphism PresheafMorphism::identity(const PresheafPtr& x) {
  std::vector<FinFunctor> comps;
  for (const CatPtr& v : x->values()) comps.push_back(FinFunctor::identity(v));
  return PresheafMorphism(Unchecked{}, x, x, std::move(comps));
}

PresheafMorphism PresheafMorphism::to_terminal(const PresheafPtr& x, const PresheafPtr& terminal) {
  std::vector<FinFunctor> comps;
  for (Obj a = 0; a < x->base()->num_objects(); ++a) {
    comps.push_back(FinFunctor::to_terminal(x->value(a), terminal->value(a)));
  }
  return PresheafMorphism(x, terminal, std::move(comps));
}

PresheafMorphism compose(const PresheafMorphism& psi, const PresheafMorphism& phi) {
  std::vector<FinFunctor> comps;
  for (Obj a = 0; a < phi.components().size(); ++a) comps.push_back(compose(psi.component(a), phi.component(a)));
  return make_morphism_unchecked(phi.source(), psi.target(), std::move(comps));
}

PresheafMorphism pairing(const PresheafMorphism& phi, const PresheafMorphism& psi, const PresheafPtr& xy) {
  std::vector<FinFunctor> comps;
  for (Obj a = 0; a < phi.components().size(); ++a) {
    comps.push_back(standard::pairing(phi.component(a), psi.component(a), xy->value(a)));
  }
  return make_morphism_unchecked(phi.source(), xy, std::move(comps));
}

PresheafMorphism left_projection(const PresheafPtr& xy, const PresheafPtr& x) {
  std::vector<FinFunctor> comps;
  for (const CatPtr& v : xy->values()) comps.push_back(standard::left_projection(v));
  return make_morphism_unchecked(xy, x, std::move(comps));
}

PresheafMorphism right_projection(const PresheafPtr& xy, const PresheafPtr& y) {
  std::vector<FinFunctor> comps;
  for (const CatPtr& v : xy->values()) comps.push_back(standard::right_projection(v));
  return make_morphism_unchecked(xy, y, std::move(comps));
}

void for_each_presheaf_morphism(const PresheafPtr& x, const PresheafPtr& y,
                                const PresheafMorphismConstraint* constraint, const EnumerationLimits& limits,
                                const std::function<bool(const PresheafMorphism&)>& visit) {
  const FinCategory& a = *x->base();
  const std::size_t n = a.num_objects();
  std::vector<std::vector<FinFunctor>> candidates(n);
  std::uint64_t total = 0;
  for (Obj o = 0; o < n; ++o) {
    const FunctorConstraint* c = (constraint != nullptr && !constraint->empty()) ? &(*constraint)[o] : nullptr;
    candidates[o] = enumerate_functors(x->value(o), y->value(o), limits, c);
    total += candidates[o].size();
    if (total > limits.cap) {
      throw Error(ErrorCode::SizeExceeded, "presheaf morphism search exceeded " + std::to_string(limits.cap));
    }
  }
  std::vector<std::vector<Mor>> checks(n);
  for (Mor f = 0; f < a.num_morphisms(); ++f) {
    if (!a.is_identity(f)) checks[std::max(a.src(f), a.tgt(f))].push_back(f);
  }
  std::vector<const FinFunctor*> chosen(n, nullptr);
  std::uint64_t ticks = 0;
  bool stop = false;
  std::function<void(Obj)> rec = [&](Obj o) {
    if (stop) return;
    if (o == n) {
      std::vector<FinFunctor> comps;
      for (const FinFunctor* f : chosen) comps.push_back(*f);
      if (!visit(make_morphism_unchecked(x, y, std::move(comps)))) stop = true;
      return;
    }
    for (const FinFunctor& cand : candidates[o]) {
      if (++ticks > limits.cap) {
        throw Error(ErrorCode::SizeExceeded, "presheaf morphism search exceeded " + std::to_string(limits.cap));
      }
      chosen[o] = &cand;
      bool ok = true;
      for (Mor f : checks[o]) {
        if (!same_maps_after(y->action(f), *chosen[a.tgt(f)], *chosen[a.src(f)], x->action(f))) {
          ok = false;
          break;
        }
      }
      if (ok) rec(o + 1);
      if (stop) return;
    }
  };
  rec(0);
}

std::vector<PresheafMorphism> enumerate_presheaf_morphisms(const PresheafPtr& x, const PresheafPtr& y,
                                                           const EnumerationLimits& limits) {
  std::vector<PresheafMorphism> out;
  for_each_presheaf_morphism(x, y, nullptr, limits, [&](const PresheafMorphism& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

// ---------------------------------------------------------------------------
// 2-morphisms

namespace {

bool whisker_ok(const Presheaf& x, const Presheaf& y, Mor f, const NatTransf& alpha_a, const NatTransf& alpha_a2) {
  const FinFunctor& xf = x.action(f);
  const FinFunctor& yf = y.action(f);
  for (Obj z = 0; z < xf.dom()->num_objects(); ++z) {
    if (alpha_a.component(xf(z)) != yf.on_morphism(alpha_a2.component(z))) return false;
  }
  return true;
}

}  // namespace

std::optional<std::string> whiskering_defect(const PresheafMorphism& phi, const PresheafMorphism& psi,
                                             const std::vector<NatTransf>& components) {
  const Presheaf& x = *phi.source();
  const Presheaf& y = *phi.target();
  const FinCategory& a = *x.base();
  if (components.size() != a.num_objects()) return "wrong number of components";
  for (Obj o = 0; o < a.num_objects(); ++o) {
    if (!components[o].is_iso()) return "component at '" + a.object_id(o) + "' is not invertible";
    if (!(components[o].source() == phi.component(o)) || !(components[o].target() == psi.component(o))) {
      return "component at '" + a.object_id(o) + "' has the wrong boundary";
    }
  }
  for (Mor f = 0; f < a.num_morphisms(); ++f) {
    if (!whisker_ok(x, y, f, components[a.src(f)], components[a.tgt(f)])) {
      return "whiskering fails at '" + a.morphism_id(f) + "'";
    }
  }
  return std::nullopt;
}

std::vector<TwoMorphism> two_morphisms(const PresheafMorphism& phi, const PresheafMorphism& psi,
                                       const EnumerationLimits& limits) {
  const Presheaf& x = *phi.source();
  const Presheaf& y = *phi.target();
  const FinCategory& a = *x.base();
  const std::size_t n = a.num_objects();
  std::vector<std::vector<NatTransf>> candidates(n);
  for (Obj o = 0; o < n; ++o) candidates[o] = natural_transformations(phi.component(o), psi.component(o), true, limits);
  std::vector<std::vector<Mor>> checks(n);
  for (Mor f = 0; f < a.num_morphisms(); ++f) {
    if (!a.is_identity(f)) checks[std::max(a.src(f), a.tgt(f))].push_back(f);
  }
  std::vector<TwoMorphism> out;
  std::vector<const NatTransf*> chosen(n, nullptr);
  std::uint64_t ticks = 0;
  std::function<void(Obj)> rec = [&](Obj o) {
    if (o == n) {
      TwoMorphism t;
      for (const NatTransf* c : chosen) t.components.push_back(*c);
      out.push_back(std::move(t));
      return;
    }
    for (const NatTransf& cand : candidates[o]) {
      if (++ticks > limits.cap) {
        throw Error(ErrorCode::SizeExceeded, "2-morphism search exceeded " + std::to_string(limits.cap));
      }
      chosen[o] = &cand;
      bool ok = true;
      for (Mor f : checks[o]) {
        if (!whisker_ok(x, y, f, *chosen[a.src(f)], *chosen[a.tgt(f)])) {
          ok = false;
          break;
        }
      }
      if (ok) rec(o + 1);
    }
  };
  rec(0);
  return out;
}

TwoMorphism inverse(const TwoMorphism& alpha, const PresheafMorphism& phi, const PresheafMorphism& psi) {
  TwoMorphism out;
  for (Obj o = 0; o < alpha.components.size(); ++o) {
    const FinCategory& v = *phi.target()->value(o);
    std::vector<Mor> comps;
    for (Mor m : alpha.components[o].components()) comps.push_back(v.is_identity(m) ? m : *v.inverse(m));
    out.components.emplace_back(psi.component(o), phi.component(o), std::move(comps));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Intervals

Interval Interval::in_category(CatPtr carrier, Obj i0, Obj i1) {
  if (i0 >= carrier->num_objects() || i1 >= carrier->num_objects()) {
    throw Error(ErrorCode::PreconditionViolation, "interval endpoint out of range");
  }
  Interval out;
  out.ambient = Ambient::Category;
  out.category = std::move(carrier);
  out.c0 = i0;
  out.c1 = i1;
  return out;
}

Interval Interval::in_presheaves(PresheafPtr carrier, std::vector<Obj> i0, std::vector<Obj> i1) {
  auto t = presheaves::terminal(carrier->base());
  global_point(t, carrier, i0);
  global_point(t, carrier, i1);
  Interval out;
  out.ambient = Ambient::Presheaf;
  out.presheaf = std::move(carrier);
  out.p0 = std::move(i0);
  out.p1 = std::move(i1);
  return out;
}

PresheafMorphism global_point(const PresheafPtr& terminal, const PresheafPtr& x, const std::vector<Obj>& point) {
  const FinCategory& a = *x->base();
  if (point.size() != a.num_objects()) throw Error(ErrorCode::PreconditionViolation, "point has the wrong length");
  std::vector<FinFunctor> comps;
  for (Obj o = 0; o < a.num_objects(); ++o) {
    if (point[o] >= x->value(o)->num_objects()) {
      throw Error(ErrorCode::PreconditionViolation, "point out of range at '" + a.object_id(o) + "'");
    }
    comps.push_back(FinFunctor::constant(terminal->value(o), x->value(o), point[o]));
  }
  for (Mor f = 0; f < a.num_morphisms(); ++f) {
    if (x->action(f)(point[a.tgt(f)]) != point[a.src(f)]) {
      throw Error(ErrorCode::PreconditionViolation,
                  "point is not compatible with the action of '" + a.morphism_id(f) + "'");
    }
  }
  return make_morphism_unchecked(terminal, x, std::move(comps));
}

MultiplicativeInterval delta1_multiplicative() {
  auto d1 = standard::delta(1);
  auto sq = standard::product(d1, d1);
  const ProductStructure& ps = *sq->product_structure();
  std::vector<Obj> omap;
  for (const auto& [p, q] : ps.objects) omap.push_back(std::max(p, q));
  std::vector<Mor> mmap;
  for (const auto& [f, g] : ps.morphisms) {
    const Obj s = std::max(d1->src(f), d1->src(g));
    const Obj t = std::max(d1->tgt(f), d1->tgt(g));
    mmap.push_back(d1->hom(s, t)[0]);
  }
  MultiplicativeInterval out;
  out.interval = Interval::in_category(d1, 0, 1);
  out.op = FinFunctor(sq, d1, std::move(omap), std::move(mmap));
  return out;
}

// ---------------------------------------------------------------------------
// Homotopies

namespace {

void require_ambient(const Interval& i, Interval::Ambient a) {
  if (i.ambient != a) throw Error(ErrorCode::PreconditionViolation, "interval lives in the wrong ambient category");
}

// Endpoint e of a homotopy h : I x X -> Y restricted along (point x X).
FinFunctor endpoint(const FinFunctor& h, const CatPtr& i, Obj point, const CatPtr& x) {
  const std::size_t n = x->num_objects();
  const std::size_t m = x->num_morphisms();
  std::vector<Obj> omap(n);
  std::vector<Mor> mmap(m);
  for (Obj o = 0; o < n; ++o) omap[o] = h(static_cast<Obj>(point * n + o));
  const Mor id = i->identity(point);
  for (Mor f = 0; f < m; ++f) mmap[f] = h.on_morphism(static_cast<Mor>(id * m + f));
  return make_functor_unchecked(x, h.cod(), std::move(omap), std::move(mmap));
}

FunctorConstraint endpoint_constraint(const CatPtr& i, const CatPtr& x, Obj c0, const FinFunctor& f, Obj c1,
                                      const FinFunctor& g) {
  const std::size_t n = x->num_objects();
  const std::size_t m = x->num_morphisms();
  FunctorConstraint c;
  c.objects.assign(i->num_objects() * n, kUnset);
  c.morphisms.assign(i->num_morphisms() * m, kUnset);
  auto pin = [&](Obj point, const FinFunctor& e) {
    for (Obj o = 0; o < n; ++o) c.objects[point * n + o] = e(o);
    const Mor id = i->identity(point);
    for (Mor k = 0; k < m; ++k) c.morphisms[id * m + k] = e.on_morphism(k);
  };
  pin(c0, f);
  pin(c1, g);
  return c;
}

}  // namespace

std::vector<FinFunctor> homotopies(const Interval& i, const FinFunctor& f, const FinFunctor& g,
                                   const EnumerationLimits& limits) {
  require_ambient(i, Interval::Ambient::Category);
  const CatPtr ix = standard::product(i.category, f.dom());
  FunctorConstraint c = endpoint_constraint(i.category, f.dom(), i.c0, f, i.c1, g);
  std::vector<FinFunctor> out;
  for_each_functor(ix, f.cod(), &c, limits, [&](const FinFunctor& h) {
    if (endpoint(h, i.category, i.c0, f.dom()) == f && endpoint(h, i.category, i.c1, f.dom()) == g) out.push_back(h);
    return true;
  });
  return out;
}

namespace {

Closure category_closure(const Interval& i, const CatPtr& x, const CatPtr& y, const EnumerationLimits& limits) {
  Closure cl;
  for_each_functor(x, y, nullptr, limits, [&](const FinFunctor& f) {
    cl.add(functor_key(f));
    return true;
  });
  const CatPtr ix = standard::product(i.category, x);
  for_each_functor(ix, y, nullptr, limits, [&](const FinFunctor& h) {
    const auto a = cl.add(functor_key(endpoint(h, i.category, i.c0, x)));
    const auto b = cl.add(functor_key(endpoint(h, i.category, i.c1, x)));
    cl.unite(a, b);
    return true;
  });
  return cl;
}

std::vector<FinFunctor> presheaf_endpoint(const PresheafMorphism& h, const Interval& i, const std::vector<Obj>& point,
                                          const PresheafPtr& x) {
  std::vector<FinFunctor> comps;
  for (Obj a = 0; a < x->base()->num_objects(); ++a) {
    comps.push_back(endpoint(h.component(a), i.presheaf->value(a), point[a], x->value(a)));
  }
  return comps;
}

Closure presheaf_closure(const Interval& i, const PresheafPtr& x, const PresheafPtr& y,
                         const EnumerationLimits& limits) {
  Closure cl;
  for_each_presheaf_morphism(x, y, nullptr, limits, [&](const PresheafMorphism& f) {
    cl.add(morphism_key(f.components()));
    return true;
  });
  const PresheafPtr ix = presheaves::product(i.presheaf, x);
  for_each_presheaf_morphism(ix, y, nullptr, limits, [&](const PresheafMorphism& h) {
    const auto a = cl.add(morphism_key(presheaf_endpoint(h, i, i.p0, x)));
    const auto b = cl.add(morphism_key(presheaf_endpoint(h, i, i.p1, x)));
    cl.unite(a, b);
    return true;
  });
  return cl;
}

}  // namespace

HomotopyReport enumerate_homotopies(const Interval& i, const FinFunctor& f, const FinFunctor& g,
                                    const EnumerationLimits& limits) {
  HomotopyReport r;
  r.direct_count = homotopies(i, f, g, limits).size();
  Closure cl = category_closure(i, f.dom(), f.cod(), limits);
  r.hom_size = cl.parent.size();
  r.homotopic = cl.find(*cl.lookup(functor_key(f))) == cl.find(*cl.lookup(functor_key(g)));
  return r;
}

HomotopyReport enumerate_homotopies(const Interval& i, const PresheafMorphism& f, const PresheafMorphism& g,
                                    const EnumerationLimits& limits) {
  require_ambient(i, Interval::Ambient::Presheaf);
  const PresheafPtr& x = f.source();
  const PresheafPtr ix = presheaves::product(i.presheaf, x);
  PresheafMorphismConstraint constraint;
  for (Obj a = 0; a < x->base()->num_objects(); ++a) {
    constraint.push_back(endpoint_constraint(i.presheaf->value(a), x->value(a), i.p0[a], f.component(a), i.p1[a],
                                             g.component(a)));
  }
  HomotopyReport r;
  const auto fk = morphism_key(f.components());
  const auto gk = morphism_key(g.components());
  for_each_presheaf_morphism(ix, f.target(), &constraint, limits, [&](const PresheafMorphism& h) {
    if (morphism_key(presheaf_endpoint(h, i, i.p0, x)) == fk && morphism_key(presheaf_endpoint(h, i, i.p1, x)) == gk) {
      ++r.direct_count;
    }
    return true;
  });
  Closure cl = presheaf_closure(i, x, f.target(), limits);
  r.hom_size = cl.parent.size();
  r.homotopic = cl.find(*cl.lookup(fk)) == cl.find(*cl.lookup(gk));
  return r;
}

bool is_contractible(const Interval& i, const CatPtr& x, const EnumerationLimits& limits) {
  require_ambient(i, Interval::Ambient::Category);
  if (x->num_objects() == 0) return false;
  Closure cl = category_closure(i, x, x, limits);
  const auto id = cl.find(*cl.lookup(functor_key(FinFunctor::identity(x))));
  for (Obj y = 0; y < x->num_objects(); ++y) {
    if (cl.find(*cl.lookup(functor_key(FinFunctor::constant(x, x, y)))) == id) return true;
  }
  return false;
}

bool is_contractible(const Interval& i, const PresheafPtr& x, const EnumerationLimits& limits) {
  require_ambient(i, Interval::Ambient::Presheaf);
  const PresheafPtr t = presheaves::terminal(x->base());
  std::vector<PresheafMorphism> points = enumerate_presheaf_morphisms(t, x, limits);
  if (points.empty()) return false;
  Closure cl = presheaf_closure(i, x, x, limits);
  const auto id = cl.find(*cl.lookup(morphism_key(PresheafMorphism::identity(x).components())));
  for (const PresheafMorphism& p : points) {
    std::vector<FinFunctor> comps;
    for (Obj a = 0; a < x->base()->num_objects(); ++a) {
      comps.push_back(FinFunctor::constant(x->value(a), x->value(a), p.component(a)(0)));
    }
    if (cl.find(*cl.lookup(morphism_key(comps))) == id) return true;
  }
  return false;
}

}  // namespace gtc
