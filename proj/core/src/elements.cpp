#include "gtc/elements.hpp"

#include <set>

#include "gtc/error.hpp"

namespace gtc {

std::optional<Mor> ElementsResult::morphism_of(Mor f, Mor k, Obj x_target) const {
  auto it = morphism_lookup.find({f, x_target, k});
  if (it == morphism_lookup.end()) return std::nullopt;
  return it->second;
}

namespace {

ElementsResult build_total(const PresheafPtr& xp) {
  const Presheaf& x = *xp;
  const FinCategory& a = *x.base();
  struct Index {
    std::vector<std::pair<Obj, Obj>> object_index;
    std::vector<std::tuple<Mor, Mor, Obj>> morphism_index;
    std::vector<std::size_t> object_offset;
    std::map<std::tuple<Mor, Obj, Mor>, Mor> morphism_lookup;
    Obj object_of(Obj a, Obj z) const { return static_cast<Obj>(object_offset[a] + z); }
    Mor morphism_of(Mor f, Mor k, Obj z2) const { return morphism_lookup.at({f, z2, k}); }
  } r;
  CategoryBuilder b;

  r.object_offset.assign(a.num_objects() + 1, 0);
  for (Obj o = 0; o < a.num_objects(); ++o) {
    r.object_offset[o] = r.object_index.size();
    const FinCategory& v = *x.value(o);
    for (Obj z = 0; z < v.num_objects(); ++z) {
      b.add_object("(" + a.object_id(o) + "," + v.object_id(z) + ")");
      r.object_index.emplace_back(o, z);
    }
  }
  r.object_offset[a.num_objects()] = r.object_index.size();

  for (Mor f = 0; f < a.num_morphisms(); ++f) {
    const Obj s = a.src(f);
    const Obj t = a.tgt(f);
    const FinCategory& vs = *x.value(s);
    const FinCategory& vt = *x.value(t);
    const FinFunctor& xf = x.action(f);
    for (Obj z2 = 0; z2 < vt.num_objects(); ++z2) {
      for (Mor k : vs.incoming(xf(z2))) {
        const std::string id = "(" + a.morphism_id(f) + "," + vs.morphism_id(k) + "," + vt.object_id(z2) + ")";
        const Mor m = b.add_morphism(id, r.object_of(s, vs.src(k)), r.object_of(t, z2));
        r.morphism_index.emplace_back(f, k, z2);
        r.morphism_lookup.emplace(std::make_tuple(f, z2, k), m);
      }
    }
  }
  for (Obj o = 0; o < a.num_objects(); ++o) {
    const FinCategory& v = *x.value(o);
    for (Obj z = 0; z < v.num_objects(); ++z) {
      b.set_identity(r.object_of(o, z), r.morphism_of(a.identity(o), v.identity(z), z));
    }
  }

  auto composer = [&](Mor g, Mor h) -> Mor {
    const auto& [f2, k2, z3] = r.morphism_index[g];
    const auto& [f1, k1, z2] = r.morphism_index[h];
    (void)z2;
    const FinCategory& v = *x.value(a.src(f1));
    const Mor k = v.compose(x.action(f1).on_morphism(k2), k1);
    return r.morphism_of(a.compose(f2, f1), k, z3);
  };
  CatPtr total = b.build(composer);

  std::vector<Obj> omap;
  for (const auto& [o, z] : r.object_index) omap.push_back(o);
  std::vector<Mor> mmap;
  for (const auto& [f, k, z2] : r.morphism_index) mmap.push_back(f);
  FinFunctor zeta = make_functor_unchecked(total, x.base(), std::move(omap), std::move(mmap));
  return ElementsResult{std::move(total),          std::move(zeta),          std::move(r.object_index),
                        std::move(r.morphism_index), std::move(r.object_offset), std::move(r.morphism_lookup)};
}

}  // namespace

ElementsResult elements(const PresheafPtr& x) {
  if (!x->values_are_groupoids()) {
    throw Error(ErrorCode::NotAGroupoid, "elements needs groupoid values; use grothendieck");
  }
  return build_total(x);
}

ElementsResult grothendieck(const PresheafPtr& x) { return build_total(x); }

FinFunctor elements_map(const PresheafMorphism& phi, const ElementsResult& source, const ElementsResult& target) {
  const FinCategory& a = *phi.source()->base();
  std::vector<Obj> omap;
  for (const auto& [o, z] : source.object_index) omap.push_back(target.object_of(o, phi.component(o)(z)));
  std::vector<Mor> mmap;
  for (const auto& [f, k, z2] : source.morphism_index) {
    const Mor k2 = phi.component(a.src(f)).on_morphism(k);
    mmap.push_back(*target.morphism_of(f, k2, phi.component(a.tgt(f))(z2)));
  }
  return make_functor_unchecked(source.total, target.total, std::move(omap), std::move(mmap));
}

FinFunctor elements_map(const PresheafMorphism& phi) {
  return elements_map(phi, grothendieck(phi.source()), grothendieck(phi.target()));
}

PullbackCheck check_strict_pullback(const FinFunctor& top, const FinFunctor& left, const FinFunctor& right,
                                    const FinFunctor& bottom) {
  PullbackCheck out;
  const FinCategory& p = *top.dom();
  const FinCategory& e = *top.cod();
  const FinCategory& a = *left.cod();
  out.commutes = true;
  for (Obj o = 0; o < p.num_objects() && out.commutes; ++o) {
    if (right(top(o)) != bottom(left(o))) {
      out.commutes = false;
      out.failure = "square does not commute at object '" + p.object_id(o) + "'";
    }
  }
  for (Mor m = 0; m < p.num_morphisms() && out.commutes; ++m) {
    if (right.on_morphism(top.on_morphism(m)) != bottom.on_morphism(left.on_morphism(m))) {
      out.commutes = false;
      out.failure = "square does not commute at morphism '" + p.morphism_id(m) + "'";
    }
  }
  if (!out.commutes) return out;

  std::size_t fiber_objects = 0;
  for (Obj x = 0; x < a.num_objects(); ++x)
    for (Obj y = 0; y < e.num_objects(); ++y) fiber_objects += bottom(x) == right(y);
  std::set<std::pair<Obj, Obj>> seen_objects;
  for (Obj o = 0; o < p.num_objects(); ++o) seen_objects.emplace(left(o), top(o));
  out.objects_bijective = seen_objects.size() == p.num_objects() && seen_objects.size() == fiber_objects;

  std::size_t fiber_morphisms = 0;
  for (Mor f = 0; f < a.num_morphisms(); ++f)
    for (Mor g = 0; g < e.num_morphisms(); ++g) fiber_morphisms += bottom.on_morphism(f) == right.on_morphism(g);
  std::set<std::pair<Mor, Mor>> seen_morphisms;
  for (Mor m = 0; m < p.num_morphisms(); ++m) seen_morphisms.emplace(left.on_morphism(m), top.on_morphism(m));
  out.morphisms_bijective =
      seen_morphisms.size() == p.num_morphisms() && seen_morphisms.size() == fiber_morphisms;

  if (!out.objects_bijective) {
    out.failure = "objects: " + std::to_string(p.num_objects()) + " vs fiber product " + std::to_string(fiber_objects);
  } else if (!out.morphisms_bijective) {
    out.failure =
        "morphisms: " + std::to_string(p.num_morphisms()) + " vs fiber product " + std::to_string(fiber_morphisms);
  }
  return out;
}

BaseChange base_change_square(const FinFunctor& u, const PresheafPtr& x) {
  PresheafPtr ux = restrict(u, x);
  ElementsResult restricted = grothendieck(ux);
  ElementsResult original = grothendieck(x);
  std::vector<Obj> omap;
  for (const auto& [o, z] : restricted.object_index) omap.push_back(original.object_of(u(o), z));
  std::vector<Mor> mmap;
  for (const auto& [f, k, z2] : restricted.morphism_index) mmap.push_back(*original.morphism_of(u.on_morphism(f), k, z2));
  FinFunctor lambda(restricted.total, original.total, std::move(omap), std::move(mmap));
  PullbackCheck check = check_strict_pullback(lambda, restricted.zeta, original.zeta, u);
  return BaseChange{std::move(restricted), std::move(original), std::move(lambda), std::move(check)};
}

IteratedElements iterated_elements_check(const PresheafPtr& x) {
  const CatPtr& base = x->base();
  const ProductStructure* ps = base->product_structure();
  if (ps == nullptr) {
    throw Error(ErrorCode::PreconditionViolation, "iterated elements need a base with product structure");
  }
  const CatPtr& ca = ps->left;
  const CatPtr& cb = ps->right;
  const std::size_t nb = cb->num_objects();
  const std::size_t mb = cb->num_morphisms();

  // X(a,-) as presheaves on B.
  std::vector<PresheafPtr> slices;
  std::vector<ElementsResult> slice_elements;
  for (Obj a = 0; a < ca->num_objects(); ++a) {
    std::vector<Obj> omap;
    for (Obj b = 0; b < nb; ++b) omap.push_back(static_cast<Obj>(a * nb + b));
    std::vector<Mor> mmap;
    for (Mor g = 0; g < mb; ++g) mmap.push_back(static_cast<Mor>(ca->identity(a) * mb + g));
    FinFunctor iota(cb, base, std::move(omap), std::move(mmap));
    slices.push_back(restrict(iota, x));
    slice_elements.push_back(grothendieck(slices.back()));
  }

  std::vector<CatPtr> values;
  for (const auto& el : slice_elements) values.push_back(el.total);
  std::vector<FinFunctor> actions;
  for (Mor f = 0; f < ca->num_morphisms(); ++f) {
    const Obj s = ca->src(f);
    const Obj t = ca->tgt(f);
    std::vector<FinFunctor> comps;
    for (Obj b = 0; b < nb; ++b) comps.push_back(x->action(static_cast<Mor>(f * mb + cb->identity(b))));
    PresheafMorphism xf(slices[t], slices[s], std::move(comps));
    actions.push_back(elements_map(xf, slice_elements[t], slice_elements[s]));
  }
  auto inner = std::make_shared<const Presheaf>(ca, ValueKind::Category, std::move(values), std::move(actions));

  ElementsResult direct = grothendieck(x);
  ElementsResult iterated = grothendieck(inner);

  // ((a,b),x) -> (a,(b,x)); ((f,g),k,x') -> (f, (g,k,X(f,id)(x')), (b',x')).
  std::vector<Obj> omap;
  for (const auto& [ab, z] : direct.object_index) {
    const Obj a = static_cast<Obj>(ab / nb);
    const Obj b = static_cast<Obj>(ab % nb);
    omap.push_back(iterated.object_of(a, slice_elements[a].object_of(b, z)));
  }
  std::vector<Mor> mmap;
  for (const auto& [fg, k, z2] : direct.morphism_index) {
    const Mor f = static_cast<Mor>(fg / mb);
    const Mor g = static_cast<Mor>(fg % mb);
    const Obj a = ca->src(f);
    const Obj a2 = ca->tgt(f);
    const Obj b2 = cb->tgt(g);
    const Obj moved = x->action(static_cast<Mor>(f * mb + cb->identity(b2)))(z2);
    const Mor inner_k = *slice_elements[a].morphism_of(g, k, moved);
    mmap.push_back(*iterated.morphism_of(f, inner_k, slice_elements[a2].object_of(b2, z2)));
  }
  auto defect = functor_defect(*direct.total, *iterated.total, omap, mmap);
  if (defect) throw Error(ErrorCode::IsoSearchFailed, "canonical comparison is not a functor: " + *defect);
  FinFunctor iso(direct.total, iterated.total, std::move(omap), std::move(mmap));
  if (!iso.is_bijective()) throw Error(ErrorCode::IsoSearchFailed, "canonical comparison is not bijective");
  return IteratedElements{std::move(direct), std::move(inner), std::move(iterated), std::move(iso)};
}

}  // namespace gtc
