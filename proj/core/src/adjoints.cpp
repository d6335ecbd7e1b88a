#include "gtc/adjoints.hpp"

#include <algorithm>
#include <set>

#include "gtc/error.hpp"

namespace gtc {

namespace {

std::vector<std::uint32_t> functor_key(const FinFunctor& f) {
  std::vector<std::uint32_t> k = f.object_map();
  k.insert(k.end(), f.morphism_map().begin(), f.morphism_map().end());
  return k;
}

Mor lift_along(const FinCategory& s, const FinFunctor& proj, Obj from, Obj to, Mor f) {
  for (Mor m : s.hom(from, to)) {
    if (proj.on_morphism(m) == f) return m;
  }
  throw Error(ErrorCode::PreconditionViolation, "no morphism over '" + proj.cod()->morphism_id(f) + "'");
}

std::map<std::pair<Obj, Mor>, Obj> slice_objects(const SliceResult& s) {
  std::map<std::pair<Obj, Mor>, Obj> out;
  for (Obj o = 0; o < s.object_index.size(); ++o) out.emplace(s.object_index[o], o);
  return out;
}

std::string functor_name(const FinFunctor& f) {
  const FinCategory& c = *f.dom();
  const FinCategory& d = *f.cod();
  std::string s = "<";
  for (Obj x = 0; x < c.num_objects(); ++x) {
    if (x > 0) s += ",";
    s += d.object_id(f(x));
  }
  s += "|";
  bool first = true;
  for (Mor m = 0; m < c.num_morphisms(); ++m) {
    if (c.is_identity(m)) continue;
    if (!first) s += ",";
    first = false;
    s += d.morphism_id(f.on_morphism(m));
  }
  return s + ">";
}

NatTransf whisker(const NatTransf& t, const FinFunctor& i) {
  std::vector<Mor> comps;
  for (Obj x = 0; x < i.dom()->num_objects(); ++x) comps.push_back(t.component(i(x)));
  return NatTransf(compose(t.source(), i), compose(t.target(), i), std::move(comps));
}

NatTransf postwhisker(const FinFunctor& g, const NatTransf& t) {
  std::vector<Mor> comps;
  for (Mor m : t.components()) comps.push_back(g.on_morphism(m));
  return NatTransf(compose(g, t.source()), compose(g, t.target()), std::move(comps));
}

}  // namespace

// ---------------------------------------------------------------------------
// Diagrams

void CatDiagram::validate() const {
  const FinCategory& a = *base;
  if (values.size() != a.num_objects() || actions.size() != a.num_morphisms()) {
    throw Error(ErrorCode::ValidationError, "diagram needs one category per object and one functor per morphism");
  }
  for (Mor f = 0; f < a.num_morphisms(); ++f) {
    const FinFunctor& i = actions[f];
    if (!same_structure(*i.dom(), *values[a.src(f)]) || !same_structure(*i.cod(), *values[a.tgt(f)])) {
      throw Error(ErrorCode::FunctorialityViolation, "i(" + a.morphism_id(f) + ") has the wrong endpoints");
    }
    if (a.is_identity(f) && !(i == FinFunctor::identity(values[a.src(f)]))) {
      throw Error(ErrorCode::FunctorialityViolation, "i(" + a.morphism_id(f) + ") is not the identity");
    }
    for (Mor g : a.outgoing(a.tgt(f))) {
      if (!(compose(actions[g], i) == actions[a.compose(g, f)])) {
        throw Error(ErrorCode::FunctorialityViolation,
                    "i(" + a.morphism_id(g) + " o " + a.morphism_id(f) + ") != i(" + a.morphism_id(g) + ") o i(" +
                        a.morphism_id(f) + ")");
      }
    }
  }
  if (terminals) {
    if (terminals->size() != a.num_objects()) throw Error(ErrorCode::ValidationError, "one terminal per object");
    for (Obj x = 0; x < a.num_objects(); ++x) {
      const Obj t = (*terminals)[x];
      const auto ext = extremal_objects(*values[x]);
      if (t >= values[x]->num_objects() || std::find(ext.terminal.begin(), ext.terminal.end(), t) == ext.terminal.end()) {
        throw Error(ErrorCode::MissingTerminalObject, "declared e_" + a.object_id(x) + " is not terminal");
      }
    }
  }
}

CatDiagram slice_diagram(const CatPtr& a) {
  CatDiagram d;
  d.base = a;
  std::vector<SliceResult> slices;
  std::vector<std::map<std::pair<Obj, Mor>, Obj>> lookup;
  std::vector<Obj> terminals;
  for (Obj x = 0; x < a->num_objects(); ++x) {
    slices.push_back(slice(a, x));
    lookup.push_back(slice_objects(slices.back()));
    d.values.push_back(slices.back().category);
    terminals.push_back(lookup.back().at({x, a->identity(x)}));
  }
  for (Mor f = 0; f < a->num_morphisms(); ++f) {
    const SliceResult& s = slices[a->src(f)];
    const SliceResult& t = slices[a->tgt(f)];
    std::vector<Obj> omap;
    for (const auto& [b, q] : s.object_index) omap.push_back(lookup[a->tgt(f)].at({b, a->compose(f, q)}));
    std::vector<Mor> mmap;
    const FinCategory& sc = *s.category;
    for (Mor m = 0; m < sc.num_morphisms(); ++m) {
      mmap.push_back(lift_along(*t.category, t.projection, omap[sc.src(m)], omap[sc.tgt(m)], s.projection.on_morphism(m)));
    }
    d.actions.push_back(make_functor_unchecked(s.category, t.category, std::move(omap), std::move(mmap)));
  }
  d.terminals = std::move(terminals);
  return d;
}

// ---------------------------------------------------------------------------
// Hom-groupoids and I*

Obj HomGroupoid::object_of(const FinFunctor& f) const { return functor_lookup.at(functor_key(f)); }

Mor HomGroupoid::morphism_of(const NatTransf& t) const {
  std::vector<std::uint32_t> key{object_of(t.source()), object_of(t.target())};
  key.insert(key.end(), t.components().begin(), t.components().end());
  return transformation_lookup.at(key);
}

HomGroupoid hom_groupoid(const CatPtr& c, const CatPtr& d, const EnumerationLimits& limits, bool identities_only) {
  HomGroupoid h;
  h.functors = enumerate_functors(c, d, limits);
  for (Obj o = 0; o < h.functors.size(); ++o) h.functor_lookup.emplace(functor_key(h.functors[o]), o);
  CategoryBuilder named;
  for (const FinFunctor& f : h.functors) named.add_object(functor_name(f));
  std::uint64_t count = 0;
  for (Obj p = 0; p < h.functors.size(); ++p) {
    for (Obj q = 0; q < h.functors.size(); ++q) {
      if (identities_only && p != q) continue;
      std::vector<NatTransf> ts;
      if (identities_only) {
        ts.push_back(NatTransf::identity(h.functors[p]));
      } else {
        ts = natural_transformations(h.functors[p], h.functors[q], true, limits);
      }
      for (NatTransf& t : ts) {
        if (++count > limits.cap) {
          throw Error(ErrorCode::SizeExceeded, "hom-groupoid exceeded " + std::to_string(limits.cap));
        }
        std::string comps;
        for (Mor k : t.components()) comps += (comps.empty() ? "" : ",") + d->morphism_id(k);
        named.add_morphism("[" + comps + "]:" + functor_name(h.functors[p]) + "=>" + functor_name(h.functors[q]), p, q);
        std::vector<std::uint32_t> key{p, q};
        key.insert(key.end(), t.components().begin(), t.components().end());
        h.transformation_lookup.emplace(std::move(key), static_cast<Mor>(h.transformations.size()));
        h.transformations.push_back(std::move(t));
      }
    }
  }
  for (Obj o = 0; o < h.functors.size(); ++o) named.set_identity(o, h.morphism_of(NatTransf::identity(h.functors[o])));
  h.category = named.build([&](Mor g, Mor f) {
    const NatTransf& tg = h.transformations[g];
    const NatTransf& tf = h.transformations[f];
    std::vector<Mor> comps;
    for (Obj x = 0; x < c->num_objects(); ++x) comps.push_back(d->compose(tg.component(x), tf.component(x)));
    std::vector<std::uint32_t> key{h.object_of(tf.source()), h.object_of(tg.target())};
    key.insert(key.end(), comps.begin(), comps.end());
    return h.transformation_lookup.at(key);
  });
  return h;
}

IStar i_star(const CatDiagram& i, const CatPtr& c, bool set_valued, const EnumerationLimits& limits) {
  i.validate();
  IStar out;
  out.diagram = i;
  out.target = c;
  out.set_valued = set_valued;
  const FinCategory& a = *i.base;
  for (Obj x = 0; x < a.num_objects(); ++x) out.homs.push_back(hom_groupoid(i.values[x], c, limits, set_valued));
  std::vector<CatPtr> values;
  for (const HomGroupoid& h : out.homs) values.push_back(h.category);
  std::vector<FinFunctor> actions;
  for (Mor f = 0; f < a.num_morphisms(); ++f) {
    const HomGroupoid& from = out.homs[a.tgt(f)];
    const HomGroupoid& to = out.homs[a.src(f)];
    std::vector<Obj> omap;
    for (const FinFunctor& p : from.functors) omap.push_back(to.object_of(compose(p, i.actions[f])));
    std::vector<Mor> mmap;
    for (const NatTransf& t : from.transformations) mmap.push_back(to.morphism_of(whisker(t, i.actions[f])));
    actions.push_back(make_functor_unchecked(from.category, to.category, std::move(omap), std::move(mmap)));
  }
  out.presheaf = std::make_shared<const Presheaf>(i.base, set_valued ? ValueKind::Set : ValueKind::Groupoid,
                                                  std::move(values), std::move(actions));
  return out;
}

PresheafMorphism i_star_map(const IStar& from, const IStar& to, const FinFunctor& g) {
  std::vector<FinFunctor> comps;
  for (Obj a = 0; a < from.homs.size(); ++a) {
    const HomGroupoid& hf = from.homs[a];
    const HomGroupoid& ht = to.homs[a];
    std::vector<Obj> omap;
    for (const FinFunctor& p : hf.functors) omap.push_back(ht.object_of(compose(g, p)));
    std::vector<Mor> mmap;
    for (const NatTransf& t : hf.transformations) mmap.push_back(ht.morphism_of(postwhisker(g, t)));
    comps.push_back(make_functor_unchecked(hf.category, ht.category, std::move(omap), std::move(mmap)));
  }
  return PresheafMorphism(from.presheaf, to.presheaf, std::move(comps));
}

std::vector<Obj> i_star_point(const IStar& ic, Obj c) {
  std::vector<Obj> out;
  for (Obj a = 0; a < ic.homs.size(); ++a) {
    out.push_back(ic.homs[a].object_of(FinFunctor::constant(ic.diagram.values[a], ic.target, c)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Counit

FinFunctor counit_alpha(const IStar& ic, const ElementsResult& el) {
  const CatDiagram& i = ic.diagram;
  if (!i.terminals) throw Error(ErrorCode::MissingTerminalObject, "diagram declares no terminal objects");
  const FinCategory& a = *i.base;
  const FinCategory& c = *ic.target;
  const std::vector<Obj>& e = *i.terminals;
  std::vector<Obj> omap;
  for (const auto& [x, p] : el.object_index) omap.push_back(ic.homs[x].functors[p](e[x]));
  std::vector<Mor> mmap;
  for (const auto& [f, s, p2] : el.morphism_index) {
    const Obj x = a.src(f);
    const Obj x2 = a.tgt(f);
    const NatTransf& sigma = ic.homs[x].transformations[s];
    const FinFunctor& q = ic.homs[x2].functors[p2];
    const FinCategory& ix2 = *i.values[x2];
    const Mor can = ix2.hom(i.actions[f](e[x]), e[x2])[0];
    mmap.push_back(c.compose(q.on_morphism(can), sigma.component(e[x])));
  }
  return FinFunctor(el.total, ic.target, std::move(omap), std::move(mmap));
}

FinFunctor counit_alpha(const CatDiagram& i, const CatPtr& c, const EnumerationLimits& limits) {
  if (!i.terminals) throw Error(ErrorCode::MissingTerminalObject, "diagram declares no terminal objects");
  IStar ic = i_star(i, c, false, limits);
  return counit_alpha(ic, elements(ic.presheaf));
}

// ---------------------------------------------------------------------------
// Adjunction for the slice diagram

PresheafMorphism transpose(const FinFunctor& f, const PresheafPtr& x, const ElementsResult& el_x, const IStar& ic) {
  const FinCategory& a = *x->base();
  std::vector<FinFunctor> comps;
  for (Obj o = 0; o < a.num_objects(); ++o) {
    const SliceResult s = slice(x->base(), o);
    const FinCategory& sc = *s.category;
    const FinCategory& xo = *x->value(o);
    const HomGroupoid& h = ic.homs[o];
    auto functor_at = [&](Obj z) {
      std::vector<Obj> omap;
      for (const auto& [b, q] : s.object_index) omap.push_back(f(el_x.object_of(b, x->action(q)(z))));
      std::vector<Mor> mmap;
      for (Mor m = 0; m < sc.num_morphisms(); ++m) {
        const auto& [b, q] = s.object_index[sc.src(m)];
        const Mor q2 = s.object_index[sc.tgt(m)].second;
        const Obj zb = x->action(q)(z);
        const Mor g = s.projection.on_morphism(m);
        mmap.push_back(f.on_morphism(*el_x.morphism_of(g, x->value(b)->identity(zb), x->action(q2)(z))));
      }
      return FinFunctor(s.category, ic.target, std::move(omap), std::move(mmap));
    };
    std::vector<FinFunctor> images;
    std::vector<Obj> omap;
    for (Obj z = 0; z < xo.num_objects(); ++z) {
      images.push_back(functor_at(z));
      omap.push_back(h.object_of(images.back()));
    }
    std::vector<Mor> mmap;
    for (Mor k = 0; k < xo.num_morphisms(); ++k) {
      const Obj z2 = xo.tgt(k);
      std::vector<Mor> tcomps;
      for (const auto& [b, q] : s.object_index) {
        tcomps.push_back(f.on_morphism(*el_x.morphism_of(a.identity(b), x->action(q).on_morphism(k), x->action(q)(z2))));
      }
      mmap.push_back(h.morphism_of(NatTransf(images[xo.src(k)], images[z2], std::move(tcomps))));
    }
    comps.emplace_back(x->value(o), h.category, std::move(omap), std::move(mmap));
  }
  return PresheafMorphism(x, ic.presheaf, std::move(comps));
}

FinFunctor untranspose(const PresheafMorphism& phi, const ElementsResult& el_x, const IStar& ic) {
  const FinCategory& a = *phi.source()->base();
  const FinCategory& c = *ic.target;
  std::vector<SliceResult> slices;
  std::vector<std::map<std::pair<Obj, Mor>, Obj>> lookup;
  for (Obj o = 0; o < a.num_objects(); ++o) {
    slices.push_back(slice(phi.source()->base(), o));
    lookup.push_back(slice_objects(slices.back()));
  }
  std::vector<Obj> omap;
  for (const auto& [o, z] : el_x.object_index) {
    const FinFunctor& p = ic.homs[o].functors[phi.component(o)(z)];
    omap.push_back(p(lookup[o].at({o, a.identity(o)})));
  }
  std::vector<Mor> mmap;
  for (const auto& [f, k, z2] : el_x.morphism_index) {
    const Obj o = a.src(f);
    const Obj o2 = a.tgt(f);
    const NatTransf& t = ic.homs[o].transformations[phi.component(o).on_morphism(k)];
    const FinFunctor& p2 = ic.homs[o2].functors[phi.component(o2)(z2)];
    const Obj from = lookup[o2].at({o, f});
    const Obj to = lookup[o2].at({o2, a.identity(o2)});
    const Mor fhat = lift_along(*slices[o2].category, slices[o2].projection, from, to, f);
    mmap.push_back(c.compose(p2.on_morphism(fhat), t.component(lookup[o].at({o, a.identity(o)}))));
  }
  return FinFunctor(el_x.total, ic.target, std::move(omap), std::move(mmap));
}

AdjunctionReport adjunction_transpose(const PresheafPtr& x, const CatPtr& c, const EnumerationLimits& limits) {
  AdjunctionReport r;
  const CatDiagram sd = slice_diagram(x->base());
  const ElementsResult el_x = elements(x);
  const IStar ic = i_star(sd, c, false, limits);

  const auto left = enumerate_functors(el_x.total, c, limits);
  const auto right = enumerate_presheaf_morphisms(x, ic.presheaf, limits);
  r.functor_count = left.size();
  r.morphism_count = right.size();

  bool ok = left.size() == right.size();
  std::set<std::vector<std::uint32_t>> images;
  for (const FinFunctor& f : left) {
    PresheafMorphism phi = transpose(f, x, el_x, ic);
    std::vector<std::uint32_t> key;
    for (const FinFunctor& comp : phi.components()) {
      auto k = functor_key(comp);
      key.insert(key.end(), k.begin(), k.end());
    }
    images.insert(std::move(key));
    if (!(untranspose(phi, el_x, ic) == f)) ok = false;
  }
  for (const PresheafMorphism& phi : right) {
    if (!(transpose(untranspose(phi, el_x, ic), x, el_x, ic) == phi)) ok = false;
  }
  r.bijective = ok && images.size() == left.size();

  // eps_{el X} o el(eta_X) = id.
  {
    const IStar iel = i_star(sd, el_x.total, false, limits);
    const PresheafMorphism eta = transpose(FinFunctor::identity(el_x.total), x, el_x, iel);
    const ElementsResult el_iel = elements(iel.presheaf);
    const FinFunctor eps = untranspose(PresheafMorphism::identity(iel.presheaf), el_iel, iel);
    r.unit_triangle = compose(eps, elements_map(eta, el_x, el_iel)) == FinFunctor::identity(el_x.total);
  }
  // I*(eps_C) o eta_{I*C} = id.
  {
    const ElementsResult el_ic = elements(ic.presheaf);
    const FinFunctor eps = untranspose(PresheafMorphism::identity(ic.presheaf), el_ic, ic);
    const IStar iel = i_star(sd, el_ic.total, false, limits);
    const PresheafMorphism eta = transpose(FinFunctor::identity(el_ic.total), ic.presheaf, el_ic, iel);
    r.counit_triangle = compose(i_star_map(iel, ic, eps), eta) == PresheafMorphism::identity(ic.presheaf);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Slice isomorphism

ThetaResult theta_slice_iso(const CatDiagram& i, const CatPtr& c, Obj object, const EnumerationLimits& limits) {
  if (!i.terminals) throw Error(ErrorCode::MissingTerminalObject, "diagram declares no terminal objects");
  const FinCategory& a = *i.base;
  const std::vector<Obj>& e = *i.terminals;
  const SliceResult cc = slice(c, object);
  const FinFunctor& pi = cc.projection;

  const IStar over = i_star(i, cc.category, false, limits);
  const ElementsResult el_over = elements(over.presheaf);
  const IStar whole = i_star(i, c, false, limits);
  const ElementsResult el_whole = elements(whole.presheaf);
  const FinFunctor alpha = counit_alpha(whole, el_whole);
  const SliceResult target = slice(alpha, object);
  const auto target_objects = slice_objects(target);

  std::vector<Obj> omap;
  for (const auto& [x, q] : el_over.object_index) {
    const FinFunctor& qf = over.homs[x].functors[q];
    const Obj pq = whole.homs[x].object_of(compose(pi, qf));
    const Mor g = cc.object_index[qf(e[x])].second;
    omap.push_back(target_objects.at({el_whole.object_of(x, pq), g}));
  }
  std::vector<Mor> mmap;
  const FinCategory& src = *el_over.total;
  for (Mor m = 0; m < src.num_morphisms(); ++m) {
    const auto& [f, t, q2] = el_over.morphism_index[m];
    const NatTransf& tau = over.homs[a.src(f)].transformations[t];
    const Mor pt = whole.homs[a.src(f)].morphism_of(postwhisker(pi, tau));
    const Obj pq2 = whole.homs[a.tgt(f)].object_of(compose(pi, over.homs[a.tgt(f)].functors[q2]));
    const Mor total = *el_whole.morphism_of(f, pt, pq2);
    mmap.push_back(lift_along(*target.category, target.projection, omap[src.src(m)], omap[src.tgt(m)], total));
  }
  if (auto defect = functor_defect(src, *target.category, omap, mmap)) {
    throw Error(ErrorCode::IsoVerificationFailed, "theta is not a functor: " + *defect);
  }
  FinFunctor theta(el_over.total, target.category, std::move(omap), std::move(mmap));
  if (!theta.is_bijective()) throw Error(ErrorCode::IsoVerificationFailed, "theta is not bijective");
  return ThetaResult{el_over.total, target.category, std::move(theta)};
}

// ---------------------------------------------------------------------------
// Sieve classifier

SieveResult sieve_classifier(const Interval& i, const EnumerationLimits& limits) {
  if (i.ambient != Interval::Ambient::Presheaf) {
    throw Error(ErrorCode::PreconditionViolation, "sieve classifier needs an interval of presheaves");
  }
  const PresheafPtr& x = i.presheaf;
  const FinCategory& a = *x->base();
  ElementsResult el = elements(x);
  CatPtr d1 = standard::delta(1);

  std::vector<std::vector<bool>> zero(a.num_objects());
  for (Obj o = 0; o < a.num_objects(); ++o) {
    const FinCategory& v = *x->value(o);
    zero[o].assign(v.num_objects(), false);
    for (Obj z = 0; z < v.num_objects(); ++z) zero[o][z] = !v.hom(z, i.p0[o]).empty();
    if (zero[o][i.p1[o]]) {
      throw Error(ErrorCode::NotStronglySeparating,
                  "i0 and i1 are isomorphic at '" + a.object_id(o) + "'");
    }
  }
  std::vector<Obj> omap;
  for (const auto& [o, z] : el.object_index) omap.push_back(zero[o][z] ? 0 : 1);
  std::vector<Mor> mmap;
  const FinCategory& t = *el.total;
  for (Mor m = 0; m < t.num_morphisms(); ++m) {
    const auto s = omap[t.src(m)];
    const auto g = omap[t.tgt(m)];
    if (s > g) throw Error(ErrorCode::PreconditionViolation, "objects sent to 0 do not form a sieve");
    mmap.push_back(d1->hom(s, g)[0]);
  }
  FinFunctor u(el.total, d1, std::move(omap), std::move(mmap));
  IStar target = i_star(slice_diagram(x->base()), d1, false, limits);
  PresheafMorphism classifier = transpose(u, x, el, target);
  const auto top0 = i_star_point(target, 0);
  const auto top1 = i_star_point(target, 1);
  for (Obj o = 0; o < a.num_objects(); ++o) {
    if (classifier.component(o)(i.p0[o]) != top0[o] || classifier.component(o)(i.p1[o]) != top1[o]) {
      throw Error(ErrorCode::NotStronglySeparating, "classifier does not preserve the endpoints");
    }
  }
  return SieveResult{std::move(el), std::move(u), std::move(target), std::move(classifier)};
}

// ---------------------------------------------------------------------------
// Transport of multiplicative intervals

MultiplicativeInterval transport_interval(const CatDiagram& i, const MultiplicativeInterval& l,
                                          const EnumerationLimits& limits) {
  if (l.interval.ambient != Interval::Ambient::Category || !l.op) {
    throw Error(ErrorCode::PreconditionViolation, "transport needs a multiplicative interval of categories");
  }
  const CatPtr& carrier = l.interval.category;
  IStar ic = i_star(i, carrier, false, limits);
  const CatPtr square = l.op->dom();
  IStar isq = i_star(i, square, false, limits);
  const PresheafPtr prod = presheaves::product(ic.presheaf, ic.presheaf);

  // I*(L) x I*(L) -> I*(L x L), (p, q) -> <p, q>.
  std::vector<FinFunctor> comps;
  const FinCategory& a = *i.base;
  for (Obj o = 0; o < a.num_objects(); ++o) {
    const HomGroupoid& h = ic.homs[o];
    const HomGroupoid& hs = isq.homs[o];
    const FinCategory& pv = *prod->value(o);
    const ProductStructure& ps = *pv.product_structure();
    std::vector<Obj> omap;
    for (const auto& [p, q] : ps.objects) {
      omap.push_back(hs.object_of(standard::pairing(h.functors[p], h.functors[q], square)));
    }
    std::vector<Mor> mmap;
    for (const auto& [s, t] : ps.morphisms) {
      const NatTransf& ts = h.transformations[s];
      const NatTransf& tt = h.transformations[t];
      const std::size_t m = carrier->num_morphisms();
      std::vector<Mor> pc;
      for (Obj z = 0; z < i.values[o]->num_objects(); ++z) {
        pc.push_back(static_cast<Mor>(ts.component(z) * m + tt.component(z)));
      }
      mmap.push_back(hs.morphism_of(NatTransf(standard::pairing(ts.source(), tt.source(), square),
                                              standard::pairing(ts.target(), tt.target(), square), std::move(pc))));
    }
    comps.push_back(make_functor_unchecked(prod->value(o), hs.category, std::move(omap), std::move(mmap)));
  }
  PresheafMorphism compare(prod, isq.presheaf, std::move(comps));
  PresheafMorphism op = compose(i_star_map(isq, ic, *l.op), compare);

  MultiplicativeInterval out;
  out.interval = Interval::in_presheaves(ic.presheaf, i_star_point(ic, l.interval.c0), i_star_point(ic, l.interval.c1));
  out.op_presheaf = std::move(op);
  return out;
}

}  // namespace gtc
