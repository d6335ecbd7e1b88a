#include "gtc/testcat.hpp"

#include <map>
#include <tuple>

#include "gtc/error.hpp"

namespace gtc {

namespace {

Json answer_json(const Verdict& v) { return std::string(to_string(v.answer)); }

bool has_terminal(const FinCategory& c) { return !extremal_objects(c).terminal.empty(); }

}  // namespace

Verdict is_totally_aspherical(const CatPtr& a, const LocalizerSpec& loc) {
  Verdict base = is_aspherical(a, loc);
  Json ev{{"localizer", std::string(to_string(loc.kind))}, {"aspherical", to_json(base)}};
  if (base.is_no()) return Verdict::no(std::move(ev));
  const FinCategory& c = *a;
  const auto aa = standard::product(a, a);
  const FinFunctor delta = standard::diagonal(a, aa);
  Answer answer = base.answer;
  std::size_t checked = 0;
  for (Obj x = 0; x < c.num_objects(); ++x) {
    for (Obj y = 0; y < c.num_objects(); ++y) {
      const Obj xy = static_cast<Obj>(x * c.num_objects() + y);
      Verdict v = is_aspherical(slice(delta, xy).category, loc);
      ++checked;
      answer = conjoin(answer, v.answer);
      if (v.is_no()) {
        ev["failing_pair"] = {c.object_id(x), c.object_id(y)};
        ev["slice"] = to_json(v);
        ev["pairs_checked"] = checked;
        return Verdict::no(std::move(ev));
      }
      if (v.is_unknown() && !ev.contains("undecided_pair")) {
        ev["undecided_pair"] = {c.object_id(x), c.object_id(y)};
        ev["slice"] = to_json(v);
      }
    }
  }
  ev["pairs_checked"] = checked;
  return {answer, std::move(ev)};
}

Verdict is_locally_aspherical(const PresheafPtr& x, const LocalizerSpec& loc) {
  const CatPtr& base = x->base();
  Json ev{{"localizer", std::string(to_string(loc.kind))}};
  Json objects = Json::array();
  Answer answer = Answer::Yes;
  for (Obj a = 0; a < base->num_objects(); ++a) {
    const auto ax = presheaves::product(presheaves::representable(base, a), x);
    Verdict v = is_aspherical(grothendieck(ax).total, loc);
    objects.push_back({{"object", base->object_id(a)}, {"answer", answer_json(v)}});
    answer = conjoin(answer, v.answer);
    if (v.is_no()) {
      ev["failing_object"] = base->object_id(a);
      ev["evidence"] = v.evidence;
      ev["objects"] = std::move(objects);
      return Verdict::no(std::move(ev));
    }
  }
  ev["objects"] = std::move(objects);
  return {answer, std::move(ev)};
}

Catalog default_weak_test_catalog() {
  return {"default",
          {{"e", standard::terminal()},
           {"delta1", standard::delta(1)},
           {"delta2", standard::delta(2)},
           {"delta1xdelta1", standard::product(standard::delta(1), standard::delta(1))},
           {"join3", standard::join_semilattice3()}}};
}

Verdict weak_test_evidence(const CatPtr& a, const Catalog& catalog, const LocalizerSpec& loc,
                           const EnumerationLimits& limits) {
  for (const auto& [name, c] : catalog.entries) {
    if (!has_terminal(*c)) {
      throw Error(ErrorCode::CatalogEntryLacksTerminal, "catalog entry '" + name + "' has no terminal object");
    }
  }
  const CatDiagram i = slice_diagram(a);
  Json entries = Json::array();
  Json ev{{"scope", "catalog"}, {"catalog", catalog.id}, {"localizer", std::string(to_string(loc.kind))}};
  Answer answer = Answer::Yes;
  for (const auto& [name, c] : catalog.entries) {
    const IStar ic = i_star(i, c, false, limits);
    Verdict v = is_aspherical(elements(ic.presheaf).total, loc);
    entries.push_back({{"entry", name}, {"answer", answer_json(v)}, {"evidence", v.evidence}});
    answer = conjoin(answer, v.answer);
    if (v.is_no()) {
      ev["failing_entry"] = name;
      break;
    }
  }
  ev["entries"] = std::move(entries);
  if (answer == Answer::Yes) ev["note"] = "holds on the catalog only";
  return {answer, std::move(ev)};
}

bool HierarchyReport::implications_consistent() const {
  if (strict_test.is_yes() && test.is_no()) return false;
  if (test.is_yes() && (local_test.is_no() || aspherical.is_no())) return false;
  return true;
}

HierarchyReport check_hierarchy(const CatPtr& a, const LocalizerSpec& loc, const Catalog& catalog,
                                const EnumerationLimits& limits) {
  HierarchyReport r;
  r.catalog_id = catalog.id;
  r.aspherical = is_aspherical(a, loc);
  r.totally_aspherical = is_totally_aspherical(a, loc);

  const CatDiagram i = slice_diagram(a);
  const auto d1 = standard::delta(1);
  const IStar groupoidal = i_star(i, d1, false, limits);
  const IStar classical = i_star(i, d1, true, limits);
  r.interval_cross_check =
      same_presheaf(*groupoidal.presheaf, *presheaves::with_kind(classical.presheaf, ValueKind::Groupoid));

  r.local_test = is_locally_aspherical(groupoidal.presheaf, loc);
  const Verdict classical_local = is_locally_aspherical(classical.presheaf, loc);
  r.local_test_paths_agree = classical_local.answer == r.local_test.answer;

  r.test = Verdict{conjoin(r.local_test.answer, r.aspherical.answer),
                   {{"local_test", answer_json(r.local_test)}, {"aspherical", answer_json(r.aspherical)}}};

  const Verdict interval_aspherical = is_aspherical(elements(groupoidal.presheaf).total, loc);
  r.strict_test = Verdict{conjoin(r.totally_aspherical.answer, interval_aspherical.answer),
                          {{"totally_aspherical", answer_json(r.totally_aspherical)},
                           {"interval_aspherical", to_json(interval_aspherical)}}};

  r.weak_test = weak_test_evidence(a, catalog, loc, limits);
  return r;
}

Json to_json(const HierarchyReport& r) {
  return Json{{"aspherical", to_json(r.aspherical)},
              {"totally_aspherical", to_json(r.totally_aspherical)},
              {"local_test", to_json(r.local_test)},
              {"test", to_json(r.test)},
              {"strict_test", to_json(r.strict_test)},
              {"weak_test", {{"catalog", r.catalog_id}, {"verdict", to_json(r.weak_test)}}},
              {"cross_check",
               {{"interval_equal", r.interval_cross_check}, {"local_test_paths_agree", r.local_test_paths_agree}}},
              {"implications_consistent", r.implications_consistent()}};
}

// ---------------------------------------------------------------------------
// Intervals

namespace {

std::optional<Mor> iso_between(const FinCategory& c, Obj x, Obj y) {
  for (Mor f : c.hom(x, y)) {
    if (c.is_iso(f)) return f;
  }
  return std::nullopt;
}

bool is_empty_presheaf(const Presheaf& x) {
  for (const auto& v : x.values()) {
    if (v->num_objects() != 0) return false;
  }
  return true;
}

std::map<std::pair<Obj, Obj>, Obj> object_pairs(const ProductStructure& p) {
  std::map<std::pair<Obj, Obj>, Obj> out;
  for (Obj o = 0; o < p.objects.size(); ++o) out[p.objects[o]] = o;
  return out;
}

std::map<std::pair<Mor, Mor>, Mor> morphism_pairs(const ProductStructure& p) {
  std::map<std::pair<Mor, Mor>, Mor> out;
  for (Mor m = 0; m < p.morphisms.size(); ++m) out[p.morphisms[m]] = m;
  return out;
}

// Checks the unit and absorbing laws of op : C x C -> C at one carrier.
std::string multiplicative_defect(const FinCategory& c, const FinCategory& cc, const FinFunctor& op, Obj i0, Obj i1,
                                  const std::string& where) {
  const ProductStructure* p = cc.product_structure();
  if (p == nullptr) return "operation domain is not a product" + where;
  const auto objs = object_pairs(*p);
  const auto mors = morphism_pairs(*p);
  for (Obj x = 0; x < c.num_objects(); ++x) {
    if (op(objs.at({i0, x})) != x) return "left unit fails at object '" + c.object_id(x) + "'" + where;
    if (op(objs.at({i1, x})) != i1) return "left absorption fails at object '" + c.object_id(x) + "'" + where;
  }
  for (Mor k = 0; k < c.num_morphisms(); ++k) {
    if (op.on_morphism(mors.at({c.identity(i0), k})) != k) {
      return "left unit fails at morphism '" + c.morphism_id(k) + "'" + where;
    }
    if (op.on_morphism(mors.at({c.identity(i1), k})) != c.identity(i1)) {
      return "left absorption fails at morphism '" + c.morphism_id(k) + "'" + where;
    }
  }
  return {};
}

}  // namespace

SeparationReport is_strongly_separating(const Interval& i) {
  SeparationReport r;
  if (i.ambient == Interval::Ambient::Category) {
    if (auto f = iso_between(*i.category, i.c0, i.c1)) {
      r.separating = false;
      r.witness = std::make_pair(Obj{0}, *f);
    }
    return r;
  }
  const Presheaf& x = *i.presheaf;
  for (Obj a = 0; a < x.base()->num_objects(); ++a) {
    if (auto f = iso_between(*x.value(a), i.p0[a], i.p1[a])) {
      r.separating = false;
      r.witness = std::make_pair(a, *f);
      return r;
    }
  }
  return r;
}

FamilySeparationReport strongly_separating_on_family(const Interval& i, const std::vector<PresheafPtr>& family,
                                                     const EnumerationLimits& limits) {
  if (i.ambient != Interval::Ambient::Presheaf) {
    throw Error(ErrorCode::PreconditionViolation, "family check needs an interval of presheaves");
  }
  const auto t = presheaves::terminal(i.presheaf->base());
  const PresheafMorphism g0 = global_point(t, i.presheaf, i.p0);
  const PresheafMorphism g1 = global_point(t, i.presheaf, i.p1);
  FamilySeparationReport r;
  for (std::size_t n = 0; n < family.size(); ++n) {
    const PresheafPtr& x = family[n];
    if (is_empty_presheaf(*x)) continue;
    const PresheafMorphism to_t = PresheafMorphism::to_terminal(x, t);
    if (!two_morphisms(compose(g0, to_t), compose(g1, to_t), limits).empty()) {
      r.separating = false;
      r.witness = n;
      return r;
    }
  }
  return r;
}

MultiplicativeCheck verify_multiplicative(const MultiplicativeInterval& l) {
  MultiplicativeCheck r;
  const Interval& i = l.interval;
  if (i.ambient == Interval::Ambient::Category) {
    if (!l.op) throw Error(ErrorCode::PreconditionViolation, "interval has no operation");
    r.failure = multiplicative_defect(*i.category, *l.op->dom(), *l.op, i.c0, i.c1, "");
  } else {
    if (!l.op_presheaf) throw Error(ErrorCode::PreconditionViolation, "interval has no operation");
    const Presheaf& x = *i.presheaf;
    const PresheafMorphism& op = *l.op_presheaf;
    for (Obj a = 0; a < x.base()->num_objects() && r.failure.empty(); ++a) {
      r.failure = multiplicative_defect(*x.value(a), *op.source()->value(a), op.component(a), i.p0[a], i.p1[a],
                                        " over '" + x.base()->object_id(a) + "'");
    }
  }
  r.ok = r.failure.empty();
  return r;
}

MultiplicativeInterval canonical_multiplicative(const CatPtr& a, const EnumerationLimits& limits) {
  return transport_interval(slice_diagram(a), delta1_multiplicative(), limits);
}

// ---------------------------------------------------------------------------
// Canonical isomorphisms
//
// All three categories are described by objects (b, q : b -> a, x in X(b))
// and morphisms (f : b -> b', q', k : x -> X(f)(x'), x').

namespace {

using ObjKey = std::tuple<Obj, Mor, Obj>;
using MorKey = std::tuple<Mor, Mor, Mor, Obj>;

struct Keys {
  std::vector<ObjKey> objects;
  std::vector<MorKey> morphisms;
};

Keys product_keys(const ElementsResult& el, const Presheaf& x, Obj a) {
  const FinCategory& base = *x.base();
  Keys keys;
  for (const auto& [b, o] : el.object_index) {
    const std::size_t n = x.value(b)->num_objects();
    keys.objects.emplace_back(b, base.hom(b, a)[o / n], static_cast<Obj>(o % n));
  }
  for (const auto& [f, kk, o2] : el.morphism_index) {
    const Obj b2 = base.tgt(f);
    const std::size_t m = x.value(base.src(f))->num_morphisms();
    const std::size_t n2 = x.value(b2)->num_objects();
    keys.morphisms.emplace_back(f, base.hom(b2, a)[o2 / n2], static_cast<Mor>(kk % m), static_cast<Obj>(o2 % n2));
  }
  return keys;
}

Keys restricted_keys(const ElementsResult& el, const SliceResult& s) {
  Keys keys;
  for (const auto& [so, x] : el.object_index) {
    const auto& [b, q] = s.object_index[so];
    keys.objects.emplace_back(b, q, x);
  }
  for (const auto& [g, k, x2] : el.morphism_index) {
    const Mor q2 = s.object_index[s.category->tgt(g)].second;
    keys.morphisms.emplace_back(s.projection.on_morphism(g), q2, k, x2);
  }
  return keys;
}

Keys slice_keys(const SliceResult& z, const ElementsResult& el) {
  Keys keys;
  for (const auto& [e, q] : z.object_index) {
    const auto& [b, x] = el.object_index[e];
    keys.objects.emplace_back(b, q, x);
  }
  for (Mor m = 0; m < z.category->num_morphisms(); ++m) {
    const auto& [f, k, x2] = el.morphism_index[z.projection.on_morphism(m)];
    keys.morphisms.emplace_back(f, z.object_index[z.category->tgt(m)].second, k, x2);
  }
  return keys;
}

FinFunctor compare(const CatPtr& dom, const Keys& from, const CatPtr& cod, const Keys& to, const std::string& what,
                   bool bijective = true) {
  std::map<ObjKey, Obj> objs;
  std::map<MorKey, Mor> mors;
  for (Obj o = 0; o < to.objects.size(); ++o) objs.emplace(to.objects[o], o);
  for (Mor m = 0; m < to.morphisms.size(); ++m) mors.emplace(to.morphisms[m], m);
  if (bijective && (objs.size() != to.objects.size() || mors.size() != to.morphisms.size() ||
                    from.objects.size() != to.objects.size() || from.morphisms.size() != to.morphisms.size())) {
    throw Error(ErrorCode::IsoVerificationFailed, what + ": descriptions are not in bijection");
  }
  std::vector<Obj> omap;
  std::vector<Mor> mmap;
  for (const auto& k : from.objects) {
    auto it = objs.find(k);
    if (it == objs.end()) throw Error(ErrorCode::IsoVerificationFailed, what + ": object without a partner");
    omap.push_back(it->second);
  }
  for (const auto& k : from.morphisms) {
    auto it = mors.find(k);
    if (it == mors.end()) throw Error(ErrorCode::IsoVerificationFailed, what + ": morphism without a partner");
    mmap.push_back(it->second);
  }
  if (auto defect = functor_defect(*dom, *cod, omap, mmap)) {
    throw Error(ErrorCode::IsoVerificationFailed, what + ": " + *defect);
  }
  return make_functor_unchecked(dom, cod, std::move(omap), std::move(mmap));
}

}  // namespace

IsoSuite canonical_iso_suite(const PresheafPtr& x, Obj a) {
  const CatPtr& base = x->base();
  const SliceResult over = slice(base, a);
  auto product = presheaves::product(presheaves::representable(base, a), x);
  auto restricted = restrict(over.projection, x);
  ElementsResult pe = grothendieck(product);
  ElementsResult re = grothendieck(restricted);
  ElementsResult total = grothendieck(x);
  SliceResult zs = slice(total.zeta, a);

  const Keys pk = product_keys(pe, *x, a);
  const Keys rk = restricted_keys(re, over);
  const Keys sk = slice_keys(zs, total);
  FinFunctor first = compare(pe.total, pk, re.total, rk, "elements(a x X) -> elements(X|A/a)");
  FinFunctor second = compare(re.total, rk, zs.category, sk, "elements(X|A/a) -> zeta/a");
  return IsoSuite{std::move(product), std::move(restricted), std::move(pe), std::move(re), std::move(total),
                  std::move(zs),      std::move(first),      std::move(second)};
}

bool iso_suite_natural(const PresheafMorphism& phi, Obj a) {
  const PresheafPtr& x = phi.source();
  const PresheafPtr& y = phi.target();
  const IsoSuite sx = canonical_iso_suite(x, a);
  const IsoSuite sy = canonical_iso_suite(y, a);

  const PresheafPtr rep_a = presheaves::representable(x->base(), a);
  const PresheafMorphism a_times_phi =
      pairing(left_projection(sx.product, rep_a), compose(phi, right_projection(sx.product, x)), sy.product);
  const FinFunctor m1 = elements_map(a_times_phi, sx.product_elements, sy.product_elements);

  const SliceResult over = slice(x->base(), a);
  std::vector<FinFunctor> comps;
  for (Obj s = 0; s < over.category->num_objects(); ++s) comps.push_back(phi.component(over.object_index[s].first));
  const FinFunctor m2 = elements_map(make_morphism_unchecked(sx.restricted, sy.restricted, std::move(comps)),
                                     sx.restricted_elements, sy.restricted_elements);

  Keys moved = slice_keys(sx.zeta_slice, sx.total);
  const FinCategory& base = *x->base();
  for (auto& [b, q, o] : moved.objects) o = phi.component(b)(o);
  for (auto& [f, q2, k, o2] : moved.morphisms) {
    k = phi.component(base.src(f)).on_morphism(k);
    o2 = phi.component(base.tgt(f))(o2);
  }
  const FinFunctor m3 = compare(sx.zeta_slice.category, moved, sy.zeta_slice.category,
                                slice_keys(sy.zeta_slice, sy.total), "zeta_X/a -> zeta_Y/a", false);
  return compose(sy.product_to_restricted, m1) == compose(m2, sx.product_to_restricted) &&
         compose(sy.restricted_to_slice, m2) == compose(m3, sx.restricted_to_slice);
}

}  // namespace gtc
