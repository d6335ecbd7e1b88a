#include "gtc/homology.hpp"

#include <map>

#include "gtc/elements.hpp"
#include "gtc/error.hpp"

namespace gtc {

std::vector<std::size_t> TruncatedNerve::sizes() const {
  std::vector<std::size_t> out;
  for (const auto& s : simplices) out.push_back(s.size());
  return out;
}

TruncatedNerve nerve(const CatPtr& cp, unsigned bound, const EnumerationLimits& limits) {
  const FinCategory& c = *cp;
  TruncatedNerve n;
  n.category = cp;
  n.bound = bound;
  n.simplices.resize(bound + 1);
  n.faces.resize(bound + 1);
  std::uint64_t total = 0;
  auto count = [&] {
    if (++total > limits.cap) throw Error(ErrorCode::SizeExceeded, "nerve exceeded " + std::to_string(limits.cap) + " simplices");
  };

  for (Obj x = 0; x < c.num_objects(); ++x) {
    count();
    n.simplices[0].push_back(Simplex{x, {}});
  }
  n.faces[0].resize(c.num_objects());

  std::vector<std::map<std::vector<Mor>, std::uint32_t>> index(bound + 1);
  for (unsigned k = 1; k <= bound; ++k) {
    if (k == 1) {
      for (Mor f = 0; f < c.num_morphisms(); ++f) {
        if (c.is_identity(f)) continue;
        count();
        index[1].emplace(std::vector<Mor>{f}, static_cast<std::uint32_t>(n.simplices[1].size()));
        n.simplices[1].push_back(Simplex{c.src(f), {f}});
      }
    } else {
      for (const Simplex& s : n.simplices[k - 1]) {
        for (Mor f : c.outgoing(c.tgt(s.arrows.back()))) {
          if (c.is_identity(f)) continue;
          count();
          Simplex t = s;
          t.arrows.push_back(f);
          index[k].emplace(t.arrows, static_cast<std::uint32_t>(n.simplices[k].size()));
          n.simplices[k].push_back(std::move(t));
        }
      }
    }
    for (const Simplex& s : n.simplices[k]) {
      std::vector<Face> faces;
      if (k == 1) {
        faces.push_back(Face{c.tgt(s.arrows[0]), 1});
        faces.push_back(Face{s.start, -1});
      } else {
        for (unsigned i = 0; i <= k; ++i) {
          std::vector<Mor> a;
          if (i == 0) {
            a.assign(s.arrows.begin() + 1, s.arrows.end());
          } else if (i == k) {
            a.assign(s.arrows.begin(), s.arrows.end() - 1);
          } else {
            a = s.arrows;
            const Mor g = c.compose(a[i], a[i - 1]);
            a.erase(a.begin() + i);
            a[i - 1] = g;
          }
          const int sign = (i % 2 == 0) ? 1 : -1;
          bool degenerate = false;
          for (Mor m : a) degenerate = degenerate || c.is_identity(m);
          faces.push_back(Face{degenerate ? kUnset : index[k - 1].at(a), sign});
        }
      }
      n.faces[k].push_back(std::move(faces));
    }
  }
  return n;
}

bool ChainComplex::squares_to_zero() const {
  for (std::size_t k = 2; k < boundary.size(); ++k) {
    if (!(boundary[k - 1] * boundary[k]).is_zero()) return false;
  }
  return true;
}

ChainComplex normalized_chains(const TruncatedNerve& n) {
  ChainComplex cx;
  for (const auto& s : n.simplices) cx.rank.push_back(s.size());
  cx.boundary.emplace_back(0, cx.rank[0]);
  for (unsigned k = 1; k <= n.bound; ++k) {
    IntMatrix d(cx.rank[k - 1], cx.rank[k]);
    for (std::size_t s = 0; s < n.faces[k].size(); ++s) {
      for (const Face& f : n.faces[k][s]) {
        if (f.index != kUnset) d.at(f.index, s) += f.sign;
      }
    }
    cx.boundary.push_back(std::move(d));
  }
  return cx;
}

HomologyReport homology(const ChainComplex& cx, unsigned validity_bound) {
  const std::size_t top = cx.rank.size() - 1;
  std::vector<SmithResult> snf;
  for (std::size_t k = 0; k <= top; ++k) snf.push_back(smith_normal_form(cx.boundary[k], false));
  HomologyReport r;
  r.validity_bound = validity_bound;
  for (std::size_t k = 0; k <= top; ++k) {
    HomologyGroup g;
    const std::size_t next_rank = k + 1 <= top ? snf[k + 1].rank : 0;
    g.betti = cx.rank[k] - snf[k].rank - next_rank;
    if (k + 1 <= top) {
      for (const Integer& v : snf[k + 1].invariants)
        if (v > 1) g.torsion.push_back(v);
    }
    g.valid = k <= validity_bound;
    r.groups.push_back(std::move(g));
  }
  return r;
}

HomologyReport homology(const CatPtr& c, unsigned bound, const EnumerationLimits& limits) {
  return homology(normalized_chains(nerve(c, bound + 1, limits)), bound);
}

bool HomologyReport::reduced_nonzero() const {
  for (std::size_t k = 0; k < groups.size(); ++k) {
    if (!groups[k].valid) continue;
    if (!groups[k].torsion.empty()) return true;
    if (groups[k].betti != (k == 0 ? 1u : 0u)) return true;
  }
  return false;
}

Json to_json(const HomologyReport& r) {
  Json out = Json::object();
  for (std::size_t k = 0; k < r.groups.size(); ++k) {
    Json torsion = Json::array();
    for (const Integer& t : r.groups[k].torsion) torsion.push_back(integer_json(t));
    out[std::to_string(k)] = {{"betti", r.groups[k].betti}, {"torsion", torsion}, {"valid", r.groups[k].valid}};
  }
  return out;
}

std::string_view to_string(LocalizerSpec::Kind k) { return k == LocalizerSpec::Kind::W1 ? "W1" : "Winfty"; }

// ---------------------------------------------------------------------------
// Oracles

namespace {

constexpr std::uint64_t kContractibilityCap = 200'000;

Verdict pi1_trivial(const CatPtr& c, const LocalizerSpec& loc, Json ev) {
  FPGroupoid fp = localize(c);
  if (fp.components.size() != 1) {
    ev["reason"] = "not connected";
    ev["components"] = fp.components.size();
    return Verdict::no(std::move(ev));
  }
  const GroupPresentation& g = vertex_group(fp, 0);
  Verdict cmp = group_compare(g, GroupPresentation{}, loc.budget);
  ev["pi1"] = to_json(g);
  ev["abelianization"] = to_json(abelianization(g));
  ev["comparison"] = cmp.evidence;
  switch (cmp.answer) {
    case Answer::Yes:
      ev["reason"] = "trivial fundamental group";
      return Verdict::yes(std::move(ev));
    case Answer::No:
      ev["reason"] = "nontrivial fundamental group";
      return Verdict::no(std::move(ev));
    case Answer::Unknown:
      break;
  }
  ev["reason"] = "fundamental group undecided";
  return Verdict::unknown(std::move(ev));
}

bool differs(const HomologyGroup& a, const HomologyGroup& b) { return a.betti != b.betti || a.torsion != b.torsion; }

}  // namespace

Verdict is_aspherical(const CatPtr& c, const LocalizerSpec& loc) {
  Json ev;
  ev["localizer"] = std::string(to_string(loc.kind));
  if (c->num_objects() == 0) {
    ev["reason"] = "empty category";
    return Verdict::no(std::move(ev));
  }
  const ExtremalObjects ext = extremal_objects(*c);
  if (!ext.terminal.empty()) {
    ev["reason"] = "terminal object";
    ev["object"] = c->object_id(ext.terminal.front());
    return Verdict::yes(std::move(ev));
  }
  if (!ext.initial.empty()) {
    ev["reason"] = "initial object";
    ev["object"] = c->object_id(ext.initial.front());
    return Verdict::yes(std::move(ev));
  }
  try {
    const Interval d1 = Interval::in_category(standard::delta(1), 0, 1);
    if (is_contractible(d1, c, EnumerationLimits{kContractibilityCap})) {
      ev["reason"] = "Delta_1-contractible";
      return Verdict::yes(std::move(ev));
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SizeExceeded) throw;
  }

  if (loc.kind == LocalizerSpec::Kind::W1) return pi1_trivial(c, loc, std::move(ev));

  try {
    const HomologyReport h = homology(c, loc.dimension);
    ev["homology"] = to_json(h);
    if (h.groups[0].betti != 1) {
      ev["reason"] = "not connected";
      ev["components"] = h.groups[0].betti;
      return Verdict::no(std::move(ev));
    }
    if (h.reduced_nonzero()) {
      ev["reason"] = "nonzero reduced homology";
      return Verdict::no(std::move(ev));
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SizeExceeded) throw;
    ev["homology"] = "size exceeded";
  }
  Verdict pi1 = pi1_trivial(c, loc, ev);
  if (pi1.is_no()) return pi1;
  ev = pi1.evidence;
  ev["reason"] = "no sufficient criterion applies";
  ev["pi1_trivial"] = std::string(to_string(pi1.answer));
  return Verdict::unknown(std::move(ev));
}

Verdict is_aspherical_morphism(const FinFunctor& u, const LocalizerSpec& loc) {
  const FinCategory& b = *u.cod();
  Json slices = Json::array();
  Answer acc = Answer::Yes;
  for (Obj x = 0; x < b.num_objects(); ++x) {
    Verdict v = is_aspherical(slice(u, x).category, loc);
    slices.push_back({{"object", b.object_id(x)}, {"answer", std::string(to_string(v.answer))}, {"evidence", v.evidence}});
    acc = conjoin(acc, v.answer);
    if (acc == Answer::No) break;
  }
  Json ev{{"localizer", std::string(to_string(loc.kind))}, {"slices", std::move(slices)}};
  return Verdict{acc, std::move(ev)};
}

Verdict is_weak_equivalence(const FinFunctor& u, const LocalizerSpec& loc) {
  if (loc.kind == LocalizerSpec::Kind::W1) return w1_class(u, loc.budget);
  Json ev{{"localizer", "Winfty"}};
  Verdict am = is_aspherical_morphism(u, loc);
  if (am.is_yes()) {
    ev["reason"] = "aspherical morphism";
    ev["slices"] = am.evidence["slices"];
    return Verdict::yes(std::move(ev));
  }
  Verdict w1 = w1_class(u, loc.budget);
  ev["w1"] = to_json(w1);
  if (w1.is_no()) {
    ev["reason"] = "not a W1-equivalence";
    return Verdict::no(std::move(ev));
  }
  try {
    const HomologyReport hs = homology(u.dom(), loc.dimension);
    const HomologyReport ht = homology(u.cod(), loc.dimension);
    ev["source_homology"] = to_json(hs);
    ev["target_homology"] = to_json(ht);
    for (std::size_t k = 0; k <= loc.dimension; ++k) {
      if (differs(hs.groups[k], ht.groups[k])) {
        ev["reason"] = "homology differs";
        ev["degree"] = k;
        return Verdict::no(std::move(ev));
      }
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SizeExceeded) throw;
  }
  ev["reason"] = "no sufficient criterion applies";
  return Verdict::unknown(std::move(ev));
}

ThomasonRecord thomason_check(const PresheafMorphism& phi, const LocalizerSpec& loc) {
  ThomasonRecord r;
  bool all_yes = true;
  for (const FinFunctor& f : phi.components()) {
    r.pointwise.push_back(is_weak_equivalence(f, loc));
    all_yes = all_yes && r.pointwise.back().is_yes();
  }
  r.total = is_weak_equivalence(elements_map(phi), loc);
  r.consistent = !(all_yes && r.total.is_no());
  return r;
}

Json to_json(const ThomasonRecord& r) {
  Json pw = Json::array();
  for (const Verdict& v : r.pointwise) pw.push_back(to_json(v));
  return {{"pointwise", std::move(pw)}, {"total", to_json(r.total)}, {"consistent", r.consistent}};
}

}  // namespace gtc
