#include "gtc/grpd.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

namespace gtc {

FinGroupoid::FinGroupoid(CatPtr category) : category_(std::move(category)) {
  const FinCategory& c = *category_;
  inverse_.resize(c.num_morphisms());
  for (Mor f = 0; f < c.num_morphisms(); ++f) {
    auto inv = c.is_identity(f) ? std::optional<Mor>(f) : c.inverse(f);
    if (!inv) throw Error(ErrorCode::NotAGroupoid, "morphism '" + c.morphism_id(f) + "' is not invertible");
    inverse_[f] = *inv;
  }
}

// ---------------------------------------------------------------------------
// Words

Word invert(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (Letter& l : out) l = -l;
  return out;
}

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Word free_reduce(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (Letter l : w) {
    if (!out.empty() && out.back() == -l) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

Word cyclic_reduce(const Word& w) {
  Word r = free_reduce(w);
  std::size_t lo = 0;
  std::size_t hi = r.size();
  while (hi - lo >= 2 && r[lo] == -r[hi - 1]) {
    ++lo;
    --hi;
  }
  return Word(r.begin() + static_cast<std::ptrdiff_t>(lo), r.begin() + static_cast<std::ptrdiff_t>(hi));
}

void GroupPresentation::validate() const {
  for (const Word& r : relators) {
    for (Letter l : r) {
      if (l == 0 || generator_of(l) >= generators.size()) {
        throw Error(ErrorCode::ValidationError, "relator uses an undeclared generator");
      }
    }
  }
}

std::string GroupPresentation::word_to_string(const Word& w) const {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += generators[generator_of(w[i])];
    if (w[i] < 0) out += "^-1";
  }
  return out;
}

namespace {

Json word_json(const GroupPresentation& p, const Word& w) {
  Json out = Json::array();
  for (Letter l : w) out.push_back(p.generators[generator_of(l)] + (l < 0 ? "^-1" : ""));
  return out;
}

}  // namespace

Json to_json(const GroupPresentation& p) {
  Json rel = Json::array();
  for (const Word& r : p.relators) rel.push_back(word_json(p, r));
  return Json{{"generators", p.generators}, {"relators", rel}};
}

// ---------------------------------------------------------------------------
// Tietze reduction

namespace {

std::uint32_t letter_key(Letter l) {
  return static_cast<std::uint32_t>(2 * generator_of(l) + (l < 0 ? 1 : 0));
}

bool word_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return letter_key(a[i]) < letter_key(b[i]);
  }
  return false;
}

// Smallest rotation of r or r^-1.
Word canonical_relator(const Word& r) {
  Word best = r;
  for (const Word& w : {r, invert(r)}) {
    for (std::size_t s = 0; s < w.size(); ++s) {
      Word rot(w.begin() + static_cast<std::ptrdiff_t>(s), w.end());
      rot.insert(rot.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(s));
      if (word_less(rot, best)) best = rot;
    }
  }
  return best;
}

std::vector<Word> normalize(const std::vector<Word>& relators) {
  std::vector<Word> out;
  for (const Word& r : relators) {
    Word c = cyclic_reduce(r);
    if (!c.empty()) out.push_back(canonical_relator(c));
  }
  std::sort(out.begin(), out.end(), word_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Word substitute(const Word& w, std::size_t g, const Word& expr) {
  Word out;
  const Word inv = invert(expr);
  for (Letter l : w) {
    if (generator_of(l) == g) {
      const Word& e = l > 0 ? expr : inv;
      out.insert(out.end(), e.begin(), e.end());
    } else {
      out.push_back(l);
    }
  }
  return free_reduce(out);
}

std::size_t total_length(const std::vector<Word>& rels) {
  std::size_t n = 0;
  for (const Word& r : rels) n += r.size();
  return n;
}

}  // namespace

SimplifiedPresentation simplify(const GroupPresentation& p) {
  p.validate();
  const std::size_t n = p.generators.size();
  std::vector<bool> alive(n, true);
  std::vector<Word> subst(n);
  for (std::size_t k = 0; k < n; ++k) subst[k] = {letter(k)};
  std::vector<Word> rels = normalize(p.relators);

  while (true) {
    const std::size_t total = total_length(rels);
    bool eliminated = false;
    for (std::size_t ri = 0; ri < rels.size() && !eliminated; ++ri) {
      const Word& r = rels[ri];
      std::map<std::size_t, std::size_t> count;
      for (Letter l : r) ++count[generator_of(l)];
      for (const auto& [g, c] : count) {
        if (c != 1) continue;
        // Rotate so the occurrence comes first: g^e C = 1.
        std::size_t pos = 0;
        while (generator_of(r[pos]) != g) ++pos;
        Word rest(r.begin() + static_cast<std::ptrdiff_t>(pos) + 1, r.end());
        rest.insert(rest.end(), r.begin(), r.begin() + static_cast<std::ptrdiff_t>(pos));
        const Word expr = r[pos] > 0 ? invert(rest) : rest;
        std::vector<Word> next;
        for (std::size_t rj = 0; rj < rels.size(); ++rj) {
          if (rj != ri) next.push_back(substitute(rels[rj], g, expr));
        }
        next = normalize(next);
        if (r.size() > 2 && total_length(next) > total) continue;
        rels = std::move(next);
        for (Word& s : subst) s = substitute(s, g, expr);
        alive[g] = false;
        eliminated = true;
        break;
      }
    }
    if (!eliminated) break;
  }

  SimplifiedPresentation out;
  std::vector<std::size_t> new_index(n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    if (!alive[k]) continue;
    new_index[k] = out.survivors.size();
    out.survivors.push_back(k);
    out.presentation.generators.push_back(p.generators[k]);
  }
  auto reindex = [&](const Word& w) {
    Word o;
    for (Letter l : w) o.push_back(letter(new_index[generator_of(l)], l < 0));
    return o;
  };
  for (const Word& r : rels) out.presentation.relators.push_back(reindex(r));
  out.presentation.relators = normalize(out.presentation.relators);
  for (const Word& s : subst) out.substitution.push_back(reindex(s));
  return out;
}

// ---------------------------------------------------------------------------
// Abelianization

AbelianInvariants abelianization(const GroupPresentation& p) {
  p.validate();
  const std::size_t n = p.generators.size();
  AbelianInvariants out;
  if (p.relators.empty()) {
    out.free_rank = n;
    return out;
  }
  IntMatrix m(p.relators.size(), n);
  for (std::size_t i = 0; i < p.relators.size(); ++i) {
    for (Letter l : p.relators[i]) m.at(i, generator_of(l)) += (l > 0 ? 1 : -1);
  }
  SmithResult s = smith_normal_form(m, false);
  out.free_rank = n - s.rank;
  for (const Integer& d : s.invariants) {
    if (d > 1) out.torsion.push_back(d);
  }
  return out;
}

Json integer_json(const Integer& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

Json to_json(const AbelianInvariants& a) {
  Json torsion = Json::array();
  for (const Integer& t : a.torsion) torsion.push_back(integer_json(t));
  return Json{{"free_rank", a.free_rank}, {"torsion", torsion}};
}

bool is_trivial(const AbelianInvariants& a) { return a.free_rank == 0 && a.torsion.empty(); }

// ---------------------------------------------------------------------------
// Finite groups

namespace {
inline std::size_t column_of(Letter l) { return 2 * generator_of(l) + (l < 0 ? 1 : 0); }
}  // namespace

std::uint32_t FiniteGroup::apply(std::uint32_t e, Letter l) const {
  return action[e * 2 * num_generators + column_of(l)];
}

std::uint32_t FiniteGroup::evaluate(const Word& w, std::uint32_t start) const {
  std::uint32_t e = start;
  for (Letter l : w) e = apply(e, l);
  return e;
}

std::uint32_t FiniteGroup::multiply(std::uint32_t a, std::uint32_t b) const {
  return evaluate(representative[b], a);
}

std::size_t FiniteGroup::generated_order(const std::vector<std::uint32_t>& elements) const {
  std::vector<bool> seen(order, false);
  std::deque<std::uint32_t> queue{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!queue.empty()) {
    const std::uint32_t e = queue.front();
    queue.pop_front();
    for (std::uint32_t g : elements) {
      const std::uint32_t next = multiply(e, g);
      if (!seen[next]) {
        seen[next] = true;
        ++count;
        queue.push_back(next);
      }
    }
  }
  return count;
}

namespace {

constexpr std::uint32_t kNone = ~std::uint32_t{0};

class CosetTable {
 public:
  CosetTable(std::size_t num_generators, std::uint64_t budget)
      : width_(2 * num_generators), budget_(budget) {
    new_row();
  }

  bool over_budget() const { return steps_ > budget_; }
  std::uint64_t steps() const { return steps_; }
  std::size_t rows() const { return parent_.size(); }
  bool alive(std::uint32_t c) const { return parent_[c] == c; }
  std::size_t live() const { return live_; }
  std::size_t max_live() const { return max_live_; }

  std::uint32_t& entry(std::uint32_t c, std::size_t col) { return table_[c * width_ + col]; }

  void define(std::uint32_t c, std::size_t col) {
    ++steps_;
    const std::uint32_t d = new_row();
    entry(c, col) = d;
    entry(d, col ^ 1u) = c;
  }

  void scan_and_fill(std::uint32_t c, const Word& w) {
    if (w.empty()) return;
    std::uint32_t f = c;
    std::uint32_t b = c;
    std::ptrdiff_t i = 0;
    std::ptrdiff_t j = static_cast<std::ptrdiff_t>(w.size()) - 1;
    while (true) {
      while (i <= j && entry(f, column_of(w[i])) != kNone) {
        f = entry(f, column_of(w[i]));
        ++i;
      }
      if (i > j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j >= i && entry(b, column_of(w[j]) ^ 1u) != kNone) {
        b = entry(b, column_of(w[j]) ^ 1u);
        --j;
      }
      if (j < i) {
        coincidence(f, b);
        return;
      }
      if (i == j) {
        ++steps_;
        entry(f, column_of(w[i])) = b;
        entry(b, column_of(w[i]) ^ 1u) = f;
        return;
      }
      define(f, column_of(w[i]));
      if (over_budget()) return;
    }
  }

  void fill_row(std::uint32_t c) {
    for (std::size_t col = 0; col < width_ && alive(c); ++col) {
      if (entry(c, col) == kNone) define(c, col);
      if (over_budget()) return;
    }
  }

 private:
  std::uint32_t new_row() {
    const auto d = static_cast<std::uint32_t>(parent_.size());
    parent_.push_back(d);
    table_.resize(table_.size() + width_, kNone);
    ++live_;
    max_live_ = std::max(max_live_, live_);
    return d;
  }

  std::uint32_t rep(std::uint32_t c) {
    std::uint32_t r = c;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[c] != r) {
      const std::uint32_t next = parent_[c];
      parent_[c] = r;
      c = next;
    }
    return r;
  }

  void merge(std::uint32_t k, std::uint32_t l, std::deque<std::uint32_t>& queue) {
    const std::uint32_t a = rep(k);
    const std::uint32_t b = rep(l);
    if (a == b) return;
    const std::uint32_t lo = std::min(a, b);
    const std::uint32_t hi = std::max(a, b);
    parent_[hi] = lo;
    --live_;
    queue.push_back(hi);
  }

  void coincidence(std::uint32_t a, std::uint32_t b) {
    std::deque<std::uint32_t> queue;
    merge(a, b, queue);
    while (!queue.empty()) {
      const std::uint32_t g = queue.front();
      queue.pop_front();
      for (std::size_t col = 0; col < width_; ++col) {
        const std::uint32_t d = entry(g, col);
        if (d == kNone) continue;
        entry(d, col ^ 1u) = kNone;
        const std::uint32_t mu = rep(g);
        const std::uint32_t nu = rep(d);
        if (entry(mu, col) != kNone) {
          merge(nu, entry(mu, col), queue);
        } else if (entry(nu, col ^ 1u) != kNone) {
          merge(mu, entry(nu, col ^ 1u), queue);
        } else {
          entry(mu, col) = nu;
          entry(nu, col ^ 1u) = mu;
        }
      }
    }
  }

  std::size_t width_;
  std::uint64_t budget_;
  std::uint64_t steps_ = 0;
  std::size_t live_ = 0;
  std::size_t max_live_ = 0;
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> table_;
};

}  // namespace

CosetEnumeration enumerate_cosets(const GroupPresentation& p, std::uint64_t budget) {
  p.validate();
  const std::size_t n = p.generators.size();
  CosetEnumeration out;
  CosetTable t(n, budget);
  std::vector<Word> relators;
  for (const Word& r : p.relators) {
    Word c = free_reduce(r);
    if (!c.empty()) relators.push_back(std::move(c));
  }
  for (std::uint32_t c = 0; c < t.rows(); ++c) {
    if (!t.alive(c)) continue;
    for (const Word& r : relators) {
      if (!t.alive(c)) break;
      t.scan_and_fill(c, r);
      if (t.over_budget()) break;
    }
    if (!t.over_budget() && t.alive(c)) t.fill_row(c);
    if (t.over_budget()) {
      out.steps = t.steps();
      out.max_live = t.max_live();
      return out;
    }
  }
  out.complete = true;
  out.steps = t.steps();
  out.max_live = t.max_live();
  std::vector<std::uint32_t> renumber(t.rows(), kNone);
  std::uint32_t next = 0;
  for (std::uint32_t c = 0; c < t.rows(); ++c) {
    if (t.alive(c)) renumber[c] = next++;
  }
  out.index = next;
  FiniteGroup g;
  g.order = next;
  g.num_generators = n;
  g.action.assign(next * 2 * n, 0);
  for (std::uint32_t c = 0; c < t.rows(); ++c) {
    if (!t.alive(c)) continue;
    for (std::size_t col = 0; col < 2 * n; ++col) {
      g.action[renumber[c] * 2 * n + col] = renumber[t.entry(c, col)];
    }
  }
  g.representative.assign(next, Word{});
  std::vector<bool> seen(next, false);
  std::deque<std::uint32_t> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    const std::uint32_t e = queue.front();
    queue.pop_front();
    for (std::size_t col = 0; col < 2 * n; ++col) {
      const std::uint32_t f = g.action[e * 2 * n + col];
      if (seen[f]) continue;
      seen[f] = true;
      g.representative[f] = g.representative[e];
      g.representative[f].push_back(letter(col / 2, col % 2 == 1));
      queue.push_back(f);
    }
  }
  out.group = std::move(g);
  return out;
}

// ---------------------------------------------------------------------------
// Comparisons

namespace {

Json enumeration_json(const CosetEnumeration& e) {
  Json j{{"complete", e.complete}, {"steps", e.steps}, {"max_live_cosets", e.max_live}};
  if (e.complete) j["order"] = e.index;
  return j;
}

enum class SearchOutcome { Found, None, Exhausted };

// Assign images in h to the generators of p so that every relator of p holds
// and the images generate h.
SearchOutcome search_isomorphism(const GroupPresentation& p, const FiniteGroup& h,
                                 std::uint64_t budget, std::vector<std::uint32_t>& images) {
  const std::size_t k = p.generators.size();
  std::vector<std::vector<std::size_t>> ready(k);
  for (std::size_t r = 0; r < p.relators.size(); ++r) {
    std::size_t last = 0;
    for (Letter l : p.relators[r]) last = std::max(last, generator_of(l));
    if (!p.relators[r].empty()) ready[last].push_back(r);
  }
  std::vector<std::uint32_t> inverse(h.order);
  for (std::uint32_t e = 0; e < h.order; ++e) {
    for (std::uint32_t f = 0; f < h.order; ++f) {
      if (h.multiply(e, f) == 0) {
        inverse[e] = f;
        break;
      }
    }
  }
  auto evaluate = [&](const Word& w) {
    std::uint32_t e = 0;
    for (Letter l : w) {
      const std::uint32_t x = images[generator_of(l)];
      e = h.multiply(e, l > 0 ? x : inverse[x]);
    }
    return e;
  };
  images.assign(k, 0);
  std::uint64_t ticks = 0;
  bool exhausted = false;
  std::function<bool(std::size_t)> rec = [&](std::size_t g) -> bool {
    if (g == k) return h.generated_order(images) == h.order;
    for (std::uint32_t e = 0; e < h.order; ++e) {
      if (++ticks > budget) {
        exhausted = true;
        return false;
      }
      images[g] = e;
      bool ok = true;
      for (std::size_t r : ready[g]) {
        if (evaluate(p.relators[r]) != 0) {
          ok = false;
          break;
        }
      }
      if (ok && rec(g + 1)) return true;
      if (exhausted) return false;
    }
    return false;
  };
  if (rec(0)) return SearchOutcome::Found;
  return exhausted ? SearchOutcome::Exhausted : SearchOutcome::None;
}

}  // namespace

Verdict group_compare(const GroupPresentation& p, const GroupPresentation& q, std::uint64_t budget) {
  const SimplifiedPresentation sp = simplify(p);
  const SimplifiedPresentation sq = simplify(q);
  if (sp.presentation == sq.presentation) {
    return Verdict::yes({{"reason", "identical after simplification"},
                         {"presentation", to_json(sp.presentation)}});
  }
  const AbelianInvariants ap = abelianization(sp.presentation);
  const AbelianInvariants aq = abelianization(sq.presentation);
  if (!(ap == aq)) {
    return Verdict::no({{"reason", "abelianizations differ"}, {"left", to_json(ap)}, {"right", to_json(aq)}});
  }
  const CosetEnumeration ep = enumerate_cosets(sp.presentation, budget);
  const CosetEnumeration eq = enumerate_cosets(sq.presentation, budget);
  Json evidence{{"left", {{"presentation", to_json(sp.presentation)}, {"enumeration", enumeration_json(ep)}}},
                {"right", {{"presentation", to_json(sq.presentation)}, {"enumeration", enumeration_json(eq)}}},
                {"abelianization", to_json(ap)}};
  if (ep.complete && eq.complete) {
    if (ep.index != eq.index) {
      evidence["reason"] = "finite orders differ";
      return Verdict::no(evidence);
    }
    std::vector<std::uint32_t> images;
    switch (search_isomorphism(sp.presentation, *eq.group, budget, images)) {
      case SearchOutcome::Found: {
        Json map = Json::object();
        for (std::size_t g = 0; g < images.size(); ++g) {
          map[sp.presentation.generators[g]] = word_json(sq.presentation, eq.group->representative[images[g]]);
        }
        evidence["reason"] = "isomorphism of finite groups";
        evidence["generator_images"] = map;
        return Verdict::yes(evidence);
      }
      case SearchOutcome::None:
        evidence["reason"] = "no generator assignment defines an isomorphism";
        return Verdict::no(evidence);
      case SearchOutcome::Exhausted:
        evidence["reason"] = "isomorphism search budget exhausted";
        return Verdict::unknown(evidence);
    }
  }
  evidence["reason"] = "coset enumeration incomplete within budget";
  return Verdict::unknown(evidence);
}

Verdict homomorphism_is_iso(const GroupPresentation& p, const GroupPresentation& q,
                            const std::vector<Word>& images, std::uint64_t budget) {
  const SimplifiedPresentation sp = simplify(p);
  const SimplifiedPresentation sq = simplify(q);
  // Images of the surviving generators of p, written in the surviving
  // generators of q.
  std::vector<Word> mapped;
  for (std::size_t k : sp.survivors) {
    Word w;
    for (Letter l : images.at(k)) {
      const Word& s = sq.substitution[generator_of(l)];
      const Word piece = l > 0 ? s : invert(s);
      w.insert(w.end(), piece.begin(), piece.end());
    }
    mapped.push_back(free_reduce(w));
  }
  Json images_json = Json::object();
  for (std::size_t j = 0; j < mapped.size(); ++j) {
    images_json[sp.presentation.generators[j]] = word_json(sq.presentation, mapped[j]);
  }
  Json evidence{{"source", to_json(sp.presentation)}, {"target", to_json(sq.presentation)},
                {"generator_images", images_json}};
  if (sp.presentation.generators.empty() && sq.presentation.generators.empty()) {
    evidence["reason"] = "both groups trivial";
    return Verdict::yes(evidence);
  }
  const AbelianInvariants ap = abelianization(sp.presentation);
  const AbelianInvariants aq = abelianization(sq.presentation);
  if (!(ap == aq)) {
    evidence["reason"] = "abelianizations differ";
    evidence["source_abelianization"] = to_json(ap);
    evidence["target_abelianization"] = to_json(aq);
    return Verdict::no(evidence);
  }
  if (sp.presentation == sq.presentation) {
    bool identity = true;
    for (std::size_t j = 0; j < mapped.size(); ++j) {
      if (mapped[j] != Word{letter(j)}) identity = false;
    }
    if (identity) {
      evidence["reason"] = "identity on identical presentations";
      return Verdict::yes(evidence);
    }
  }
  const CosetEnumeration ep = enumerate_cosets(sp.presentation, budget);
  const CosetEnumeration eq = enumerate_cosets(sq.presentation, budget);
  evidence["source_enumeration"] = enumeration_json(ep);
  evidence["target_enumeration"] = enumeration_json(eq);
  if (ep.complete && eq.complete) {
    if (ep.index != eq.index) {
      evidence["reason"] = "finite orders differ";
      return Verdict::no(evidence);
    }
    std::vector<std::uint32_t> elems;
    for (const Word& w : mapped) elems.push_back(eq.group->evaluate(w));
    const std::size_t image_order = eq.group->generated_order(elems);
    evidence["image_order"] = image_order;
    if (image_order == eq.index) {
      evidence["reason"] = "surjective between finite groups of equal order";
      return Verdict::yes(evidence);
    }
    evidence["reason"] = "not surjective";
    return Verdict::no(evidence);
  }
  evidence["reason"] = "coset enumeration incomplete within budget";
  return Verdict::unknown(evidence);
}

// ---------------------------------------------------------------------------
// Fundamental groupoid

FPGroupoid localize(const CatPtr& cp) {
  const FinCategory& c = *cp;
  FPGroupoid out;
  out.source = cp;
  out.component_of.assign(c.num_objects(), 0);
  out.tree_path.assign(c.num_objects(), {});
  out.morphism_word.assign(c.num_morphisms(), {});
  std::vector<bool> tree_edge(c.num_morphisms(), false);

  const auto comps = connected_components(c);
  for (std::size_t ci = 0; ci < comps.size(); ++ci) {
    FPComponent comp;
    comp.members = comps[ci];
    comp.base = *std::min_element(comp.members.begin(), comp.members.end(),
                                  [&](Obj a, Obj b) { return c.object_id(a) < c.object_id(b); });
    for (Obj x : comp.members) out.component_of[x] = static_cast<std::uint32_t>(ci);
    std::vector<bool> seen(c.num_objects(), false);
    std::deque<Obj> queue{comp.base};
    seen[comp.base] = true;
    while (!queue.empty()) {
      const Obj x = queue.front();
      queue.pop_front();
      auto visit = [&](Mor m, Obj next, bool forward) {
        if (seen[next]) return;
        seen[next] = true;
        tree_edge[m] = true;
        out.tree_path[next] = out.tree_path[x];
        out.tree_path[next].push_back({m, forward});
        queue.push_back(next);
      };
      for (Mor m : c.outgoing(x)) visit(m, c.tgt(m), true);
      for (Mor m : c.incoming(x)) visit(m, c.src(m), false);
    }
    out.components.push_back(std::move(comp));
  }
  for (Mor m = 0; m < c.num_morphisms(); ++m) {
    if (c.is_identity(m) || tree_edge[m]) continue;
    FPComponent& comp = out.components[out.component_of[c.src(m)]];
    out.morphism_word[m] = {letter(comp.presentation.generators.size())};
    comp.presentation.generators.push_back(c.morphism_id(m));
  }
  for (Mor g = 0; g < c.num_morphisms(); ++g) {
    for (Mor f : c.incoming(c.src(g))) {
      const Mor h = c.compose(g, f);
      Word r = free_reduce(concat(concat(out.morphism_word[g], out.morphism_word[f]),
                                  invert(out.morphism_word[h])));
      if (!r.empty()) out.components[out.component_of[c.src(f)]].presentation.relators.push_back(r);
    }
  }
  for (FPComponent& comp : out.components) comp.simplified = simplify(comp.presentation);
  return out;
}

const GroupPresentation& vertex_group(const FPGroupoid& g, std::size_t component) {
  if (component >= g.components.size()) {
    throw Error(ErrorCode::UnknownComponent, "component " + std::to_string(component) + " does not exist");
  }
  return g.components[component].simplified.presentation;
}

FPMap induced_map(const FPGroupoid& source, const FPGroupoid& target, const FinFunctor& u) {
  const FinCategory& c = *source.source;
  FPMap map;
  map.source = &source;
  map.target = &target;
  auto path_word = [&](Obj x) {
    Word w;
    const auto& path = source.tree_path[x];
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      const Word& piece = target.morphism_word[u.on_morphism(it->morphism)];
      const Word step = it->forward ? piece : invert(piece);
      w.insert(w.end(), step.begin(), step.end());
    }
    return w;
  };
  for (const FPComponent& comp : source.components) {
    map.component_map.push_back(target.component_of[u(comp.base)]);
    map.generator_images.emplace_back();
  }
  for (Mor m = 0; m < c.num_morphisms(); ++m) {
    if (source.morphism_word[m].empty()) continue;
    const std::uint32_t ci = source.component_of[c.src(m)];
    Word image = concat(concat(invert(path_word(c.tgt(m))), target.morphism_word[u.on_morphism(m)]),
                        path_word(c.src(m)));
    map.generator_images[ci].push_back(free_reduce(image));
  }
  return map;
}

Verdict groupoid_equivalence(const FPMap& map, std::uint64_t budget) {
  const FPGroupoid& s = *map.source;
  const FPGroupoid& t = *map.target;
  Json evidence{{"pi0_source", s.components.size()}, {"pi0_target", t.components.size()}};
  std::vector<int> hits(t.components.size(), 0);
  for (std::uint32_t c : map.component_map) ++hits[c];
  for (std::size_t c = 0; c < hits.size(); ++c) {
    if (hits[c] != 1) {
      evidence["reason"] = hits[c] == 0 ? "not surjective on components" : "not injective on components";
      evidence["target_component_base"] = t.source->object_id(t.components[c].base);
      return Verdict::no(evidence);
    }
  }
  Answer answer = Answer::Yes;
  Json per = Json::array();
  for (std::size_t c = 0; c < s.components.size(); ++c) {
    const FPComponent& sc = s.components[c];
    const FPComponent& tc = t.components[map.component_map[c]];
    Verdict v = homomorphism_is_iso(sc.presentation, tc.presentation, map.generator_images[c], budget);
    per.push_back({{"base", s.source->object_id(sc.base)},
                   {"target_base", t.source->object_id(tc.base)},
                   {"vertex_group", to_json(v)}});
    answer = conjoin(answer, v.answer);
    if (answer == Answer::No) break;
  }
  evidence["components"] = per;
  return Verdict{answer, evidence};
}

Verdict groupoid_equivalence(const FinFunctor& u) {
  const FinGroupoid g(u.dom());
  const FinGroupoid h(u.cod());
  const FinCategory& a = *u.dom();
  const FinCategory& b = *u.cod();
  const auto ca = iso_classes(a);
  const auto cb = iso_classes(b);
  std::vector<std::uint32_t> class_of(b.num_objects());
  for (std::size_t i = 0; i < cb.size(); ++i)
    for (Obj y : cb[i]) class_of[y] = static_cast<std::uint32_t>(i);
  Json evidence{{"pi0_source", ca.size()}, {"pi0_target", cb.size()}};
  std::vector<int> hits(cb.size(), 0);
  for (const auto& cls : ca) ++hits[class_of[u(cls.front())]];
  for (std::size_t i = 0; i < hits.size(); ++i) {
    if (hits[i] != 1) {
      evidence["reason"] = hits[i] == 0 ? "not essentially surjective" : "identifies non-isomorphic objects";
      evidence["target_object"] = b.object_id(cb[i].front());
      return Verdict::no(evidence);
    }
  }
  for (const auto& cls : ca) {
    const Obj x = cls.front();
    const auto aut = a.hom(x, x);
    const auto aut_image = b.hom(u(x), u(x));
    std::set<Mor> image;
    for (Mor f : aut) image.insert(u.on_morphism(f));
    if (image.size() != aut.size() || aut.size() != aut_image.size()) {
      evidence["reason"] = "automorphism groups not mapped bijectively";
      evidence["object"] = a.object_id(x);
      evidence["source_order"] = aut.size();
      evidence["target_order"] = aut_image.size();
      return Verdict::no(evidence);
    }
  }
  evidence["reason"] = "bijective on components and on automorphism groups";
  return Verdict::yes(evidence);
}

Verdict w1_class(const FinFunctor& u, std::uint64_t budget) {
  const FPGroupoid s = localize(u.dom());
  const FPGroupoid t = localize(u.cod());
  Verdict v = groupoid_equivalence(induced_map(s, t, u), budget);
  v.evidence["localizer"] = "W1";
  return v;
}

}  // namespace gtc
