#include "gtc/fincat.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace gtc {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MissingComposite: return "MissingComposite";
    case ErrorCode::AssociativityViolation: return "AssociativityViolation";
    case ErrorCode::IdentityViolation: return "IdentityViolation";
    case ErrorCode::InvalidPosetRelation: return "InvalidPosetRelation";
    case ErrorCode::InvalidFunctor: return "InvalidFunctor";
    case ErrorCode::FunctorialityViolation: return "FunctorialityViolation";
    case ErrorCode::DiscretenessViolation: return "DiscretenessViolation";
    case ErrorCode::NotAGroupoid: return "NotAGroupoid";
    case ErrorCode::SizeExceeded: return "SizeExceeded";
    case ErrorCode::UnknownComponent: return "UnknownComponent";
    case ErrorCode::MissingTerminalObject: return "MissingTerminalObject";
    case ErrorCode::IsoVerificationFailed: return "IsoVerificationFailed";
    case ErrorCode::IsoSearchFailed: return "IsoSearchFailed";
    case ErrorCode::NotStronglySeparating: return "NotStronglySeparating";
    case ErrorCode::CatalogEntryLacksTerminal: return "CatalogEntryLacksTerminal";
    case ErrorCode::PreconditionViolation: return "PreconditionViolation";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
  }
  return "UnknownError";
}

namespace {

std::uint64_t pair_key(std::uint32_t a, std::uint32_t b) {
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::uint32_t> parent;
};

std::vector<std::vector<Obj>> classes_from(UnionFind& uf, std::size_t n) {
  std::map<std::uint32_t, std::vector<Obj>> groups;
  for (Obj x = 0; x < n; ++x) groups[uf.find(x)].push_back(x);
  std::vector<std::vector<Obj>> out;
  out.reserve(groups.size());
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// FinCategory

std::span<const Mor> FinCategory::hom(Obj x, Obj y) const {
  auto it = hom_ranges_.find(pair_key(x, y));
  if (it == hom_ranges_.end()) return {};
  return std::span<const Mor>(hom_storage_.data() + it->second.first, it->second.second);
}

std::optional<Obj> FinCategory::find_object(std::string_view id) const {
  auto it = object_lookup_.find(std::string(id));
  if (it == object_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<Mor> FinCategory::find_morphism(std::string_view id) const {
  auto it = morphism_lookup_.find(std::string(id));
  if (it == morphism_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<Mor> FinCategory::inverse(Mor f) const {
  const Obj x = src(f);
  const Obj y = tgt(f);
  for (Mor g : hom(y, x)) {
    if (compose(g, f) == identity(x) && compose(f, g) == identity(y)) return g;
  }
  return std::nullopt;
}

bool FinCategory::is_groupoid() const {
  for (Mor f = 0; f < num_morphisms(); ++f) {
    if (!is_identity(f) && !is_iso(f)) return false;
  }
  return true;
}

bool FinCategory::is_discrete() const { return num_morphisms() == num_objects(); }

bool FinCategory::has_only_trivial_isos() const {
  for (Mor f = 0; f < num_morphisms(); ++f) {
    if (!is_identity(f) && is_iso(f)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// CategoryBuilder

Obj CategoryBuilder::add_object(std::string id) {
  const Obj x = static_cast<Obj>(object_ids_.size());
  if (!object_lookup_.emplace(id, x).second) {
    throw Error(ErrorCode::ValidationError, "duplicate object id '" + id + "'");
  }
  object_ids_.push_back(std::move(id));
  identity_.push_back(kUnset);
  return x;
}

Mor CategoryBuilder::add_morphism(std::string id, Obj src, Obj tgt) {
  if (src >= object_ids_.size() || tgt >= object_ids_.size()) {
    throw Error(ErrorCode::ValidationError, "morphism '" + id + "' has an unknown endpoint");
  }
  const Mor f = static_cast<Mor>(morphism_ids_.size());
  if (!morphism_lookup_.emplace(id, f).second) {
    throw Error(ErrorCode::ValidationError, "duplicate morphism id '" + id + "'");
  }
  morphism_ids_.push_back(std::move(id));
  src_.push_back(src);
  tgt_.push_back(tgt);
  return f;
}

Mor CategoryBuilder::add_identity(Obj x, std::string id) {
  const Mor f = add_morphism(std::move(id), x, x);
  set_identity(x, f);
  return f;
}

void CategoryBuilder::set_identity(Obj x, Mor f) {
  if (x >= identity_.size() || f >= src_.size()) {
    throw Error(ErrorCode::ValidationError, "identity declaration out of range");
  }
  if (src_[f] != x || tgt_[f] != x) {
    throw Error(ErrorCode::IdentityViolation,
                "identity of '" + object_ids_[x] + "' is '" + morphism_ids_[f] +
                    "', which is not an endomorphism of it");
  }
  identity_[x] = f;
}

void CategoryBuilder::set_composite(Mor g, Mor f, Mor h) {
  if (g >= src_.size() || f >= src_.size() || h >= src_.size()) {
    throw Error(ErrorCode::ValidationError, "composite refers to an unknown morphism");
  }
  if (tgt_[f] != src_[g]) {
    throw Error(ErrorCode::MissingComposite, "compose entry (" + morphism_ids_[g] + ", " +
                                                 morphism_ids_[f] +
                                                 ") is ill-typed: the pair is not composable");
  }
  auto [it, inserted] = composites_.emplace(std::make_pair(g, f), h);
  if (!inserted && it->second != h) {
    throw Error(ErrorCode::ValidationError, "conflicting compose entries for (" +
                                                morphism_ids_[g] + ", " + morphism_ids_[f] + ")");
  }
}

void CategoryBuilder::set_product_structure(ProductStructure product) {
  product_ = std::make_shared<const ProductStructure>(std::move(product));
}

std::optional<Obj> CategoryBuilder::find_object(std::string_view id) const {
  auto it = object_lookup_.find(std::string(id));
  if (it == object_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<Mor> CategoryBuilder::find_morphism(std::string_view id) const {
  auto it = morphism_lookup_.find(std::string(id));
  if (it == morphism_lookup_.end()) return std::nullopt;
  return it->second;
}

CatPtr CategoryBuilder::build() const {
  return finish(
      [this](Mor g, Mor f) -> Mor {
        auto it = composites_.find({g, f});
        if (it != composites_.end()) return it->second;
        if (identity_[src_[g]] == g) return f;
        if (identity_[tgt_[f]] == f) return g;
        throw Error(ErrorCode::MissingComposite, "no compose entry for composable pair (" +
                                                     morphism_ids_[g] + ", " + morphism_ids_[f] +
                                                     ")");
      },
      true);
}

CatPtr CategoryBuilder::build(const std::function<Mor(Mor, Mor)>& composer) const {
  return finish(composer, false);
}

CatPtr CategoryBuilder::finish(const std::function<Mor(Mor, Mor)>& composer,
                               bool explicit_table) const {
  std::shared_ptr<FinCategory> c(new FinCategory());
  const std::size_t n = object_ids_.size();
  const std::size_t m = morphism_ids_.size();
  for (Obj x = 0; x < n; ++x) {
    if (identity_[x] == kUnset) {
      throw Error(ErrorCode::IdentityViolation, "object '" + object_ids_[x] + "' has no identity");
    }
  }
  c->object_ids_ = object_ids_;
  c->morphism_ids_ = morphism_ids_;
  c->src_ = src_;
  c->tgt_ = tgt_;
  c->identity_ = identity_;
  c->object_lookup_ = object_lookup_;
  c->morphism_lookup_ = morphism_lookup_;
  c->product_ = product_;
  c->incoming_.assign(n, {});
  c->outgoing_.assign(n, {});
  c->position_in_incoming_.assign(m, 0);
  for (Mor f = 0; f < m; ++f) {
    c->position_in_incoming_[f] = static_cast<std::uint32_t>(c->incoming_[tgt_[f]].size());
    c->incoming_[tgt_[f]].push_back(f);
    c->outgoing_[src_[f]].push_back(f);
  }

  // Hom sets grouped by (src, tgt), each in morphism index order.
  std::vector<Mor> order(m);
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(), [&](Mor a, Mor b) {
    return std::make_pair(src_[a], tgt_[a]) < std::make_pair(src_[b], tgt_[b]);
  });
  c->hom_storage_ = order;
  for (std::size_t i = 0; i < m;) {
    std::size_t j = i;
    while (j < m && src_[order[j]] == src_[order[i]] && tgt_[order[j]] == tgt_[order[i]]) ++j;
    c->hom_ranges_.emplace(pair_key(src_[order[i]], tgt_[order[i]]),
                           std::make_pair(static_cast<std::uint32_t>(i),
                                          static_cast<std::uint32_t>(j - i)));
    i = j;
  }

  if (explicit_table) {
    for (const auto& [key, h] : composites_) {
      (void)h;
      if (tgt_[key.second] != src_[key.first]) {
        throw Error(ErrorCode::MissingComposite, "compose entry (" + morphism_ids_[key.first] +
                                                     ", " + morphism_ids_[key.second] +
                                                     ") is ill-typed");
      }
    }
  }

  c->compose_offset_.assign(m, 0);
  std::size_t total = 0;
  for (Mor g = 0; g < m; ++g) {
    c->compose_offset_[g] = total;
    total += c->incoming_[src_[g]].size();
  }
  c->compose_table_.assign(total, kUnset);
  for (Mor g = 0; g < m; ++g) {
    for (Mor f : c->incoming_[src_[g]]) {
      const Mor h = composer(g, f);
      if (h >= m || src_[h] != src_[f] || tgt_[h] != tgt_[g]) {
        throw Error(ErrorCode::MissingComposite,
                    "composite of (" + morphism_ids_[g] + ", " + morphism_ids_[f] +
                        ") is missing or has the wrong source/target");
      }
      c->compose_table_[c->compose_offset_[g] + c->position_in_incoming_[f]] = h;
    }
  }

  for (Mor f = 0; f < m; ++f) {
    if (c->compose(f, identity_[src_[f]]) != f || c->compose(identity_[tgt_[f]], f) != f) {
      throw Error(ErrorCode::IdentityViolation,
                  "unit law fails for '" + morphism_ids_[f] + "'");
    }
  }
  for (Mor f = 0; f < m; ++f) {
    for (Mor g : c->outgoing_[tgt_[f]]) {
      const Mor gf = c->compose(g, f);
      for (Mor h : c->outgoing_[tgt_[g]]) {
        if (c->compose(h, gf) != c->compose(c->compose(h, g), f)) {
          throw Error(ErrorCode::AssociativityViolation,
                      "(" + morphism_ids_[h] + ", " + morphism_ids_[g] + ", " + morphism_ids_[f] +
                          ")");
        }
      }
    }
  }
  return c;
}

bool same_structure(const FinCategory& a, const FinCategory& b) {
  if (&a == &b) return true;
  if (a.num_objects() != b.num_objects() || a.num_morphisms() != b.num_morphisms()) return false;
  for (Obj x = 0; x < a.num_objects(); ++x) {
    if (a.object_id(x) != b.object_id(x) || a.identity(x) != b.identity(x)) return false;
  }
  for (Mor f = 0; f < a.num_morphisms(); ++f) {
    if (a.morphism_id(f) != b.morphism_id(f) || a.src(f) != b.src(f) || a.tgt(f) != b.tgt(f)) {
      return false;
    }
  }
  for (Mor g = 0; g < a.num_morphisms(); ++g) {
    for (Mor f : a.incoming(a.src(g))) {
      if (a.compose(g, f) != b.compose(g, f)) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// FinFunctor

std::optional<std::string> functor_defect(const FinCategory& dom, const FinCategory& cod,
                                          const std::vector<Obj>& omap,
                                          const std::vector<Mor>& mmap) {
  if (omap.size() != dom.num_objects() || mmap.size() != dom.num_morphisms()) {
    return "object/morphism map has the wrong size";
  }
  for (Obj x = 0; x < dom.num_objects(); ++x) {
    if (omap[x] >= cod.num_objects()) return "object '" + dom.object_id(x) + "' unmapped";
  }
  for (Mor f = 0; f < dom.num_morphisms(); ++f) {
    if (mmap[f] >= cod.num_morphisms()) return "morphism '" + dom.morphism_id(f) + "' unmapped";
    if (cod.src(mmap[f]) != omap[dom.src(f)] || cod.tgt(mmap[f]) != omap[dom.tgt(f)]) {
      return "image of '" + dom.morphism_id(f) + "' has the wrong source/target";
    }
  }
  for (Obj x = 0; x < dom.num_objects(); ++x) {
    if (mmap[dom.identity(x)] != cod.identity(omap[x])) {
      return "identity of '" + dom.object_id(x) + "' not preserved";
    }
  }
  for (Mor g = 0; g < dom.num_morphisms(); ++g) {
    for (Mor f : dom.incoming(dom.src(g))) {
      if (mmap[dom.compose(g, f)] != cod.compose(mmap[g], mmap[f])) {
        return "composite (" + dom.morphism_id(g) + ", " + dom.morphism_id(f) + ") not preserved";
      }
    }
  }
  return std::nullopt;
}

FinFunctor::FinFunctor(CatPtr dom, CatPtr cod, std::vector<Obj> omap, std::vector<Mor> mmap)
    : dom_(std::move(dom)), cod_(std::move(cod)), omap_(std::move(omap)), mmap_(std::move(mmap)) {
  if (auto defect = functor_defect(*dom_, *cod_, omap_, mmap_)) {
    throw Error(ErrorCode::InvalidFunctor, *defect);
  }
}

FinFunctor::FinFunctor(Unchecked, CatPtr dom, CatPtr cod, std::vector<Obj> omap,
                       std::vector<Mor> mmap)
    : dom_(std::move(dom)), cod_(std::move(cod)), omap_(std::move(omap)), mmap_(std::move(mmap)) {}

FinFunctor make_functor_unchecked(CatPtr dom, CatPtr cod, std::vector<Obj> omap,
                                  std::vector<Mor> mmap) {
  return FinFunctor(FinFunctor::Unchecked{}, std::move(dom), std::move(cod), std::move(omap),
                    std::move(mmap));
}

FinFunctor FinFunctor::identity(const CatPtr& c) {
  std::vector<Obj> omap(c->num_objects());
  std::vector<Mor> mmap(c->num_morphisms());
  std::iota(omap.begin(), omap.end(), 0u);
  std::iota(mmap.begin(), mmap.end(), 0u);
  return FinFunctor(Unchecked{}, c, c, std::move(omap), std::move(mmap));
}

FinFunctor FinFunctor::constant(const CatPtr& dom, const CatPtr& cod, Obj value) {
  std::vector<Obj> omap(dom->num_objects(), value);
  std::vector<Mor> mmap(dom->num_morphisms(), cod->identity(value));
  return FinFunctor(Unchecked{}, dom, cod, std::move(omap), std::move(mmap));
}

FinFunctor FinFunctor::to_terminal(const CatPtr& dom, const CatPtr& terminal) {
  if (terminal->num_objects() != 1 || terminal->num_morphisms() != 1) {
    throw Error(ErrorCode::PreconditionViolation, "codomain is not the terminal category");
  }
  return constant(dom, terminal, 0);
}

bool FinFunctor::is_bijective() const {
  if (dom_->num_objects() != cod_->num_objects() ||
      dom_->num_morphisms() != cod_->num_morphisms()) {
    return false;
  }
  std::vector<bool> hit_o(cod_->num_objects(), false);
  for (Obj y : omap_) {
    if (hit_o[y]) return false;
    hit_o[y] = true;
  }
  std::vector<bool> hit_m(cod_->num_morphisms(), false);
  for (Mor g : mmap_) {
    if (hit_m[g]) return false;
    hit_m[g] = true;
  }
  return true;
}

bool operator==(const FinFunctor& a, const FinFunctor& b) {
  if (a.omap_ != b.omap_ || a.mmap_ != b.mmap_) return false;
  return same_structure(*a.dom_, *b.dom_) && same_structure(*a.cod_, *b.cod_);
}

FinFunctor compose(const FinFunctor& g, const FinFunctor& f) {
  if (!same_structure(*f.cod(), *g.dom())) {
    throw Error(ErrorCode::PreconditionViolation, "functors are not composable");
  }
  std::vector<Obj> omap(f.dom()->num_objects());
  std::vector<Mor> mmap(f.dom()->num_morphisms());
  for (Obj x = 0; x < omap.size(); ++x) omap[x] = g.on_object(f.on_object(x));
  for (Mor m = 0; m < mmap.size(); ++m) mmap[m] = g.on_morphism(f.on_morphism(m));
  return FinFunctor(FinFunctor::Unchecked{}, f.dom(), g.cod(), std::move(omap), std::move(mmap));
}

// ---------------------------------------------------------------------------
// NatTransf

NatTransf::NatTransf(FinFunctor source, FinFunctor target, std::vector<Mor> components)
    : source_(std::move(source)), target_(std::move(target)), components_(std::move(components)) {
  const FinCategory& c = *source_.dom();
  const FinCategory& d = *source_.cod();
  if (components_.size() != c.num_objects()) {
    throw Error(ErrorCode::PreconditionViolation, "wrong number of components");
  }
  for (Obj x = 0; x < c.num_objects(); ++x) {
    const Mor a = components_[x];
    if (a >= d.num_morphisms() || d.src(a) != source_(x) || d.tgt(a) != target_(x)) {
      throw Error(ErrorCode::PreconditionViolation,
                  "component at '" + c.object_id(x) + "' has the wrong type");
    }
  }
  for (Mor f = 0; f < c.num_morphisms(); ++f) {
    const Obj x = c.src(f);
    const Obj y = c.tgt(f);
    if (d.compose(target_.on_morphism(f), components_[x]) !=
        d.compose(components_[y], source_.on_morphism(f))) {
      throw Error(ErrorCode::PreconditionViolation,
                  "naturality fails at '" + c.morphism_id(f) + "'");
    }
  }
}

NatTransf NatTransf::identity(const FinFunctor& f) {
  std::vector<Mor> comps(f.dom()->num_objects());
  for (Obj x = 0; x < comps.size(); ++x) comps[x] = f.cod()->identity(f(x));
  return NatTransf(f, f, std::move(comps));
}

bool NatTransf::is_iso() const {
  const FinCategory& d = *source_.cod();
  return std::all_of(components_.begin(), components_.end(),
                     [&](Mor a) { return d.is_identity(a) || d.is_iso(a); });
}

NatTransf vertical_compose(const NatTransf& beta, const NatTransf& alpha) {
  const FinCategory& d = *alpha.source().cod();
  std::vector<Mor> comps(alpha.components().size());
  for (Obj x = 0; x < comps.size(); ++x) comps[x] = d.compose(beta.component(x), alpha.component(x));
  return NatTransf(alpha.source(), beta.target(), std::move(comps));
}

// ---------------------------------------------------------------------------
// Standard categories

namespace standard {

CatPtr empty() { return CategoryBuilder().build(); }

CatPtr terminal() {
  CategoryBuilder b;
  const Obj x = b.add_object("*");
  b.add_identity(x, "id");
  return b.build();
}

CatPtr poset(const std::vector<std::string>& elements,
             const std::vector<std::pair<std::string, std::string>>& relation) {
  const std::size_t n = elements.size();
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) {
    if (!index.emplace(elements[i], i).second) {
      throw Error(ErrorCode::InvalidPosetRelation, "duplicate element '" + elements[i] + "'");
    }
  }
  std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) le[i][i] = true;
  for (const auto& [a, b] : relation) {
    auto ia = index.find(a);
    auto ib = index.find(b);
    if (ia == index.end() || ib == index.end()) {
      throw Error(ErrorCode::InvalidPosetRelation, "unknown element in pair (" + a + ", " + b + ")");
    }
    le[ia->second][ib->second] = true;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && le[i][j] && le[j][i]) {
        throw Error(ErrorCode::InvalidPosetRelation,
                    "not antisymmetric: " + elements[i] + " <= " + elements[j] + " <= " +
                        elements[i]);
      }
      for (std::size_t k = 0; k < n; ++k) {
        if (le[i][j] && le[j][k] && !le[i][k]) {
          throw Error(ErrorCode::InvalidPosetRelation,
                      "not transitive: " + elements[i] + " <= " + elements[j] + " <= " +
                          elements[k]);
        }
      }
    }
  }
  CategoryBuilder b;
  for (const auto& e : elements) b.add_object(e);
  std::vector<std::vector<Mor>> arrow(n, std::vector<Mor>(n, kUnset));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!le[i][j]) continue;
      if (i == j) {
        arrow[i][j] = b.add_identity(static_cast<Obj>(i), "id_" + elements[i]);
      } else {
        arrow[i][j] = b.add_morphism(elements[i] + "_" + elements[j], static_cast<Obj>(i),
                                     static_cast<Obj>(j));
      }
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> ends(b.num_morphisms());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (arrow[i][j] != kUnset) ends[arrow[i][j]] = {i, j};
    }
  }
  return b.build([&](Mor g, Mor f) { return arrow[ends[f].first][ends[g].second]; });
}

CatPtr delta(unsigned n) {
  std::vector<std::string> elements;
  std::vector<std::pair<std::string, std::string>> rel;
  for (unsigned i = 0; i <= n; ++i) elements.push_back(std::to_string(i));
  for (unsigned i = 0; i <= n; ++i) {
    for (unsigned j = i + 1; j <= n; ++j) rel.emplace_back(std::to_string(i), std::to_string(j));
  }
  return poset(elements, rel);
}

CatPtr product(const CatPtr& a, const CatPtr& b) {
  CategoryBuilder builder;
  const std::size_t na = a->num_objects();
  const std::size_t nb = b->num_objects();
  const std::size_t mb = b->num_morphisms();
  ProductStructure ps{a, b, {}, {}};
  for (Obj x = 0; x < na; ++x) {
    for (Obj y = 0; y < nb; ++y) {
      builder.add_object("(" + a->object_id(x) + "," + b->object_id(y) + ")");
      ps.objects.emplace_back(x, y);
    }
  }
  for (Mor f = 0; f < a->num_morphisms(); ++f) {
    for (Mor g = 0; g < mb; ++g) {
      builder.add_morphism("(" + a->morphism_id(f) + "," + b->morphism_id(g) + ")",
                           static_cast<Obj>(a->src(f) * nb + b->src(g)),
                           static_cast<Obj>(a->tgt(f) * nb + b->tgt(g)));
      ps.morphisms.emplace_back(f, g);
    }
  }
  for (Obj x = 0; x < na; ++x) {
    for (Obj y = 0; y < nb; ++y) {
      builder.set_identity(static_cast<Obj>(x * nb + y),
                           static_cast<Mor>(a->identity(x) * mb + b->identity(y)));
    }
  }
  builder.set_product_structure(std::move(ps));
  return builder.build([&](Mor g, Mor f) {
    const Mor ga = g / mb, gb = g % mb, fa = f / mb, fb = f % mb;
    return static_cast<Mor>(a->compose(ga, fa) * mb + b->compose(gb, fb));
  });
}

CatPtr opposite(const CatPtr& a) {
  CategoryBuilder b;
  for (Obj x = 0; x < a->num_objects(); ++x) b.add_object(a->object_id(x));
  for (Mor f = 0; f < a->num_morphisms(); ++f) b.add_morphism(a->morphism_id(f), a->tgt(f), a->src(f));
  for (Obj x = 0; x < a->num_objects(); ++x) b.set_identity(x, a->identity(x));
  return b.build([&](Mor g, Mor f) { return a->compose(f, g); });
}

CatPtr coproduct(const CatPtr& a, const CatPtr& b) {
  CategoryBuilder builder;
  const Obj na = static_cast<Obj>(a->num_objects());
  const Mor ma = static_cast<Mor>(a->num_morphisms());
  for (Obj x = 0; x < na; ++x) builder.add_object("l:" + a->object_id(x));
  for (Obj x = 0; x < b->num_objects(); ++x) builder.add_object("r:" + b->object_id(x));
  for (Mor f = 0; f < ma; ++f) builder.add_morphism("l:" + a->morphism_id(f), a->src(f), a->tgt(f));
  for (Mor f = 0; f < b->num_morphisms(); ++f) {
    builder.add_morphism("r:" + b->morphism_id(f), na + b->src(f), na + b->tgt(f));
  }
  for (Obj x = 0; x < na; ++x) builder.set_identity(x, a->identity(x));
  for (Obj x = 0; x < b->num_objects(); ++x) builder.set_identity(na + x, ma + b->identity(x));
  return builder.build([&](Mor g, Mor f) {
    if (g < ma) return a->compose(g, f);
    return static_cast<Mor>(ma + b->compose(g - ma, f - ma));
  });
}

CatPtr free_iso() {
  CategoryBuilder b;
  const Obj x0 = b.add_object("0");
  const Obj x1 = b.add_object("1");
  const Mor i0 = b.add_identity(x0, "id_0");
  const Mor i1 = b.add_identity(x1, "id_1");
  const Mor u = b.add_morphism("u", x0, x1);
  const Mor v = b.add_morphism("v", x1, x0);
  b.set_composite(v, u, i0);
  b.set_composite(u, v, i1);
  return b.build();
}

CatPtr cyclic_group(unsigned n) {
  if (n == 0) throw Error(ErrorCode::PreconditionViolation, "cyclic group order must be positive");
  CategoryBuilder b;
  const Obj x = b.add_object("*");
  b.add_identity(x, "id");
  for (unsigned k = 1; k < n; ++k) b.add_morphism(k == 1 ? "s" : "s^" + std::to_string(k), x, x);
  return b.build([n](Mor g, Mor f) { return static_cast<Mor>((g + f) % n); });
}

CatPtr idempotent_monoid() {
  CategoryBuilder b;
  const Obj x = b.add_object("*");
  b.add_identity(x, "id");
  const Mor s = b.add_morphism("s", x, x);
  b.set_composite(s, s, s);
  return b.build();
}

CatPtr discrete(unsigned n) {
  CategoryBuilder b;
  for (unsigned k = 0; k < n; ++k) {
    const Obj x = b.add_object(std::to_string(k));
    b.add_identity(x, "id_" + std::to_string(k));
  }
  return b.build();
}

CatPtr meet_semilattice3() { return poset({"b", "x", "y"}, {{"b", "x"}, {"b", "y"}}); }

CatPtr join_semilattice3() { return poset({"x", "y", "t"}, {{"x", "t"}, {"y", "t"}}); }

namespace {
const ProductStructure& require_product(const CatPtr& p) {
  if (p->product_structure() == nullptr) {
    throw Error(ErrorCode::PreconditionViolation, "category carries no product structure");
  }
  return *p->product_structure();
}
}  // namespace

FinFunctor left_projection(const CatPtr& product) {
  const ProductStructure& ps = require_product(product);
  std::vector<Obj> omap;
  std::vector<Mor> mmap;
  for (const auto& [x, y] : ps.objects) omap.push_back(x);
  for (const auto& [f, g] : ps.morphisms) mmap.push_back(f);
  return make_functor_unchecked(product, ps.left, std::move(omap), std::move(mmap));
}

FinFunctor right_projection(const CatPtr& product) {
  const ProductStructure& ps = require_product(product);
  std::vector<Obj> omap;
  std::vector<Mor> mmap;
  for (const auto& [x, y] : ps.objects) omap.push_back(y);
  for (const auto& [f, g] : ps.morphisms) mmap.push_back(g);
  return make_functor_unchecked(product, ps.right, std::move(omap), std::move(mmap));
}

FinFunctor pairing(const FinFunctor& f, const FinFunctor& g, const CatPtr& product) {
  const ProductStructure& ps = require_product(product);
  const std::size_t nb = ps.right->num_objects();
  const std::size_t mb = ps.right->num_morphisms();
  if (!same_structure(*f.cod(), *ps.left) || !same_structure(*g.cod(), *ps.right)) {
    throw Error(ErrorCode::PreconditionViolation, "pairing codomains do not match the factors");
  }
  std::vector<Obj> omap(f.dom()->num_objects());
  std::vector<Mor> mmap(f.dom()->num_morphisms());
  for (Obj x = 0; x < omap.size(); ++x) omap[x] = static_cast<Obj>(f(x) * nb + g(x));
  for (Mor m = 0; m < mmap.size(); ++m) {
    mmap[m] = static_cast<Mor>(f.on_morphism(m) * mb + g.on_morphism(m));
  }
  return make_functor_unchecked(f.dom(), product, std::move(omap), std::move(mmap));
}

FinFunctor diagonal(const CatPtr& a, const CatPtr& a_times_a) {
  const FinFunctor id = FinFunctor::identity(a);
  return pairing(id, id, a_times_a);
}

}  // namespace standard

CatPtr build_standard(const StandardSpec& spec) {
  auto param = [&](std::size_t i) -> unsigned {
    if (i >= spec.parameters.size()) {
      throw Error(ErrorCode::PreconditionViolation,
                  "standard category '" + spec.name + "' needs a parameter");
    }
    return spec.parameters[i];
  };
  const std::string& n = spec.name;
  if (n == "terminal" || n == "e") return standard::terminal();
  if (n == "empty") return standard::empty();
  if (n == "delta") return standard::delta(param(0));
  if (n == "free_iso" || n == "J") return standard::free_iso();
  if (n == "cyclic_group" || n == "BG") return standard::cyclic_group(param(0));
  if (n == "idempotent_monoid") return standard::idempotent_monoid();
  if (n == "discrete") return standard::discrete(param(0));
  if (n == "meet3") return standard::meet_semilattice3();
  if (n == "join3") return standard::join_semilattice3();
  throw Error(ErrorCode::PreconditionViolation, "unknown standard category '" + n + "'");
}

// ---------------------------------------------------------------------------
// Operations

SliceResult slice(const FinFunctor& u, Obj b) {
  const FinCategory& a = *u.dom();
  const FinCategory& cod = *u.cod();
  if (b >= cod.num_objects()) throw Error(ErrorCode::PreconditionViolation, "slice object out of range");
  CategoryBuilder builder;
  std::map<std::pair<Obj, Mor>, Obj> obj_of;
  std::vector<std::pair<Obj, Mor>> index;
  for (Obj x = 0; x < a.num_objects(); ++x) {
    for (Mor q : cod.hom(u(x), b)) {
      const Obj o = builder.add_object("(" + a.object_id(x) + "," + cod.morphism_id(q) + ")");
      obj_of.emplace(std::make_pair(x, q), o);
      index.emplace_back(x, q);
    }
  }
  // A slice morphism is determined by f and the structure map of its target.
  std::map<std::pair<Mor, Mor>, Mor> mor_of;
  std::vector<Mor> base_of;
  for (Mor f = 0; f < a.num_morphisms(); ++f) {
    for (Mor q2 : cod.hom(u(a.tgt(f)), b)) {
      const Mor q1 = cod.compose(q2, u.on_morphism(f));
      const Mor m = builder.add_morphism("(" + a.morphism_id(f) + "," + cod.morphism_id(q2) + ")",
                                         obj_of.at({a.src(f), q1}), obj_of.at({a.tgt(f), q2}));
      mor_of.emplace(std::make_pair(f, q2), m);
      base_of.push_back(f);
    }
  }
  for (Obj o = 0; o < index.size(); ++o) {
    builder.set_identity(o, mor_of.at({a.identity(index[o].first), index[o].second}));
  }
  std::vector<Mor> target_q(base_of.size());
  for (const auto& [key, m] : mor_of) target_q[m] = key.second;
  CatPtr cat = builder.build(
      [&](Mor g, Mor f) { return mor_of.at({a.compose(base_of[g], base_of[f]), target_q[g]}); });
  std::vector<Obj> omap(index.size());
  for (Obj o = 0; o < index.size(); ++o) omap[o] = index[o].first;
  FinFunctor proj = make_functor_unchecked(cat, u.dom(), std::move(omap), base_of);
  return SliceResult{cat, std::move(proj), std::move(index)};
}

SliceResult slice(const CatPtr& a, Obj x) { return slice(FinFunctor::identity(a), x); }

ExtremalObjects extremal_objects(const FinCategory& c) {
  ExtremalObjects out;
  for (Obj t = 0; t < c.num_objects(); ++t) {
    bool term = true;
    bool init = true;
    for (Obj x = 0; x < c.num_objects(); ++x) {
      if (c.hom(x, t).size() != 1) term = false;
      if (c.hom(t, x).size() != 1) init = false;
    }
    if (term) out.terminal.push_back(t);
    if (init) out.initial.push_back(t);
  }
  return out;
}

FibrationReport is_grothendieck_fibration(const FinFunctor& u) {
  const FinCategory& e = *u.dom();
  const FinCategory& b = *u.cod();
  FibrationReport report;
  for (Obj x = 0; x < e.num_objects(); ++x) {
    for (Mor g : b.incoming(u(x))) {
      const Obj base = b.src(g);
      std::optional<Mor> lift;
      for (Mor phi : e.incoming(x)) {
        if (u.on_morphism(phi) != g) continue;
        const Obj xp = e.src(phi);
        bool cartesian = true;
        for (Mor psi : e.incoming(x)) {
          const Obj z = e.src(psi);
          for (Mor h : b.hom(u(z), base)) {
            if (b.compose(g, h) != u.on_morphism(psi)) continue;
            std::size_t factorizations = 0;
            for (Mor chi : e.hom(z, xp)) {
              if (e.compose(phi, chi) == psi && u.on_morphism(chi) == h) ++factorizations;
            }
            if (factorizations != 1) {
              cartesian = false;
              break;
            }
          }
          if (!cartesian) break;
        }
        if (cartesian) {
          lift = phi;
          break;
        }
      }
      if (!lift) {
        report.failure = std::make_pair(x, g);
        report.is_fibration = false;
        return report;
      }
      report.lifts.emplace(std::make_pair(x, g), *lift);
    }
  }
  report.is_fibration = true;
  return report;
}

std::vector<std::vector<Obj>> iso_classes(const FinCategory& c) {
  UnionFind uf(c.num_objects());
  for (Mor f = 0; f < c.num_morphisms(); ++f) {
    if (c.src(f) != c.tgt(f) && c.is_iso(f)) uf.unite(c.src(f), c.tgt(f));
  }
  return classes_from(uf, c.num_objects());
}

std::vector<std::vector<Obj>> connected_components(const FinCategory& c) {
  UnionFind uf(c.num_objects());
  for (Mor f = 0; f < c.num_morphisms(); ++f) uf.unite(c.src(f), c.tgt(f));
  return classes_from(uf, c.num_objects());
}

namespace {

class SearchCounter {
 public:
  explicit SearchCounter(std::uint64_t cap) : cap_(cap) {}
  void tick(const char* what) {
    if (++count_ > cap_) {
      throw Error(ErrorCode::SizeExceeded,
                  std::string(what) + " search exceeded " + std::to_string(cap_) + " candidates");
    }
  }

 private:
  std::uint64_t cap_;
  std::uint64_t count_ = 0;
};

struct Triple {
  Mor g, f, h;
};

}  // namespace

std::vector<NatTransf> natural_transformations(const FinFunctor& f, const FinFunctor& g,
                                               bool iso_only, const EnumerationLimits& limits) {
  const FinCategory& c = *f.dom();
  const FinCategory& d = *f.cod();
  const std::size_t n = c.num_objects();
  std::vector<std::vector<Mor>> domains(n);
  for (Obj x = 0; x < n; ++x) {
    for (Mor a : d.hom(f(x), g(x))) {
      if (!iso_only || d.is_identity(a) || d.is_iso(a)) domains[x].push_back(a);
    }
  }
  // Morphisms checked once both endpoints are assigned.
  std::vector<std::vector<Mor>> checks(n);
  for (Mor m = 0; m < c.num_morphisms(); ++m) {
    if (c.is_identity(m)) continue;
    checks[std::max(c.src(m), c.tgt(m))].push_back(m);
  }
  std::vector<NatTransf> out;
  std::vector<Mor> comps(n, kUnset);
  SearchCounter counter(limits.cap);
  std::function<void(Obj)> rec = [&](Obj x) {
    if (x == n) {
      out.emplace_back(f, g, comps);
      return;
    }
    for (Mor a : domains[x]) {
      counter.tick("natural transformation");
      comps[x] = a;
      bool ok = true;
      for (Mor m : checks[x]) {
        if (d.compose(g.on_morphism(m), comps[c.src(m)]) !=
            d.compose(comps[c.tgt(m)], f.on_morphism(m))) {
          ok = false;
          break;
        }
      }
      if (ok) rec(x + 1);
    }
    comps[x] = kUnset;
  };
  rec(0);
  return out;
}

void for_each_functor(const CatPtr& dom, const CatPtr& cod, const FunctorConstraint* constraint,
                      const EnumerationLimits& limits,
                      const std::function<bool(const FinFunctor&)>& visit) {
  const FinCategory& c = *dom;
  const FinCategory& d = *cod;
  const std::size_t n = c.num_objects();

  // Steps: object k, followed by the non-identity morphisms whose later
  // endpoint is k.
  struct Step {
    bool is_object;
    std::uint32_t id;
    std::vector<Triple> checks;
  };
  std::vector<Step> steps;
  std::vector<std::size_t> step_of_obj(n);
  std::vector<std::size_t> step_of_mor(c.num_morphisms());
  std::vector<std::vector<Mor>> by_obj(n);
  for (Mor m = 0; m < c.num_morphisms(); ++m) {
    if (!c.is_identity(m)) by_obj[std::max(c.src(m), c.tgt(m))].push_back(m);
  }
  for (Obj x = 0; x < n; ++x) {
    step_of_obj[x] = steps.size();
    step_of_mor[c.identity(x)] = steps.size();
    steps.push_back({true, x, {}});
    for (Mor m : by_obj[x]) {
      step_of_mor[m] = steps.size();
      steps.push_back({false, m, {}});
    }
  }
  for (Mor g = 0; g < c.num_morphisms(); ++g) {
    if (c.is_identity(g)) continue;
    for (Mor f : c.incoming(c.src(g))) {
      if (c.is_identity(f)) continue;
      const Mor h = c.compose(g, f);
      const std::size_t last = std::max({step_of_mor[g], step_of_mor[f], step_of_mor[h]});
      steps[last].checks.push_back({g, f, h});
    }
  }

  std::vector<Obj> omap(n, kUnset);
  std::vector<Mor> mmap(c.num_morphisms(), kUnset);
  SearchCounter counter(limits.cap);
  bool stop = false;
  std::vector<Obj> all_objects(d.num_objects());
  std::iota(all_objects.begin(), all_objects.end(), 0u);

  std::function<void(std::size_t)> rec = [&](std::size_t s) {
    if (stop) return;
    if (s == steps.size()) {
      if (!visit(make_functor_unchecked(dom, cod, omap, mmap))) stop = true;
      return;
    }
    const Step& step = steps[s];
    auto checks_pass = [&]() {
      for (const Triple& t : step.checks) {
        if (d.compose(mmap[t.g], mmap[t.f]) != mmap[t.h]) return false;
      }
      return true;
    };
    if (step.is_object) {
      const Obj x = step.id;
      std::span<const Obj> candidates = all_objects;
      Obj fixed = kUnset;
      if (constraint != nullptr && !constraint->objects.empty() && constraint->objects[x] != kUnset) {
        fixed = constraint->objects[x];
        candidates = std::span<const Obj>(&fixed, 1);
      }
      for (Obj y : candidates) {
        counter.tick("functor");
        omap[x] = y;
        mmap[c.identity(x)] = d.identity(y);
        if (checks_pass()) rec(s + 1);
        if (stop) break;
      }
      omap[x] = kUnset;
      mmap[c.identity(x)] = kUnset;
    } else {
      const Mor m = step.id;
      std::span<const Mor> candidates = d.hom(omap[c.src(m)], omap[c.tgt(m)]);
      Mor fixed = kUnset;
      if (constraint != nullptr && !constraint->morphisms.empty() &&
          constraint->morphisms[m] != kUnset) {
        fixed = constraint->morphisms[m];
        const bool typed = fixed < d.num_morphisms() && d.src(fixed) == omap[c.src(m)] &&
                           d.tgt(fixed) == omap[c.tgt(m)];
        candidates = typed ? std::span<const Mor>(&fixed, 1) : std::span<const Mor>();
      }
      for (Mor y : candidates) {
        counter.tick("functor");
        mmap[m] = y;
        if (checks_pass()) rec(s + 1);
        if (stop) break;
      }
      mmap[m] = kUnset;
    }
  };
  rec(0);
}

std::vector<FinFunctor> enumerate_functors(const CatPtr& dom, const CatPtr& cod,
                                           const EnumerationLimits& limits,
                                           const FunctorConstraint* constraint) {
  std::vector<FinFunctor> out;
  for_each_functor(dom, cod, constraint, limits, [&](const FinFunctor& f) {
    out.push_back(f);
    return true;
  });
  return out;
}

std::optional<FinFunctor> find_isomorphism(const CatPtr& a, const CatPtr& b,
                                           const EnumerationLimits& limits) {
  if (a->num_objects() != b->num_objects() || a->num_morphisms() != b->num_morphisms()) {
    return std::nullopt;
  }
  std::optional<FinFunctor> found;
  for_each_functor(a, b, nullptr, limits, [&](const FinFunctor& f) {
    if (f.is_bijective()) {
      found = f;
      return false;
    }
    return true;
  });
  return found;
}

}  // namespace gtc
