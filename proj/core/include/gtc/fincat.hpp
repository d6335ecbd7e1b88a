#pragma once

// Finite categories stored as total composition tables, functors and natural
// transformations between them, and the standard constructions used
// throughout the library.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gtc/error.hpp"

namespace gtc {

using Obj = std::uint32_t;
using Mor = std::uint32_t;

inline constexpr std::uint32_t kUnset = ~std::uint32_t{0};

class FinCategory;
using CatPtr = std::shared_ptr<const FinCategory>;

/// Present on categories built as A x B; lets the elements module split a
/// product base into its factors.
struct ProductStructure {
  CatPtr left;
  CatPtr right;
  std::vector<std::pair<Obj, Obj>> objects;
  std::vector<std::pair<Mor, Mor>> morphisms;
};

class FinCategory {
 public:
  std::size_t num_objects() const { return object_ids_.size(); }
  std::size_t num_morphisms() const { return src_.size(); }

  const std::string& object_id(Obj x) const { return object_ids_[x]; }
  const std::string& morphism_id(Mor f) const { return morphism_ids_[f]; }

  Obj src(Mor f) const { return src_[f]; }
  Obj tgt(Mor f) const { return tgt_[f]; }
  Mor identity(Obj x) const { return identity_[x]; }
  bool is_identity(Mor f) const { return identity_[src_[f]] == f; }

  /// g o f; requires tgt(f) == src(g).
  Mor compose(Mor g, Mor f) const {
    return compose_table_[compose_offset_[g] + position_in_incoming_[f]];
  }

  /// Morphisms x -> y in index order.
  std::span<const Mor> hom(Obj x, Obj y) const;
  std::span<const Mor> incoming(Obj y) const { return incoming_[y]; }
  std::span<const Mor> outgoing(Obj x) const { return outgoing_[x]; }

  std::optional<Obj> find_object(std::string_view id) const;
  std::optional<Mor> find_morphism(std::string_view id) const;

  /// Inverse of f if f is an isomorphism.
  std::optional<Mor> inverse(Mor f) const;
  bool is_iso(Mor f) const { return inverse(f).has_value(); }
  /// Every morphism is invertible.
  bool is_groupoid() const;
  /// Only identity morphisms.
  bool is_discrete() const;
  /// The only isomorphisms are identities.
  bool has_only_trivial_isos() const;

  const ProductStructure* product_structure() const { return product_.get(); }

 private:
  friend class CategoryBuilder;
  FinCategory() = default;

  std::vector<std::string> object_ids_;
  std::vector<std::string> morphism_ids_;
  std::vector<Obj> src_;
  std::vector<Obj> tgt_;
  std::vector<Mor> identity_;
  std::vector<std::vector<Mor>> incoming_;
  std::vector<std::vector<Mor>> outgoing_;
  std::vector<std::uint32_t> position_in_incoming_;
  std::vector<std::size_t> compose_offset_;
  std::vector<Mor> compose_table_;
  std::vector<Mor> hom_storage_;
  std::unordered_map<std::uint64_t, std::pair<std::uint32_t, std::uint32_t>> hom_ranges_;
  std::unordered_map<std::string, Obj> object_lookup_;
  std::unordered_map<std::string, Mor> morphism_lookup_;
  std::shared_ptr<const ProductStructure> product_;
};

/// Assembles a FinCategory. `build` checks every invariant (unit laws,
/// typing of the table, associativity) before handing the value out.
class CategoryBuilder {
 public:
  Obj add_object(std::string id);
  Mor add_morphism(std::string id, Obj src, Obj tgt);
  /// Adds a morphism src=tgt=x and declares it the identity of x.
  Mor add_identity(Obj x, std::string id);
  void set_identity(Obj x, Mor f);
  /// Records g o f = h. Composites with an identity factor may be omitted.
  void set_composite(Mor g, Mor f, Mor h);
  void set_product_structure(ProductStructure product);

  std::size_t num_objects() const { return object_ids_.size(); }
  std::size_t num_morphisms() const { return src_.size(); }
  std::optional<Obj> find_object(std::string_view id) const;
  std::optional<Mor> find_morphism(std::string_view id) const;

  /// Uses the composites recorded with set_composite.
  CatPtr build() const;
  /// Fills the table from `composer(g, f)`.
  CatPtr build(const std::function<Mor(Mor, Mor)>& composer) const;

 private:
  CatPtr finish(const std::function<Mor(Mor, Mor)>& composer, bool explicit_table) const;

  std::vector<std::string> object_ids_;
  std::vector<std::string> morphism_ids_;
  std::vector<Obj> src_;
  std::vector<Obj> tgt_;
  std::vector<Mor> identity_;
  std::map<std::pair<Mor, Mor>, Mor> composites_;
  std::unordered_map<std::string, Obj> object_lookup_;
  std::unordered_map<std::string, Mor> morphism_lookup_;
  std::shared_ptr<const ProductStructure> product_;
};

/// Structural equality: same ids, same tables.
bool same_structure(const FinCategory& a, const FinCategory& b);

class FinFunctor {
 public:
  /// Checks typing, identities and composition exhaustively.
  FinFunctor(CatPtr dom, CatPtr cod, std::vector<Obj> omap, std::vector<Mor> mmap);

  static FinFunctor identity(const CatPtr& c);
  static FinFunctor constant(const CatPtr& dom, const CatPtr& cod, Obj value);
  /// The unique functor to the terminal category.
  static FinFunctor to_terminal(const CatPtr& dom, const CatPtr& terminal);

  const CatPtr& dom() const { return dom_; }
  const CatPtr& cod() const { return cod_; }
  Obj operator()(Obj x) const { return omap_[x]; }
  Obj on_object(Obj x) const { return omap_[x]; }
  Mor on_morphism(Mor f) const { return mmap_[f]; }
  const std::vector<Obj>& object_map() const { return omap_; }
  const std::vector<Mor>& morphism_map() const { return mmap_; }

  bool is_bijective() const;

  /// Same domain/codomain (structurally) and the same maps.
  friend bool operator==(const FinFunctor& a, const FinFunctor& b);

 private:
  struct Unchecked {};
  FinFunctor(Unchecked, CatPtr dom, CatPtr cod, std::vector<Obj> omap, std::vector<Mor> mmap);
  friend FinFunctor compose(const FinFunctor& g, const FinFunctor& f);
  friend FinFunctor make_functor_unchecked(CatPtr, CatPtr, std::vector<Obj>, std::vector<Mor>);

  CatPtr dom_;
  CatPtr cod_;
  std::vector<Obj> omap_;
  std::vector<Mor> mmap_;
};

/// g o f.
FinFunctor compose(const FinFunctor& g, const FinFunctor& f);

/// For constructions whose output is a functor by construction; the caller
/// vouches for functoriality.
FinFunctor make_functor_unchecked(CatPtr dom, CatPtr cod, std::vector<Obj> omap,
                                  std::vector<Mor> mmap);

/// Checks that the maps define a functor; returns a description of the first
/// failure.
std::optional<std::string> functor_defect(const FinCategory& dom, const FinCategory& cod,
                                          const std::vector<Obj>& omap,
                                          const std::vector<Mor>& mmap);

class NatTransf {
 public:
  /// Checks naturality for every morphism of the domain.
  NatTransf(FinFunctor source, FinFunctor target, std::vector<Mor> components);

  static NatTransf identity(const FinFunctor& f);

  const FinFunctor& source() const { return source_; }
  const FinFunctor& target() const { return target_; }
  Mor component(Obj x) const { return components_[x]; }
  const std::vector<Mor>& components() const { return components_; }
  bool is_iso() const;

  friend bool operator==(const NatTransf& a, const NatTransf& b) {
    return a.source_ == b.source_ && a.target_ == b.target_ && a.components_ == b.components_;
  }

 private:
  FinFunctor source_;
  FinFunctor target_;
  std::vector<Mor> components_;
};

/// beta . alpha (vertical composite).
NatTransf vertical_compose(const NatTransf& beta, const NatTransf& alpha);

// ---------------------------------------------------------------------------
// Standard categories.

namespace standard {

CatPtr empty();
/// The terminal category e: one object "*", one morphism "id".
CatPtr terminal();
/// The ordinal {0 < ... < n}.
CatPtr delta(unsigned n);
/// Partial order on `elements` given by pairs (a, b) meaning a <= b. The
/// relation is closed reflexively; it must already be transitive and
/// antisymmetric.
CatPtr poset(const std::vector<std::string>& elements,
             const std::vector<std::pair<std::string, std::string>>& relation);
CatPtr product(const CatPtr& a, const CatPtr& b);
CatPtr opposite(const CatPtr& a);
CatPtr coproduct(const CatPtr& a, const CatPtr& b);
/// Two objects, one isomorphism between them (the walking isomorphism J).
CatPtr free_iso();
/// The cyclic group Z/n as a one-object category.
CatPtr cyclic_group(unsigned n);
/// The monoid {1, s} with s o s = s.
CatPtr idempotent_monoid();
/// n objects, identities only.
CatPtr discrete(unsigned n);
/// The meet-semilattice {b < x, b < y}.
CatPtr meet_semilattice3();
/// The poset {x < t, y < t}; the opposite of meet_semilattice3.
CatPtr join_semilattice3();

/// Projections A x B -> A and A x B -> B for a category built by product().
FinFunctor left_projection(const CatPtr& product);
FinFunctor right_projection(const CatPtr& product);
/// x |-> (x, x) into product(a, a).
FinFunctor diagonal(const CatPtr& a, const CatPtr& a_times_a);
/// <F, G> : C -> A x B.
FinFunctor pairing(const FinFunctor& f, const FinFunctor& g, const CatPtr& product);

}  // namespace standard

/// Parsed request for build_standard.
struct StandardSpec {
  std::string name;
  std::vector<unsigned> parameters;
};

/// Resolves names such as "terminal", "delta", "free_iso", "cyclic_group",
/// "idempotent_monoid", "discrete", "meet3", "join3", "empty".
CatPtr build_standard(const StandardSpec& spec);

// ---------------------------------------------------------------------------
// Operations.

struct SliceResult {
  CatPtr category;
  FinFunctor projection;
  /// Slice object -> (a, q : u(a) -> b).
  std::vector<std::pair<Obj, Mor>> object_index;
};

/// u / b: objects (a, q : u(a) -> b), morphisms f with q' o u(f) = q.
SliceResult slice(const FinFunctor& u, Obj b);
/// A / a.
SliceResult slice(const CatPtr& a, Obj x);

struct ExtremalObjects {
  std::vector<Obj> terminal;
  std::vector<Obj> initial;
};

ExtremalObjects extremal_objects(const FinCategory& c);

struct FibrationReport {
  bool is_fibration = false;
  /// (object x of the total category, morphism g : b -> u(x)) -> cartesian lift.
  std::map<std::pair<Obj, Mor>, Mor> lifts;
  std::optional<std::pair<Obj, Mor>> failure;
};

/// Exhaustive check of the cartesian-lift condition, including the full
/// universal property of each candidate lift.
FibrationReport is_grothendieck_fibration(const FinFunctor& u);

/// Partition of the objects into isomorphism classes; classes and members in
/// increasing order.
std::vector<std::vector<Obj>> iso_classes(const FinCategory& c);

/// Connected components of the underlying undirected graph.
std::vector<std::vector<Obj>> connected_components(const FinCategory& c);

struct EnumerationLimits {
  std::uint64_t cap = 1'000'000;
};

std::vector<NatTransf> natural_transformations(const FinFunctor& f, const FinFunctor& g,
                                               bool iso_only,
                                               const EnumerationLimits& limits = {});

/// Partial assignment for functor enumeration (kUnset = free).
struct FunctorConstraint {
  std::vector<Obj> objects;
  std::vector<Mor> morphisms;
};

/// All functors dom -> cod, in a deterministic order. `visit` returns false to
/// stop early. Throws SizeExceeded when the search visits more than
/// limits.cap candidates.
void for_each_functor(const CatPtr& dom, const CatPtr& cod, const FunctorConstraint* constraint,
                      const EnumerationLimits& limits,
                      const std::function<bool(const FinFunctor&)>& visit);

std::vector<FinFunctor> enumerate_functors(const CatPtr& dom, const CatPtr& cod,
                                           const EnumerationLimits& limits = {},
                                           const FunctorConstraint* constraint = nullptr);

/// Searches for an isomorphism of categories a -> b.
std::optional<FinFunctor> find_isomorphism(const CatPtr& a, const CatPtr& b,
                                           const EnumerationLimits& limits = {});

}  // namespace gtc
