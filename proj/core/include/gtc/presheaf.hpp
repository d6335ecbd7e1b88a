#pragma once

// Set-, groupoid- and category-valued presheaves on a finite base, their
// strict morphisms and invertible 2-morphisms, intervals and homotopies.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gtc/fincat.hpp"

namespace gtc {

enum class ValueKind { Set, Groupoid, Category };

std::string_view to_string(ValueKind k);

/// Contravariant X : A^op -> Cat. action(f) for f : a -> a' is the functor
/// X(a') -> X(a); X(g o f) = X(f) o X(g).
class Presheaf {
 public:
  /// Checks value kinds (DiscretenessViolation, NotAGroupoid) and strict
  /// contravariant functoriality (FunctorialityViolation).
  Presheaf(CatPtr base, ValueKind kind, std::vector<CatPtr> values, std::vector<FinFunctor> actions);

  const CatPtr& base() const { return base_; }
  ValueKind kind() const { return kind_; }
  const CatPtr& value(Obj a) const { return values_[a]; }
  const FinFunctor& action(Mor f) const { return actions_[f]; }
  const std::vector<CatPtr>& values() const { return values_; }
  const std::vector<FinFunctor>& actions() const { return actions_; }

  bool values_are_groupoids() const;
  bool values_are_discrete() const;

 private:
  CatPtr base_;
  ValueKind kind_;
  std::vector<CatPtr> values_;
  std::vector<FinFunctor> actions_;
};

using PresheafPtr = std::shared_ptr<const Presheaf>;

/// Same base, kind, values and actions.
bool same_presheaf(const Presheaf& x, const Presheaf& y);

/// The functor F x G : A x B -> C x D between categories built by product().
FinFunctor product_functor(const FinFunctor& f, const FinFunctor& g, const CatPtr& dom, const CatPtr& cod);

namespace presheaves {

PresheafPtr terminal(const CatPtr& base);
/// Hom_A(-, a) as a discrete presheaf; objects of the value at b are named by
/// the morphisms b -> a.
PresheafPtr representable(const CatPtr& base, Obj a);
/// Pointwise product.
PresheafPtr product(const PresheafPtr& x, const PresheafPtr& y);
/// Constant presheaf with identity actions.
PresheafPtr constant(const CatPtr& base, const CatPtr& value, ValueKind kind);
/// Same data, kind re-declared (Set -> Groupoid -> Category).
PresheafPtr with_kind(const PresheafPtr& x, ValueKind kind);

}  // namespace presheaves

/// u*(X) for u : A -> B and X on B.
PresheafPtr restrict(const FinFunctor& u, const PresheafPtr& x);

/// Strict natural transformation: components phi_a : X(a) -> Y(a) with
/// Y(f) o phi_a' = phi_a o X(f).
class PresheafMorphism {
 public:
  PresheafMorphism(PresheafPtr source, PresheafPtr target, std::vector<FinFunctor> components);

  static PresheafMorphism identity(const PresheafPtr& x);
  /// The unique morphism to a terminal presheaf on the same base.
  static PresheafMorphism to_terminal(const PresheafPtr& x, const PresheafPtr& terminal);

  const PresheafPtr& source() const { return source_; }
  const PresheafPtr& target() const { return target_; }
  const FinFunctor& component(Obj a) const { return components_[a]; }
  const std::vector<FinFunctor>& components() const { return components_; }

  friend bool operator==(const PresheafMorphism& a, const PresheafMorphism& b) {
    return a.components_ == b.components_;
  }

 private:
  struct Unchecked {};
  PresheafMorphism(Unchecked, PresheafPtr source, PresheafPtr target, std::vector<FinFunctor> components);
  friend PresheafMorphism make_morphism_unchecked(PresheafPtr, PresheafPtr, std::vector<FinFunctor>);

  PresheafPtr source_;
  PresheafPtr target_;
  std::vector<FinFunctor> components_;
};

PresheafMorphism make_morphism_unchecked(PresheafPtr source, PresheafPtr target,
                                         std::vector<FinFunctor> components);

/// First description of a naturality failure, if any.
std::optional<std::string> naturality_defect(const Presheaf& x, const Presheaf& y,
                                             const std::vector<FinFunctor>& components);

/// psi o phi.
PresheafMorphism compose(const PresheafMorphism& psi, const PresheafMorphism& phi);

/// <phi, psi> : Z -> X x Y where xy = product(X, Y).
PresheafMorphism pairing(const PresheafMorphism& phi, const PresheafMorphism& psi, const PresheafPtr& xy);
PresheafMorphism left_projection(const PresheafPtr& xy, const PresheafPtr& x);
PresheafMorphism right_projection(const PresheafPtr& xy, const PresheafPtr& y);

/// Per-object functor constraints (empty = free).
using PresheafMorphismConstraint = std::vector<FunctorConstraint>;

/// All strict morphisms X -> Y; visit returns false to stop.
void for_each_presheaf_morphism(const PresheafPtr& x, const PresheafPtr& y,
                                const PresheafMorphismConstraint* constraint,
                                const EnumerationLimits& limits,
                                const std::function<bool(const PresheafMorphism&)>& visit);

std::vector<PresheafMorphism> enumerate_presheaf_morphisms(const PresheafPtr& x, const PresheafPtr& y,
                                                           const EnumerationLimits& limits = {});

/// Invertible 2-morphism phi => psi: natural isomorphisms alpha_a with
/// (alpha_a)_{X(f)(x)} = Y(f)((alpha_a')_x) for f : a -> a'.
struct TwoMorphism {
  std::vector<NatTransf> components;
};

std::optional<std::string> whiskering_defect(const PresheafMorphism& phi, const PresheafMorphism& psi,
                                             const std::vector<NatTransf>& components);

std::vector<TwoMorphism> two_morphisms(const PresheafMorphism& phi, const PresheafMorphism& psi,
                                       const EnumerationLimits& limits = {});

/// Componentwise inverse of an invertible 2-morphism.
TwoMorphism inverse(const TwoMorphism& alpha, const PresheafMorphism& phi, const PresheafMorphism& psi);

// ---------------------------------------------------------------------------
// Intervals

/// An interval either in Cat (carrier category, two objects) or in presheaves
/// over a base (carrier presheaf, two global points given objectwise).
struct Interval {
  enum class Ambient { Category, Presheaf };

  Ambient ambient = Ambient::Category;
  CatPtr category;
  Obj c0 = kUnset;
  Obj c1 = kUnset;
  PresheafPtr presheaf;
  std::vector<Obj> p0;
  std::vector<Obj> p1;

  static Interval in_category(CatPtr carrier, Obj i0, Obj i1);
  /// Checks that the points are compatible with every action.
  static Interval in_presheaves(PresheafPtr carrier, std::vector<Obj> i0, std::vector<Obj> i1);
};

/// Global point of X given objectwise; throws PreconditionViolation when not
/// compatible with the actions.
PresheafMorphism global_point(const PresheafPtr& terminal, const PresheafPtr& x, const std::vector<Obj>& point);

/// Interval with a binary operation carrier x carrier -> carrier.
struct MultiplicativeInterval {
  Interval interval;
  /// Category ambient: functor carrier x carrier -> carrier.
  std::optional<FinFunctor> op;
  /// Presheaf ambient: morphism carrier x carrier -> carrier; the product
  /// presheaf is op_presheaf->source().
  std::optional<PresheafMorphism> op_presheaf;
};

/// Delta_1 with Lambda(a, b) = max(a, b).
MultiplicativeInterval delta1_multiplicative();

struct HomotopyReport {
  /// Homotopies from f to g found by search.
  std::size_t direct_count = 0;
  bool homotopic = false;
  /// Size of the hom-set used as the vertex set of the closure.
  std::size_t hom_size = 0;
};

/// Category ambient: f, g : X -> Y functors.
HomotopyReport enumerate_homotopies(const Interval& i, const FinFunctor& f, const FinFunctor& g,
                                    const EnumerationLimits& limits = {});
/// Presheaf ambient: f, g : X -> Y morphisms over the interval's base.
HomotopyReport enumerate_homotopies(const Interval& i, const PresheafMorphism& f, const PresheafMorphism& g,
                                    const EnumerationLimits& limits = {});

/// The explicit homotopies I x X -> Y from f to g (category ambient).
std::vector<FinFunctor> homotopies(const Interval& i, const FinFunctor& f, const FinFunctor& g,
                                   const EnumerationLimits& limits = {});

bool is_contractible(const Interval& i, const CatPtr& x, const EnumerationLimits& limits = {});
bool is_contractible(const Interval& i, const PresheafPtr& x, const EnumerationLimits& limits = {});

}  // namespace gtc
