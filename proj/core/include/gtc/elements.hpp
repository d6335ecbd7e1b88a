#pragma once

// Categories of elements and the Grothendieck construction of a presheaf.
//
// Objects of the total category are pairs (a, x) with x an object of X(a),
// named "(a,x)". A morphism (a,x) -> (a',x') is a pair (f : a -> a', k : x ->
// X(f)(x')), named "(f,k,x')"; composition is (f',k') o (f,k) = (f' o f,
// X(f)(k') o k).

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "gtc/presheaf.hpp"

namespace gtc {

struct ElementsResult {
  CatPtr total;
  /// First projection total -> base.
  FinFunctor zeta;
  /// total object -> (a, x).
  std::vector<std::pair<Obj, Obj>> object_index;
  /// total morphism -> (f, k, x').
  std::vector<std::tuple<Mor, Mor, Obj>> morphism_index;

  Obj object_of(Obj a, Obj x) const { return static_cast<Obj>(object_offset[a] + x); }
  std::optional<Mor> morphism_of(Mor f, Mor k, Obj x_target) const;

  std::vector<std::size_t> object_offset;
  std::map<std::tuple<Mor, Obj, Mor>, Mor> morphism_lookup;
};

/// Requires groupoid (or discrete) values.
ElementsResult elements(const PresheafPtr& x);

/// Any category-valued presheaf.
ElementsResult grothendieck(const PresheafPtr& x);

/// (a,x) -> (a, phi_a(x)), (f,k,x') -> (f, phi_a(k), phi_a'(x')).
FinFunctor elements_map(const PresheafMorphism& phi, const ElementsResult& source, const ElementsResult& target);
FinFunctor elements_map(const PresheafMorphism& phi);

/// Square
///   P --top--> E
///   |          |
/// left       right
///   v          v
///   A --bot--> B
struct PullbackCheck {
  bool commutes = false;
  bool objects_bijective = false;
  bool morphisms_bijective = false;
  std::string failure;

  bool is_pullback() const { return commutes && objects_bijective && morphisms_bijective; }
};

/// Whether P is the strict fiber product A x_B E via (left, top).
PullbackCheck check_strict_pullback(const FinFunctor& top, const FinFunctor& left, const FinFunctor& right,
                                    const FinFunctor& bottom);

struct BaseChange {
  ElementsResult restricted;
  ElementsResult original;
  /// (a,x) -> (u(a),x), (f,k,x') -> (u(f),k,x').
  FinFunctor lambda;
  PullbackCheck pullback;
};

BaseChange base_change_square(const FinFunctor& u, const PresheafPtr& x);

struct IteratedElements {
  /// Elements of X over A x B.
  ElementsResult direct;
  /// Elements over B of each slice X(a,-), assembled over A.
  PresheafPtr inner;
  ElementsResult iterated;
  /// direct.total -> iterated.total.
  FinFunctor iso;
};

/// Throws PreconditionViolation when the base carries no product structure and
/// IsoSearchFailed when the canonical comparison is not an isomorphism.
IteratedElements iterated_elements_check(const PresheafPtr& x);

}  // namespace gtc
