#pragma once

// Hom-groupoids, the right adjoint I* : Cat -> Grpd-valued presheaves for a
// diagram i : A -> Cat, its counit, the slice isomorphism and the sieve
// classifier of a strongly separating interval.

#include <map>
#include <optional>
#include <vector>

#include "gtc/elements.hpp"
#include "gtc/presheaf.hpp"

namespace gtc {

/// Covariant i : A -> Cat with optional chosen terminal objects e_a.
struct CatDiagram {
  CatPtr base;
  std::vector<CatPtr> values;
  std::vector<FinFunctor> actions;
  std::optional<std::vector<Obj>> terminals;

  /// Checks functoriality (FunctorialityViolation) and that each declared
  /// e_a is terminal (MissingTerminalObject).
  void validate() const;
};

/// a -> A/a, f -> f o -, with e_a = (a, id_a).
CatDiagram slice_diagram(const CatPtr& a);

/// Functors C -> D and the natural isomorphisms between them. Functors are
/// named "<object images|non-identity morphism images>".
struct HomGroupoid {
  CatPtr category;
  std::vector<FinFunctor> functors;
  std::vector<NatTransf> transformations;

  Obj object_of(const FinFunctor& f) const;
  Mor morphism_of(const NatTransf& t) const;

  std::map<std::vector<std::uint32_t>, Obj> functor_lookup;
  std::map<std::vector<std::uint32_t>, Mor> transformation_lookup;
};

/// With identities_only the morphisms are the identities alone (the
/// Set-valued Hom).
HomGroupoid hom_groupoid(const CatPtr& c, const CatPtr& d, const EnumerationLimits& limits = {},
                         bool identities_only = false);

/// I*(C) = Homi(i(-), C), or the discrete Hom(i(-), C) when set_valued.
struct IStar {
  CatDiagram diagram;
  CatPtr target;
  bool set_valued = false;
  std::vector<HomGroupoid> homs;
  PresheafPtr presheaf;
};

IStar i_star(const CatDiagram& i, const CatPtr& c, bool set_valued = false, const EnumerationLimits& limits = {});

/// I*(g) : I*(C) -> I*(D), postcomposition with g : C -> D.
PresheafMorphism i_star_map(const IStar& from, const IStar& to, const FinFunctor& g);

/// Global point I*(c) of I*(C) for an object c (constant functors).
std::vector<Obj> i_star_point(const IStar& ic, Obj c);

/// alpha_C : elements(I*(C)) -> C, (a,p) -> p(e_a), (f,s) -> p'(e_a -> e_a') o s_{e_a}.
FinFunctor counit_alpha(const IStar& ic, const ElementsResult& el);
FinFunctor counit_alpha(const CatDiagram& i, const CatPtr& c, const EnumerationLimits& limits = {});

/// Transposes along elements -| I_A* for the slice diagram. `ic` must be
/// built from slice_diagram(base).
PresheafMorphism transpose(const FinFunctor& f, const PresheafPtr& x, const ElementsResult& el_x, const IStar& ic);
FinFunctor untranspose(const PresheafMorphism& phi, const ElementsResult& el_x, const IStar& ic);

struct AdjunctionReport {
  std::size_t functor_count = 0;
  std::size_t morphism_count = 0;
  bool bijective = false;
  bool unit_triangle = false;
  bool counit_triangle = false;

  bool ok() const { return bijective && unit_triangle && counit_triangle; }
};

/// Enumerates Hom(elements(X), C) and Hom(X, I_A*(C)), checks that transpose
/// and untranspose are mutually inverse and checks both triangle identities.
AdjunctionReport adjunction_transpose(const PresheafPtr& x, const CatPtr& c, const EnumerationLimits& limits = {});

/// theta : elements(I*(C/c)) -> alpha_C / c, (a,q) -> (a, pi_c o q, q(e_a)).
/// Throws IsoVerificationFailed when theta is not an isomorphism.
struct ThetaResult {
  CatPtr source;
  CatPtr target;
  FinFunctor theta;
};

ThetaResult theta_slice_iso(const CatDiagram& i, const CatPtr& c, Obj object, const EnumerationLimits& limits = {});

/// u : elements(I) -> Delta_1 with u(a,x) = 0 iff x is isomorphic to i0_a,
/// and its transpose I -> I_A*(Delta_1). Throws NotStronglySeparating when
/// u(a, i1_a) = 0 for some a.
struct SieveResult {
  ElementsResult elements;
  FinFunctor u;
  IStar target;
  PresheafMorphism classifier;
};

SieveResult sieve_classifier(const Interval& i, const EnumerationLimits& limits = {});

/// I*(L) for a multiplicative interval L of Cat: carrier I*(L), points
/// I*(l0), I*(l1) and product I*(L) x I*(L) -> I*(L) through I*(L x L).
MultiplicativeInterval transport_interval(const CatDiagram& i, const MultiplicativeInterval& l,
                                          const EnumerationLimits& limits = {});

}  // namespace gtc
