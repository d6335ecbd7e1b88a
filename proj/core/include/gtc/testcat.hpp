#pragma once

// Checkers for the test-category hierarchy, interval diagnostics and the
// canonical isomorphisms elements(a x X) = elements(X|A/a) = zeta_X / a.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gtc/adjoints.hpp"
#include "gtc/elements.hpp"
#include "gtc/homology.hpp"

namespace gtc {

/// A x A -> A over the diagonal: every slice Delta / (a, b) is aspherical and
/// so is A.
Verdict is_totally_aspherical(const CatPtr& a, const LocalizerSpec& loc);

/// elements(a x X) is aspherical for every object a.
Verdict is_locally_aspherical(const PresheafPtr& x, const LocalizerSpec& loc);

struct Catalog {
  std::string id;
  std::vector<std::pair<std::string, CatPtr>> entries;
};

/// e, Delta_1, Delta_2, Delta_1 x Delta_1 and the 3-element join-semilattice.
Catalog default_weak_test_catalog();

/// No when some I_A*(C) is not aspherical, Yes (bounded by the catalog) when
/// all are. Throws CatalogEntryLacksTerminal.
Verdict weak_test_evidence(const CatPtr& a, const Catalog& catalog, const LocalizerSpec& loc,
                           const EnumerationLimits& limits = {});

struct HierarchyReport {
  Verdict aspherical;
  Verdict totally_aspherical;
  Verdict local_test;
  Verdict test;
  Verdict strict_test;
  Verdict weak_test;
  std::string catalog_id;
  /// I_A*(Delta_1) and i_A*(Delta_1) have the same values and actions.
  bool interval_cross_check = false;
  /// Local asphericity of the groupoidal and the Set-valued interval agree.
  bool local_test_paths_agree = false;

  /// strict Yes => test != No; test Yes => local test != No and aspherical != No.
  bool implications_consistent() const;
};

HierarchyReport check_hierarchy(const CatPtr& a, const LocalizerSpec& loc,
                                const Catalog& catalog = default_weak_test_catalog(),
                                const EnumerationLimits& limits = {});

Json to_json(const HierarchyReport& r);

struct SeparationReport {
  bool separating = true;
  /// Object a and an isomorphism i0_a -> i1_a in the value at a.
  std::optional<std::pair<Obj, Mor>> witness;
};

/// i0_a and i1_a are non-isomorphic at every a. A Cat-ambient interval is
/// treated as an interval over the point.
SeparationReport is_strongly_separating(const Interval& i);

struct FamilySeparationReport {
  bool separating = true;
  /// Index of a nonempty member X carrying a 2-morphism from the constant
  /// i0 to the constant i1.
  std::optional<std::size_t> witness;
};

/// The defining condition checked directly over a finite family of presheaves.
FamilySeparationReport strongly_separating_on_family(const Interval& i, const std::vector<PresheafPtr>& family,
                                                     const EnumerationLimits& limits = {});

struct MultiplicativeCheck {
  bool ok = true;
  std::string failure;
};

/// Lambda(i0, -) = id and Lambda(i1, -) = i1, checked on objects and
/// morphisms.
MultiplicativeCheck verify_multiplicative(const MultiplicativeInterval& l);

/// I_A*(Delta_1) with the image of max.
MultiplicativeInterval canonical_multiplicative(const CatPtr& a, const EnumerationLimits& limits = {});

struct IsoSuite {
  /// a x X and the restriction of X along A/a -> A.
  PresheafPtr product;
  PresheafPtr restricted;
  /// elements(a x X).
  ElementsResult product_elements;
  /// elements over A/a of the restriction of X.
  ElementsResult restricted_elements;
  /// elements(X) and zeta_X / a.
  ElementsResult total;
  SliceResult zeta_slice;
  FinFunctor product_to_restricted;
  FinFunctor restricted_to_slice;
};

/// Throws IsoVerificationFailed when a comparison is not an isomorphism.
IsoSuite canonical_iso_suite(const PresheafPtr& x, Obj a);

/// Checks that the suite isomorphisms commute with the maps induced by
/// phi : X -> Y on all three constructions.
bool iso_suite_natural(const PresheafMorphism& phi, Obj a);

}  // namespace gtc
