#pragma once

// Nerves, normalized chains, integral homology and the asphericity oracles.

#include <vector>

#include "gtc/fincat.hpp"
#include "gtc/grpd.hpp"
#include "gtc/presheaf.hpp"
#include "gtc/smith.hpp"
#include "gtc/verdict.hpp"

namespace gtc {

/// x0 -f1-> x1 -> ... -fk-> xk with every fi a non-identity. A 0-simplex is
/// an object with no arrows.
struct Simplex {
  Obj start = 0;
  std::vector<Mor> arrows;
};

struct Face {
  /// Index in the degree below, or kUnset when the face is degenerate.
  std::uint32_t index = kUnset;
  int sign = 1;
};

struct TruncatedNerve {
  CatPtr category;
  unsigned bound = 0;
  /// simplices[k] for k = 0..bound.
  std::vector<std::vector<Simplex>> simplices;
  /// faces[k][s] lists d_0 .. d_k of simplex s of degree k (empty for k = 0).
  std::vector<std::vector<std::vector<Face>>> faces;

  std::vector<std::size_t> sizes() const;
};

/// Throws SizeExceeded when more than limits.cap simplices would be listed.
TruncatedNerve nerve(const CatPtr& c, unsigned bound, const EnumerationLimits& limits = {});

struct ChainComplex {
  /// rank[k] for k = 0..top.
  std::vector<std::size_t> rank;
  /// boundary[k] : C_k -> C_{k-1} for k = 1..top; boundary[0] is 0 x rank[0].
  std::vector<IntMatrix> boundary;

  /// d_{k-1} o d_k == 0 for every represented k.
  bool squares_to_zero() const;
};

ChainComplex normalized_chains(const TruncatedNerve& n);

struct HomologyGroup {
  std::size_t betti = 0;
  std::vector<Integer> torsion;
  bool valid = true;
};

struct HomologyReport {
  /// Degrees 0..bound+1; the last one is computed without the next boundary
  /// and flagged invalid.
  std::vector<HomologyGroup> groups;
  unsigned validity_bound = 0;

  /// Some valid degree differs from the homology of a point.
  bool reduced_nonzero() const;
};

HomologyReport homology(const ChainComplex& cx, unsigned validity_bound);
HomologyReport homology(const CatPtr& c, unsigned bound, const EnumerationLimits& limits = {});

Json to_json(const HomologyReport& r);

struct LocalizerSpec {
  enum class Kind { W1, WInfty };

  Kind kind = Kind::W1;
  std::uint64_t budget = kDefaultBudget;
  unsigned dimension = 3;

  static LocalizerSpec w1(std::uint64_t budget = kDefaultBudget) { return {Kind::W1, budget, 3}; }
  static LocalizerSpec winfty(unsigned dimension = 3, std::uint64_t budget = kDefaultBudget) {
    return {Kind::WInfty, budget, dimension};
  }
};

std::string_view to_string(LocalizerSpec::Kind k);

/// C -> e lies in the localizer.
Verdict is_aspherical(const CatPtr& c, const LocalizerSpec& loc);

/// Every slice u/b is aspherical.
Verdict is_aspherical_morphism(const FinFunctor& u, const LocalizerSpec& loc);

/// u lies in the localizer.
Verdict is_weak_equivalence(const FinFunctor& u, const LocalizerSpec& loc);

struct ThomasonRecord {
  std::vector<Verdict> pointwise;
  Verdict total;
  /// False exactly when every pointwise verdict is Yes and the total is No.
  bool consistent = true;
};

/// Pointwise verdicts for phi_a and the verdict for the induced functor of
/// Grothendieck constructions.
ThomasonRecord thomason_check(const PresheafMorphism& phi, const LocalizerSpec& loc);

Json to_json(const ThomasonRecord& r);

}  // namespace gtc
