#pragma once

// Finite groupoids, group presentations, coset enumeration, and the
// fundamental groupoid of a finite category.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gtc/fincat.hpp"
#include "gtc/smith.hpp"
#include "gtc/verdict.hpp"

namespace gtc {

/// A FinCategory in which every morphism is invertible, with the inverses
/// tabulated.
class FinGroupoid {
 public:
  /// Throws NotAGroupoid naming a non-invertible morphism.
  explicit FinGroupoid(CatPtr category);

  const CatPtr& category() const { return category_; }
  Mor inverse(Mor f) const { return inverse_[f]; }

 private:
  CatPtr category_;
  std::vector<Mor> inverse_;
};

// ---------------------------------------------------------------------------
// Words and presentations. Letter +(k+1) is generator k, -(k+1) its inverse.

using Letter = std::int32_t;
using Word = std::vector<Letter>;

inline std::size_t generator_of(Letter l) { return static_cast<std::size_t>((l < 0 ? -l : l) - 1); }
inline Letter letter(std::size_t generator, bool inverse = false) {
  const Letter l = static_cast<Letter>(generator + 1);
  return inverse ? -l : l;
}

Word invert(const Word& w);
Word concat(const Word& a, const Word& b);
Word free_reduce(const Word& w);
Word cyclic_reduce(const Word& w);

struct GroupPresentation {
  std::vector<std::string> generators;
  std::vector<Word> relators;

  /// Throws ValidationError when a relator uses an undeclared generator.
  void validate() const;
  std::string word_to_string(const Word& w) const;
  friend bool operator==(const GroupPresentation&, const GroupPresentation&) = default;
};

Json to_json(const GroupPresentation& p);

struct SimplifiedPresentation {
  GroupPresentation presentation;
  /// Original generator k -> word in the surviving generators.
  std::vector<Word> substitution;
  /// Surviving generator j -> its index among the original generators.
  std::vector<std::size_t> survivors;
};

/// Deterministic Tietze reduction: free and cyclic reduction, removal of
/// empty and duplicate relators, and elimination of a generator occurring
/// exactly once in some relator whenever that does not lengthen the
/// presentation. Surviving generators keep their names.
SimplifiedPresentation simplify(const GroupPresentation& p);

/// Exponent-sum invariants of G/[G,G].
struct AbelianInvariants {
  std::size_t free_rank = 0;
  /// Torsion coefficients > 1, each dividing the next.
  std::vector<Integer> torsion;
  friend bool operator==(const AbelianInvariants&, const AbelianInvariants&) = default;
};

AbelianInvariants abelianization(const GroupPresentation& p);
/// A JSON number when the value fits in a long, otherwise its decimal string.
Json integer_json(const Integer& v);

Json to_json(const AbelianInvariants& a);
bool is_trivial(const AbelianInvariants& a);

// ---------------------------------------------------------------------------
// Coset enumeration.

/// Right multiplication table of a finite group produced by coset enumeration
/// over the trivial subgroup. Element 0 is the identity.
struct FiniteGroup {
  std::size_t order = 0;
  std::size_t num_generators = 0;
  /// action[e * 2n + 2k] = e * g_k, action[e * 2n + 2k + 1] = e * g_k^-1.
  std::vector<std::uint32_t> action;
  /// A word representing each element.
  std::vector<Word> representative;

  std::uint32_t apply(std::uint32_t e, Letter l) const;
  std::uint32_t evaluate(const Word& w, std::uint32_t start = 0) const;
  std::uint32_t multiply(std::uint32_t a, std::uint32_t b) const;
  /// Size of the subgroup generated by the given elements.
  std::size_t generated_order(const std::vector<std::uint32_t>& elements) const;
};

struct CosetEnumeration {
  bool complete = false;
  std::size_t index = 0;
  std::uint64_t steps = 0;
  std::size_t max_live = 0;
  /// Filled when complete.
  std::optional<FiniteGroup> group;
};

/// HLT enumeration with coincidence processing. `budget` bounds the number of
/// coset definitions plus deductions; exceeding it stops with complete=false.
CosetEnumeration enumerate_cosets(const GroupPresentation& p, std::uint64_t budget);

inline constexpr std::uint64_t kDefaultBudget = 100'000;

/// Yes: identical after simplification, or finite of equal order with an
/// explicit isomorphism found. No: abelian invariants or finite orders differ,
/// or an exhaustive search over generator images finds no isomorphism.
Verdict group_compare(const GroupPresentation& p, const GroupPresentation& q,
                      std::uint64_t budget = kDefaultBudget);

/// Verdict on whether the homomorphism p -> q sending generator k to
/// images[k] (a word in q's generators) is an isomorphism.
Verdict homomorphism_is_iso(const GroupPresentation& p, const GroupPresentation& q,
                            const std::vector<Word>& images, std::uint64_t budget = kDefaultBudget);

// ---------------------------------------------------------------------------
// Fundamental groupoid.

struct TreeStep {
  Mor morphism;
  bool forward;
};

struct FPComponent {
  Obj base;
  std::vector<Obj> members;
  /// Raw presentation: one generator per non-identity non-tree morphism.
  GroupPresentation presentation;
  SimplifiedPresentation simplified;
};

/// Finitely presented groupoid pi_1(C).
struct FPGroupoid {
  CatPtr source;
  std::vector<std::uint32_t> component_of;
  std::vector<FPComponent> components;
  /// Path from the component base to each object, first step first.
  std::vector<std::vector<TreeStep>> tree_path;
  /// Morphism m : x -> y as the loop path(y)^-1 . m . path(x), a word in the
  /// raw generators of its component.
  std::vector<Word> morphism_word;
};

/// Breadth-first spanning tree from the smallest object id of each component;
/// one relator per entry of the composition table.
FPGroupoid localize(const CatPtr& c);

/// Simplified presentation of a component; throws UnknownComponent.
const GroupPresentation& vertex_group(const FPGroupoid& g, std::size_t component);

/// pi_1 of a functor: component map and images of the raw generators.
struct FPMap {
  const FPGroupoid* source = nullptr;
  const FPGroupoid* target = nullptr;
  std::vector<std::uint32_t> component_map;
  /// Per source component, per raw generator: word in the raw generators of
  /// the target component.
  std::vector<std::vector<Word>> generator_images;
};

FPMap induced_map(const FPGroupoid& source, const FPGroupoid& target, const FinFunctor& u);

Verdict groupoid_equivalence(const FPMap& map, std::uint64_t budget = kDefaultBudget);

/// Exhaustive check for a functor between finite groupoids.
Verdict groupoid_equivalence(const FinFunctor& u);

/// pi_1(u) is an equivalence of groupoids.
Verdict w1_class(const FinFunctor& u, std::uint64_t budget = kDefaultBudget);

}  // namespace gtc
