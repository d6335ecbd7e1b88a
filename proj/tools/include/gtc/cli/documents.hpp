#pragma once

// Typed JSON documents: {"schema": 1, "kind": ..., "body": ...}.
//
// Kinds: category, presheaf, diagram, interval, functor, presheaf_morphism,
// catalog. Bodies are either explicit tables or references such as
// {"builtin": "delta", "parameters": [1]}, {"product": [c, d]} or
// {"file": "other.cat"} (resolved against the including document).

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

#include "gtc/adjoints.hpp"
#include "gtc/testcat.hpp"

namespace gtc::cli {

inline constexpr int kSchema = 1;

using Value = std::variant<CatPtr, PresheafPtr, CatDiagram, MultiplicativeInterval, FinFunctor, PresheafMorphism,
                           Catalog>;

struct Document {
  std::string kind;
  Value value;
};

/// Throws ParseError with the line and column of a syntax error.
Json read_json(const std::filesystem::path& path);

/// Parses and validates. Syntax and shape problems raise ParseError naming the
/// field; unknown ids raise ValidationError; the domain validators raise their
/// own codes.
Document parse_document(const Json& doc, const std::filesystem::path& base_dir = {});
Document load_document(const std::filesystem::path& path);

template <class T>
const T& expect(const Document& d, std::string_view kind) {
  if (const T* v = std::get_if<T>(&d.value)) return *v;
  throw Error(ErrorCode::ValidationError, "expected a " + std::string(kind) + " document, got " + d.kind);
}

Json make_document(std::string_view kind, Json body);

Json serialize(const FinCategory& c);
/// {"objects": {...}, "morphisms": {...}} with identities left implicit.
Json serialize_maps(const FinFunctor& f);
Json serialize(const FinFunctor& f);
Json serialize(const Presheaf& x);
Json serialize(const PresheafMorphism& phi);
Json serialize(const Document& d);

/// Sizes and ids summarizing a value for reports.
Json summarize(const Document& d);

}  // namespace gtc::cli
