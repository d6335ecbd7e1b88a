#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "gtc/cli/documents.hpp"
#include "gtc/error.hpp"

using namespace gtc;
using namespace gtc::cli;
namespace fs = std::filesystem;

namespace {

const fs::path kCorpus = GTC_CORPUS_DIR;

std::vector<fs::path> corpus_files() {
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(kCorpus)) out.push_back(entry.path());
  std::sort(out.begin(), out.end());
  return out;
}

ErrorCode code_of(const Json& doc) {
  try {
    parse_document(doc, kCorpus);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error for " << doc.dump();
  return ErrorCode::ParseError;
}

bool same_functor(const FinFunctor& f, const FinFunctor& g) { return f == g; }

bool same_value(const Document& a, const Document& b) {
  if (a.kind != b.kind || a.value.index() != b.value.index()) return false;
  if (auto* c = std::get_if<CatPtr>(&a.value)) return same_structure(**c, *std::get<CatPtr>(b.value));
  if (auto* x = std::get_if<PresheafPtr>(&a.value)) return same_presheaf(**x, *std::get<PresheafPtr>(b.value));
  if (auto* f = std::get_if<FinFunctor>(&a.value)) return same_functor(*f, std::get<FinFunctor>(b.value));
  if (auto* phi = std::get_if<PresheafMorphism>(&a.value)) {
    const auto& psi = std::get<PresheafMorphism>(b.value);
    return same_presheaf(*phi->source(), *psi.source()) && same_presheaf(*phi->target(), *psi.target()) &&
           *phi == psi;
  }
  if (auto* d = std::get_if<CatDiagram>(&a.value)) {
    const auto& e = std::get<CatDiagram>(b.value);
    if (!same_structure(*d->base, *e.base) || d->terminals != e.terminals) return false;
    for (std::size_t n = 0; n < d->values.size(); ++n) {
      if (!same_structure(*d->values[n], *e.values[n])) return false;
    }
    return d->actions == e.actions;
  }
  if (auto* l = std::get_if<MultiplicativeInterval>(&a.value)) {
    const auto& m = std::get<MultiplicativeInterval>(b.value);
    const Interval& i = l->interval;
    const Interval& j = m.interval;
    if (i.ambient != j.ambient) return false;
    if (i.ambient == Interval::Ambient::Category) {
      return same_structure(*i.category, *j.category) && i.c0 == j.c0 && i.c1 == j.c1 &&
             l->op.has_value() == m.op.has_value() && (!l->op || *l->op == *m.op);
    }
    return same_presheaf(*i.presheaf, *j.presheaf) && i.p0 == j.p0 && i.p1 == j.p1 &&
           l->op_presheaf.has_value() == m.op_presheaf.has_value() &&
           (!l->op_presheaf || *l->op_presheaf == *m.op_presheaf);
  }
  const auto& c = std::get<Catalog>(a.value);
  const auto& d = std::get<Catalog>(b.value);
  if (c.id != d.id || c.entries.size() != d.entries.size()) return false;
  for (std::size_t n = 0; n < c.entries.size(); ++n) {
    if (c.entries[n].first != d.entries[n].first || !same_structure(*c.entries[n].second, *d.entries[n].second)) {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST(Documents, DeltaOne) {
  auto d = load_document(kCorpus / "delta1.cat");
  EXPECT_EQ(d.kind, "category");
  const auto& c = expect<CatPtr>(d, "category");
  EXPECT_EQ(c->num_morphisms(), 3u);
  EXPECT_EQ(c->num_objects(), 2u);
}

TEST(Documents, CorpusMatchesBuiltins) {
  auto cat = [](const char* name) { return expect<CatPtr>(load_document(kCorpus / name), "category"); };
  EXPECT_EQ(cat("delta3.cat")->num_morphisms(), 10u);
  EXPECT_EQ(cat("bg3.cat")->num_morphisms(), 3u);
  EXPECT_TRUE(cat("bg3.cat")->is_groupoid());
  EXPECT_TRUE(cat("free_iso.cat")->is_groupoid());
  EXPECT_EQ(cat("delta1xdelta1.cat")->num_morphisms(), standard::product(standard::delta(1), standard::delta(1))->num_morphisms());
  EXPECT_TRUE(cat("discrete2.cat")->is_discrete());
}

TEST(Documents, RoundTripCorpus) {
  const auto files = corpus_files();
  ASSERT_GE(files.size(), 20u);
  for (const auto& path : files) {
    const Document d = load_document(path);
    const Json once = serialize(d);
    const Document again = parse_document(once);
    EXPECT_TRUE(same_value(d, again)) << path;
    EXPECT_EQ(serialize(again), once) << path;
  }
}

TEST(Documents, MalformedComposeTriple) {
  const Json doc = Json::parse(R"({"schema": 1, "kind": "category",
    "body": {"objects": ["0", "1"], "morphisms": [["f", "0", "1"]], "compose": [["f", "f"]]}})");
  try {
    parse_document(doc);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
    EXPECT_NE(std::string(e.what()).find("[\"f\",\"f\"]"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("compose[0]"), std::string::npos);
  }
}

TEST(Documents, UndefinedBaseObject) {
  const Json doc = Json::parse(R"({"schema": 1, "kind": "presheaf",
    "body": {"base": {"objects": ["a"]}, "kind": "set", "values": {"zz": {"objects": ["x"]}}}})");
  EXPECT_EQ(code_of(doc), ErrorCode::ValidationError);
}

TEST(Documents, ShapeErrors) {
  EXPECT_EQ(code_of({{"schema", 2}, {"kind", "category"}, {"body", Json::object()}}), ErrorCode::ParseError);
  EXPECT_EQ(code_of({{"schema", 1}, {"kind", "sheaf"}, {"body", Json::object()}}), ErrorCode::ParseError);
  auto category = [](const char* body) {
    return Json{{"schema", 1}, {"kind", "category"}, {"body", Json::parse(body)}};
  };
  EXPECT_EQ(code_of(category(R"({"objects": ["a b"]})")), ErrorCode::ParseError);
  EXPECT_EQ(code_of(category(R"({"objects": ["a", "a"]})")), ErrorCode::ValidationError);
  EXPECT_EQ(code_of(category(R"({"objects": ["a"], "morphisms": [["f", "a", "b"]]})")), ErrorCode::ValidationError);
  EXPECT_EQ(code_of(category(R"({"objects": ["a"], "morphisms": [["f", "a"]]})")), ErrorCode::ParseError);
}

TEST(Documents, DomainValidatorsRun) {
  // f o f missing for an endomorphism.
  EXPECT_EQ(code_of(Json::parse(R"({"schema": 1, "kind": "category",
    "body": {"objects": ["a"], "morphisms": [["f", "a", "a"]]}})")),
            ErrorCode::MissingComposite);
  // v : b -> a has no image 1 -> 0 in Delta_1.
  const Json bad_functor = Json::parse(R"({"schema": 1, "kind": "functor",
    "body": {"source": {"file": "free_iso.cat"}, "target": {"file": "delta1.cat"},
             "objects": {"a": "0", "b": "1"}, "morphisms": {"u": "f01", "v": "f01"}}})");
  EXPECT_EQ(code_of(bad_functor), ErrorCode::InvalidFunctor);
}

TEST(Documents, FileReferencesResolveRelativeToDocument) {
  auto d = load_document(kCorpus / "const_bg2_e.psh");
  const auto& x = expect<PresheafPtr>(d, "presheaf");
  EXPECT_EQ(x->value(0)->num_morphisms(), 2u);
  EXPECT_THROW(expect<CatPtr>(d, "category"), Error);
}

TEST(Documents, SyntaxErrorCarriesLine) {
  const fs::path tmp = fs::temp_directory_path() / "gtc_bad_syntax.cat";
  {
    std::ofstream out(tmp);
    out << "{\"schema\": 1,\n  \"kind\": category}\n";
  }
  try {
    load_document(tmp);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
    EXPECT_NE(std::string(e.what()).find(":2:"), std::string::npos) << e.what();
  }
  fs::remove(tmp);
}
