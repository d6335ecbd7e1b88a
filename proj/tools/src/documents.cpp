#include "gtc/cli/documents.hpp"

#include <fstream>
#include <sstream>
#include <tuple>

#include "gtc/error.hpp"

namespace gtc::cli {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void parse_error(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::ParseError, where + ": " + what);
}

[[noreturn]] void validation_error(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::ValidationError, where + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) parse_error(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) parse_error(where, std::string("missing field '") + key + "'");
  return *it;
}

std::string string_at(const Json& j, const std::string& where) {
  if (!j.is_string()) parse_error(where, "expected a string, got " + j.dump());
  std::string s = j.get<std::string>();
  if (s.empty()) parse_error(where, "empty id");
  for (char ch : s) {
    if (static_cast<unsigned char>(ch) <= ' ') parse_error(where, "id '" + s + "' contains whitespace");
  }
  return s;
}

ValueKind parse_kind(const Json& j, const std::string& where) {
  const std::string s = string_at(j, where);
  if (s == "set") return ValueKind::Set;
  if (s == "groupoid") return ValueKind::Groupoid;
  if (s == "category") return ValueKind::Category;
  parse_error(where, "unknown value kind '" + s + "'");
}

std::string kind_name(ValueKind k) {
  switch (k) {
    case ValueKind::Set: return "set";
    case ValueKind::Groupoid: return "groupoid";
    case ValueKind::Category: return "category";
  }
  return "category";
}

Obj object_named(const FinCategory& c, const Json& j, const std::string& where) {
  const std::string id = string_at(j, where);
  if (auto x = c.find_object(id)) return *x;
  validation_error(where, "unknown object '" + id + "'");
}

Mor morphism_named(const FinCategory& c, const Json& j, const std::string& where) {
  const std::string id = string_at(j, where);
  if (auto f = c.find_morphism(id)) return *f;
  validation_error(where, "unknown morphism '" + id + "'");
}

class Parser {
 public:
  explicit Parser(fs::path base_dir) : base_dir_(std::move(base_dir)) {}

  CatPtr category(const Json& j, const std::string& where);
  PresheafPtr presheaf(const Json& j, const std::string& where);
  CatDiagram diagram(const Json& j, const std::string& where);
  MultiplicativeInterval interval(const Json& j, const std::string& where);
  FinFunctor functor(const Json& j, const std::string& where);
  PresheafMorphism presheaf_morphism(const Json& j, const std::string& where);
  Catalog catalog(const Json& j, const std::string& where);

  FinFunctor maps(const Json& j, const CatPtr& dom, const CatPtr& cod, const std::string& where);

 private:
  // Loads {"file": path} of the given kind.
  Document referenced(const Json& j, std::string_view kind, const std::string& where);

  fs::path base_dir_;
};

Document Parser::referenced(const Json& j, std::string_view kind, const std::string& where) {
  const fs::path path = base_dir_ / string_at(j, where);
  Document d = load_document(path);
  if (d.kind != kind) validation_error(where, "'" + path.string() + "' is a " + d.kind + ", not a " + std::string(kind));
  return d;
}

CatPtr Parser::category(const Json& j, const std::string& where) {
  if (!j.is_object()) parse_error(where, "expected a category body");
  if (j.contains("file")) return std::get<CatPtr>(referenced(j["file"], "category", where + ".file").value);
  if (j.contains("builtin")) {
    StandardSpec spec{string_at(j["builtin"], where + ".builtin"), {}};
    if (j.contains("parameters")) {
      const Json& ps = j["parameters"];
      if (!ps.is_array()) parse_error(where + ".parameters", "expected an array");
      for (const auto& p : ps) {
        if (!p.is_number_unsigned()) parse_error(where + ".parameters", "expected non-negative integers");
        spec.parameters.push_back(p.get<unsigned>());
      }
    }
    try {
      return build_standard(spec);
    } catch (const Error& e) {
      validation_error(where, e.what());
    }
  }
  for (const char* op : {"product", "coproduct"}) {
    if (!j.contains(op)) continue;
    const Json& pair = j[op];
    if (!pair.is_array() || pair.size() != 2) parse_error(where + "." + op, "expected two categories");
    CatPtr a = category(pair[0], where + "." + op + "[0]");
    CatPtr b = category(pair[1], where + "." + op + "[1]");
    return std::string(op) == "product" ? standard::product(a, b) : standard::coproduct(a, b);
  }
  if (j.contains("opposite")) return standard::opposite(category(j["opposite"], where + ".opposite"));

  CategoryBuilder b;
  const Json& objects = field(j, "objects", where);
  if (!objects.is_array()) parse_error(where + ".objects", "expected an array");
  for (std::size_t n = 0; n < objects.size(); ++n) {
    b.add_object(string_at(objects[n], where + ".objects[" + std::to_string(n) + "]"));
  }
  const Json identities = j.value("identities", Json::object());
  if (!identities.is_object()) parse_error(where + ".identities", "expected an object");
  std::vector<std::string> identity_names;
  for (Obj x = 0; x < b.num_objects(); ++x) {
    const std::string& id = objects[x].get_ref<const std::string&>();
    auto it = identities.find(id);
    identity_names.push_back(it != identities.end() ? string_at(*it, where + ".identities." + id) : "id_" + id);
  }
  for (const auto& [id, _] : identities.items()) {
    if (!b.find_object(id)) validation_error(where + ".identities", "unknown object '" + id + "'");
  }
  const Json morphisms = j.value("morphisms", Json::array());
  if (!morphisms.is_array()) parse_error(where + ".morphisms", "expected an array");
  // An entry naming an identity fixes its position; the others come first.
  std::vector<std::tuple<std::string, Obj, Obj>> entries;
  std::vector<bool> listed(b.num_objects(), false);
  for (std::size_t n = 0; n < morphisms.size(); ++n) {
    const std::string w = where + ".morphisms[" + std::to_string(n) + "]";
    const Json& m = morphisms[n];
    if (!m.is_array() || m.size() != 3) parse_error(w, "expected [id, source, target], got " + m.dump());
    const std::string id = string_at(m[0], w);
    auto src = b.find_object(string_at(m[1], w));
    auto tgt = b.find_object(string_at(m[2], w));
    if (!src || !tgt) validation_error(w, "morphism '" + id + "' has an unknown endpoint");
    if (*src == *tgt && id == identity_names[*src]) listed[*src] = true;
    entries.emplace_back(id, *src, *tgt);
  }
  for (Obj x = 0; x < b.num_objects(); ++x) {
    if (!listed[x]) b.add_identity(x, identity_names[x]);
  }
  for (const auto& [id, src, tgt] : entries) {
    if (src == tgt && listed[src] && id == identity_names[src]) {
      b.add_identity(src, id);
    } else {
      b.add_morphism(id, src, tgt);
    }
  }
  const Json compose = j.value("compose", Json::array());
  if (!compose.is_array()) parse_error(where + ".compose", "expected an array");
  for (std::size_t n = 0; n < compose.size(); ++n) {
    const std::string w = where + ".compose[" + std::to_string(n) + "]";
    const Json& t = compose[n];
    if (!t.is_array() || t.size() != 3 || !t[0].is_string() || !t[1].is_string() || !t[2].is_string()) {
      parse_error(w, "malformed compose triple " + t.dump() + ", expected [g, f, g o f]");
    }
    Mor m[3];
    for (int k = 0; k < 3; ++k) {
      auto f = b.find_morphism(t[k].get<std::string>());
      if (!f) validation_error(w, "unknown morphism '" + t[k].get<std::string>() + "' in " + t.dump());
      m[k] = *f;
    }
    b.set_composite(m[0], m[1], m[2]);
  }
  return b.build();
}

FinFunctor Parser::maps(const Json& j, const CatPtr& dom, const CatPtr& cod, const std::string& where) {
  if (!j.is_object()) parse_error(where, "expected {\"objects\": ..., \"morphisms\": ...}");
  const Json objects = j.value("objects", Json::object());
  const Json morphisms = j.value("morphisms", Json::object());
  if (!objects.is_object() || !morphisms.is_object()) parse_error(where, "maps must be objects keyed by id");
  std::vector<Obj> omap(dom->num_objects(), kUnset);
  std::vector<Mor> mmap(dom->num_morphisms(), kUnset);
  for (const auto& [id, img] : objects.items()) {
    auto x = dom->find_object(id);
    if (!x) validation_error(where + ".objects", "unknown object '" + id + "'");
    omap[*x] = object_named(*cod, img, where + ".objects." + id);
  }
  for (Obj x = 0; x < dom->num_objects(); ++x) {
    if (omap[x] == kUnset) validation_error(where + ".objects", "no image for '" + dom->object_id(x) + "'");
  }
  for (const auto& [id, img] : morphisms.items()) {
    auto f = dom->find_morphism(id);
    if (!f) validation_error(where + ".morphisms", "unknown morphism '" + id + "'");
    mmap[*f] = morphism_named(*cod, img, where + ".morphisms." + id);
  }
  for (Mor f = 0; f < dom->num_morphisms(); ++f) {
    if (mmap[f] != kUnset) continue;
    if (!dom->is_identity(f)) validation_error(where + ".morphisms", "no image for '" + dom->morphism_id(f) + "'");
    mmap[f] = cod->identity(omap[dom->src(f)]);
  }
  return FinFunctor(dom, cod, std::move(omap), std::move(mmap));
}

PresheafPtr Parser::presheaf(const Json& j, const std::string& where) {
  if (!j.is_object()) parse_error(where, "expected a presheaf body");
  if (j.contains("file")) return std::get<PresheafPtr>(referenced(j["file"], "presheaf", where + ".file").value);
  if (j.contains("terminal")) return presheaves::terminal(category(j["terminal"], where + ".terminal"));
  if (j.contains("representable")) {
    const Json& r = j["representable"];
    CatPtr base = category(field(r, "base", where + ".representable"), where + ".representable.base");
    return presheaves::representable(base, object_named(*base, field(r, "object", where), where + ".object"));
  }
  if (j.contains("constant")) {
    const Json& c = j["constant"];
    const std::string w = where + ".constant";
    return presheaves::constant(category(field(c, "base", w), w + ".base"), category(field(c, "value", w), w + ".value"),
                                parse_kind(field(c, "kind", w), w + ".kind"));
  }
  if (j.contains("product")) {
    const Json& pair = j["product"];
    if (!pair.is_array() || pair.size() != 2) parse_error(where + ".product", "expected two presheaves");
    return presheaves::product(presheaf(pair[0], where + ".product[0]"), presheaf(pair[1], where + ".product[1]"));
  }
  if (j.contains("istar")) {
    const Json& s = j["istar"];
    const std::string w = where + ".istar";
    const CatDiagram d = diagram(field(s, "diagram", w), w + ".diagram");
    const CatPtr c = category(field(s, "target", w), w + ".target");
    return i_star(d, c, s.value("set_valued", false)).presheaf;
  }

  CatPtr base = category(field(j, "base", where), where + ".base");
  const ValueKind kind = parse_kind(field(j, "kind", where), where + ".kind");
  const Json& values = field(j, "values", where);
  if (!values.is_object()) parse_error(where + ".values", "expected an object keyed by base object");
  std::vector<CatPtr> vs(base->num_objects());
  for (const auto& [id, body] : values.items()) {
    auto a = base->find_object(id);
    if (!a) validation_error(where + ".values", "unknown base object '" + id + "'");
    vs[*a] = category(body, where + ".values." + id);
  }
  for (Obj a = 0; a < base->num_objects(); ++a) {
    if (!vs[a]) validation_error(where + ".values", "no value at '" + base->object_id(a) + "'");
  }
  const Json actions = j.value("actions", Json::object());
  if (!actions.is_object()) parse_error(where + ".actions", "expected an object keyed by base morphism");
  std::vector<std::optional<FinFunctor>> acts(base->num_morphisms());
  for (const auto& [id, body] : actions.items()) {
    auto f = base->find_morphism(id);
    if (!f) validation_error(where + ".actions", "unknown base morphism '" + id + "'");
    acts[*f] = maps(body, vs[base->tgt(*f)], vs[base->src(*f)], where + ".actions." + id);
  }
  std::vector<FinFunctor> out;
  for (Mor f = 0; f < base->num_morphisms(); ++f) {
    if (acts[f]) {
      out.push_back(*acts[f]);
    } else if (base->is_identity(f)) {
      out.push_back(FinFunctor::identity(vs[base->src(f)]));
    } else {
      validation_error(where + ".actions", "no action for '" + base->morphism_id(f) + "'");
    }
  }
  return std::make_shared<const Presheaf>(base, kind, std::move(vs), std::move(out));
}

CatDiagram Parser::diagram(const Json& j, const std::string& where) {
  if (!j.is_object()) parse_error(where, "expected a diagram body");
  if (j.contains("file")) return std::get<CatDiagram>(referenced(j["file"], "diagram", where + ".file").value);
  if (j.contains("slice")) return slice_diagram(category(j["slice"], where + ".slice"));
  CatDiagram d;
  d.base = category(field(j, "base", where), where + ".base");
  const FinCategory& a = *d.base;
  const Json& values = field(j, "values", where);
  if (!values.is_object()) parse_error(where + ".values", "expected an object keyed by base object");
  d.values.resize(a.num_objects());
  for (const auto& [id, body] : values.items()) {
    auto x = a.find_object(id);
    if (!x) validation_error(where + ".values", "unknown base object '" + id + "'");
    d.values[*x] = category(body, where + ".values." + id);
  }
  for (Obj x = 0; x < a.num_objects(); ++x) {
    if (!d.values[x]) validation_error(where + ".values", "no value at '" + a.object_id(x) + "'");
  }
  const Json actions = j.value("actions", Json::object());
  std::vector<std::optional<FinFunctor>> acts(a.num_morphisms());
  for (const auto& [id, body] : actions.items()) {
    auto f = a.find_morphism(id);
    if (!f) validation_error(where + ".actions", "unknown base morphism '" + id + "'");
    acts[*f] = maps(body, d.values[a.src(*f)], d.values[a.tgt(*f)], where + ".actions." + id);
  }
  for (Mor f = 0; f < a.num_morphisms(); ++f) {
    if (acts[f]) {
      d.actions.push_back(*acts[f]);
    } else if (a.is_identity(f)) {
      d.actions.push_back(FinFunctor::identity(d.values[a.src(f)]));
    } else {
      validation_error(where + ".actions", "no action for '" + a.morphism_id(f) + "'");
    }
  }
  if (j.contains("terminals")) {
    const Json& t = j["terminals"];
    std::vector<Obj> terms(a.num_objects(), kUnset);
    for (const auto& [id, e] : t.items()) {
      auto x = a.find_object(id);
      if (!x) validation_error(where + ".terminals", "unknown base object '" + id + "'");
      terms[*x] = object_named(*d.values[*x], e, where + ".terminals." + id);
    }
    for (Obj x = 0; x < a.num_objects(); ++x) {
      if (terms[x] == kUnset) validation_error(where + ".terminals", "no terminal at '" + a.object_id(x) + "'");
    }
    d.terminals = std::move(terms);
  }
  d.validate();
  return d;
}

MultiplicativeInterval Parser::interval(const Json& j, const std::string& where) {
  if (!j.is_object()) parse_error(where, "expected an interval body");
  if (j.contains("file")) {
    return std::get<MultiplicativeInterval>(referenced(j["file"], "interval", where + ".file").value);
  }
  if (j.contains("canonical")) return canonical_multiplicative(category(j["canonical"], where + ".canonical"));
  if (j.contains("builtin")) {
    const std::string name = string_at(j["builtin"], where + ".builtin");
    if (name != "delta1_max") validation_error(where, "unknown builtin interval '" + name + "'");
    return delta1_multiplicative();
  }
  const std::string ambient = string_at(field(j, "ambient", where), where + ".ambient");
  MultiplicativeInterval l;
  if (ambient == "category") {
    CatPtr c = category(field(j, "carrier", where), where + ".carrier");
    l.interval = Interval::in_category(c, object_named(*c, field(j, "i0", where), where + ".i0"),
                                       object_named(*c, field(j, "i1", where), where + ".i1"));
    if (j.contains("op")) l.op = maps(j["op"], standard::product(c, c), c, where + ".op");
    return l;
  }
  if (ambient != "presheaf") parse_error(where + ".ambient", "expected 'category' or 'presheaf'");
  PresheafPtr x = presheaf(field(j, "carrier", where), where + ".carrier");
  const FinCategory& a = *x->base();
  auto points = [&](const char* key) {
    const Json& p = field(j, key, where);
    std::vector<Obj> out(a.num_objects(), kUnset);
    for (const auto& [id, v] : p.items()) {
      auto o = a.find_object(id);
      if (!o) validation_error(where + "." + key, "unknown base object '" + id + "'");
      out[*o] = object_named(*x->value(*o), v, where + "." + key + "." + id);
    }
    for (Obj o = 0; o < a.num_objects(); ++o) {
      if (out[o] == kUnset) validation_error(where + "." + key, "no point at '" + a.object_id(o) + "'");
    }
    return out;
  };
  l.interval = Interval::in_presheaves(x, points("i0"), points("i1"));
  if (j.contains("op")) {
    const PresheafPtr xx = presheaves::product(x, x);
    const Json& comps = field(j["op"], "components", where + ".op");
    std::vector<FinFunctor> cs;
    for (Obj o = 0; o < a.num_objects(); ++o) {
      const std::string w = where + ".op.components." + a.object_id(o);
      if (!comps.contains(a.object_id(o))) validation_error(w, "missing component");
      cs.push_back(maps(comps[a.object_id(o)], xx->value(o), x->value(o), w));
    }
    l.op_presheaf = PresheafMorphism(xx, x, std::move(cs));
  }
  return l;
}

FinFunctor Parser::functor(const Json& j, const std::string& where) {
  if (!j.is_object()) parse_error(where, "expected a functor body");
  if (j.contains("file")) return std::get<FinFunctor>(referenced(j["file"], "functor", where + ".file").value);
  if (j.contains("identity")) return FinFunctor::identity(category(j["identity"], where + ".identity"));
  if (j.contains("to_terminal")) {
    return FinFunctor::to_terminal(category(j["to_terminal"], where + ".to_terminal"), standard::terminal());
  }
  if (j.contains("constant")) {
    const Json& c = j["constant"];
    const std::string w = where + ".constant";
    CatPtr src = category(field(c, "source", w), w + ".source");
    CatPtr tgt = category(field(c, "target", w), w + ".target");
    return FinFunctor::constant(src, tgt, object_named(*tgt, field(c, "object", w), w + ".object"));
  }
  CatPtr src = category(field(j, "source", where), where + ".source");
  CatPtr tgt = category(field(j, "target", where), where + ".target");
  return maps(j, src, tgt, where);
}

PresheafMorphism Parser::presheaf_morphism(const Json& j, const std::string& where) {
  if (!j.is_object()) parse_error(where, "expected a presheaf morphism body");
  if (j.contains("file")) {
    return std::get<PresheafMorphism>(referenced(j["file"], "presheaf_morphism", where + ".file").value);
  }
  if (j.contains("identity")) return PresheafMorphism::identity(presheaf(j["identity"], where + ".identity"));
  if (j.contains("to_terminal")) {
    PresheafPtr x = presheaf(j["to_terminal"], where + ".to_terminal");
    return PresheafMorphism::to_terminal(x, presheaves::terminal(x->base()));
  }
  PresheafPtr x = presheaf(field(j, "source", where), where + ".source");
  PresheafPtr y = presheaf(field(j, "target", where), where + ".target");
  const FinCategory& a = *x->base();
  const Json& comps = field(j, "components", where);
  std::vector<FinFunctor> cs;
  for (Obj o = 0; o < a.num_objects(); ++o) {
    const std::string w = where + ".components." + a.object_id(o);
    if (!comps.contains(a.object_id(o))) validation_error(w, "missing component");
    cs.push_back(maps(comps[a.object_id(o)], x->value(o), y->value(o), w));
  }
  for (const auto& [id, _] : comps.items()) {
    if (!a.find_object(id)) validation_error(where + ".components", "unknown base object '" + id + "'");
  }
  return PresheafMorphism(x, y, std::move(cs));
}

Catalog Parser::catalog(const Json& j, const std::string& where) {
  if (!j.is_object()) parse_error(where, "expected a catalog body");
  if (j.contains("file")) return std::get<Catalog>(referenced(j["file"], "catalog", where + ".file").value);
  if (j.contains("builtin")) {
    const std::string name = string_at(j["builtin"], where + ".builtin");
    if (name != "default") validation_error(where, "unknown builtin catalog '" + name + "'");
    return default_weak_test_catalog();
  }
  Catalog c;
  c.id = string_at(field(j, "id", where), where + ".id");
  const Json& entries = field(j, "entries", where);
  if (!entries.is_array()) parse_error(where + ".entries", "expected an array");
  for (std::size_t n = 0; n < entries.size(); ++n) {
    const std::string w = where + ".entries[" + std::to_string(n) + "]";
    c.entries.emplace_back(string_at(field(entries[n], "name", w), w + ".name"),
                           category(field(entries[n], "category", w), w + ".category"));
  }
  return c;
}

}  // namespace

Json read_json(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, path.string() + ": cannot open file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    const std::size_t at = std::min<std::size_t>(e.byte, text.size());
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i + 1 < at; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw Error(ErrorCode::ParseError,
                path.string() + ":" + std::to_string(line) + ":" + std::to_string(column) + ": malformed JSON");
  }
}

Document parse_document(const Json& doc, const fs::path& base_dir) {
  if (!doc.is_object()) parse_error("document", "expected an object");
  const Json& schema = field(doc, "schema", "document");
  if (!schema.is_number_integer() || schema.get<int>() != kSchema) {
    parse_error("document.schema", "unsupported schema " + schema.dump());
  }
  const std::string kind = string_at(field(doc, "kind", "document"), "document.kind");
  const Json& body = field(doc, "body", "document");
  Parser p(base_dir);
  if (kind == "category") return {kind, p.category(body, "body")};
  if (kind == "presheaf") return {kind, p.presheaf(body, "body")};
  if (kind == "diagram") return {kind, p.diagram(body, "body")};
  if (kind == "interval") return {kind, p.interval(body, "body")};
  if (kind == "functor") return {kind, p.functor(body, "body")};
  if (kind == "presheaf_morphism") return {kind, p.presheaf_morphism(body, "body")};
  if (kind == "catalog") return {kind, p.catalog(body, "body")};
  parse_error("document.kind", "unknown kind '" + kind + "'");
}

Document load_document(const fs::path& path) {
  try {
    return parse_document(read_json(path), path.parent_path());
  } catch (const Error& e) {
    const std::string prefix = path.string() + ": ";
    const std::string what = e.what();
    // Messages from read_json already carry the path.
    if (what.find(path.string()) != std::string::npos) throw;
    const auto colon = what.find(": ");
    throw Error(e.code(), prefix + (colon == std::string::npos ? what : what.substr(colon + 2)));
  }
}

Json make_document(std::string_view kind, Json body) {
  return Json{{"schema", kSchema}, {"kind", std::string(kind)}, {"body", std::move(body)}};
}

Json serialize(const FinCategory& c) {
  Json objects = Json::array();
  Json identities = Json::object();
  Json morphisms = Json::array();
  Json compose = Json::array();
  bool default_layout = true;
  for (Obj x = 0; x < c.num_objects(); ++x) {
    objects.push_back(c.object_id(x));
    const std::string& id = c.morphism_id(c.identity(x));
    if (id != "id_" + c.object_id(x)) identities[c.object_id(x)] = id;
    if (c.identity(x) != x) default_layout = false;
  }
  for (Mor f = 0; f < c.num_morphisms(); ++f) {
    if (default_layout && c.is_identity(f)) continue;
    morphisms.push_back({c.morphism_id(f), c.object_id(c.src(f)), c.object_id(c.tgt(f))});
  }
  for (Mor f = 0; f < c.num_morphisms(); ++f) {
    if (c.is_identity(f)) continue;
    for (Mor g : c.outgoing(c.tgt(f))) {
      if (c.is_identity(g)) continue;
      compose.push_back({c.morphism_id(g), c.morphism_id(f), c.morphism_id(c.compose(g, f))});
    }
  }
  Json body{{"objects", objects}, {"morphisms", morphisms}, {"compose", compose}};
  if (!identities.empty()) body["identities"] = identities;
  return body;
}

Json serialize_maps(const FinFunctor& f) {
  const FinCategory& d = *f.dom();
  const FinCategory& c = *f.cod();
  Json objects = Json::object();
  Json morphisms = Json::object();
  for (Obj x = 0; x < d.num_objects(); ++x) objects[d.object_id(x)] = c.object_id(f(x));
  for (Mor m = 0; m < d.num_morphisms(); ++m) {
    if (!d.is_identity(m)) morphisms[d.morphism_id(m)] = c.morphism_id(f.on_morphism(m));
  }
  return Json{{"objects", objects}, {"morphisms", morphisms}};
}

Json serialize(const FinFunctor& f) {
  Json body = serialize_maps(f);
  body["source"] = serialize(*f.dom());
  body["target"] = serialize(*f.cod());
  return body;
}

Json serialize(const Presheaf& x) {
  const FinCategory& a = *x.base();
  Json values = Json::object();
  Json actions = Json::object();
  for (Obj o = 0; o < a.num_objects(); ++o) values[a.object_id(o)] = serialize(*x.value(o));
  for (Mor f = 0; f < a.num_morphisms(); ++f) {
    if (!a.is_identity(f)) actions[a.morphism_id(f)] = serialize_maps(x.action(f));
  }
  return Json{{"base", serialize(a)}, {"kind", kind_name(x.kind())}, {"values", values}, {"actions", actions}};
}

Json serialize(const PresheafMorphism& phi) {
  const FinCategory& a = *phi.source()->base();
  Json comps = Json::object();
  for (Obj o = 0; o < a.num_objects(); ++o) comps[a.object_id(o)] = serialize_maps(phi.component(o));
  return Json{{"source", serialize(*phi.source())}, {"target", serialize(*phi.target())}, {"components", comps}};
}

namespace {

Json serialize_diagram(const CatDiagram& d) {
  const FinCategory& a = *d.base;
  Json values = Json::object();
  Json actions = Json::object();
  for (Obj o = 0; o < a.num_objects(); ++o) values[a.object_id(o)] = serialize(*d.values[o]);
  for (Mor f = 0; f < a.num_morphisms(); ++f) {
    if (!a.is_identity(f)) actions[a.morphism_id(f)] = serialize_maps(d.actions[f]);
  }
  Json body{{"base", serialize(a)}, {"values", values}, {"actions", actions}};
  if (d.terminals) {
    Json t = Json::object();
    for (Obj o = 0; o < a.num_objects(); ++o) t[a.object_id(o)] = d.values[o]->object_id((*d.terminals)[o]);
    body["terminals"] = t;
  }
  return body;
}

Json serialize_interval(const MultiplicativeInterval& l) {
  const Interval& i = l.interval;
  if (i.ambient == Interval::Ambient::Category) {
    Json body{{"ambient", "category"},
              {"carrier", serialize(*i.category)},
              {"i0", i.category->object_id(i.c0)},
              {"i1", i.category->object_id(i.c1)}};
    if (l.op) body["op"] = serialize_maps(*l.op);
    return body;
  }
  const Presheaf& x = *i.presheaf;
  const FinCategory& a = *x.base();
  Json p0 = Json::object();
  Json p1 = Json::object();
  for (Obj o = 0; o < a.num_objects(); ++o) {
    p0[a.object_id(o)] = x.value(o)->object_id(i.p0[o]);
    p1[a.object_id(o)] = x.value(o)->object_id(i.p1[o]);
  }
  Json body{{"ambient", "presheaf"}, {"carrier", serialize(x)}, {"i0", p0}, {"i1", p1}};
  if (l.op_presheaf) {
    Json comps = Json::object();
    for (Obj o = 0; o < a.num_objects(); ++o) comps[a.object_id(o)] = serialize_maps(l.op_presheaf->component(o));
    body["op"] = {{"components", comps}};
  }
  return body;
}

Json serialize_catalog(const Catalog& c) {
  Json entries = Json::array();
  for (const auto& [name, cat] : c.entries) entries.push_back({{"name", name}, {"category", serialize(*cat)}});
  return Json{{"id", c.id}, {"entries", entries}};
}

}  // namespace

Json serialize(const Document& d) {
  Json body = std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, CatPtr> || std::is_same_v<T, PresheafPtr>) {
          return serialize(*v);
        } else if constexpr (std::is_same_v<T, CatDiagram>) {
          return serialize_diagram(v);
        } else if constexpr (std::is_same_v<T, MultiplicativeInterval>) {
          return serialize_interval(v);
        } else if constexpr (std::is_same_v<T, Catalog>) {
          return serialize_catalog(v);
        } else {
          return serialize(v);
        }
      },
      d.value);
  return make_document(d.kind, std::move(body));
}

Json summarize(const Document& d) {
  auto sizes = [](const FinCategory& c) {
    return Json{{"objects", c.num_objects()}, {"morphisms", c.num_morphisms()}};
  };
  return std::visit(
      [&](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, CatPtr>) {
          return sizes(*v);
        } else if constexpr (std::is_same_v<T, PresheafPtr>) {
          Json values = Json::object();
          for (Obj o = 0; o < v->base()->num_objects(); ++o) values[v->base()->object_id(o)] = sizes(*v->value(o));
          return Json{{"base", sizes(*v->base())}, {"kind", kind_name(v->kind())}, {"values", values}};
        } else if constexpr (std::is_same_v<T, CatDiagram>) {
          Json values = Json::object();
          for (Obj o = 0; o < v.base->num_objects(); ++o) values[v.base->object_id(o)] = sizes(*v.values[o]);
          return Json{{"base", sizes(*v.base)}, {"values", values}, {"terminals", v.terminals.has_value()}};
        } else if constexpr (std::is_same_v<T, MultiplicativeInterval>) {
          const bool cat = v.interval.ambient == Interval::Ambient::Category;
          return Json{{"ambient", cat ? "category" : "presheaf"}, {"multiplicative", v.op || v.op_presheaf}};
        } else if constexpr (std::is_same_v<T, FinFunctor>) {
          return Json{{"source", sizes(*v.dom())}, {"target", sizes(*v.cod())}};
        } else if constexpr (std::is_same_v<T, PresheafMorphism>) {
          return Json{{"base", sizes(*v.source()->base())}};
        } else {
          Json names = Json::array();
          for (const auto& [name, _] : v.entries) names.push_back(name);
          return Json{{"id", v.id}, {"entries", names}};
        }
      },
      d.value);
}

}  // namespace gtc::cli
