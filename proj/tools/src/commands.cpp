#include "gtc/cli/commands.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <sstream>

#include <openssl/evp.h>

#include "gtc/error.hpp"
#include "gtc/homology.hpp"

namespace gtc::cli {

namespace {

struct Outcome {
  std::string check;
  Answer answer = Answer::Unknown;
  Json result = Json::object();
};

struct Context {
  const RunConfig& config;
  std::vector<Document> docs;
  std::optional<Catalog> catalog;
  EnumerationLimits limits;
};

using Handler = std::function<void(Context&, std::vector<Outcome>&)>;

struct CommandSpec {
  std::size_t inputs;
  Handler run;
};

Answer from_bool(bool b) { return b ? Answer::Yes : Answer::No; }

Outcome verdict_outcome(std::string check, const Verdict& v) {
  return {std::move(check), v.answer, to_json(v)};
}

Json sizes(const FinCategory& c) { return Json{{"objects", c.num_objects()}, {"morphisms", c.num_morphisms()}}; }

const CatPtr& category_input(const Context& ctx, std::size_t n) {
  return expect<CatPtr>(ctx.docs.at(n), "category");
}

const PresheafPtr& presheaf_input(const Context& ctx, std::size_t n) {
  return expect<PresheafPtr>(ctx.docs.at(n), "presheaf");
}

std::vector<Obj> selected_objects(const Context& ctx, const FinCategory& c) {
  std::vector<Obj> out;
  if (ctx.config.object) {
    auto x = c.find_object(*ctx.config.object);
    if (!x) throw Error(ErrorCode::ValidationError, "unknown object '" + *ctx.config.object + "'");
    out.push_back(*x);
  } else {
    for (Obj x = 0; x < c.num_objects(); ++x) out.push_back(x);
  }
  return out;
}

void run_validate(Context& ctx, std::vector<Outcome>& out) {
  for (std::size_t n = 0; n < ctx.docs.size(); ++n) {
    out.push_back({"validate", Answer::Yes,
                   {{"input", ctx.config.inputs[n].string()},
                    {"kind", ctx.docs[n].kind},
                    {"summary", summarize(ctx.docs[n])}}});
  }
}

void run_elements(Context& ctx, std::vector<Outcome>& out, bool groupoidal) {
  const PresheafPtr& x = presheaf_input(ctx, 0);
  const ElementsResult el = groupoidal ? elements(x) : grothendieck(x);
  const FibrationReport fib = is_grothendieck_fibration(el.zeta);
  out.push_back({groupoidal ? "elements" : "grothendieck", from_bool(fib.is_fibration),
                 {{"summary", sizes(*el.total)}, {"zeta_fibration", fib.is_fibration}, {"category", serialize(*el.total)}}});
}

void run_nerve(Context& ctx, std::vector<Outcome>& out) {
  const CatPtr& c = category_input(ctx, 0);
  const TruncatedNerve n = nerve(c, ctx.config.localizer.dimension, ctx.limits);
  out.push_back({"nerve", Answer::Yes, {{"dimension", n.bound}, {"sizes", n.sizes()}}});
}

void run_homology(Context& ctx, std::vector<Outcome>& out) {
  const CatPtr& c = category_input(ctx, 0);
  const HomologyReport h = homology(c, ctx.config.localizer.dimension, ctx.limits);
  out.push_back({"homology", Answer::Yes, {{"validity_bound", h.validity_bound}, {"groups", to_json(h)}}});
}

void run_pi1(Context& ctx, std::vector<Outcome>& out) {
  const CatPtr& c = category_input(ctx, 0);
  const FPGroupoid g = localize(c);
  std::vector<std::size_t> comps;
  if (ctx.config.object) {
    comps.push_back(g.component_of[selected_objects(ctx, *c).front()]);
  } else {
    for (std::size_t k = 0; k < g.components.size(); ++k) comps.push_back(k);
  }
  for (std::size_t k : comps) {
    const FPComponent& comp = g.components[k];
    const GroupPresentation& p = vertex_group(g, k);
    out.push_back({"pi1",
                   Answer::Yes,
                   {{"component", k},
                    {"base", c->object_id(comp.base)},
                    {"members", comp.members.size()},
                    {"presentation", to_json(p)},
                    {"abelianization", to_json(abelianization(p))}}});
  }
}

FinFunctor functor_or_terminal(const Document& d) {
  if (const CatPtr* c = std::get_if<CatPtr>(&d.value)) return FinFunctor::to_terminal(*c, standard::terminal());
  return expect<FinFunctor>(d, "functor");
}

void run_w1(Context& ctx, std::vector<Outcome>& out) {
  const FinFunctor u = functor_or_terminal(ctx.docs.at(0));
  out.push_back(verdict_outcome("w1", w1_class(u, ctx.config.localizer.budget)));
}

void run_istar(Context& ctx, std::vector<Outcome>& out) {
  const CatDiagram& i = expect<CatDiagram>(ctx.docs.at(0), "diagram");
  const IStar ic = i_star(i, category_input(ctx, 1), false, ctx.limits);
  out.push_back({"istar", Answer::Yes, {{"presheaf", make_document("presheaf", serialize(*ic.presheaf))}}});
}

void run_counit(Context& ctx, std::vector<Outcome>& out) {
  const CatDiagram& i = expect<CatDiagram>(ctx.docs.at(0), "diagram");
  const FinFunctor alpha = counit_alpha(i, category_input(ctx, 1), ctx.limits);
  out.push_back({"counit", Answer::Yes, {{"source", sizes(*alpha.dom())}, {"functor", serialize_maps(alpha)}}});
}

void run_transpose(Context& ctx, std::vector<Outcome>& out) {
  const AdjunctionReport r = adjunction_transpose(presheaf_input(ctx, 0), category_input(ctx, 1), ctx.limits);
  out.push_back({"transpose",
                 from_bool(r.ok()),
                 {{"functors", r.functor_count},
                  {"presheaf_morphisms", r.morphism_count},
                  {"bijective", r.bijective},
                  {"unit_triangle", r.unit_triangle},
                  {"counit_triangle", r.counit_triangle}}});
}

void run_sieve(Context& ctx, std::vector<Outcome>& out) {
  const MultiplicativeInterval& l = expect<MultiplicativeInterval>(ctx.docs.at(0), "interval");
  try {
    const SieveResult s = sieve_classifier(l.interval, ctx.limits);
    Json comps = Json::object();
    const FinCategory& a = *l.interval.presheaf->base();
    for (Obj o = 0; o < a.num_objects(); ++o) comps[a.object_id(o)] = serialize_maps(s.classifier.component(o));
    out.push_back({"sieve", Answer::Yes, {{"u", serialize_maps(s.u)}, {"classifier", comps}}});
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotStronglySeparating) throw;
    out.push_back({"sieve", Answer::No, {{"error", std::string(to_string(e.code()))}, {"message", e.what()}}});
  }
}

void run_aspherical(Context& ctx, std::vector<Outcome>& out) {
  out.push_back(verdict_outcome("aspherical", is_aspherical(category_input(ctx, 0), ctx.config.localizer)));
}

void run_morphism(Context& ctx, std::vector<Outcome>& out) {
  const FinFunctor u = functor_or_terminal(ctx.docs.at(0));
  out.push_back(verdict_outcome("aspherical_morphism", is_aspherical_morphism(u, ctx.config.localizer)));
}

const Catalog& catalog_of(Context& ctx) {
  if (!ctx.catalog) ctx.catalog = default_weak_test_catalog();
  return *ctx.catalog;
}

void run_hierarchy(Context& ctx, std::vector<Outcome>& out) {
  const HierarchyReport r = check_hierarchy(category_input(ctx, 0), ctx.config.localizer, catalog_of(ctx), ctx.limits);
  out.push_back(verdict_outcome("aspherical", r.aspherical));
  out.push_back(verdict_outcome("totally_aspherical", r.totally_aspherical));
  out.push_back(verdict_outcome("local_test", r.local_test));
  out.push_back(verdict_outcome("test", r.test));
  out.push_back(verdict_outcome("strict_test", r.strict_test));
  Outcome weak = verdict_outcome("weak_test", r.weak_test);
  weak.result["catalog"] = r.catalog_id;
  out.push_back(std::move(weak));
  out.push_back({"cross_check",
                 from_bool(r.interval_cross_check && r.local_test_paths_agree),
                 {{"interval_equal", r.interval_cross_check}, {"local_test_paths_agree", r.local_test_paths_agree}}});
  out.push_back({"implications", from_bool(r.implications_consistent()), Json::object()});
}

void run_weak_test(Context& ctx, std::vector<Outcome>& out) {
  Outcome o = verdict_outcome(
      "weak_test", weak_test_evidence(category_input(ctx, 0), catalog_of(ctx), ctx.config.localizer, ctx.limits));
  o.result["catalog"] = catalog_of(ctx).id;
  out.push_back(std::move(o));
}

void run_interval(Context& ctx, std::vector<Outcome>& out) {
  const MultiplicativeInterval& l = expect<MultiplicativeInterval>(ctx.docs.at(0), "interval");
  const SeparationReport s = is_strongly_separating(l.interval);
  Json sep{{"separating", s.separating}};
  if (s.witness) {
    const bool cat = l.interval.ambient == Interval::Ambient::Category;
    const FinCategory& value = cat ? *l.interval.category : *l.interval.presheaf->value(s.witness->first);
    sep["witness"] = {{"object", cat ? "*" : l.interval.presheaf->base()->object_id(s.witness->first)},
                      {"isomorphism", value.morphism_id(s.witness->second)}};
  }
  out.push_back({"strongly_separating", from_bool(s.separating), std::move(sep)});
  if (l.op || l.op_presheaf) {
    const MultiplicativeCheck m = verify_multiplicative(l);
    Json res{{"ok", m.ok}};
    if (!m.ok) res["failure"] = m.failure;
    out.push_back({"multiplicative", from_bool(m.ok), std::move(res)});
  }
}

void run_iso_suite(Context& ctx, std::vector<Outcome>& out) {
  const PresheafPtr& x = presheaf_input(ctx, 0);
  for (Obj a : selected_objects(ctx, *x->base())) {
    const std::string id = x->base()->object_id(a);
    try {
      const IsoSuite s = canonical_iso_suite(x, a);
      out.push_back({"iso_suite",
                     Answer::Yes,
                     {{"object", id},
                      {"product_elements", sizes(*s.product_elements.total)},
                      {"restricted_elements", sizes(*s.restricted_elements.total)},
                      {"zeta_slice", sizes(*s.zeta_slice.category)}}});
    } catch (const Error& e) {
      if (e.code() != ErrorCode::IsoVerificationFailed) throw;
      out.push_back({"iso_suite", Answer::No, {{"object", id}, {"message", e.what()}}});
    }
  }
}

void run_thomason(Context& ctx, std::vector<Outcome>& out) {
  const PresheafMorphism& phi = expect<PresheafMorphism>(ctx.docs.at(0), "presheaf_morphism");
  const ThomasonRecord r = thomason_check(phi, ctx.config.localizer);
  out.push_back({"thomason", from_bool(r.consistent), to_json(r)});
}

const std::map<std::string, CommandSpec>& command_table() {
  static const std::map<std::string, CommandSpec> table{
      {"validate", {1, run_validate}},
      {"elements", {1, [](Context& c, std::vector<Outcome>& o) { run_elements(c, o, true); }}},
      {"grothendieck", {1, [](Context& c, std::vector<Outcome>& o) { run_elements(c, o, false); }}},
      {"nerve", {1, run_nerve}},
      {"homology", {1, run_homology}},
      {"pi1", {1, run_pi1}},
      {"w1", {1, run_w1}},
      {"istar", {2, run_istar}},
      {"counit", {2, run_counit}},
      {"transpose", {2, run_transpose}},
      {"sieve", {1, run_sieve}},
      {"check aspherical", {1, run_aspherical}},
      {"check morphism", {1, run_morphism}},
      {"check hierarchy", {1, run_hierarchy}},
      {"check weak-test", {1, run_weak_test}},
      {"check interval", {1, run_interval}},
      {"check iso-suite", {1, run_iso_suite}},
      {"check thomason", {1, run_thomason}},
  };
  return table;
}

bool is_input_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::SizeExceeded:
    case ErrorCode::IsoVerificationFailed:
    case ErrorCode::IsoSearchFailed:
    case ErrorCode::NotStronglySeparating:
      return false;
    default:
      return true;
  }
}

Json error_json(const Error& e) {
  return Json{{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
}

const char* status_name(int code) {
  switch (code) {
    case kPass: return "pass";
    case kFail: return "fail";
    case kUndecided: return "undecided";
    default: return "input_error";
  }
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

}  // namespace

std::vector<std::string> commands() {
  std::vector<std::string> out;
  for (const auto& [name, _] : command_table()) out.push_back(name);
  return out;
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, path.string() + ": cannot open file");
  EVP_MD_CTX* md = EVP_MD_CTX_new();
  EVP_DigestInit_ex(md, EVP_sha256(), nullptr);
  char buf[1 << 14];
  while (in) {
    in.read(buf, sizeof buf);
    EVP_DigestUpdate(md, buf, static_cast<std::size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(md, digest, &len);
  EVP_MD_CTX_free(md);
  std::ostringstream hex;
  for (unsigned i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return hex.str();
}

RunResult dispatch(const RunConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  Json report{{"schema", kSchema},
              {"tool", {{"name", "gtc"}, {"version", kToolVersion}}},
              {"command", config.command},
              {"config",
               {{"localizer", std::string(to_string(config.localizer.kind))},
                {"budget", config.localizer.budget},
                {"dimension", config.localizer.dimension},
                {"cap", config.cap}}},
              {"inputs", Json::array()},
              {"results", Json::array()}};
  if (config.object) report["config"]["object"] = *config.object;
  if (config.catalog) report["config"]["catalog"] = config.catalog->string();

  auto finish = [&](int code) {
    report["status"] = status_name(code);
    report["exit_code"] = code;
    report["timings"]["total_ms"] = elapsed_ms(start);
    return RunResult{std::move(report), code};
  };

  auto it = command_table().find(config.command);
  if (it == command_table().end()) {
    report["error"] = {{"code", "ParseError"}, {"message", "unknown command '" + config.command + "'"}};
    return finish(kInputError);
  }
  if (config.inputs.size() < it->second.inputs) {
    report["error"] = {{"code", "ParseError"},
                       {"message", "'" + config.command + "' needs " + std::to_string(it->second.inputs) + " input(s)"}};
    return finish(kInputError);
  }

  Context ctx{config, {}, std::nullopt, EnumerationLimits{config.cap}};
  try {
    for (const auto& path : config.inputs) {
      report["inputs"].push_back({{"path", path.generic_string()}, {"sha256", sha256_file(path)}});
      ctx.docs.push_back(load_document(path));
    }
    if (config.catalog) {
      report["inputs"].push_back({{"path", config.catalog->generic_string()}, {"sha256", sha256_file(*config.catalog)}});
      ctx.catalog = expect<Catalog>(load_document(*config.catalog), "catalog");
    }
  } catch (const Error& e) {
    report["error"] = error_json(e);
    return finish(kInputError);
  }

  std::vector<Outcome> outcomes;
  try {
    it->second.run(ctx, outcomes);
  } catch (const Error& e) {
    if (is_input_error(e.code())) {
      report["error"] = error_json(e);
      return finish(kInputError);
    }
    Outcome o{config.command, e.code() == ErrorCode::SizeExceeded ? Answer::Unknown : Answer::No, error_json(e)};
    outcomes.push_back(std::move(o));
  }

  Answer overall = Answer::Yes;
  const double run_ms = elapsed_ms(start);
  for (auto& o : outcomes) {
    overall = conjoin(overall, o.answer);
    report["results"].push_back({{"check", o.check}, {"answer", std::string(to_string(o.answer))}, {"result", o.result}});
  }
  report["timings"]["run_ms"] = run_ms;
  const int code = overall == Answer::Yes ? kPass : overall == Answer::No ? kFail : kUndecided;
  return finish(code);
}

Json without_timings(Json report) {
  report.erase("timings");
  return report;
}

std::string render_text(const Json& report) {
  std::ostringstream out;
  out << "gtc " << report["tool"]["version"].get<std::string>() << " " << report["command"].get<std::string>()
      << "\n";
  for (const auto& in : report["inputs"]) {
    out << "input " << in["path"].get<std::string>() << " sha256:" << in["sha256"].get<std::string>() << "\n";
  }
  if (report.contains("error")) {
    out << "error " << report["error"]["message"].get<std::string>() << "\n";
  }
  for (const auto& r : report["results"]) {
    out << r["check"].get<std::string>() << ": " << r["answer"].get<std::string>() << "\n";
    out << "  " << r["result"].dump() << "\n";
  }
  out << "status " << report["status"].get<std::string>() << " (exit " << report["exit_code"].get<int>() << ")\n";
  return out.str();
}

}  // namespace gtc::cli
