#pragma once

#include <string_view>

#include <nlohmann/json.hpp>

namespace gtc {

using Json = nlohmann::json;

enum class Answer { Yes, No, Unknown };

inline std::string_view to_string(Answer a) {
  switch (a) {
    case Answer::Yes: return "yes";
    case Answer::No: return "no";
    case Answer::Unknown: return "unknown";
  }
  return "unknown";
}

/// A three-valued answer with the witness that justifies it.
struct Verdict {
  Answer answer = Answer::Unknown;
  Json evidence = Json::object();

  static Verdict yes(Json evidence) { return {Answer::Yes, std::move(evidence)}; }
  static Verdict no(Json evidence) { return {Answer::No, std::move(evidence)}; }
  static Verdict unknown(Json evidence) { return {Answer::Unknown, std::move(evidence)}; }

  bool is_yes() const { return answer == Answer::Yes; }
  bool is_no() const { return answer == Answer::No; }
  bool is_unknown() const { return answer == Answer::Unknown; }
};

/// Three-valued conjunction: No dominates, then Unknown.
inline Answer conjoin(Answer a, Answer b) {
  if (a == Answer::No || b == Answer::No) return Answer::No;
  if (a == Answer::Unknown || b == Answer::Unknown) return Answer::Unknown;
  return Answer::Yes;
}

inline Json to_json(const Verdict& v) {
  return Json{{"answer", std::string(to_string(v.answer))}, {"evidence", v.evidence}};
}

}  // namespace gtc
