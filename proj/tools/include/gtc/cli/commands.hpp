#pragma once

// Command dispatch and report assembly for the gtc tool.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gtc/cli/documents.hpp"

namespace gtc::cli {

inline constexpr const char* kToolVersion = "0.1.0";

enum class Format { Text, Structured };

struct RunConfig {
  /// "homology", "check hierarchy", ...
  std::string command;
  std::vector<std::filesystem::path> inputs;
  LocalizerSpec localizer = LocalizerSpec::w1();
  /// Enumeration cap for functor and morphism searches.
  std::uint64_t cap = EnumerationLimits{}.cap;
  std::optional<std::filesystem::path> catalog;
  std::optional<std::filesystem::path> output;
  Format format = Format::Text;
  /// Object id for pi1, iso-suite and similar per-object commands.
  std::optional<std::string> object;
};

/// 0 all Yes, 1 some No, 2 some Unknown and no No, 3 input error.
enum ExitCode : int { kPass = 0, kFail = 1, kUndecided = 2, kInputError = 3 };

struct RunResult {
  Json report;
  int exit_code = kInputError;
};

std::vector<std::string> commands();

/// Never throws; input problems become exit code 3 with an "error" entry.
RunResult dispatch(const RunConfig& config);

/// The report without its "timings" member.
Json without_timings(Json report);

std::string render_text(const Json& report);

/// Lowercase hex SHA-256 of the file contents.
std::string sha256_file(const std::filesystem::path& path);

}  // namespace gtc::cli
