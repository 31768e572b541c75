#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mulhopf/spec_file.hpp"

namespace mulhopf {

inline constexpr const char* tool_version = "1.0.0";

/// FNV-1a, 64 bit.
std::uint64_t fnv1a64(std::string_view data);

struct RunOptions {
  std::optional<int> window;     // overrides the spec file
  std::optional<int> expansion;
  std::uint64_t seed = 1;
  int probes = 8;                // seeded convolution probes in check-hopf
  bool timing = false;
};

enum class EntryStatus { proven, holds_on_window, failed, window_insufficient };

struct ReportEntry {
  std::string axiom;
  std::string anchor;
  EntryStatus status = EntryStatus::proven;
  std::string window;
  std::vector<std::string> witness;
  std::string detail;
  std::optional<double> timing_ms;
};

struct Report {
  std::string command;
  std::string input;
  std::uint64_t digest = 0;
  int window = 0;
  int expansion = 0;
  std::uint64_t seed = 0;
  std::vector<ReportEntry> entries;
  std::optional<std::string> classification;
  // Synthesized tables in basis order.
  std::vector<std::pair<std::string, std::string>> counit_table, antipode_table;
  std::optional<std::size_t> multiplier_dimension;
};

const std::vector<std::string>& commands();

/// Axiom id → anchor formula, one per implemented check.
const std::vector<std::pair<std::string, std::string>>& axiom_anchors();

/// `input` names the spec for the report; `digest_source` is the hashed text.
Report run(const std::string& command, const SpecFile& spec, const std::string& input,
           std::string_view digest_source, const RunOptions& options);

/// 0 all entries non-failed, 1 some failed, 2 window insufficient (and none failed).
int exit_code(const Report& r);

std::string to_json(const Report& r);
std::string to_text(const Report& r);

}  // namespace mulhopf
