#pragma once

// The nine acceptance criteria as a runnable suite, shared by the
// acceptance test binary and `latmatch selftest`.

#include <cstdint>
#include <string>
#include <vector>

#include "latmatch/market.hpp"

namespace latmatch::acceptance {

/// Agents of a synthesized market stay below kAgentConstant * |X|^4.
inline constexpr double kAgentConstant = 1.0;

struct Criterion {
  int number = 0;
  std::string title;
  bool ok = true;
  double seconds = 0;
  double limit_seconds = 0;
  std::string detail;                 // summary on success, first failures otherwise
  std::vector<std::string> failures;  // every failed check, with its witness
};

struct Options {
  std::uint64_t seed = 1;
  std::uint64_t node_bound = kDefaultNodeBound;
};

/// Runs every criterion in order. Criterion 6 reuses the markets built by 4
/// and 5, so `only` still runs those when 6 is requested.
std::vector<Criterion> run(const Options& opts = {}, const std::vector<int>& only = {});

/// "criterion N PASS|FAIL  <seconds>s/<limit>s  title: detail"
std::string format_line(const Criterion& c);

}  // namespace latmatch::acceptance
