// Command-line orchestration. Subcommands:
//   optimize  - run the GA filling sweep, write sweep.csv, generations.csv,
//               best_chromosomes.tsv, run_manifest.txt and optional SVG plots
//   baseline  - fitness of the uniform hopping pattern per filling; writes
//               baseline.csv and, next to an existing sweep, comparison.csv
//   verify    - randomized cross-check suite against the brute-force engines
//   plot      - re-render SVG plots from CSV outputs
//
// Exit codes: 0 success, 1 usage/configuration error, 2 numerical failure,
// 3 verification failure.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace concordia {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumerical = 2;
inline constexpr int kExitVerifyFailed = 3;

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv);  // stdout/stderr

}  // namespace concordia
