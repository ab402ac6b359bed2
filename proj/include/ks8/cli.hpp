#pragma once

#include "ks8/catalog.hpp"
#include "ks8/transformer.hpp"

#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace ks8::cli {

enum class Command { Rays, Bases, Seek, Transform, Enumerate, Verify, Export };
enum class Format { Text, Json, Jsonl, Dot };

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitInvalidInput = 2;

struct RunConfig {
  Command command = Command::Rays;
  std::optional<int> seed_index;              // 1..64, in sorted seed order
  std::optional<std::vector<int>> seed_bases; // explicit basis list
  std::optional<std::string> choice_spec;
  std::set<int> skip_pattern;
  bool allow_step1_skip = false;
  bool include_unapplied = false;
  std::optional<int> matchings_step; // enumerate: list one step's couplings
  Format format = Format::Text;
  int workers = 1;
  std::optional<std::string> input_file; // verify
  std::optional<std::string> rays_file;  // catalog overrides
  std::optional<std::string> bases_file;
};

// "step:1;match:1>7,2>8,3>4,5>6;r3:yes" repeated for steps 1..5; the step
// records may be joined by ';' or whitespace. Throws std::invalid_argument.
std::vector<StepChoice> parse_choice_spec(std::string_view spec);
std::string format_choice_spec(const std::vector<StepChoice>& choices);

// Graphviz document: one node per ray, one edge per orthogonal pair.
std::string export_orthogonality_graph(const Catalog& catalog);

// Parses argv into a config. On error or --help, prints to the given
// streams and returns the exit code instead.
struct ParseOutcome {
  std::optional<RunConfig> config;
  int exit_code = kExitOk;
};
ParseOutcome parse_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

} // namespace ks8::cli
