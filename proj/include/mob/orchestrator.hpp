#pragma once

#include "mob/analyze.hpp"
#include "mob/expand.hpp"
#include "mob/numerics.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mob {

struct RunRequest {
  std::string spec_text;
  std::string spec_path;
  Assignment assignments;
  std::vector<RegulatorRequest> regulate;  // var^symbol
  std::optional<SummandSplit> split;       // symbol^{n} on a summand
  NumericConfig config;
  bool trace = false;
};

enum ExitCode { exit_converged = 0, exit_structural = 1, exit_no_group = 2 };

struct RunResult {
  nlohmann::json report;
  int exit_code = exit_structural;
};

// Adds the requested regulators to the spec and returns the matching expansion
// options. Throws Error(unresolvable_target) for an unknown variable.
ExpandOptions insert_regulators(IntegrandSpec& spec, const RunRequest& req);

struct EpsilonPairing {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (rep(eps), rep(-eps))
  std::vector<std::size_t> unpaired;                        // eps-dependent, no partner
  std::vector<std::size_t> free;                            // eps-free
};

// Pairs representations whose pFq data (parameters and argument) map to each
// other under eps -> -eps; members whose pFq data do not involve eps are free.
EpsilonPairing pair_epsilon_representations(const std::vector<SeriesRepresentation>& reps,
                                            const std::vector<HypergeometricData>& data, const std::string& eps);

// Full pipeline. Structured errors end up in the report with exit code 1;
// the report is deterministic apart from its "timing" member.
RunResult run(const RunRequest& req);

// Text rendering of a report; everything shown comes from the JSON.
std::string render_human(const nlohmann::json& report);

nlohmann::json to_json(cplx z);

}  // namespace mob
