#pragma once

// Verification suite: a fixed registry of named checks, each of which
// re-tests one verified statement of the construction against an
// independent computation (brute-force enumeration, random sampling
// against an evaluation oracle, or exact recomputation).  Checks report
// three-valued verdicts: "pass", "fail", or "unknown"; an unknown from
// the divisibility layer is never upgraded to a pass.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "crysgar/algraph.hpp"
#include "crysgar/garside.hpp"

namespace crysgar {

using OrderedJson = nlohmann::ordered_json;

/// Knobs shared by the randomized / windowed checks.  Reports are
/// byte-identical for a fixed seed; wall-clock timings are emitted only
/// when `timings` is set, so that the default output stays reproducible.
struct VerifyOptions {
  std::uint64_t seed = 1;
  long window = 0;      ///< scan window for axis projections; 0 = default
  long power = 6;       ///< largest exponent exercised by the power checks
  long instances = 20;  ///< number of randomized instances per sampled check
  bool timings = false; ///< include per-check seconds in reports
};

struct CheckResult {
  std::string id;
  std::string verdict;  ///< "pass" | "fail" | "unknown"
  OrderedJson witnesses;
  long unknown_returns = 0;  ///< unknown verdicts consumed during this check
  long clipped_events = 0;   ///< clipped enumeration windows during this check
  double seconds = 0.0;
};

/// The check registry, sorted by id.
const std::vector<std::string>& verify_check_ids();
bool is_verify_check_id(const std::string& id);

/// Run the named checks ("all" expands to the whole registry); throws
/// ParseError on an id outside the registry.  Results come back sorted
/// by check id.  A check whose body passes but consumed unknown
/// divisibility verdicts is downgraded to "unknown".
std::vector<CheckResult> run_verify(ALGraph& graph,
                                    const std::vector<std::string>& ids,
                                    const VerifyOptions& opt);

// ---- reports (JSON schema 1) ---------------------------------------------

/// Static description of the built structure: root counts, the highest
/// root and its coefficients, the axis data, atom counts, the chosen
/// r0 and the factors of x.
OrderedJson build_report(const GarsideEngine& eng);

/// Aggregate of check results; `ok` is true iff every verdict is "pass".
OrderedJson verify_report(const GarsideEngine& eng,
                          const std::vector<CheckResult>& results,
                          const VerifyOptions& opt);

/// Normal form of a word in the input language.
OrderedJson nf_report(const GarsideEngine& eng, const std::string& word);

/// Axis projection of the vertex of a word; window 0 picks the default.
OrderedJson lambda_report(ALGraph& graph, const std::string& word,
                          long window);

/// DOT drawing of the radius-ball around the vertex of a word, using the
/// default finite edge window (vertical offsets clamped to |k| <= atom_k).
std::string graph_dot_report(ALGraph& graph, const std::string& center_word,
                             long radius, long atom_k);

}  // namespace crysgar
