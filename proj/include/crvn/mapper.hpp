#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "crvn/metrics.hpp"
#include "crvn/scenario.hpp"

namespace crvn {

/// The three objective values of one mapping: minimize handover and
/// blocking, maximize utilization.
struct Objectives {
  double mean_handover = 0.0;
  double mean_blocking = 0.0;
  double mean_utilization = 0.0;
};

/// True iff `a` is at least as good as `b` on all three objectives and
/// strictly better on at least one; strictness uses absolute tolerance 1e-12.
bool dominates(const Objectives& a, const Objectives& b);

/// Signed constraint margins for one SVN; both must be satisfied.
struct ConstraintMargin {
  std::string svn_id;
  double collision_margin = 0.0;  // threshold - Pc, required > 0
  double demand_margin = 0.0;     // allocated - requested rate, required >= 0
  bool satisfied = false;
};

struct FeasibilityReport {
  std::vector<ConstraintMargin> per_svn;
  std::vector<std::string> shared_channels;  // ids violating disjointness
  std::vector<std::string> violations;       // one message per violated constraint
  bool feasible = false;
};

/// Evaluates the collision-threshold, demand-coverage, and disjointness
/// constraints of a mapping. Empty channel sets are reported as demand
/// violations (zero allocated rate), not errors. Throws on unknown svn or
/// channel ids.
FeasibilityReport check_constraints(const Mapping& m, const Scenario& s);

struct CandidateSolution {
  Mapping mapping;
  Objectives objectives;  // NaN when the mapping cannot be evaluated
  bool feasible = false;
  std::vector<std::string> violations;
};

/// Feasible, mutually non-dominated solutions, sorted lexicographically by
/// (handover, blocking, -utilization); exact duplicates by objectives pruned.
struct ParetoFront {
  std::vector<CandidateSolution> members;
};

class EnumerationBudgetExceeded : public std::runtime_error {
 public:
  EnumerationBudgetExceeded(std::uint64_t required, std::uint64_t budget);
  std::uint64_t required;
  std::uint64_t budget;
};

constexpr std::uint64_t kDefaultEnumerationBudget = 2'000'000;

/// Exhaustively assigns every channel to one of {unassigned, SVN 1..N},
/// filters by check_constraints, and returns the exact non-dominated set.
/// Throws EnumerationBudgetExceeded when (N+1)^M exceeds the budget.
ParetoFront enumerate_pareto(const Scenario& s,
                             std::uint64_t budget = kDefaultEnumerationBudget);

struct ScalarWeights {
  double handover = 1.0;
  double blocking = 1.0;
  double utilization = 1.0;
};

/// w_h * handover + w_b * blocking - w_u * utilization (lower is better).
double scalarized(const Objectives& o, const ScalarWeights& w);

constexpr std::uint64_t kDefaultMoveBudget = 10'000;

/// Greedy strongest-channel-first construction (channels handed round-robin
/// to SVNs that still need them) followed by first-improvement local search
/// over single-channel moves and pairwise swaps, optimizing the scalarized
/// objective over feasible neighbors. Returns a best-effort solution flagged
/// infeasible when no feasible start exists. Weights must not all be zero.
CandidateSolution heuristic_map(const Scenario& s, ScalarWeights w = {},
                                std::uint64_t move_budget = kDefaultMoveBudget);

}  // namespace crvn
