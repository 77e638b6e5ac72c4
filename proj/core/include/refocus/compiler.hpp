#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "refocus/graph.hpp"
#include "refocus/hadamard.hpp"
#include "refocus/sign_matrix.hpp"

namespace refocus {

// Target effective Hamiltonian: keep one chemical shift, keep one coupling,
// or refocus everything.
struct RetainShift {
  int spin = 0;
  bool operator==(const RetainShift&) const = default;
};
struct RetainCoupling {
  int a = 0;
  int b = 0;
  bool operator==(const RetainCoupling&) const = default;
};
struct RefocusAll {
  bool operator==(const RefocusAll&) const = default;
};

using TargetSpec = std::variant<RetainShift, RetainCoupling, RefocusAll>;

/// Throws unless the referenced spins exist and, for RetainCoupling, the
/// edge is present in the graph.
void validate_target(const CouplingGraph& g, const TargetSpec& target);

std::string describe_target(const CouplingGraph& g, const TargetSpec& target);

enum class Objective {
  TotalPulses,      // sum of internal pulses over all spins
  MaxSimultaneous,  // largest number of spins pulsed at one boundary
};

struct CompileOptions {
  Objective objective = Objective::TotalPulses;
  // Exhaustive row-assignment search runs when the number of candidate
  // assignments is at most this; otherwise a deterministic greedy picks.
  std::int64_t exhaustive_row_search_limit = 100000;
};

/// The recursively nested baseline on n fully coupled spins: 2^(n-1)
/// columns; row 0 stays +1, row i flips at every odd multiple of
/// 2^(n-1-i). Retains spin 0's shift, refocuses everything else. n ≤ 16.
SignMatrix conventional_nested(int n_spins);

/// Synthesizes the refocussing sign matrix for the graph and target:
/// colors the graph (the target's spins pinned to a dedicated color),
/// picks the smallest admissible Hadamard order that provides enough
/// mutually orthogonal rows, and assigns rows to colors minimizing the
/// objective. All spins of one color share one row.
SignMatrix compile(const CouplingGraph& g, const TargetSpec& target,
                   const CompileOptions& opts = {});

enum class InteractionStatus { Refocused, Retained, Partial };

const char* to_string(InteractionStatus s);

struct ShiftCheck {
  int spin = 0;
  int row_sum = 0;
  InteractionStatus status = InteractionStatus::Partial;
  bool expected_retained = false;
  bool ok = false;
};

struct CouplingCheck {
  int a = 0;
  int b = 0;
  int dot = 0;
  bool edge = false;  // non-edges are informational and never fail
  InteractionStatus status = InteractionStatus::Partial;
  bool expected_retained = false;
  bool ok = false;
};

struct VerificationReport {
  bool pass = false;
  int intervals = 0;
  std::vector<ShiftCheck> shifts;
  std::vector<CouplingCheck> couplings;
  std::string first_failure;  // empty when pass

  const ShiftCheck& shift(int spin) const { return shifts[spin]; }
  const CouplingCheck& coupling(int a, int b) const;
};

/// Checks the refocussing conditions combinatorially: a shift is refocused
/// iff its row is balanced and retained iff the row sum equals the column
/// count; a coupling is refocused iff the two rows are orthogonal and
/// retained iff their dot product equals the column count. Passes iff the
/// pattern over spins and graph edges matches the target exactly.
VerificationReport verify_combinatorial(const SignMatrix& m,
                                        const CouplingGraph& g,
                                        const TargetSpec& target);

struct SequenceCost {
  int intervals = 0;
  int internal_pulses = 0;  // final parity pulses excluded
};

struct ComparisonReport {
  SequenceCost efficient;
  SequenceCost conventional;
  double interval_ratio = 0.0;  // conventional intervals / efficient intervals
};

/// Costs of the compiled sequence next to the nested baseline on the same
/// number of (fully coupled) spins.
ComparisonReport efficiency_report(const CouplingGraph& g, const TargetSpec& target,
                                   const CompileOptions& opts = {});

}  // namespace refocus
