#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "refocus/compiler.hpp"
#include "refocus/graph.hpp"
#include "refocus/sign_matrix.hpp"

namespace refocus {

inline constexpr int kMaxSimulatedSpins = 10;  // dimension cap 1024
inline constexpr double kDefaultTolerance = 1e-9;

/// Numeric spin-system parameters, used only by the verification simulator.
struct SpinSystemParams {
  std::vector<double> shifts;  // ω_i in rad/s, one per spin
  std::map<std::pair<int, int>, double> couplings;  // J_ij in Hz, keys (a,b) a<b
  double total_time = 1.0;     // seconds
};

/// Seeded draw: shifts uniform in [-10, 10] rad/s, couplings of magnitude
/// [0.5, 5] Hz with random sign on every graph edge.
SpinSystemParams random_params(const CouplingGraph& g, std::uint64_t seed,
                               double total_time = 1.0);

/// Weak-coupling diagonal Hamiltonian
///   H = Σ_i ω_i I_z^i + Σ_(i,j)∈edges 2π J_ij · 2 I_z^i I_z^j
/// with I_z = diag(+1/2, -1/2) per spin, returned as the 2^N real diagonal.
/// Basis convention: spin 0 is the most significant bit of the state index.
/// Couplings must be given exactly on the graph's edges.
std::vector<double> build_hamiltonian(const CouplingGraph& g,
                                      const SpinSystemParams& p);

/// Dense complex unitary of dimension 2^N, row-major.
struct PropagatorResult {
  int dim = 0;
  std::vector<std::complex<double>> entries;

  std::complex<double> at(int r, int c) const { return entries[r * dim + c]; }

  /// Rescales so the first nonzero entry in row-major order is real positive.
  void normalize_global_phase();
};

/// Evolves the system through the sign matrix's pulse sequence: equal
/// diagonal free-evolution intervals of duration T/C alternating with ideal
/// π_x pulses on the spins whose sign flips at each boundary; parity pulses
/// applied at the end when include_parity is set. Computed with
/// diagonal-phase plus bit-flip-permutation algebra, then materialized dense.
PropagatorResult simulate(const SignMatrix& m, const CouplingGraph& g,
                          const SpinSystemParams& p, bool include_parity = true);

/// Ideal propagator for the target effective Hamiltonian over total_time:
/// exp(-i ω_s T I_z^s), exp(-i 2π J_ab T · 2 I_z^a I_z^b), or the identity.
PropagatorResult target_propagator(const CouplingGraph& g, const TargetSpec& target,
                                   const SpinSystemParams& p);

double frobenius_distance(const PropagatorResult& a, const PropagatorResult& b);

/// ‖U·U† − I‖_F, exact-arithmetic-free sanity check of unitarity.
double unitarity_defect(const PropagatorResult& u);

struct EffectiveCheck {
  bool pass = false;
  double frobenius_distance = 0.0;
  double tolerance = kDefaultTolerance;
};

/// Simulates the sequence and compares against the target propagator after
/// normalizing both global phases. With include_parity=false the target is
/// multiplied by the residual bit-flips of the spins left with odd pulse
/// counts, so omitting the final pulses does not change the verdict.
EffectiveCheck verify_effective(const SignMatrix& m, const CouplingGraph& g,
                                const TargetSpec& target, const SpinSystemParams& p,
                                double tolerance = kDefaultTolerance,
                                bool include_parity = true);

}  // namespace refocus
