#include "refocus/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace refocus {

namespace {

constexpr double kPhaseEpsilon = 1e-12;

int require_simulable(int spin_count) {
  if (spin_count > kMaxSimulatedSpins) {
    throw Error(ErrorCode::SizeLimit,
                "simulation is limited to " + std::to_string(kMaxSimulatedSpins) +
                    " spins, got " + std::to_string(spin_count));
  }
  return 1 << spin_count;
}

// Spin 0 occupies the most significant bit of the state index.
double iz(int state, int spin, int spin_count) {
  return ((state >> (spin_count - 1 - spin)) & 1) ? -0.5 : 0.5;
}

std::complex<double> minus_i_to(int k) {
  static const std::complex<double> table[4] = {
      {1.0, 0.0}, {0.0, -1.0}, {-1.0, 0.0}, {0.0, 1.0}};
  return table[k & 3];
}

}  // namespace

SpinSystemParams random_params(const CouplingGraph& g, std::uint64_t seed,
                               double total_time) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> shift(-10.0, 10.0);
  std::uniform_real_distribution<double> magnitude(0.5, 5.0);
  std::uniform_int_distribution<int> flip(0, 1);

  SpinSystemParams p;
  p.total_time = total_time;
  for (int s = 0; s < g.spin_count(); ++s) p.shifts.push_back(shift(rng));
  for (auto edge : g.edges()) {
    const double j = magnitude(rng);
    p.couplings[edge] = flip(rng) ? -j : j;
  }
  return p;
}

std::vector<double> build_hamiltonian(const CouplingGraph& g,
                                      const SpinSystemParams& p) {
  const int n = g.spin_count();
  const int dim = require_simulable(n);
  if (static_cast<int>(p.shifts.size()) != n) {
    throw Error(ErrorCode::DimensionMismatch,
                "got " + std::to_string(p.shifts.size()) + " shifts for " +
                    std::to_string(n) + " spins");
  }
  for (const auto& [edge, j] : p.couplings) {
    if (!g.has_edge(edge.first, edge.second) || edge.first > edge.second) {
      throw Error(ErrorCode::InvalidArgument,
                  "coupling value given for a pair that is not a graph edge");
    }
    (void)j;
  }
  for (auto edge : g.edges()) {
    if (!p.couplings.contains(edge)) {
      throw Error(ErrorCode::InvalidArgument,
                  "missing coupling value for '" + g.name(edge.first) + "':'" +
                      g.name(edge.second) + "'");
    }
  }

  std::vector<double> h(dim, 0.0);
  for (int x = 0; x < dim; ++x) {
    double e = 0.0;
    for (int s = 0; s < n; ++s) e += p.shifts[s] * iz(x, s, n);
    for (auto [a, b] : g.edges()) {
      e += 2.0 * std::numbers::pi * p.couplings.at({a, b}) * 2.0 *
           iz(x, a, n) * iz(x, b, n);
    }
    h[x] = e;
  }
  return h;
}

void PropagatorResult::normalize_global_phase() {
  for (const auto& z : entries) {
    if (std::abs(z) > kPhaseEpsilon) {
      const std::complex<double> phase = z / std::abs(z);
      for (auto& e : entries) e /= phase;
      return;
    }
  }
}

PropagatorResult simulate(const SignMatrix& m, const CouplingGraph& g,
                          const SpinSystemParams& p, bool include_parity) {
  const int n = g.spin_count();
  if (m.rows() != n) {
    throw Error(ErrorCode::DimensionMismatch,
                "sign matrix has " + std::to_string(m.rows()) +
                    " rows but the graph has " + std::to_string(n) + " spins");
  }
  const int dim = require_simulable(n);
  const std::vector<double> h = build_hamiltonian(g, p);
  const double dt = p.total_time / m.cols();

  // The running propagator stays monomial: input state x goes to x ^ mask
  // with amplitude phase[x]. A free interval multiplies phase[x] by the
  // evolution at the then-current state; a boundary's π_x pulses toggle
  // mask bits and add one factor of -i each.
  int mask = 0;
  std::vector<std::complex<double>> phase(dim, {1.0, 0.0});
  auto evolve = [&] {
    for (int x = 0; x < dim; ++x) phase[x] *= std::polar(1.0, -h[x ^ mask] * dt);
  };
  auto pulse = [&](int flip_mask, int pulsed) {
    mask ^= flip_mask;
    const std::complex<double> factor = minus_i_to(pulsed);
    for (auto& z : phase) z *= factor;
  };

  evolve();
  for (int b = 1; b < m.cols(); ++b) {
    int flip_mask = 0;
    int pulsed = 0;
    for (int s = 0; s < n; ++s) {
      if (m.changes_at(s, b)) {
        flip_mask |= 1 << (n - 1 - s);
        ++pulsed;
      }
    }
    if (pulsed) pulse(flip_mask, pulsed);
    evolve();
  }
  if (include_parity) {
    int flip_mask = 0;
    int pulsed = 0;
    for (int s = 0; s < n; ++s) {
      if (m.row_sign_changes(s) % 2 == 1) {
        flip_mask |= 1 << (n - 1 - s);
        ++pulsed;
      }
    }
    if (pulsed) pulse(flip_mask, pulsed);
  }

  PropagatorResult u;
  u.dim = dim;
  u.entries.assign(static_cast<size_t>(dim) * dim, {0.0, 0.0});
  for (int x = 0; x < dim; ++x) u.entries[(x ^ mask) * dim + x] = phase[x];
  return u;
}

PropagatorResult target_propagator(const CouplingGraph& g, const TargetSpec& target,
                                   const SpinSystemParams& p) {
  validate_target(g, target);
  const int n = g.spin_count();
  const int dim = require_simulable(n);
  const double t = p.total_time;

  std::vector<double> diag(dim, 0.0);
  if (const auto* rs = std::get_if<RetainShift>(&target)) {
    if (static_cast<int>(p.shifts.size()) != n) {
      throw Error(ErrorCode::DimensionMismatch,
                  "got " + std::to_string(p.shifts.size()) + " shifts for " +
                      std::to_string(n) + " spins");
    }
    for (int x = 0; x < dim; ++x) diag[x] = p.shifts[rs->spin] * iz(x, rs->spin, n);
  } else if (const auto* rc = std::get_if<RetainCoupling>(&target)) {
    const auto key = std::minmax(rc->a, rc->b);
    const auto it = p.couplings.find({key.first, key.second});
    if (it == p.couplings.end()) {
      throw Error(ErrorCode::InvalidArgument,
                  "missing coupling value for '" + g.name(key.first) + "':'" +
                      g.name(key.second) + "'");
    }
    for (int x = 0; x < dim; ++x) {
      diag[x] = 2.0 * std::numbers::pi * it->second * 2.0 * iz(x, rc->a, n) *
                iz(x, rc->b, n);
    }
  }

  PropagatorResult u;
  u.dim = dim;
  u.entries.assign(static_cast<size_t>(dim) * dim, {0.0, 0.0});
  for (int x = 0; x < dim; ++x) {
    u.entries[x * dim + x] = std::polar(1.0, -diag[x] * t);
  }
  return u;
}

double frobenius_distance(const PropagatorResult& a, const PropagatorResult& b) {
  if (a.dim != b.dim) {
    throw Error(ErrorCode::DimensionMismatch,
                "propagator dimensions differ: " + std::to_string(a.dim) +
                    " vs " + std::to_string(b.dim));
  }
  double sum = 0.0;
  for (size_t i = 0; i < a.entries.size(); ++i) {
    sum += std::norm(a.entries[i] - b.entries[i]);
  }
  return std::sqrt(sum);
}

double unitarity_defect(const PropagatorResult& u) {
  const int dim = u.dim;
  double sum = 0.0;
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      std::complex<double> dot = 0.0;
      for (int k = 0; k < dim; ++k) {
        dot += u.at(r, k) * std::conj(u.at(c, k));
      }
      if (r == c) dot -= 1.0;
      sum += std::norm(dot);
    }
  }
  return std::sqrt(sum);
}

EffectiveCheck verify_effective(const SignMatrix& m, const CouplingGraph& g,
                                const TargetSpec& target, const SpinSystemParams& p,
                                double tolerance, bool include_parity) {
  PropagatorResult actual = simulate(m, g, p, include_parity);
  PropagatorResult expected = target_propagator(g, target, p);

  if (!include_parity) {
    // Fold the skipped parity pulses into the target: the sequence ends
    // with those spins inverted, so the expectation does too.
    int mask = 0;
    for (int s = 0; s < m.rows(); ++s) {
      if (m.row_sign_changes(s) % 2 == 1) mask |= 1 << (m.rows() - 1 - s);
    }
    if (mask != 0) {
      PropagatorResult flipped;
      flipped.dim = expected.dim;
      flipped.entries.resize(expected.entries.size());
      for (int r = 0; r < expected.dim; ++r) {
        for (int c = 0; c < expected.dim; ++c) {
          flipped.entries[r * expected.dim + c] = expected.at(r ^ mask, c);
        }
      }
      expected = std::move(flipped);
    }
  }

  actual.normalize_global_phase();
  expected.normalize_global_phase();

  EffectiveCheck check;
  check.tolerance = tolerance;
  check.frobenius_distance = frobenius_distance(actual, expected);
  check.pass = check.frobenius_distance <= tolerance;
  return check;
}

}  // namespace refocus
