#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "refocus/compiler.hpp"
#include "refocus/simulator.hpp"
#include "test_util.hpp"

using namespace refocus;
using testutil::thrown_code;

namespace {

SpinSystemParams fixed_params(const CouplingGraph& g) {
  SpinSystemParams p;
  for (int s = 0; s < g.spin_count(); ++s) p.shifts.push_back(1.0 + 0.7 * s);
  double j = 1.3;
  for (auto edge : g.edges()) p.couplings[edge] = (j += 0.4);
  return p;
}

}  // namespace

TEST_CASE("two spin Hamiltonian diagonal, spin 0 as the high bit") {
  const CouplingGraph g({"a", "b"}, {});
  SpinSystemParams p;
  p.shifts = {2.0, 0.5};
  const std::vector<double> h = build_hamiltonian(g, p);
  REQUIRE(h.size() == 4);
  CHECK(h[0] == doctest::Approx((2.0 + 0.5) / 2));   // |00>
  CHECK(h[1] == doctest::Approx((2.0 - 0.5) / 2));   // |01>
  CHECK(h[2] == doctest::Approx((-2.0 + 0.5) / 2));  // |10>
  CHECK(h[3] == doctest::Approx((-2.0 - 0.5) / 2));  // |11>
}

TEST_CASE("coupling term splits aligned and anti-aligned states") {
  const CouplingGraph g({"a", "b"}, {{0, 1}});
  SpinSystemParams p;
  p.shifts = {0.0, 0.0};
  p.couplings[{0, 1}] = 2.0;  // Hz
  const std::vector<double> h = build_hamiltonian(g, p);
  const double pi_j = 2.0 * std::acos(-1.0) * 2.0 / 2.0;  // 2πJ·2·(±1/2)(±1/2)
  CHECK(h[0] == doctest::Approx(pi_j));
  CHECK(h[1] == doctest::Approx(-pi_j));
  CHECK(h[2] == doctest::Approx(-pi_j));
  CHECK(h[3] == doctest::Approx(pi_j));
}

TEST_CASE("hamiltonian parameter validation") {
  const CouplingGraph g = CouplingGraph::path(3);
  SpinSystemParams p;
  p.shifts = {1.0, 2.0};  // one too few
  CHECK(thrown_code([&] { build_hamiltonian(g, p); }) ==
        ErrorCode::DimensionMismatch);
  p.shifts = {1.0, 2.0, 3.0};
  CHECK(thrown_code([&] { build_hamiltonian(g, p); }) ==
        ErrorCode::InvalidArgument);  // missing couplings
  p.couplings[{0, 1}] = 1.0;
  p.couplings[{1, 2}] = 1.0;
  CHECK(build_hamiltonian(g, p).size() == 8);
  p.couplings[{0, 2}] = 1.0;  // not an edge
  CHECK(thrown_code([&] { build_hamiltonian(g, p); }) ==
        ErrorCode::InvalidArgument);

  CHECK(thrown_code([] {
          SpinSystemParams big;
          big.shifts.assign(11, 0.0);
          build_hamiltonian(CouplingGraph(
                                std::vector<std::string>{
                                    "a", "b", "c", "d", "e", "f", "g", "h",
                                    "i", "j", "k"},
                                {}),
                            big);
        }) == ErrorCode::SizeLimit);
}

TEST_CASE("simulator agrees with the dense matrix oracle") {
  auto rng = testutil::make_rng(911);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 4);
    const CouplingGraph g = testutil::random_graph(rng, n, 0.5);
    const SignMatrix m = testutil::random_sign_matrix(
        rng, n, 1 + static_cast<int>(rng() % 8));
    const SpinSystemParams p = random_params(g, rng());
    CAPTURE(trial);
    for (bool include_parity : {true, false}) {
      const PropagatorResult fast = simulate(m, g, p, include_parity);
      const auto slow = testutil::oracle_propagator(m, g, p, include_parity);
      // Entrywise, with no global phase freedom: both track exact phases.
      CHECK(testutil::max_abs_difference(slow, fast) < 1e-12);
    }
  }
}

TEST_CASE("simulated propagators are unitary") {
  auto rng = testutil::make_rng(912);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 5);
    const CouplingGraph g = testutil::random_graph(rng, n, 0.5);
    const SignMatrix m = testutil::random_sign_matrix(
        rng, n, 1 + static_cast<int>(rng() % 6));
    const PropagatorResult u = simulate(m, g, random_params(g, rng()));
    CAPTURE(trial);
    CHECK(unitarity_defect(u) < 1e-12);
  }
}

TEST_CASE("compiled sequences realize their target propagator") {
  for (int n = 2; n <= 5; ++n) {
    const CouplingGraph g = CouplingGraph::complete(n);
    const std::vector<TargetSpec> targets{RetainShift{0}, RetainCoupling{0, 1},
                                          RefocusAll{}};
    for (const TargetSpec& target : targets) {
      const SignMatrix m = compile(g, target);
      for (std::uint64_t seed : {1u, 2u, 3u}) {
        CAPTURE(n);
        CAPTURE(seed);
        const SpinSystemParams p = random_params(g, seed);
        const EffectiveCheck with_parity = verify_effective(m, g, target, p);
        CHECK(with_parity.pass);
        CHECK(with_parity.frobenius_distance <= 1e-9);
        // Dropping the trailing parity pulses must not change the verdict.
        const EffectiveCheck without =
            verify_effective(m, g, target, p, kDefaultTolerance, false);
        CHECK(without.pass);
      }
    }
  }
}

TEST_CASE("the wrong target is rejected numerically") {
  const CouplingGraph g = CouplingGraph::complete(3);
  const SignMatrix m = compile(g, RetainShift{0});
  const SpinSystemParams p = fixed_params(g);
  CHECK(verify_effective(m, g, RetainShift{0}, p).pass);
  CHECK_FALSE(verify_effective(m, g, RetainShift{1}, p).pass);
  CHECK_FALSE(verify_effective(m, g, RefocusAll{}, p).pass);
  CHECK_FALSE(verify_effective(m, g, RetainCoupling{0, 1}, p).pass);
}

TEST_CASE("halving parameters while doubling time is bitwise neutral") {
  auto rng = testutil::make_rng(913);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 4);
    const CouplingGraph g = testutil::random_graph(rng, n, 0.5);
    const SignMatrix m = testutil::random_sign_matrix(
        rng, n, 1 + static_cast<int>(rng() % 6));
    const SpinSystemParams p = random_params(g, rng());
    SpinSystemParams scaled = p;
    scaled.total_time = p.total_time * 2.0;
    for (double& w : scaled.shifts) w /= 2.0;
    for (auto& [edge, j] : scaled.couplings) j /= 2.0;
    CAPTURE(trial);
    const PropagatorResult a = simulate(m, g, p);
    const PropagatorResult b = simulate(m, g, scaled);
    CHECK(a.entries == b.entries);
  }
}

TEST_CASE("random parameters are seeded, bounded, and cover every edge") {
  const CouplingGraph g = CouplingGraph::complete(5);
  const SpinSystemParams a = random_params(g, 42);
  const SpinSystemParams b = random_params(g, 42);
  const SpinSystemParams c = random_params(g, 43);
  CHECK(a.shifts == b.shifts);
  CHECK(a.couplings == b.couplings);
  CHECK(a.shifts != c.shifts);
  CHECK(a.shifts.size() == 5);
  CHECK(a.couplings.size() == g.edges().size());
  for (double w : a.shifts) {
    CHECK(w >= -10.0);
    CHECK(w <= 10.0);
  }
  for (const auto& [edge, j] : a.couplings) {
    CHECK(std::abs(j) >= 0.5);
    CHECK(std::abs(j) <= 5.0);
  }
}

TEST_CASE("target propagators and distances") {
  const CouplingGraph g({"a", "b"}, {{0, 1}});
  SpinSystemParams p;
  p.shifts = {3.0, -1.0};
  p.couplings[{0, 1}] = 2.0;
  p.total_time = 0.25;

  const PropagatorResult none = target_propagator(g, RefocusAll{}, p);
  for (int i = 0; i < none.dim; ++i) CHECK(none.at(i, i) == 1.0);

  PropagatorResult shift = target_propagator(g, RetainShift{0}, p);
  const std::complex<double> up = std::polar(1.0, -3.0 * 0.25 * 0.5);
  CHECK(std::abs(shift.at(0, 0) - up) < 1e-15);
  CHECK(std::abs(shift.at(3, 3) - std::conj(up)) < 1e-15);

  CHECK(frobenius_distance(shift, shift) == 0.0);
  CHECK(frobenius_distance(shift, none) > 0.0);
  CHECK(thrown_code([&] {
          PropagatorResult tiny;
          tiny.dim = 2;
          tiny.entries.assign(4, {});
          frobenius_distance(shift, tiny);
        }) == ErrorCode::DimensionMismatch);

  SpinSystemParams missing = p;
  missing.couplings.clear();
  CHECK(thrown_code([&] { target_propagator(g, RetainCoupling{0, 1}, missing); }) ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("global phase normalization pins the first nonzero entry") {
  PropagatorResult u;
  u.dim = 2;
  u.entries = {{0.0, 0.0}, {0.0, 2.0}, {-1.0, 0.0}, {0.0, 0.0}};
  u.normalize_global_phase();
  CHECK(std::abs(u.at(0, 1) - std::complex<double>{2.0, 0.0}) < 1e-15);
  CHECK(std::abs(u.at(1, 0) - std::complex<double>{0.0, 1.0}) < 1e-15);
}

TEST_CASE("mismatched sign matrix shape is rejected") {
  const CouplingGraph g = CouplingGraph::complete(3);
  const SignMatrix m(2, 4);
  CHECK(thrown_code([&] { simulate(m, g, fixed_params(g)); }) ==
        ErrorCode::DimensionMismatch);
}
