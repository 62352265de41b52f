#include <cmath>
#include <cstdlib>

#include <gtest/gtest.h>

#include "frogcrit/critical.hpp"
#include "frogcrit/errors.hpp"
#include "frogcrit/renewal.hpp"
#include "frogcrit/simulator.hpp"

using namespace frogcrit;

namespace {

double binomial_se(double p, double n) { return std::sqrt(std::max(p * (1 - p), 0.0) / n); }

} // namespace

TEST(SplitMix64, UniformInOpenInterval) {
  SplitMix64 rng(1);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    ASSERT_LT(rng.below(3), 3u);
  }
  EXPECT_NE(SplitMix64::derive(1, 2), SplitMix64::derive(2, 1));
}

TEST(ReachFromUniform, InverseTransform) {
  const double c = 0.8, ratio = 0.5;
  EXPECT_EQ(reach_from_uniform(0.41, c, ratio), 0u); // u >= c*ratio
  EXPECT_EQ(reach_from_uniform(0.39, c, ratio), 1u); // c r^2 = 0.2 <= u < 0.4
  EXPECT_EQ(reach_from_uniform(0.19, c, ratio), 2u);
  EXPECT_EQ(reach_from_uniform(0.2, c, ratio), 1u); // boundary is exclusive
  for (double u = 1e-6; u < 1.0; u *= 1.7) {
    const auto n = reach_from_uniform(u, c, ratio);
    if (n > 0)
      ASSERT_LT(u, c * std::pow(ratio, static_cast<double>(n)));
    ASSERT_GE(u, c * std::pow(ratio, static_cast<double>(n + 1)));
  }
}

TEST(ReachFromUniform, MonotoneInRatio) {
  for (double u = 1e-5; u < 1.0; u *= 1.3)
    for (double r = 0.05; r < 0.95; r += 0.05)
      ASSERT_LE(reach_from_uniform(u, 0.9, r), reach_from_uniform(u, 0.9, r + 0.05));
}

TEST(ReachFromUniform, UnboundedWhenRatioIsOne) {
  EXPECT_EQ(reach_from_uniform(0.3, 0.5, 1.0), kUnboundedReach);
  EXPECT_EQ(reach_from_uniform(0.7, 0.5, 1.0), 0u);
}

TEST(SampleReach, TailProbabilities) {
  const TreeParams params(2, 0.9, 0.3);
  SplitMix64 rng(99);
  const int n = 1'000'000;
  int ge1 = 0, ge2 = 0, ge3 = 0;
  for (int i = 0; i < n; ++i) {
    const auto s = sample_reach(params, rng);
    ge1 += s >= 1;
    ge2 += s >= 2;
    ge3 += s >= 3;
  }
  const double p1 = 0.9 * 0.6;
  EXPECT_LT(std::abs(ge1 / double(n) - p1), 4 * binomial_se(p1, n));
  const double ratio = static_cast<double>(ge3) / ge2;
  EXPECT_LT(std::abs(ratio - 0.6), 4 * binomial_se(0.6, ge2));
}

TEST(SampleReach, FixedDescendantHitProbability) {
  // A non-root particle visits a fixed vertex at distance n with probability c q^n.
  const TreeParams params(3, 1.0, 0.25);
  SplitMix64 rng(7);
  const int draws = 1'000'000, dist = 2;
  int hits = 0;
  for (int i = 0; i < draws; ++i) {
    const auto steps = sample_reach(params, rng);
    bool on_target = steps >= dist;
    for (int s = 0; s < dist && on_target; ++s)
      on_target = rng.below(3) == 0;
    hits += on_target;
  }
  const double p = std::pow(0.25, dist);
  EXPECT_LT(std::abs(hits / double(draws) - p), 4 * binomial_se(p, draws));
}

TEST(VertexId, ValidityAndHash) {
  const VertexId root;
  EXPECT_EQ(root.depth(), 0u);
  EXPECT_TRUE(root.valid(2));
  EXPECT_TRUE((VertexId{{2, 1, 0}}).valid(2));  // root has d+1 children
  EXPECT_FALSE((VertexId{{1, 2}}).valid(2));    // below the root only d
  EXPECT_FALSE((VertexId{{3}}).valid(2));
  EXPECT_NE((VertexId{{0, 1}}).hash(), (VertexId{{1, 0}}).hash());
  EXPECT_EQ((VertexId{{0, 1}}).hash(), (VertexId{{0, 1}}).hash());
}

TEST(SimulateFrog, NoMovementWhenLifetimeVanishes) {
  const FrogSimConfig config{TreeParams(2, 1.0, 5e-10), 8, 2000, 1};
  const auto out = simulate_frog(config);
  EXPECT_EQ(out.reached_depth[0], 2000);
  EXPECT_EQ(out.replicates, 2000);
}

TEST(SimulateFrog, SupercriticalReachesDepth) {
  const FrogSimConfig config{TreeParams(2, 1.0, 0.35), 12, 10000, 7};
  const auto out = simulate_frog(config);
  const double frac = out.fraction_reaching(12);
  EXPECT_GT(frac, 5 * binomial_se(frac, 10000));
  EXPECT_GT(frac, 0.0);
}

TEST(SimulateFrog, HistogramInvariants) {
  for (const std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    const FrogSimConfig config{TreeParams(3, 0.8, 0.2), 15, 3000, seed};
    const auto out = simulate_frog(config);
    std::int64_t mass = 0;
    for (const auto v : out.reached_depth)
      mass += v;
    EXPECT_EQ(mass, 3000);
    for (int n = 1; n <= 15; ++n)
      ASSERT_LE(out.fraction_reaching(n), out.fraction_reaching(n - 1));
  }
}

TEST(SimulateFrog, DeterministicAcrossThreadCounts) {
  FrogSimConfig config{TreeParams(2, 1.0, 0.3), 20, 4000, 12345};
  config.threads = 1;
  const auto serial = simulate_frog(config);
  config.threads = 4;
  const auto parallel = simulate_frog(config);
  EXPECT_EQ(serial, parallel);
  config.seed = 54321;
  EXPECT_NE(serial, simulate_frog(config));
}

TEST(SimulateFrog, MonotoneInQUnderSharedUniforms) {
  const FrogSimConfig low{TreeParams(2, 1.0, 0.26), 25, 5000, 77};
  const FrogSimConfig high{TreeParams(2, 1.0, 0.29), 25, 5000, 77};
  const auto a = simulate_frog(low);
  const auto b = simulate_frog(high);
  for (int n = 0; n <= 25; ++n)
    ASSERT_GE(b.branch_hits[n], a.branch_hits[n]) << "level " << n;
}

TEST(SimulateFrog, MemoryCap) {
  FrogSimConfig config{TreeParams(2, 1.0, 0.45), 60, 10, 3};
  config.activation_cap = 50;
  EXPECT_THROW(simulate_frog(config), MemoryCapError);
}

TEST(SimulateFrog, RejectsBadConfig) {
  EXPECT_THROW(simulate_frog(FrogSimConfig{TreeParams(2, 1.0, 0.3), 0, 10, 1}), DomainError);
  EXPECT_THROW(simulate_frog(FrogSimConfig{TreeParams(2, 1.0, 0.3), 5, 0, 1}), DomainError);
}

TEST(SimulateFirework, FirstSite) {
  const HazardSpec spec(0.7, 0.4);
  const int reps = 200000;
  const auto out = simulate_firework(spec, 5, reps, 3);
  EXPECT_EQ(out.branch_hits[0], reps);
  const double p1 = 0.7 * 0.4;
  EXPECT_LT(std::abs(out.fraction_reaching(1) - p1), 4 * binomial_se(p1, reps));
}

TEST(SimulateFirework, MatchesRenewalRecursion) {
  const HazardSpec spec(1.0, 0.25);
  const int reps = 100000;
  const auto out = simulate_firework(spec, 20, reps, 11);
  const auto u = renewal_probabilities(spec, 20);
  for (int n = 1; n <= 20; ++n) {
    const double p = out.fraction_reaching(n);
    ASSERT_LE(std::abs(p - u[n]), 4 * binomial_se(u[n], reps)) << "n=" << n;
  }
}

TEST(SimulateFirework, MonotoneCouplingInQ) {
  const auto lo = simulate_firework(HazardSpec(0.8, 0.2), 30, 20000, 5);
  const auto hi = simulate_firework(HazardSpec(0.8, 0.3), 30, 20000, 5);
  for (int n = 0; n <= 30; ++n)
    ASSERT_GE(hi.branch_hits[n], lo.branch_hits[n]);
}

TEST(SimulateFirework, DeterministicAcrossThreadCounts) {
  const HazardSpec spec(0.5, 0.27);
  EXPECT_EQ(simulate_firework(spec, 20, 30000, 8, 1), simulate_firework(spec, 20, 30000, 8, 3));
}

TEST(EstimateBranchHit, FirstVertex) {
  const TreeParams params(3, 0.9, 0.2);
  const int reps = 200000;
  const double p = 0.9 * 0.2;
  EXPECT_LT(std::abs(estimate_branch_hit(params, 1, reps, 4) - p), 4 * binomial_se(p, reps));
}

TEST(EstimateBranchHit, AgreesWithRenewalAndFirework) {
  const TreeParams params(2, 1.0, 0.3);
  const HazardSpec spec = params.branch_hazard();
  const int reps = 100000;
  const auto u = renewal_probabilities(spec, 12);
  const auto fw = simulate_firework(spec, 12, reps, 21);
  for (const int n : {1, 3, 6, 12}) {
    const double p = estimate_branch_hit(params, n, reps, 20);
    EXPECT_LE(std::abs(p - u[n]), 4 * binomial_se(u[n], reps)) << "n=" << n;
    EXPECT_LE(std::abs(p - fw.fraction_reaching(n)), 4 * std::sqrt(2.0) * binomial_se(u[n], reps))
        << "n=" << n;
  }
}

TEST(EstimateBranchHit, ScaledHitsTrackCriticality) {
  const double qc = solve_qc(2, 1.0).q_c;
  const int reps = 400000;
  const int n_short = 4, n_long = 14;
  auto scaled = [&](double q, int n) {
    return std::ldexp(estimate_branch_hit(TreeParams(2, 1.0, q), n, reps, 31), n);
  };
  EXPECT_GT(scaled(qc + 0.02, n_long), scaled(qc + 0.02, n_short));
  EXPECT_LT(scaled(qc - 0.02, n_long), scaled(qc - 0.02, n_short));
}

TEST(DefaultWorkerCount, HonoursEnvironment) {
  ::setenv("FROGCRIT_THREADS", "3", 1);
  EXPECT_EQ(default_worker_count(), 3u);
  ::setenv("FROGCRIT_THREADS", "junk", 1);
  EXPECT_GE(default_worker_count(), 1u);
  ::unsetenv("FROGCRIT_THREADS");
}
