#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "frogcrit/distributions.hpp"
#include "frogcrit/rng.hpp"

namespace frogcrit {

inline constexpr std::size_t kDefaultActivationCap = 10'000'000;

/// Reach value meaning "the particle never dies".
inline constexpr std::uint64_t kUnboundedReach = std::numeric_limits<std::uint64_t>::max();

struct FrogSimConfig {
  TreeParams params;
  std::int64_t max_depth = 1;
  std::int64_t replicates = 1;
  std::uint64_t seed = 0;
  std::size_t activation_cap = kDefaultActivationCap;
  unsigned threads = 0; // 0: default_worker_count()
};

/// Per-run Monte Carlo record.
///
/// reached_depth[k] counts replicates whose deepest informed level is exactly k.
/// branch_hits[n] counts replicates in which level/site n was reached (nonincreasing in n).
struct SimOutcome {
  std::vector<std::int64_t> reached_depth;
  std::vector<std::int64_t> branch_hits;
  std::int64_t replicates = 0;
  std::uint64_t seed = 0;

  /// Fraction of replicates whose deepest level is >= level.
  double fraction_reaching(std::int64_t level) const;

  friend bool operator==(const SimOutcome &, const SimOutcome &) = default;
};

/// Tree vertex addressed by its child-index path from the root. The root has
/// d+1 children (indices 0..d); every other vertex has d (indices 0..d-1).
struct VertexId {
  std::vector<std::uint32_t> path;

  std::size_t depth() const noexcept { return path.size(); }
  bool valid(int d) const noexcept;
  /// Stable 64-bit key used to seed the vertex's random stream.
  std::uint64_t hash() const noexcept;

  friend bool operator==(const VertexId &, const VertexId &) = default;
};

/// Worker count: FROGCRIT_THREADS if set and positive, else hardware concurrency.
unsigned default_worker_count();

/// Number of n >= 1 with u < c * ratio^n (inverse transform of P(X >= n) = c ratio^n).
/// Nondecreasing in ratio for fixed u, so shared uniforms give a monotone coupling.
std::uint64_t reach_from_uniform(double u, double c, double ratio);

/// Steps taken by an activated particle: P(steps >= n) = c (d q)^n for n >= 1.
std::uint64_t sample_reach(const TreeParams &params, SplitMix64 &rng);

/// Frog model on the directed tree, one active particle at the root.
SimOutcome simulate_frog(const FrogSimConfig &config);

/// Firework process on {0, 1, ...} with radii P(D >= k) = c q^k, observed up to site n.
SimOutcome simulate_firework(const HazardSpec &spec, std::int64_t n, std::int64_t replicates,
                             std::uint64_t seed, unsigned threads = 0);

/// Probability that a fixed non-root vertex at distance n is activated, estimated by
/// running the frog dynamics along a single branch of the tree.
double estimate_branch_hit(const TreeParams &params, std::int64_t n, std::int64_t replicates,
                           std::uint64_t seed, unsigned threads = 0);

} // namespace frogcrit
