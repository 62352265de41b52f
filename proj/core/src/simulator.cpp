#include "frogcrit/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <utility>

#include "frogcrit/errors.hpp"

namespace frogcrit {

namespace {

constexpr std::uint64_t kRootKey = 0x6a09e667f3bcc908ULL;
constexpr std::uint64_t kFrogTag = 0x66726f67ULL;      // "frog"
constexpr std::uint64_t kFireworkTag = 0x6669726557ULL; // "fireW"
constexpr std::uint64_t kBranchTag = 0x6272616e6368ULL; // "branch"

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return a > kUnboundedReach - b ? kUnboundedReach : a + b;
}

std::uint64_t replicate_key(std::uint64_t seed, std::uint64_t tag, std::int64_t replicate) {
  return SplitMix64::derive(SplitMix64::derive(seed, tag), static_cast<std::uint64_t>(replicate));
}

// Runs body(r) for r in [0, count) over up to `threads` workers, storing results by index.
template <class Body>
std::vector<std::int64_t> run_replicates(std::int64_t count, unsigned threads, Body body) {
  std::vector<std::int64_t> results(static_cast<std::size_t>(count));
  const unsigned workers = static_cast<unsigned>(
      std::clamp<std::int64_t>(threads == 0 ? default_worker_count() : threads, 1, count));
  if (workers == 1) {
    for (std::int64_t r = 0; r < count; ++r)
      results[static_cast<std::size_t>(r)] = body(r);
    return results;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        const std::int64_t begin = count * w / workers;
        const std::int64_t end = count * (w + 1) / workers;
        for (std::int64_t r = begin; r < end; ++r)
          results[static_cast<std::size_t>(r)] = body(r);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto &t : pool)
    t.join();
  for (auto &e : errors)
    if (e)
      std::rethrow_exception(e);
  return results;
}

SimOutcome tally(const std::vector<std::int64_t> &reached, std::int64_t max_level,
                 std::uint64_t seed) {
  SimOutcome out;
  out.replicates = static_cast<std::int64_t>(reached.size());
  out.seed = seed;
  out.reached_depth.assign(static_cast<std::size_t>(max_level) + 1, 0);
  for (const auto level : reached)
    ++out.reached_depth[static_cast<std::size_t>(level)];
  out.branch_hits.assign(out.reached_depth.size(), 0);
  std::int64_t running = 0;
  for (std::size_t k = out.reached_depth.size(); k-- > 0;) {
    running += out.reached_depth[k];
    out.branch_hits[k] = running;
  }
  return out;
}

struct TreeNode {
  std::uint32_t depth;
  std::uint64_t hash;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> children; // (child index, node id)
};

// Deepest activated level of one frog-model replicate, truncated at max_depth.
std::int64_t frog_replicate(const FrogSimConfig &config, std::int64_t replicate) {
  const auto &p = config.params;
  const int d = p.d();
  const double dq = d * p.q();
  const auto max_depth = static_cast<std::uint64_t>(config.max_depth);
  const std::uint64_t rep_key = replicate_key(config.seed, kFrogTag, replicate);

  std::vector<TreeNode> nodes;
  nodes.push_back({0, kRootKey, {}});
  std::vector<std::uint32_t> queue{0};
  std::uint64_t deepest = 0;

  // Activation is monotone and each vertex owns its random stream, so the
  // terminal set does not depend on the order the queue is drained in.
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::uint32_t start = queue[head];
    SplitMix64 rng(SplitMix64::derive(rep_key, nodes[start].hash));
    const std::uint64_t reach = reach_from_uniform(rng.uniform(), p.c(), dq);
    const std::uint64_t steps = std::min<std::uint64_t>(reach, max_depth - nodes[start].depth);

    std::uint32_t cur = start;
    for (std::uint64_t s = 0; s < steps; ++s) {
      const auto branching = static_cast<std::uint64_t>(nodes[cur].depth == 0 ? d + 1 : d);
      const auto idx = static_cast<std::uint32_t>(rng.below(branching));
      auto &kids = nodes[cur].children;
      const auto it = std::find_if(kids.begin(), kids.end(),
                                   [idx](const auto &kv) { return kv.first == idx; });
      if (it != kids.end()) {
        cur = it->second;
        continue;
      }
      if (nodes.size() >= config.activation_cap)
        throw MemoryCapError("frog simulation exceeded " + std::to_string(config.activation_cap) +
                             " activated vertices");
      const auto id = static_cast<std::uint32_t>(nodes.size());
      const TreeNode child{nodes[cur].depth + 1, SplitMix64::derive(nodes[cur].hash, idx), {}};
      nodes[cur].children.emplace_back(idx, id);
      nodes.push_back(child);
      queue.push_back(id);
      deepest = std::max<std::uint64_t>(deepest, child.depth);
      cur = id;
    }
    if (deepest >= max_depth)
      break;
  }
  return static_cast<std::int64_t>(deepest);
}

template <class DrawReach>
std::int64_t line_replicate(std::int64_t n, DrawReach draw) {
  const auto target = static_cast<std::uint64_t>(n);
  std::uint64_t reach = 0;
  for (std::uint64_t site = 0; site <= reach && reach < target; ++site)
    reach = std::max(reach, saturating_add(site, draw(site, target - site)));
  return static_cast<std::int64_t>(std::min(reach, target));
}

} // namespace

double SimOutcome::fraction_reaching(std::int64_t level) const {
  if (replicates == 0 || level < 0)
    return level < 0 ? 1.0 : 0.0;
  if (level >= static_cast<std::int64_t>(branch_hits.size()))
    return 0.0;
  return static_cast<double>(branch_hits[static_cast<std::size_t>(level)]) /
         static_cast<double>(replicates);
}

bool VertexId::valid(int d) const noexcept {
  for (std::size_t i = 0; i < path.size(); ++i) {
    const auto limit = static_cast<std::uint32_t>(i == 0 ? d + 1 : d);
    if (path[i] >= limit)
      return false;
  }
  return true;
}

std::uint64_t VertexId::hash() const noexcept {
  std::uint64_t h = kRootKey;
  for (const auto idx : path)
    h = SplitMix64::derive(h, idx);
  return h;
}

unsigned default_worker_count() {
  if (const char *env = std::getenv("FROGCRIT_THREADS")) {
    char *end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0)
      return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::uint64_t reach_from_uniform(double u, double c, double ratio) {
  if (!(u < c * ratio))
    return 0;
  if (ratio >= 1.0)
    return kUnboundedReach;
  const auto exceeds = [&](std::uint64_t n) {
    return u < c * std::pow(ratio, static_cast<double>(n));
  };
  const double x = std::log(u / c) / std::log(ratio);
  auto n = static_cast<std::uint64_t>(std::max(1.0, std::ceil(x) - 1.0));
  while (exceeds(n + 1))
    ++n;
  while (n > 0 && !exceeds(n))
    --n;
  return n;
}

std::uint64_t sample_reach(const TreeParams &params, SplitMix64 &rng) {
  return reach_from_uniform(rng.uniform(), params.c(), params.d() * params.q());
}

SimOutcome simulate_frog(const FrogSimConfig &config) {
  if (config.max_depth < 1)
    throw DomainError("simulate_frog requires max_depth >= 1");
  if (config.replicates < 1)
    throw DomainError("simulate_frog requires replicates >= 1");
  const auto reached = run_replicates(config.replicates, config.threads,
                                      [&](std::int64_t r) { return frog_replicate(config, r); });
  return tally(reached, config.max_depth, config.seed);
}

SimOutcome simulate_firework(const HazardSpec &spec, std::int64_t n, std::int64_t replicates,
                             std::uint64_t seed, unsigned threads) {
  if (n < 1)
    throw DomainError("simulate_firework requires n >= 1");
  if (replicates < 1)
    throw DomainError("simulate_firework requires replicates >= 1");
  const auto reached = run_replicates(replicates, threads, [&](std::int64_t r) {
    const std::uint64_t key = replicate_key(seed, kFireworkTag, r);
    return line_replicate(n, [&](std::uint64_t site, std::uint64_t) {
      SplitMix64 rng(SplitMix64::derive(key, site));
      return reach_from_uniform(rng.uniform(), spec.c(), spec.q());
    });
  });
  return tally(reached, n, seed);
}

double estimate_branch_hit(const TreeParams &params, std::int64_t n, std::int64_t replicates,
                           std::uint64_t seed, unsigned threads) {
  if (n < 1)
    throw DomainError("estimate_branch_hit requires n >= 1");
  if (replicates < 1)
    throw DomainError("estimate_branch_hit requires replicates >= 1");
  const auto d = static_cast<std::uint64_t>(params.d());
  const auto reached = run_replicates(replicates, threads, [&](std::int64_t r) {
    const std::uint64_t key = replicate_key(seed, kBranchTag, r);
    return line_replicate(n, [&](std::uint64_t site, std::uint64_t remaining) {
      // The frog at `site` walks forward; it stays on the branch while its
      // uniform child choice picks the branch child (index 0).
      SplitMix64 rng(SplitMix64::derive(key, site));
      const std::uint64_t steps = std::min(sample_reach(params, rng), remaining);
      std::uint64_t along = 0;
      while (along < steps && rng.below(d) == 0)
        ++along;
      return along;
    });
  });
  const auto hits = std::count(reached.begin(), reached.end(), n);
  return static_cast<double>(hits) / static_cast<double>(replicates);
}

} // namespace frogcrit
