#include "cakecut/random_gen.hpp"

#include <algorithm>
#include <set>

namespace cakecut {

CakeInstance random_instance(int agents, int max_pieces, std::uint64_t seed) {
  if (agents < 1) throw CakeError("need at least one agent");
  if (max_pieces < 1) throw CakeError("need at least one piece per agent");
  SplitMix64 rng(seed);
  std::vector<Agent> out;
  for (int a = 0; a < agents; ++a) {
    int pieces = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_pieces)));
    // Distinct interior breakpoints on the 1/64 grid.
    std::set<int> bps;
    while (static_cast<int>(bps.size()) < pieces - 1)
      bps.insert(1 + static_cast<int>(rng.below(63)));
    std::vector<int> edges{0};
    edges.insert(edges.end(), bps.begin(), bps.end());
    edges.push_back(64);
    std::vector<DensityPiece> dp;
    Rat total(0);
    for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
      Rat density(static_cast<long>(rng.below(9)));
      Rat start(edges[k], 64);
      Rat end(edges[k + 1], 64);
      start.canonicalize();
      end.canonicalize();
      dp.push_back({start, end, density});
      total += density * (end - start);
    }
    if (total == 0) {
      // All-zero draw: fall back to uniform so the agent is normalizable.
      dp.assign(1, {Rat(0), Rat(1), Rat(1)});
      total = 1;
    }
    for (auto& p : dp) p.density /= total;
    out.push_back({"a" + std::to_string(a + 1), PiecewiseDensity(std::move(dp))});
  }
  return CakeInstance(std::move(out), true);
}

JispInstance random_jisp(int jobs, int points, int max_candidates, std::uint64_t seed) {
  if (jobs < 1 || points < 2 || max_candidates < 1)
    throw CakeError("bad random jisp parameters");
  SplitMix64 rng(seed);
  JispInstance out;
  out.points = points;
  out.jobs.assign(static_cast<std::size_t>(jobs), {});
  int total = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_candidates)));
  for (int c = 0; c < total; ++c) {
    std::size_t job = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(jobs)));
    int l = static_cast<int>(rng.below(static_cast<std::uint64_t>(points - 1)));
    int r = l + 1 +
            static_cast<int>(rng.below(static_cast<std::uint64_t>(points - 1 - l)));
    Rat w(static_cast<long>(rng.below(17)), 4);
    w.canonicalize();
    out.jobs[job].push_back({l, r, w});
  }
  return out;
}

}  // namespace cakecut
