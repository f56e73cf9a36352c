#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cakecut/rat.hpp"

namespace cakecut {

struct CakeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised by cut queries when the remaining cake cannot supply the target.
struct InsufficientValue : CakeError {
  using CakeError::CakeError;
};

struct BudgetExceeded : CakeError {
  unsigned long required;
  BudgetExceeded(const std::string& what, unsigned long required_)
      : CakeError(what), required(required_) {}
};

/// Closed subinterval of the cake. Zero-length intervals are treated as
/// empty; the canonical empty value is [0,0]. Two intervals count as
/// disjoint when their interiors are disjoint (shared endpoints allowed).
struct Interval {
  Rat left{0};
  Rat right{0};

  static Interval empty() { return {}; }
  static Interval make(Rat l, Rat r) {
    if (r <= l) return empty();
    return {std::move(l), std::move(r)};
  }

  bool is_empty() const { return right <= left; }
  Rat length() const { return is_empty() ? Rat(0) : Rat(right - left); }

  bool operator==(const Interval& o) const {
    if (is_empty() && o.is_empty()) return true;
    return left == o.left && right == o.right;
  }
};

inline bool interiors_overlap(const Interval& a, const Interval& b) {
  if (a.is_empty() || b.is_empty()) return false;
  return a.left < b.right && b.left < a.right;
}

struct DensityPiece {
  Rat start;
  Rat end;
  Rat density;  // >= 0
};

/// Piecewise-constant density over [0,1]. Pieces tile the cake; adjacent
/// pieces with equal density are merged and zero-length pieces dropped on
/// construction.
class PiecewiseDensity {
 public:
  PiecewiseDensity() = default;
  explicit PiecewiseDensity(std::vector<DensityPiece> pieces);

  const std::vector<DensityPiece>& pieces() const { return pieces_; }

  /// Exact integral of the density over [x, y].
  Rat integral(const Rat& x, const Rat& y) const;

  Rat total() const;

  /// Interior breakpoints of the density.
  std::vector<Rat> breakpoints() const;

  std::vector<std::string> violations() const;

 private:
  std::vector<DensityPiece> pieces_;
  std::vector<Rat> prefix_;  // prefix_[i] = integral over [0, pieces_[i].start]

  void rebuild_prefix();
};

struct Agent {
  std::string name;
  PiecewiseDensity density;
};

/// Immutable cake-division instance: n agents with piecewise-constant
/// valuations over [0,1]. All query operations are pure.
class CakeInstance {
 public:
  CakeInstance(std::vector<Agent> agents, bool normalized);

  int agent_count() const { return static_cast<int>(agents_.size()); }
  const std::vector<Agent>& agents() const { return agents_; }
  const Agent& agent(int a) const;
  bool normalized() const { return normalized_; }

  /// Evaluation query: v_a(interval), exact.
  Rat eval(int agent, const Interval& iv) const;

  /// Cut query: leftmost y in [start, 1] with v_agent([start, y]) == target.
  Rat cut(int agent, const Rat& start, const Rat& target) const;

  /// Mirror cut: rightmost y in [0, end] with v_agent([y, end]) == target.
  Rat rightmost_cut(int agent, const Rat& end, const Rat& target) const;

  std::vector<std::string> validate() const;

  /// All density breakpoints across agents, sorted, deduplicated,
  /// excluding 0 and 1.
  std::vector<Rat> breakpoints() const;

 private:
  std::vector<Agent> agents_;
  bool normalized_;
};

/// Affine reparameterization of densities given on [0, L] onto [0, 1];
/// interval values are preserved under the map x -> x/L.
CakeInstance rescale_to_unit(const std::vector<Agent>& agents, const Rat& length,
                             bool normalized);

// JSON instance format:
//   {"normalized": true, "agents": [{"name": "a1", "pieces":
//     [{"start": "0", "end": "1/2", "density": "2"}, ...]}, ...]}
// All numbers are rational strings.
CakeInstance instance_from_json(const std::string& text);
std::string instance_to_json(const CakeInstance& inst);

}  // namespace cakecut
