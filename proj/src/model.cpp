#include "cakecut/model.hpp"

#include <algorithm>
#include <utility>

#include "json.hpp"

namespace cakecut {

PiecewiseDensity::PiecewiseDensity(std::vector<DensityPiece> pieces) {
  for (auto& p : pieces) {
    if (p.end <= p.start) continue;  // drop degenerate pieces
    if (!pieces_.empty() && pieces_.back().density == p.density &&
        pieces_.back().end == p.start) {
      pieces_.back().end = p.end;  // merge equal-density neighbors
    } else {
      pieces_.push_back(std::move(p));
    }
  }
  rebuild_prefix();
}

void PiecewiseDensity::rebuild_prefix() {
  prefix_.clear();
  prefix_.reserve(pieces_.size() + 1);
  Rat acc(0);
  for (const auto& p : pieces_) {
    prefix_.push_back(acc);
    acc += p.density * (p.end - p.start);
  }
  prefix_.push_back(acc);
}

Rat PiecewiseDensity::total() const {
  return prefix_.empty() ? Rat(0) : prefix_.back();
}

std::vector<Rat> PiecewiseDensity::breakpoints() const {
  std::vector<Rat> out;
  for (std::size_t i = 1; i < pieces_.size(); ++i) out.push_back(pieces_[i].start);
  return out;
}

namespace {

// Integral of the density over [0, x] via prefix sums.
Rat cumulative(const std::vector<DensityPiece>& pieces, const std::vector<Rat>& prefix,
               const Rat& x) {
  if (pieces.empty() || x <= pieces.front().start) return Rat(0);
  // First piece with end >= x.
  auto it = std::lower_bound(pieces.begin(), pieces.end(), x,
                             [](const DensityPiece& p, const Rat& v) { return p.end < v; });
  if (it == pieces.end()) return prefix.back();
  std::size_t i = static_cast<std::size_t>(it - pieces.begin());
  return prefix[i] + it->density * (x - it->start);
}

}  // namespace

Rat PiecewiseDensity::integral(const Rat& x, const Rat& y) const {
  if (y <= x) return Rat(0);
  return cumulative(pieces_, prefix_, y) - cumulative(pieces_, prefix_, x);
}

std::vector<std::string> PiecewiseDensity::violations() const {
  std::vector<std::string> out;
  if (pieces_.empty()) {
    out.push_back("density has no pieces");
    return out;
  }
  if (pieces_.front().start != 0) out.push_back("pieces do not start at 0");
  if (pieces_.back().end != 1) out.push_back("pieces do not end at 1");
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const auto& p = pieces_[i];
    if (p.end <= p.start) out.push_back("zero-length piece");
    if (p.density < 0) out.push_back("negative density");
    if (i > 0 && pieces_[i - 1].end != p.start)
      out.push_back("gap between pieces at " + rat_to_string(p.start));
  }
  return out;
}

CakeInstance::CakeInstance(std::vector<Agent> agents, bool normalized)
    : agents_(std::move(agents)), normalized_(normalized) {
  if (agents_.empty()) throw CakeError("instance needs at least one agent");
}

const Agent& CakeInstance::agent(int a) const {
  if (a < 0 || a >= agent_count()) throw CakeError("agent index out of range");
  return agents_[static_cast<std::size_t>(a)];
}

Rat CakeInstance::eval(int a, const Interval& iv) const {
  const Agent& ag = agent(a);
  if (iv.is_empty()) return Rat(0);
  if (iv.left < 0 || iv.right > 1) throw CakeError("interval outside [0,1]");
  return ag.density.integral(iv.left, iv.right);
}

Rat CakeInstance::cut(int a, const Rat& start, const Rat& target) const {
  const Agent& ag = agent(a);
  if (start < 0 || start > 1) throw CakeError("cut start outside [0,1]");
  if (target < 0) throw CakeError("cut target negative");
  if (target == 0) return start;
  Rat acc(0);
  for (const auto& p : ag.density.pieces()) {
    if (p.end <= start) continue;
    Rat lo = std::max(p.start, start);
    if (p.density > 0) {
      Rat gain = p.density * (p.end - lo);
      if (acc + gain >= target) return lo + (target - acc) / p.density;
      acc += gain;
    }
  }
  throw InsufficientValue("cut query: remaining value " + rat_to_string(acc) +
                          " below target " + rat_to_string(target));
}

Rat CakeInstance::rightmost_cut(int a, const Rat& end, const Rat& target) const {
  const Agent& ag = agent(a);
  if (end < 0 || end > 1) throw CakeError("cut end outside [0,1]");
  if (target < 0) throw CakeError("cut target negative");
  if (target == 0) return end;
  Rat acc(0);
  const auto& pieces = ag.density.pieces();
  for (auto it = pieces.rbegin(); it != pieces.rend(); ++it) {
    if (it->start >= end) continue;
    Rat hi = std::min(it->end, end);
    if (it->density > 0) {
      Rat gain = it->density * (hi - it->start);
      if (acc + gain >= target) return hi - (target - acc) / it->density;
      acc += gain;
    }
  }
  throw InsufficientValue("rightmost cut query: remaining value " + rat_to_string(acc) +
                          " below target " + rat_to_string(target));
}

std::vector<std::string> CakeInstance::validate() const {
  std::vector<std::string> out;
  for (const auto& ag : agents_) {
    for (auto& v : ag.density.violations()) out.push_back(ag.name + ": " + v);
    if (normalized_ && ag.density.total() != 1)
      out.push_back(ag.name + ": total value " + rat_to_string(ag.density.total()) +
                    " violates normalization");
  }
  return out;
}

std::vector<Rat> CakeInstance::breakpoints() const {
  std::vector<Rat> pts;
  for (const auto& ag : agents_)
    for (auto& b : ag.density.breakpoints())
      if (b > 0 && b < 1) pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

CakeInstance rescale_to_unit(const std::vector<Agent>& agents, const Rat& length,
                             bool normalized) {
  if (length <= 0) throw CakeError("cake length must be positive");
  std::vector<Agent> scaled;
  scaled.reserve(agents.size());
  for (const auto& ag : agents) {
    std::vector<DensityPiece> pieces;
    pieces.reserve(ag.density.pieces().size());
    for (const auto& p : ag.density.pieces())
      pieces.push_back({p.start / length, p.end / length, p.density * length});
    scaled.push_back({ag.name, PiecewiseDensity(std::move(pieces))});
  }
  return CakeInstance(std::move(scaled), normalized);
}

namespace {

Rat json_rat(const nlohmann::json& j, const char* field) {
  if (!j.contains(field) || !j[field].is_string())
    throw ParseError(std::string("expected rational string field '") + field + "'");
  return rat_from_string(j[field].get<std::string>());
}

}  // namespace

CakeInstance instance_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (!j.contains("agents") || !j["agents"].is_array() || j["agents"].empty())
    throw ParseError("instance needs a non-empty 'agents' array");
  bool normalized = j.value("normalized", true);
  std::vector<Agent> agents;
  for (const auto& ja : j["agents"]) {
    Agent ag;
    ag.name = ja.value("name", "a" + std::to_string(agents.size() + 1));
    std::vector<DensityPiece> pieces;
    for (const auto& jp : ja.at("pieces"))
      pieces.push_back({json_rat(jp, "start"), json_rat(jp, "end"), json_rat(jp, "density")});
    ag.density = PiecewiseDensity(std::move(pieces));
    agents.push_back(std::move(ag));
  }
  return CakeInstance(std::move(agents), normalized);
}

std::string instance_to_json(const CakeInstance& inst) {
  nlohmann::json j;
  j["normalized"] = inst.normalized();
  j["agents"] = nlohmann::json::array();
  for (const auto& ag : inst.agents()) {
    nlohmann::json ja;
    ja["name"] = ag.name;
    ja["pieces"] = nlohmann::json::array();
    for (const auto& p : ag.density.pieces())
      ja["pieces"].push_back({{"start", rat_to_string(p.start)},
                              {"end", rat_to_string(p.end)},
                              {"density", rat_to_string(p.density)}});
    j["agents"].push_back(std::move(ja));
  }
  return j.dump(2) + "\n";
}

}  // namespace cakecut
