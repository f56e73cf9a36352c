#include "cakecut/allocation.hpp"

#include <algorithm>
#include <map>

#include "json.hpp"

namespace cakecut {

namespace {

std::vector<std::string> disjointness_violations(const std::vector<Interval>& ivs) {
  std::vector<std::string> out;
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < ivs.size(); ++i) {
    const auto& iv = ivs[i];
    if (iv.is_empty()) continue;
    if (iv.left < 0 || iv.right > 1)
      out.push_back("interval outside [0,1]: [" + rat_to_string(iv.left) + "," +
                    rat_to_string(iv.right) + "]");
    order.push_back(i);
  }
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return ivs[a].left < ivs[b].left; });
  for (std::size_t k = 1; k < order.size(); ++k) {
    const auto& prev = ivs[order[k - 1]];
    const auto& cur = ivs[order[k]];
    if (prev.right > cur.left)
      out.push_back("intervals overlap at [" + rat_to_string(cur.left) + "," +
                    rat_to_string(prev.right) + "]");
  }
  return out;
}

}  // namespace

std::vector<std::string> PartialAllocation::violations() const {
  return disjointness_violations(assigned);
}

std::vector<std::string> Allocation::violations() const {
  auto out = disjointness_violations(assigned);
  Rat covered(0);
  for (const auto& iv : assigned) covered += iv.length();
  if (out.empty() && covered != 1) out.push_back("intervals do not cover the cake");
  return out;
}

UnassignedSet unassigned_gaps(const PartialAllocation& partial) {
  std::vector<Interval> nonempty;
  for (const auto& iv : partial.assigned)
    if (!iv.is_empty()) nonempty.push_back(iv);
  std::sort(nonempty.begin(), nonempty.end(),
            [](const Interval& a, const Interval& b) { return a.left < b.left; });
  UnassignedSet u;
  Rat pos(0);
  for (const auto& iv : nonempty) {
    if (iv.left > pos) u.gaps.push_back(Interval::make(pos, iv.left));
    pos = std::max(pos, iv.right);
  }
  if (pos < 1) u.gaps.push_back(Interval::make(pos, Rat(1)));
  return u;
}

Allocation complete_allocation(const PartialAllocation& partial) {
  // Sorted nonempty pieces with owners.
  std::vector<std::pair<Interval, int>> pieces;
  for (int a = 0; a < partial.size(); ++a) {
    const auto& iv = partial.assigned[static_cast<std::size_t>(a)];
    if (!iv.is_empty()) pieces.emplace_back(iv, a);
  }
  if (pieces.empty()) throw CakeError("cannot complete an empty partial allocation");
  std::sort(pieces.begin(), pieces.end(),
            [](const auto& x, const auto& y) { return x.first.left < y.first.left; });

  // Merge every gap into the adjacent piece on its left; the leading gap
  // (no left neighbor) goes to the first piece.
  pieces.front().first.left = 0;
  for (std::size_t k = 0; k + 1 < pieces.size(); ++k)
    pieces[k].first.right = pieces[k + 1].first.left;
  pieces.back().first.right = 1;

  Allocation out;
  out.assigned.assign(partial.assigned.size(), Interval::empty());
  for (auto& [iv, a] : pieces) out.assigned[static_cast<std::size_t>(a)] = iv;
  return out;
}

Allocation allocation_from_json(const CakeInstance& inst, const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (!j.contains("pieces") || !j["pieces"].is_array())
    throw ParseError("allocation needs a 'pieces' array");
  std::map<std::string, int> index;
  for (int a = 0; a < inst.agent_count(); ++a) index[inst.agent(a).name] = a;
  Allocation out;
  out.assigned.assign(static_cast<std::size_t>(inst.agent_count()), Interval::empty());
  for (const auto& jp : j["pieces"]) {
    if (!jp.contains("agent") || !jp["agent"].is_string())
      throw ParseError("allocation piece needs an 'agent' name");
    auto it = index.find(jp["agent"].get<std::string>());
    if (it == index.end())
      throw ParseError("unknown agent in allocation: " + jp["agent"].get<std::string>());
    auto& slot = out.assigned[static_cast<std::size_t>(it->second)];
    if (!slot.is_empty())
      throw ParseError("agent assigned twice: " + jp["agent"].get<std::string>());
    Rat l = rat_from_string(jp.at("left").get<std::string>());
    Rat r = rat_from_string(jp.at("right").get<std::string>());
    if (r < l) throw ParseError("allocation piece with right < left");
    slot = Interval::make(std::move(l), std::move(r));
  }
  return out;
}

std::string allocation_to_json(const CakeInstance& inst, const Allocation& alloc) {
  if (alloc.size() != inst.agent_count())
    throw CakeError("allocation size does not match instance");
  nlohmann::json j;
  j["pieces"] = nlohmann::json::array();
  for (int a = 0; a < alloc.size(); ++a) {
    const auto& iv = alloc.assigned[static_cast<std::size_t>(a)];
    if (iv.is_empty()) continue;
    j["pieces"].push_back({{"agent", inst.agent(a).name},
                           {"left", rat_to_string(iv.left)},
                           {"right", rat_to_string(iv.right)}});
  }
  return j.dump(2) + "\n";
}

}  // namespace cakecut
