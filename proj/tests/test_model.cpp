#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cakecut/model.hpp"

using namespace cakecut;

namespace {

CakeInstance two_uniform() {
  return CakeInstance({{"a1", PiecewiseDensity({{Rat(0), Rat(1), Rat(1)}})},
                       {"a2", PiecewiseDensity({{Rat(0), Rat(1), Rat(1)}})}},
                      true);
}

// Disjoint supports: densities 2 on [0,1/2] and 2 on [1/2,1].
CakeInstance disjoint_support() {
  return CakeInstance(
      {{"a1", PiecewiseDensity({{Rat(0), Rat(1, 2), Rat(2)}, {Rat(1, 2), Rat(1), Rat(0)}})},
       {"a2", PiecewiseDensity({{Rat(0), Rat(1, 2), Rat(0)}, {Rat(1, 2), Rat(1), Rat(2)}})}},
      true);
}

}  // namespace

TEST_CASE("rational parsing") {
  CHECK(rat_from_string("3/6") == Rat(1, 2));
  CHECK(rat_from_string("-2/4") == Rat(-1, 2));
  CHECK(rat_from_string("7") == Rat(7));
  CHECK(rat_from_string("+7") == Rat(7));
  CHECK_THROWS_AS(rat_from_string("1.5"), ParseError);
  CHECK_THROWS_AS(rat_from_string("1/0"), ParseError);
  CHECK_THROWS_AS(rat_from_string(""), ParseError);
  CHECK_THROWS_AS(rat_from_string("2/"), ParseError);
  CHECK(rat_to_string(Rat(1, 2)) == "1/2");
}

TEST_CASE("eval query") {
  auto inst = disjoint_support();
  CHECK(inst.eval(0, Interval::make(Rat(0), Rat(1, 4))) == Rat(1, 2));
  CHECK(inst.eval(0, Interval::make(Rat(0), Rat(1))) == Rat(1));
  CHECK(inst.eval(1, Interval::make(Rat(0), Rat(1))) == Rat(1));
  CHECK(inst.eval(0, Interval::empty()) == Rat(0));
  CHECK_THROWS_AS(inst.eval(0, Interval::make(Rat(0), Rat(2))), CakeError);
  CHECK_THROWS_AS(inst.eval(5, Interval::make(Rat(0), Rat(1))), CakeError);
}

TEST_CASE("sigma additivity") {
  auto inst = disjoint_support();
  std::vector<Rat> pts = {Rat(0), Rat(1, 8), Rat(3, 8), Rat(1, 2), Rat(5, 7), Rat(1)};
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i; j < pts.size(); ++j)
      for (std::size_t k = j; k < pts.size(); ++k)
        CHECK(inst.eval(0, Interval::make(pts[i], pts[k])) ==
              inst.eval(0, Interval::make(pts[i], pts[j])) +
                  inst.eval(0, Interval::make(pts[j], pts[k])));
}

TEST_CASE("cut query") {
  auto uni = two_uniform();
  CHECK(uni.cut(0, Rat(0), Rat(1, 2)) == Rat(1, 2));
  CHECK(uni.cut(0, Rat(1, 3), Rat(0)) == Rat(1, 3));
  auto inst = disjoint_support();
  // Agent 2's density starts at 1/2; solve 2*(y - 1/2) = 1/12.
  CHECK(inst.cut(1, Rat(11, 24), Rat(1, 12)) == Rat(13, 24));
  CHECK_THROWS_AS(inst.cut(0, Rat(1, 2), Rat(1, 4)), InsufficientValue);
}

TEST_CASE("cut is leftmost and inverse to eval") {
  auto inst = disjoint_support();
  for (const Rat& start : {Rat(0), Rat(1, 5), Rat(1, 2)}) {
    for (const Rat& target : {Rat(1, 8), Rat(1, 4), Rat(1, 3)}) {
      Rat avail = inst.eval(1, Interval::make(start, Rat(1)));
      if (target > avail) continue;
      Rat y = inst.cut(1, start, target);
      CHECK(inst.eval(1, Interval::make(start, y)) == target);
      // Leftmost: any earlier breakpoint reaches strictly less value.
      for (const Rat& b : inst.agent(1).density.breakpoints())
        if (b > start && b < y)
          CHECK(inst.eval(1, Interval::make(start, b)) < target);
    }
  }
}

TEST_CASE("divisibility") {
  auto inst = disjoint_support();
  Interval iv = Interval::make(Rat(1, 4), Rat(7, 8));
  for (const Rat& lambda : {Rat(0), Rat(1, 3), Rat(1, 2), Rat(1)}) {
    Rat z = inst.cut(1, iv.left, lambda * inst.eval(1, iv));
    CHECK(z <= iv.right);
  }
}

TEST_CASE("rightmost cut") {
  auto uni = two_uniform();
  CHECK(uni.rightmost_cut(0, Rat(1), Rat(1, 2)) == Rat(1, 2));
  CHECK(uni.rightmost_cut(0, Rat(2, 3), Rat(0)) == Rat(2, 3));
  auto inst = disjoint_support();
  // Solve 2*(1/2 - y) = 1/4 on agent 1's support.
  CHECK(inst.rightmost_cut(0, Rat(1, 2), Rat(1, 4)) == Rat(3, 8));
  CHECK_THROWS_AS(inst.rightmost_cut(1, Rat(1, 2), Rat(1, 4)), InsufficientValue);
}

TEST_CASE("validate") {
  CHECK(two_uniform().validate().empty());
  CakeInstance gappy({{"a1", PiecewiseDensity({{Rat(0), Rat(3, 4), Rat(4, 3)}})}}, true);
  CHECK_FALSE(gappy.validate().empty());
  CakeInstance heavy({{"a1", PiecewiseDensity({{Rat(0), Rat(1), Rat(2)}})}}, true);
  CHECK_FALSE(heavy.validate().empty());
  CakeInstance heavy_ok({{"a1", PiecewiseDensity({{Rat(0), Rat(1), Rat(2)}})}}, false);
  CHECK(heavy_ok.validate().empty());
}

TEST_CASE("piece canonicalization") {
  PiecewiseDensity d({{Rat(0), Rat(1, 2), Rat(1)},
                      {Rat(1, 2), Rat(1, 2), Rat(5)},
                      {Rat(1, 2), Rat(1), Rat(1)}});
  CHECK(d.pieces().size() == 1);
  CHECK(d.breakpoints().empty());
}

TEST_CASE("rescale preserves values") {
  std::vector<Agent> raw = {{"a1", PiecewiseDensity({{Rat(0), Rat(2), Rat(1, 2)}})}};
  CakeInstance scaled = rescale_to_unit(raw, Rat(2), true);
  CHECK(scaled.eval(0, Interval::make(Rat(0), Rat(1))) == Rat(1));
  CHECK(scaled.agent(0).density.pieces().front().density == Rat(1));
  // Round trip on subintervals: image of [x,y] is [x/2, y/2].
  CHECK(scaled.eval(0, Interval::make(Rat(1, 4), Rat(1, 2))) == Rat(1, 4));
  CHECK_THROWS_AS(rescale_to_unit(raw, Rat(0), true), CakeError);
}

TEST_CASE("instance json round trip") {
  std::string text = R"({"normalized": true, "agents": [
    {"name": "a1", "pieces": [
      {"start": "0", "end": "1/2", "density": "2"},
      {"start": "1/2", "end": "1", "density": "0"}]},
    {"name": "a2", "pieces": [
      {"start": "0", "end": "1/2", "density": "0"},
      {"start": "1/2", "end": "1", "density": "2"}]}]})";
  CakeInstance inst = instance_from_json(text);
  CHECK(inst.agent_count() == 2);
  CHECK(inst.normalized());
  CHECK(inst.eval(0, Interval::make(Rat(0), Rat(1, 4))) == Rat(1, 2));
  CakeInstance again = instance_from_json(instance_to_json(inst));
  CHECK(instance_to_json(again) == instance_to_json(inst));
  CHECK_THROWS_AS(instance_from_json("{}"), ParseError);
  CHECK_THROWS_AS(
      instance_from_json(
          R"({"agents":[{"pieces":[{"start":"0","end":"1","density":"0.5"}]}]})"),
      ParseError);
}

TEST_CASE("breakpoints across agents") {
  auto inst = disjoint_support();
  auto bps = inst.breakpoints();
  REQUIRE(bps.size() == 1);
  CHECK(bps[0] == Rat(1, 2));
}
