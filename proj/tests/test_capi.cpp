#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstring>
#include <string>

#include "cakecut/capi.h"

namespace {

const char* kDisjoint = R"({
  "normalized": true,
  "agents": [
    {"name": "a1", "pieces": [
      {"start": "0", "end": "1/2", "density": "2"},
      {"start": "1/2", "end": "1", "density": "0"}]},
    {"name": "a2", "pieces": [
      {"start": "0", "end": "1/2", "density": "0"},
      {"start": "1/2", "end": "1", "density": "2"}]}
  ]
})";

struct Str {
  char* p{nullptr};
  ~Str() { cc_string_free(p); }
  std::string view() const { return p ? std::string(p) : std::string(); }
};

struct Inst {
  cc_instance* p{nullptr};
  ~Inst() { cc_instance_free(p); }
};

struct Alloc {
  cc_allocation* p{nullptr};
  ~Alloc() { cc_allocation_free(p); }
};

}  // namespace

TEST_CASE("instance round trip and validation") {
  Inst inst;
  REQUIRE(cc_instance_from_json(kDisjoint, &inst.p) == CC_OK);
  CHECK(cc_instance_agent_count(inst.p) == 2);

  Str json;
  REQUIRE(cc_instance_to_json(inst.p, &json.p) == CC_OK);
  Inst again;
  CHECK(cc_instance_from_json(json.p, &again.p) == CC_OK);

  Str violations;
  REQUIRE(cc_instance_validate(inst.p, &violations.p) == CC_OK);
  CHECK(violations.view() == "[]");

  cc_instance* bad = nullptr;
  CHECK(cc_instance_from_json("{\"agents\": []}", &bad) == CC_INVALID);
  CHECK(bad == nullptr);
  CHECK(std::strlen(cc_last_error()) > 0);
  CHECK(cc_instance_from_json("not json", &bad) == CC_INVALID);
}

TEST_CASE("solve ef through the c api") {
  Inst inst;
  REQUIRE(cc_instance_from_json(kDisjoint, &inst.p) == CC_OK);

  Alloc alloc;
  Str trace;
  REQUIRE(cc_solve_ef(inst.p, "1/3", 0, 0, &alloc.p, &trace.p) == CC_OK);
  Str alloc_json;
  REQUIRE(cc_allocation_to_json(inst.p, alloc.p, &alloc_json.p) == CC_OK);
  CHECK(alloc_json.view().find("11/24") != std::string::npos);
  CHECK(trace.view().find("\"iteration\":12") != std::string::npos);

  Alloc two;
  REQUIRE(cc_solve_ef(inst.p, "1/3", 1, 0, &two.p, nullptr) == CC_OK);
  Alloc cc;
  REQUIRE(cc_solve_ef(inst.p, "1/3", 0, 1, &cc.p, nullptr) == CC_OK);

  Alloc reject;
  CHECK(cc_solve_ef(inst.p, "1/2", 0, 0, &reject.p, nullptr) == CC_INVALID);
  CHECK(cc_solve_ef(inst.p, "nope", 0, 0, &reject.p, nullptr) == CC_INVALID);
}

TEST_CASE("allocation round trip") {
  Inst inst;
  REQUIRE(cc_instance_from_json(kDisjoint, &inst.p) == CC_OK);
  const char* alloc_json =
      R"({"pieces":[{"agent":"a1","left":"0","right":"1/2"},)"
      R"({"agent":"a2","left":"1/2","right":"1"}]})";
  Alloc alloc;
  REQUIRE(cc_allocation_from_json(inst.p, alloc_json, &alloc.p) == CC_OK);
  Str back;
  REQUIRE(cc_allocation_to_json(inst.p, alloc.p, &back.p) == CC_OK);
  CHECK(back.view().find("\"1/2\"") != std::string::npos);

  cc_allocation* bad = nullptr;
  CHECK(cc_allocation_from_json(inst.p, "{}", &bad) == CC_INVALID);
}

TEST_CASE("welfare report and verify") {
  Inst inst;
  REQUIRE(cc_instance_from_json(kDisjoint, &inst.p) == CC_OK);
  Alloc alloc;
  REQUIRE(cc_solve_ef(inst.p, "1/3", 0, 0, &alloc.p, nullptr) == CC_OK);

  Str report;
  REQUIRE(cc_welfare_report_json(inst.p, alloc.p, "1/2", &report.p) == CC_OK);
  CHECK(report.view().find("envy_ratio") != std::string::npos);
  CHECK(report.view().find("rho") != std::string::npos);

  Str verdict;
  CHECK(cc_verify(inst.p, alloc.p, "ef3", nullptr, &verdict.p) == CC_OK);
  CHECK(verdict.view().find("\"pass\": true") != std::string::npos);

  Str v2;
  CHECK(cc_verify(inst.p, alloc.p, "ef2", "{\"epsilon\":\"1/3\"}", &v2.p) == CC_OK);
  Str v3;
  CHECK(cc_verify(inst.p, alloc.p, "efnsw", "{\"resolution\":\"1/16\"}", &v3.p) == CC_OK);
  Str v4;
  CHECK(cc_verify(inst.p, alloc.p, "price", "{\"rho\":\"1/2\"}", &v4.p) == CC_OK);
  Str v5;
  CHECK(cc_verify(inst.p, alloc.p, "4ef", nullptr, &v5.p) == CC_OK);
  Str v6;
  CHECK(cc_verify(inst.p, alloc.p, nullptr, nullptr, &v6.p) == CC_OK);
  Str v7;
  CHECK(cc_verify(inst.p, alloc.p, "unknown", nullptr, &v7.p) == CC_INVALID);

  // A failing property: claim the ef2 bound for a lopsided allocation.
  const char* lopsided =
      R"({"pieces":[{"agent":"a1","left":"0","right":"63/64"},)"
      R"({"agent":"a2","left":"63/64","right":"1"}]})";
  Alloc greedy;
  REQUIRE(cc_allocation_from_json(inst.p, lopsided, &greedy.p) == CC_OK);
  Str v8;
  CHECK(cc_verify(inst.p, greedy.p, "ef2", nullptr, &v8.p) == CC_CHECK_FAILED);
  CHECK(v8.view().find("\"pass\": false") != std::string::npos);
}

TEST_CASE("other solvers and generators") {
  Inst inst;
  REQUIRE(cc_instance_from_json(kDisjoint, &inst.p) == CC_OK);

  Alloc nswa;
  REQUIRE(cc_solve_nsw_exhaustive(inst.p, "2", 0, &nswa.p) == CC_OK);
  Str rep;
  REQUIRE(cc_welfare_report_json(inst.p, nswa.p, nullptr, &rep.p) == CC_OK);
  CHECK(rep.view().find("\"1\"") != std::string::npos);

  Alloc rhoa;
  REQUIRE(cc_solve_rho_mean(inst.p, "1", "1/2", 0, &rhoa.p) == CC_OK);

  Alloc tight;
  CHECK(cc_solve_nsw_exhaustive(inst.p, "101/100", 10, &tight.p) == CC_BUDGET);
  CHECK(std::string(cc_last_error()).find("required") != std::string::npos);

  Str rnd;
  REQUIRE(cc_gen_random_json(3, 4, 42, &rnd.p) == CC_OK);
  Inst rnd_inst;
  CHECK(cc_instance_from_json(rnd.p, &rnd_inst.p) == CC_OK);
  CHECK(cc_instance_agent_count(rnd_inst.p) == 3);

  Str gadget;
  Str layout;
  REQUIRE(cc_gen_hardness_json("p cnf 2 2\n1 2 0\n-1 -2 0\n", nullptr, 0,
                               &gadget.p, &layout.p) == CC_OK);
  Inst ginst;
  REQUIRE(cc_instance_from_json(gadget.p, &ginst.p) == CC_OK);
  CHECK(cc_instance_agent_count(ginst.p) == 9);
  CHECK(layout.view().find("e1_7") != std::string::npos);

  Str gr;
  REQUIRE(cc_gen_hardness_json("p cnf 2 2\n1 2 0\n-1 -2 0\n", "1/2", 0, &gr.p,
                               nullptr) == CC_OK);
  Inst grinst;
  REQUIRE(cc_instance_from_json(gr.p, &grinst.p) == CC_OK);
  CHECK(cc_instance_agent_count(grinst.p) == 8);

  char* fail = nullptr;
  CHECK(cc_gen_hardness_json("p cnf 2 1\n1 2 0\n", nullptr, 0, &fail, nullptr) ==
        CC_INVALID);
  Str padded;
  CHECK(cc_gen_hardness_json("p cnf 2 1\n1 2 0\n", nullptr, 1, &padded.p, nullptr) ==
        CC_OK);
}
