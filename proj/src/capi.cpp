#include "cakecut/capi.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "cakecut/allocation.hpp"
#include "cakecut/ef_knife.hpp"
#include "cakecut/hardness.hpp"
#include "cakecut/jisp.hpp"
#include "cakecut/model.hpp"
#include "cakecut/nsw_exhaustive.hpp"
#include "cakecut/oracle.hpp"
#include "cakecut/random_gen.hpp"
#include "cakecut/welfare.hpp"
#include "json.hpp"

using namespace cakecut;

struct cc_instance {
  CakeInstance inst;
};

struct cc_allocation {
  Allocation alloc;
};

namespace {

thread_local std::string g_last_error = "no error";

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

cc_status fail(cc_status code, const std::string& what) {
  g_last_error = what;
  return code;
}

template <typename Fn>
cc_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const BudgetExceeded& e) {
    return fail(CC_BUDGET, std::string(e.what()) +
                               " (required: " + std::to_string(e.required) + ")");
  } catch (const ParseError& e) {
    return fail(CC_INVALID, e.what());
  } catch (const CakeError& e) {
    return fail(CC_INVALID, e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(CC_INVALID, e.what());
  } catch (const std::exception& e) {
    return fail(CC_ERROR, e.what());
  }
}

Rat arg_rat(const char* s, const char* name) {
  if (!s) throw ParseError(std::string("missing rational argument: ") + name);
  return rat_from_string(s);
}

}  // namespace

extern "C" {

const char* cc_last_error(void) { return g_last_error.c_str(); }

void cc_string_free(char* s) { std::free(s); }

cc_status cc_instance_from_json(const char* json, cc_instance** out) {
  return guarded([&] {
    if (!json || !out) return fail(CC_INVALID, "null argument");
    *out = new cc_instance{instance_from_json(json)};
    return CC_OK;
  });
}

cc_status cc_instance_to_json(const cc_instance* inst, char** out) {
  return guarded([&] {
    if (!inst || !out) return fail(CC_INVALID, "null argument");
    *out = dup_string(instance_to_json(inst->inst));
    return CC_OK;
  });
}

int cc_instance_agent_count(const cc_instance* inst) {
  return inst ? inst->inst.agent_count() : 0;
}

cc_status cc_instance_validate(const cc_instance* inst, char** violations_json) {
  return guarded([&] {
    if (!inst || !violations_json) return fail(CC_INVALID, "null argument");
    nlohmann::json j = nlohmann::json::array();
    for (const auto& v : inst->inst.validate()) j.push_back(v);
    *violations_json = dup_string(j.dump());
    return j.empty() ? CC_OK : fail(CC_CHECK_FAILED, j[0].get<std::string>());
  });
}

void cc_instance_free(cc_instance* inst) { delete inst; }

cc_status cc_allocation_from_json(const cc_instance* inst, const char* json,
                                  cc_allocation** out) {
  return guarded([&] {
    if (!inst || !json || !out) return fail(CC_INVALID, "null argument");
    *out = new cc_allocation{allocation_from_json(inst->inst, json)};
    return CC_OK;
  });
}

cc_status cc_allocation_to_json(const cc_instance* inst, const cc_allocation* alloc,
                                char** out) {
  return guarded([&] {
    if (!inst || !alloc || !out) return fail(CC_INVALID, "null argument");
    *out = dup_string(allocation_to_json(inst->inst, alloc->alloc));
    return CC_OK;
  });
}

void cc_allocation_free(cc_allocation* alloc) { delete alloc; }

cc_status cc_solve_ef(const cc_instance* inst, const char* epsilon, int two_ef,
                      int cut_and_choose, cc_allocation** out, char** trace_jsonl) {
  return guarded([&] {
    if (!inst || !out) return fail(CC_INVALID, "null argument");
    Rat eps = arg_rat(epsilon, "epsilon");
    KnifeResult r = two_ef ? alg_two_ef(inst->inst, eps, cut_and_choose != 0)
                           : alg_three_ef(inst->inst, eps, cut_and_choose != 0);
    *out = new cc_allocation{std::move(r.allocation)};
    if (trace_jsonl) *trace_jsonl = dup_string(trace_to_jsonl(r.trace));
    return CC_OK;
  });
}

cc_status cc_solve_nsw_exhaustive(const cc_instance* inst, const char* alpha,
                                  unsigned long budget, cc_allocation** out) {
  return guarded([&] {
    if (!inst || !out) return fail(CC_INVALID, "null argument");
    ExhaustiveResult r =
        exhaustive_nsw(inst->inst, arg_rat(alpha, "alpha"), budget ? budget : 2000000);
    *out = new cc_allocation{std::move(r.allocation)};
    return CC_OK;
  });
}

cc_status cc_solve_rho_mean(const cc_instance* inst, const char* rho, const char* epsilon,
                            unsigned long point_budget, cc_allocation** out) {
  return guarded([&] {
    if (!inst || !out) return fail(CC_INVALID, "null argument");
    RhoPipelineResult r =
        maximize_rho_mean(inst->inst, arg_rat(rho, "rho"), arg_rat(epsilon, "epsilon"),
                          point_budget ? point_budget : 20000);
    *out = new cc_allocation{std::move(r.allocation)};
    return CC_OK;
  });
}

cc_status cc_welfare_report_json(const cc_instance* inst, const cc_allocation* alloc,
                                 const char* rho, char** out) {
  return guarded([&] {
    if (!inst || !alloc || !out) return fail(CC_INVALID, "null argument");
    std::vector<Rat> rhos;
    if (rho) rhos.push_back(rat_from_string(rho));
    WelfareReport rep = welfare_report(inst->inst, alloc->alloc, rhos);
    *out = dup_string(welfare_report_to_json(inst->inst, rep));
    return CC_OK;
  });
}

cc_status cc_gen_random_json(int agents, int max_pieces, unsigned long long seed,
                             char** out) {
  return guarded([&] {
    if (!out) return fail(CC_INVALID, "null argument");
    *out = dup_string(instance_to_json(random_instance(agents, max_pieces, seed)));
    return CC_OK;
  });
}

cc_status cc_gen_hardness_json(const char* dimacs, const char* rho, int pad,
                               char** instance_json, char** layout_json) {
  return guarded([&] {
    if (!dimacs || !instance_json) return fail(CC_INVALID, "null argument");
    CnfFormula cnf = cnf_from_dimacs(dimacs);
    if (pad) cnf = pad_to_gadget_form(cnf);
    auto problems = cnf_violations(cnf);
    if (!problems.empty()) {
      std::string all;
      for (const auto& p : problems) all += (all.empty() ? "" : "; ") + p;
      return fail(CC_INVALID, "formula not in gadget form: " + all);
    }
    auto [inst, layout] =
        rho ? build_rho_instance(cnf, rat_from_string(rho)) : build_nsw_instance(cnf);
    *instance_json = dup_string(instance_to_json(inst));
    if (layout_json) *layout_json = dup_string(layout_to_json(layout, inst));
    return CC_OK;
  });
}

cc_status cc_verify(const cc_instance* inst, const cc_allocation* alloc,
                    const char* theorem, const char* options_json, char** verdict_json) {
  return guarded([&] {
    if (!inst || !alloc || !verdict_json) return fail(CC_INVALID, "null argument");
    nlohmann::json opts =
        options_json ? nlohmann::json::parse(options_json) : nlohmann::json::object();
    auto opt_rat = [&](const char* key, const char* fallback) {
      return rat_from_string(opts.value(key, fallback));
    };
    unsigned long budget = opts.value("budget", 20000000UL);
    std::string name = theorem ? theorem : "";

    auto problems = alloc->alloc.violations();
    if (!problems.empty()) return fail(CC_INVALID, "invalid allocation: " + problems.front());

    Verdict v;
    int n = inst->inst.agent_count();
    if (name.empty()) {
      v.pass = true;
      v.detail = "allocation is valid";
    } else if (name == "ef3" || name == "ef2") {
      Rat eps = opt_rat("epsilon", "1/3");
      Rat bound = Rat(name == "ef3" ? 3 : 2) + 9 * eps / n;
      EnvyRatio er = envy_ratio(inst->inst, alloc->alloc);
      v.pass = !er.infinite && er.value <= bound;
      v.detail = "envy ratio " + (er.infinite ? std::string("inf") : rat_to_string(er.value)) +
                 " vs bound " + rat_to_string(bound);
    } else if (name == "nsw3") {
      OracleResult o = grid_optimal(inst->inst, WelfareKind::nsw,
                                    opt_rat("resolution", "1/32"), Rat(1), budget);
      NswValue mine = nsw(inst->inst, alloc->alloc);
      Rat scale = Rat(3) + Rat(5, static_cast<long>(n));
      v.pass = nsw_power_at_least(mine.product, o.nsw_value.product, scale, mine.n);
      v.detail = "NSW " + mine.exact_string() + " vs oracle " + o.nsw_value.exact_string() +
                 " / " + rat_to_string(scale);
    } else if (name == "efnsw") {
      OracleResult o = grid_optimal(inst->inst, WelfareKind::nsw,
                                    opt_rat("resolution", "1/32"), Rat(1), budget);
      v = check_ef_nsw_theorem(inst->inst, alloc->alloc, o);
    } else if (name == "price") {
      Rat rho = opt_rat("rho", "1");
      OracleResult o = grid_optimal(inst->inst, WelfareKind::rho_mean,
                                    opt_rat("resolution", "1/32"), rho, budget);
      v = check_price_of_ef(inst->inst, alloc->alloc, rho, o);
    } else if (name == "4ef") {
      OracleResult o = grid_optimal(inst->inst, WelfareKind::nsw,
                                    opt_rat("resolution", "1/64"), Rat(1), budget);
      v = check_nash_optimal_4ef(inst->inst, o, opt_rat("slack", "1/4"));
    } else {
      return fail(CC_INVALID, "unknown theorem: " + name);
    }

    nlohmann::json out;
    out["theorem"] = name.empty() ? "validity" : name;
    out["pass"] = v.pass;
    out["applicable"] = v.applicable;
    out["detail"] = v.detail;
    *verdict_json = dup_string(out.dump(2) + "\n");
    return v.pass ? CC_OK : fail(CC_CHECK_FAILED, "check failed: " + v.detail);
  });
}

}  // extern "C"
