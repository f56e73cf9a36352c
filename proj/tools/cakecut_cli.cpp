#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "cakecut/capi.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

int status_to_exit(cc_status s) {
  switch (s) {
    case CC_OK: return kExitPass;
    case CC_CHECK_FAILED: return kExitCheckFailed;
    case CC_BUDGET: return kExitBudget;
    default: return kExitUsage;
  }
}

int report_error(cc_status s) {
  std::cerr << "error: " << cc_last_error() << "\n";
  return status_to_exit(s);
}

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

bool write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return true;
  }
  std::ofstream out(path);
  if (!out) return false;
  out << text;
  return out.good();
}

unsigned long env_budget() {
  const char* v = std::getenv("CAKECUT_BUDGET");
  if (!v || !*v) return 0;  // 0 means library default
  return std::strtoul(v, nullptr, 10);
}

struct InstanceHandle {
  cc_instance* ptr{nullptr};
  ~InstanceHandle() { cc_instance_free(ptr); }
};

struct AllocationHandle {
  cc_allocation* ptr{nullptr};
  ~AllocationHandle() { cc_allocation_free(ptr); }
};

struct StringHandle {
  char* ptr{nullptr};
  ~StringHandle() { cc_string_free(ptr); }
  std::string str() const { return ptr ? ptr : ""; }
};

int load_instance(const std::string& path, InstanceHandle& inst) {
  std::string text;
  if (!read_file(path, text)) {
    std::cerr << "error: cannot read " << path << "\n";
    return kExitUsage;
  }
  cc_status s = cc_instance_from_json(text.c_str(), &inst.ptr);
  if (s != CC_OK) return report_error(s);
  return kExitPass;
}

int run_solve(const std::string& algo, const std::string& instance_path,
              const std::string& epsilon, const std::string& alpha, const std::string& rho,
              const std::string& trace_path, const std::string& out_path,
              bool cut_and_choose) {
  InstanceHandle inst;
  if (int rc = load_instance(instance_path, inst)) return rc;

  AllocationHandle alloc;
  StringHandle trace;
  cc_status s;
  const char* rho_for_report = nullptr;
  if (algo == "ef3" || algo == "ef2") {
    s = cc_solve_ef(inst.ptr, epsilon.c_str(), algo == "ef2" ? 1 : 0,
                    cut_and_choose ? 1 : 0, &alloc.ptr,
                    trace_path.empty() ? nullptr : &trace.ptr);
  } else if (algo == "nsw-exhaustive") {
    s = cc_solve_nsw_exhaustive(inst.ptr, alpha.c_str(), env_budget(), &alloc.ptr);
  } else if (algo == "rho-mean") {
    s = cc_solve_rho_mean(inst.ptr, rho.c_str(), epsilon.c_str(), env_budget(), &alloc.ptr);
    rho_for_report = rho.c_str();
  } else {
    std::cerr << "error: unknown algorithm " << algo << "\n";
    return kExitUsage;
  }
  if (s != CC_OK) return report_error(s);

  if (!trace_path.empty() && !write_output(trace_path, trace.str())) {
    std::cerr << "error: cannot write " << trace_path << "\n";
    return kExitUsage;
  }
  StringHandle alloc_json;
  if ((s = cc_allocation_to_json(inst.ptr, alloc.ptr, &alloc_json.ptr)) != CC_OK)
    return report_error(s);
  if (!write_output(out_path, alloc_json.str())) {
    std::cerr << "error: cannot write " << out_path << "\n";
    return kExitUsage;
  }
  StringHandle report;
  if ((s = cc_welfare_report_json(inst.ptr, alloc.ptr, rho_for_report, &report.ptr)) != CC_OK)
    return report_error(s);
  (out_path.empty() ? std::cerr : std::cout) << report.str();
  return kExitPass;
}

int run_gen(const std::string& kind, const std::string& cnf_path, const std::string& rho,
            bool pad, int agents, int pieces, unsigned long long seed,
            const std::string& out_path, const std::string& layout_path) {
  StringHandle instance_json;
  StringHandle layout_json;
  cc_status s;
  if (kind == "random") {
    s = cc_gen_random_json(agents, pieces, seed, &instance_json.ptr);
  } else if (kind == "hardness-nsw" || kind == "hardness-rho") {
    std::string dimacs;
    if (cnf_path.empty() || !read_file(cnf_path, dimacs)) {
      std::cerr << "error: cannot read --cnf file\n";
      return kExitUsage;
    }
    s = cc_gen_hardness_json(dimacs.c_str(),
                             kind == "hardness-rho" ? rho.c_str() : nullptr, pad ? 1 : 0,
                             &instance_json.ptr,
                             layout_path.empty() ? nullptr : &layout_json.ptr);
  } else {
    std::cerr << "error: unknown generator " << kind << "\n";
    return kExitUsage;
  }
  if (s != CC_OK) return report_error(s);
  if (!write_output(out_path, instance_json.str())) {
    std::cerr << "error: cannot write " << out_path << "\n";
    return kExitUsage;
  }
  if (!layout_path.empty() && !write_output(layout_path, layout_json.str())) {
    std::cerr << "error: cannot write " << layout_path << "\n";
    return kExitUsage;
  }
  return kExitPass;
}

int run_verify(const std::string& instance_path, const std::string& allocation_path,
               const std::string& theorem, const std::string& resolution,
               const std::string& rho, const std::string& epsilon,
               const std::string& slack) {
  InstanceHandle inst;
  if (int rc = load_instance(instance_path, inst)) return rc;
  std::string alloc_text;
  if (!read_file(allocation_path, alloc_text)) {
    std::cerr << "error: cannot read " << allocation_path << "\n";
    return kExitUsage;
  }
  AllocationHandle alloc;
  cc_status s = cc_allocation_from_json(inst.ptr, alloc_text.c_str(), &alloc.ptr);
  if (s != CC_OK) return report_error(s);

  std::string opts = "{";
  auto add = [&](const char* key, const std::string& value) {
    if (value.empty()) return;
    if (opts.size() > 1) opts += ",";
    opts += std::string("\"") + key + "\":\"" + value + "\"";
  };
  add("resolution", resolution);
  add("rho", rho);
  add("epsilon", epsilon);
  add("slack", slack);
  if (unsigned long b = env_budget()) {
    if (opts.size() > 1) opts += ",";
    opts += "\"budget\":" + std::to_string(b);
  }
  opts += "}";

  StringHandle verdict;
  s = cc_verify(inst.ptr, alloc.ptr, theorem.empty() ? nullptr : theorem.c_str(),
                opts.c_str(), &verdict.ptr);
  if (verdict.ptr) std::cout << verdict.str();
  if (s != CC_OK && s != CC_CHECK_FAILED) return report_error(s);
  return status_to_exit(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cake division with connected pieces: solvers, generators, verifiers"};
  app.require_subcommand(1);

  auto* solve = app.add_subcommand("solve", "compute an allocation");
  std::string algo, instance_path, out_path, trace_path;
  std::string epsilon = "1/3", alpha = "2", rho = "1";
  bool cut_and_choose = false;
  solve->add_option("--algo", algo, "ef3|ef2|nsw-exhaustive|rho-mean")->required();
  solve->add_option("--instance", instance_path, "instance JSON file")->required();
  solve->add_option("--epsilon", epsilon, "rational accuracy parameter (default 1/3)");
  solve->add_option("--alpha", alpha, "grid ratio for nsw-exhaustive (default 2)");
  solve->add_option("--rho", rho, "mean exponent for rho-mean (default 1)");
  solve->add_option("--trace", trace_path, "write the iteration trace (JSON lines)");
  solve->add_option("--out", out_path, "allocation output file (default stdout)");
  solve->add_flag("--cut-and-choose", cut_and_choose,
                  "use exact cut-and-choose on two-agent instances");

  auto* gen = app.add_subcommand("gen", "generate instances");
  std::string kind, cnf_path, gen_out, layout_path, gen_rho = "1/2";
  bool pad = false;
  int agents = 2, pieces = 3;
  unsigned long long seed = 0;
  gen->add_option("kind", kind, "hardness-nsw|hardness-rho|random")->required();
  gen->add_option("--cnf", cnf_path, "DIMACS CNF input for the hardness gadgets");
  gen->add_option("--rho", gen_rho, "mean exponent for hardness-rho (default 1/2)");
  gen->add_flag("--pad", pad, "pad formulas with tautologies to reach gadget form");
  gen->add_option("--agents", agents, "agent count for random instances");
  gen->add_option("--pieces", pieces, "max density pieces per agent");
  gen->add_option("--seed", seed, "random seed");
  gen->add_option("--out", gen_out, "instance output file (default stdout)");
  gen->add_option("--layout", layout_path, "layout sidecar output for gadgets");

  auto* verify = app.add_subcommand("verify", "check an allocation against a theorem");
  std::string v_instance, v_allocation, theorem, resolution, v_rho, v_eps, slack;
  verify->add_option("--instance", v_instance, "instance JSON file")->required();
  verify->add_option("--allocation", v_allocation, "allocation JSON file")->required();
  verify->add_option("--theorem", theorem, "ef3|ef2|nsw3|efnsw|price|4ef");
  verify->add_option("--resolution", resolution, "oracle grid resolution (rational)");
  verify->add_option("--rho", v_rho, "mean exponent for price checks");
  verify->add_option("--epsilon", v_eps, "epsilon used by the ef bounds (default 1/3)");
  verify->add_option("--slack", slack, "slack for the 4ef check (default 1/4)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  if (solve->parsed())
    return run_solve(algo, instance_path, epsilon, alpha, rho, trace_path, out_path,
                     cut_and_choose);
  if (gen->parsed())
    return run_gen(kind, cnf_path, gen_rho, pad, agents, pieces, seed, gen_out, layout_path);
  if (verify->parsed())
    return run_verify(v_instance, v_allocation, theorem, resolution, v_rho, v_eps, slack);
  return kExitUsage;
}
