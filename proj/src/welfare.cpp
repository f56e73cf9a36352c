#include "cakecut/welfare.hpp"

#include "json.hpp"

namespace cakecut {

std::vector<Rat> agent_values(const CakeInstance& inst, const Allocation& alloc) {
  if (alloc.size() != inst.agent_count())
    throw CakeError("allocation size does not match instance");
  std::vector<Rat> vals;
  vals.reserve(static_cast<std::size_t>(alloc.size()));
  for (int a = 0; a < alloc.size(); ++a)
    vals.push_back(inst.eval(a, alloc.assigned[static_cast<std::size_t>(a)]));
  return vals;
}

EnvyRatio envy_ratio(const CakeInstance& inst, const Allocation& alloc) {
  EnvyRatio out;
  for (int a = 0; a < alloc.size(); ++a) {
    Rat own = inst.eval(a, alloc.assigned[static_cast<std::size_t>(a)]);
    for (int b = 0; b < alloc.size(); ++b) {
      if (b == a) continue;
      Rat other = inst.eval(a, alloc.assigned[static_cast<std::size_t>(b)]);
      if (other <= own) continue;
      if (own == 0) {
        out.infinite = true;
        return out;
      }
      Rat ratio = other / own;
      if (ratio > out.value) out.value = ratio;
    }
  }
  return out;
}

Rat sw(const CakeInstance& inst, const Allocation& alloc) {
  Rat total(0);
  for (const auto& v : agent_values(inst, alloc)) total += v;
  return total / inst.agent_count();
}

BfI NswValue::bracket() const {
  return BfI::from_rat(product).pow(1, n);
}

std::string NswValue::exact_string() const {
  if (n == 1) return rat_to_string(product);
  return "(" + rat_to_string(product) + ")^(1/" + std::to_string(n) + ")";
}

NswValue nsw(const CakeInstance& inst, const Allocation& alloc) {
  NswValue out;
  out.product = 1;
  out.n = static_cast<unsigned long>(inst.agent_count());
  for (const auto& v : agent_values(inst, alloc)) out.product *= v;
  return out;
}

BfI RhoMeanValue::bracket() const {
  if (auto e = exact()) return BfI::from_rat(*e);
  unsigned long p = rho.get_num().get_ui();
  unsigned long q = rho.get_den().get_ui();
  BfI sum = BfI::from_ul(0);
  for (const auto& v : values) sum = sum + BfI::from_rat(v).pow(p, q);
  BfI mean = sum / BfI::from_ul(static_cast<unsigned long>(values.size()));
  return mean.pow(q, p);
}

std::optional<Rat> RhoMeanValue::exact() const {
  bool all_equal = true;
  for (const auto& v : values)
    if (v != values.front()) { all_equal = false; break; }
  if (all_equal) return values.front();
  if (rho.get_den() == 1) {
    // Integer rho: the rho-th power of the mean is rational; return the
    // mean itself only for rho = 1.
    if (rho == 1) {
      Rat total(0);
      for (const auto& v : values) total += v;
      return total / static_cast<unsigned long>(values.size());
    }
  }
  return std::nullopt;
}

std::string RhoMeanValue::exact_string() const {
  if (auto e = exact()) return rat_to_string(*e);
  unsigned long p = rho.get_num().get_ui();
  unsigned long q = rho.get_den().get_ui();
  if (q == 1) {
    // Mean of rho-th powers is rational; render its 1/rho-th root.
    Rat total(0);
    for (const auto& v : values) total += rat_pow(v, p);
    Rat mean = total / static_cast<unsigned long>(values.size());
    return "(" + rat_to_string(mean) + ")^(1/" + std::to_string(p) + ")";
  }
  return "";
}

RhoMeanValue rho_mean(const CakeInstance& inst, const Allocation& alloc, const Rat& rho) {
  if (rho <= 0 || rho > 1) throw CakeError("rho must lie in (0,1]");
  RhoMeanValue out;
  out.rho = rho;
  out.values = agent_values(inst, alloc);
  return out;
}

WelfareReport welfare_report(const CakeInstance& inst, const Allocation& alloc,
                             const std::vector<Rat>& rhos) {
  WelfareReport r;
  r.values = agent_values(inst, alloc);
  r.envy = envy_ratio(inst, alloc);
  r.sw_value = sw(inst, alloc);
  r.nsw_value = nsw(inst, alloc);
  for (const auto& rho : rhos) r.rho_means.push_back(rho_mean(inst, alloc, rho));
  return r;
}

std::string welfare_report_to_json(const CakeInstance& inst, const WelfareReport& report) {
  nlohmann::json j;
  j["values"] = nlohmann::json::object();
  for (int a = 0; a < inst.agent_count(); ++a)
    j["values"][inst.agent(a).name] = rat_to_string(report.values[static_cast<std::size_t>(a)]);
  j["envy_ratio"] = report.envy.infinite ? "inf" : rat_to_string(report.envy.value);
  j["sw"] = {{"exact", rat_to_string(report.sw_value)},
             {"decimal", Bf::from_rat(report.sw_value, MPFR_RNDN).to_decimal()}};
  j["nsw"] = {{"exact", report.nsw_value.exact_string()},
              {"decimal", report.nsw_value.bracket().to_decimal()}};
  j["rho_means"] = nlohmann::json::array();
  for (const auto& m : report.rho_means) {
    nlohmann::json jm;
    jm["rho"] = rat_to_string(m.rho);
    std::string exact = m.exact_string();
    if (!exact.empty()) jm["exact"] = exact;
    jm["decimal"] = m.bracket().to_decimal();
    j["rho_means"].push_back(std::move(jm));
  }
  return j.dump(2) + "\n";
}

bool nsw_power_at_least(const Rat& prod_a, const Rat& prod_b, const Rat& scale,
                        unsigned long n) {
  if (scale <= 0) throw CakeError("scale must be positive");
  return prod_a * rat_pow(scale, n) >= prod_b;
}

}  // namespace cakecut
