#include "agecode/serialize.hpp"

#include <cstdio>
#include <ostream>

namespace agecode {

std::string csv_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_csv(const SweepResult& result, std::ostream& out) {
  out << "k,alpha,optimal_age,mean_len,kraft_sum\n";
  for (const SweepPoint& pt : result.points)
    out << pt.k << ',' << csv_number(pt.alpha) << ',' << csv_number(pt.optimal_age) << ','
        << csv_number(pt.design.mean_len) << ',' << csv_number(pt.design.kraft_sum) << '\n';
}

nlohmann::json to_json(const CodeDesign& design) {
  nlohmann::json j{{"lengths", design.lengths},
                   {"optimal_age", design.optimal_age},
                   {"beta_star", design.beta_star},
                   {"kraft_sum", design.kraft_sum},
                   {"mean_len", design.mean_len}};
  if (design.rounded_lengths) j["rounded_lengths"] = *design.rounded_lengths;
  if (design.rounded_age) j["rounded_age"] = *design.rounded_age;
  return j;
}

nlohmann::json to_json(const SweepResult& result) {
  nlohmann::json points = nlohmann::json::array();
  for (const SweepPoint& pt : result.points) {
    nlohmann::json p{{"k", pt.k},
                     {"alpha", pt.alpha},
                     {"optimal_age", pt.optimal_age},
                     {"mean_len", pt.design.mean_len},
                     {"kraft_sum", pt.design.kraft_sum},
                     {"converged", pt.converged}};
    if (!pt.converged) p["error"] = pt.error;
    points.push_back(std::move(p));
  }
  return nlohmann::json{{"points", std::move(points)},
                        {"argmin_k", result.argmin_k},
                        {"argmin_alpha", result.argmin_alpha},
                        {"min_age", result.min_age}};
}

nlohmann::json to_json(const SimResult& result) {
  return nlohmann::json{{"empirical_age", result.empirical_age},
                        {"stderr", result.stderr_age},
                        {"num_cycles", result.num_cycles},
                        {"mean_cycle", result.mean_cycle},
                        {"mean_service", result.mean_service},
                        {"idle_arrivals", result.idle_arrivals},
                        {"discarded_arrivals", result.discarded_arrivals},
                        {"blocked_arrivals", result.blocked_arrivals}};
}

nlohmann::json to_json(const ValidationReport& report) {
  return nlohmann::json{{"analytic_age", report.analytic_age},
                        {"cycle_mode", to_json(report.cycle_mode)},
                        {"event_mode", to_json(report.event_mode)},
                        {"rel_err_cycle", report.rel_err_cycle},
                        {"rel_err_event", report.rel_err_event},
                        {"pass", report.pass}};
}

}  // namespace agecode
