// Command-line front end: every subcommand parses its inputs, calls the
// library, and writes CSV or JSON; no analysis logic lives here.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "agecode/age.hpp"
#include "agecode/optimizer.hpp"
#include "agecode/pmf.hpp"
#include "agecode/serialize.hpp"
#include "agecode/simulator.hpp"
#include "agecode/sweep.hpp"

namespace {

using agecode::SourcePmf;

struct SourceSpec {
  std::vector<double> zipf;  // {n, s} when given
  std::string pmf_path;

  SourcePmf resolve() const {
    if (!pmf_path.empty()) return SourcePmf::load(pmf_path);
    if (zipf.size() != 2) throw std::invalid_argument("no source given (--zipf N S or --pmf PATH)");
    return SourcePmf::zipf(static_cast<std::size_t>(zipf[0]), zipf[1]);
  }
};

void add_source_options(CLI::App* cmd, SourceSpec& src) {
  auto* zipf = cmd->add_option("--zipf", src.zipf, "Power-law source: N S")
                   ->expected(2);
  auto* pmf = cmd->add_option("--pmf", src.pmf_path, "Path to a pmf file, one probability per line")
                  ->check(CLI::ExistingFile);
  zipf->excludes(pmf);
}

unsigned thread_count(unsigned flag_value) {
  if (flag_value != 0) return flag_value;
  if (const char* env = std::getenv("AGECODE_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return 0;  // library default: hardware concurrency
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file " + path);
  out << text;
}

std::string fixed(double v, int decimals) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(decimals);
  os << v;
  return os.str();
}

std::string design_text(const agecode::CodeDesign& design, const agecode::ConditionalPmf& cond) {
  std::ostringstream os;
  os << "symbol  probability  length\n";
  for (std::size_t i = 0; i < design.lengths.size(); ++i) {
    os << (i + 1) << "  " << fixed(cond[i], 6) << "  " << fixed(design.lengths[i], 6);
    if (design.rounded_lengths) os << "  ceil=" << (*design.rounded_lengths)[i];
    os << '\n';
  }
  os << "optimal_age = " << fixed(design.optimal_age, 6) << '\n';
  os << "kraft_sum = " << fixed(design.kraft_sum, 9) << '\n';
  os << "mean_len = " << fixed(design.mean_len, 6) << '\n';
  os << "beta_star = " << fixed(design.beta_star, 6) << '\n';
  if (design.rounded_age) os << "rounded_age = " << fixed(*design.rounded_age, 6) << '\n';
  return os.str();
}

std::string sweep_output(const agecode::SweepResult& result, const std::string& format) {
  if (format == "json") return to_json(result).dump(2) + "\n";
  std::ostringstream os;
  agecode::write_csv(result, os);
  return os.str();
}

// Each figure is a sweep family over a fixed grid, one age column per rate.
std::string figure_csv(const std::string& name, unsigned threads) {
  std::ostringstream os;
  if (name == "fig3" || name == "fig4") {
    const SourcePmf pmf = SourcePmf::zipf(100, 0.4);
    const std::vector<double> lambdas =
        name == "fig3" ? std::vector<double>{0.3, 0.5, 1.0} : std::vector<double>{2.0, 10.0};
    std::vector<agecode::SweepResult> sweeps;
    os << "k";
    for (double lam : lambdas) {
      sweeps.push_back(agecode::sweep_k(pmf, {lam}, 0.0, threads));
      os << ",age_lambda" << agecode::csv_number(lam);
    }
    os << '\n';
    for (std::size_t i = 0; i < pmf.size(); ++i) {
      os << (i + 1);
      for (const auto& sweep : sweeps) os << ',' << agecode::csv_number(sweep.points[i].optimal_age);
      os << '\n';
    }
    return os.str();
  }
  if (name == "fig5") {
    const SourcePmf pmf = SourcePmf::zipf(100, 0.2);
    const std::vector<double> grid = agecode::default_alpha_grid();
    const auto sweep06 = agecode::sweep_alpha(pmf, {0.6}, 70, grid, threads);
    const auto sweep12 = agecode::sweep_alpha(pmf, {1.2}, 70, grid, threads);
    os << "alpha,age_lambda0.6,age_lambda1.2\n";
    for (std::size_t i = 0; i < grid.size(); ++i)
      os << agecode::csv_number(sweep06.points[i].alpha) << ','
         << agecode::csv_number(sweep06.points[i].optimal_age) << ','
         << agecode::csv_number(sweep12.points[i].optimal_age) << '\n';
    return os.str();
  }
  throw std::invalid_argument("unknown figure " + name + " (expected fig3, fig4 or fig5)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Age-optimal codeword design for selective encoding"};
  app.require_subcommand(1);

  bool json_errors = false;
  app.add_flag("--json-errors", json_errors, "Report errors as JSON on stderr");

  std::string out_path;
  app.add_option("-o,--output", out_path, "Write output to a file instead of stdout");

  // Shared knobs; each subcommand picks the ones it uses.
  SourceSpec src;
  double lambda = 1.0;
  std::size_t k = 1;
  double alpha = 0.0;
  std::string format = "csv";
  unsigned threads = 0;
  std::uint64_t cycles = 1000000;
  std::uint64_t seed = 1;

  auto* optimize = app.add_subcommand("optimize", "Solve the age-optimal codeword lengths");
  optimize->fallthrough();
  add_source_options(optimize, src);
  optimize->add_option("--lambda", lambda, "Arrival rate")->required();
  optimize->add_option("--k", k, "Number of always-encoded values")->required();
  optimize->add_option("--alpha", alpha, "Tail encoding probability");
  optimize->add_option("--format", format, "csv, json or text")
      ->check(CLI::IsMember({"csv", "json", "text"}));
  bool do_round = false;
  optimize->add_flag("--round", do_round, "Also report ceil-rounded integer lengths");

  auto* sweepk = app.add_subcommand("sweep-k", "Optimal age for every k");
  sweepk->fallthrough();
  add_source_options(sweepk, src);
  sweepk->add_option("--lambda", lambda, "Arrival rate")->required();
  sweepk->add_option("--alpha", alpha, "Tail encoding probability");
  sweepk->add_option("--threads", threads, "Worker threads (0 = auto)");
  sweepk->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  std::vector<double> alpha_grid;
  auto* sweepa = app.add_subcommand("sweep-alpha", "Optimal age across the alpha grid at fixed k");
  sweepa->fallthrough();
  add_source_options(sweepa, src);
  sweepa->add_option("--lambda", lambda, "Arrival rate")->required();
  sweepa->add_option("--k", k, "Number of always-encoded values")->required();
  sweepa->add_option("--alphas", alpha_grid, "Alpha grid (default 0,0.05,...,1)");
  sweepa->add_option("--threads", threads, "Worker threads (0 = auto)");
  sweepa->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  std::string mode = "cycle";
  std::string trace_path;
  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo run at the solved optimal lengths");
  simulate->fallthrough();
  add_source_options(simulate, src);
  simulate->add_option("--lambda", lambda, "Arrival rate")->required();
  simulate->add_option("--k", k, "Number of always-encoded values")->required();
  simulate->add_option("--alpha", alpha, "Tail encoding probability");
  simulate->add_option("--cycles", cycles, "Delivery cycles after warm-up");
  simulate->add_option("--seed", seed, "Master seed");
  simulate->add_option("--mode", mode, "cycle or event")->check(CLI::IsMember({"cycle", "event"}));
  simulate->add_option("--trace", trace_path, "Write per-cycle CSV trace to a file");

  auto* validate = app.add_subcommand("validate", "Cross-check simulation against the closed form");
  validate->fallthrough();
  add_source_options(validate, src);
  validate->add_option("--lambda", lambda, "Arrival rate")->required();
  validate->add_option("--k", k, "Number of always-encoded values")->required();
  validate->add_option("--alpha", alpha, "Tail encoding probability");
  validate->add_option("--cycles", cycles, "Delivery cycles after warm-up");
  validate->add_option("--seed", seed, "Master seed");

  std::string figure;
  auto* figures = app.add_subcommand("figures", "Reproduce a study figure as CSV");
  figures->fallthrough();
  figures->add_option("name", figure, "fig3, fig4 or fig5")->required();
  figures->add_option("--threads", threads, "Worker threads (0 = auto)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    if (json_errors) {
      nlohmann::json j{{"error", {{"type", "usage"}, {"message", e.what()}}}, {"exit_code", 1}};
      std::cerr << j.dump() << '\n';
      return 1;
    }
    app.exit(e);
    return 1;
  }

  const auto fail = [&](const char* type, const std::string& message, int code) {
    if (json_errors) {
      nlohmann::json j{{"error", {{"type", type}, {"message", message}}}, {"exit_code", code}};
      std::cerr << j.dump() << '\n';
    } else {
      std::cerr << "error: " << message << '\n';
    }
    return code;
  };

  try {
    if (optimize->parsed()) {
      const SourcePmf pmf = src.resolve();
      const agecode::ConditionalPmf cond =
          agecode::conditional_pmf(pmf, {k, alpha}, {lambda});
      agecode::CodeDesign design = agecode::solve(cond);
      if (do_round) design = agecode::round_lengths(design, cond);
      if (format == "json") {
        emit(to_json(design).dump(2) + "\n", out_path);
      } else if (format == "csv") {
        std::ostringstream os;
        os << "symbol,probability,length\n";
        for (std::size_t i = 0; i < design.lengths.size(); ++i)
          os << (i + 1) << ',' << agecode::csv_number(cond[i]) << ','
             << agecode::csv_number(design.lengths[i]) << '\n';
        emit(os.str(), out_path);
      } else {
        emit(design_text(design, cond), out_path);
      }
    } else if (sweepk->parsed()) {
      const auto result = agecode::sweep_k(src.resolve(), {lambda}, alpha, thread_count(threads));
      emit(sweep_output(result, format), out_path);
    } else if (sweepa->parsed()) {
      const std::vector<double> grid =
          alpha_grid.empty() ? agecode::default_alpha_grid() : alpha_grid;
      const auto result =
          agecode::sweep_alpha(src.resolve(), {lambda}, k, grid, thread_count(threads));
      emit(sweep_output(result, format), out_path);
    } else if (simulate->parsed()) {
      const SourcePmf pmf = src.resolve();
      const agecode::ConditionalPmf cond =
          agecode::conditional_pmf(pmf, {k, alpha}, {lambda});
      const agecode::CodeDesign design = agecode::solve(cond);
      agecode::SimConfig cfg{pmf, {k, alpha}, {lambda}, design.lengths, cycles, seed,
                             mode == "event" ? agecode::SimMode::kEvent : agecode::SimMode::kCycle};
      std::optional<std::ofstream> trace;
      if (!trace_path.empty()) {
        trace.emplace(trace_path, std::ios::binary);
        if (!*trace) throw std::invalid_argument("cannot open trace file " + trace_path);
      }
      const agecode::SimResult result = agecode::simulate(cfg, trace ? &*trace : nullptr);
      nlohmann::json j = to_json(result);
      j["analytic_age"] = agecode::average_age(cond, design.lengths).delta;
      emit(j.dump(2) + "\n", out_path);
    } else if (validate->parsed()) {
      const SourcePmf pmf = src.resolve();
      const agecode::CodeDesign design =
          agecode::solve(agecode::conditional_pmf(pmf, {k, alpha}, {lambda}));
      const agecode::SimConfig cfg{pmf, {k, alpha}, {lambda}, design.lengths, cycles, seed,
                                   agecode::SimMode::kCycle};
      const agecode::ValidationReport report = agecode::validate(cfg);
      emit(to_json(report).dump(2) + "\n", out_path);
      if (!report.pass) return fail("validation", "simulation disagrees with the closed form", 1);
    } else if (figures->parsed()) {
      emit(figure_csv(figure, thread_count(threads)), out_path);
    }
  } catch (const agecode::SolveError& e) {
    return fail("solver", e.what(), 2);
  } catch (const std::invalid_argument& e) {
    return fail("invalid_argument", e.what(), 1);
  } catch (const std::domain_error& e) {
    return fail("invalid_argument", e.what(), 1);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), 1);
  }
  return 0;
}
