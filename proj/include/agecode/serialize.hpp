#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "agecode/optimizer.hpp"
#include "agecode/simulator.hpp"
#include "agecode/sweep.hpp"

namespace agecode {

// 12 significant digits, the stable wire format for every CSV cell.
std::string csv_number(double v);

// Header "k,alpha,optimal_age,mean_len,kraft_sum", one row per point.
// Non-converged points carry nan cells.
void write_csv(const SweepResult& result, std::ostream& out);

nlohmann::json to_json(const CodeDesign& design);
nlohmann::json to_json(const SweepResult& result);
nlohmann::json to_json(const SimResult& result);
nlohmann::json to_json(const ValidationReport& report);

}  // namespace agecode
