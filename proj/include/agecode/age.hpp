#pragma once

#include <span>
#include <utility>

#include "agecode/pmf.hpp"

namespace agecode {

// First two moments of the codeword length under a conditional pmf.
struct CodeMoments {
  double mean_len = 0.0;       // E[L]
  double second_moment = 0.0;  // E[L^2]
};

// First two moments of an update cycle: service time of the delivered update
// plus the idle wait for the next encodable arrival.
struct CycleMoments {
  double mean_cycle = 0.0;
  double second_moment_cycle = 0.0;
};

struct AgeReport {
  double delta = 0.0;  // long-run average age
  CodeMoments code_moments;
  double q = 0.0;
  double a = 0.0;
};

// Number of arrivals consumed until one is selected is geometric with
// success probability q: E[M] = 1/q, E[M^2] = (2 - q)/q^2.
std::pair<double, double> moments_of_m(double q);

CodeMoments code_moments(const ConditionalPmf& cond, std::span<const double> lengths);

// Cycle Y = L + sum of M exponential interarrivals. M, the interarrivals and
// L are mutually independent, which gives
//   E[Y]   = E[L] + E[M]/lambda
//   E[Y^2] = E[L^2] + 2 E[M] E[L]/lambda + E[M] E[Z^2]
//            + (E[M^2] - E[M]) / lambda^2,   E[Z^2] = 2/lambda^2.
CycleMoments cycle_moments(const CodeMoments& code, double q, double lambda);

// Average age in terms of code moments and the idle parameter a = 1/(lambda q):
//   (E[L^2] + 2 a E[L] + 2 a^2) / (2 (E[L] + a)) + E[L].
double age_from_moments(const CodeMoments& code, double a);

// Closed-form average age of the stationary update process.
AgeReport average_age(const ConditionalPmf& cond, std::span<const double> lengths);

// Same age through the renewal-reward route: E[Y^2] / (2 E[Y]) + E[L].
double average_age_via_cycles(const CycleMoments& cycle, const CodeMoments& code);

}  // namespace agecode
