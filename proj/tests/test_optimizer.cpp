#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "agecode/age.hpp"
#include "agecode/optimizer.hpp"
#include "agecode/pmf.hpp"
#include "helpers.hpp"

using agecode::CodeDesign;
using agecode::ConditionalPmf;
using agecode::SolveError;
using agecode::SolverOptions;
using agecode::SourcePmf;
using agecode::average_age;
using agecode::conditional_pmf;
using agecode::lengths_for;
using agecode::p_theta;
using agecode::p_theta_min;
using agecode::round_lengths;
using agecode::slack_branch_length;
using agecode::slack_branch_p;
using agecode::solve;

namespace {

constexpr double kLn2 = std::numbers::ln2;

double kraft(const std::vector<double>& lengths) {
  double s = 0.0;
  for (double l : lengths) s += std::exp2(-l);
  return s;
}

ConditionalPmf uniform_cond(std::size_t k, double a) {
  return ConditionalPmf(std::vector<double>(k, 1.0 / static_cast<double>(k)), 1.0, a);
}

}  // namespace

TEST_SUITE("optimizer") {

TEST_CASE("stationary lengths invert the defining fixed point") {
  // For any (theta, beta), each returned length must satisfy
  // u e^u = y with u = beta ln2^2 / P_i * 2^{-l_i} and
  // y = beta ln2^2 / P_i * 2^{(-theta + 2 beta ln2 + 2a)/3}.
  auto gen = testutil::make_gen(301);
  std::uniform_real_distribution<double> theta_dist(0.1, 20.0);
  std::uniform_real_distribution<double> beta_exp(-6.0, 6.0);
  for (int trial = 0; trial < 200; ++trial) {
    const SourcePmf pmf = testutil::random_pmf(gen, 8);
    const std::size_t k = std::uniform_int_distribution<std::size_t>(1, pmf.size())(gen);
    const ConditionalPmf cond = conditional_pmf(pmf, {k, 0.0}, {testutil::random_lambda(gen)});
    const double theta = theta_dist(gen);
    const double beta = std::exp2(beta_exp(gen));

    const std::vector<double> lengths = lengths_for(theta, beta, cond);
    const double shift = (-theta + 2.0 * beta * kLn2 + 2.0 * cond.a()) / 3.0;
    for (std::size_t i = 0; i < lengths.size(); ++i) {
      const double scale = beta * kLn2 * kLn2 / cond[i];
      const double u = scale * std::exp2(-lengths[i]);
      const double y = scale * std::exp2(shift);
      CHECK(std::abs(u * std::exp(u) - y) <= 1e-10 * std::max(1.0, y));
    }
  }
}

TEST_CASE("uniform supports get uniform lengths") {
  auto gen = testutil::make_gen(302);
  std::uniform_real_distribution<double> theta_dist(0.5, 10.0);
  for (std::size_t k : {2, 4, 8}) {
    const ConditionalPmf cond = uniform_cond(k, 1.0);
    const std::vector<double> lengths = lengths_for(theta_dist(gen), 2.0, cond);
    for (double l : lengths) CHECK(l == doctest::Approx(lengths[0]).epsilon(1e-12));
  }
}

TEST_CASE("lengths_for rejects bad arguments") {
  const ConditionalPmf padded({0.7, 0.3, 0.0}, 1.0, 1.0);
  CHECK_THROWS_AS(lengths_for(1.0, 1.0, padded), std::invalid_argument);
  const ConditionalPmf cond({0.7, 0.3}, 1.0, 1.0);
  CHECK_THROWS_AS(lengths_for(1.0, 0.0, cond), std::invalid_argument);
  CHECK_THROWS_AS(lengths_for(1.0, -2.0, cond), std::invalid_argument);
}

TEST_CASE("parametric objective closed forms and sign") {
  // Single zero-length codeword: p(theta) = a^2 - theta a, root at theta = a.
  const ConditionalPmf single({1.0}, 1.0, 1.25);
  CHECK(p_theta(1.25, std::vector<double>{0.0}, single) == doctest::Approx(0.0));
  CHECK(p_theta(1.0, std::vector<double>{0.0}, single) ==
        doctest::Approx(1.25 * 1.25 - 1.25).epsilon(1e-15));
  // Uniform pair at unit lengths, a = 1: zero exactly at theta = 2.25.
  const ConditionalPmf uniform2 = uniform_cond(2, 1.0);
  CHECK(p_theta(2.25, std::vector<double>{1.0, 1.0}, uniform2) == doctest::Approx(0.0));

  // p equals (age - theta) (E[L] + a) and flips sign across the age.
  auto gen = testutil::make_gen(303);
  for (int trial = 0; trial < 100; ++trial) {
    const SourcePmf pmf = testutil::random_pmf(gen, 8);
    const std::size_t k = std::uniform_int_distribution<std::size_t>(1, pmf.size())(gen);
    const ConditionalPmf cond = conditional_pmf(pmf, {k, 0.0}, {testutil::random_lambda(gen)});
    std::vector<double> lengths(cond.size());
    std::uniform_real_distribution<double> len_dist(0.0, 6.0);
    for (double& l : lengths) l = len_dist(gen);

    const double age = average_age(cond, lengths).delta;
    const double el = agecode::code_moments(cond, lengths).mean_len;
    for (double theta : {age - 0.1, age + 0.1, age}) {
      const double p = p_theta(theta, lengths, cond);
      CHECK(p == doctest::Approx((age - theta) * (el + cond.a())).epsilon(1e-12));
    }
    CHECK(p_theta(age - 0.1, lengths, cond) > 0.0);
    CHECK(p_theta(age + 0.1, lengths, cond) < 0.0);
  }
}

TEST_CASE("slack branch reproduces the contradiction algebra") {
  for (double a : {0.2, 1.0, 3.7, 10.0}) {
    const double theta = (std::sqrt(3.0) - 1.0) * a;
    CHECK(slack_branch_p(theta, a) == doctest::Approx(0.0).epsilon(1e-12));
    const double l = slack_branch_length(theta, a);
    CHECK(l == doctest::Approx((std::sqrt(3.0) - 3.0) * a / 3.0).epsilon(1e-12));
    CHECK(l < 0.0);

    // Consistency with the general objective at the uniform stationary point.
    const ConditionalPmf uniform4 = uniform_cond(4, a);
    const double m = slack_branch_length(5.0, a);
    if (m >= 0.0)
      CHECK(p_theta(5.0, std::vector<double>(4, m), uniform4) ==
            doctest::Approx(slack_branch_p(5.0, a)).epsilon(1e-12));
  }
}

TEST_CASE("two-symbol reference solve") {
  const ConditionalPmf cond({0.625, 0.375}, 0.8, 1.25);
  const CodeDesign d = solve(cond);
  CHECK(std::abs(d.kraft_sum - 1.0) <= 1e-9);
  CHECK(d.lengths[0] < d.lengths[1]);
  CHECK(d.optimal_age == doctest::Approx(2.4304995971062966).epsilon(1e-9));
  CHECK(d.beta_star == doctest::Approx(4.2515125180476705).epsilon(1e-6));
  CHECK(d.lengths[0] == doctest::Approx(0.77247745).epsilon(1e-6));
  CHECK(d.lengths[1] == doctest::Approx(1.27024737).epsilon(1e-6));
  CHECK(d.mean_len == doctest::Approx(0.9591411707021175).epsilon(1e-8));
  CHECK(average_age(cond, d.lengths).delta == doctest::Approx(d.optimal_age).epsilon(1e-10));
}

TEST_CASE("one-point support bypasses the iteration") {
  const ConditionalPmf single({1.0}, 0.3, 1.0 / 0.3);
  const CodeDesign d = solve(single);
  REQUIRE(d.lengths.size() == 1);
  CHECK(d.lengths[0] == 0.0);
  CHECK(d.optimal_age == doctest::Approx(1.0 / 0.3).epsilon(1e-15));
  CHECK(d.kraft_sum == 1.0);
  CHECK(std::isnan(d.beta_star));
}

TEST_CASE("uniform supports solve to the symmetric closed form") {
  for (const auto& [k, a] : std::vector<std::pair<std::size_t, double>>{
           {2, 0.3}, {2, 1.0}, {4, 1.0}, {16, 5.0}}) {
    const ConditionalPmf cond = uniform_cond(k, a);
    const CodeDesign d = solve(cond);
    const double lg = std::log2(static_cast<double>(k));
    for (double l : d.lengths) CHECK(l == doctest::Approx(lg).epsilon(1e-9));
    const double expected = agecode::age_from_moments({lg, lg * lg}, a);
    CHECK(d.optimal_age == doctest::Approx(expected).epsilon(1e-9));
  }
  // Unit-cost pair: the age is exactly 9/4.
  const CodeDesign pair = solve(uniform_cond(2, 1.0));
  CHECK(pair.optimal_age == doctest::Approx(2.25).epsilon(1e-12));
}

TEST_CASE("solver certificates hold on random instances") {
  auto gen = testutil::make_gen(304);
  for (int trial = 0; trial < 30; ++trial) {
    const SourcePmf pmf = testutil::random_pmf(gen, 12);
    const double lambda = testutil::random_lambda(gen);
    const std::size_t k = std::uniform_int_distribution<std::size_t>(1, pmf.size())(gen);
    const ConditionalPmf cond = conditional_pmf(pmf, {k, 0.0}, {lambda});
    const CodeDesign d = solve(cond);

    CHECK(std::abs(d.kraft_sum - 1.0) <= 1e-9);
    CHECK(std::abs(p_theta(d.optimal_age, d.lengths, cond)) <= 1e-9);
    CHECK(std::abs(average_age(cond, d.lengths).delta - d.optimal_age) <= 1e-8);

    // More probable symbols never get longer codewords.
    for (std::size_t i = 1; i < d.lengths.size(); ++i)
      CHECK(d.lengths[i] + 1e-12 >= d.lengths[i - 1]);

    if (cond.size() >= 2) {
      // Mean length identity at the optimum: E[L] = (theta + beta ln2 - 2a)/3.
      const double expected_el = (d.optimal_age + d.beta_star * kLn2 - 2.0 * cond.a()) / 3.0;
      CHECK(d.mean_len == doctest::Approx(expected_el).epsilon(1e-8));

      // Per-symbol stationarity with E[L] from the returned lengths; the
      // identity requires the Kraft sum to be exactly one, so the tolerance
      // inherits the certificate.
      const double rhs = 2.0 * d.mean_len + 2.0 * cond.a() - d.optimal_age;
      for (std::size_t i = 0; i < d.lengths.size(); ++i) {
        const double lhs =
            -d.lengths[i] + d.beta_star * kLn2 / cond[i] * std::exp2(-d.lengths[i]);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("solved designs are local minima under feasible perturbations") {
  auto gen = testutil::make_gen(305);
  std::uniform_real_distribution<double> delta_dist(-0.025, 0.025);
  for (int trial = 0; trial < 5; ++trial) {
    const SourcePmf pmf = testutil::random_pmf(gen, 10);
    const double lambda = testutil::random_lambda(gen, 0.2, 5.0);
    const std::size_t k = std::uniform_int_distribution<std::size_t>(1, pmf.size())(gen);
    const ConditionalPmf cond = conditional_pmf(pmf, {k, 0.0}, {lambda});
    const CodeDesign d = solve(cond);

    for (int p = 0; p < 100; ++p) {
      std::vector<double> perturbed = d.lengths;
      for (double& l : perturbed) l += delta_dist(gen);
      // Restore Kraft feasibility by a uniform shift, then clamp at zero.
      const double excess = std::log2(std::max(1.0, kraft(perturbed)));
      for (double& l : perturbed) l = std::max(0.0, l + excess);
      if (kraft(perturbed) > 1.0 + 1e-12) continue;
      CHECK(average_age(cond, perturbed).delta >= d.optimal_age - 1e-8);
    }
  }
}

TEST_CASE("inner minimum decreases through the root") {
  const ConditionalPmf cond =
      conditional_pmf(SourcePmf({0.4, 0.3, 0.2, 0.1}), {3, 0.0}, {0.8});
  const CodeDesign d = solve(cond);

  double prev = std::numeric_limits<double>::infinity();
  for (double offset : {-0.5, -0.1, -1e-4, 0.0, 1e-4, 0.1, 0.5}) {
    const double p = p_theta_min(d.optimal_age + offset, cond);
    CHECK(p < prev);
    prev = p;
    if (offset < 0.0) CHECK(p > 0.0);
    if (offset > 0.0) CHECK(p < 0.0);
  }
  CHECK(std::abs(p_theta_min(d.optimal_age, cond)) <= 1e-9);
}

TEST_CASE("ceil rounding keeps Kraft feasibility and never improves the age") {
  const ConditionalPmf uniform2 = uniform_cond(2, 1.0);
  CodeDesign d = solve(uniform2);
  d = round_lengths(d, uniform2);
  REQUIRE(d.rounded_lengths.has_value());
  CHECK((*d.rounded_lengths)[0] == 1);
  CHECK((*d.rounded_lengths)[1] == 1);
  CHECK(*d.rounded_age == doctest::Approx(d.optimal_age).epsilon(1e-12));

  CodeDesign frac;
  frac.lengths = {0.5, 1.7, 2.3};
  const ConditionalPmf cond3({0.5, 0.3, 0.2}, 1.0, 2.0);
  const CodeDesign rounded = round_lengths(frac, cond3);
  CHECK(*rounded.rounded_lengths == std::vector<int>{1, 2, 3});
  double rk = 0.0;
  for (int l : *rounded.rounded_lengths) rk += std::exp2(-l);
  CHECK(rk == doctest::Approx(0.875));

  auto gen = testutil::make_gen(306);
  for (int trial = 0; trial < 20; ++trial) {
    const SourcePmf pmf = testutil::random_pmf(gen, 9);
    const std::size_t k = std::uniform_int_distribution<std::size_t>(1, pmf.size())(gen);
    const ConditionalPmf cond = conditional_pmf(pmf, {k, 0.0}, {testutil::random_lambda(gen)});
    const CodeDesign d2 = round_lengths(solve(cond), cond);
    double sum = 0.0;
    for (int l : *d2.rounded_lengths) sum += std::exp2(-l);
    CHECK(sum <= 1.0 + 1e-12);
    CHECK(*d2.rounded_age >= d2.optimal_age - 1e-12);
  }
}

TEST_CASE("starved iteration budget surfaces as SolveError with state") {
  const ConditionalPmf cond({0.625, 0.375}, 0.8, 1.25);
  SolverOptions opts;
  opts.max_outer = 2;
  try {
    solve(cond, opts);
    FAIL("expected SolveError");
  } catch (const SolveError& e) {
    CHECK(e.last_state().lengths.size() == 2);
    CHECK(e.last_state().theta > 0.0);
  }
  CHECK_THROWS_AS(solve(cond, SolverOptions{-1.0, 100, 100}), std::invalid_argument);
}

}  // TEST_SUITE
