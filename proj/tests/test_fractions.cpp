#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "rslab/fractions.hpp"
#include "rslab/rng.hpp"

using namespace rslab;

TEST_SUITE("fractions") {
  TEST_CASE("two designs reduce to the sd-proportional split") {
    const auto out = compute_fractions(std::vector{2.0, 1.0}, std::vector{1.0, 2.0});
    CHECK(out.best_index == 0);
    CHECK(out.betas[0] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(out.betas[1] == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(out.alphas[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(out.alphas[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  }

  TEST_CASE("three-design worked example") {
    // beta = [sqrt(17)/4, 1, 1/4], normalized by 2.280776406404415.
    const auto out =
        compute_fractions(std::vector{3.0, 2.0, 1.0}, std::vector{1.0, 1.0, 1.0});
    CHECK(out.best_index == 0);
    CHECK(out.betas[0] == doctest::Approx(std::sqrt(17.0) / 4.0).epsilon(1e-14));
    CHECK(out.betas[1] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(out.betas[2] == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(out.alphas[0] == doctest::Approx(0.45194101601103787).epsilon(1e-13));
    CHECK(out.alphas[1] == doctest::Approx(0.4384471871911697).epsilon(1e-13));
    CHECK(out.alphas[2] == doctest::Approx(0.10961179679779243).epsilon(1e-13));
  }

  TEST_CASE("shift invariance") {
    const std::vector<double> means{0.4, -1.2, 3.3, 3.1};
    const std::vector<double> stds{1.0, 0.5, 2.0, 1.5};
    const auto base = compute_fractions(means, stds);
    for (const double c : {1.0, -7.0, 1e6}) {
      std::vector<double> shifted = means;
      for (double& m : shifted) m += c;
      const auto out = compute_fractions(shifted, stds);
      CHECK(out.best_index == base.best_index);
      for (std::size_t i = 0; i < means.size(); ++i) {
        CHECK(out.alphas[i] == doctest::Approx(base.alphas[i]).epsilon(1e-9));
      }
    }
  }

  TEST_CASE("joint scale covariance leaves alphas unchanged") {
    const std::vector<double> means{0.4, -1.2, 3.3, 3.1};
    const std::vector<double> stds{1.0, 0.5, 2.0, 1.5};
    const auto base = compute_fractions(means, stds);
    for (const double lambda : {0.25, 3.0, 1e3}) {
      std::vector<double> m2 = means, s2 = stds;
      for (double& m : m2) m *= lambda;
      for (double& s : s2) s *= lambda;
      const auto out = compute_fractions(m2, s2);
      for (std::size_t i = 0; i < means.size(); ++i) {
        CHECK(out.alphas[i] == doctest::Approx(base.alphas[i]).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("two-design ratio equals the sd ratio") {
    for (std::uint64_t trial = 0; trial < 50; ++trial) {
      const double s0 = 0.1 + 5.0 * uniform_sample({11, trial, 0, 0});
      const double s1 = 0.1 + 5.0 * uniform_sample({11, trial, 1, 0});
      const auto out = compute_fractions(std::vector{1.0, 0.0}, std::vector{s0, s1});
      CHECK(out.alphas[0] / out.alphas[1] ==
            doctest::Approx(s0 / s1).epsilon(1e-13));
    }
  }

  TEST_CASE("alphas form a strictly positive distribution") {
    for (std::uint64_t trial = 0; trial < 200; ++trial) {
      std::vector<double> means, stds;
      const std::size_t k = 2 + (key_hash({3, trial, 0, 0}) % 9);
      for (std::size_t i = 0; i < k; ++i) {
        means.push_back(10.0 * uniform_sample({3, trial, i, 1}) - 5.0);
        stds.push_back(0.05 + 4.0 * uniform_sample({3, trial, i, 2}));
      }
      const auto out = compute_fractions(means, stds);
      double total = 0.0;
      for (const double a : out.alphas) {
        CHECK(a > 0.0);
        total += a;
      }
      CHECK(std::fabs(total - 1.0) <= 1e-12);
      CHECK(means[out.best_index] == *std::max_element(means.begin(), means.end()));
    }
  }

  TEST_CASE("tied means stay finite and lean toward the tie") {
    const auto out =
        compute_fractions(std::vector{1.0, 1.0, 0.0}, std::vector{1.0, 1.0, 1.0});
    CHECK(out.best_index == 0);  // smallest index wins the argmax tie
    for (const double a : out.alphas) CHECK(std::isfinite(a));
    // The clamped gap splits everything between the best and the tied
    // design; the clearly-worse one is starved out.
    CHECK(out.alphas[0] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(out.alphas[1] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(out.alphas[2] < 1e-10);
  }

  TEST_CASE("rejects invalid inputs") {
    CHECK_THROWS_AS(compute_fractions(std::vector{1.0}, std::vector{1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        compute_fractions(std::vector{1.0, 2.0}, std::vector{1.0, 0.0}),
        std::invalid_argument);
    CHECK_THROWS_AS(
        compute_fractions(std::vector{1.0, 2.0}, std::vector{1.0, -1.0}),
        std::invalid_argument);
  }
}
