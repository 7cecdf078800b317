#include "doctest.h"

#include "binpr/ambiguity.hpp"
#include "binpr/errors.hpp"
#include "binpr/harness.hpp"
#include "binpr/solver.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

using namespace binpr;

namespace {

double prox_objective(Complex z, Complex g, double b, double rho) {
  return 0.5 * std::pow(std::abs(z) - b, 2) + 0.5 * rho * std::norm(z - g);
}

bool in_orbit(const BinarySignal &y, const BinarySignal &x) {
  return canonicalize(y).representative == canonicalize(x).representative;
}

} // namespace

TEST_CASE("magnitude prox") {
  SUBCASE("fixed point when |g| = b") {
    const std::vector<Complex> g{{3, 4}, {0, -2}, {-1, 0}};
    const std::vector<double> b{5, 2, 1};
    const auto z = magnitude_prox(g, b, 0.7);
    for (std::size_t k = 0; k < 3; ++k) CHECK(std::abs(z[k] - g[k]) < 1e-14);
  }
  SUBCASE("zero data shrinks toward the origin") {
    const std::vector<Complex> g{{1, 2}, {-3, 0.5}};
    const auto z = magnitude_prox(g, std::vector<double>{0, 0}, 0.25);
    for (std::size_t k = 0; k < 2; ++k) CHECK(std::abs(z[k] - 0.25 * g[k] / 1.25) < 1e-14);
  }
  SUBCASE("scalar g = 2, b = 1, rho = 1") {
    const auto z = magnitude_prox(std::vector<Complex>{2.0}, std::vector<double>{1.0}, 1.0);
    CHECK(std::abs(z[0] - 1.5) < 1e-14);
    CHECK(oracle::prox_radius(2.0, 1.0, 1.0) == doctest::Approx(1.5).epsilon(1e-7));
  }
  SUBCASE("g = 0 uses the real axis") {
    const auto z = magnitude_prox(std::vector<Complex>{0.0}, std::vector<double>{2.0}, 1.0);
    CHECK(std::abs(z[0] - 1.0) < 1e-14);
  }
  SUBCASE("negative data clamps the radius") {
    const auto z = magnitude_prox(std::vector<Complex>{{0.1, 0}}, std::vector<double>{-5.0}, 1.0);
    CHECK(std::abs(z[0]) == doctest::Approx(oracle::prox_radius(0.1, -5.0, 1.0)).epsilon(1e-6));
  }
  SUBCASE("radius matches the golden-section oracle") {
    std::mt19937_64 rng(50);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    for (int t = 0; t < 200; ++t) {
      const Complex g = std::polar(u(rng), u(rng) * 2.0);
      const double b = u(rng) - 0.5;
      const double rho = std::exp(u(rng) * 4.0 - 6.0);
      const auto z = magnitude_prox(std::vector<Complex>{g}, std::vector<double>{b}, rho);
      CHECK(std::abs(z[0]) == doctest::Approx(oracle::prox_radius(std::abs(g), b, rho)).epsilon(1e-6));
    }
  }
  SUBCASE("beats random perturbations") {
    std::mt19937_64 rng(51);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::size_t worse = 0;
    for (int t = 0; t < 1000; ++t) {
      const Complex g = std::polar(3.0 * u(rng), 2 * std::numbers::pi * u(rng));
      const double b = 3.0 * u(rng);
      const double rho = 1e-3 + u(rng);
      const Complex z = magnitude_prox(std::vector<Complex>{g}, std::vector<double>{b}, rho)[0];
      const double best = prox_objective(z, g, b, rho);
      for (int p = 0; p < 10000; ++p) {
        const Complex d = std::polar(1e-2 * u(rng), 2 * std::numbers::pi * u(rng));
        if (prox_objective(z + d, g, b, rho) < best - 1e-15) ++worse;
      }
    }
    CHECK(worse == 0);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(magnitude_prox(std::vector<Complex>{1.0}, std::vector<double>{1.0}, 0.0),
                    ParameterError);
    CHECK_THROWS_AS(magnitude_prox(std::vector<Complex>{1.0}, std::vector<double>{1.0, 2.0}, 1.0),
                    DimensionError);
  }
}

TEST_CASE("rounding to binary") {
  CHECK(round_to_binary(std::vector<double>{0.2, 0.9, 0.49}) == BinarySignal::parse("010"));
  CHECK(round_to_binary(std::vector<double>{1, 0, 1}) == BinarySignal::parse("101"));
  CHECK(round_to_binary(std::vector<double>{0.5}) == BinarySignal::parse("1"));
  CHECK(round_to_binary(ComplexSignal({{0.7, 3.0}, {-0.2, 1.0}})) == BinarySignal::parse("10"));
}

TEST_CASE("ADMM on degenerate data") {
  AdmmParams params;
  SUBCASE("zero data gives zero") {
    const MagnitudeMeasurements b(std::vector<double>(12, 0.0), SamplingScheme::classic(12));
    const auto r = admm_solve(b, 12, params);
    CHECK(r.residual < 1e-12);
    CHECK(lp_norm(r.x_star, 2.0) < 1e-9);
  }
  SUBCASE("all-ones data saturates the box") {
    for (auto scaling : {FourierScaling::unitary, FourierScaling::unnormalized}) {
      params.scaling = scaling;
      const auto b = magnitude(DftPlan::classic(16), ComplexSignal::ones(16));
      const auto r = admm_solve(b, 16, params);
      CHECK(r.residual < 1e-8);
      CHECK(round_to_binary(r.x_star) == BinarySignal::parse("1111111111111111"));
    }
  }
  SUBCASE("parameter and dimension errors") {
    const auto b = magnitude(DftPlan::classic(4), ComplexSignal::ones(4));
    AdmmParams bad;
    bad.rho1 = 0.0;
    CHECK_THROWS_AS(admm_solve(b, 4, bad), ParameterError);
    bad = {};
    bad.max_iters = 0;
    CHECK_THROWS_AS(admm_solve(b, 4, bad), ParameterError);
    CHECK_THROWS_AS(admm_solve(b, 5, params), DimensionError);
    const std::vector<double> phase(3, 0.0);
    CHECK_THROWS_AS(admm_solve(b, 4, params, std::span<const double>(phase)), DimensionError);
  }
  SUBCASE("non-finite iterates raise a divergence error") {
    // Aligned phases make the adjoint sum of near-overflow data exceed DBL_MAX.
    const MagnitudeMeasurements b(std::vector<double>(6, 1.5e308), SamplingScheme::classic(6));
    const std::vector<double> phase(6, 0.0);
    CHECK_THROWS_AS(admm_solve(b, 6, params, std::span<const double>(phase)), DivergenceError);
  }
}

TEST_CASE("ADMM iterates") {
  const auto x = BinarySignal::parse("0100010000100000000100000");
  const auto b = magnitude(DftPlan::classic(x.size()), x.to_complex());
  AdmmParams params;
  params.seed = 9;
  params.max_iters = 300;

  SUBCASE("y stays in the box at every iteration") {
    int seen = 0;
    bool inside = true;
    admm_solve(b, x.size(), params, {}, [&](const AdmmState &st) {
      ++seen;
      for (double v : st.y) inside = inside && v >= 0.0 && v <= 1.0;
    });
    CHECK(seen > 0);
    CHECK(inside);
  }
  SUBCASE("identical seeds give identical iterate sequences") {
    std::vector<std::vector<Complex>> first, second;
    admm_solve(b, x.size(), params, {}, [&](const AdmmState &st) { first.push_back(st.x); });
    admm_solve(b, x.size(), params, {}, [&](const AdmmState &st) { second.push_back(st.x); });
    CHECK(first == second);
    params.seed = 10;
    std::vector<std::vector<Complex>> third;
    admm_solve(b, x.size(), params, {}, [&](const AdmmState &st) { third.push_back(st.x); });
    CHECK(first != third);
  }
  SUBCASE("explicit initial phases override the seed") {
    const std::vector<double> phase(x.size(), 0.3);
    const auto r1 = admm_solve(b, x.size(), params, std::span<const double>(phase));
    params.seed = 1234;
    const auto r2 = admm_solve(b, x.size(), params, std::span<const double>(phase));
    CHECK(r1.x_star == r2.x_star);
  }
  SUBCASE("the reported residual is the raw-unit misfit") {
    const auto r = admm_solve(b, x.size(), params);
    CHECK(r.residual == doctest::Approx(magnitude_residual(b, r.x_star)));
    const auto fx = oracle::magnitudes(oracle::to_vec(r.x_star), x.size());
    double sq = 0.0;
    for (std::size_t k = 0; k < fx.size(); ++k) sq += std::pow(fx[k] - b[k], 2);
    CHECK(r.residual == doctest::Approx(std::sqrt(sq)).epsilon(1e-9));
  }
}

TEST_CASE("ADMM recovers sparse binary signals with restarts") {
  Rng rng(77);
  AdmmParams params;
  for (std::size_t support : {1, 2}) {
    for (int t = 0; t < 3; ++t) {
      const auto x = random_binary(50, support, rng);
      for (std::size_t m : {std::size_t{50}, std::size_t{99}}) {
        const auto b = magnitude(DftPlan(50, m), x.to_complex());
        params.seed = rng();
        bool recovered = false;
        for (std::size_t restart = 0; restart < 20 && !recovered; ++restart) {
          params.seed = derive_seed(params.seed, {restart});
          const auto r = admm_solve(b, 50, params);
          const auto y = round_to_binary(r.x_star);
          if (r.residual < 1e-6 || magnitude_residual(b, y.to_complex()) < 1e-6) {
            recovered = m == 50 ? in_orbit(y, x)
                                : canonicalize_windowed(y).representative ==
                                      canonicalize_windowed(x).representative;
          }
        }
        CHECK(recovered);
      }
    }
  }
}

TEST_CASE("successful solves end near binary points with the right support") {
  Rng rng(78);
  AdmmParams params;
  std::size_t successes = 0;
  for (int t = 0; t < 40; ++t) {
    const auto x = random_binary(30, 1 + t % 4, rng);
    const auto b = magnitude(DftPlan::classic(30), x.to_complex());
    params.seed = rng();
    const auto r = admm_solve(b, 30, params);
    if (r.residual >= 1e-6) continue;
    ++successes;
    double dist = 0.0;
    for (const auto &v : r.x_star.samples()) {
      dist = std::max(dist, std::min(std::abs(v), std::abs(v - 1.0)));
    }
    CHECK(dist < 1e-3);
    CHECK(round_to_binary(r.x_star).support_count() == x.support_count());
  }
  CHECK(successes > 0);
}

TEST_CASE("multistart keeps the best run") {
  Rng rng(79);
  const auto x = random_binary(40, 3, rng);
  const auto b = magnitude(DftPlan::classic(40), x.to_complex());
  AdmmParams params;
  params.seed = 5;
  params.max_iters = 200;
  const auto best = admm_solve_multistart(b, 40, params, 4);
  const auto single = admm_solve_multistart(b, 40, params, 1);
  CHECK(best.residual <= single.residual);
  CHECK_THROWS_AS(admm_solve_multistart(b, 40, params, 0), ParameterError);
}
