#include "doctest.h"

#include "binpr/errors.hpp"
#include "binpr/signal.hpp"
#include "binpr/transforms.hpp"
#include "oracles.hpp"

#include <cmath>
#include <random>

using namespace binpr;

namespace {

ComplexSignal real_signal(std::initializer_list<double> v) {
  return ComplexSignal::from_real(std::vector<double>(v));
}

} // namespace

TEST_CASE("signal types validate their input") {
  CHECK_THROWS_AS(ComplexSignal(std::vector<Complex>{}), DimensionError);
  CHECK_THROWS_AS(ComplexSignal({Complex(NAN, 0)}), ParameterError);
  CHECK_THROWS_AS(BinarySignal({0, 2}), ParameterError);
  CHECK_THROWS_AS(BinarySignal::parse("01a"), ParameterError);
  CHECK_THROWS_AS(BoxSignal({0.5, 1.5}), ParameterError);
  CHECK_THROWS_AS(BoxSignal({0.5}, 1.0, 0.0), ParameterError);

  const auto x = BinarySignal::parse("1101 0000");
  CHECK(x.size() == 8);
  CHECK(x.support_count() == 3);
  CHECK(x.mask() == 0b1011u);
  CHECK(BinarySignal::from_mask(0b1011u, 8) == x);
  CHECK(x.to_string() == "11010000");
  CHECK(x.complement().to_string() == "00101111");

  const auto p = BoxSignal::project(std::vector<double>{-1.0, 0.25, 3.0});
  CHECK(p[0] == 0.0);
  CHECK(p[1] == 0.25);
  CHECK(p[2] == 1.0);
}

TEST_CASE("circular convolution") {
  std::mt19937_64 rng(1);
  const auto b = ComplexSignal(oracle::random_complex(8, rng));

  SUBCASE("delta is the identity") {
    CHECK(oracle::max_abs_diff(oracle::to_vec(circular_convolve(ComplexSignal::unit(8, 0), b)),
                               oracle::to_vec(b)) < 1e-15);
  }
  SUBCASE("e_1 shifts right by one") {
    const auto y = circular_convolve(ComplexSignal::unit(8, 1), b);
    for (std::size_t j = 0; j < 8; ++j) CHECK(std::abs(y[j] - b[(j + 7) % 8]) < 1e-15);
  }
  SUBCASE("matches the double sum for every length up to 16") {
    for (std::size_t n = 1; n <= 16; ++n) {
      const auto a = oracle::random_complex(n, rng);
      const auto c = oracle::random_complex(n, rng);
      const auto got = circular_convolve(ComplexSignal(a), ComplexSignal(c));
      CHECK(oracle::max_abs_diff(oracle::to_vec(got), oracle::circular_convolve(a, c)) < 1e-12);
      const auto swapped = circular_convolve(ComplexSignal(c), ComplexSignal(a));
      CHECK(oracle::max_abs_diff(oracle::to_vec(got), oracle::to_vec(swapped)) < 1e-12);
    }
  }
  SUBCASE("length mismatch") {
    CHECK_THROWS_AS(circular_convolve(ComplexSignal::ones(3), ComplexSignal::ones(4)),
                    DimensionError);
  }
}

TEST_CASE("convolution theorem") {
  std::mt19937_64 rng(2);
  for (std::size_t n : {5u, 8u, 13u, 32u}) {
    const auto a = ComplexSignal(oracle::random_complex(n, rng));
    const auto c = ComplexSignal(oracle::random_complex(n, rng));
    const auto plan = DftPlan::classic(n);
    const auto lhs = dft(plan, circular_convolve(a, c));
    const auto rhs = hadamard(dft(plan, a), dft(plan, c));
    const double scale = lp_norm(rhs, 2.0);
    CHECK(lp_norm(lhs - rhs, 2.0) / scale < 1e-9);
  }
}

TEST_CASE("hadamard product") {
  const auto a = real_signal({1, 2, 3});
  CHECK(hadamard(a, ComplexSignal::ones(3)) == a);
  CHECK(hadamard(a, ComplexSignal::zeros(3)) == ComplexSignal::zeros(3));
  CHECK(hadamard(a, real_signal({4, 5, 6})) == real_signal({4, 10, 18}));
  CHECK_THROWS_AS(hadamard(a, ComplexSignal::ones(2)), DimensionError);
}

TEST_CASE("lp norms") {
  CHECK(lp_norm(ComplexSignal::unit(5, 3), 2.0) == doctest::Approx(1.0));
  CHECK(lp_norm(real_signal({1, 1, 0, 1}), 0.0) == 3.0);
  CHECK(lp_norm(real_signal({3, 4}), 2.0) == doctest::Approx(5.0));
  CHECK(lp_norm(real_signal({-1, 2}), 1.0) == doctest::Approx(3.0));
  CHECK_THROWS_AS(lp_norm(real_signal({1}), -1.0), ParameterError);
}

TEST_CASE("2-norm is invariant under shift and conjugate reversal") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    const auto x = ComplexSignal(oracle::random_complex(17, rng));
    const double n2 = lp_norm(x, 2.0);
    CHECK(lp_norm(cyclic_shift(x, t - 7), 2.0) == doctest::Approx(n2).epsilon(1e-14));
    CHECK(lp_norm(conjugate_reverse(x), 2.0) == doctest::Approx(n2).epsilon(1e-14));
  }
}

TEST_CASE("finite difference kernels") {
  SUBCASE("order 0 is the delta") {
    CHECK(finite_difference_kernel(0, 6) == ComplexSignal::unit(6, 0));
  }
  SUBCASE("order 1 annihilates constants and is the forward difference") {
    const auto v = finite_difference_kernel(1, 7);
    CHECK(lp_norm(circular_convolve(v, 3.0 * ComplexSignal::ones(7)), 2.0) < 1e-14);
    const auto x = real_signal({0, 1, 4, 9, 16, 25, 36});
    const auto d = circular_convolve(v, x);
    for (std::size_t k = 0; k < 7; ++k) {
      CHECK(std::abs(d[k] - (x[(k + 1) % 7] - x[k])) < 1e-12);
    }
  }
  SUBCASE("order 3 is the centred stencil") {
    std::mt19937_64 rng(4);
    const auto x = ComplexSignal(oracle::random_complex(11, rng));
    const auto d = circular_convolve(finite_difference_kernel(3, 11), x);
    for (long long k = 0; k < 11; ++k) {
      const Complex want = -0.5 * x.at_cyclic(k - 2) + x.at_cyclic(k - 1) - x.at_cyclic(k + 1) +
                           0.5 * x.at_cyclic(k + 2);
      CHECK(std::abs(d[k] - want) < 1e-12);
    }
  }
  SUBCASE("higher orders compose the forward difference") {
    const auto v1 = finite_difference_kernel(1, 9);
    for (unsigned n : {2u, 4u, 5u}) {
      const auto want = circular_convolve(v1, finite_difference_kernel(n - 1, 9));
      CHECK(lp_norm(finite_difference_kernel(n, 9) - want, 2.0) < 1e-12);
    }
  }
  SUBCASE("third difference energies of the length-11 pair") {
    const auto x = BinarySignal::parse("00001010011").to_complex();
    const auto y = BinarySignal::parse("00010001011").to_complex();
    const auto v = finite_difference_kernel(3, 11);
    CHECK(std::pow(lp_norm(circular_convolve(v, x), 2.0), 2) == doctest::Approx(7.5).epsilon(1e-14));
    CHECK(std::pow(lp_norm(circular_convolve(v, y), 2.0), 2) == doctest::Approx(7.0).epsilon(1e-14));
  }
}

TEST_CASE("cyclic helpers") {
  const auto x = real_signal({1, 2, 3, 4});
  CHECK(cyclic_shift(x, 1) == real_signal({2, 3, 4, 1}));
  CHECK(cyclic_shift(x, -1) == real_signal({4, 1, 2, 3}));
  CHECK(conjugate_reverse(ComplexSignal({{1, 1}, {2, 2}, {3, 3}})) ==
        ComplexSignal({{1, -1}, {3, -3}, {2, -2}}));
  CHECK(x.at_cyclic(-1) == Complex(4));
  CHECK(x.at_cyclic(9) == Complex(2));
}
