#pragma once

// Core vector types and the elementary operations shared by every module:
// circular convolution, Hadamard product, norms and finite-difference kernels.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace binpr {

using Complex = std::complex<double>;

/// Fixed-length vector of finite complex samples.
class ComplexSignal {
public:
  /// Throws DimensionError when empty and ParameterError on NaN/Inf entries.
  explicit ComplexSignal(std::vector<Complex> samples);

  static ComplexSignal zeros(std::size_t n);
  static ComplexSignal ones(std::size_t n);
  /// Standard basis vector e_k.
  static ComplexSignal unit(std::size_t n, std::size_t k);
  static ComplexSignal from_real(std::span<const double> values);

  std::size_t size() const noexcept { return samples_.size(); }
  const Complex &operator[](std::size_t k) const { return samples_[k]; }
  std::span<const Complex> samples() const noexcept { return samples_; }
  std::vector<double> real_part() const;

  /// Cyclic index access; negative indices wrap.
  const Complex &at_cyclic(long long k) const;

  friend bool operator==(const ComplexSignal &, const ComplexSignal &) = default;

private:
  std::vector<Complex> samples_;
};

ComplexSignal operator+(const ComplexSignal &a, const ComplexSignal &b);
ComplexSignal operator-(const ComplexSignal &a, const ComplexSignal &b);
ComplexSignal operator*(Complex s, const ComplexSignal &a);

/// Signal over {0,1}.
class BinarySignal {
public:
  /// Throws ParameterError if any entry is not 0 or 1.
  explicit BinarySignal(std::vector<std::uint8_t> bits);
  /// Parses a string of '0'/'1' characters; whitespace is ignored.
  static BinarySignal parse(std::string_view text);
  /// Bit k of `mask` becomes entry k. Requires n <= 64.
  static BinarySignal from_mask(std::uint64_t mask, std::size_t n);

  std::size_t size() const noexcept { return bits_.size(); }
  std::uint8_t operator[](std::size_t k) const { return bits_[k]; }
  std::span<const std::uint8_t> bits() const noexcept { return bits_; }
  std::size_t support_count() const noexcept { return support_; }

  /// Entry k as bit k. Throws DimensionError for n > 64.
  std::uint64_t mask() const;
  ComplexSignal to_complex() const;
  std::vector<double> to_real() const;
  /// 𝟙 − x
  BinarySignal complement() const;
  std::string to_string() const;

  friend bool operator==(const BinarySignal &a, const BinarySignal &b) {
    return a.bits_ == b.bits_;
  }
  friend auto operator<=>(const BinarySignal &a, const BinarySignal &b) {
    return a.bits_ <=> b.bits_;
  }

private:
  std::vector<std::uint8_t> bits_;
  std::size_t support_ = 0;
};

/// Real signal constrained to the box [lo, hi]^N.
class BoxSignal {
public:
  BoxSignal(std::vector<double> values, double lo = 0.0, double hi = 1.0);

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t k) const { return values_[k]; }
  std::span<const double> values() const noexcept { return values_; }
  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }

  /// Entrywise clamp into [lo, hi].
  static BoxSignal project(std::span<const double> values, double lo = 0.0,
                           double hi = 1.0);

private:
  std::vector<double> values_;
  double lo_;
  double hi_;
};

/// (a∗b)_j = Σ_k a_k b_{(j−k) mod N}
ComplexSignal circular_convolve(const ComplexSignal &a, const ComplexSignal &b);

ComplexSignal hadamard(const ComplexSignal &a, const ComplexSignal &b);

/// p > 0 gives the usual ℓ_p norm, p = 0 counts nonzero entries.
double lp_norm(std::span<const Complex> a, double p);
inline double lp_norm(const ComplexSignal &a, double p) {
  return lp_norm(a.samples(), p);
}

/// Circular kernel v with ∇ⁿx = v ∗ x.
///
/// Order 0 is e_0, order 1 the forward difference x_{k+1} − x_k and order 3 the
/// centred stencil −½x_{k−2} + x_{k−1} − x_{k+1} + ½x_{k+2}. Every other order
/// is the order-1 kernel convolved with the order n−1 kernel.
ComplexSignal finite_difference_kernel(unsigned order, std::size_t length);

/// y_k = x_{(k + shift) mod N}
ComplexSignal cyclic_shift(const ComplexSignal &x, long long shift);

/// y_k = conj(x_{(−k) mod N})
ComplexSignal conjugate_reverse(const ComplexSignal &x);

} // namespace binpr
