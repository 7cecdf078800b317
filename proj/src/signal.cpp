#include "binpr/signal.hpp"

#include "binpr/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace binpr {

namespace {

void require_same_length(std::size_t a, std::size_t b, const char *what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": length mismatch (" +
                         std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

std::size_t wrap(long long k, std::size_t n) {
  const auto m = static_cast<long long>(n);
  return static_cast<std::size_t>(((k % m) + m) % m);
}

} // namespace

ComplexSignal::ComplexSignal(std::vector<Complex> samples)
    : samples_(std::move(samples)) {
  if (samples_.empty()) {
    throw DimensionError("ComplexSignal: length must be at least 1");
  }
  for (const auto &s : samples_) {
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
      throw ParameterError("ComplexSignal: non-finite sample");
    }
  }
}

ComplexSignal ComplexSignal::zeros(std::size_t n) {
  return ComplexSignal(std::vector<Complex>(n, Complex{0.0, 0.0}));
}

ComplexSignal ComplexSignal::ones(std::size_t n) {
  return ComplexSignal(std::vector<Complex>(n, Complex{1.0, 0.0}));
}

ComplexSignal ComplexSignal::unit(std::size_t n, std::size_t k) {
  if (k >= n) {
    throw DimensionError("unit: index out of range");
  }
  std::vector<Complex> v(n, Complex{0.0, 0.0});
  v[k] = 1.0;
  return ComplexSignal(std::move(v));
}

ComplexSignal ComplexSignal::from_real(std::span<const double> values) {
  return ComplexSignal(std::vector<Complex>(values.begin(), values.end()));
}

std::vector<double> ComplexSignal::real_part() const {
  std::vector<double> out(samples_.size());
  std::transform(samples_.begin(), samples_.end(), out.begin(),
                 [](const Complex &c) { return c.real(); });
  return out;
}

const Complex &ComplexSignal::at_cyclic(long long k) const {
  return samples_[wrap(k, samples_.size())];
}

ComplexSignal operator+(const ComplexSignal &a, const ComplexSignal &b) {
  require_same_length(a.size(), b.size(), "operator+");
  std::vector<Complex> out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] + b[k];
  return ComplexSignal(std::move(out));
}

ComplexSignal operator-(const ComplexSignal &a, const ComplexSignal &b) {
  require_same_length(a.size(), b.size(), "operator-");
  std::vector<Complex> out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] - b[k];
  return ComplexSignal(std::move(out));
}

ComplexSignal operator*(Complex s, const ComplexSignal &a) {
  std::vector<Complex> out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = s * a[k];
  return ComplexSignal(std::move(out));
}

// ---------------------------------------------------------------------------

BinarySignal::BinarySignal(std::vector<std::uint8_t> bits)
    : bits_(std::move(bits)) {
  if (bits_.empty()) {
    throw DimensionError("BinarySignal: length must be at least 1");
  }
  for (auto b : bits_) {
    if (b > 1) throw ParameterError("BinarySignal: entries must be 0 or 1");
    support_ += b;
  }
}

BinarySignal BinarySignal::parse(std::string_view text) {
  std::vector<std::uint8_t> bits;
  for (char c : text) {
    if (c == '0' || c == '1') {
      bits.push_back(static_cast<std::uint8_t>(c - '0'));
    } else if (!std::isspace(static_cast<unsigned char>(c)) && c != ',') {
      throw ParameterError(std::string("BinarySignal: unexpected character '") +
                           c + "'");
    }
  }
  return BinarySignal(std::move(bits));
}

BinarySignal BinarySignal::from_mask(std::uint64_t mask, std::size_t n) {
  if (n == 0 || n > 64) throw DimensionError("from_mask: need 1 <= n <= 64");
  std::vector<std::uint8_t> bits(n);
  for (std::size_t k = 0; k < n; ++k) bits[k] = (mask >> k) & 1u;
  return BinarySignal(std::move(bits));
}

std::uint64_t BinarySignal::mask() const {
  if (bits_.size() > 64) throw DimensionError("mask: length exceeds 64");
  std::uint64_t m = 0;
  for (std::size_t k = 0; k < bits_.size(); ++k) {
    m |= static_cast<std::uint64_t>(bits_[k]) << k;
  }
  return m;
}

ComplexSignal BinarySignal::to_complex() const {
  std::vector<Complex> v(bits_.begin(), bits_.end());
  return ComplexSignal(std::move(v));
}

std::vector<double> BinarySignal::to_real() const {
  return {bits_.begin(), bits_.end()};
}

BinarySignal BinarySignal::complement() const {
  std::vector<std::uint8_t> out(bits_.size());
  std::transform(bits_.begin(), bits_.end(), out.begin(),
                 [](std::uint8_t b) { return static_cast<std::uint8_t>(1 - b); });
  return BinarySignal(std::move(out));
}

std::string BinarySignal::to_string() const {
  std::string s(bits_.size(), '0');
  for (std::size_t k = 0; k < bits_.size(); ++k) {
    if (bits_[k]) s[k] = '1';
  }
  return s;
}

// ---------------------------------------------------------------------------

BoxSignal::BoxSignal(std::vector<double> values, double lo, double hi)
    : values_(std::move(values)), lo_(lo), hi_(hi) {
  if (!(lo_ < hi_)) throw ParameterError("BoxSignal: need lo < hi");
  for (double v : values_) {
    if (!(v >= lo_ && v <= hi_)) {
      throw ParameterError("BoxSignal: value outside the box");
    }
  }
}

BoxSignal BoxSignal::project(std::span<const double> values, double lo,
                             double hi) {
  std::vector<double> out(values.size());
  std::transform(values.begin(), values.end(), out.begin(),
                 [&](double v) { return std::clamp(v, lo, hi); });
  return BoxSignal(std::move(out), lo, hi);
}

// ---------------------------------------------------------------------------

ComplexSignal circular_convolve(const ComplexSignal &a, const ComplexSignal &b) {
  require_same_length(a.size(), b.size(), "circular_convolve");
  const std::size_t n = a.size();
  std::vector<Complex> out(n, Complex{0.0, 0.0});
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k] == Complex{0.0, 0.0}) continue;
    for (std::size_t j = 0; j < n; ++j) {
      out[(j + k) % n] += a[k] * b[j];
    }
  }
  return ComplexSignal(std::move(out));
}

ComplexSignal hadamard(const ComplexSignal &a, const ComplexSignal &b) {
  require_same_length(a.size(), b.size(), "hadamard");
  std::vector<Complex> out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] * b[k];
  return ComplexSignal(std::move(out));
}

double lp_norm(std::span<const Complex> a, double p) {
  if (!(p >= 0.0)) throw ParameterError("lp_norm: p must be nonnegative");
  if (p == 0.0) {
    return static_cast<double>(std::count_if(
        a.begin(), a.end(), [](const Complex &c) { return c != Complex{}; }));
  }
  if (p == 2.0) {
    double s = 0.0;
    for (const auto &c : a) s += std::norm(c);
    return std::sqrt(s);
  }
  double s = 0.0;
  for (const auto &c : a) s += std::pow(std::abs(c), p);
  return std::pow(s, 1.0 / p);
}

ComplexSignal finite_difference_kernel(unsigned order, std::size_t length) {
  if (length == 0) throw DimensionError("finite_difference_kernel: empty");
  if (order == 0) return ComplexSignal::unit(length, 0);
  if (order == 3) {
    if (length < 5) {
      throw DimensionError("finite_difference_kernel: order 3 needs N >= 5");
    }
    std::vector<Complex> v(length, Complex{});
    v[2] = -0.5;
    v[1] = 1.0;
    v[length - 1] = -1.0;
    v[length - 2] = 0.5;
    return ComplexSignal(std::move(v));
  }
  if (length < order + 1) {
    throw DimensionError("finite_difference_kernel: N smaller than footprint");
  }
  std::vector<Complex> v1(length, Complex{});
  v1[0] = -1.0;
  v1[length - 1] = 1.0;
  ComplexSignal forward(std::move(v1));
  if (order == 1) return forward;
  // v_n = v_1 * v_{n-1}, so orders above 3 inherit the centred stencil.
  return circular_convolve(forward, finite_difference_kernel(order - 1, length));
}

ComplexSignal cyclic_shift(const ComplexSignal &x, long long shift) {
  std::vector<Complex> out(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    out[k] = x.at_cyclic(static_cast<long long>(k) + shift);
  }
  return ComplexSignal(std::move(out));
}

ComplexSignal conjugate_reverse(const ComplexSignal &x) {
  std::vector<Complex> out(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    out[k] = std::conj(x.at_cyclic(-static_cast<long long>(k)));
  }
  return ComplexSignal(std::move(out));
}

} // namespace binpr
