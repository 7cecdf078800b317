#include "binpr/transforms.hpp"

#include "binpr/errors.hpp"
#include "fft.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace binpr {

namespace {

Complex root_of_unity_power(std::size_t power, std::size_t m) {
  // Reduce the exponent first so large products stay exact.
  const double angle = -2.0 * std::numbers::pi *
                       static_cast<double>(power % m) / static_cast<double>(m);
  return {std::cos(angle), std::sin(angle)};
}

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

} // namespace

DftPlan::DftPlan(std::size_t input_length, std::size_t output_length)
    : n_(input_length), m_(output_length) {
  if (n_ == 0 || m_ == 0) throw DimensionError("DftPlan: lengths must be >= 1");
}

Complex DftPlan::root() const { return root_of_unity_power(1, m_); }

Complex DftPlan::entry(std::size_t row, std::size_t col) const {
  return root_of_unity_power((row % m_) * (col % m_), m_);
}

std::vector<Complex> DftPlan::apply(std::span<const Complex> x) const {
  if (x.size() != n_) throw DimensionError("dft: input length mismatch");
  if (m_ < n_) return apply_direct(x);
  std::vector<Complex> padded(m_, Complex{});
  std::copy(x.begin(), x.end(), padded.begin());
  std::vector<Complex> out(m_);
  detail::fft(padded, out, detail::FftDirection::forward);
  return out;
}

std::vector<Complex> DftPlan::apply_direct(std::span<const Complex> x) const {
  if (x.size() != n_) throw DimensionError("dft: input length mismatch");
  std::vector<Complex> out(m_, Complex{});
  for (std::size_t row = 0; row < m_; ++row) {
    Complex acc{};
    for (std::size_t col = 0; col < n_; ++col) acc += entry(row, col) * x[col];
    out[row] = acc;
  }
  return out;
}

std::vector<Complex> DftPlan::adjoint(std::span<const Complex> z) const {
  if (z.size() != m_) throw DimensionError("dft adjoint: input length mismatch");
  if (m_ < n_) {
    std::vector<Complex> out(n_, Complex{});
    for (std::size_t col = 0; col < n_; ++col) {
      Complex acc{};
      for (std::size_t row = 0; row < m_; ++row) {
        acc += std::conj(entry(row, col)) * z[row];
      }
      out[col] = acc;
    }
    return out;
  }
  std::vector<Complex> full(m_);
  detail::fft(z, full, detail::FftDirection::backward);
  full.resize(n_);
  return full;
}

ComplexSignal dft(const DftPlan &plan, const ComplexSignal &x) {
  return ComplexSignal(plan.apply(x.samples()));
}

ComplexSignal inverse_dft(std::span<const Complex> v) {
  if (v.empty()) throw DimensionError("inverse_dft: empty input");
  std::vector<Complex> out(v.size());
  detail::fft(v, out, detail::FftDirection::backward);
  const double scale = 1.0 / static_cast<double>(v.size());
  for (auto &c : out) c *= scale;
  return ComplexSignal(std::move(out));
}

// ---------------------------------------------------------------------------

SamplingScheme SamplingScheme::classic(std::size_t n) {
  if (n == 0) throw DimensionError("classic scheme: N must be >= 1");
  return {Kind::classic, n, n, 0, 0};
}

SamplingScheme SamplingScheme::oversampled(std::size_t n, std::size_t m) {
  if (n == 0 || m < n) {
    throw DimensionError("oversampled scheme: need M >= N >= 1");
  }
  return {Kind::oversampled, n, m, 0, 0};
}

SamplingScheme SamplingScheme::stft(std::size_t n, std::size_t w, std::size_t l) {
  if (l == 0) throw ParameterError("stft scheme: hop must be >= 1");
  if (n == 0 || w == 0) throw DimensionError("stft scheme: N, W must be >= 1");
  return {Kind::stft, n, 0, w, l};
}

SamplingScheme SamplingScheme::frog(std::size_t n, std::size_t l) {
  if (l == 0) throw ParameterError("frog scheme: hop must be >= 1");
  if (n == 0) throw DimensionError("frog scheme: N must be >= 1");
  return {Kind::frog, n, 0, 0, l};
}

std::string SamplingScheme::describe() const {
  std::ostringstream os;
  switch (kind) {
  case Kind::classic: os << "classic(N=" << signal_length << ")"; break;
  case Kind::oversampled:
    os << "oversampled(N=" << signal_length << ",M=" << output_length << ")";
    break;
  case Kind::stft:
    os << "stft(N=" << signal_length << ",W=" << window_length << ",L=" << hop
       << ")";
    break;
  case Kind::frog: os << "frog(N=" << signal_length << ",L=" << hop << ")"; break;
  }
  return os.str();
}

MagnitudeMeasurements::MagnitudeMeasurements(std::vector<double> values,
                                             SamplingScheme scheme, bool noisy)
    : values_(std::move(values)), scheme_(scheme), noisy_(noisy) {
  if (!scheme_.is_fourier()) {
    throw SchemeError("MagnitudeMeasurements: scheme must be classic or oversampled");
  }
  if (values_.size() != scheme_.output_length) {
    throw DimensionError("MagnitudeMeasurements: length inconsistent with scheme");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw ParameterError("MagnitudeMeasurements: non-finite value");
    if (!noisy_ && v < 0.0) {
      throw ParameterError("MagnitudeMeasurements: negative magnitude");
    }
  }
}

MagnitudeMeasurements magnitude(const DftPlan &plan, const ComplexSignal &x) {
  const auto fx = plan.apply(x.samples());
  std::vector<double> b(fx.size());
  for (std::size_t k = 0; k < fx.size(); ++k) b[k] = std::abs(fx[k]);
  const auto scheme =
      plan.output_length() == plan.input_length()
          ? SamplingScheme::classic(plan.input_length())
          : SamplingScheme::oversampled(plan.input_length(), plan.output_length());
  return MagnitudeMeasurements(std::move(b), scheme);
}

StftMeasurements stft_magnitude(const ComplexSignal &x,
                                const ComplexSignal &window, std::size_t hop) {
  if (hop == 0) throw ParameterError("stft_magnitude: hop must be >= 1");
  const std::size_t n = x.size();
  const std::size_t w = window.size();
  const std::size_t rows = ceil_div(n + w - 1, hop);

  Grid grid{rows, n, std::vector<double>(rows * n)};
  std::vector<Complex> section(n);
  std::vector<Complex> spectrum(n);
  for (std::size_t m = 0; m < rows; ++m) {
    const auto offset = static_cast<long long>(m * hop);
    for (std::size_t k = 0; k < n; ++k) {
      const long long idx = offset - static_cast<long long>(k);
      section[k] = (idx >= 0 && idx < static_cast<long long>(w))
                       ? x[k] * window[static_cast<std::size_t>(idx)]
                       : Complex{};
    }
    detail::fft(section, spectrum, detail::FftDirection::forward);
    for (std::size_t k = 0; k < n; ++k) grid.at(m, k) = std::abs(spectrum[k]);
  }
  return {std::move(grid), window, hop};
}

FrogMeasurements frog_trace(const ComplexSignal &x, std::size_t hop) {
  if (hop == 0) throw ParameterError("frog_trace: hop must be >= 1");
  const std::size_t n = x.size();
  const std::size_t rows = ceil_div(n, hop);

  Grid grid{rows, n, std::vector<double>(rows * n)};
  std::vector<Complex> product(n);
  std::vector<Complex> spectrum(n);
  for (std::size_t m = 0; m < rows; ++m) {
    for (std::size_t k = 0; k < n; ++k) product[k] = x[k] * x[(k + m * hop) % n];
    detail::fft(product, spectrum, detail::FftDirection::forward);
    for (std::size_t k = 0; k < n; ++k) grid.at(m, k) = std::norm(spectrum[k]);
  }
  return {std::move(grid), hop};
}

} // namespace binpr
