#include "binpr/solver.hpp"

#include "binpr/errors.hpp"
#include "binpr/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace binpr {

namespace {

double norm2(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto &c : v) s += std::norm(c);
  return std::sqrt(s);
}

bool all_finite(std::span<const Complex> v) {
  return std::all_of(v.begin(), v.end(), [](const Complex &c) {
    return std::isfinite(c.real()) && std::isfinite(c.imag());
  });
}

} // namespace

void AdmmParams::validate() const {
  if (!(rho1 > 0.0) || !(rho2 > 0.0)) {
    throw ParameterError("AdmmParams: rho1 and rho2 must be positive");
  }
  if (max_iters < 1) throw ParameterError("AdmmParams: max_iters must be >= 1");
  if (!(tol_primal >= 0.0)) throw ParameterError("AdmmParams: tol_primal < 0");
}

std::vector<Complex> magnitude_prox(std::span<const Complex> g,
                                    std::span<const double> b, double rho) {
  if (!(rho > 0.0)) throw ParameterError("magnitude_prox: rho must be positive");
  if (g.size() != b.size()) throw DimensionError("magnitude_prox: length mismatch");
  std::vector<Complex> z(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double mag = std::abs(g[k]);
    if (mag > 0.0) {
      const double radius = std::max(0.0, (b[k] + rho * mag) / (1.0 + rho));
      z[k] = (radius / mag) * g[k];
    } else {
      z[k] = std::max(0.0, b[k] / (1.0 + rho));
    }
  }
  return z;
}

double magnitude_residual(const MagnitudeMeasurements &b, const ComplexSignal &x) {
  const DftPlan plan(b.signal_length(), b.scheme().output_length);
  const auto fx = plan.apply(x.samples());
  double s = 0.0;
  for (std::size_t k = 0; k < fx.size(); ++k) {
    const double r = std::abs(fx[k]) - b[k];
    s += r * r;
  }
  return std::sqrt(s);
}

SolveResult admm_solve(const MagnitudeMeasurements &b, std::size_t n,
                       const AdmmParams &params,
                       std::optional<std::span<const double>> init_phase,
                       const AdmmObserver &observer) {
  params.validate();
  if (n == 0 || n != b.signal_length()) {
    throw DimensionError("admm_solve: N does not match the measurements");
  }
  const std::size_t m = b.size();
  if (m < n) throw DimensionError("admm_solve: need M >= N");
  if (init_phase && init_phase->size() != m) {
    throw DimensionError("admm_solve: init_phase must have length M");
  }

  const DftPlan plan(n, m);
  const bool unitary = params.scaling == FourierScaling::unitary;
  const double scale = unitary ? 1.0 / std::sqrt(static_cast<double>(m)) : 1.0;
  const double rho1 = params.rho1;
  const double rho2 = params.rho2;
  // F*F = I in the unitary scaling and M·I otherwise.
  const double gram = unitary ? 1.0 : static_cast<double>(m);
  const double x_denominator =
      params.literal_x_update ? rho1 + rho2 : rho1 * gram + rho2;

  std::vector<double> target(b.values().begin(), b.values().end());
  for (auto &v : target) v *= scale;

  AdmmState st;
  st.x.assign(n, Complex{});
  st.y.assign(n, 0.0);
  st.w.assign(n, 0.0);
  st.d.assign(m, Complex{});
  st.z.resize(m);
  {
    std::vector<double> phase;
    if (init_phase) {
      phase.assign(init_phase->begin(), init_phase->end());
    } else {
      Rng rng(params.seed);
      std::uniform_real_distribution<double> uniform(0.0, 2.0 * std::numbers::pi);
      phase.resize(m);
      for (auto &p : phase) p = uniform(rng);
    }
    for (std::size_t k = 0; k < m; ++k) st.z[k] = std::polar(target[k], phase[k]);
  }

  std::vector<Complex> combined(m);
  std::vector<Complex> g(m);
  SolveResult result{ComplexSignal::zeros(n), 0.0, 0, false};

  for (int it = 0; it < params.max_iters; ++it) {
    // x-update
    for (std::size_t k = 0; k < m; ++k) combined[k] = rho1 * st.z[k] + st.d[k];
    auto fadj = plan.adjoint(combined);
    std::vector<Complex> x_next(n);
    for (std::size_t k = 0; k < n; ++k) {
      Complex v = (scale * fadj[k] + rho2 * st.y[k] - st.w[k]) / x_denominator;
      if (params.real_iterates) v = Complex{v.real(), 0.0};
      x_next[k] = v;
    }
    // y-update: projection onto the box
    for (std::size_t k = 0; k < n; ++k) {
      st.y[k] = std::clamp(x_next[k].real() + st.w[k] / rho2, 0.0, 1.0);
    }
    // z-update
    auto fx = plan.apply(x_next);
    for (std::size_t k = 0; k < m; ++k) {
      fx[k] *= scale;
      g[k] = fx[k] - st.d[k] / rho1;
    }
    st.z = magnitude_prox(g, target, rho1);
    // dual updates
    for (std::size_t k = 0; k < m; ++k) st.d[k] += rho1 * (st.z[k] - fx[k]);
    for (std::size_t k = 0; k < n; ++k) st.w[k] += rho2 * (x_next[k].real() - st.y[k]);

    if (!all_finite(x_next) || !all_finite(st.d)) {
      throw DivergenceError("admm_solve: non-finite iterate at iteration " +
                            std::to_string(it + 1));
    }

    double change = 0.0;
    for (std::size_t k = 0; k < n; ++k) change += std::norm(x_next[k] - st.x[k]);
    change = std::sqrt(change) / std::max(1.0, norm2(st.x));

    st.x = std::move(x_next);
    st.iter = it + 1;
    if (observer) observer(st);
    if (change < params.tol_primal) {
      result.converged = true;
      break;
    }
  }

  // Report the box-feasible iterate: x and y agree at a fixed point, but with
  // small ρ₂ the w-dual closes the last gap only very slowly.
  result.x_star = ComplexSignal::from_real(st.y);
  result.iters_used = st.iter;
  result.residual = magnitude_residual(b, result.x_star);
  return result;
}

SolveResult admm_solve_multistart(const MagnitudeMeasurements &b, std::size_t n,
                                  const AdmmParams &params, std::size_t restarts) {
  if (restarts == 0) throw ParameterError("admm_solve_multistart: restarts >= 1");
  std::optional<SolveResult> best;
  for (std::size_t r = 0; r < restarts; ++r) {
    AdmmParams p = params;
    p.seed = r == 0 ? params.seed : derive_seed(params.seed, {r});
    SolveResult res = admm_solve(b, n, p);
    if (!best || res.residual < best->residual) best = std::move(res);
    if (best->residual < params.success_tol) break;
  }
  return *best;
}

BinarySignal round_to_binary(std::span<const double> x) {
  std::vector<std::uint8_t> bits(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) bits[k] = x[k] >= 0.5 ? 1 : 0;
  return BinarySignal(std::move(bits));
}

BinarySignal round_to_binary(const ComplexSignal &x) {
  return round_to_binary(x.real_part());
}

} // namespace binpr
