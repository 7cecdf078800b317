#include "binpr/property_suite.hpp"

#include "binpr/ambiguity.hpp"
#include "binpr/errors.hpp"
#include "binpr/parallel.hpp"
#include "binpr/rng.hpp"
#include "binpr/signal.hpp"
#include "binpr/solver.hpp"
#include "binpr/transforms.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <memory>
#include <numbers>
#include <sstream>

namespace binpr {

namespace {

using Mask = std::uint64_t;
using Vec = std::vector<Complex>;

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kExhaustiveCap = 16;

Mask full_mask(std::size_t n) { return n == 64 ? ~0ull : ((1ull << n) - 1); }

// Bit k of the result is bit (k + shift) mod N of u.
Mask rotate(Mask u, std::size_t shift, std::size_t n) {
  shift %= n;
  if (shift == 0) return u;
  return ((u >> shift) | (u << (n - shift))) & full_mask(n);
}

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

// ---------------------------------------------------------------------------
// Measurement models: m(y) is a vector of squared magnitudes. The gradient of
// ½‖m(y) − t‖² is returned with ∂/∂Re y_j in the real part and ∂/∂Im y_j in
// the imaginary part.

class DftTable {
public:
  DftTable(std::size_t n, std::size_t m) : n_(n), m_(m), w_(m) {
    for (std::size_t p = 0; p < m; ++p) w_[p] = std::polar(1.0, -kTwoPi * p / m);
  }
  Vec forward(std::span<const Complex> y) const {
    Vec a(m_);
    for (std::size_t k = 0; k < m_; ++k) {
      Complex acc{};
      for (std::size_t j = 0; j < n_; ++j) acc += y[j] * w_[(j * k) % m_];
      a[k] = acc;
    }
    return a;
  }
  // 2 Σ_k r_k a_k conj(ω^{jk})
  Vec back(std::span<const double> r, std::span<const Complex> a) const {
    Vec g(n_);
    for (std::size_t j = 0; j < n_; ++j) {
      Complex acc{};
      for (std::size_t k = 0; k < m_; ++k) acc += r[k] * a[k] * std::conj(w_[(j * k) % m_]);
      g[j] = 2.0 * acc;
    }
    return g;
  }
  std::size_t m() const { return m_; }

private:
  std::size_t n_;
  std::size_t m_;
  Vec w_;
};

class Model {
public:
  virtual ~Model() = default;
  virtual std::vector<double> measure(std::span<const Complex> y) const = 0;
  virtual double objective(std::span<const Complex> y, std::span<const double> target,
                           Vec *grad) const = 0;
};

double half_sq(std::span<const double> m, std::span<const double> t, std::vector<double> &r) {
  r.resize(m.size());
  double f = 0.0;
  for (std::size_t k = 0; k < m.size(); ++k) {
    r[k] = m[k] - t[k];
    f += r[k] * r[k];
  }
  return 0.5 * f;
}

class FourierModel final : public Model {
public:
  FourierModel(std::size_t n, std::size_t m) : table_(n, m) {}
  std::vector<double> measure(std::span<const Complex> y) const override {
    const Vec a = table_.forward(y);
    std::vector<double> out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = std::norm(a[k]);
    return out;
  }
  double objective(std::span<const Complex> y, std::span<const double> target,
                   Vec *grad) const override {
    const Vec a = table_.forward(y);
    std::vector<double> m(a.size()), r;
    for (std::size_t k = 0; k < a.size(); ++k) m[k] = std::norm(a[k]);
    const double f = half_sq(m, target, r);
    if (grad) *grad = table_.back(r, a);
    return f;
  }

private:
  DftTable table_;
};

// Window 𝟙 of length W: row m keeps y_k with 0 ≤ mL − k ≤ W − 1.
class StftModel final : public Model {
public:
  StftModel(std::size_t n, std::size_t w, std::size_t l)
      : n_(n), w_(w), l_(l), rows_(ceil_div(n + w - 1, l)), table_(n, n) {}
  bool inside(std::size_t row, std::size_t k) const {
    const long long d = static_cast<long long>(row * l_) - static_cast<long long>(k);
    return d >= 0 && d < static_cast<long long>(w_);
  }
  Vec row_signal(std::span<const Complex> y, std::size_t row) const {
    Vec u(n_);
    for (std::size_t k = 0; k < n_; ++k) u[k] = inside(row, k) ? y[k] : Complex{};
    return u;
  }
  std::vector<double> measure(std::span<const Complex> y) const override {
    std::vector<double> out;
    out.reserve(rows_ * n_);
    for (std::size_t row = 0; row < rows_; ++row) {
      for (const auto &a : table_.forward(row_signal(y, row))) out.push_back(std::norm(a));
    }
    return out;
  }
  double objective(std::span<const Complex> y, std::span<const double> target,
                   Vec *grad) const override {
    double f = 0.0;
    if (grad) grad->assign(n_, Complex{});
    std::vector<double> m(n_), r;
    for (std::size_t row = 0; row < rows_; ++row) {
      const Vec a = table_.forward(row_signal(y, row));
      for (std::size_t k = 0; k < n_; ++k) m[k] = std::norm(a[k]);
      f += half_sq(m, target.subspan(row * n_, n_), r);
      if (grad) {
        const Vec g = table_.back(r, a);
        for (std::size_t k = 0; k < n_; ++k) {
          if (inside(row, k)) (*grad)[k] += g[k];
        }
      }
    }
    return f;
  }

private:
  std::size_t n_, w_, l_, rows_;
  DftTable table_;
};

// Row m is the spectrum of p_k = y_k y_{(k+mL) mod N}; real y only.
class FrogModel final : public Model {
public:
  FrogModel(std::size_t n, std::size_t l) : n_(n), l_(l), rows_(ceil_div(n, l)), table_(n, n) {}
  Vec product(std::span<const Complex> y, std::size_t row) const {
    Vec p(n_);
    for (std::size_t k = 0; k < n_; ++k) p[k] = y[k] * y[(k + row * l_) % n_];
    return p;
  }
  std::vector<double> measure(std::span<const Complex> y) const override {
    std::vector<double> out;
    out.reserve(rows_ * n_);
    for (std::size_t row = 0; row < rows_; ++row) {
      for (const auto &a : table_.forward(product(y, row))) out.push_back(std::norm(a));
    }
    return out;
  }
  double objective(std::span<const Complex> y, std::span<const double> target,
                   Vec *grad) const override {
    double f = 0.0;
    if (grad) grad->assign(n_, Complex{});
    std::vector<double> m(n_), r;
    for (std::size_t row = 0; row < rows_; ++row) {
      const Vec a = table_.forward(product(y, row));
      for (std::size_t k = 0; k < n_; ++k) m[k] = std::norm(a[k]);
      f += half_sq(m, target.subspan(row * n_, n_), r);
      if (grad) {
        const Vec gp = table_.back(r, a);
        const std::size_t s = (row * l_) % n_;
        for (std::size_t j = 0; j < n_; ++j) {
          (*grad)[j] += gp[j].real() * y[(j + s) % n_].real() +
                        gp[(j + n_ - s) % n_].real() * y[(j + n_ - s) % n_].real();
        }
      }
    }
    return f;
  }

private:
  std::size_t n_, l_, rows_;
  DftTable table_;
};

// ---------------------------------------------------------------------------
// Discrete sets and their relaxations.

class DiscreteSet {
public:
  /// {lo, hi} ⊂ ℝ relaxed to [lo, hi].
  static DiscreteSet interval(double lo, double hi) {
    DiscreteSet s;
    s.vertices_ = {lo, hi};
    s.real_ = true;
    return s;
  }
  /// radius · k-th roots of unity relaxed to their convex hull.
  static DiscreteSet roots(std::size_t k, double radius) {
    DiscreteSet s;
    for (std::size_t j = 0; j < k; ++j) s.vertices_.push_back(std::polar(radius, kTwoPi * j / k));
    s.real_ = false;
    return s;
  }

  Complex project(Complex p) const {
    if (real_) {
      return {std::clamp(p.real(), vertices_[0].real(), vertices_[1].real()), 0.0};
    }
    if (inside(p)) return p;
    Complex best = vertices_[0];
    double best_d = std::abs(p - best);
    const std::size_t k = vertices_.size();
    for (std::size_t j = 0; j < k; ++j) {
      const Complex a = vertices_[j];
      const Complex e = vertices_[(j + 1) % k] - a;
      const double len2 = std::norm(e);
      double t = len2 > 0.0 ? (std::conj(e) * (p - a)).real() / len2 : 0.0;
      t = std::clamp(t, 0.0, 1.0);
      const Complex q = a + t * e;
      if (std::abs(p - q) < best_d) {
        best_d = std::abs(p - q);
        best = q;
      }
    }
    return best;
  }

  Complex snap(Complex p) const {
    return *std::min_element(vertices_.begin(), vertices_.end(), [&](Complex a, Complex b) {
      return std::abs(p - a) < std::abs(p - b);
    });
  }
  double distance(Complex p) const { return std::abs(p - snap(p)); }

  Complex random_vertex(Rng &rng) const {
    std::uniform_int_distribution<std::size_t> pick(0, vertices_.size() - 1);
    return vertices_[pick(rng)];
  }
  /// Uniform on the interval; a flat-Dirichlet mixture of the vertices otherwise.
  Complex random_relaxed(Rng &rng) const {
    if (real_) {
      std::uniform_real_distribution<double> u(vertices_[0].real(), vertices_[1].real());
      return {u(rng), 0.0};
    }
    std::exponential_distribution<double> e;
    Complex acc{};
    double total = 0.0;
    for (const auto &v : vertices_) {
      const double wgt = e(rng);
      acc += wgt * v;
      total += wgt;
    }
    return acc / total;
  }

private:
  bool inside(Complex p) const {
    const std::size_t k = vertices_.size();
    if (k < 3) return false;
    for (std::size_t j = 0; j < k; ++j) {
      const Complex e = vertices_[(j + 1) % k] - vertices_[j];
      const Complex d = p - vertices_[j];
      if (e.real() * d.imag() - e.imag() * d.real() < 0.0) return false;
    }
    return true;
  }

  std::vector<Complex> vertices_;
  bool real_ = true;
};

// Count conclusion of a theorem for two discrete points with equal data.
using CountRule = std::function<bool(const Vec &x, const Vec &y)>;

std::size_t count_equal(const Vec &v, double value) {
  return static_cast<std::size_t>(
      std::count_if(v.begin(), v.end(), [&](Complex c) { return std::abs(c - value) < 1e-9; }));
}

CountRule same_count_of(double value) {
  return [value](const Vec &x, const Vec &y) { return count_equal(x, value) == count_equal(y, value); };
}

CountRule no_count_rule() {
  return [](const Vec &, const Vec &) { return true; };
}

std::string format_vec(const Vec &v, bool real) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) os << ',';
    if (real) {
      os << v[k].real();
    } else {
      os << v[k].real() << (v[k].imag() < 0 ? "" : "+") << v[k].imag() << 'i';
    }
  }
  os << ')';
  return os.str();
}

double magnitude_mismatch(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = std::sqrt(std::max(a[k], 0.0)) - std::sqrt(std::max(b[k], 0.0));
    s += d * d;
  }
  return std::sqrt(s);
}

// ---------------------------------------------------------------------------
// Falsification.

struct Endpoint {
  bool nonbinary = false;
  double mismatch = 0.0;
  std::string violation; ///< empty unless this run is a counterexample
};

struct FalsifyContext {
  std::function<std::unique_ptr<Model>(std::size_t n)> make_model;
  DiscreteSet set;
  CountRule rule;
  const PropertyOptions *opts;
};

Endpoint classify(const Model &model, const DiscreteSet &set, const CountRule &rule,
                  const Vec &x, const Vec &y, std::span<const double> target,
                  const PropertyOptions &opts, const std::string &tag) {
  Endpoint out;
  double dist = 0.0;
  for (const auto &v : y) dist = std::max(dist, set.distance(v));
  const bool real = std::all_of(x.begin(), x.end(), [](Complex c) { return c.imag() == 0.0; });
  out.mismatch = magnitude_mismatch(model.measure(y), target);
  if (dist > opts.nonbinary_distance) {
    out.nonbinary = true;
    if (out.mismatch < opts.mismatch_floor) {
      std::ostringstream os;
      os.precision(17);
      os << tag << " non-discrete feasible point: x=" << format_vec(x, real)
         << " y=" << format_vec(y, real) << " mismatch=" << out.mismatch;
      out.violation = os.str();
    }
    return out;
  }
  Vec snapped(y.size());
  for (std::size_t k = 0; k < y.size(); ++k) snapped[k] = set.snap(y[k]);
  if (magnitude_mismatch(model.measure(snapped), target) < 1e-8 && !rule(x, snapped)) {
    out.violation = tag + " count conclusion fails: x=" + format_vec(x, real) +
                    " y=" + format_vec(snapped, real);
  }
  return out;
}

Vec projected_gradient(const Model &model, const DiscreteSet &set, Vec y,
                       std::span<const double> target, int max_iters) {
  auto project_all = [&](Vec v) {
    for (auto &c : v) c = set.project(c);
    return v;
  };
  y = project_all(std::move(y));
  Vec g;
  double f = model.objective(y, target, &g);
  double step = 1e-3;
  constexpr double sigma = 1e-4;
  for (int it = 0; it < max_iters && f > 1e-30; ++it) {
    bool accepted = false;
    for (int bt = 0; bt < 80; ++bt) {
      Vec trial(y.size());
      for (std::size_t k = 0; k < y.size(); ++k) trial[k] = y[k] - step * g[k];
      trial = project_all(std::move(trial));
      double moved = 0.0;
      for (std::size_t k = 0; k < y.size(); ++k) moved += std::norm(trial[k] - y[k]);
      if (moved == 0.0) return y; // projected-stationary
      const double f_trial = model.objective(trial, target, nullptr);
      if (f_trial <= f - sigma / step * moved) {
        y = std::move(trial);
        f = model.objective(y, target, &g);
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    step = std::min(step * 2.0, 1e6);
  }
  return y;
}

void absorb(TheoremCheckReport &report, const std::vector<Endpoint> &endpoints) {
  for (const auto &e : endpoints) {
    ++report.trials;
    if (e.nonbinary) {
      ++report.nonbinary_endpoints;
      report.min_nonbinary_mismatch = std::min(report.min_nonbinary_mismatch, e.mismatch);
    }
    if (!e.violation.empty()) {
      ++report.counterexamples;
      report.dumps.push_back(e.violation);
    }
  }
}

std::size_t falsify_length(std::size_t run, std::size_t n, const PropertyOptions &opts,
                           std::size_t min_n = 2) {
  const std::size_t hi = std::max(min_n, std::min(n, opts.falsify_max_n));
  return min_n + run % (hi - min_n + 1);
}

void falsify(TheoremCheckReport &report, const FalsifyContext &ctx, std::size_t n,
             std::uint64_t stream, std::size_t min_n = 2) {
  const PropertyOptions &opts = *ctx.opts;
  std::vector<Endpoint> endpoints(opts.restarts);
  parallel_for(opts.restarts, opts.threads, [&](std::size_t run) {
    const std::uint64_t seed = derive_seed(opts.seed, {stream, run});
    Rng rng(seed);
    const std::size_t len = falsify_length(run, n, opts, min_n);
    const auto model = ctx.make_model(len);
    Vec x(len), y0(len);
    for (auto &v : x) v = ctx.set.random_vertex(rng);
    for (auto &v : y0) v = ctx.set.random_relaxed(rng);
    const auto target = model->measure(x);
    const Vec y = projected_gradient(*model, ctx.set, std::move(y0), target, opts.max_iters);
    endpoints[run] = classify(*model, ctx.set, ctx.rule, x, y, target, opts,
                              report.theorem + " seed=" + std::to_string(seed) +
                                  " N=" + std::to_string(len));
  });
  absorb(report, endpoints);
}

// ADMM solves on clean |F_M x| for 0/1 signals; the end point is the box
// projection of x*.
void admm_probes(TheoremCheckReport &report, const PropertyOptions &opts, std::size_t n,
                 std::size_t m_fixed, std::uint64_t stream, const CountRule &rule) {
  if (opts.admm_probes == 0) return;
  std::vector<Endpoint> endpoints(opts.admm_probes);
  const DiscreteSet set = DiscreteSet::interval(0.0, 1.0);
  parallel_for(opts.admm_probes, opts.threads, [&](std::size_t run) {
    const std::uint64_t seed = derive_seed(opts.seed, {stream, run, 0xad33});
    Rng rng(seed);
    const std::size_t len = falsify_length(run, n, opts);
    const std::size_t m = m_fixed == 0 ? len : std::max(m_fixed, len);
    Vec x(len);
    for (auto &v : x) v = set.random_vertex(rng);
    const DftPlan plan(len, m);
    const auto b = magnitude(plan, ComplexSignal(x));
    AdmmParams params;
    params.seed = seed;
    params.max_iters = 2000;
    Vec y(len);
    try {
      const auto solved = admm_solve(b, len, params);
      for (std::size_t k = 0; k < len; ++k) y[k] = set.project(solved.x_star[k]);
    } catch (const DivergenceError &) {
      endpoints[run] = {};
      return;
    }
    const FourierModel model(len, m);
    endpoints[run] = classify(model, set, rule, x, y, model.measure(x), opts,
                              report.theorem + " admm seed=" + std::to_string(seed) +
                                  " N=" + std::to_string(len));
  });
  absorb(report, endpoints);
}

// ---------------------------------------------------------------------------
// Exhaustive grouping by exact integer keys.

using Key = std::vector<std::int64_t>;

// Σ_k y_k y_{k+j} for ±1 signals from the mask of +1 entries.
std::int64_t pm1_lag(Mask u, std::size_t j, std::size_t n) {
  return static_cast<std::int64_t>(n) - 2 * std::popcount(u ^ rotate(u, j, n));
}

Key periodic_counts(Mask u, std::size_t n) {
  Key key(n);
  for (std::size_t j = 0; j < n; ++j) key[j] = std::popcount(u & rotate(u, j, n));
  return key;
}

// Signals of one length, their exact keys, a library measurement and the
// member used by the count rule.
struct ExhaustiveSpec {
  std::function<Key(Mask)> key;
  std::function<std::vector<double>(Mask)> measure; // via the library operators
  std::function<Vec(Mask)> member;
  CountRule rule;
};

void exhaustive(TheoremCheckReport &report, std::size_t len, const ExhaustiveSpec &spec) {
  const Mask total = Mask{1} << len;
  std::vector<std::pair<Key, Mask>> entries(total);
  for (Mask u = 0; u < total; ++u) entries[u] = {spec.key(u), u};
  std::sort(entries.begin(), entries.end());
  report.exhaustive_signals += total;

  std::size_t begin = 0;
  while (begin < entries.size()) {
    std::size_t end = begin + 1;
    while (end < entries.size() && entries[end].first == entries[begin].first) ++end;
    const Mask first = entries[begin].second;
    const auto ref = spec.measure(first);
    const Vec x = spec.member(first);
    double scale = 1.0;
    for (double v : ref) scale = std::max(scale, std::abs(v));
    for (std::size_t i = begin + 1; i < end; ++i) {
      const Mask other = entries[i].second;
      const auto got = spec.measure(other);
      double diff = 0.0;
      for (std::size_t k = 0; k < got.size(); ++k) diff = std::max(diff, std::abs(got[k] - ref[k]));
      const Vec y = spec.member(other);
      std::string problem;
      if (diff > 1e-9 * scale) problem = "measurements differ inside an exact-key group";
      else if (!spec.rule(x, y)) problem = "count conclusion fails";
      if (!problem.empty()) {
        ++report.counterexamples;
        report.dumps.push_back(report.theorem + " exhaustive N=" + std::to_string(len) + ": " +
                               problem + ": x=" + format_vec(x, true) +
                               " y=" + format_vec(y, true));
      }
    }
    begin = end;
  }
}

Vec two_level(Mask u, std::size_t n, double lo, double hi) {
  Vec v(n);
  for (std::size_t k = 0; k < n; ++k) v[k] = ((u >> k) & 1u) ? hi : lo;
  return v;
}

std::vector<double> library_magnitudes(const Vec &v, std::size_t m) {
  const auto b = magnitude(DftPlan(v.size(), m), ComplexSignal(v));
  return {b.values().begin(), b.values().end()};
}

std::vector<double> flatten(const Grid &g) { return g.data; }

void require_length(std::size_t n, const char *what) {
  if (n == 0) throw ParameterError(std::string(what) + ": N must be >= 1");
  if (n > kExhaustiveCap) {
    throw CapExceededError(std::string(what) + ": exhaustive prong capped at N = " +
                           std::to_string(kExhaustiveCap));
  }
}

std::uint64_t stream_id(const std::string &name) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : name) h = (h ^ c) * 1099511628211ull;
  return h;
}

} // namespace

TheoremCheckReport check_box_to_binary(std::size_t n, double alpha, double beta,
                                       const PropertyOptions &opts) {
  if (!(alpha >= 0.0) || !(alpha < beta) || !std::isfinite(beta)) {
    throw ParameterError("check_box_to_binary: need 0 <= alpha < beta");
  }
  require_length(n, "check_box_to_binary");
  TheoremCheckReport report;
  report.theorem = "box_to_binary";
  report.params = {{"N", double(n)}, {"alpha", alpha}, {"beta", beta}};
  const CountRule rule = same_count_of(beta);

  for (std::size_t len = 1; len <= n; ++len) {
    exhaustive(report, len,
               {[len](Mask u) { return periodic_counts(u, len); },
                [=](Mask u) { return library_magnitudes(two_level(u, len, alpha, beta), len); },
                [=](Mask u) { return two_level(u, len, alpha, beta); }, rule});
  }
  const FalsifyContext ctx{[](std::size_t len) { return std::make_unique<FourierModel>(len, len); },
                           DiscreteSet::interval(alpha, beta), rule, &opts};
  falsify(report, ctx, n, stream_id(report.theorem) ^ seed_label(beta));
  if (alpha == 0.0 && beta == 1.0) admm_probes(report, opts, n, 0, stream_id("admm"), rule);
  return report;
}

TheoremCheckReport check_pm1_box(std::size_t n, const PropertyOptions &opts) {
  require_length(n, "check_pm1_box");
  TheoremCheckReport report;
  report.theorem = "pm1_box";
  report.params = {{"N", double(n)}};
  const CountRule rule = [](const Vec &x, const Vec &y) {
    const std::size_t ones = count_equal(y, 1.0);
    return ones == count_equal(x, 1.0) || ones == count_equal(x, -1.0);
  };
  for (std::size_t len = 1; len <= n; ++len) {
    exhaustive(report, len,
               {[len](Mask u) {
                  Key key(len);
                  for (std::size_t j = 0; j < len; ++j) key[j] = pm1_lag(u, j, len);
                  return key;
                },
                [len](Mask u) { return library_magnitudes(two_level(u, len, -1.0, 1.0), len); },
                [len](Mask u) { return two_level(u, len, -1.0, 1.0); }, rule});
  }
  const FalsifyContext ctx{[](std::size_t len) { return std::make_unique<FourierModel>(len, len); },
                           DiscreteSet::interval(-1.0, 1.0), rule, &opts};
  falsify(report, ctx, n, stream_id(report.theorem));
  return report;
}

TheoremCheckReport check_unimodular_hull(std::size_t roots, double radius, std::size_t n,
                                         const PropertyOptions &opts) {
  if (roots < 2) throw ParameterError("check_unimodular_hull: need at least 2 roots");
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw ParameterError("check_unimodular_hull: radius must be positive");
  }
  if (n == 0) throw ParameterError("check_unimodular_hull: N must be >= 1");
  TheoremCheckReport report;
  report.theorem = "unimodular_hull";
  report.params = {{"N", double(n)}, {"roots", double(roots)}, {"radius", radius}};
  const DiscreteSet set = DiscreteSet::roots(roots, radius);
  const std::uint64_t stream = stream_id(report.theorem);

  // Parseval: off-E hull points are strictly shorter than c√N, so their
  // spectra cannot match any E-valued signal. Trivial-orbit pairs must match.
  std::vector<std::string> problems(opts.restarts);
  parallel_for(opts.restarts, opts.threads, [&](std::size_t run) {
    const std::uint64_t seed = derive_seed(opts.seed, {stream, run, 0x9a75});
    Rng rng(seed);
    const std::size_t len = falsify_length(run, n, opts, 1);
    Vec x(len), y(len);
    for (auto &v : x) v = set.random_vertex(rng);
    double dist = 0.0, norm_sq = 0.0;
    for (auto &v : y) {
      v = set.random_relaxed(rng);
      dist = std::max(dist, set.distance(v));
      norm_sq += std::norm(v);
    }
    if (dist > opts.nonbinary_distance && !(norm_sq < radius * radius * len)) {
      problems[run] = "hull point reaches the Parseval norm, seed=" + std::to_string(seed);
      return;
    }
    std::uniform_int_distribution<std::size_t> pick(0, 4 * len * roots);
    const std::size_t draw = pick(rng);
    TrivialAmbiguity t{kTwoPi * static_cast<double>(draw % roots) / roots, draw % len,
                       (draw / len) % 2 == 1};
    const auto moved = apply_trivial(ComplexSignal(x), t);
    const auto bx = library_magnitudes(x, len);
    const auto by = library_magnitudes({moved.samples().begin(), moved.samples().end()}, len);
    for (std::size_t k = 0; k < len; ++k) {
      if (std::abs(bx[k] - by[k]) > 1e-9 * std::max(1.0, bx[k])) {
        problems[run] = "trivial-orbit pair with different magnitudes, seed=" + std::to_string(seed);
        return;
      }
    }
  });
  for (auto &p : problems) {
    if (!p.empty()) {
      ++report.counterexamples;
      report.dumps.push_back(report.theorem + " " + p);
    }
  }

  const FalsifyContext ctx{[](std::size_t len) { return std::make_unique<FourierModel>(len, len); },
                           set, no_count_rule(), &opts};
  falsify(report, ctx, n, stream);
  return report;
}

TheoremCheckReport check_extension(const ExtensionScheme &scheme, std::size_t n,
                                   const PropertyOptions &opts) {
  require_length(n, "check_extension");
  if (scheme.hop == 0) throw ParameterError("check_extension: hop must be >= 1");
  TheoremCheckReport report;
  report.params = {{"N", double(n)}};
  using Kind = ExtensionScheme::Kind;

  switch (scheme.kind) {
  case Kind::oversampled: {
    if (scheme.m != 0 && scheme.m < n) {
      throw ParameterError("check_extension: oversampled M must be >= N");
    }
    report.theorem = "oversampled";
    report.params["M"] = double(scheme.m == 0 ? 2 * n - 1 : scheme.m);
    const CountRule rule = same_count_of(1.0);
    auto m_for = [&](std::size_t len) { return scheme.m == 0 ? 2 * len - 1 : scheme.m; };
    for (std::size_t len = 1; len <= n; ++len) {
      const std::size_t m = m_for(len);
      exhaustive(report, len,
                 {[len, m](Mask u) {
                    // |F_M x|² is the M-point DFT of the M-periodized regular Aut.
                    Key key(m, 0);
                    for (std::size_t j = 0; j < len; ++j) {
                      const std::int64_t c = std::popcount(u & (u >> j));
                      key[j % m] += c;
                      if (j != 0) key[(m - j % m) % m] += c;
                    }
                    return key;
                  },
                  [len, m](Mask u) { return library_magnitudes(two_level(u, len, 0.0, 1.0), m); },
                  [len](Mask u) { return two_level(u, len, 0.0, 1.0); }, rule});
    }
    const FalsifyContext ctx{
        [m_for](std::size_t len) { return std::make_unique<FourierModel>(len, m_for(len)); },
        DiscreteSet::interval(0.0, 1.0), rule, &opts};
    falsify(report, ctx, n, stream_id(report.theorem));
    admm_probes(report, opts, n, scheme.m, stream_id("admm-oversampled"), rule);
    return report;
  }
  case Kind::stft: {
    const std::size_t w = scheme.window == 0 ? scheme.hop : scheme.window;
    const std::size_t l = scheme.hop;
    if (w < l) throw ParameterError("check_extension: STFT requires W >= L");
    report.theorem = "stft";
    report.params["W"] = double(w);
    report.params["L"] = double(l);
    for (std::size_t len = 1; len <= n; ++len) {
      const StftModel shape(len, w, l);
      const std::size_t rows = ceil_div(len + w - 1, l);
      const auto window = ComplexSignal::ones(w);
      exhaustive(report, len,
                 {[&shape, len, rows](Mask u) {
                    Key key;
                    key.reserve(rows * len);
                    for (std::size_t r = 0; r < rows; ++r) {
                      Mask row = 0;
                      for (std::size_t k = 0; k < len; ++k) {
                        if (shape.inside(r, k)) row |= u & (Mask{1} << k);
                      }
                      const auto c = periodic_counts(row, len);
                      key.insert(key.end(), c.begin(), c.end());
                    }
                    return key;
                  },
                  [len, &window, l](Mask u) {
                    return flatten(
                        stft_magnitude(ComplexSignal(two_level(u, len, 0.0, 1.0)), window, l).grid);
                  },
                  [len](Mask u) { return two_level(u, len, 0.0, 1.0); }, no_count_rule()});
    }
    const FalsifyContext ctx{[w, l](std::size_t len) { return std::make_unique<StftModel>(len, w, l); },
                             DiscreteSet::interval(0.0, 1.0), no_count_rule(), &opts};
    falsify(report, ctx, n, stream_id(report.theorem));
    return report;
  }
  case Kind::frog:
  case Kind::frog_pm1: {
    const bool pm1 = scheme.kind == Kind::frog_pm1;
    const std::size_t l = scheme.hop;
    report.theorem = pm1 ? "frog_pm1" : "frog";
    report.params["L"] = double(l);
    const double lo = pm1 ? -1.0 : 0.0;
    const CountRule rule = pm1 ? no_count_rule() : same_count_of(1.0);
    for (std::size_t len = 1; len <= n; ++len) {
      const std::size_t rows = ceil_div(len, l);
      exhaustive(report, len,
                 {[len, rows, l, pm1](Mask u) {
                    Key key;
                    key.reserve(rows * len);
                    for (std::size_t r = 0; r < rows; ++r) {
                      const Mask partner = rotate(u, r * l, len);
                      if (pm1) {
                        // p_k = +1 exactly where u_k and u_{k+rL} agree
                        const Mask q = ~(u ^ partner) & full_mask(len);
                        for (std::size_t j = 0; j < len; ++j) key.push_back(pm1_lag(q, j, len));
                      } else {
                        const auto c = periodic_counts(u & partner, len);
                        key.insert(key.end(), c.begin(), c.end());
                      }
                    }
                    return key;
                  },
                  [len, l, lo](Mask u) {
                    return flatten(frog_trace(ComplexSignal(two_level(u, len, lo, 1.0)), l).grid);
                  },
                  [len, lo](Mask u) { return two_level(u, len, lo, 1.0); }, rule});
    }
    const FalsifyContext ctx{[l](std::size_t len) { return std::make_unique<FrogModel>(len, l); },
                             DiscreteSet::interval(lo, 1.0), rule, &opts};
    falsify(report, ctx, n, stream_id(report.theorem));
    return report;
  }
  }
  throw ParameterError("check_extension: unknown scheme");
}

std::vector<TheoremCheckReport> run_all_checks(std::size_t n_max, const PropertyOptions &opts) {
  std::vector<TheoremCheckReport> out;
  out.push_back(check_box_to_binary(n_max, 0.0, 1.0, opts));
  out.push_back(check_box_to_binary(n_max, 0.0, 2.0, opts));
  out.push_back(check_pm1_box(n_max, opts));
  out.push_back(check_unimodular_hull(4, 1.0, std::min<std::size_t>(n_max, 6), opts));
  out.push_back(check_extension({ExtensionScheme::Kind::oversampled, 0, 0, 1}, n_max, opts));
  out.push_back(check_extension({ExtensionScheme::Kind::stft, 0, 3, 2}, n_max, opts));
  out.push_back(check_extension({ExtensionScheme::Kind::frog, 0, 0, 1}, n_max, opts));
  out.push_back(check_extension({ExtensionScheme::Kind::frog_pm1, 0, 0, 1}, n_max, opts));
  return out;
}

} // namespace binpr
