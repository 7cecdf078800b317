// binpr: command-line front end for binary Fourier phase retrieval.
//
// Exit codes: 0 success, 1 failure or counterexample, 2 usage error.

#include "binpr/ambiguity.hpp"
#include "binpr/autocorr.hpp"
#include "binpr/denoise.hpp"
#include "binpr/errors.hpp"
#include "binpr/harness.hpp"
#include "binpr/io.hpp"
#include "binpr/property_suite.hpp"
#include "binpr/solver.hpp"
#include "binpr/transforms.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

using namespace binpr;
using nlohmann::json;

namespace {

constexpr int kFailure = 1;
constexpr int kUsage = 2;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

void emit(const std::string &out_path, const std::string &content) {
  if (out_path.empty() || out_path == "-") {
    std::cout << content;
  } else {
    write_file(out_path, content);
  }
}

struct SolverFlags {
  AdmmParams params;
  std::size_t restarts = 1;
  std::string scaling = "unitary";
  bool literal = false;
  bool complex_iterates = false;

  void add(CLI::App &app) {
    app.add_option("--rho1", params.rho1, "ADMM penalty for z = Fx")->capture_default_str();
    app.add_option("--rho2", params.rho2, "ADMM penalty for x = y")->capture_default_str();
    app.add_option("--max-iters", params.max_iters, "Iteration cap")->capture_default_str();
    app.add_option("--tol", params.tol_primal,
                   "Stop when the relative change of x falls below this")
        ->capture_default_str();
    app.add_option("--success-tol", params.success_tol, "Residual that counts as success")
        ->capture_default_str();
    app.add_option("--seed", params.seed, "RNG seed")->capture_default_str();
    app.add_option("--restarts", restarts, "Independent ADMM runs (best residual kept)")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    app.add_option("--scaling", scaling, "Fourier scaling inside ADMM")
        ->check(CLI::IsMember({"unitary", "unnormalized"}))
        ->capture_default_str();
    app.add_flag("--literal-x-update", literal, "Divide the x-update by rho1 + rho2");
    app.add_flag("--complex-iterates", complex_iterates, "Keep the imaginary part of x");
  }

  AdmmParams resolved() const {
    AdmmParams p = params;
    p.scaling = scaling == "unitary" ? FourierScaling::unitary : FourierScaling::unnormalized;
    p.literal_x_update = literal;
    p.real_iterates = !complex_iterates;
    return p;
  }
};

ComplexSignal load_signal(const std::string &path, const std::string &bits) {
  if (!bits.empty()) return BinarySignal::parse(bits).to_complex();
  if (path.empty()) throw UsageError("give --signal FILE or --bits STRING");
  return parse_signal(read_file(path));
}

BinarySignal load_binary(const std::string &path, const std::string &bits) {
  if (!bits.empty()) return BinarySignal::parse(bits);
  if (path.empty()) throw UsageError("give --signal FILE or --bits STRING");
  return parse_binary_signal(read_file(path));
}

template <class T> std::vector<T> parse_list(const std::string &text) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    // a:b:c expands to an arithmetic range (inclusive of b when hit exactly)
    if (item.find(':') != std::string::npos) {
      std::vector<double> p;
      std::stringstream rs(item);
      std::string part;
      while (std::getline(rs, part, ':')) p.push_back(std::stod(part));
      if (p.size() != 3 || p[2] == 0.0) throw UsageError("range must be start:stop:step");
      for (double v = p[0]; p[2] > 0 ? v <= p[1] + 1e-12 : v >= p[1] - 1e-12; v += p[2]) {
        out.push_back(static_cast<T>(v));
      }
      continue;
    }
    if (item == "inf") {
      out.push_back(static_cast<T>(std::numeric_limits<double>::infinity()));
      continue;
    }
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) throw UsageError("bad list entry '" + item + "'");
    out.push_back(static_cast<T>(v));
  }
  if (out.empty()) throw UsageError("empty list");
  return out;
}

std::vector<DenoiseScheme> parse_schemes(const std::string &text) {
  std::vector<DenoiseScheme> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(parse_scheme(item));
  }
  if (out.empty()) throw UsageError("no schemes given");
  return out;
}

NoiseReference parse_reference(const std::string &name) {
  return name == "signal" ? NoiseReference::signal : NoiseReference::measurements;
}

// ---------------------------------------------------------------------------

struct MeasureCmd {
  std::string signal, bits, scheme = "classic", out, autocorr;
  std::size_t m = 0, window = 0, hop = 1;

  void add(CLI::App &app) {
    auto *c = app.add_subcommand("measure", "Compute measurements of a signal");
    c->add_option("--signal", signal, "Signal file ('re im' lines or a 0/1 line)");
    c->add_option("--bits", bits, "Binary signal given inline, e.g. 1101000");
    c->add_option("--scheme", scheme, "classic | oversampled | stft | frog")
        ->check(CLI::IsMember({"classic", "oversampled", "stft", "frog"}))
        ->capture_default_str();
    c->add_option("--m", m, "Oversampled length (default 2N-1)");
    c->add_option("--window", window, "STFT window length W (window is all ones)");
    c->add_option("--hop", hop, "STFT/FROG hop L")->capture_default_str();
    c->add_option("--autocorr", autocorr, "Emit the autocorrelation instead: periodic | regular")
        ->check(CLI::IsMember({"periodic", "regular"}));
    c->add_option("--out", out, "Output file (default stdout)");
    c->callback([this] { run(); });
  }

  static std::string grid_csv(const Grid &g) {
    std::string s = "row,col,value\n";
    for (std::size_t r = 0; r < g.rows; ++r) {
      for (std::size_t c = 0; c < g.cols; ++c) {
        s += std::to_string(r) + ',' + std::to_string(c) + ',' + format_double(g.at(r, c)) + '\n';
      }
    }
    return s;
  }

  void run() {
    const ComplexSignal x = load_signal(signal, bits);
    const std::size_t n = x.size();
    if (autocorr == "periodic") return emit(out, autocorr_csv(periodic_autocorrelation(x)));
    if (autocorr == "regular") return emit(out, autocorr_csv(regular_autocorrelation(x)));
    if (scheme == "classic") return emit(out, measurements_csv(magnitude(DftPlan::classic(n), x).values()));
    if (scheme == "oversampled") {
      const std::size_t mm = m == 0 ? 2 * n - 1 : m;
      return emit(out, measurements_csv(magnitude(DftPlan(n, mm), x).values()));
    }
    if (scheme == "stft") {
      if (window == 0) throw UsageError("--window is required for stft");
      return emit(out, grid_csv(stft_magnitude(x, ComplexSignal::ones(window), hop).grid));
    }
    emit(out, grid_csv(frog_trace(x, hop).grid));
  }
};

struct SolveCmd {
  std::string measurements, out;
  std::size_t n = 0;
  SolverFlags flags;

  void add(CLI::App &app) {
    auto *c = app.add_subcommand("solve", "Run ADMM on magnitude data");
    c->add_option("--measurements", measurements, "CSV with index,value rows")->required();
    c->add_option("--n", n, "Signal length N (M is the number of rows)")->required();
    c->add_option("--out", out, "Result JSON (default stdout)");
    flags.add(*c);
    c->callback([this] { run(); });
  }

  void run() {
    auto values = parse_measurements_csv(read_file(measurements));
    const std::size_t m = values.size();
    if (m < n) throw UsageError("need at least N measurements");
    const bool noisy = std::any_of(values.begin(), values.end(), [](double v) { return v < 0; });
    const auto scheme = m == n ? SamplingScheme::classic(n) : SamplingScheme::oversampled(n, m);
    const MagnitudeMeasurements b(std::move(values), scheme, noisy);
    const auto params = flags.resolved();
    const auto result = admm_solve_multistart(b, n, params, flags.restarts);
    json j = to_json(result);
    j["rounded"] = round_to_binary(result.x_star).to_string();
    j["success"] = result.residual < params.success_tol;
    emit(out, j.dump(2) + '\n');
  }
};

struct DenoiseCmd {
  std::string signal, bits, measurements, scheme = "rounding", reference = "signal", out;
  std::size_t n = 0, m = 0;
  double snr = std::numeric_limits<double>::infinity();
  std::uint64_t noise_seed = 0;
  SolverFlags flags;

  void add(CLI::App &app) {
    auto *c = app.add_subcommand("denoise", "Run a denoising scheme on noisy magnitudes");
    c->add_option("--signal", signal, "Ground-truth binary signal file (noise is generated)");
    c->add_option("--bits", bits, "Ground-truth binary signal given inline");
    c->add_option("--measurements", measurements, "Noisy CSV instead of a ground truth");
    c->add_option("--n", n, "Signal length (with --measurements)");
    c->add_option("--m", m, "Oversampled length (default 2N-1)");
    c->add_option("--snr", snr, "SNR in dB (default: no noise)");
    c->add_option("--noise-seed", noise_seed, "Noise RNG seed")->capture_default_str();
    c->add_option("--noise-reference", reference, "Norm the noise is scaled against")
        ->check(CLI::IsMember({"signal", "measurements"}))
        ->capture_default_str();
    c->add_option("--scheme", scheme,
                  "rounding | naive | rounding_oversampled | naive_oversampled")
        ->capture_default_str();
    c->add_option("--out", out, "Result JSON (default stdout)");
    flags.add(*c);
    c->callback([this] { run(); });
  }

  void run() {
    const DenoiseScheme s = parse_scheme(scheme);
    const bool over = s == DenoiseScheme::rounding_oversampled || s == DenoiseScheme::naive_oversampled;
    const auto params = flags.resolved();
    json j;
    std::optional<MagnitudeMeasurements> clean;
    std::optional<MagnitudeMeasurements> noisy;
    std::size_t len = n;
    if (!measurements.empty()) {
      if (n == 0) throw UsageError("--n is required with --measurements");
      auto values = parse_measurements_csv(read_file(measurements));
      const std::size_t mm = values.size();
      const auto sch = mm == n ? SamplingScheme::classic(n) : SamplingScheme::oversampled(n, mm);
      noisy.emplace(std::move(values), sch, true);
    } else {
      const BinarySignal x = load_binary(signal, bits);
      len = x.size();
      const std::size_t mm = over ? (m == 0 ? 2 * len - 1 : m) : len;
      clean.emplace(magnitude(DftPlan(len, mm), x.to_complex()));
      NoiseSpec spec;
      spec.snr_db = snr;
      spec.seed = noise_seed;
      spec.reference = parse_reference(reference);
      noisy.emplace(add_noise(*clean, x, spec));
      j["truth"] = x.to_string();
    }
    const auto outcome = run_scheme(s, *noisy, len, params, clean ? &*clean : nullptr, flags.restarts);
    j["scheme"] = to_string(outcome.scheme);
    j["recovered"] = outcome.recovered.to_string();
    j["success"] = outcome.success;
    j["residual"] = outcome.residual;
    j["iters"] = outcome.iters;
    if (!outcome.autocorr_estimate.empty()) j["autocorr_estimate"] = outcome.autocorr_estimate;
    emit(out, j.dump(2) + '\n');
  }
};

struct GridCmd {
  ExperimentGrid grid;
  std::string supports = "1:10:1", snrs = "36:0:-4", schemes = "rounding,naive";
  std::string reference = "signal", out, trials_out, gnuplot;
  SolverFlags flags;

  void add(CLI::App &app) {
    auto *c = app.add_subcommand("grid", "Sparsity x SNR success-rate grid");
    c->add_option("--n", grid.n, "Signal length")->capture_default_str();
    c->add_option("--m", grid.m, "Oversampled length (default 2N-1)");
    c->add_option("--supports", supports, "Comma list or start:stop:step")->capture_default_str();
    c->add_option("--snr", snrs, "SNR list in dB (comma list or start:stop:step)")->capture_default_str();
    c->add_option("--trials", grid.trials, "Trials per cell")->capture_default_str();
    c->add_option("--schemes", schemes, "Comma list of schemes")->capture_default_str();
    c->add_option("--threads", grid.threads, "Worker threads (0: all cores; BINPR_THREADS overrides)")
        ->capture_default_str();
    c->add_option("--noise-reference", reference, "signal | measurements")
        ->check(CLI::IsMember({"signal", "measurements"}))
        ->capture_default_str();
    c->add_flag("--step1-only", grid.step1_only, "Only test autocorrelation rounding");
    c->add_option("--out", out, "Heatmap CSV (default stdout)");
    c->add_option("--trials-out", trials_out, "Per-trial CSV");
    c->add_option("--emit-gnuplot", gnuplot, "Matrix file for gnuplot");
    flags.add(*c);
    c->callback([this] { run(); });
  }

  void run() {
    grid.supports = parse_list<std::size_t>(supports);
    grid.snr_db = parse_list<double>(snrs);
    grid.schemes = parse_schemes(schemes);
    grid.params = flags.resolved();
    grid.seed = grid.params.seed;
    grid.restarts = flags.restarts;
    grid.threads = threads_from_env(grid.threads);
    grid.noise_reference = parse_reference(reference);
    const GridResult result = run_grid(grid);
    emit(out, heatmap_csv(result));
    if (!trials_out.empty()) write_file(trials_out, trial_rows_csv(result.rows));
    if (!gnuplot.empty()) write_file(gnuplot, gnuplot_matrix(result, grid));
  }
};

struct ParamsCmd {
  ExperimentGrid cell;
  std::string rho1 = "1e-6,1e-5,1e-4,1e-3,1e-2", rho2 = "1e-6,1e-5,1e-4,1e-3,1e-2";
  std::string schemes = "rounding,naive", reference = "signal", out;
  std::size_t support = 5;
  double snr = 16;
  SolverFlags flags;

  void add(CLI::App &app) {
    auto *c = app.add_subcommand("params", "Success rates over a rho1 x rho2 grid");
    c->add_option("--rho1-grid", rho1, "Comma list")->capture_default_str();
    c->add_option("--rho2-grid", rho2, "Comma list")->capture_default_str();
    c->add_option("--n", cell.n, "Signal length")->capture_default_str();
    c->add_option("--support", support, "Support size")->capture_default_str();
    c->add_option("--snr", snr, "SNR in dB")->capture_default_str();
    cell.trials = 200;
    c->add_option("--trials", cell.trials, "Trials per grid point")->capture_default_str();
    c->add_option("--schemes", schemes, "Comma list of schemes")->capture_default_str();
    c->add_option("--threads", cell.threads, "Worker threads")->capture_default_str();
    c->add_option("--noise-reference", reference, "signal | measurements")
        ->check(CLI::IsMember({"signal", "measurements"}))
        ->capture_default_str();
    c->add_option("--out", out, "CSV (default stdout)");
    flags.add(*c);
    c->callback([this] { run(); });
  }

  void run() {
    cell.supports = {support};
    cell.snr_db = {snr};
    cell.schemes = parse_schemes(schemes);
    cell.params = flags.resolved();
    cell.seed = cell.params.seed;
    cell.restarts = flags.restarts;
    cell.threads = threads_from_env(cell.threads);
    cell.noise_reference = parse_reference(reference);
    emit(out, param_study_csv(run_param_study(parse_list<double>(rho1), parse_list<double>(rho2), cell)));
  }
};

struct AmbiguitiesCmd {
  std::size_t n = 10, cap = 20, threads = 0;
  std::string mode = "classic", bits, out;

  void add(CLI::App &app) {
    auto *c = app.add_subcommand("ambiguities", "Exhaustive uniqueness report or matching set");
    c->add_option("--n", n, "Signal length")->capture_default_str();
    c->add_option("--mode", mode, "classic | oversampled")
        ->check(CLI::IsMember({"classic", "oversampled"}))
        ->capture_default_str();
    c->add_option("--bits", bits, "List every signal with the same data as this one");
    c->add_option("--max-length", cap, "Enumeration cap")->capture_default_str();
    c->add_option("--threads", threads, "Worker threads")->capture_default_str();
    c->add_option("--out", out, "CSV (default stdout)");
    c->callback([this] { run(); });
  }

  void run() {
    EnumerationOptions opts;
    opts.mode = mode == "classic" ? MeasurementMode::classic : MeasurementMode::oversampled;
    opts.max_length = cap;
    opts.threads = threads_from_env(threads);
    if (!bits.empty()) {
      const auto x = BinarySignal::parse(bits);
      const auto canon = canonicalize(x).representative;
      std::string s = "signal,canonical,trivially_equivalent\n";
      for (const auto &y : enumerate_matching(x, opts)) {
        const auto cy = canonicalize(y).representative;
        s += y.to_string() + ',' + cy.to_string() + ',' + (cy == canon ? "1" : "0") + '\n';
      }
      return emit(out, s);
    }
    emit(out, uniqueness_csv(uniqueness_report(n, opts)));
  }
};

struct CheckCmd {
  bool all = false;
  std::string theorem, out;
  std::size_t n_max = 12;
  PropertyOptions opts;
  int *exit_code = nullptr;

  void add(CLI::App &app, int &code) {
    exit_code = &code;
    auto *c = app.add_subcommand("check", "Relaxation theorem checks (JSON reports)");
    c->add_flag("--all", all, "Run every check");
    c->add_option("--theorem", theorem,
                  "box_to_binary | box_to_binary_scaled | pm1_box | unimodular_hull | "
                  "oversampled | stft | frog | frog_pm1");
    c->add_option("--n-max", n_max, "Largest length for the exhaustive prong")->capture_default_str();
    c->add_option("--restarts", opts.restarts, "Falsification runs per check")->capture_default_str();
    c->add_option("--falsify-max-n", opts.falsify_max_n, "Largest length searched")->capture_default_str();
    c->add_option("--iters", opts.max_iters, "Projected-gradient iterations")->capture_default_str();
    c->add_option("--admm-probes", opts.admm_probes, "Extra ADMM solves")->capture_default_str();
    c->add_option("--mismatch-floor", opts.mismatch_floor,
                  "Smallest mismatch allowed for a non-discrete end point")
        ->capture_default_str();
    c->add_option("--seed", opts.seed, "RNG seed")->capture_default_str();
    c->add_option("--threads", opts.threads, "Worker threads")->capture_default_str();
    c->add_option("--out", out, "JSON (default stdout)");
    c->callback([this] { run(); });
  }

  void run() {
    opts.threads = threads_from_env(opts.threads);
    std::vector<TheoremCheckReport> reports;
    using Kind = ExtensionScheme::Kind;
    if (all) {
      reports = run_all_checks(n_max, opts);
    } else if (theorem == "box_to_binary") {
      reports.push_back(check_box_to_binary(n_max, 0.0, 1.0, opts));
    } else if (theorem == "box_to_binary_scaled") {
      reports.push_back(check_box_to_binary(n_max, 0.0, 2.0, opts));
    } else if (theorem == "pm1_box") {
      reports.push_back(check_pm1_box(n_max, opts));
    } else if (theorem == "unimodular_hull") {
      reports.push_back(check_unimodular_hull(4, 1.0, n_max, opts));
    } else if (theorem == "oversampled") {
      reports.push_back(check_extension({Kind::oversampled, 0, 0, 1}, n_max, opts));
    } else if (theorem == "stft") {
      reports.push_back(check_extension({Kind::stft, 0, 3, 2}, n_max, opts));
    } else if (theorem == "frog") {
      reports.push_back(check_extension({Kind::frog, 0, 0, 1}, n_max, opts));
    } else if (theorem == "frog_pm1") {
      reports.push_back(check_extension({Kind::frog_pm1, 0, 0, 1}, n_max, opts));
    } else {
      throw UsageError("give --all or a known --theorem");
    }
    json j = json::array();
    bool ok = true;
    for (const auto &r : reports) {
      j.push_back(to_json(r));
      ok = ok && r.passed();
    }
    emit(out, j.dump(2) + '\n');
    if (!ok) *exit_code = kFailure;
  }
};

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Phase retrieval for binary signals from Fourier magnitudes"};
  app.require_subcommand(1);
  int code = 0;

  MeasureCmd measure;
  SolveCmd solve;
  DenoiseCmd denoise;
  GridCmd grid;
  ParamsCmd params;
  AmbiguitiesCmd ambiguities;
  CheckCmd check;
  measure.add(app);
  solve.add(app);
  denoise.add(app);
  grid.add(app);
  params.add(app);
  ambiguities.add(app);
  check.add(app, code);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  } catch (const std::invalid_argument &e) {
    // UsageError and the library's parameter/dimension/scheme errors
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return code;
}
