#pragma once

// Text formats shared by the CLI: signal files, measurement/autocorrelation
// CSVs, grid outputs and JSON reports.

#include "binpr/ambiguity.hpp"
#include "binpr/autocorr.hpp"
#include "binpr/harness.hpp"
#include "binpr/property_suite.hpp"
#include "binpr/signal.hpp"
#include "binpr/solver.hpp"
#include "binpr/transforms.hpp"

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace binpr {

/// Shortest round-tripping decimal ("%.17g").
std::string format_double(double v);

/// A single line of 0/1 characters.
bool is_binary_text(std::string_view text);

/// One "re im" pair per line, or a single 0/1 line. Blank lines and lines
/// starting with '#' are skipped. Throws ParameterError on malformed input.
ComplexSignal parse_signal(std::string_view text);
BinarySignal parse_binary_signal(std::string_view text);
std::string format_signal(const ComplexSignal &x);
std::string format_signal(const BinarySignal &x);

std::string read_file(const std::string &path);
void write_file(const std::string &path, std::string_view content);

/// "index,value" rows.
std::string measurements_csv(std::span<const double> values);
/// Values in index order; the index column must run 0, 1, 2, ...
std::vector<double> parse_measurements_csv(std::string_view text);

/// "lag,re,im" rows.
std::string autocorr_csv(const PeriodicAutocorrelation &aut);
std::string autocorr_csv(const RegularAutocorrelation &aut);

std::string uniqueness_csv(const std::vector<UniquenessRow> &rows);

/// "scheme,N,M,support,snr_db,trial,success,residual,iters"
std::string trial_rows_csv(const std::vector<TrialRow> &rows);
/// "support,snr_db,scheme,rate,trials"
std::string heatmap_csv(const GridResult &result);
/// One block per scheme: rows are supports, columns SNR values.
std::string gnuplot_matrix(const GridResult &result, const ExperimentGrid &grid);
/// "scheme,rho1,rho2,rate"
std::string param_study_csv(const ParamStudyResult &result);

nlohmann::json to_json(const SolveResult &result);
nlohmann::json to_json(const TheoremCheckReport &report);

} // namespace binpr
