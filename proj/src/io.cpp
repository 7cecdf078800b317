#include "binpr/io.hpp"

#include "binpr/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace binpr {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> content_lines(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto line = trim(text.substr(pos, nl == std::string_view::npos ? nl : nl - pos));
    if (!line.empty() && line.front() != '#') out.push_back(line);
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return out;
}

double parse_number(std::string_view token) {
  const std::string s(token);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception &) {
    throw ParameterError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw ParameterError("not a number: '" + s + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  for (;;) {
    const auto at = line.find(sep, pos);
    out.push_back(trim(line.substr(pos, at == std::string_view::npos ? at : at - pos)));
    if (at == std::string_view::npos) return out;
    pos = at + 1;
  }
}

} // namespace

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

bool is_binary_text(std::string_view text) {
  const auto lines = content_lines(text);
  if (lines.size() != 1) return false;
  return lines[0].find_first_not_of("01") == std::string_view::npos;
}

BinarySignal parse_binary_signal(std::string_view text) {
  if (!is_binary_text(text)) {
    throw ParameterError("binary signal must be a single line of 0/1 characters");
  }
  return BinarySignal::parse(content_lines(text)[0]);
}

ComplexSignal parse_signal(std::string_view text) {
  if (is_binary_text(text)) return parse_binary_signal(text).to_complex();
  std::vector<Complex> samples;
  for (auto line : content_lines(text)) {
    std::istringstream in{std::string(line)};
    std::string re, im, extra;
    if (!(in >> re >> im) || (in >> extra)) {
      throw ParameterError("signal line must be 're im': '" + std::string(line) + "'");
    }
    samples.emplace_back(parse_number(re), parse_number(im));
  }
  return ComplexSignal(std::move(samples));
}

std::string format_signal(const ComplexSignal &x) {
  std::string out;
  for (const auto &c : x.samples()) {
    out += format_double(c.real()) + ' ' + format_double(c.imag()) + '\n';
  }
  return out;
}

std::string format_signal(const BinarySignal &x) { return x.to_string() + '\n'; }

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string &path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

std::string measurements_csv(std::span<const double> values) {
  std::string out = "index,value\n";
  for (std::size_t k = 0; k < values.size(); ++k) {
    out += std::to_string(k) + ',' + format_double(values[k]) + '\n';
  }
  return out;
}

std::vector<double> parse_measurements_csv(std::string_view text) {
  auto lines = content_lines(text);
  if (!lines.empty() && lines[0] == "index,value") lines.erase(lines.begin());
  std::vector<double> out;
  for (auto line : lines) {
    const auto cols = split(line, ',');
    if (cols.size() != 2) throw ParameterError("measurement row must be 'index,value'");
    if (parse_number(cols[0]) != static_cast<double>(out.size())) {
      throw ParameterError("measurement indices must run 0, 1, 2, ...");
    }
    out.push_back(parse_number(cols[1]));
  }
  return out;
}

std::string autocorr_csv(const PeriodicAutocorrelation &aut) {
  std::string out = "lag,re,im\n";
  for (std::size_t j = 0; j < aut.size(); ++j) {
    out += std::to_string(j) + ',' + format_double(aut[j].real()) + ',' +
           format_double(aut[j].imag()) + '\n';
  }
  return out;
}

std::string autocorr_csv(const RegularAutocorrelation &aut) {
  std::string out = "lag,re,im\n";
  for (long long j = -aut.max_lag(); j <= aut.max_lag(); ++j) {
    const Complex v = aut.at(j);
    out += std::to_string(j) + ',' + format_double(v.real()) + ',' + format_double(v.imag()) + '\n';
  }
  return out;
}

std::string uniqueness_csv(const std::vector<UniquenessRow> &rows) {
  std::string out = "support_count,num_classes,num_unique_classes,example_nonunique_canonical\n";
  for (const auto &r : rows) {
    out += std::to_string(r.support_count) + ',' + std::to_string(r.num_classes) + ',' +
           std::to_string(r.num_unique_classes) + ',' + r.example_nonunique + '\n';
  }
  return out;
}

std::string trial_rows_csv(const std::vector<TrialRow> &rows) {
  std::string out = "scheme,N,M,support,snr_db,trial,success,residual,iters\n";
  for (const auto &r : rows) {
    out += to_string(r.scheme) + ',' + std::to_string(r.n) + ',' + std::to_string(r.m) + ',' +
           std::to_string(r.support) + ',' + format_double(r.snr_db) + ',' +
           std::to_string(r.trial) + ',' + (r.success ? "1" : "0") + ',' +
           format_double(r.residual) + ',' + std::to_string(r.iters) + '\n';
  }
  return out;
}

std::string heatmap_csv(const GridResult &result) {
  std::string out = "support,snr_db,scheme,rate,trials\n";
  for (const auto &c : result.cells) {
    out += std::to_string(c.support) + ',' + format_double(c.snr_db) + ',' + to_string(c.scheme) +
           ',' + format_double(c.rate()) + ',' + std::to_string(c.trials) + '\n';
  }
  return out;
}

std::string gnuplot_matrix(const GridResult &result, const ExperimentGrid &grid) {
  std::string out;
  for (DenoiseScheme scheme : grid.schemes) {
    out += "# scheme " + to_string(scheme) + "\n# support";
    for (double snr : grid.snr_db) out += ' ' + format_double(snr);
    out += '\n';
    for (std::size_t s : grid.supports) {
      out += std::to_string(s);
      for (double snr : grid.snr_db) out += ' ' + format_double(result.cell(scheme, s, snr).rate());
      out += '\n';
    }
    out += "\n\n";
  }
  return out;
}

std::string param_study_csv(const ParamStudyResult &result) {
  std::string out = "scheme,rho1,rho2,rate\n";
  for (const auto &[scheme, rates] : result.rates) {
    for (std::size_t i = 0; i < result.rho1.size(); ++i) {
      for (std::size_t j = 0; j < result.rho2.size(); ++j) {
        out += to_string(scheme) + ',' + format_double(result.rho1[i]) + ',' +
               format_double(result.rho2[j]) + ',' +
               format_double(rates[i * result.rho2.size() + j]) + '\n';
      }
    }
  }
  return out;
}

nlohmann::json to_json(const SolveResult &result) {
  nlohmann::json x = nlohmann::json::array();
  for (const auto &c : result.x_star.samples()) x.push_back({c.real(), c.imag()});
  return {{"residual", result.residual},
          {"iters", result.iters_used},
          {"converged", result.converged},
          {"x_star", x}};
}

nlohmann::json to_json(const TheoremCheckReport &report) {
  nlohmann::json j = {{"theorem", report.theorem},
                      {"trials", report.trials},
                      {"exhaustive_signals", report.exhaustive_signals},
                      {"counterexamples", report.counterexamples},
                      {"nonbinary_endpoints", report.nonbinary_endpoints},
                      {"passed", report.passed()},
                      {"params", report.params},
                      {"dumps", report.dumps}};
  // JSON has no infinity; absent means no non-discrete end point was seen.
  j["min_nonbinary_mismatch"] = std::isfinite(report.min_nonbinary_mismatch)
                                    ? nlohmann::json(report.min_nonbinary_mismatch)
                                    : nlohmann::json(nullptr);
  return j;
}

} // namespace binpr
