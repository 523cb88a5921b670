#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

// Experiment runner: parameter scans over the three model pipelines,
// deterministic CSV/JSON emission, least-squares log fits, and saturation
// detection. Rows are independent pure computations; scans parallelize over
// grid points and re-emit rows in grid order regardless of worker count.

namespace entlab::scan {

enum class Model { BosonPair, BosonChain, Fermion };
enum class Sweep { Tau, Mass, K, SubsystemL };

const char* model_name(Model m);
const char* sweep_name(Sweep s);

struct Grid {
  std::vector<double> values;

  static Grid explicit_list(std::vector<double> v);
  static Grid linear(double start, double stop, std::size_t count);
  static Grid logspace(double start, double stop, std::size_t count);
  // "lin:start:stop:count", "log:start:stop:count" or "v1,v2,..."
  static Grid parse(const std::string& text);
};

struct ScanConfig {
  Model model = Model::Fermion;
  Sweep sweep = Sweep::K;
  Grid grid;
  std::map<std::string, std::string> fixed;  // model parameters, stringly
  int workers = 0;                           // 0 = hardware concurrency
  unsigned seed = 0;                         // reserved; scans are deterministic
  double saturation_tol = 0.02;  // rel_tol for the L-sweep saturation note
};

struct Table {
  std::vector<std::string> columns;        // cell labels (without status)
  std::vector<std::vector<double>> rows;   // one vector per grid point
  std::vector<std::string> status;         // "ok" or the row's error text
  std::vector<std::string> notes;          // header annotations (key=value)
};

// One row per grid point, in grid order; a failing row is marked in its
// status column and the scan continues.
Table run_scan(const ScanConfig& cfg);

// Deterministic CSV: '#'-prefixed header lines carry the full config, then
// a column-name line, then data at 17 significant digits.
void write_csv(const Table& table, const ScanConfig& cfg, std::ostream& out);

// JSON mirror with the same content.
void write_json(const Table& table, const ScanConfig& cfg, std::ostream& out);

// Parses a CSV produced by write_csv (header comments ignored).
Table read_csv(std::istream& in);

struct FitResult {
  double a = 0.0;             // slope against ln(x)
  double b = 0.0;             // intercept
  double residual_rms = 0.0;
  std::size_t window_lo = 0;  // inclusive row range used
  std::size_t window_hi = 0;  // exclusive
};

// Ordinary least squares of y against ln(x) over [window_lo, window_hi);
// an empty window defaults to the upper half of the table.
FitResult fit_log(const Table& table, const std::string& x_column,
                  const std::string& y_column = "S",
                  std::optional<std::pair<std::size_t, std::size_t>> window =
                      std::nullopt);

struct SaturationResult {
  bool saturated = false;
  double plateau_value = 0.0;
  std::size_t onset_index = 0;
};

// The sweep has saturated when the last quarter of the rows varies by less
// than rel_tol relative to its mean; needs at least 8 rows.
SaturationResult detect_saturation(const Table& table,
                                   const std::string& y_column,
                                   double rel_tol);

struct SaturationVsL1Row {
  double K;
  double plateau;
  double single_site;
  double relative_gap;
  bool saturated;
};

// For each K: an L-scan plateau next to the single-cell entropy, with the
// relative gap between them.
std::vector<SaturationVsL1Row> saturation_vs_l1(const std::vector<double>& ks,
                                                std::size_t l_max = 32,
                                                std::size_t n_cells = 4096,
                                                double rel_tol = 0.02);

namespace detail {
// Fixed 17-significant-digit float formatting used for all emitted values.
std::string format_value(double v);
std::size_t column_index(const Table& t, const std::string& name);
}  // namespace detail

}  // namespace entlab::scan
