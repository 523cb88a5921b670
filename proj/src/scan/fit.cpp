#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "entlab/errors.hpp"
#include "entlab/scan.hpp"

namespace entlab::scan {

FitResult fit_log(const Table& table, const std::string& x_column,
                  const std::string& y_column,
                  std::optional<std::pair<std::size_t, std::size_t>> window) {
  const std::size_t xc = detail::column_index(table, x_column);
  const std::size_t yc = detail::column_index(table, y_column);
  const std::size_t n = table.rows.size();

  std::size_t lo = 0, hi = n;
  if (window) {
    lo = window->first;
    hi = window->second;
  } else {
    lo = n / 2;  // default: upper half, transient removed
  }
  if (hi > n || lo >= hi)
    throw std::invalid_argument("fit_log: window outside the table");
  if (hi - lo < 3)
    throw std::invalid_argument("fit_log: need at least 3 points");

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t count = 0;
  for (std::size_t r = lo; r < hi; ++r) {
    if (table.status[r] != "ok") continue;
    const double x = table.rows[r][xc];
    if (!(x > 0.0))
      throw std::invalid_argument("fit_log: x values must be positive");
    const double lx = std::log(x);
    const double y = table.rows[r][yc];
    sx += lx;
    sy += y;
    sxx += lx * lx;
    sxy += lx * y;
    ++count;
  }
  if (count < 3) throw std::invalid_argument("fit_log: need at least 3 points");

  const double det = double(count) * sxx - sx * sx;
  if (std::abs(det) <= 1e-12 * double(count) * std::max(sxx, 1.0)) {
    throw Error("fit_log: singular design (all x equal)");
  }
  FitResult f;
  f.a = (double(count) * sxy - sx * sy) / det;
  f.b = (sy - f.a * sx) / double(count);
  f.window_lo = lo;
  f.window_hi = hi;

  double ss = 0.0;
  for (std::size_t r = lo; r < hi; ++r) {
    if (table.status[r] != "ok") continue;
    const double res =
        table.rows[r][yc] - (f.a * std::log(table.rows[r][xc]) + f.b);
    ss += res * res;
  }
  f.residual_rms = std::sqrt(ss / double(count));
  return f;
}

SaturationResult detect_saturation(const Table& table,
                                   const std::string& y_column,
                                   double rel_tol) {
  const std::size_t yc = detail::column_index(table, y_column);
  const std::size_t n = table.rows.size();
  if (n < 8)
    throw std::invalid_argument("detect_saturation: need at least 8 rows");

  const std::size_t tail_start = n - std::max<std::size_t>(2, n / 4);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t r = tail_start; r < n; ++r) {
    if (table.status[r] != "ok") continue;
    const double y = table.rows[r][yc];
    lo = std::min(lo, y);
    hi = std::max(hi, y);
    sum += y;
    ++count;
  }
  if (count == 0)
    throw std::invalid_argument("detect_saturation: tail rows all failed");

  SaturationResult s;
  s.plateau_value = sum / double(count);
  const double scale = std::max(std::abs(s.plateau_value), 1e-300);
  s.saturated = (hi - lo) / scale < rel_tol;
  s.onset_index = tail_start;
  if (s.saturated) {
    // earliest row from which everything stays within rel_tol of the plateau
    std::size_t onset = tail_start;
    while (onset > 0) {
      const double y = table.rows[onset - 1][yc];
      if (table.status[onset - 1] != "ok" ||
          std::abs(y - s.plateau_value) / scale >= rel_tol)
        break;
      --onset;
    }
    s.onset_index = onset;
  }
  return s;
}

}  // namespace entlab::scan
