#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "entlab/scan.hpp"

#include "json.hpp"

namespace entlab::scan {

const char* model_name(Model m) {
  switch (m) {
    case Model::BosonPair: return "boson-pair";
    case Model::BosonChain: return "boson-chain";
    case Model::Fermion: return "fermion";
  }
  return "?";
}

const char* sweep_name(Sweep s) {
  switch (s) {
    case Sweep::Tau: return "tau";
    case Sweep::Mass: return "mass";
    case Sweep::K: return "K";
    case Sweep::SubsystemL: return "L";
  }
  return "?";
}

Grid Grid::explicit_list(std::vector<double> v) {
  Grid g{std::move(v)};
  if (g.values.empty()) throw std::invalid_argument("Grid: empty grid");
  if (g.values.size() > 1000000)
    throw std::invalid_argument("Grid: more than 1e6 points");
  for (std::size_t i = 1; i < g.values.size(); ++i)
    if (!(g.values[i] > g.values[i - 1]) && !(g.values[i] < g.values[i - 1]))
      throw std::invalid_argument("Grid: values must be strictly monotone");
  const bool inc = g.values.size() < 2 || g.values[1] > g.values[0];
  for (std::size_t i = 1; i < g.values.size(); ++i)
    if (inc ? g.values[i] <= g.values[i - 1] : g.values[i] >= g.values[i - 1])
      throw std::invalid_argument("Grid: values must be strictly monotone");
  return g;
}

Grid Grid::linear(double start, double stop, std::size_t count) {
  if (count < 1) throw std::invalid_argument("Grid: count must be >= 1");
  std::vector<double> v(count);
  for (std::size_t i = 0; i < count; ++i)
    v[i] = count == 1
               ? start
               : start + (stop - start) * double(i) / double(count - 1);
  return explicit_list(std::move(v));
}

Grid Grid::logspace(double start, double stop, std::size_t count) {
  if (!(start > 0.0) || !(stop > 0.0))
    throw std::invalid_argument("Grid: log spacing needs positive endpoints");
  if (count < 1) throw std::invalid_argument("Grid: count must be >= 1");
  std::vector<double> v(count);
  const double ls = std::log(start), le = std::log(stop);
  for (std::size_t i = 0; i < count; ++i)
    v[i] = count == 1
               ? start
               : std::exp(ls + (le - ls) * double(i) / double(count - 1));
  return explicit_list(std::move(v));
}

Grid Grid::parse(const std::string& text) {
  auto split = [](const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
      if (c == sep) {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    parts.push_back(cur);
    return parts;
  };
  if (text.rfind("lin:", 0) == 0 || text.rfind("log:", 0) == 0) {
    const auto parts = split(text, ':');
    if (parts.size() != 4)
      throw std::invalid_argument("Grid: expected lin:start:stop:count");
    const double start = std::stod(parts[1]);
    const double stop = std::stod(parts[2]);
    const std::size_t count = std::stoul(parts[3]);
    return parts[0] == "lin" ? linear(start, stop, count)
                             : logspace(start, stop, count);
  }
  std::vector<double> v;
  for (const std::string& p : split(text, ','))
    if (!p.empty()) v.push_back(std::stod(p));
  return explicit_list(std::move(v));
}

namespace detail {

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::size_t column_index(const Table& t, const std::string& name) {
  const auto it = std::find(t.columns.begin(), t.columns.end(), name);
  if (it == t.columns.end())
    throw std::invalid_argument("table has no column named '" + name + "'");
  return std::size_t(it - t.columns.begin());
}

}  // namespace detail

namespace {

void write_config_comments(const ScanConfig& cfg, const Table& table,
                           std::ostream& out) {
  out << "# entlab scan\n";
  out << "# model=" << model_name(cfg.model) << " sweep=" << sweep_name(cfg.sweep)
      << " points=" << cfg.grid.values.size() << " workers=" << cfg.workers
      << " seed=" << cfg.seed << "\n";
  out << "# grid=";
  for (std::size_t i = 0; i < cfg.grid.values.size(); ++i) {
    if (i) out << ",";
    out << detail::format_value(cfg.grid.values[i]);
  }
  out << "\n";
  for (const auto& [k, v] : cfg.fixed) out << "# " << k << "=" << v << "\n";
  for (const std::string& n : table.notes) out << "# " << n << "\n";
}

}  // namespace

void write_csv(const Table& table, const ScanConfig& cfg, std::ostream& out) {
  write_config_comments(cfg, table, out);
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out << ",";
    out << table.columns[c];
  }
  out << ",status\n";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    for (std::size_t c = 0; c < table.rows[r].size(); ++c) {
      if (c) out << ",";
      out << detail::format_value(table.rows[r][c]);
    }
    out << "," << table.status[r] << "\n";
  }
}

void write_json(const Table& table, const ScanConfig& cfg, std::ostream& out) {
  nlohmann::json j;
  j["model"] = model_name(cfg.model);
  j["sweep"] = sweep_name(cfg.sweep);
  j["grid"] = cfg.grid.values;
  j["workers"] = cfg.workers;
  j["seed"] = cfg.seed;
  j["fixed"] = cfg.fixed;
  j["notes"] = table.notes;
  j["columns"] = table.columns;
  j["rows"] = table.rows;
  j["status"] = table.status;
  out << j.dump(2) << "\n";
}

Table read_csv(std::istream& in) {
  Table t;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') continue;
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
      if (c == ',') {
        cells.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    cells.push_back(cur);
    if (!have_header) {
      if (!cells.empty() && cells.back() == "status") cells.pop_back();
      t.columns = cells;
      have_header = true;
      continue;
    }
    std::vector<double> row;
    std::string status = "ok";
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i < t.columns.size()) {
        try {
          row.push_back(std::stod(cells[i]));
        } catch (const std::exception&) {
          row.push_back(std::nan(""));
        }
      } else {
        status = cells[i];
      }
    }
    t.rows.push_back(std::move(row));
    t.status.push_back(status);
  }
  if (!have_header) throw std::invalid_argument("read_csv: no header line");
  return t;
}

}  // namespace entlab::scan
