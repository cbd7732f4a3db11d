// Copyright 2026 The Resilient TGCN Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rtgcn/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

namespace rtgcn {

double distance(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

void PowerNetwork::validate() const {
  if (susceptance.size() != graph.num_edges()) {
    throw InputError("network has " + std::to_string(susceptance.size()) +
                     " susceptances for " + std::to_string(graph.num_edges()) + " lines");
  }
  for (double b : susceptance) {
    if (!(b > 0.0) || !std::isfinite(b)) throw InputError("line susceptance must be positive");
  }
  if (slack_bus < 0 || slack_bus >= graph.num_nodes()) {
    throw InputError("slack bus " + std::to_string(slack_bus) + " out of range");
  }
  if (!coordinates.empty()) {
    if (coordinates.size() != static_cast<std::size_t>(graph.num_nodes())) {
      throw InputError("coordinate count does not match bus count");
    }
    for (const Point& p : coordinates) {
      if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw InputError("non-finite coordinate");
    }
  }
}

DcPowerFlow::DcPowerFlow(const PowerNetwork& net) : slack_(net.slack_bus) {
  net.validate();
  const int n = net.num_buses();
  auto label = net.graph.components();
  std::vector<int> cut;
  for (int i = 0; i < n; ++i) {
    if (label[i] != label[slack_]) cut.push_back(i);
  }
  if (!cut.empty()) {
    std::string list;
    for (std::size_t k = 0; k < cut.size() && k < 20; ++k) {
      list += (k ? "," : "") + std::to_string(cut[k]);
    }
    if (cut.size() > 20) list += ",...";
    throw InputError("singular susceptance matrix: buses {" + list +
                     "} are disconnected from slack bus " + std::to_string(slack_));
  }
  b_full_ = Matrix::Zero(n, n);
  const auto& edges = net.graph.edges();
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const double b = net.susceptance[k];
    b_full_(edges[k].u, edges[k].u) += b;
    b_full_(edges[k].v, edges[k].v) += b;
    b_full_(edges[k].u, edges[k].v) -= b;
    b_full_(edges[k].v, edges[k].u) -= b;
  }
  Matrix reduced(n - 1, n - 1);
  for (int i = 0, ri = 0; i < n; ++i) {
    if (i == slack_) continue;
    for (int j = 0, rj = 0; j < n; ++j) {
      if (j == slack_) continue;
      reduced(ri, rj++) = b_full_(i, j);
    }
    ++ri;
  }
  if (n > 1) {
    reduced_.compute(reduced);
    if (reduced_.info() != Eigen::Success) {
      throw InputError("reduced susceptance matrix is not positive definite");
    }
  }
}

Matrix DcPowerFlow::solve(const Matrix& injections) const {
  const Eigen::Index n = b_full_.rows();
  if (injections.rows() != n) {
    throw ShapeError("dc_power_flow: expected " + std::to_string(n) + " injections, got " +
                     shape_string(injections));
  }
  Matrix theta = Matrix::Zero(n, injections.cols());
  if (n == 1) return theta;
  Matrix rhs(n - 1, injections.cols());
  for (Eigen::Index i = 0, r = 0; i < n; ++i) {
    if (i != slack_) rhs.row(r++) = injections.row(i);
  }
  Matrix reduced = reduced_.solve(rhs);
  for (Eigen::Index i = 0, r = 0; i < n; ++i) {
    if (i != slack_) theta.row(i) = reduced.row(r++);
  }
  return theta;
}

Vector dc_power_flow(const PowerNetwork& net, const Vector& injections) {
  return DcPowerFlow(net).solve(injections).col(0);
}

Matrix synth_load_profile(int num_buses, int steps, std::uint64_t seed, double base_amplitude,
                          double noise_level) {
  if (num_buses < 1) throw InputError("synth_load_profile: need at least one bus");
  if (steps < 1) throw InputError("synth_load_profile: T must be >= 1");
  constexpr int kPeriods[] = {480, 240, 96};
  constexpr double kWeights[] = {1.0, 0.5, 0.25};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> amp(0.2, 1.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);

  Matrix p(num_buses, steps);
  for (int i = 0; i < num_buses; ++i) {
    const double offset = base_amplitude * unit(rng);
    double a[3], phi[3];
    for (int k = 0; k < 3; ++k) {
      a[k] = base_amplitude * kWeights[k] * amp(rng);
      phi[k] = phase(rng);
    }
    for (int t = 0; t < steps; ++t) {
      double v = offset;
      for (int k = 0; k < 3; ++k) {
        // Reduce t modulo the period so the signal repeats bit-exactly.
        const int tk = t % kPeriods[k];
        v += a[k] * std::sin(2.0 * std::numbers::pi * tk / kPeriods[k] + phi[k]);
      }
      p(i, t) = v;
    }
  }
  if (noise_level > 0.0) {
    std::normal_distribution<double> noise(0.0, noise_level * base_amplitude);
    for (int t = 0; t < steps; ++t)
      for (int i = 0; i < num_buses; ++i) p(i, t) += noise(rng);
  }
  Eigen::RowVectorXd mean = p.colwise().mean();
  p.rowwise() -= mean;
  return p;
}

TimeSeriesDataset TimeSeriesDataset::slice(int t0, int t1) const {
  if (t0 < 0 || t1 > num_steps() || t0 >= t1) {
    throw InputError("dataset slice [" + std::to_string(t0) + "," + std::to_string(t1) +
                     ") out of range for " + std::to_string(num_steps()) + " steps");
  }
  TimeSeriesDataset out = *this;
  out.values = values.middleCols(t0, t1 - t0);
  return out;
}

double max_abs_scale(const Matrix& m) {
  const double s = m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
  return s > 0.0 ? s : 1.0;
}

TimeSeriesDataset generate_dataset(const PowerNetwork& net, const Matrix& profile,
                                   double sample_rate) {
  if (profile.cols() < 2) throw InputError("generate_dataset: T too short (need >= 2 steps)");
  DcPowerFlow flow(net);
  TimeSeriesDataset d;
  d.values = flow.solve(profile);
  for (Eigen::Index t = 0; t < d.values.cols(); ++t) {
    if (!d.values.col(t).allFinite()) {
      throw InputError("generate_dataset: non-finite angles at time index " + std::to_string(t));
    }
  }
  d.sample_rate = sample_rate;
  d.scale = max_abs_scale(d.values);
  return d;
}

namespace {

bool parse_number(std::string_view cell, double& out) {
  cell = trim(cell);
  if (cell.empty()) return false;
  std::string s(cell);
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

TimeSeriesDataset parse_csv_dataset(const std::string& text, double sample_rate) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<double>> rows;
  int line_no = 0;
  bool first_data_line = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    auto cells = split_csv(line);
    std::vector<double> row(cells.size());
    bool numeric = true;
    std::size_t bad = 0;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (!parse_number(cells[c], row[c])) {
        numeric = false;
        bad = c;
        break;
      }
    }
    if (!numeric) {
      if (first_data_line) {
        first_data_line = false;
        continue;  // header row
      }
      throw InputError("CSV line " + std::to_string(line_no) + ", column " +
                       std::to_string(bad + 1) + ": non-numeric cell '" + cells[bad] + "'");
    }
    first_data_line = false;
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw InputError("CSV line " + std::to_string(line_no) + ": ragged row with " +
                       std::to_string(row.size()) + " cells, expected " +
                       std::to_string(rows.front().size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw InputError("CSV dataset is empty");
  const std::size_t steps = rows.front().size();
  if (steps < 2) throw InputError("CSV dataset: T too short (need >= 2 steps)");
  TimeSeriesDataset d;
  d.values.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(steps));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < steps; ++c) {
      if (!std::isfinite(rows[r][c])) {
        throw InputError("CSV row " + std::to_string(r + 1) + ", column " +
                         std::to_string(c + 1) + ": non-finite value");
      }
      d.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    }
  d.sample_rate = sample_rate;
  d.scale = max_abs_scale(d.values);
  return d;
}

TimeSeriesDataset load_csv_dataset(const std::filesystem::path& path, double sample_rate) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open dataset " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_csv_dataset(buf.str(), sample_rate);
}

void write_csv_dataset(const std::filesystem::path& path, const TimeSeriesDataset& data) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write dataset " + path.string());
  out << "# phase angles (rad): " << data.num_nodes() << " buses x " << data.num_steps()
      << " steps, sample_rate " << format_double(data.sample_rate) << " Hz\n";
  std::string row;
  for (int r = 0; r < data.num_nodes(); ++r) {
    row.clear();
    for (int c = 0; c < data.num_steps(); ++c) {
      if (c) row += ',';
      row += format_double(data.values(r, c));
    }
    out << row << '\n';
  }
}

SampleSet window(const TimeSeriesDataset& data, int history, int horizon,
                 const SplitRatios& ratios, bool fit_scale_on_train) {
  if (history < 1 || horizon < 1) throw InputError("window: history and horizon must be >= 1");
  const double total = ratios.train + ratios.validation + ratios.test;
  if (ratios.train < 0 || ratios.validation < 0 || ratios.test < 0 ||
      std::abs(total - 1.0) > 1e-9) {
    throw InputError("window: split ratios must be non-negative and sum to 1");
  }
  const int windows = data.num_steps() - history - horizon + 1;
  if (windows < 1) {
    throw InputError("window: T too short for one window (T=" +
                     std::to_string(data.num_steps()) + ", history=" + std::to_string(history) +
                     ", horizon=" + std::to_string(horizon) + ")");
  }
  const int n_train = static_cast<int>(std::floor(windows * ratios.train + 1e-9));
  const int n_val = static_cast<int>(std::floor(windows * ratios.validation + 1e-9));
  if (n_train < 1) throw InputError("window: training split is empty");

  SampleSet s;
  s.history = history;
  s.horizon = horizon;
  s.train = {0, n_train};
  s.validation = {n_train, n_train + n_val};
  s.test = {n_train + n_val, windows};
  s.scale = fit_scale_on_train
                ? max_abs_scale(data.values.leftCols(s.train_time_end()))
                : data.scale;
  s.series = data.values / s.scale;
  return s;
}

std::vector<Point> force_directed_layout(const Graph& g, std::uint64_t seed, int iterations,
                                         double extent) {
  const int n = g.num_nodes();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Point> pos(n);
  for (auto& p : pos) {
    p.x = unit(rng);
    p.y = unit(rng);
  }
  const double k = std::sqrt(1.0 / std::max(n, 1));
  std::vector<Point> disp(n);
  for (int it = 0; it < iterations; ++it) {
    const double temperature = 0.1 * (1.0 - static_cast<double>(it) / iterations);
    std::fill(disp.begin(), disp.end(), Point{});
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        double dx = pos[i].x - pos[j].x, dy = pos[i].y - pos[j].y;
        double d = std::max(std::hypot(dx, dy), 1e-9);
        double f = k * k / d;
        disp[i].x += dx / d * f;
        disp[i].y += dy / d * f;
        disp[j].x -= dx / d * f;
        disp[j].y -= dy / d * f;
      }
    }
    for (const Edge& e : g.edges()) {
      double dx = pos[e.u].x - pos[e.v].x, dy = pos[e.u].y - pos[e.v].y;
      double d = std::max(std::hypot(dx, dy), 1e-9);
      double f = d * d / k;
      disp[e.u].x -= dx / d * f;
      disp[e.u].y -= dy / d * f;
      disp[e.v].x += dx / d * f;
      disp[e.v].y += dy / d * f;
    }
    for (int i = 0; i < n; ++i) {
      double len = std::max(std::hypot(disp[i].x, disp[i].y), 1e-12);
      double step = std::min(len, temperature);
      pos[i].x += disp[i].x / len * step;
      pos[i].y += disp[i].y / len * step;
    }
  }
  double min_x = pos[0].x, max_x = pos[0].x, min_y = pos[0].y, max_y = pos[0].y;
  for (const Point& p : pos) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  const double span = std::max({max_x - min_x, max_y - min_y, 1e-12});
  for (Point& p : pos) {
    p.x = (p.x - min_x) / span * extent;
    p.y = (p.y - min_y) / span * extent;
  }
  return pos;
}

PowerNetwork parse_network(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  enum class Section { kNone, kLines, kCoordinates } section = Section::kNone;
  int slack = -1;
  std::vector<std::pair<Edge, double>> lines;
  std::vector<std::pair<int, Point>> coords;
  int max_index = -1;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = trim(line);
    if (auto hash = view.find('#'); hash != std::string_view::npos) view = trim(view.substr(0, hash));
    if (view.empty()) continue;
    if (view == "[lines]") {
      section = Section::kLines;
      continue;
    }
    if (view == "[coordinates]") {
      section = Section::kCoordinates;
      continue;
    }
    auto tok = split_ws(view);
    const std::string where = "network line " + std::to_string(line_no);
    try {
      if (tok[0] == "slack" && tok.size() == 2) {
        slack = std::stoi(tok[1]);
      } else if (section == Section::kLines && tok.size() == 3) {
        int i = std::stoi(tok[0]), j = std::stoi(tok[1]);
        if (i == j) throw InputError(where + ": self-loop");
        lines.emplace_back(Edge(i, j), std::stod(tok[2]));
        max_index = std::max({max_index, i, j});
      } else if (section == Section::kCoordinates && tok.size() == 3) {
        int i = std::stoi(tok[0]);
        coords.emplace_back(i, Point{std::stod(tok[1]), std::stod(tok[2])});
        max_index = std::max(max_index, i);
      } else {
        throw InputError(where + ": unrecognized entry");
      }
    } catch (const std::logic_error&) {
      throw InputError(where + ": malformed number");
    }
  }
  if (slack < 0) throw InputError("network file lacks a 'slack' directive");
  const int n = max_index + 1;
  std::sort(lines.begin(), lines.end());
  std::vector<Edge> edges;
  std::vector<double> b;
  for (const auto& [e, s] : lines) {
    if (!edges.empty() && edges.back() == e) {
      b.back() += s;  // parallel circuit
    } else {
      edges.push_back(e);
      b.push_back(s);
    }
  }
  PowerNetwork net;
  net.graph = graph_from_edges(n, edges);
  net.susceptance = std::move(b);
  net.slack_bus = slack;
  if (!coords.empty()) {
    net.coordinates.resize(n);
    std::vector<bool> seen(n, false);
    for (const auto& [i, p] : coords) {
      if (i < 0 || i >= n) throw InputError("coordinate for unknown bus " + std::to_string(i));
      net.coordinates[i] = p;
      seen[i] = true;
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
      throw InputError("network file: coordinates missing for some buses");
    }
  }
  net.validate();
  return net;
}

PowerNetwork read_network(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open network file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_network(buf.str());
}

void write_network(const std::filesystem::path& path, const PowerNetwork& net) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write network file " + path.string());
  out << "# buses: " << net.num_buses() << "\n";
  out << "slack " << net.slack_bus << "\n";
  out << "[lines]\n";
  const auto& edges = net.graph.edges();
  for (std::size_t k = 0; k < edges.size(); ++k) {
    out << edges[k].u << " " << edges[k].v << " " << format_double(net.susceptance[k]) << "\n";
  }
  if (!net.coordinates.empty()) {
    out << "[coordinates]\n";
    for (int i = 0; i < net.num_buses(); ++i) {
      out << i << " " << format_double(net.coordinates[i].x) << " "
          << format_double(net.coordinates[i].y) << "\n";
    }
  }
}

std::uint64_t network_hash(const PowerNetwork& net) {
  std::string text = std::to_string(net.num_buses()) + ";" + std::to_string(net.slack_bus);
  const auto& edges = net.graph.edges();
  for (std::size_t k = 0; k < edges.size(); ++k) {
    text += ";" + std::to_string(edges[k].u) + "," + std::to_string(edges[k].v) + "," +
            format_double(net.susceptance[k]);
  }
  return fnv1a(text);
}

}  // namespace rtgcn
