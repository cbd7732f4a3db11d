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

#ifndef RTGCN_DATAGEN_HPP_
#define RTGCN_DATAGEN_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "rtgcn/graph.hpp"

namespace rtgcn {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

double distance(const Point& a, const Point& b);

// Bus-branch model for DC power flow. `susceptance[k]` belongs to
// `graph.edges()[k]` (per unit, parallel circuits already summed).
struct PowerNetwork {
  Graph graph;
  std::vector<double> susceptance;
  int slack_bus = 0;
  std::vector<Point> coordinates;

  int num_buses() const { return graph.num_nodes(); }
  // Throws InputError when the invariants do not hold.
  void validate() const;
};

// Solves B' theta = P with theta[slack] = 0, factorizing the reduced
// susceptance matrix once. Throws InputError naming the buses cut off from
// the slack when the network is disconnected.
class DcPowerFlow {
 public:
  explicit DcPowerFlow(const PowerNetwork& net);

  // `injections` is N x K; returns the N x K angle matrix (radians).
  Matrix solve(const Matrix& injections) const;
  // Full (unreduced) B' matrix.
  const Matrix& susceptance_matrix() const { return b_full_; }

 private:
  int slack_;
  Matrix b_full_;
  Eigen::LLT<Matrix> reduced_;
};

Vector dc_power_flow(const PowerNetwork& net, const Vector& injections);

// Per-bus smooth sinusoid mixture with periods 480, 240 and 96 samples,
// plus N(0, (noise_level * base_amplitude)^2) noise, then shifted so each
// time step has zero net injection. Returns num_buses x steps.
Matrix synth_load_profile(int num_buses, int steps, std::uint64_t seed, double base_amplitude,
                          double noise_level);

// Phase-angle series S(n, t) in radians plus a max-abs normalization scale.
struct TimeSeriesDataset {
  Matrix values;
  double sample_rate = 30.0;
  double scale = 1.0;

  int num_nodes() const { return static_cast<int>(values.rows()); }
  int num_steps() const { return static_cast<int>(values.cols()); }
  Matrix normalize(const Matrix& raw) const { return raw / scale; }
  Matrix denormalize(const Matrix& normalized) const { return normalized * scale; }
  // Columns [t0, t1).
  TimeSeriesDataset slice(int t0, int t1) const;
};

double max_abs_scale(const Matrix& m);

// Applies the DC power flow to every column of `profile`. The scale is the
// max-abs over all generated angles.
TimeSeriesDataset generate_dataset(const PowerNetwork& net, const Matrix& profile,
                                   double sample_rate);

// CSV: one row per bus, one column per time step. Lines starting with '#'
// are ignored; a first row containing any non-numeric cell is a header.
TimeSeriesDataset load_csv_dataset(const std::filesystem::path& path, double sample_rate);
TimeSeriesDataset parse_csv_dataset(const std::string& text, double sample_rate);
void write_csv_dataset(const std::filesystem::path& path, const TimeSeriesDataset& data);

struct SplitRatios {
  double train = 0.8;
  double validation = 0.1;
  double test = 0.1;
};

struct IndexRange {
  int begin = 0;
  int end = 0;  // exclusive
  int size() const { return end - begin; }
};

// Stride-1 windows over a normalized series. Window w uses columns
// [w, w + history) as input and [w + history, w + history + horizon) as
// target. Splits are contiguous and chronological.
struct SampleSet {
  Matrix series;  // normalized, N x T
  double scale = 1.0;
  int history = 10;
  int horizon = 1;
  IndexRange train;
  IndexRange validation;
  IndexRange test;

  int num_nodes() const { return static_cast<int>(series.rows()); }
  int num_windows() const { return test.end; }
  auto input(int w) const { return series.middleCols(w, history); }
  auto target(int w) const { return series.middleCols(w + history, horizon); }
  // One past the last time column touched by a training window.
  int train_time_end() const { return train.end - 1 + history + horizon; }
};

// Splits windows by ratio (floor for train and validation, remainder to
// test). When `fit_scale_on_train` is set the max-abs scale is recomputed
// from the columns covered by training windows.
SampleSet window(const TimeSeriesDataset& data, int history, int horizon,
                 const SplitRatios& ratios = {}, bool fit_scale_on_train = true);

// Seeded Fruchterman-Reingold layout, rescaled so the larger extent spans
// [0, extent].
std::vector<Point> force_directed_layout(const Graph& g, std::uint64_t seed, int iterations,
                                         double extent);

// Network file: "slack <bus>", a "[lines]" section of "i j b_ij" rows and
// a "[coordinates]" section of "i x y" rows; '#' comments.
PowerNetwork read_network(const std::filesystem::path& path);
PowerNetwork parse_network(const std::string& text);
void write_network(const std::filesystem::path& path, const PowerNetwork& net);
std::uint64_t network_hash(const PowerNetwork& net);

}  // namespace rtgcn

#endif  // RTGCN_DATAGEN_HPP_
