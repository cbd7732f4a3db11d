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

#include "rtgcn/knowledge_graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rtgcn/optim.hpp"

namespace rtgcn {

std::string to_string(KgMethod m) {
  switch (m) {
    case KgMethod::kCosine:
      return "cosine";
    case KgMethod::kPearson:
      return "pearson";
    case KgMethod::kGat:
      return "gat";
  }
  return "?";
}

KgMethod parse_kg_method(const std::string& name) {
  if (name == "cosine") return KgMethod::kCosine;
  if (name == "pearson") return KgMethod::kPearson;
  if (name == "gat") return KgMethod::kGat;
  throw InputError("unknown knowledge-graph method '" + name + "'");
}

std::vector<double> SimilarityMatrix::pair_values() const {
  std::vector<double> out;
  const Eigen::Index n = values.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!valid[i]) continue;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (valid[j]) out.push_back(values(i, j));
    }
  }
  return out;
}

namespace {

// Unit-normalizes each row; rows whose norm is negligible relative to
// `reference` are zeroed and flagged invalid.
SimilarityMatrix row_cosines(Matrix rows, const Vector& reference, const char* what) {
  const Eigen::Index n = rows.rows();
  SimilarityMatrix s;
  s.valid.assign(n, true);
  std::vector<int> dropped;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double norm = rows.row(i).norm();
    if (!(norm > 1e-12 * reference(i)) || norm == 0.0) {
      s.valid[i] = false;
      rows.row(i).setZero();
      dropped.push_back(static_cast<int>(i));
    } else {
      rows.row(i) /= norm;
    }
  }
  if (!dropped.empty()) {
    std::string list;
    for (int d : dropped) list += (list.empty() ? "" : ",") + std::to_string(d);
    log_warning(std::string("excluding ") + what + " nodes {" + list + "} from knowledge graph");
  }
  s.values = rows * rows.transpose();
  s.values = s.values.cwiseMax(-1.0).cwiseMin(1.0);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (s.valid[i]) s.values(i, i) = 1.0;
  }
  // Exact symmetry regardless of the product's rounding.
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) s.values(j, i) = s.values(i, j);
  return s;
}

}  // namespace

SimilarityMatrix cosine_similarity(const Matrix& series) {
  Vector reference = Vector::Ones(series.rows()) * std::numeric_limits<double>::min();
  return row_cosines(series, reference, "zero-norm");
}

SimilarityMatrix pearson_correlation(const Matrix& series) {
  Vector mean = series.rowwise().mean();
  Matrix centered = series.colwise() - mean;
  Vector reference = series.rowwise().norm();
  return row_cosines(std::move(centered), reference, "zero-variance");
}

Graph threshold_graph(const SimilarityMatrix& sim, double threshold) {
  std::vector<Edge> edges;
  const Eigen::Index n = sim.values.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!sim.valid[i]) continue;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (sim.valid[j] && sim.values(i, j) > threshold) {
        edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
      }
    }
  }
  return graph_from_edges(static_cast<int>(n), std::move(edges));
}

double mean_pair_similarity(const SimilarityMatrix& sim) {
  auto v = sim.pair_values();
  if (v.empty()) throw InputError("knowledge graph: fewer than two usable node series");
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

Graph cosine_kg(const TimeSeriesDataset& data, double alpha) {
  if (!(alpha > 0.0)) throw InputError("cosine_kg: alpha must be > 0");
  if (data.num_steps() < 2) throw InputError("cosine_kg: T must be >= 2");
  SimilarityMatrix sim = cosine_similarity(data.values);
  return threshold_graph(sim, alpha * mean_pair_similarity(sim));
}

Graph pearson_kg(const TimeSeriesDataset& data, double threshold) {
  if (data.num_steps() < 2) throw InputError("pearson_kg: T must be >= 2");
  SimilarityMatrix sim = pearson_correlation(data.values);
  if (sim.pair_values().empty()) {
    throw InputError("pearson_kg: all node series are constant, no valid pairs");
  }
  return threshold_graph(sim, threshold);
}

ThresholdCalibration calibrate_kg_threshold(const TimeSeriesDataset& data, KgMethod method,
                                            std::size_t target_edges, std::size_t tolerance) {
  if (method == KgMethod::kGat) {
    throw InputError("calibrate_kg_threshold: GAT graphs take an edge target directly");
  }
  SimilarityMatrix sim = method == KgMethod::kCosine ? cosine_similarity(data.values)
                                                     : pearson_correlation(data.values);
  std::vector<double> v = sim.pair_values();
  if (target_edges > v.size()) {
    throw InputError("calibrate_kg_threshold: target " + std::to_string(target_edges) +
                     " exceeds " + std::to_string(v.size()) + " candidate pairs");
  }
  std::sort(v.begin(), v.end(), std::greater<>());
  // Threshold yielding exactly k edges, if the sorted values allow it.
  auto exact = [&v](std::size_t k, double& out) {
    if (v.empty()) {
      out = 0.0;
      return true;
    }
    // Margins well above rounding so alpha * mean lands on the same side.
    if (k == 0) {
      out = v.front() + 1e-9 * std::max(1.0, std::abs(v.front()));
      return true;
    }
    if (k == v.size()) {
      out = v.back() - 1e-9 * std::max(1.0, std::abs(v.back()));
      return true;
    }
    if (!(v[k - 1] > v[k])) return false;
    const double mid = 0.5 * (v[k - 1] + v[k]);
    out = (mid > v[k] && mid < v[k - 1]) ? mid : v[k];
    return true;
  };
  ThresholdCalibration cal;
  bool found = false;
  for (std::size_t d = 0; d <= tolerance && !found; ++d) {
    if (exact(target_edges, cal.threshold) && d == 0) {
      found = true;
      break;
    }
    if (d == 0) continue;
    if (target_edges >= d && exact(target_edges - d, cal.threshold)) {
      found = true;
    } else if (target_edges + d <= v.size() && exact(target_edges + d, cal.threshold)) {
      found = true;
    }
  }
  if (!found) {
    throw InputError("calibrate_kg_threshold: target " + std::to_string(target_edges) +
                     " unreachable within tolerance " + std::to_string(tolerance) +
                     " (tied similarities)");
  }
  if (method == KgMethod::kCosine) {
    const double mean = mean_pair_similarity(sim);
    cal.alpha = cal.threshold / mean;
    // Report what cosine_kg(alpha) will actually produce.
    cal.threshold = cal.alpha * mean;
    if (!(cal.alpha > 0.0)) {
      log_warning("calibrated cosine threshold " + format_double(cal.threshold) +
                  " has no positive alpha (mean similarity " + format_double(mean) + ")");
    }
  }
  cal.achieved = threshold_graph(sim, cal.threshold).num_edges();
  return cal;
}

GatLayer GatLayer::init(int features, int hidden, std::mt19937_64& rng) {
  GatLayer l;
  l.w = Parameter("gat.w", init_uniform(features, hidden, features, rng));
  l.a_src = Parameter("gat.a_src", init_uniform(hidden, 1, 2 * hidden, rng));
  l.a_dst = Parameter("gat.a_dst", init_uniform(hidden, 1, 2 * hidden, rng));
  return l;
}

GatOutput gat_forward(Var x, const Matrix& candidate_mask, GatLayer& layer) {
  Tape& tape = *x.tape();
  if (candidate_mask.rows() != x.rows() || candidate_mask.cols() != x.rows()) {
    throw ShapeError("gat_forward: mask " + shape_string(candidate_mask) + " for " +
                     std::to_string(x.rows()) + " nodes");
  }
  Var wx = matmul(x, tape.parameter(layer.w));
  Var src = matmul(wx, tape.parameter(layer.a_src));
  Var dst = matmul(wx, tape.parameter(layer.a_dst));
  Var scores = leaky_relu(outer_sum(src, dst), 0.2);
  Var attention = masked_softmax_rows(scores, candidate_mask);
  return {elu(matmul(attention, wx)), attention};
}

GatPredictor GatPredictor::init(int features, int hidden, int num_heads, std::mt19937_64& rng) {
  if (num_heads < 1 || hidden < 1 || features < 1) throw InputError("GAT dimensions must be >= 1");
  GatPredictor p;
  for (int h = 0; h < num_heads; ++h) {
    p.heads.push_back(GatLayer::init(features, hidden, rng));
    const std::string tag = "gat" + std::to_string(h);
    p.heads.back().w.name = tag + ".w";
    p.heads.back().a_src.name = tag + ".a_src";
    p.heads.back().a_dst.name = tag + ".a_dst";
  }
  p.w_out = Parameter("gat.w_out", init_uniform(num_heads * hidden, 1, num_heads * hidden, rng));
  p.b_out = Parameter("gat.b_out", Matrix::Zero(1, 1));
  return p;
}

std::vector<Parameter*> GatPredictor::parameters() {
  std::vector<Parameter*> out;
  for (GatLayer& l : heads)
    for (Parameter* p : l.parameters()) out.push_back(p);
  out.push_back(&w_out);
  out.push_back(&b_out);
  return out;
}

Var GatPredictor::forward(Var x, const Matrix& candidate_mask, Matrix* attention) {
  Tape& tape = *x.tape();
  Var features;
  for (std::size_t h = 0; h < heads.size(); ++h) {
    GatOutput o = gat_forward(x, candidate_mask, heads[h]);
    features = h == 0 ? o.out : concat_cols(features, o.out);
    if (attention != nullptr) {
      if (h == 0) {
        *attention = o.attention.value();
      } else {
        *attention += o.attention.value();
      }
    }
  }
  if (attention != nullptr) *attention /= static_cast<double>(heads.size());
  return add_row(matmul(features, tape.parameter(w_out)), tape.parameter(b_out));
}

Graph top_k_pairs(const Matrix& scores, std::size_t k) {
  const int n = static_cast<int>(scores.rows());
  std::vector<std::pair<double, Edge>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(scores(i, j), Edge(i, j));
  if (k > pairs.size()) {
    throw InputError("top_k_pairs: " + std::to_string(k) + " edges requested, only " +
                     std::to_string(pairs.size()) + " pairs exist");
  }
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<Edge> edges;
  for (std::size_t e = 0; e < k; ++e) edges.push_back(pairs[e].second);
  return graph_from_edges(n, std::move(edges));
}

GatKgResult gat_kg(const TimeSeriesDataset& data, std::size_t target_edges,
                   const GatTrainConfig& config) {
  const int n = data.num_nodes();
  const std::size_t max_pairs = static_cast<std::size_t>(n) * (n - 1) / 2;
  if (target_edges > max_pairs) {
    throw InputError("gat_kg: target " + std::to_string(target_edges) + " exceeds " +
                     std::to_string(max_pairs) + " node pairs");
  }
  const int windows = data.num_steps() - config.history;
  if (windows < 1) throw InputError("gat_kg: series too short for the history length");
  const Matrix series = data.values / max_abs_scale(data.values);
  const Matrix mask = Matrix::Ones(n, n);

  std::mt19937_64 rng(config.seed);
  GatPredictor model = GatPredictor::init(config.history, config.hidden, config.heads, rng);
  std::vector<Parameter*> params = model.parameters();
  AdamState adam;
  adam.learning_rate = config.learning_rate;

  std::vector<int> order;
  for (int w = 0; w < windows; w += std::max(1, config.window_stride)) order.push_back(w);

  GatKgResult result;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double loss_sum = 0.0;
    int batches = 0;
    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      const std::size_t stop = std::min(order.size(), start + config.batch_size);
      Tape tape;
      Var total;
      try {
        for (std::size_t k = start; k < stop; ++k) {
          const int w = order[k];
          Var x = tape.constant(series.middleCols(w, config.history));
          Var loss = mse_loss(model.forward(x, mask), series.col(w + config.history));
          total = k == start ? loss : add(total, loss);
        }
      } catch (const DivergenceError& e) {
        throw DivergenceError(std::string("gat_kg: ") + e.what() + " (seed " +
                              std::to_string(config.seed) + ", epoch " + std::to_string(epoch) +
                              ")");
      }
      Var loss = scale(total, 1.0 / static_cast<double>(stop - start));
      const double l = loss.value()(0, 0);
      if (!std::isfinite(l)) {
        throw DivergenceError("gat_kg: non-finite loss (seed " + std::to_string(config.seed) +
                              ", epoch " + std::to_string(epoch) + ")");
      }
      tape.backward(loss);
      adam_step(params, adam);
      loss_sum += l;
      ++batches;
    }
    result.loss_history.push_back(loss_sum / std::max(batches, 1));
  }

  Matrix mean_attention = Matrix::Zero(n, n);
  for (int w = 0; w < windows; ++w) {
    Tape tape;
    tape.set_grad_enabled(false);
    Matrix attention;
    model.forward(tape.constant(series.middleCols(w, config.history)), mask, &attention);
    mean_attention += attention;
  }
  mean_attention /= static_cast<double>(windows);
  result.pair_scores = 0.5 * (mean_attention + mean_attention.transpose());
  result.graph = top_k_pairs(result.pair_scores, target_edges);
  return result;
}

KnowledgeGraph build_knowledge_graph(const TimeSeriesDataset& data, const KgConfig& config) {
  KnowledgeGraph kg;
  kg.method = config.method;
  kg.provenance.emplace_back("method", to_string(config.method));
  kg.provenance.emplace_back("dataset_hash", hex64(hash_matrix(data.values)));
  switch (config.method) {
    case KgMethod::kCosine:
    case KgMethod::kPearson: {
      double threshold = config.method == KgMethod::kCosine ? config.alpha
                                                            : config.pearson_threshold;
      if (config.calibrate_to > 0) {
        auto cal = calibrate_kg_threshold(data, config.method, config.calibrate_to,
                                          config.calibrate_tolerance);
        kg.provenance.emplace_back("target_edges", std::to_string(config.calibrate_to));
        threshold = config.method == KgMethod::kCosine ? cal.alpha : cal.threshold;
      }
      if (config.method == KgMethod::kCosine) {
        if (config.calibrate_to == 0 && !(threshold > 0.0)) {
          throw InputError("cosine knowledge graph: alpha must be > 0");
        }
        SimilarityMatrix sim = cosine_similarity(data.values);
        const double cut = threshold * mean_pair_similarity(sim);
        kg.graph = threshold_graph(sim, cut);
        kg.provenance.emplace_back("alpha", format_double(threshold));
        kg.provenance.emplace_back("threshold", format_double(cut));
      } else {
        kg.graph = pearson_kg(data, threshold);
        kg.provenance.emplace_back("threshold", format_double(threshold));
      }
      break;
    }
    case KgMethod::kGat: {
      GatKgResult r = gat_kg(data, config.gat_target_edges, config.gat);
      kg.graph = std::move(r.graph);
      kg.provenance.emplace_back("target_edges", std::to_string(config.gat_target_edges));
      kg.provenance.emplace_back("seed", std::to_string(config.gat.seed));
      kg.provenance.emplace_back("epochs", std::to_string(config.gat.epochs));
      kg.provenance.emplace_back("hidden", std::to_string(config.gat.hidden));
      kg.provenance.emplace_back("heads", std::to_string(config.gat.heads));
      break;
    }
  }
  return kg;
}

}  // namespace rtgcn
