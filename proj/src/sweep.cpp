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

#include "rtgcn/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <set>
#include <thread>
#include <unordered_map>

#include "rtgcn/resilient.hpp"
#include "rtgcn/util.hpp"

namespace rtgcn {
namespace {

using Clock = std::chrono::steady_clock;

struct RowPlan {
  ReportRow row;
  Variant variant;
  const ScenarioSpec* scenario = nullptr;  // null for the reference row
};

std::vector<RowPlan> make_plan(const SweepConfig& c) {
  std::vector<RowPlan> plan;
  auto add = [&](Variant v, const std::string& kg, const ScenarioSpec* s) {
    RowPlan p;
    p.variant = v;
    p.scenario = s;
    p.row.variant = to_string(v);
    p.row.kg_method = kg;
    if (s != nullptr) {
      p.row.scenario = s->id;
      p.row.kind = to_string(s->kind);
      p.row.anchor = s->anchor;
    }
    plan.push_back(std::move(p));
  };
  if (c.include_reference) add(Variant::kBaseline, kNoKg, nullptr);
  for (Variant v : c.variants) {
    if (!uses_knowledge_graph(v)) {
      for (const auto& s : c.scenarios) add(v, kNoKg, &s);
      continue;
    }
    for (KgMethod m : c.kg_methods)
      for (const auto& s : c.scenarios) add(v, to_string(m), &s);
  }
  return plan;
}

const Graph& knowledge_for(const SweepInputs& in, const std::string& kg) {
  static const Graph kEmpty;
  if (kg == kNoKg) return kEmpty;
  auto it = in.knowledge.find(parse_kg_method(kg));
  if (it == in.knowledge.end()) throw InputError("sweep: no knowledge graph for method " + kg);
  if (it->second.num_nodes() != in.true_graph.num_nodes()) {
    throw InputError("sweep: knowledge graph '" + kg + "' has " +
                     std::to_string(it->second.num_nodes()) + " nodes, topology has " +
                     std::to_string(in.true_graph.num_nodes()));
  }
  return it->second;
}

Graph input_graph(const SweepInputs& in, const RowPlan& p) {
  return p.scenario == nullptr ? in.true_graph : apply_scenario(in.true_graph, *p.scenario);
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void mark_diverged(ReportRow& r, const std::string& why) {
  r.status = "diverged";
  r.rmse = std::numeric_limits<double>::quiet_NaN();
  log_warning("row " + r.id() + " diverged: " + why);
}

class RowSink {
 public:
  RowSink(const SweepConfig& c, std::size_t total, std::size_t done)
      : config_(c), total_(total), done_(done) {
    if (!c.report_path.empty()) {
      out_.open(c.report_path, std::ios::app);
      if (!out_) throw InputError("cannot append to report " + c.report_path.string());
    }
  }

  void push(ReportRow row) {
    std::lock_guard<std::mutex> lock(mu_);
    if (!config_.record_wall_time) row.wall_seconds = 0.0;
    if (out_.is_open()) {
      out_ << format_report_row(row);
      out_.flush();
    }
    ++done_;
    if (config_.on_row) config_.on_row(row, done_, total_);
    rows_.push_back(std::move(row));
  }

  std::vector<ReportRow> take() { return std::move(rows_); }

 private:
  const SweepConfig& config_;
  std::mutex mu_;
  std::ofstream out_;
  std::vector<ReportRow> rows_;
  std::size_t total_;
  std::size_t done_;
};

// Runs `count` jobs on a pool; the first non-divergence exception stops the
// pool and is rethrown.
void run_pool(int workers, std::size_t count, const std::function<void(std::size_t)>& job) {
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&]() {
    while (!failed.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        job(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  const int n = std::max(1, std::min<int>(workers, static_cast<int>(count)));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (int t = 0; t < n; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace

void SweepConfig::validate() const {
  if (variants.empty()) throw InputError("sweep: empty variant list");
  if (scenarios.empty() && !include_reference) throw InputError("sweep: no scenarios");
  if (workers < 1) throw InputError("sweep: worker count must be >= 1");
  const bool needs_kg = std::any_of(variants.begin(), variants.end(), uses_knowledge_graph);
  if (needs_kg && kg_methods.empty()) {
    throw InputError("sweep: knowledge-graph variants requested without a kg method");
  }
  std::set<std::string> ids;
  for (const auto& s : scenarios) {
    if (!ids.insert(s.id).second) throw InputError("sweep: duplicate scenario " + s.id);
  }
}

std::vector<ReportRow> plan_sweep(const SweepConfig& config) {
  config.validate();
  std::vector<ReportRow> rows;
  for (auto& p : make_plan(config)) rows.push_back(std::move(p.row));
  return rows;
}

std::vector<ReportRow> run_sweep(const SweepInputs& inputs, const SweepConfig& config) {
  config.validate();
  if (inputs.true_graph.num_nodes() != inputs.data.num_nodes()) {
    throw InputError("sweep: dataset has " + std::to_string(inputs.data.num_nodes()) +
                         " nodes, topology has " + std::to_string(inputs.true_graph.num_nodes()));
  }
  std::vector<RowPlan> plan = make_plan(config);
  for (const auto& p : plan) knowledge_for(inputs, p.row.kg_method);

  std::unordered_map<std::string, ReportRow> finished;
  if (!config.report_path.empty() && std::filesystem::exists(config.report_path)) {
    std::set<std::string> planned;
    for (const auto& p : plan) planned.insert(p.row.id());
    for (auto& r : read_report(config.report_path)) {
      if (planned.count(r.id())) finished.emplace(r.id(), std::move(r));
    }
  }
  if (!config.report_path.empty()) {
    // Rewrite what survived so appends never follow a torn line.
    std::vector<ReportRow> kept;
    for (const auto& p : plan) {
      auto it = finished.find(p.row.id());
      if (it != finished.end()) kept.push_back(it->second);
    }
    write_report(config.report_path, kept);
  }

  std::vector<const RowPlan*> pending;
  for (const auto& p : plan) {
    if (!finished.count(p.row.id())) pending.push_back(&p);
  }

  const SampleSet samples =
      window(inputs.data, config.model.history, config.model.horizon, config.split);
  RowSink sink(config, plan.size(), plan.size() - pending.size());

  if (!config.shared_training) {
    run_pool(config.workers, pending.size(), [&](std::size_t i) {
      const RowPlan& p = *pending[i];
      const auto t0 = Clock::now();
      ReportRow row = p.row;
      row.seed = derive_seed(config.master_seed, row.id());
      const Graph input = input_graph(inputs, p);
      row.disconnected = !input.is_connected();
      try {
        auto model = make_forecaster(p.variant, input, knowledge_for(inputs, row.kg_method),
                                     config.model, row.seed);
        TrainConfig tc = config.train;
        tc.seed = row.seed;
        TrainResult tr = train(*model, samples, tc);
        row.epochs = tr.epochs_run;
        row.rmse = evaluate_rmse(*model, samples, samples.test);
      } catch (const DivergenceError& e) {
        mark_diverged(row, e.what());
      }
      row.wall_seconds = seconds_since(t0);
      sink.push(std::move(row));
    });
  } else {
    // Group pending rows by model; each group trains once.
    std::vector<std::pair<std::string, std::vector<const RowPlan*>>> groups;
    for (const RowPlan* p : pending) {
      const std::string key = p->row.variant + "|" + p->row.kg_method;
      auto it = std::find_if(groups.begin(), groups.end(),
                             [&key](const auto& g) { return g.first == key; });
      if (it == groups.end()) {
        groups.push_back({key, {p}});
      } else {
        it->second.push_back(p);
      }
    }
    run_pool(config.workers, groups.size(), [&](std::size_t gi) {
      const auto& [key, members] = groups[gi];
      const RowPlan& first = *members.front();
      const std::uint64_t seed = derive_seed(config.master_seed, key + "|shared");
      const auto t0 = Clock::now();
      std::unique_ptr<Forecaster> model;
      std::string failure;
      int epochs = 0;
      try {
        model = make_forecaster(first.variant, inputs.true_graph,
                                knowledge_for(inputs, first.row.kg_method), config.model, seed);
        TrainConfig tc = config.train;
        tc.seed = seed;
        epochs = train(*model, samples, tc).epochs_run;
      } catch (const DivergenceError& e) {
        failure = e.what();
      }
      const double train_seconds = seconds_since(t0);
      for (const RowPlan* p : members) {
        const auto t1 = Clock::now();
        ReportRow row = p->row;
        row.seed = seed;
        row.epochs = epochs;
        const Graph input = input_graph(inputs, *p);
        row.disconnected = !input.is_connected();
        if (!failure.empty()) {
          mark_diverged(row, failure);
        } else {
          try {
            model->set_input_topology(input);
            row.rmse = evaluate_rmse(*model, samples, samples.test);
          } catch (const DivergenceError& e) {
            mark_diverged(row, e.what());
          }
        }
        row.wall_seconds = seconds_since(t1) + (p == members.front() ? train_seconds : 0.0);
        sink.push(std::move(row));
      }
    });
  }

  for (auto& r : sink.take()) finished.insert_or_assign(r.id(), std::move(r));
  std::vector<ReportRow> out;
  out.reserve(plan.size());
  for (const auto& p : plan) out.push_back(finished.at(p.row.id()));
  if (!config.report_path.empty()) {
    auto tmp = config.report_path;
    tmp += ".tmp";
    write_report(tmp, out);
    std::filesystem::rename(tmp, config.report_path);
  }
  return out;
}

std::vector<ScenarioSpec> select_scenarios(const PowerNetwork& net,
                                           const ScenarioSelection& sel) {
  std::vector<ScenarioSpec> out;
  if (sel.removals) {
    auto r = enumerate_removals(net.graph);
    if (!sel.full) r = subsample(r, sel.removal_stride);
    out.insert(out.end(), r.begin(), r.end());
  }
  if (sel.additions) {
    auto a = enumerate_additions(net.graph, net.coordinates, sel.addition_radius);
    if (!sel.full) a = subsample(a, sel.addition_stride);
    out.insert(out.end(), a.begin(), a.end());
  }
  return out;
}

}  // namespace rtgcn
