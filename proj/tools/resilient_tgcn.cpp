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

// resilient-tgcn: data generation, knowledge graphs, topology scenarios,
// training and sweep reports.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rtgcn/checkpoint.hpp"
#include "rtgcn/datagen.hpp"
#include "rtgcn/ieee118.hpp"
#include "rtgcn/knowledge_graph.hpp"
#include "rtgcn/report.hpp"
#include "rtgcn/resilient.hpp"
#include "rtgcn/scenarios.hpp"
#include "rtgcn/sweep.hpp"
#include "rtgcn/trainer.hpp"
#include "rtgcn/util.hpp"

namespace fs = std::filesystem;
using namespace rtgcn;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitDivergence = 3;

PowerNetwork load_network(const std::string& spec) {
  if (spec == "ieee118") return ieee118_network();
  return read_network(spec);
}

struct ModelOptions {
  int hidden = 64;
  int history = 10;
  int horizon = 1;
  int epochs = 100;
  int batch_size = 32;
  double lr = 1e-3;
  int patience = 10;
  int max_train_windows = 0;
  double train_ratio = 0.8;
  double validation_ratio = 0.1;

  void add(CLI::App* app) {
    app->add_option("--hidden", hidden, "TGCN hidden units (also the conv width)")
        ->check(CLI::PositiveNumber);
    app->add_option("--history", history, "input window length L")->check(CLI::PositiveNumber);
    app->add_option("--horizon", horizon, "prediction length")->check(CLI::PositiveNumber);
    app->add_option("--epochs", epochs, "maximum training epochs")->check(CLI::NonNegativeNumber);
    app->add_option("--batch-size", batch_size)->check(CLI::PositiveNumber);
    app->add_option("--lr", lr, "Adam learning rate")->check(CLI::PositiveNumber);
    app->add_option("--patience", patience, "early-stopping patience, 0 disables");
    app->add_option("--max-train-windows", max_train_windows,
                    "train on the most recent N windows only (0 = all)");
    app->add_option("--train-ratio", train_ratio);
    app->add_option("--validation-ratio", validation_ratio);
  }
  TgcnConfig model() const {
    TgcnConfig c;
    c.hidden = hidden;
    c.conv_out = hidden;
    c.history = history;
    c.horizon = horizon;
    return c;
  }
  TrainConfig training(std::uint64_t seed) const {
    TrainConfig t;
    t.epochs = epochs;
    t.batch_size = batch_size;
    t.learning_rate = lr;
    t.patience = patience;
    t.max_train_windows = max_train_windows;
    t.seed = seed;
    return t;
  }
  SplitRatios split() const {
    return {train_ratio, validation_ratio, 1.0 - train_ratio - validation_ratio};
  }
};

// "method=path" pairs for knowledge-graph files.
std::map<KgMethod, Graph> load_knowledge(const std::vector<std::string>& specs, int num_nodes) {
  std::map<KgMethod, Graph> out;
  for (const auto& s : specs) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw InputError("--kg expects method=path, got '" + s + "'");
    KgMethod m = parse_kg_method(s.substr(0, eq));
    out[m] = read_edge_list(s.substr(eq + 1), num_nodes).graph;
  }
  return out;
}

double radius_for(const PowerNetwork& net, double radius, std::size_t target) {
  if (radius > 0.0) return radius;
  RadiusCalibration cal = calibrate_radius(net.graph, net.coordinates, target);
  std::cerr << "addition radius " << format_double(cal.radius) << " (" << cal.achieved
            << " specs)\n";
  return cal.radius;
}

std::vector<ScenarioKind> parse_kinds(const std::vector<std::string>& kinds) {
  std::vector<ScenarioKind> out;
  for (const auto& k : kinds) out.push_back(parse_scenario_kind(k));
  if (out.empty()) throw InputError("no scenario kind given");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resilient TGCN state estimation under inaccurate topologies"};
  app.set_config("--config", "", "INI/TOML file supplying option values");
  app.require_subcommand(1);
  bool quiet = false;
  app.add_flag("--quiet", quiet, "suppress warnings");

  // generate-data
  auto* gen = app.add_subcommand("generate-data", "synthesize phase-angle series by DC power flow");
  std::string gen_network = "ieee118", gen_out = "dataset.csv";
  int gen_steps = 2000;
  std::uint64_t gen_seed = 7;
  double gen_amplitude = 1.0, gen_noise = 0.05, gen_rate = 30.0;
  gen->add_option("--buses,--network", gen_network, "ieee118 or a network file");
  gen->add_option("--steps", gen_steps, "number of time steps T");
  gen->add_option("--seed", gen_seed);
  gen->add_option("--amplitude", gen_amplitude, "base injection amplitude (p.u.)");
  gen->add_option("--noise", gen_noise, "noise level relative to the amplitude");
  gen->add_option("--sample-rate", gen_rate, "Hz, recorded as metadata");
  gen->add_option("--out,-o", gen_out, "CSV output; a .manifest is written next to it");

  // build-kg
  auto* kg = app.add_subcommand("build-kg", "build a knowledge graph from a dataset");
  std::string kg_data, kg_out = "kg.txt", kg_method = "pearson";
  KgConfig kg_config;
  int kg_history = 10, kg_horizon = 1;
  SplitRatios kg_split;
  kg->add_option("--data", kg_data, "dataset CSV")->required();
  kg->add_option("--method", kg_method, "cosine | pearson | gat");
  kg->add_option("--alpha", kg_config.alpha, "cosine threshold multiplier");
  kg->add_option("--threshold", kg_config.pearson_threshold, "Pearson threshold");
  kg->add_option("--target-edges", kg_config.gat_target_edges, "GAT edge count");
  kg->add_option("--calibrate-to", kg_config.calibrate_to,
                 "cosine/pearson: pick the threshold yielding this many edges");
  kg->add_option("--calibrate-tolerance", kg_config.calibrate_tolerance);
  kg->add_option("--seed", kg_config.gat.seed);
  kg->add_option("--epochs", kg_config.gat.epochs, "GAT training epochs");
  kg->add_option("--gat-hidden", kg_config.gat.hidden);
  kg->add_option("--heads", kg_config.gat.heads, "GAT attention heads");
  kg->add_option("--gat-lr", kg_config.gat.learning_rate);
  kg->add_option("--gat-history", kg_config.gat.history);
  kg->add_option("--window-stride", kg_config.gat.window_stride);
  // The graph sees only columns covered by training windows, so these must
  // match the values later given to train/sweep.
  kg->add_option("--history", kg_history, "window length of the training split")
      ->check(CLI::PositiveNumber);
  kg->add_option("--horizon", kg_horizon)->check(CLI::PositiveNumber);
  kg->add_option("--train-ratio", kg_split.train);
  kg->add_option("--validation-ratio", kg_split.validation);
  kg->add_option("--out,-o", kg_out);

  // perturb
  auto* perturb = app.add_subcommand("perturb", "enumerate or apply topology scenarios");
  std::string pt_network = "ieee118", pt_kind = "removal", pt_manifest, pt_out;
  std::vector<std::string> pt_kinds{"removal", "addition"};
  int pt_anchor = -1, pt_other = -1;
  double pt_radius = 0.0;
  std::size_t pt_target = 406;
  perturb->add_option("--network", pt_network);
  perturb->add_option("--kind", pt_kind, "removal | addition (single scenario)");
  perturb->add_option("--anchor", pt_anchor);
  perturb->add_option("--other", pt_other);
  perturb->add_option("--kinds", pt_kinds, "kinds to enumerate with --manifest")->delimiter(',');
  perturb->add_option("--radius", pt_radius, "addition radius (default: calibrated)");
  perturb->add_option("--addition-target", pt_target, "addition count the radius is fit to");
  perturb->add_option("--manifest", pt_manifest, "write the enumerated scenario manifest");
  perturb->add_option("--out,-o", pt_out, "write the perturbed topology as an edge list");

  // train
  auto* tr = app.add_subcommand("train", "train one model variant and save a checkpoint");
  std::string tr_data, tr_network = "ieee118", tr_variant = "baseline", tr_kg, tr_ckpt = "model";
  std::string tr_kind;
  int tr_anchor = -1, tr_other = -1;
  std::uint64_t tr_seed = 0;
  ModelOptions tr_opts;
  tr->add_option("--data", tr_data)->required();
  tr->add_option("--network", tr_network);
  tr->add_option("--variant", tr_variant);
  tr->add_option("--kg", tr_kg, "knowledge-graph edge list");
  tr->add_option("--kind", tr_kind, "optional scenario: removal | addition");
  tr->add_option("--anchor", tr_anchor);
  tr->add_option("--other", tr_other);
  tr->add_option("--seed", tr_seed);
  tr->add_option("--checkpoint", tr_ckpt, "checkpoint path prefix");
  tr_opts.add(tr);

  // sweep
  auto* sw = app.add_subcommand("sweep", "train and evaluate variants across scenarios");
  std::string sw_data, sw_network = "ieee118", sw_out = "report.tsv";
  std::vector<std::string> sw_kg, sw_variants, sw_kinds{"removal", "addition"};
  std::vector<std::string> sw_kg_methods;
  ScenarioSelection sw_sel;
  std::size_t sw_target = 406;
  int sw_workers = 1;
  std::uint64_t sw_seed = 0;
  bool sw_shared = false, sw_no_timing = false, sw_no_reference = false;
  ModelOptions sw_opts;
  sw->add_option("--data", sw_data)->required();
  sw->add_option("--network", sw_network);
  sw->add_option("--kg", sw_kg, "method=path, repeatable");
  sw->add_option("--variants", sw_variants, "comma list (default: all)")->delimiter(',');
  sw->add_option("--kg-methods", sw_kg_methods, "comma list (default: all given by --kg)")
      ->delimiter(',');
  sw->add_option("--kinds", sw_kinds, "removal, addition")->delimiter(',');
  sw->add_flag("--full", sw_sel.full, "all scenarios instead of the subsampled set");
  sw->add_option("--removal-stride", sw_sel.removal_stride)->check(CLI::PositiveNumber);
  sw->add_option("--addition-stride", sw_sel.addition_stride)->check(CLI::PositiveNumber);
  sw->add_option("--radius", sw_sel.addition_radius, "addition radius (default: calibrated)");
  sw->add_option("--addition-target", sw_target);
  sw->add_option("--workers,-j", sw_workers);
  sw->add_option("--seed", sw_seed, "master seed");
  sw->add_flag("--shared-training", sw_shared,
               "train once per variant on the true topology, swap adjacency per scenario");
  sw->add_flag("--no-timing", sw_no_timing, "write 0 for wall times");
  sw->add_flag("--no-reference", sw_no_reference, "skip the true-topology baseline row");
  sw->add_option("--out,-o", sw_out, "report file (resumed if present)");
  sw_opts.add(sw);

  // report
  auto* rp = app.add_subcommand("report", "summarize a sweep report");
  std::string rp_report = "report.tsv", rp_out = "summary";
  bool rp_per_node = false;
  rp->add_option("--report", rp_report);
  rp->add_option("--out,-o", rp_out, "directory for the tab-separated tables");
  rp->add_flag("--per-node", rp_per_node, "also emit per-node averages");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  set_warnings_enabled(!quiet);

  try {
    if (gen->parsed()) {
      if (gen_steps < 2) throw InputError("T too short: --steps must be >= 2");
      PowerNetwork net = load_network(gen_network);
      Matrix profile =
          synth_load_profile(net.num_buses(), gen_steps, gen_seed, gen_amplitude, gen_noise);
      TimeSeriesDataset data = generate_dataset(net, profile, gen_rate);
      write_csv_dataset(gen_out, data);
      std::ofstream m(gen_out + ".manifest", std::ios::trunc);
      m << "network " << gen_network << "\nnetwork_hash " << hex64(network_hash(net))
        << "\nbuses " << net.num_buses() << "\nsteps " << gen_steps << "\nseed " << gen_seed
        << "\namplitude " << format_double(gen_amplitude) << "\nnoise "
        << format_double(gen_noise) << "\nsample_rate " << format_double(gen_rate)
        << "\nscale " << format_double(data.scale) << "\ndata_hash "
        << hex64(hash_matrix(data.values)) << "\n";
      if (!m) throw InputError("cannot write manifest for " + gen_out);
      std::cout << "wrote " << gen_out << " (" << data.num_nodes() << " x " << data.num_steps()
                << ")\n";
    } else if (kg->parsed()) {
      TimeSeriesDataset data = load_csv_dataset(kg_data, 30.0);
      kg_split.test = 1.0 - kg_split.train - kg_split.validation;
      const int cols = window(data, kg_history, kg_horizon, kg_split).train_time_end();
      if (cols < 2) throw InputError("T too short for a knowledge graph");
      TimeSeriesDataset used = data.slice(0, cols);
      kg_config.method = parse_kg_method(kg_method);
      KnowledgeGraph g = build_knowledge_graph(used, kg_config);
      g.provenance.emplace_back("data", kg_data);
      g.provenance.emplace_back("train_columns", std::to_string(cols));
      write_edge_list(kg_out, g.graph, g.provenance);
      std::cout << "wrote " << kg_out << " (" << g.graph.num_edges() << " edges, "
                << kg_method << ")\n";
    } else if (perturb->parsed()) {
      PowerNetwork net = load_network(pt_network);
      if (!pt_manifest.empty()) {
        std::vector<ScenarioSpec> specs;
        for (ScenarioKind k : parse_kinds(pt_kinds)) {
          auto s = k == ScenarioKind::kRemoval
                       ? enumerate_removals(net.graph)
                       : enumerate_additions(net.graph, net.coordinates,
                                             radius_for(net, pt_radius, pt_target));
          specs.insert(specs.end(), s.begin(), s.end());
        }
        write_scenario_manifest(pt_manifest, specs);
        std::cout << "wrote " << pt_manifest << " (" << specs.size() << " scenarios)\n";
      }
      if (pt_anchor >= 0 || pt_other >= 0) {
        ScenarioSpec s = make_scenario(parse_scenario_kind(pt_kind), pt_anchor, pt_other);
        Graph g = apply_scenario(net.graph, s);
        if (!g.is_connected()) log_warning("scenario " + s.id + " disconnects the topology");
        if (pt_out.empty()) pt_out = s.id + ".txt";
        write_edge_list(pt_out, g, {{"scenario", s.id}, {"kind", to_string(s.kind)}});
        std::cout << "wrote " << pt_out << " (" << s.id << ", " << g.num_edges() << " edges)\n";
      } else if (pt_manifest.empty()) {
        throw InputError("perturb: give --manifest and/or --anchor/--other");
      }
    } else if (tr->parsed()) {
      TimeSeriesDataset data = load_csv_dataset(tr_data, 30.0);
      PowerNetwork net = load_network(tr_network);
      Graph input = net.graph;
      if (!tr_kind.empty()) {
        input = apply_scenario(input, make_scenario(parse_scenario_kind(tr_kind), tr_anchor,
                                                    tr_other));
      }
      Variant v = parse_variant(tr_variant);
      Graph knowledge = new_graph(net.num_buses(), {});
      if (uses_knowledge_graph(v)) {
        if (tr_kg.empty()) throw InputError("variant " + tr_variant + " needs --kg");
        knowledge = read_edge_list(tr_kg, net.num_buses()).graph;
      }
      SampleSet samples = window(data, tr_opts.history, tr_opts.horizon, tr_opts.split());
      auto model = make_forecaster(v, input, knowledge, tr_opts.model(), tr_seed);
      TrainResult r = train(*model, samples, tr_opts.training(tr_seed));
      const double test = evaluate_rmse(*model, samples, samples.test);
      Checkpoint ck = make_checkpoint(model->parameters(), tr_seed, r.optimizer_steps);
      ck.meta["variant"] = tr_variant;
      ck.meta["epochs_run"] = std::to_string(r.epochs_run);
      ck.meta["test_rmse"] = format_double(test);
      save_checkpoint(tr_ckpt, ck);
      std::cout << tr_variant << ": epochs " << r.epochs_run << ", test RMSE "
                << format_double(test) << " rad, checkpoint " << tr_ckpt << "\n";
    } else if (sw->parsed()) {
      PowerNetwork net = load_network(sw_network);
      SweepInputs in;
      in.data = load_csv_dataset(sw_data, 30.0);
      in.true_graph = net.graph;
      in.knowledge = load_knowledge(sw_kg, net.num_buses());
      SweepConfig c;
      if (!sw_variants.empty()) {
        c.variants.clear();
        for (const auto& v : sw_variants) c.variants.push_back(parse_variant(v));
      }
      c.kg_methods.clear();
      if (sw_kg_methods.empty()) {
        for (const auto& [m, g] : in.knowledge) c.kg_methods.push_back(m);
      } else {
        for (const auto& m : sw_kg_methods) c.kg_methods.push_back(parse_kg_method(m));
      }
      sw_sel.removals = sw_sel.additions = false;
      for (ScenarioKind k : parse_kinds(sw_kinds)) {
        (k == ScenarioKind::kRemoval ? sw_sel.removals : sw_sel.additions) = true;
      }
      if (sw_sel.additions) {
        sw_sel.addition_radius = radius_for(net, sw_sel.addition_radius, sw_target);
      }
      c.scenarios = select_scenarios(net, sw_sel);
      c.include_reference = !sw_no_reference;
      c.shared_training = sw_shared;
      c.workers = sw_workers;
      c.master_seed = sw_seed;
      c.model = sw_opts.model();
      c.train = sw_opts.training(0);
      c.split = sw_opts.split();
      c.record_wall_time = !sw_no_timing;
      c.report_path = sw_out;
      c.on_row = [](const ReportRow& r, std::size_t done, std::size_t total) {
        std::cerr << "[" << done << "/" << total << "] " << r.id() << " rmse "
                  << format_double(r.rmse) << "\n";
      };
      if (sw_shared) log_warning("shared training: models are not retrained per scenario");
      auto rows = run_sweep(in, c);
      std::cout << "wrote " << sw_out << " (" << rows.size() << " rows)\n";
    } else if (rp->parsed()) {
      ReportSummary s = summarize(read_report(rp_report));
      std::cout << write_summary(s, rp_out, rp_per_node);
    }
  } catch (const DivergenceError& e) {
    std::cerr << "error: numeric divergence: " << e.what() << "\n";
    return kExitDivergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitOk;
}
