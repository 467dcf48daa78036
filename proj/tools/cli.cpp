#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "netclass/classifier.hpp"
#include "netclass/distance.hpp"
#include "netclass/error.hpp"
#include "netclass/function_predict.hpp"
#include "netclass/generators.hpp"
#include "netclass/graph.hpp"
#include "netclass/parallel.hpp"
#include "netclass/serialize.hpp"
#include "netclass/svg.hpp"

namespace netclass::cli {

namespace fs = std::filesystem;

namespace {

struct RunConfig {
  std::uint64_t seed = 1;
  std::size_t threads = 0;
  std::size_t nodes = kDefaultNodes;
  std::size_t replicates = 3;
  double alpha = kDefaultAlpha;
  std::size_t null_size = 50;
  std::string weights;  // explicit --weights path
};

/// Where default weights came from: a file path, or "canonical".
struct ResolvedWeights {
  EnsembleWeights weights;
  std::string source;
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::optional<std::string> weights_path(const RunConfig& rc) {
  if (!rc.weights.empty()) return rc.weights;
  if (const char* env = std::getenv("NETCLASS_WEIGHTS"); env != nullptr && *env != '\0') return std::string(env);
  return std::nullopt;
}

ResolvedWeights resolve_weights(const RunConfig& rc) {
  if (auto path = weights_path(rc)) return {read_weights_file(*path), *path};
  return {canonical_weights(), "canonical"};
}

SimulationConfig simulation(const RunConfig& rc) {
  SimulationConfig sim;
  sim.replicates = rc.replicates;
  sim.null_size = rc.null_size;
  return sim;
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty())
    out << text;
  else
    write_text_file(path, text);
}

std::vector<Mechanism> parse_mechanism_list(const std::vector<std::string>& names) {
  std::vector<Mechanism> kinds;
  for (const auto& name : names) {
    const auto kind = parse_mechanism(name);
    if (std::find(kinds.begin(), kinds.end(), kind) != kinds.end())
      throw ValidationError("mechanism '" + name + "' listed twice");
    kinds.push_back(kind);
  }
  return kinds;
}

/// "k" or "a..b" with 2 <= a <= b <= 5.
std::pair<std::size_t, std::size_t> parse_count_range(const std::string& text) {
  const auto dots = text.find("..");
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw UsageError("mechanism count range must look like 2..5");
    return static_cast<std::size_t>(v);
  };
  const std::size_t lo = number(dots == std::string::npos ? text : text.substr(0, dots));
  const std::size_t hi = dots == std::string::npos ? lo : number(text.substr(dots + 2));
  if (lo < 2 || hi > 5 || lo > hi) throw UsageError("mechanism counts must lie in 2..5");
  return {lo, hi};
}

std::string csv_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Label from a "# mechanism=X param=Y" comment, as written by `generate`.
std::optional<MechanismSpec> read_label(const fs::path& path) {
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] != '#') continue;
    std::istringstream words(line.substr(1));
    std::string word, kind, param;
    while (words >> word) {
      if (word.rfind("mechanism=", 0) == 0) kind = word.substr(10);
      if (word.rfind("param=", 0) == 0) param = word.substr(6);
    }
    if (!kind.empty() && !param.empty()) {
      MechanismSpec spec{parse_mechanism(kind), std::stod(param)};
      validate(spec);
      return spec;
    }
  }
  return std::nullopt;
}

std::string edgelist_text(const Graph& g, const std::vector<std::string>& comments) {
  std::ostringstream s;
  write_edgelist(s, g, comments);
  return s.str();
}

std::string param_text(double p) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", p);
  return buf;
}

Json config_json(const std::string& command, const RunConfig& rc) {
  Json j;
  j["command"] = command;
  j["seed"] = rc.seed;
  j["threads"] = rc.threads;
  j["nodes"] = rc.nodes;
  j["replicates"] = rc.replicates;
  j["alpha"] = rc.alpha;
  j["null_size"] = rc.null_size;
  const auto path = weights_path(rc);
  j["weights"] = path ? *path : std::string("canonical");
  return j;
}

Json error_json(const std::string& kind, const std::string& message, std::optional<std::size_t> line = {}) {
  Json e;
  e["kind"] = kind;
  e["message"] = message;
  if (line) e["line"] = *line;
  Json j;
  j["error"] = e;
  return j;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mechanistic classification of directed networks", "netclass"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig rc;
  const auto open_unit = CLI::Validator(
      [](std::string& s) -> std::string {
        double v = 0;
        try {
          v = std::stod(s);
        } catch (const std::exception&) {
          return "alpha must be a number";
        }
        return v > 0.0 && v < 1.0 ? std::string() : std::string("alpha must lie in (0, 1)");
      },
      "(0,1)");
  app.add_option("--seed", rc.seed, "Master seed")->capture_default_str();
  app.add_option("--threads", rc.threads, "Worker cap, 0 = all cores")->capture_default_str();
  app.add_option("--weights", rc.weights, "Ensemble weights JSON (else $NETCLASS_WEIGHTS, else canonical)");
  app.add_option("--nodes", rc.nodes, "Network size")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--replicates", rc.replicates, "Replicates per parameter value")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--alpha", rc.alpha, "Significance level")->check(open_unit)->capture_default_str();
  app.add_option("--null-size", rc.null_size, "Null networks per test")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  std::string in, out_path, svg_path, mechanism, assignment_path, panel_path, counts = "2..5";
  double param = 0.0;
  std::vector<std::string> mechanisms;
  std::size_t per_mechanism = 30, k = kDefaultNeighbors, size = 100, repetitions = 1, values = 100;

  std::function<void()> action;
  std::string command;
  auto sub = [&](const char* name, const char* help) {
    auto* s = app.add_subcommand(name, help);
    s->fallthrough();
    return s;
  };

  auto* generate = sub("generate", "Grow one network from a single mechanism");
  generate->add_option("--mechanism", mechanism, "er|dd|niche|pa|sw")->required();
  generate->add_option("--param", param, "Mechanism parameter")->required();
  generate->add_option("--out", out_path, "Edgelist output (default stdout)");

  auto* gen_mix = sub("generate-mixture", "Grow a network with node-specific mechanisms");
  gen_mix->add_option("--assignment", assignment_path, "JSON list of {kind, param}")->required();
  gen_mix->add_option("--out", out_path, "Edgelist output");

  auto* stir = sub("stir-mixture", "Rewire a random network node by node");
  stir->add_option("--assignment", assignment_path, "JSON list of {kind, param}")->required();
  stir->add_option("--out", out_path, "Edgelist output");

  auto* features = sub("features", "Extract the 18 network properties");
  features->add_option("--in", in, "Edgelist")->required();
  features->add_option("--out", out_path, "JSON output");

  auto* statespace = sub("statespace", "Pairwise distances and MDS of a directory of edgelists");
  statespace->add_option("--in", in, "Directory of *.edgelist files")->required();
  statespace->add_option("--out", out_path, "JSON output");
  statespace->add_option("--svg", svg_path, "MDS scatter plot");

  auto* classify_cmd = sub("classify", "Test a network against candidate mechanisms");
  classify_cmd->add_option("--in", in, "Edgelist")->required();
  classify_cmd->add_option("--mechanisms", mechanisms, "Candidates, comma separated")->delimiter(',');
  classify_cmd->add_option("--out", out_path, "JSON report");

  auto* estimate = sub("estimate-param", "Distance-weighted parameter estimate");
  estimate->add_option("--in", in, "Edgelist")->required();
  estimate->add_option("--mechanism", mechanism, "er|dd|niche|pa|sw")->required();
  estimate->add_option("--out", out_path, "JSON output");

  auto* roc = sub("roc", "ROC evaluation on simulated labeled networks");
  roc->add_option("--per-mechanism", per_mechanism, "Networks per mechanism")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  roc->add_option("--out", out_path, "CSV output");
  roc->add_option("--svg", svg_path, "ROC plot");

  auto* asc = sub("ascendency", "Normalized Ascendency of a flow network");
  asc->add_option("--in", in, "Edgelist")->required();
  asc->add_option("--out", out_path, "JSON output");

  auto* predict = sub("predict", "Predict normalized Ascendency from a mixture panel");
  predict->add_option("--in", in, "Edgelist")->required();
  predict->add_option("--panel", panel_path, "Panel JSON")->required();
  predict->add_option("--k", k, "Neighbors")->check(CLI::PositiveNumber)->capture_default_str();
  predict->add_option("--out", out_path, "JSON output");

  auto* ident = sub("identifiability", "Structure vs composition correlation of mixture panels");
  ident->add_option("--mechanisms", counts, "Mechanism count or range, e.g. 2..5")->capture_default_str();
  ident->add_option("--size", size, "Networks per panel")->check(CLI::Range(3, 1 << 20))->capture_default_str();
  ident->add_option("--repetitions", repetitions, "Panels per count")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  ident->add_option("--out", out_path, "CSV output");

  auto* panel = sub("mixture-panel", "Random-mixture panel with features and Ascendency");
  panel->add_option("--size", size, "Networks")->check(CLI::PositiveNumber)->capture_default_str();
  panel->add_option("--mechanisms", mechanisms, "Mechanisms mixed, comma separated")->delimiter(',');
  panel->add_option("--out", out_path, "Panel JSON");

  auto* loo = sub("loo", "Leave-one-out Ascendency prediction on a panel");
  loo->add_option("--panel", panel_path, "Panel JSON")->required();
  loo->add_option("--k", k, "Neighbors")->check(CLI::PositiveNumber)->capture_default_str();
  loo->add_option("--out", out_path, "JSON output");

  auto* fit = sub("fit-weights", "Fit ensemble weights on a systematic reference panel");
  fit->add_option("--values", values, "Parameter values per mechanism")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  fit->add_option("--out", out_path, "Weights JSON");

  std::vector<std::string> argv_store{"netclass"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << error_json("usage", e.what()).dump() << "\n" << app.help();
    return 2;
  }

  for (auto* s : app.get_subcommands()) command = s->get_name();
  err << Json{{"run_config", config_json(command, rc)}}.dump() << "\n";

  try {
    set_thread_count(rc.threads);
    const SeededRng rng(rc.seed);

    if (command == "generate") {
      const MechanismSpec spec{parse_mechanism(mechanism), param};
      const auto g = grow(spec, rc.nodes, rng);
      emit(out_path, edgelist_text(g, {"mechanism=" + mechanism + " param=" + param_text(param)}), out);
    } else if (command == "generate-mixture" || command == "stir-mixture") {
      const auto assignment = assignment_from_json(read_json_file(assignment_path));
      const auto g = command == "stir-mixture" ? stir_mixture(assignment, rng) : grow_mixture(assignment, rng);
      emit(out_path, edgelist_text(g, {"generator=" + command}), out);
    } else if (command == "features") {
      emit(out_path, dump(to_json(extract_features(read_edgelist_file(in)))), out);
    } else if (command == "statespace") {
      if (!fs::is_directory(in)) throw ValidationError("'" + in + "' is not a directory");
      std::vector<fs::path> files;
      for (const auto& entry : fs::directory_iterator(in))
        if (entry.is_regular_file() && entry.path().extension() == ".edgelist") files.push_back(entry.path());
      std::sort(files.begin(), files.end());
      if (files.size() < 2) throw ValidationError("state space needs at least 2 edgelists");
      std::vector<LabeledGraph> graphs;
      for (const auto& f : files) graphs.push_back({f.stem().string(), read_edgelist_file(f.string()), read_label(f)});
      std::optional<EnsembleWeights> w;
      if (auto path = weights_path(rc)) w = read_weights_file(*path);
      const auto space = build_state_space(graphs, w);

      Json j;
      j["ids"] = space.ids;
      j["labels"] = Json::array();
      for (const auto& l : space.labels) j["labels"].push_back(l ? to_json(*l) : Json());
      j["weights"] = to_json(space.weights);
      j["distances"] = Json::array();
      for (Eigen::Index i = 0; i < space.distances.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < space.distances.cols(); ++c) row.push_back(space.distances(i, c));
        j["distances"].push_back(row);
      }
      if (graphs.size() >= 3) {
        const auto coords = mds_project(space);
        j["coordinates"] = Json::array();
        for (Eigen::Index i = 0; i < coords.rows(); ++i) j["coordinates"].push_back({coords(i, 0), coords(i, 1)});
        if (!svg_path.empty()) write_text_file(svg_path, state_space_svg(space, coords));
      } else if (!svg_path.empty()) {
        throw ValidationError("an MDS plot needs at least 3 networks");
      }
      emit(out_path, dump(j), out);
    } else if (command == "classify") {
      const auto g = read_edgelist_file(in);
      const auto kinds = mechanisms.empty() ? std::vector<Mechanism>(kAllMechanisms.begin(), kAllMechanisms.end())
                                            : parse_mechanism_list(mechanisms);
      const auto w = resolve_weights(rc);
      const auto report = classify(g, kinds, rc.alpha, w.weights, rng, simulation(rc));
      emit(out_path, dump(to_json(report)), out);
    } else if (command == "estimate-param") {
      const auto g = read_edgelist_file(in);
      const auto kind = parse_mechanism(mechanism);
      const auto w = resolve_weights(rc);
      Json j;
      j["mechanism"] = std::string(to_string(kind));
      j["estimate"] = estimate_param(g, kind, w.weights, rng, simulation(rc));
      emit(out_path, dump(j), out);
    } else if (command == "roc") {
      const auto w = resolve_weights(rc);
      const auto result = roc_evaluate({per_mechanism, rc.nodes}, w.weights, rng, simulation(rc));
      std::string csv = "mechanism,threshold,fpr,tpr,auc\n";
      for (const auto& c : result.curves)
        for (const auto& p : c.points)
          csv += std::string(to_string(c.kind)) + "," + csv_number(p.threshold) + "," + csv_number(p.fpr) + "," +
                 csv_number(p.tpr) + "," + csv_number(c.auc) + "\n";
      emit(out_path, csv, out);
      if (!svg_path.empty()) write_text_file(svg_path, roc_svg(result));
    } else if (command == "ascendency") {
      emit(out_path, dump(to_json(ascendency(read_edgelist_file(in)))), out);
    } else if (command == "predict") {
      const auto g = read_edgelist_file(in);
      const auto entries = panel_from_json(read_json_file(panel_path));
      const auto w = resolve_weights(rc);
      Json j;
      j["k"] = k;
      j["predicted_normalized_ascendency"] = predict_function(g, entries, w.weights, k);
      emit(out_path, dump(j), out);
    } else if (command == "identifiability") {
      const auto [lo, hi] = parse_count_range(counts);
      const auto w = resolve_weights(rc);
      std::string csv = "mechanism_count,repetition,mechanisms,correlation,degenerate,pairs\n";
      for (std::size_t m = lo; m <= hi; ++m)
        for (std::size_t r = 0; r < repetitions; ++r) {
          const auto res = identifiability_experiment(m, size, rng.derive("identifiability", m, r), w.weights, rc.nodes);
          std::string names;
          for (auto kind : res.mechanisms) names += (names.empty() ? "" : ";") + std::string(to_string(kind));
          csv += std::to_string(m) + "," + std::to_string(r) + "," + names + "," +
                 csv_number(res.correlation.r) + "," + (res.correlation.degenerate ? "true" : "false") + "," +
                 std::to_string(res.pairs) + "\n";
        }
      emit(out_path, csv, out);
    } else if (command == "mixture-panel") {
      MixturePanelConfig config;
      config.size = size;
      config.nodes = rc.nodes;
      if (!mechanisms.empty()) config.mechanisms = parse_mechanism_list(mechanisms);
      emit(out_path, dump(panel_to_json(generate_mixture_panel(config, rng))), out);
    } else if (command == "loo") {
      const auto entries = panel_from_json(read_json_file(panel_path));
      const auto w = resolve_weights(rc);
      const auto res = loo_evaluate(entries, w.weights, k);
      Json j;
      j["k"] = k;
      j["pearson_r"] = res.correlation.r;
      j["degenerate"] = res.correlation.degenerate;
      j["rmse"] = res.rmse;
      j["pairs"] = Json::array();
      for (std::size_t i = 0; i < res.pairs.size(); ++i)
        j["pairs"].push_back({{"id", entries[i].id}, {"predicted", res.pairs[i].predicted}, {"actual", res.pairs[i].actual}});
      emit(out_path, dump(j), out);
    } else if (command == "fit-weights") {
      ReferencePanel ref;
      ref.values_per_mechanism = values;
      ref.replicates = rc.replicates;
      ref.nodes = rc.nodes;
      ref.seed = rc.seed;
      emit(out_path, dump(to_json(fit_reference_weights(ref))), out);
    }
  } catch (const UsageError& e) {
    err << error_json("usage", e.what()).dump() << "\n";
    return 2;
  } catch (const ParseError& e) {
    err << error_json("parse", e.what(), e.line()).dump() << "\n";
    return 1;
  } catch (const ValidationError& e) {
    err << error_json("validation", e.what()).dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << error_json("input", e.what()).dump() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace netclass::cli
