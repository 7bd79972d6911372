// Command-line front end: run one algorithm on a graph file or generator
// spec and emit results plus the round ledger, or produce the scaling table
// over a size grid.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "congest/blocker.hpp"
#include "congest/broadcast.hpp"
#include "congest/cycles.hpp"
#include "congest/export.hpp"
#include "congest/graph.hpp"
#include "congest/hop_paths.hpp"
#include "congest/ledger.hpp"
#include "congest/mssp.hpp"

namespace fs = std::filesystem;
using namespace congest;

namespace {

struct GenParams {
  NodeId n = 0;
  double deg = 4;
  std::uint64_t seed = 1;
  int wmax = 20;
  bool directed = true;
};

struct ExperimentSpec {
  std::string algo;
  std::string graph_file;
  std::optional<GenParams> gen;
  std::string sources_arg;  // "k" or "id,id,..."
  std::int64_t h = 0;
  std::string out_dir = ".";
  std::string ledger_file;
  std::string format = "json";
  std::int64_t h0_override = 0;
  int beta = 3;
  double blocker_round_constant = 1.0;
};

GenParams parse_gen(const std::string& s) {
  GenParams p;
  std::istringstream is(s);
  std::string tok;
  std::vector<std::string> parts;
  while (std::getline(is, tok, ',')) parts.push_back(tok);
  if (parts.size() != 5)
    throw CLI::ValidationError("--gen", "expected n,deg,seed,wmax,<directed|undirected>");
  p.n = static_cast<NodeId>(std::stoll(parts[0]));
  p.deg = std::stod(parts[1]);
  p.seed = static_cast<std::uint64_t>(std::stoull(parts[2]));
  p.wmax = std::stoi(parts[3]);
  if (parts[4] == "directed")
    p.directed = true;
  else if (parts[4] == "undirected")
    p.directed = false;
  else
    throw CLI::ValidationError("--gen", "direction must be 'directed' or 'undirected'");
  return p;
}

std::vector<NodeId> parse_sources(const std::string& arg, NodeId n) {
  std::vector<NodeId> sources;
  if (arg.empty()) return sources;
  if (arg.find(',') == std::string::npos) {
    // a single integer selects that many lowest-id sources
    long long k = std::stoll(arg);
    for (long long i = 0; i < k && i < n; ++i) sources.push_back(static_cast<NodeId>(i));
    if (k > n) throw GraphError("source count exceeds n");
    return sources;
  }
  std::istringstream is(arg);
  std::string tok;
  while (std::getline(is, tok, ',')) sources.push_back(static_cast<NodeId>(std::stoll(tok)));
  return sources;
}

Graph make_graph(const ExperimentSpec& spec) {
  if (!spec.graph_file.empty()) return Graph::load_file(spec.graph_file);
  if (spec.gen)
    return gen_random(spec.gen->n, spec.gen->deg, spec.gen->seed, spec.gen->wmax,
                      spec.gen->directed);
  throw GraphError("no graph given: use --graph FILE or --gen n,deg,seed,wmax,dir");
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

int cmd_run(const ExperimentSpec& spec) {
  Graph g = make_graph(spec);
  BlockerOptions opt;
  opt.round_constant = spec.blocker_round_constant;
  opt.h0_override = spec.h0_override;
  opt.sim.beta = spec.beta;
  RoundLedger ledger;
  fs::create_directories(spec.out_dir);
  const bool json = spec.format == "json";
  const fs::path out_dir(spec.out_dir);

  if (spec.algo == "mwc-directed" || spec.algo == "ansc-directed") {
    if (!g.directed()) throw GraphError(spec.algo + " requires directed input");
    CycleResult r = directed_ansc(g, ledger, opt);
    if (spec.algo == "mwc-directed") {
      r.global = mwc_broadcast_min(g, r, ledger, opt.sim);
      std::cout << "mwc=" << format_weight(r.global) << "\n";
    } else {
      std::cout << "ansc_min=" << format_weight(r.global) << "\n";
    }
    write_file(out_dir / (json ? "result.json" : "result.csv"),
               json ? cycle_result_json(r, g.integer_weights()) : cycle_result_csv(r));
  } else if (spec.algo == "mwc-undirected") {
    if (g.directed()) throw GraphError("mwc-undirected requires undirected input");
    CycleResult r = undirected_mwc(g, ledger, opt);
    std::cout << "mwc=" << format_weight(r.global) << "\n";
    write_file(out_dir / (json ? "result.json" : "result.csv"),
               json ? cycle_result_json(r, g.integer_weights()) : cycle_result_csv(r));
  } else if (spec.algo == "mssp") {
    std::vector<NodeId> sources = parse_sources(spec.sources_arg, g.n());
    if (sources.empty()) throw GraphError("mssp needs --sources");
    MsspResult r = mssp(g, sources, ledger, opt);
    Weight checksum = 0;
    std::int64_t finite = 0;
    for (const auto& row : r.dist)
      for (Weight w : row)
        if (w != kInfWeight) {
          checksum += w;
          ++finite;
        }
    std::cout << "mssp sources=" << r.sources.size() << " finite=" << finite
              << " checksum=" << format_weight(checksum) << "\n";
    write_file(out_dir / (json ? "result.json" : "result.csv"),
               json ? mssp_json(r, g.integer_weights()) : mssp_csv(r));
  } else if (spec.algo == "blocker-seq") {
    BlockerSequence seq = build_blocker_sequence(g, ledger, opt);
    std::ostringstream sizes;
    for (const BlockerLevel& l : seq.levels)
      sizes << (l.index > 1 ? "," : "") << l.q.size();
    std::cout << "blocker-seq levels=" << seq.level_count() << " sizes=[" << sizes.str()
              << "]\n";
    write_file(out_dir / "sequence.json", blocker_sequence_json(seq));
  } else if (spec.algo == "hop-sssp") {
    std::vector<NodeId> sources = parse_sources(spec.sources_arg, g.n());
    if (sources.empty() || spec.h < 1)
      throw GraphError("hop-sssp needs --sources and --h >= 1");
    std::vector<HopTable> tables =
        multi_source_hop_sssp(g, sources, spec.h, Dir::out, ledger, "hop_sssp", opt.sim);
    for (const HopTable& t : tables) {
      std::ostringstream os;
      write_hop_table_csv(t, os);
      write_file(out_dir / ("hop_" + std::to_string(t.source) + ".csv"), os.str());
    }
    std::cout << "hop-sssp sources=" << tables.size() << " h=" << spec.h << "\n";
  } else {
    throw GraphError("unknown --algo '" + spec.algo + "'");
  }

  fs::path ledger_path =
      spec.ledger_file.empty() ? out_dir / "ledger.csv" : fs::path(spec.ledger_file);
  write_file(ledger_path, ledger.to_csv());
  if (json) write_file(out_dir / "ledger.json", ledger.to_json());
  std::cout << "rounds: measured=" << ledger.total_measured()
            << " modeled=" << ledger.total_modeled() << " total=" << ledger.total() << "\n";
  return 0;
}

int cmd_scaling(const std::vector<NodeId>& sizes, const std::vector<std::uint64_t>& seeds,
                const std::string& algo, double deg, int wmax, double blocker_constant,
                const std::string& out_file) {
  if (sizes.empty()) throw GraphError("scaling: empty size list");
  for (std::size_t i = 1; i < sizes.size(); ++i)
    if (sizes[i] <= sizes[i - 1]) throw GraphError("scaling: sizes must be ascending");
  if (seeds.empty()) throw GraphError("scaling: empty seed list");

  std::ostringstream csv;
  csv << "n,measured,modeled,total,total_per_nlog3\n";
  for (NodeId n : sizes) {
    for (std::uint64_t seed : seeds) {
      BlockerOptions opt;
      opt.round_constant = blocker_constant;
      RoundLedger ledger;
      const bool directed = algo != "mwc-undirected";
      Graph g = gen_random(n, deg, seed, wmax, directed);
      if (algo == "mwc-directed") {
        directed_mwc(g, ledger, opt);
      } else if (algo == "ansc-directed") {
        directed_ansc(g, ledger, opt);
      } else if (algo == "mwc-undirected") {
        undirected_mwc(g, ledger, opt);
      } else if (algo == "mssp") {
        std::vector<NodeId> sources;
        std::int64_t k = static_cast<std::int64_t>(std::ceil(std::sqrt(n)));
        for (std::int64_t i = 0; i < k; ++i) sources.push_back(static_cast<NodeId>(i));
        mssp(g, sources, ledger, opt);
      } else {
        throw GraphError("scaling: unsupported --algo '" + algo + "'");
      }
      const double lg = ceil_log2(n);
      const double norm = static_cast<double>(n) * lg * lg * lg;
      char ratio[32];
      std::snprintf(ratio, sizeof ratio, "%.6f", static_cast<double>(ledger.total()) / norm);
      csv << n << ',' << ledger.total_measured() << ',' << ledger.total_modeled() << ','
          << ledger.total() << ',' << ratio << '\n';
    }
  }
  std::cout << csv.str();
  if (!out_file.empty()) write_file(out_file, csv.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"round-synchronous CONGEST simulator: shortest cycles, blocker sets, MSSP"};
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1);

  ExperimentSpec spec;
  std::string gen_arg;
  CLI::App* run = app.add_subcommand("run", "run one algorithm and write result + ledger");
  run->set_help_flag("--help", "print help");
  run->add_option("--algo", spec.algo,
                  "ansc-directed | mwc-directed | mwc-undirected | mssp | blocker-seq | hop-sssp")
      ->required();
  run->add_option("--graph", spec.graph_file, "graph file (edge-list format)");
  run->add_option("--gen", gen_arg, "generator spec n,deg,seed,wmax,<directed|undirected>");
  run->add_option("--sources", spec.sources_arg, "source count k or id list a,b,c");
  run->add_option("--h", spec.h, "hop bound for hop-sssp");
  run->add_option("--out", spec.out_dir, "output directory (default .)");
  run->add_option("--ledger", spec.ledger_file, "ledger CSV path (default <out>/ledger.csv)");
  run->add_option("--format", spec.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  run->add_option("--h0-override", spec.h0_override, "override h_0 of the blocker sequence");
  run->add_option("--beta", spec.beta, "words per edge per round (default 3)");
  run->add_option("--blocker-round-constant", spec.blocker_round_constant,
                  "multiplier on the modeled blocker-construction charge");

  std::vector<NodeId> sizes;
  std::vector<std::uint64_t> seeds{1, 2, 3};
  std::string scaling_algo = "mwc-directed";
  double scaling_deg = 4;
  int scaling_wmax = 20;
  double scaling_constant = 1.0;
  std::string scaling_out;
  CLI::App* scaling = app.add_subcommand("scaling", "round-scaling table over a size grid");
  scaling->set_help_flag("--help", "print help");
  scaling->add_option("--sizes", sizes, "node counts, ascending")->required()->delimiter(',');
  scaling->add_option("--seeds", seeds, "generator seeds")->delimiter(',');
  scaling->add_option("--algo", scaling_algo, "algorithm to scale");
  scaling->add_option("--deg", scaling_deg, "average degree of generated graphs");
  scaling->add_option("--wmax", scaling_wmax, "max integer edge weight");
  scaling->add_option("--blocker-round-constant", scaling_constant,
                      "multiplier on the modeled blocker-construction charge");
  scaling->add_option("--out", scaling_out, "also write the CSV here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      if (!gen_arg.empty()) spec.gen = parse_gen(gen_arg);
      return cmd_run(spec);
    }
    return cmd_scaling(sizes, seeds, scaling_algo, scaling_deg, scaling_wmax,
                       scaling_constant, scaling_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
