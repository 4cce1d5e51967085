// wshed: build and query log-reduced watershed indices from the command line.
//
// Exit codes: 0 ok, 2 usage, 3 I/O, 4 validation, 5 query.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wshed/wshed.hpp"

namespace fs = std::filesystem;

namespace {

enum ExitCode : int { kOk = 0, kUsage = 2, kIo = 3, kValidation = 4, kQuery = 5 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GenConfig {
  std::size_t n = 0;
  std::string grid;
  std::uint64_t seed = 0;
  std::string out = "network";
  std::string network;
  std::string raster;
  std::vector<double> branching;
};

struct BuildConfig {
  std::string network;
  std::string raster;
  int b = 2;
  std::string index;
};

struct QueryConfig {
  std::string index;
  std::uint64_t reach = 0;
  std::string out;
};

struct BenchConfig {
  std::string network;
  std::string raster;
  std::vector<int> b{2, 4, 6};
  std::string out = "metrics";
  std::string format = "table";
};

void require_input(const std::string& path, const char* flag) {
  if (path.empty()) throw UsageError(std::string(flag) + " is required");
  if (!fs::exists(path)) throw wshed::Error(wshed::ErrorCode::IoError, path + " does not exist");
}

std::pair<std::int32_t, std::int32_t> parse_grid(const std::string& text) {
  const auto x = text.find('x');
  if (x == std::string::npos) throw UsageError("--grid must look like WxH");
  try {
    std::size_t used_w = 0;
    std::size_t used_h = 0;
    const long w = std::stol(text.substr(0, x), &used_w);
    const long h = std::stol(text.substr(x + 1), &used_h);
    if (used_w != x || used_h != text.size() - x - 1 || w <= 0 || h <= 0 || w > 1 << 20 ||
        h > 1 << 20)
      throw UsageError("--grid must look like WxH with positive integers");
    return {static_cast<std::int32_t>(w), static_cast<std::int32_t>(h)};
  } catch (const std::logic_error&) {
    throw UsageError("--grid must look like WxH with positive integers");
  }
}

struct Inputs {
  wshed::StreamTree tree;
  wshed::MnsLabels labels;
  wshed::CatchmentTable catchments;
};

Inputs load_inputs(const std::string& network_path, const std::string& raster_path) {
  std::istringstream network_text(wshed::read_file(network_path));
  std::istringstream raster_text(wshed::read_file(raster_path));
  wshed::StreamTree tree = wshed::normalize(wshed::read_network(network_text));
  const wshed::GridRaster raster = wshed::read_raster(raster_text);
  wshed::MnsLabels labels = wshed::mns_label(tree);
  wshed::CatchmentTable catchments(tree, wshed::partition_from_raster(raster, tree));
  return Inputs{std::move(tree), std::move(labels), std::move(catchments)};
}

int run_gen(const GenConfig& cfg) {
  if (cfg.n == 0) throw UsageError("--n must be at least 1");
  const auto [width, height] = parse_grid(cfg.grid);
  wshed::SyntheticSpec spec;
  spec.n = cfg.n;
  spec.width = width;
  spec.height = height;
  spec.seed = cfg.seed;
  if (!cfg.branching.empty()) spec.branching = cfg.branching;

  const wshed::SyntheticNetwork net = wshed::generate(spec);
  const std::string network_path = cfg.network.empty() ? cfg.out + ".net" : cfg.network;
  const std::string raster_path = cfg.raster.empty() ? cfg.out + ".grid" : cfg.raster;
  std::ostringstream network_text;
  wshed::write_network(network_text, net.tree);
  std::ostringstream raster_text;
  wshed::write_raster(raster_text, net.raster);
  wshed::write_file_atomic(network_path, network_text.str());
  wshed::write_file_atomic(raster_path, raster_text.str());

  const wshed::MnsLabels labels = wshed::mns_label(net.tree);
  std::cout << "reaches: " << net.tree.size() << '\n'
            << "height: " << wshed::height(labels) << '\n'
            << "network: " << network_path << '\n'
            << "raster: " << raster_path << '\n';
  return kOk;
}

int run_build(const BuildConfig& cfg) {
  require_input(cfg.network, "--network");
  require_input(cfg.raster, "--raster");
  if (cfg.index.empty()) throw UsageError("--index is required");
  if (cfg.b < 2) throw UsageError("--b must be at least 2");

  const Inputs in = load_inputs(cfg.network, cfg.raster);
  const wshed::LrgBuild build = wshed::build_lrg(in.tree, in.labels, in.catchments, cfg.b);
  std::ostringstream text;
  wshed::save_index(build.index, text);
  wshed::write_file_atomic(cfg.index, text.str());

  const wshed::StorageStats storage = wshed::storage_stats(build.index);
  std::cout << "reaches: " << in.tree.size() << '\n'
            << "excluded: " << in.tree.excluded().size() << '\n'
            << "height: " << wshed::height(in.labels) << '\n'
            << "b: " << cfg.b << '\n'
            << "layer_count: " << wshed::layer_count(build.index) << '\n'
            << "storage_polygons: " << storage.polygon_count << '\n'
            << "storage_nodes: " << storage.node_count << '\n'
            << "preprocessing_polygons: " << build.ledger.union_operands << '\n'
            << "preprocessing_nodes: " << build.ledger.operand_nodes << '\n'
            << "index: " << cfg.index << '\n';
  return kOk;
}

int run_query(const QueryConfig& cfg) {
  require_input(cfg.index, "--index");
  if (cfg.reach == 0) throw UsageError("--reach must be a positive reach id");
  std::istringstream text(wshed::read_file(cfg.index));
  const wshed::LrgIndex index = wshed::load_index(text);

  if (!index.labels().find(wshed::ReachId{cfg.reach})) {
    std::cerr << "error: UnknownReach: reach " << cfg.reach << " is not in the index\n";
    return kQuery;
  }
  const wshed::WatershedResult result = wshed::stitch_watershed(index, wshed::ReachId{cfg.reach});
  const std::string wkt = wshed::to_wkt(result.boundary);
  if (cfg.out.empty())
    std::cout << wkt;
  else
    wshed::write_file_atomic(cfg.out, wkt);
  std::cout << "merged_polygons: " << result.merged_polygons << '\n'
            << "merged_nodes: " << result.merged_nodes << '\n'
            << "area: " << result.cells.area() << '\n'
            << "boundary_nodes: " << result.boundary.node_count() << '\n';
  return kOk;
}

int run_bench(const BenchConfig& cfg) {
  require_input(cfg.network, "--network");
  require_input(cfg.raster, "--raster");
  if (cfg.b.empty()) throw UsageError("--b needs at least one value");
  for (int b : cfg.b)
    if (b < 2) throw UsageError("--b values must be at least 2");

  const Inputs in = load_inputs(cfg.network, cfg.raster);
  const wshed::MetricsReport report =
      wshed::compare_models(in.tree, in.labels, in.catchments, cfg.b);
  const std::string table = wshed::format_table(report);
  const std::string csv = wshed::format_csv(report);
  wshed::write_file_atomic(cfg.out + ".txt", table);
  wshed::write_file_atomic(cfg.out + ".csv", csv);
  std::cout << (cfg.format == "csv" ? csv : table);
  return kOk;
}

int exit_code_for(wshed::ErrorCode code) {
  using wshed::ErrorCode;
  switch (code) {
    case ErrorCode::IoError: return kIo;
    case ErrorCode::InvalidArgument:
    case ErrorCode::InvalidBase:
    case ErrorCode::GridTooSmall: return kUsage;
    default: return kValidation;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Log-reduced watershed index: generate, build, query, bench"};
  app.require_subcommand(1);

  GenConfig gen;
  auto* gen_cmd = app.add_subcommand("gen", "Write a synthetic network and raster");
  gen_cmd->add_option("--n", gen.n, "Number of reaches")->required();
  gen_cmd->add_option("--grid", gen.grid, "Grid size WxH")->required();
  gen_cmd->add_option("--seed", gen.seed, "Random seed");
  gen_cmd->add_option("--out", gen.out, "Output prefix (<prefix>.net, <prefix>.grid)");
  gen_cmd->add_option("--network", gen.network, "Network output path");
  gen_cmd->add_option("--raster", gen.raster, "Raster output path");
  gen_cmd->add_option("--branching", gen.branching, "Weights of 0,1,2,... upstream branches")
      ->delimiter(',');

  BuildConfig build;
  auto* build_cmd = app.add_subcommand("build", "Label the network and persist an LRG index");
  build_cmd->add_option("--network", build.network, "Network file")->required();
  build_cmd->add_option("--raster", build.raster, "Raster file")->required();
  build_cmd->add_option("--b", build.b, "Reduction base (>= 2)");
  build_cmd->add_option("--index", build.index, "Index output path")->required();

  QueryConfig query;
  auto* query_cmd = app.add_subcommand("query", "Stitch the watershed of one reach");
  query_cmd->add_option("--index", query.index, "Index file")->required();
  query_cmd->add_option("--reach", query.reach, "Reach id")->required();
  query_cmd->add_option("--out", query.out, "Boundary output path (default: stdout)");

  BenchConfig bench;
  auto* bench_cmd = app.add_subcommand("bench", "Compare baseline, LRG+SW and processed models");
  bench_cmd->add_option("--network", bench.network, "Network file")->required();
  bench_cmd->add_option("--raster", bench.raster, "Raster file")->required();
  bench_cmd->add_option("--b", bench.b, "Reduction bases, comma separated")->delimiter(',');
  bench_cmd->add_option("--out", bench.out, "Report prefix (<prefix>.txt, <prefix>.csv)");
  bench_cmd->add_option("--format", bench.format, "Report printed to stdout")
      ->check(CLI::IsMember({"table", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*gen_cmd) return run_gen(gen);
    if (*build_cmd) return run_build(build);
    if (*query_cmd) return run_query(query);
    if (*bench_cmd) return run_bench(bench);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const wshed::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  }
  return kUsage;
}
