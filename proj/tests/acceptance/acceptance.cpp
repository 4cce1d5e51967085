// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"

using namespace wshed;
using namespace wshed::testing;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Shapes: uniform attachment (shallow), windowed attachment (deep).
RawNetwork shaped_tree(std::size_t n, std::uint64_t seed) {
  const std::size_t windows[] = {0, 2, 8, 64};
  return random_raw_tree(n, seed, windows[seed % 4]);
}

std::vector<std::int64_t> subtree_max_d(const StreamTree& tree, const MnsLabels& labels) {
  // Children always carry larger d than parents, so one sweep in decreasing d
  // order propagates maxima upward. Uses parent pointers only.
  std::vector<std::int64_t> best(tree.size());
  std::vector<std::size_t> by_d(tree.size());
  for (std::size_t v = 0; v < tree.size(); ++v) {
    best[v] = labels.d(v);
    by_d[static_cast<std::size_t>(labels.d(v) - 1)] = v;
  }
  for (auto it = by_d.rbegin(); it != by_d.rend(); ++it) {
    const std::size_t p = tree.parent(*it);
    if (p != StreamTree::npos) best[p] = std::max(best[p], best[*it]);
  }
  return best;
}

Fixture synthetic(std::size_t n, std::uint64_t seed, std::int32_t side) {
  SyntheticSpec spec;
  spec.n = n;
  spec.width = side;
  spec.height = side;
  spec.seed = seed;
  SyntheticNetwork net = generate(spec);
  return make_fixture(std::move(net.tree), net.raster);
}

std::int32_t side_for(std::size_t n) {
  return static_cast<std::int32_t>(std::ceil(std::sqrt(static_cast<double>(n) * 3.0)));
}

double max_layers(std::int64_t h, int b) {
  return std::ceil(std::log(std::max<double>(static_cast<double>(h), 2.0)) / std::log(b) - 1e-12) + 1.0;
}

// Criteria 1 and 2 share their trees.
Outcome mns_suite(bool interval_part) {
  Outcome out;
  double slowest = 0;
  std::uint64_t mismatches = 0;
  std::size_t trees = 0;
  std::size_t pairs = 0;
  for (std::size_t n : {10u, 100u, 1000u, 100000u}) {
    if (interval_part && n > 2000) continue;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const StreamTree tree = normalize(shaped_tree(n, seed * 1000 + n));
      const auto t0 = std::chrono::steady_clock::now();
      const MnsLabels labels = mns_label(tree);
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      slowest = std::max(slowest, secs);
      ++trees;

      if (interval_part) {
        const auto up = brute_upstream(tree);
        for (std::size_t v = 0; v < n; ++v) {
          std::vector<std::size_t> got;
          for (ReachId id : upstream_set(labels, tree.id(v))) got.push_back(tree.index(id));
          std::sort(got.begin(), got.end());
          mismatches += got != up[v];
          ++pairs;
        }
        continue;
      }

      std::vector<bool> seen(n + 1, false);
      for (std::size_t v = 0; v < n; ++v) {
        const std::int64_t d = labels.d(v);
        if (d < 1 || d > static_cast<std::int64_t>(n) || seen[static_cast<std::size_t>(d)]) ++mismatches;
        else seen[static_cast<std::size_t>(d)] = true;
      }
      const auto best = n <= 2000 ? std::vector<std::int64_t>{} : subtree_max_d(tree, labels);
      const auto up = n <= 2000 ? brute_upstream(tree) : std::vector<std::vector<std::size_t>>{};
      const auto depth = n <= 2000 ? brute_depth(tree) : std::vector<std::int64_t>{};
      for (std::size_t v = 0; v < n; ++v) {
        std::int64_t expect_f = 0;
        if (n <= 2000) {
          for (std::size_t w : up[v]) expect_f = std::max(expect_f, labels.d(w));
          mismatches += labels.delta(v) != depth[v];
        } else {
          expect_f = best[v];
        }
        mismatches += labels.f(v) != expect_f;
        mismatches += (labels.d(v) == labels.f(v)) != tree.is_leaf(v);
      }
      mismatches += labels.traversal_events() != 2 * n - 1;
    }
  }
  if (interval_part) {
    out.pass = mismatches == 0;
    out.detail = fmt("%zu trees, %zu vertices checked, %llu mismatches", trees, pairs,
                     static_cast<unsigned long long>(mismatches));
  } else {
    out.pass = mismatches == 0 && slowest < 1.0;
    out.detail = fmt("%zu trees, %llu violations, slowest labeling %.3f s (limit 1 s)", trees,
                     static_cast<unsigned long long>(mismatches), slowest);
  }
  return out;
}

Outcome layer_bound() {
  Outcome out;
  std::size_t indices = 0;
  std::size_t violations = 0;
  std::size_t worst_slack = 99;
  auto check = [&](const Fixture& fx) {
    const std::int64_t h = height(fx.labels);
    for (int b : {2, 3, 4, 6}) {
      const LrgIndex index = build_lrg(fx.tree, fx.labels, fx.catchments, b).index;
      const double bound = max_layers(h, b);
      ++indices;
      if (static_cast<double>(layer_count(index)) > bound) ++violations;
      worst_slack = std::min(worst_slack, static_cast<std::size_t>(bound) - std::min<std::size_t>(layer_count(index), static_cast<std::size_t>(bound)));
    }
  };
  for (std::size_t n : {10u, 100u, 1000u})
    for (std::uint64_t seed = 0; seed < 50; ++seed)
      check(strip_fixture(normalize(shaped_tree(n, seed * 1000 + n))));
  for (std::uint64_t seed = 0; seed < 10; ++seed) check(synthetic(2000, seed, side_for(2000)));
  for (std::uint64_t seed = 0; seed < 4; ++seed)
    check(strip_fixture(normalize(shaped_tree(100000, seed * 1000 + 100000))));

  const Fixture path = strip_fixture(normalize(path_raw(601)));
  const std::size_t layers = layer_count(build_lrg(path.tree, path.labels, path.catchments, 2).index);
  out.pass = violations == 0 && layers == 11 && height(path.labels) == 600;
  out.detail = fmt("%zu indices, %zu over the bound, min slack %zu; height-600 path at b=2 -> %zu layers",
                   indices, violations, worst_slack, layers);
  return out;
}

Outcome storage_identity() {
  Outcome out;
  std::size_t indices = 0;
  std::size_t bad = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t n = 50 + seed * 97;
    const Fixture fx = seed % 2 == 0 ? synthetic(n, seed, side_for(n))
                                     : strip_fixture(normalize(shaped_tree(n, seed)));
    for (int b : {2, 3, 4, 5, 6, 8}) {
      const LrgIndex index = build_lrg(fx.tree, fx.labels, fx.catchments, b).index;
      ++indices;
      bad += storage_stats(index).polygon_count != fx.tree.size();
    }
  }
  out.pass = bad == 0;
  out.detail = fmt("%zu indices, %zu with stored polygons != |V|", indices, bad);
  return out;
}

Outcome sw_correctness() {
  Outcome out;
  std::mt19937_64 rng(2024);
  std::size_t queries = 0;
  std::size_t wrong_cells = 0;
  std::size_t double_counted = 0;
  for (std::uint64_t net = 0; net < 50; ++net) {
    const std::size_t n = 200 + rng() % 1801;
    const Fixture fx = synthetic(n, 500 + net, side_for(n));
    std::vector<LrgIndex> indices;
    for (int b : {2, 3, 4, 6}) indices.push_back(build_lrg(fx.tree, fx.labels, fx.catchments, b).index);
    for (std::size_t v = 0; v < n; ++v) {
      const WatershedResult base = baseline_query(fx.labels, fx.catchments, fx.tree.id(v));
      for (const LrgIndex& index : indices) {
        const WatershedResult sw = stitch_watershed(index, fx.tree.id(v));
        ++queries;
        wrong_cells += !sw.cells.same_cells(base.cells);
        std::size_t slab_area = 0;
        for (std::size_t s : stitched_slabs(index, v)) slab_area += index.vertex(s).slab.area();
        double_counted += slab_area != sw.cells.area();
      }
    }
  }
  out.pass = wrong_cells == 0 && double_counted == 0;
  out.detail = fmt("%zu queries over 50 networks x b in {2,3,4,6}: %zu cell-set mismatches, %zu area mismatches",
                   queries, wrong_cells, double_counted);
  return out;
}

Outcome cross_model() {
  Outcome out;
  std::size_t compared = 0;
  std::size_t differ = 0;
  for (std::uint64_t net = 0; net < 10; ++net) {
    const std::size_t n = 2000 - net * 150;
    const Fixture fx = synthetic(n, 900 + net, side_for(n));
    const ProcessedModel processed = processed_build(fx.tree, fx.labels, fx.catchments);
    for (std::size_t v = 0; v < n; ++v) {
      const WatershedResult base = baseline_query(fx.labels, fx.catchments, fx.tree.id(v));
      ++compared;
      differ += to_wkt(processed.boundaries[v]) != to_wkt(base.boundary);
    }
  }
  out.pass = differ == 0;
  out.detail = fmt("%zu vertices over 10 networks, %zu boundary texts differ", compared, differ);
  return out;
}

Outcome reduction_direction() {
  Outcome out;
  for (std::uint64_t seed = 1; seed < 20; ++seed) {
    const Fixture fx = synthetic(15000, seed, 200);
    if (height(fx.labels) < 100) continue;
    const std::vector<int> bs{2, 4, 6};
    const MetricsReport report = compare_models(fx.tree, fx.labels, fx.catchments, bs);
    const ModelRow& base = report.row("baseline");
    const ModelRow& proc = report.row("processed");
    std::ostringstream detail;
    detail << fmt("n=15000 seed=%llu height=%lld;", static_cast<unsigned long long>(seed),
                  static_cast<long long>(report.height));
    for (std::size_t i = 0; i < bs.size(); ++i) {
      const ModelRow& lrg = report.rows[i + 1];
      const double pre = static_cast<double>(lrg.preprocessing_polygons) /
                         static_cast<double>(proc.preprocessing_polygons);
      const double query = lrg.query_avg_polygons / base.query_avg_polygons;
      out.pass &= pre <= 0.10 && query <= 0.25;
      detail << fmt(" b=%d pre %.4f (%llu/%llu) query %.4f (%.2f/%.2f);", bs[i], pre,
                    static_cast<unsigned long long>(lrg.preprocessing_polygons),
                    static_cast<unsigned long long>(proc.preprocessing_polygons), query,
                    lrg.query_avg_polygons, base.query_avg_polygons);
    }
    out.detail = detail.str();
    return out;
  }
  out.pass = false;
  out.detail = "no seed produced height >= 100";
  return out;
}

Outcome linearity() {
  Outcome out;
  std::vector<double> x;
  std::vector<double> y;
  std::ostringstream detail;
  for (std::size_t n : {1000u, 10000u, 100000u}) {
    const Fixture fx = synthetic(n, 7, side_for(n));
    const LrgBuild build = build_lrg(fx.tree, fx.labels, fx.catchments, 2);
    x.push_back(std::log(static_cast<double>(n)));
    y.push_back(std::log(static_cast<double>(build.ledger.union_operands)));
    detail << fmt("n=%zu operands=%llu; ", n, static_cast<unsigned long long>(build.ledger.union_operands));
  }
  const double k = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  out.pass = slope >= 0.8 && slope <= 1.2;
  detail << fmt("log-log slope %.4f (allowed [0.8, 1.2])", slope);
  out.detail = detail.str();
  return out;
}

Outcome geometry() {
  Outcome out;
  const BoundaryPolygon single = trace_boundary(CellCatchment(ReachId{1}, {Cell{0, 0}}));
  std::vector<Cell> ring;
  for (int c = 0; c < 3; ++c)
    for (int r = 0; r < 3; ++r)
      if (c != 1 || r != 1) ring.push_back(Cell{c, r});
  const BoundaryPolygon hole = trace_boundary(CellCatchment(ReachId{1}, ring));
  const bool shapes = single.node_count() == 4 && single.ring_count() == 1 &&
                      hole.node_count() == 8 && hole.ring_count() == 2;

  std::mt19937_64 rng(31337);
  std::size_t additivity_bad = 0;
  std::size_t round_trip_bad = 0;
  std::size_t largest = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const int side = 1 + static_cast<int>(rng() % 100);
    const double fill = 0.15 + 0.8 * static_cast<double>(rng() % 1000) / 1000.0;
    std::bernoulli_distribution coin(fill);
    std::vector<Cell> left;
    std::vector<Cell> right;
    for (int c = 0; c < side; ++c)
      for (int r = 0; r < side; ++r)
        if (coin(rng)) (c < side / 2 ? left : right).push_back(Cell{c, r});
    if (left.empty()) left.push_back(Cell{-1, 0});
    if (right.empty()) right.push_back(Cell{side, 0});
    const std::vector<CellCatchment> parts{CellCatchment(ReachId{1}, left), CellCatchment(ReachId{2}, right)};
    const CellCatchment u = dissolve(parts);
    additivity_bad += u.area() != parts[0].area() + parts[1].area();
    largest = std::max(largest, u.area());
    const std::vector<Cell> back = rasterize(trace_boundary(u));
    round_trip_bad += !std::equal(back.begin(), back.end(), u.cells().begin(), u.cells().end());
  }
  out.pass = shapes && additivity_bad == 0 && round_trip_bad == 0 && largest <= 10000;
  out.detail = fmt("single cell %llu nodes; 3x3 minus center %llu nodes in %zu rings; "
                   "400 dissolves: %zu area errors, %zu round-trip errors (largest %zu cells)",
                   static_cast<unsigned long long>(single.node_count()),
                   static_cast<unsigned long long>(hole.node_count()), hole.ring_count(),
                   additivity_bad, round_trip_bad, largest);
  return out;
}

Outcome determinism() {
  Outcome out;
  const fs::path dir = fs::temp_directory_path() / ("wshed_acceptance_" + std::to_string(std::random_device{}()));
  fs::create_directories(dir);

  auto run_all = [&](const std::string& tag) {
    SyntheticSpec spec;
    spec.n = 3000;
    spec.width = 100;
    spec.height = 100;
    spec.seed = 12;
    const SyntheticNetwork net = generate(spec);
    std::ostringstream net_text, grid_text;
    write_network(net_text, net.tree);
    write_raster(grid_text, net.raster);
    write_file_atomic(dir / (tag + ".net"), net_text.str());
    write_file_atomic(dir / (tag + ".grid"), grid_text.str());

    std::istringstream net_in(read_file(dir / (tag + ".net")));
    std::istringstream grid_in(read_file(dir / (tag + ".grid")));
    const StreamTree tree = normalize(read_network(net_in));
    const Fixture fx = make_fixture(tree, read_raster(grid_in));
    const LrgIndex index = build_lrg(fx.tree, fx.labels, fx.catchments, 4).index;
    std::ostringstream saved;
    save_index(index, saved);
    write_file_atomic(dir / (tag + ".lrg"), saved.str());

    std::string queries;
    for (std::size_t v = 0; v < fx.tree.size(); v += 37)
      queries += to_wkt(stitch_watershed(index, fx.tree.id(v)).boundary);
    write_file_atomic(dir / (tag + ".wkt"), queries);
    const std::vector<int> bs{2, 4, 6};
    const MetricsReport report = compare_models(fx.tree, fx.labels, fx.catchments, bs);
    write_file_atomic(dir / (tag + ".csv"), format_csv(report));
    write_file_atomic(dir / (tag + ".txt"), format_table(report));
  };
  run_all("a");
  run_all("b");

  std::size_t differ = 0;
  for (const char* ext : {".net", ".grid", ".lrg", ".wkt", ".csv", ".txt"})
    differ += read_file(dir / (std::string("a") + ext)) != read_file(dir / (std::string("b") + ext));

  const std::string first = read_file(dir / "a.lrg");
  std::istringstream in(first);
  std::ostringstream again;
  save_index(load_index(in), again);
  const bool round_trip = again.str() == first;
  fs::remove_all(dir);

  out.pass = differ == 0 && round_trip;
  out.detail = fmt("6 artifact kinds, %zu differ between runs; save/load/save %s (%zu bytes)", differ,
                   round_trip ? "identical" : "differs", first.size());
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "labeling invariants", [] { return mns_suite(false); }},
      {2, "interval query oracle", [] { return mns_suite(true); }},
      {3, "layer count bound", layer_bound},
      {4, "storage identity", storage_identity},
      {5, "stitched watershed correctness", sw_correctness},
      {6, "cross-model boundaries", cross_model},
      {7, "reduction direction", reduction_direction},
      {8, "linear build work", linearity},
      {9, "geometry", geometry},
      {10, "determinism and persistence", determinism},
  };

  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %2d %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
