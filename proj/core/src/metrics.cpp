#include "wshed/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "wshed/error.hpp"
#include "wshed/levels.hpp"
#include "wshed/lrg.hpp"
#include "wshed/stitch.hpp"

namespace wshed {

namespace {

std::string fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, value);
  return buf;
}

double mean_band_leaves(const LrgIndex& index) {
  const MnsLabels& labels = index.labels();
  const DepthIndex depths(labels);
  const std::int64_t h = depths.max_depth();
  std::uint64_t leaves = 0;
  for (std::size_t v = 0; v < index.size(); ++v) {
    const LrgVertex& lv = index.vertex(v);
    const std::int64_t last = std::min(h, lv.delta + saturating_pow(index.base(), lv.level) - 1);
    for (std::int64_t depth = lv.delta; depth <= last; ++depth) {
      for (std::size_t w : depths.range(depth, lv.d, lv.f))
        if (depth == last || labels.is_leaf(w)) ++leaves;
    }
  }
  return index.size() == 0 ? 0.0 : static_cast<double>(leaves) / static_cast<double>(index.size());
}

}  // namespace

double reduction(double proposed, double reference) noexcept {
  if (reference == 0.0) return 0.0;
  return 1.0 - proposed / reference;
}

const ModelRow& MetricsReport::row(std::string_view model) const {
  for (const ModelRow& r : rows)
    if (r.model == model) return r;
  throw Error(ErrorCode::InvalidArgument, "no model row named " + std::string(model));
}

MetricsReport compare_models(const StreamTree& tree, const MnsLabels& labels,
                             const CatchmentTable& catchments, std::span<const int> b_values) {
  if (b_values.empty()) throw Error(ErrorCode::InvalidArgument, "at least one b value is required");
  const std::size_t n = tree.size();
  const double count = static_cast<double>(n);

  MetricsReport report;
  report.n = n;
  report.height = height(labels);
  report.b_values.assign(b_values.begin(), b_values.end());

  ModelRow baseline;
  baseline.model = "baseline";
  baseline.storage_polygons = n;
  {
    std::uint64_t polygons = 0;
    std::uint64_t nodes = 0;
    for (std::size_t v = 0; v < n; ++v) {
      baseline.storage_nodes += catchments.node_count(v);
      const QueryCost cost = baseline_cost(labels, catchments, v);
      polygons += cost.polygons;
      nodes += cost.nodes;
    }
    baseline.query_avg_polygons = static_cast<double>(polygons) / count;
    baseline.query_avg_nodes = static_cast<double>(nodes) / count;
  }

  const ProcessedModel processed = processed_costs(tree, labels, catchments);
  report.processed_ledger = processed.ledger;
  ModelRow processed_row;
  processed_row.model = "processed";
  processed_row.preprocessing_polygons = processed.ledger.naive_polygons;
  processed_row.preprocessing_nodes = processed.ledger.naive_nodes;
  processed_row.storage_polygons = n;
  processed_row.storage_nodes = processed.storage_nodes;
  processed_row.query_avg_polygons = 1.0;
  processed_row.query_avg_nodes = 0.0;

  report.rows.push_back(baseline);
  for (int b : b_values) {
    const LrgBuild build = build_lrg(tree, labels, catchments, b);
    ModelRow row;
    row.model = "lrg_sw_b" + std::to_string(b);
    row.b = b;
    row.preprocessing_polygons = build.ledger.union_operands;
    row.preprocessing_nodes = build.ledger.operand_nodes;
    const StorageStats storage = storage_stats(build.index);
    row.storage_polygons = storage.polygon_count;
    row.storage_nodes = storage.node_count;
    std::uint64_t polygons = 0;
    std::uint64_t nodes = 0;
    for (std::size_t v = 0; v < n; ++v) {
      const QueryCost cost = query_cost(build.index, v);
      polygons += cost.polygons;
      nodes += cost.nodes;
    }
    row.query_avg_polygons = static_cast<double>(polygons) / count;
    row.query_avg_nodes = static_cast<double>(nodes) / count;
    report.bandwidth.push_back(mean_band_leaves(build.index));

    Reductions red;
    red.b = b;
    red.preprocessing_polygons =
        reduction(static_cast<double>(row.preprocessing_polygons),
                  static_cast<double>(processed_row.preprocessing_polygons));
    red.preprocessing_nodes = reduction(static_cast<double>(row.preprocessing_nodes),
                                        static_cast<double>(processed_row.preprocessing_nodes));
    red.storage_nodes = reduction(static_cast<double>(row.storage_nodes),
                                  static_cast<double>(processed_row.storage_nodes));
    red.query_polygons = reduction(row.query_avg_polygons, baseline.query_avg_polygons);
    red.query_nodes = reduction(row.query_avg_nodes, baseline.query_avg_nodes);
    report.reductions.push_back(red);
    report.rows.push_back(std::move(row));
  }
  report.rows.push_back(processed_row);
  return report;
}

std::string format_table(const MetricsReport& report) {
  std::vector<std::string> headers{"", ""};
  for (const ModelRow& r : report.rows) {
    if (r.b)
      headers.push_back("(LRG,SW)b=" + std::to_string(*r.b));
    else
      headers.push_back(r.model);
  }

  std::vector<std::vector<std::string>> lines;
  auto add = [&](std::string group, std::string metric, auto getter) {
    std::vector<std::string> cells{std::move(group), std::move(metric)};
    for (const ModelRow& r : report.rows) cells.push_back(getter(r));
    lines.push_back(std::move(cells));
  };
  auto integer = [](std::uint64_t v) { return std::to_string(v); };
  add("Preprocessing", "# of Polygons",
      [&](const ModelRow& r) { return integer(r.preprocessing_polygons); });
  add("", "# of Nodes", [&](const ModelRow& r) { return integer(r.preprocessing_nodes); });
  add("Storage", "# of Polygons", [&](const ModelRow& r) { return integer(r.storage_polygons); });
  add("", "# of Nodes", [&](const ModelRow& r) { return integer(r.storage_nodes); });
  add("Query Complexity", "Avg # of Polygons",
      [](const ModelRow& r) { return fixed(r.query_avg_polygons, 2); });
  add("", "Avg # of Nodes", [](const ModelRow& r) { return fixed(r.query_avg_nodes, 2); });

  std::vector<std::size_t> width(headers.size(), 0);
  for (std::size_t c = 0; c < headers.size(); ++c) width[c] = headers[c].size();
  for (const auto& cells : lines)
    for (std::size_t c = 0; c < cells.size(); ++c) width[c] = std::max(width[c], cells[c].size());

  std::ostringstream os;
  auto emit = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c > 0) os << " | ";
      if (c < 2)
        os << cells[c] << std::string(width[c] - cells[c].size(), ' ');
      else
        os << std::string(width[c] - cells[c].size(), ' ') << cells[c];
    }
    os << '\n';
  };
  os << "n = " << report.n << ", height = " << report.height << '\n';
  emit(headers);
  std::size_t total = 0;
  for (std::size_t w : width) total += w;
  os << std::string(total + 3 * (width.size() - 1), '-') << '\n';
  for (const auto& cells : lines) emit(cells);

  os << "\nReductions (preprocessing/storage vs processed, query vs baseline):\n";
  for (std::size_t i = 0; i < report.reductions.size(); ++i) {
    const Reductions& r = report.reductions[i];
    os << "  b=" << r.b << ": preprocessing polygons " << fixed(100.0 * r.preprocessing_polygons, 2)
       << "%, preprocessing nodes " << fixed(100.0 * r.preprocessing_nodes, 2)
       << "%, storage nodes " << fixed(100.0 * r.storage_nodes, 2) << "%, query polygons "
       << fixed(100.0 * r.query_polygons, 2) << "%, query nodes "
       << fixed(100.0 * r.query_nodes, 2) << "%, mean band leaves "
       << fixed(report.bandwidth[i], 3) << '\n';
  }
  os << "Processed preprocessing (naive / bottom-up): " << report.processed_ledger.naive_polygons
     << " / " << report.processed_ledger.bottom_up_polygons << " polygons, "
     << report.processed_ledger.naive_nodes << " / " << report.processed_ledger.bottom_up_nodes
     << " nodes\n";
  return os.str();
}

std::string format_csv(const MetricsReport& report) {
  std::ostringstream os;
  os << "model,metric,value\n";
  os << "network,n," << report.n << '\n';
  os << "network,height," << report.height << '\n';
  for (const ModelRow& r : report.rows) {
    os << r.model << ",preprocessing_polygons," << r.preprocessing_polygons << '\n';
    os << r.model << ",preprocessing_nodes," << r.preprocessing_nodes << '\n';
    os << r.model << ",storage_polygons," << r.storage_polygons << '\n';
    os << r.model << ",storage_nodes," << r.storage_nodes << '\n';
    os << r.model << ",query_avg_polygons," << fixed(r.query_avg_polygons, 6) << '\n';
    os << r.model << ",query_avg_nodes," << fixed(r.query_avg_nodes, 6) << '\n';
  }
  os << "processed,preprocessing_polygons_bottom_up," << report.processed_ledger.bottom_up_polygons
     << '\n';
  os << "processed,preprocessing_nodes_bottom_up," << report.processed_ledger.bottom_up_nodes
     << '\n';
  for (std::size_t i = 0; i < report.reductions.size(); ++i) {
    const Reductions& r = report.reductions[i];
    const std::string model = "lrg_sw_b" + std::to_string(r.b);
    os << model << ",reduction_preprocessing_polygons," << fixed(r.preprocessing_polygons, 6) << '\n';
    os << model << ",reduction_preprocessing_nodes," << fixed(r.preprocessing_nodes, 6) << '\n';
    os << model << ",reduction_storage_nodes," << fixed(r.storage_nodes, 6) << '\n';
    os << model << ",reduction_query_polygons," << fixed(r.query_polygons, 6) << '\n';
    os << model << ",reduction_query_nodes," << fixed(r.query_nodes, 6) << '\n';
    os << model << ",mean_band_leaves," << fixed(report.bandwidth[i], 6) << '\n';
  }
  return os.str();
}

}  // namespace wshed
