#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wshed/catchment.hpp"
#include "wshed/mns.hpp"
#include "wshed/network.hpp"
#include "wshed/reference.hpp"

namespace wshed {

/// One column of the comparison table.
struct ModelRow {
  std::string model;  // "baseline", "lrg_sw_b<b>", "processed"
  std::optional<int> b;
  std::uint64_t preprocessing_polygons = 0;
  std::uint64_t preprocessing_nodes = 0;
  std::uint64_t storage_polygons = 0;
  std::uint64_t storage_nodes = 0;
  double query_avg_polygons = 0.0;
  double query_avg_nodes = 0.0;
};

/// 1 - proposed / reference; preprocessing and storage against the processed
/// model, query against the baseline.
struct Reductions {
  int b = 2;
  double preprocessing_polygons = 0.0;
  double preprocessing_nodes = 0.0;
  double storage_nodes = 0.0;
  double query_polygons = 0.0;
  double query_nodes = 0.0;
};

struct MetricsReport {
  std::size_t n = 0;
  std::int64_t height = 0;
  std::vector<int> b_values;
  std::vector<ModelRow> rows;  // baseline, one per b, processed
  std::vector<Reductions> reductions;
  /// Both processed preprocessing conventions; the rows use the naive one.
  ProcessedLedger processed_ledger;
  /// Mean number of band leaves per stored slab, per b.
  std::vector<double> bandwidth;

  [[nodiscard]] const ModelRow& row(std::string_view model) const;
};

/// Runs the baseline, LRG+SW (one index per b) and processed models over the
/// same network. Throws Error(InvalidArgument) when `b_values` is empty.
MetricsReport compare_models(const StreamTree& tree, const MnsLabels& labels,
                             const CatchmentTable& catchments, std::span<const int> b_values);

double reduction(double proposed, double reference) noexcept;

/// Aligned plain-text table.
std::string format_table(const MetricsReport& report);
/// `model,metric,value` lines with a header row.
std::string format_csv(const MetricsReport& report);

}  // namespace wshed
