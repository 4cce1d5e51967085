#include "wshed/lrg.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "wshed/boundary.hpp"
#include "wshed/error.hpp"
#include "wshed/levels.hpp"

namespace wshed {

DepthIndex::DepthIndex(const MnsLabels& labels) {
  const std::int64_t h = height(labels);
  groups_.resize(static_cast<std::size_t>(h) + 1);
  group_d_.resize(static_cast<std::size_t>(h) + 1);
  for (std::size_t v : labels.preorder()) {
    const auto depth = static_cast<std::size_t>(labels.delta(v));
    groups_[depth].push_back(v);
    group_d_[depth].push_back(labels.d(v));
  }
}

std::span<const std::size_t> DepthIndex::range(std::int64_t depth, std::int64_t d_lo,
                                               std::int64_t d_hi) const {
  if (depth < 0 || depth > max_depth()) return {};
  const auto& ds = group_d_[static_cast<std::size_t>(depth)];
  const auto lo = std::lower_bound(ds.begin(), ds.end(), d_lo) - ds.begin();
  const auto hi = std::upper_bound(ds.begin(), ds.end(), d_hi) - ds.begin();
  return std::span<const std::size_t>(groups_[static_cast<std::size_t>(depth)])
      .subspan(static_cast<std::size_t>(lo), static_cast<std::size_t>(hi - lo));
}

LrgIndex LrgIndex::assemble(int base, int top_level, std::vector<LrgVertex> vertices) {
  if (base < 2) throw Error(ErrorCode::InvalidBase, "base must be at least 2");
  const std::size_t n = vertices.size();
  std::vector<ReachId> ids(n);
  std::vector<std::int64_t> d(n), f(n), delta(n);
  for (std::size_t v = 0; v < n; ++v) {
    ids[v] = vertices[v].id;
    d[v] = vertices[v].d;
    f[v] = vertices[v].f;
    delta[v] = vertices[v].delta;
  }

  LrgIndex out;
  out.base_ = base;
  out.top_level_ = top_level;
  out.labels_ = MnsLabels::from_columns(std::move(ids), std::move(d), std::move(f),
                                        std::move(delta));
  if (top_level_for(height(out.labels_), base) != top_level) {
    std::ostringstream os;
    os << "top layer " << top_level << " does not match tree height " << height(out.labels_);
    throw Error(ErrorCode::ParseError, os.str());
  }
  for (const LrgVertex& v : vertices) {
    if (v.level != query_level(v.delta, base, top_level) || v.slab.owner() != v.id) {
      std::ostringstream os;
      os << "reach " << v.id << " is stored at level " << v.level;
      throw Error(ErrorCode::ParseError, os.str());
    }
  }
  out.vertices_ = std::move(vertices);

  const MnsLabels& labels = out.labels_;
  const DepthIndex depths(labels);
  out.layers_.resize(static_cast<std::size_t>(top_level) + 1);
  for (int level = 0; level <= top_level; ++level) out.layers_[level].level = level;

  out.frontier_offsets_.assign(n + 1, 0);
  for (std::size_t v : labels.preorder()) {
    const LrgVertex& lv = out.vertices_[v];
    LrgLayer& layer = out.layers_[static_cast<std::size_t>(lv.level)];
    layer.members.push_back(v);
    const std::int64_t next = lv.delta + saturating_pow(base, lv.level);
    for (std::size_t w : depths.range(next, lv.d, lv.f)) layer.edges.emplace_back(v, w);
  }
  // CSR over the layer edges, indexed by the upstream-looking source vertex.
  for (const LrgLayer& layer : out.layers_)
    for (const auto& [u, w] : layer.edges) ++out.frontier_offsets_[u + 1];
  for (std::size_t v = 0; v < n; ++v) out.frontier_offsets_[v + 1] += out.frontier_offsets_[v];
  out.frontier_.resize(out.frontier_offsets_[n]);
  std::vector<std::size_t> fill(out.frontier_offsets_.begin(), out.frontier_offsets_.end() - 1);
  for (const LrgLayer& layer : out.layers_)
    for (const auto& [u, w] : layer.edges) out.frontier_[fill[u]++] = w;
  return out;
}

std::span<const std::size_t> LrgIndex::frontier(std::size_t v) const {
  return std::span<const std::size_t>(frontier_).subspan(
      frontier_offsets_[v], frontier_offsets_[v + 1] - frontier_offsets_[v]);
}

LrgBuild build_lrg(const StreamTree& tree, const MnsLabels& labels,
                   const CatchmentTable& catchments, int b) {
  if (b < 2) {
    std::ostringstream os;
    os << "base b = " << b << " must be at least 2";
    throw Error(ErrorCode::InvalidBase, os.str());
  }
  const std::size_t n = tree.size();
  if (labels.size() != n || catchments.size() != n ||
      !std::equal(tree.ids().begin(), tree.ids().end(), labels.ids().begin()))
    throw Error(ErrorCode::IncompleteInput, "labels or catchments do not cover the tree");

  const std::int64_t h = height(labels);
  const int top = top_level_for(h, b);
  const DepthIndex depths(labels);

  std::vector<int> level(n);
  for (std::size_t v = 0; v < n; ++v) level[v] = query_level(labels.delta(v), b, top);

  BuildLedger ledger;
  ledger.operands_per_layer.assign(static_cast<std::size_t>(top) + 1, 0);
  auto charge = [&ledger](int layer, std::uint64_t operands, std::uint64_t nodes) {
    ledger.union_operands += operands;
    ledger.operand_nodes += nodes;
    ledger.operands_per_layer[static_cast<std::size_t>(layer)] += operands;
  };

  std::vector<std::optional<CellCatchment>> slab(n);
  std::vector<std::uint64_t> slab_nodes(n, 0);
  std::vector<const CellCatchment*> parts;

  // Reverse discovery order: every upstream slab is final before it is read.
  const auto order = labels.preorder();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const std::size_t v = *it;
    CellCatchment acc = catchments[v];
    std::uint64_t acc_nodes = catchments.node_count(v);
    charge(0, 1, acc_nodes);

    for (int j = 1; j <= level[v]; ++j) {
      const std::int64_t step = saturating_pow(b, j - 1);
      parts.assign(1, &acc);
      std::uint64_t nodes = acc_nodes;
      for (int k = 1; k < b; ++k) {
        const std::int64_t depth = labels.delta(v) + k * step;
        if (depth > h) break;
        for (std::size_t w : depths.range(depth, labels.d(v), labels.f(v))) {
          parts.push_back(&*slab[w]);
          nodes += slab_nodes[w];
        }
      }
      charge(j, parts.size(), nodes);
      if (parts.size() > 1) {
        acc = dissolve(std::span<const CellCatchment* const>(parts));
        acc_nodes = boundary_node_count(acc.cells());
      }
    }
    slab[v] = std::move(acc);
    slab_nodes[v] = acc_nodes;
  }

  std::vector<LrgVertex> vertices;
  vertices.reserve(n);
  for (std::size_t v = 0; v < n; ++v) {
    vertices.push_back(LrgVertex{labels.id(v), labels.d(v), labels.f(v), labels.delta(v),
                                 level[v], std::move(*slab[v]), slab_nodes[v]});
  }
  return LrgBuild{LrgIndex::assemble(b, top, std::move(vertices)), std::move(ledger)};
}

StorageStats storage_stats(const LrgIndex& index) {
  StorageStats stats;
  for (const LrgLayer& layer : index.layers()) {
    stats.polygon_count += layer.members.size();
    for (std::size_t v : layer.members) stats.node_count += index.vertex(v).slab_nodes;
  }
  return stats;
}

void save_index(const LrgIndex& index, std::ostream& os) {
  os << "LRG " << index.base() << ' ' << index.top_level() << ' ' << index.size() << '\n';
  std::string line;
  for (const LrgLayer& layer : index.layers()) {
    for (std::size_t v : layer.members) {
      const LrgVertex& lv = index.vertex(v);
      os << lv.id << ' ' << lv.level << ' ' << lv.d << ' ' << lv.f << ' ' << lv.delta << '\n';
      line.assign("c:");
      bool first = true;
      for (const Cell& c : lv.slab.cells()) {
        if (!first) line += ';';
        first = false;
        line += std::to_string(c.col);
        line += ',';
        line += std::to_string(c.row);
      }
      line += '\n';
      os << line;
    }
  }
}

namespace {

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what) {
  std::ostringstream os;
  os << "index line " << line_no << ": " << what;
  throw Error(ErrorCode::ParseError, os.str());
}

std::vector<Cell> parse_cells(std::string_view text, std::size_t line_no) {
  if (text.substr(0, 2) != "c:") parse_fail(line_no, "expected cell list");
  text.remove_prefix(2);
  std::vector<Cell> cells;
  const char* p = text.data();
  const char* end = text.data() + text.size();
  while (p < end) {
    Cell c;
    auto r1 = std::from_chars(p, end, c.col);
    if (r1.ec != std::errc{} || r1.ptr == end || *r1.ptr != ',') parse_fail(line_no, "bad cell");
    auto r2 = std::from_chars(r1.ptr + 1, end, c.row);
    if (r2.ec != std::errc{}) parse_fail(line_no, "bad cell");
    cells.push_back(c);
    p = r2.ptr;
    if (p < end) {
      if (*p != ';') parse_fail(line_no, "bad cell separator");
      ++p;
    }
  }
  return cells;
}

}  // namespace

LrgIndex load_index(std::istream& is) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(is, line)) throw Error(ErrorCode::ParseError, "empty index file");
  std::istringstream header(line);
  std::string magic;
  int base = 0;
  int top = 0;
  std::size_t n = 0;
  if (!(header >> magic >> base >> top >> n) || magic != "LRG")
    parse_fail(line_no, "expected header 'LRG b L n'");
  if (base < 2) throw Error(ErrorCode::InvalidBase, "index base must be at least 2");

  std::vector<LrgVertex> vertices;
  vertices.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    ++line_no;
    if (!std::getline(is, line)) parse_fail(line_no, "missing vertex line");
    std::istringstream fields(line);
    std::uint64_t id = 0;
    int level = 0;
    std::int64_t d = 0, f = 0, delta = 0;
    if (!(fields >> id >> level >> d >> f >> delta) || id == 0)
      parse_fail(line_no, "expected 'id level d f delta'");
    ++line_no;
    if (!std::getline(is, line)) parse_fail(line_no, "missing cell line");
    std::vector<Cell> cells = parse_cells(line, line_no);
    if (cells.empty()) parse_fail(line_no, "empty slab");
    CellCatchment slab(ReachId{id}, std::move(cells));
    const std::uint64_t nodes = boundary_node_count(slab.cells());
    vertices.push_back(LrgVertex{ReachId{id}, d, f, delta, level, std::move(slab), nodes});
  }
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty()) parse_fail(line_no, "trailing content");
  }
  std::sort(vertices.begin(), vertices.end(),
            [](const LrgVertex& a, const LrgVertex& b) { return a.id < b.id; });
  return LrgIndex::assemble(base, top, std::move(vertices));
}

}  // namespace wshed
