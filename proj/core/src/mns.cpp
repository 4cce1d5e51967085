#include "wshed/mns.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "wshed/error.hpp"

namespace wshed {

MnsLabels mns_label(const StreamTree& tree) {
  const std::size_t n = tree.size();
  MnsLabels out;
  out.ids_.assign(tree.ids().begin(), tree.ids().end());
  out.d_.assign(n, 0);
  out.f_.assign(n, 0);
  out.delta_.assign(n, 0);
  out.by_d_.reserve(n);

  struct Frame {
    std::size_t vertex;
    std::size_t next_child;
  };
  std::vector<Frame> stack;
  std::int64_t clock = 1;
  std::int64_t depth = 0;
  std::uint64_t events = 0;

  auto discover = [&](std::size_t v) {
    out.d_[v] = clock++;
    out.delta_[v] = depth;
    out.by_d_.push_back(v);
    stack.push_back({v, 0});
    ++events;
  };

  discover(tree.root());
  while (!stack.empty()) {
    Frame& top = stack.back();
    auto kids = tree.children(top.vertex);
    if (top.next_child < kids.size()) {
      const std::size_t child = kids[top.next_child++];
      ++depth;
      discover(child);
      continue;
    }
    // Largest discovery time handed out so far belongs to this subtree.
    out.f_[top.vertex] = clock - 1;
    stack.pop_back();
    if (!stack.empty()) {
      --depth;
      ++events;
    }
  }
  out.events_ = events;
  return out;
}

MnsLabels MnsLabels::from_columns(std::vector<ReachId> ids, std::vector<std::int64_t> d,
                                  std::vector<std::int64_t> f,
                                  std::vector<std::int64_t> delta) {
  const std::size_t n = ids.size();
  if (d.size() != n || f.size() != n || delta.size() != n)
    throw Error(ErrorCode::ParseError, "label columns differ in length");
  if (n == 0) throw Error(ErrorCode::ParseError, "no labeled vertices");
  for (std::size_t i = 1; i < n; ++i)
    if (!(ids[i - 1] < ids[i])) throw Error(ErrorCode::ParseError, "ids not strictly ascending");

  const auto count = static_cast<std::int64_t>(n);
  std::vector<std::size_t> by_d(n, n);
  for (std::size_t v = 0; v < n; ++v) {
    if (d[v] < 1 || d[v] > count || by_d[d[v] - 1] != n) {
      std::ostringstream os;
      os << "discovery time " << d[v] << " of reach " << ids[v] << " is not a permutation slot";
      throw Error(ErrorCode::ParseError, os.str());
    }
    if (f[v] < d[v] || f[v] > count || delta[v] < 0) {
      std::ostringstream os;
      os << "reach " << ids[v] << " has inconsistent labels";
      throw Error(ErrorCode::ParseError, os.str());
    }
    by_d[d[v] - 1] = v;
  }
  // Preorder structure: d = 1 is the root spanning everything; each next
  // vertex in d order is a child of the innermost open interval containing it.
  if (f[by_d[0]] != count || delta[by_d[0]] != 0)
    throw Error(ErrorCode::ParseError, "d = 1 vertex is not a root spanning all vertices");
  std::vector<std::size_t> open{by_d[0]};
  for (std::size_t k = 1; k < n; ++k) {
    const std::size_t v = by_d[k];
    while (!open.empty() && f[open.back()] < d[v]) open.pop_back();
    if (open.empty() || f[v] > f[open.back()] || delta[v] != delta[open.back()] + 1) {
      std::ostringstream os;
      os << "reach " << ids[v] << " does not nest inside its enclosing interval";
      throw Error(ErrorCode::ParseError, os.str());
    }
    open.push_back(v);
  }

  MnsLabels out;
  out.ids_ = std::move(ids);
  out.d_ = std::move(d);
  out.f_ = std::move(f);
  out.delta_ = std::move(delta);
  out.by_d_ = std::move(by_d);
  return out;
}

std::optional<std::size_t> MnsLabels::find(ReachId id) const noexcept {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) return std::nullopt;
  return static_cast<std::size_t>(it - ids_.begin());
}

std::size_t MnsLabels::index(ReachId id) const {
  if (auto v = find(id)) return *v;
  std::ostringstream os;
  os << "reach " << id << " is not labeled";
  throw Error(ErrorCode::UnknownReach, os.str());
}

std::span<const std::size_t> MnsLabels::upstream(std::size_t v) const {
  const auto first = static_cast<std::size_t>(d_[v] - 1);
  const auto count = static_cast<std::size_t>(f_[v] - d_[v] + 1);
  return std::span<const std::size_t>(by_d_).subspan(first, count);
}

std::vector<ReachId> upstream_set(const MnsLabels& labels, ReachId v) {
  std::vector<ReachId> out;
  for (std::size_t w : labels.upstream(labels.index(v))) out.push_back(labels.id(w));
  return out;
}

std::int64_t height(const MnsLabels& labels) {
  std::int64_t h = 0;
  for (std::size_t v = 0; v < labels.size(); ++v) h = std::max(h, labels.delta(v));
  return h;
}

}  // namespace wshed
