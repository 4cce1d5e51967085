#include "wshed/network.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <string>

#include "wshed/error.hpp"

namespace wshed {

namespace {

std::string join_ids(const std::vector<ReachId>& ids, std::size_t limit = 16) {
  std::ostringstream os;
  for (std::size_t i = 0; i < ids.size() && i < limit; ++i) {
    if (i != 0) os << ", ";
    os << ids[i];
  }
  if (ids.size() > limit) os << ", ... (" << ids.size() << " total)";
  return os.str();
}

}  // namespace

std::ostream& operator<<(std::ostream& os, ReachId id) { return os << id.value; }

std::optional<std::size_t> StreamTree::find(ReachId id) const noexcept {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) return std::nullopt;
  return static_cast<std::size_t>(it - ids_.begin());
}

std::size_t StreamTree::index(ReachId id) const {
  if (auto v = find(id)) return *v;
  std::ostringstream os;
  os << "reach " << id << " is not part of the stream tree";
  throw Error(ErrorCode::UnknownReach, os.str());
}

std::span<const std::size_t> StreamTree::children(std::size_t v) const {
  return std::span<const std::size_t>(children_).subspan(
      child_offsets_[v], child_offsets_[v + 1] - child_offsets_[v]);
}

const ExcludedReach* StreamTree::find_excluded(ReachId id) const noexcept {
  auto it = std::lower_bound(excluded_.begin(), excluded_.end(), id,
                             [](const ExcludedReach& e, ReachId x) { return e.id < x; });
  if (it == excluded_.end() || it->id != id) return nullptr;
  return &*it;
}

StreamTree normalize(const RawNetwork& raw) {
  if (raw.reaches.empty()) throw Error(ErrorCode::EmptyInput, "network has no reaches");

  std::vector<RawReach> reaches = raw.reaches;
  std::sort(reaches.begin(), reaches.end(),
            [](const RawReach& a, const RawReach& b) { return a.id < b.id; });

  const std::size_t n = reaches.size();
  std::vector<ReachId> all_ids(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (reaches[i].id.value == 0)
      throw Error(ErrorCode::InvalidArgument, "reach id 0 is reserved");
    all_ids[i] = reaches[i].id;
    if (i > 0 && all_ids[i] == all_ids[i - 1]) {
      std::ostringstream os;
      os << "reach " << all_ids[i] << " appears more than once";
      throw Error(ErrorCode::DuplicateReach, os.str());
    }
  }

  auto position = [&](ReachId id) -> std::optional<std::size_t> {
    auto it = std::lower_bound(all_ids.begin(), all_ids.end(), id);
    if (it == all_ids.end() || *it != id) return std::nullopt;
    return static_cast<std::size_t>(it - all_ids.begin());
  };

  constexpr std::size_t none = StreamTree::npos;
  std::vector<std::size_t> next(n, none);
  {
    std::vector<ReachId> dangling;
    for (std::size_t i = 0; i < n; ++i) {
      if (!reaches[i].downstream) continue;
      auto p = position(*reaches[i].downstream);
      if (!p) {
        dangling.push_back(reaches[i].id);
        continue;
      }
      next[i] = *p;
    }
    if (!dangling.empty())
      throw Error(ErrorCode::DanglingDownstream,
                  "downstream id not in network for reaches " + join_ids(dangling));
  }

  // Functional graph walk: 0 = unvisited, 1 = on current walk, 2 = done.
  std::vector<std::uint8_t> state(n, 0);
  std::vector<std::size_t> walk;
  for (std::size_t start = 0; start < n; ++start) {
    if (state[start] != 0) continue;
    walk.clear();
    std::size_t cur = start;
    while (cur != none && state[cur] == 0) {
      state[cur] = 1;
      walk.push_back(cur);
      cur = next[cur];
    }
    if (cur != none && state[cur] == 1) {
      std::vector<ReachId> cycle;
      auto it = std::find(walk.begin(), walk.end(), cur);
      for (; it != walk.end(); ++it) cycle.push_back(all_ids[*it]);
      std::sort(cycle.begin(), cycle.end());
      throw Error(ErrorCode::CycleDetected, "reaches " + join_ids(cycle) + " form a cycle");
    }
    for (std::size_t v : walk) state[v] = 2;
  }

  // A reach is excluded when it, or anything on its way to the outlet, is a
  // minor divergence. Resolved iteratively along downstream chains.
  enum : std::uint8_t { Unknown, Keep, Drop };
  std::vector<std::uint8_t> keep(n, Unknown);
  for (std::size_t start = 0; start < n; ++start) {
    walk.clear();
    std::size_t cur = start;
    while (cur != none && keep[cur] == Unknown) {
      if (reaches[cur].divergence == Divergence::Minor) {
        keep[cur] = Drop;
        break;
      }
      walk.push_back(cur);
      cur = next[cur];
    }
    const std::uint8_t verdict = (cur == none) ? std::uint8_t{Keep} : keep[cur];
    for (std::size_t v : walk) keep[v] = verdict;
  }

  std::vector<ReachId> roots;
  for (std::size_t i = 0; i < n; ++i)
    if (keep[i] == Keep && next[i] == none) roots.push_back(all_ids[i]);
  if (roots.empty())
    throw Error(ErrorCode::NoRoot, "no major reach without a downstream id");
  if (roots.size() > 1)
    throw Error(ErrorCode::MultipleRoots, "reaches " + join_ids(roots) + " have no downstream id");

  StreamTree tree;
  std::vector<std::size_t> dense(n, none);
  for (std::size_t i = 0; i < n; ++i) {
    if (keep[i] == Keep) {
      dense[i] = tree.ids_.size();
      tree.ids_.push_back(all_ids[i]);
    } else {
      tree.excluded_.push_back(
          ExcludedReach{all_ids[i], next[i] == none ? std::nullopt
                                                    : std::optional<ReachId>(all_ids[next[i]])});
    }
  }

  const std::size_t m = tree.ids_.size();
  tree.parent_.assign(m, none);
  tree.child_offsets_.assign(m + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (keep[i] != Keep) continue;
    if (next[i] == none) {
      tree.root_ = dense[i];
    } else {
      tree.parent_[dense[i]] = dense[next[i]];
      ++tree.child_offsets_[dense[next[i]] + 1];
    }
  }
  for (std::size_t v = 0; v < m; ++v) tree.child_offsets_[v + 1] += tree.child_offsets_[v];
  tree.children_.resize(m - 1);
  std::vector<std::size_t> fill(tree.child_offsets_.begin(), tree.child_offsets_.end() - 1);
  // Ascending v keeps each child list in ascending id order.
  for (std::size_t v = 0; v < m; ++v) {
    const std::size_t p = tree.parent_[v];
    if (p != none) tree.children_[fill[p]++] = v;
  }
  return tree;
}

std::vector<ReachId> downstream_path(const StreamTree& tree, ReachId v) {
  std::vector<ReachId> path;
  std::optional<ReachId> cur = v;
  // Excluded reaches form chains that end in the tree or at a dead end.
  while (cur) {
    if (tree.find(*cur)) break;
    const ExcludedReach* ex = tree.find_excluded(*cur);
    if (ex == nullptr) {
      if (path.empty()) {
        std::ostringstream os;
        os << "reach " << *cur << " is not part of the network";
        throw Error(ErrorCode::UnknownReach, os.str());
      }
      break;
    }
    path.push_back(ex->id);
    cur = ex->downstream;
  }
  if (!cur) return path;
  for (std::size_t u = tree.index(*cur); u != StreamTree::npos; u = tree.parent(u))
    path.push_back(tree.id(u));
  return path;
}

}  // namespace wshed
