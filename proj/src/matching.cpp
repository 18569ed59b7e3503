#include "matching.hpp"

#include <algorithm>
#include <deque>

namespace gsd {

namespace {

bool try_augment(const BipartiteGraph& g, int l, std::vector<int>& l2r,
                 std::vector<int>& r2l, std::vector<char>& seen) {
  for (int r : g.adj[l]) {
    if (seen[r]) continue;
    seen[r] = 1;
    if (r2l[r] == -1 || try_augment(g, r2l[r], l2r, r2l, seen)) {
      l2r[l] = r;
      r2l[r] = l;
      return true;
    }
  }
  return false;
}

}  // namespace

Matching maximum_matching(const BipartiteGraph& g) {
  Matching m;
  m.left_to_right.assign(g.left_count, -1);
  m.right_to_left.assign(g.right_count, -1);
  for (std::size_t l = 0; l < g.left_count; ++l) {
    std::vector<char> seen(g.right_count, 0);
    if (try_augment(g, static_cast<int>(l), m.left_to_right, m.right_to_left,
                    seen))
      ++m.size;
  }
  return m;
}

KToOneResult k_to_one_surjection(const BipartiteGraph& g, int k) {
  // Clone each right vertex k times; a perfect right-saturating matching
  // of the cloned graph is exactly a k-to-1 assignment.
  BipartiteGraph cg;
  cg.left_count = g.left_count;
  cg.right_count = g.right_count * static_cast<std::size_t>(k);
  cg.adj.resize(g.left_count);
  for (std::size_t l = 0; l < g.left_count; ++l)
    for (int r : g.adj[l])
      for (int c = 0; c < k; ++c) cg.adj[l].push_back(r * k + c);

  Matching m = maximum_matching(cg);

  KToOneResult out;
  if (m.size == cg.right_count) {
    KToOneAssignment a;
    a.k = k;
    a.left_to_right.assign(g.left_count, -1);
    std::size_t used = 0;
    for (std::size_t l = 0; l < g.left_count; ++l)
      if (m.left_to_right[l] != -1) {
        a.left_to_right[l] = m.left_to_right[l] / k;
        ++used;
      }
    a.total = used == g.left_count;
    out.assignment = std::move(a);
    return out;
  }

  // Some clone is unsaturated; alternating reachability from it yields a
  // deficient right set (Hall witness for the k-fold condition).
  std::vector<char> right_vis(g.right_count, 0);
  std::vector<char> left_vis(g.left_count, 0);
  std::deque<int> queue;  // right originals to expand
  for (std::size_t rc = 0; rc < cg.right_count; ++rc)
    if (m.right_to_left[rc] == -1 && !right_vis[rc / k]) {
      right_vis[rc / k] = 1;
      queue.push_back(static_cast<int>(rc / k));
    }
  // From a visited right vertex, all adjacent lefts are reachable (edges
  // into an unsaturated clone set are non-matching); from a visited left
  // we follow its matching edge.
  std::vector<std::vector<int>> radj(g.right_count);
  for (std::size_t l = 0; l < g.left_count; ++l)
    for (int r : g.adj[l]) radj[r].push_back(static_cast<int>(l));
  while (!queue.empty()) {
    int r = queue.front();
    queue.pop_front();
    for (int l : radj[r]) {
      if (left_vis[l]) continue;
      left_vis[l] = 1;
      if (m.left_to_right[l] != -1) {
        int r2 = m.left_to_right[l] / k;
        if (!right_vis[r2]) {
          right_vis[r2] = 1;
          queue.push_back(r2);
        }
      }
    }
  }

  HallViolator v;
  v.k = k;
  for (std::size_t r = 0; r < g.right_count; ++r)
    if (right_vis[r]) v.right_set.push_back(static_cast<int>(r));
  for (std::size_t l = 0; l < g.left_count; ++l)
    if (left_vis[l]) v.left_neighborhood.push_back(static_cast<int>(l));
  out.violator = std::move(v);
  return out;
}

std::string check_k_to_one(const BipartiteGraph& g,
                           const KToOneAssignment& a) {
  if (a.left_to_right.size() != g.left_count) return "assignment arity mismatch";
  std::vector<int> load(g.right_count, 0);
  for (std::size_t l = 0; l < g.left_count; ++l) {
    int r = a.left_to_right[l];
    if (r == -1) continue;
    if (r < 0 || static_cast<std::size_t>(r) >= g.right_count)
      return "target out of range";
    if (!std::binary_search(g.adj[l].begin(), g.adj[l].end(), r)) {
      // adjacency lists may be unsorted in caller-built graphs
      if (std::find(g.adj[l].begin(), g.adj[l].end(), r) == g.adj[l].end())
        return "assignment uses a non-edge";
    }
    ++load[r];
  }
  for (std::size_t r = 0; r < g.right_count; ++r)
    if (load[r] != a.k)
      return "right vertex " + std::to_string(r) + " has load " +
             std::to_string(load[r]) + ", expected " + std::to_string(a.k);
  return "";
}

}  // namespace gsd
