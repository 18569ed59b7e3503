#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace gsd {

// Bipartite graph, adjacency from the left side. Vertices are indices;
// callers keep their own labels.
struct BipartiteGraph {
  std::size_t left_count = 0;
  std::size_t right_count = 0;
  std::vector<std::vector<int>> adj;  // adj[l] = sorted right neighbors
};

struct Matching {
  std::vector<int> left_to_right;  // -1 if unmatched
  std::vector<int> right_to_left;
  std::size_t size = 0;
};

// Kuhn augmenting paths, lefts processed in index order. Deterministic.
Matching maximum_matching(const BipartiteGraph& g);

// k-to-1 surjection onto the right side: every right vertex receives
// exactly k distinct matched lefts, each matched left maps to one right.
struct KToOneAssignment {
  int k = 1;
  std::vector<int> left_to_right;  // -1 = outside the domain
  bool total = false;              // every left vertex is used
};

// Hall-type obstruction: a right set F with |N(F)| < k|F|.
struct HallViolator {
  int k = 1;
  std::vector<int> right_set;
  std::vector<int> left_neighborhood;
};

struct KToOneResult {
  std::optional<KToOneAssignment> assignment;
  std::optional<HallViolator> violator;
};

// Finds a k-to-1 assignment saturating every right vertex, or a Hall
// violator certifying that none exists.
KToOneResult k_to_one_surjection(const BipartiteGraph& g, int k);

// Checks an assignment against the graph edges; returns an error
// message, or empty string if valid.
std::string check_k_to_one(const BipartiteGraph& g,
                           const KToOneAssignment& a);

}  // namespace gsd
