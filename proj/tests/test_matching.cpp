#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>

#include "../src/matching.hpp"

using namespace gsd;

namespace {

BipartiteGraph make(std::size_t l, std::size_t r,
                    std::vector<std::vector<int>> adj) {
  BipartiteGraph g;
  g.left_count = l;
  g.right_count = r;
  g.adj = std::move(adj);
  return g;
}

// Brute force: does a k-to-1 right-saturating assignment exist?
bool brute_k_to_one(const BipartiteGraph& g, int k, std::size_t next,
                    std::vector<int>& load, std::size_t assigned,
                    std::size_t needed) {
  if (assigned == needed) return true;
  if (next == g.left_count) return false;
  if (assigned + (g.left_count - next) < needed) return false;
  for (int r : g.adj[next])
    if (load[r] < k) {
      ++load[r];
      if (brute_k_to_one(g, k, next + 1, load, assigned + 1, needed))
        return true;
      --load[r];
    }
  return brute_k_to_one(g, k, next + 1, load, assigned, needed);
}

bool brute_feasible(const BipartiteGraph& g, int k) {
  std::vector<int> load(g.right_count, 0);
  return brute_k_to_one(g, k, 0, load, 0, g.right_count * k);
}

std::size_t brute_max_matching(const BipartiteGraph& g, std::size_t next,
                               std::vector<char>& used) {
  if (next == g.left_count) return 0;
  std::size_t best = brute_max_matching(g, next + 1, used);
  for (int r : g.adj[next])
    if (!used[r]) {
      used[r] = 1;
      best = std::max(best, 1 + brute_max_matching(g, next + 1, used));
      used[r] = 0;
    }
  return best;
}

}  // namespace

TEST_CASE("small fixed graphs") {
  auto k22 = make(2, 2, {{0, 1}, {0, 1}});
  CHECK(maximum_matching(k22).size == 2);

  auto path = make(2, 1, {{0}, {0}});
  CHECK(maximum_matching(path).size == 1);

  // complete 4x2, k=2: both rights get exactly 2 preimages
  auto k42 = make(4, 2, {{0, 1}, {0, 1}, {0, 1}, {0, 1}});
  auto res = k_to_one_surjection(k42, 2);
  REQUIRE(res.assignment.has_value());
  CHECK(check_k_to_one(k42, *res.assignment).empty());
  int c0 = 0, c1 = 0;
  for (int t : res.assignment->left_to_right) {
    if (t == 0) ++c0;
    if (t == 1) ++c1;
  }
  CHECK(c0 == 2);
  CHECK(c1 == 2);
  CHECK(res.assignment->total);
}

TEST_CASE("hall violators") {
  auto k22 = make(2, 2, {{0, 1}, {0, 1}});
  CHECK_FALSE(k_to_one_surjection(k22, 1).violator.has_value());

  auto starved = make(1, 2, {{0, 1}});
  auto res = k_to_one_surjection(starved, 1);
  REQUIRE(res.violator.has_value());
  CHECK(res.violator->right_set.size() == 2);
  CHECK(res.violator->left_neighborhood.size() == 1);
}

TEST_CASE("violator certifies deficiency") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 2000; ++trial) {
    std::size_t l = 1 + rng() % 8, r = 1 + rng() % 4;
    int k = 1 + int(rng() % 3);
    BipartiteGraph g;
    g.left_count = l;
    g.right_count = r;
    g.adj.resize(l);
    for (std::size_t i = 0; i < l; ++i)
      for (std::size_t j = 0; j < r; ++j)
        if (rng() % 2) g.adj[i].push_back(int(j));
    auto res = k_to_one_surjection(g, k);
    if (!res.violator) continue;
    // recount |N(F)| < k|F| from the graph
    std::vector<char> inF(r, 0);
    for (int j : res.violator->right_set) inF[j] = 1;
    std::size_t nbrs = 0;
    for (std::size_t i = 0; i < l; ++i)
      if (std::any_of(g.adj[i].begin(), g.adj[i].end(),
                      [&](int j) { return inF[j]; }))
        ++nbrs;
    CHECK(nbrs == res.violator->left_neighborhood.size());
    CHECK(nbrs < std::size_t(k) * res.violator->right_set.size());
  }
}

TEST_CASE("exhaustive agreement with brute force") {
  std::mt19937 rng(42);
  int found = 0, missing = 0;
  for (int trial = 0; trial < 12000; ++trial) {
    std::size_t l = 1 + rng() % 8, r = 1 + rng() % 4;
    int k = 1 + int(rng() % 3);
    BipartiteGraph g;
    g.left_count = l;
    g.right_count = r;
    g.adj.resize(l);
    for (std::size_t i = 0; i < l; ++i)
      for (std::size_t j = 0; j < r; ++j)
        if (rng() % 100 < 55) g.adj[i].push_back(int(j));

    std::vector<char> used(r, 0);
    std::size_t bm = brute_max_matching(g, 0, used);
    CHECK(maximum_matching(g).size == bm);

    bool feasible = brute_feasible(g, k);
    auto res = k_to_one_surjection(g, k);
    CHECK(res.assignment.has_value() == feasible);
    CHECK(res.violator.has_value() == !feasible);
    if (feasible) {
      ++found;
      CHECK(check_k_to_one(g, *res.assignment).empty());
    } else {
      ++missing;
    }
  }
  CHECK(found > 100);
  CHECK(missing > 100);
}

TEST_CASE("check_k_to_one catches tampering") {
  auto k42 = make(4, 2, {{0, 1}, {0, 1}, {0, 1}, {1}});
  auto res = k_to_one_surjection(k42, 2);
  REQUIRE(res.assignment.has_value());
  auto bad = *res.assignment;
  bad.left_to_right[0] = bad.left_to_right[0] == 0 ? 1 : 0;
  CHECK_FALSE(check_k_to_one(k42, bad).empty());
}
