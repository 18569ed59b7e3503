#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "group.hpp"

namespace gsd {

// Alphabet + window + local rule. The rule is either an explicit allowed
// set or an intensional oracle; the oracle form exists because some
// alphabets (structured symbols) are far too large to enumerate.
struct SubshiftSpec {
  GroupPtr group;
  std::vector<std::string> alphabet;
  std::vector<Elem> window;
  std::optional<std::set<std::vector<int>>> allowed;
  std::function<bool(std::span<const int>)> oracle;
  std::string name;

  bool admits(std::span<const int> pattern) const {
    if (allowed) return allowed->count(std::vector<int>(pattern.begin(), pattern.end())) != 0;
    return oracle(pattern);
  }
  int symbol(const std::string& s) const;
};

// Finite partial configuration.
struct Patch {
  std::map<Elem, int, ElemLess> cells;

  bool operator==(const Patch& o) const { return cells == o.cells; }
};

// Common example specs used across tests and the CLI.
SubshiftSpec full_shift(GroupPtr g, int symbols);
SubshiftSpec golden_mean(GroupPtr z);            // window {0,1}, forbid 11
SubshiftSpec hard_core(GroupPtr g);              // no two adjacent 1s

// (γ·x)_l = x_{γ⁻¹·l}: the domain moves to γ·domain, values carried.
Patch translate_patch(const Group& g, const Elem& gamma, const Patch& p);

// nullopt = ok, otherwise a γ with γ·window ⊆ domain violating the rule.
std::optional<Elem> patch_check(const SubshiftSpec& spec, const Patch& p);

// Deterministic backtracking extension over the target cells in the
// given order, alphabet symbols in index order. nullopt = unsat.
std::optional<Patch> extend_search(const SubshiftSpec& spec, const Patch& base,
                                   std::span<const Elem> target,
                                   std::uint64_t cap = 10'000'000);

// Exact count of admissible total assignments on the domain.
std::uint64_t count_patterns(const SubshiftSpec& spec,
                             std::span<const Elem> domain,
                             std::uint64_t cap = 10'000'000);

// Every admissible total assignment on the domain, in backtracking order.
std::vector<Patch> enumerate_patterns(const SubshiftSpec& spec,
                                      std::span<const Elem> domain,
                                      std::uint64_t cap = 10'000'000);

bool empty_on_ball(const SubshiftSpec& spec, int r,
                   std::uint64_t cap = 10'000'000);

// Componentwise conjunction on the union window; alphabet is the product.
SubshiftSpec product_spec(const SubshiftSpec& a, const SubshiftSpec& b);

// Cylinder labeling: total function on admissible ball(d)-patterns,
// patterns presented in ball(d) element order.
struct CylinderLabeling {
  int depth = 0;
  int label_count = 2;
  std::function<int(std::span<const int>)> label;
};

struct GeneratorCheckResult {
  bool separates = false;
  int radius = 0;
  std::optional<std::pair<Patch, Patch>> counterexample;
};

// Finite-resolution clopen-generator test: two distinct admissible
// ball(w+d)-patterns must induce different label maps over ball(w).
GeneratorCheckResult clopen_generator_check(const SubshiftSpec& spec,
                                            const CylinderLabeling& labeling,
                                            int w,
                                            std::uint64_t cap = 10'000'000);

enum class ParadoxMode { Compression, Paradox };

// Compression witness: admissible depth-d patterns partitioned into
// pieces, one translation per piece, translated images pairwise disjoint
// and jointly missing at least one admissible depth-d cylinder.
struct CompressionWitness {
  int depth = 0;
  int check_radius = 0;                  // patches verified at this radius
  std::vector<Elem> translations;
  std::vector<std::vector<int>> patterns;  // admissible d-patterns
  std::vector<int> piece;                  // pattern index -> translation index
  std::vector<int> missed;                 // pattern indices never covered
};

struct ParadoxSearchResult {
  std::optional<CompressionWitness> witness;
  bool exhausted = false;  // true: full search space excluded, not a budget stop
};

// Empty string = valid; otherwise a description of the first failure.
std::string verify_compression_witness(const SubshiftSpec& spec,
                                       const CompressionWitness& w,
                                       std::uint64_t cap = 10'000'000);

// Bounded search for clopen compression (or paradoxical) witnesses at
// cylinder depth d. Tries the least-section candidate first when the
// alphabet symbols are themselves group elements, then exhaustive
// assignment search with an exact counting prune.
ParadoxSearchResult clopen_paradox_search(const SubshiftSpec& spec, int d,
                                          std::span<const Elem> translations,
                                          ParadoxMode mode,
                                          std::uint64_t cap = 10'000'000);

}  // namespace gsd
