#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "group.hpp"
#include "subshift.hpp"

namespace gsd {

// Parameters of the compressible-subshift construction. In toy mode the
// exponent n is caller-supplied and the support-disjointness exponent m
// shrinks to min(3, n-1) so that a full witness fits in a small ball;
// every structural rule is kept intact at the reduced scale.
struct BuilderParams {
  GroupPtr group;
  int rho = 1;            // S = ball(rho)
  std::vector<Elem> S;
  int n = 1;              // T = S^n, i.e. ball(n*rho)
  Elem r;                 // r in S with r^2 != e
  int m = 3;              // support is D-disjoint, D = S^m plus {r^±2}
  bool toy = false;
  std::vector<Elem> S_prime;
  std::vector<Elem> avoid;  // D, symmetric, identity excluded

  int T_radius() const { return n * rho; }
  int window_radius() const;
};

// Integer solutions of 4 + 3 log2(s) <= n <= (s-6)/(3 log2(s)),
// evaluated exactly (no floating point at the boundaries).
std::optional<std::pair<long long, long long>> parameter_window(long long s);

// Greedy independent set, seeded with {1, r}, in the graph on S with
// s ~ s' iff s' = s r^±1 and {s, s'} != {1, r}.
std::vector<Elem> independent_subset(const Group& g,
                                     const std::vector<Elem>& S,
                                     const Elem& r);

BuilderParams select_parameters(GroupPtr group, int rho, bool toy,
                                int n_toy = 0);

// phi: T -> 2^{S'} with the coordinates at 1 and r forced to 1 and the
// remaining coordinates carrying the shortlex rank of the symbol.
struct PatternInjection {
  GroupPtr group;
  std::vector<Elem> s_prime;
  int pos_one = -1, pos_r = -1;
  int free_bits = 0;
  bool strict = true;  // capacity verified: injective on all of T
  Ball tball;

  std::vector<int> code(const Elem& t) const;
};

PatternInjection pattern_injection(const BuilderParams& p);

// Greedily maximal D-disjoint subset of ball(R), shortlex order.
std::vector<Elem> support_scaffold(const BuilderParams& p, int R);

// Maximality re-check: every element of ball(R - reach(D)) lies in A·D
// or in A. Empty string = ok.
std::string verify_scaffold(const BuilderParams& p,
                            const std::vector<Elem>& A, int R);

// Local rule of the compressible subshift over alphabet T ∪ {*}: support
// cells target support cells within T, supports are maximal D-disjoint,
// and every support cell has exactly two T-preimages.
SubshiftSpec compressible_spec(const BuilderParams& p);

struct WitnessResult {
  std::optional<Patch> patch;
  std::optional<std::vector<Elem>> violator;  // Hall failure on A
  std::vector<Elem> scaffold;
  int R = 0;
  int interior = 0;  // R - window_radius
};

WitnessResult witness_patch(const BuilderParams& p, int R);

struct CompressionEvidence {
  bool ok = false;
  bool degenerate = false;  // no interior support points at all
  std::string error;
  std::vector<std::pair<Elem, int>> table;  // interior support point -> count
};

// Independent recount of the 2-to-1 property on interior support points.
CompressionEvidence verify_compression(const BuilderParams& p,
                                       const SubshiftSpec& spec,
                                       const Patch& patch, int interior);

struct CodeReport {
  bool ok = false;
  std::string error;
  Patch fcode;          // f value (0/1) on the computable region
  int code_radius = 0;  // f computed on ball(code_radius)
  int check_radius = 0; // detection equivalence checked on ball(check_radius)
};

// Evaluates f(x) = phi(x_{s^-1})_s pointwise and verifies the support
// detection rule: γ in Supp iff f at γ and at γr are both 1.
CodeReport code_patch(const BuilderParams& p, const SubshiftSpec& spec,
                      const Patch& patch, int R);

}  // namespace gsd
