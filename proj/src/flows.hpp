#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "group.hpp"
#include "subshift.hpp"

namespace gsd {

// Coset data for coinduction. Only three shapes are supported; anything
// else is rejected rather than approximated.
struct CosetStructure {
  enum class Kind { TrivialSubgroup, FiniteIndexZ, Full };
  Kind kind = Kind::Full;
  GroupPtr ambient;
  std::vector<Elem> transversal;
  std::function<Elem(const Elem&)> embed;  // subgroup elem -> ambient elem
};

CosetStructure trivial_cosets(GroupPtr ambient);
CosetStructure full_cosets(GroupPtr gamma);
CosetStructure mz_in_z(GroupPtr z, int m);

// CInd at window level: the inner rule along each coset.
SubshiftSpec coinduce(const SubshiftSpec& inner, const CosetStructure& c);

// Restricted Z/2-jump action engine on patches over the base group Λ:
// Λ translates, the lamp generator acts on the symbol at a cell.
struct JumpEngine {
  GroupPtr lambda;
  std::vector<int> flip;  // involution on alphabet indices

  Patch flip_at(const Elem& pos, const Patch& p) const;
  Patch translate(const Elem& lam, const Patch& p) const;
  // word = (generator, exponent) pairs, leftmost factor outermost;
  // generator 0 is the lamp flip at the identity, i >= 1 is lambda's
  // generator i-1
  Patch apply(std::span<const std::pair<int, int>> word, const Patch& p) const;
};

JumpEngine wreath_jump(std::vector<int> flip_table, GroupPtr lambda);

// Generators of the F2 action on binary sequences: 1 = first-bit flip,
// 2 = the prefix bijection {0->00, 11->1, 10->01}; negative = inverse.
// nullopt = boundary (string too short to match a rule).
std::optional<std::string> f2_apply_gen(const std::string& x, int gen);
std::optional<std::string> f2_tail_action(const std::string& x,
                                          std::span<const int> word);

struct OrbitCheck {
  bool connected = false;
  std::vector<int> path;  // generator sequence from x to y, in application order
  // least-cost tail identification x[m..] ~ y[n..] agreeing on the overlap
  int et_m = 0, et_n = 0, et_overlap = 0;
  bool et_consistent = false;
};

OrbitCheck f2_orbit_check(const std::string& x, const std::string& y,
                          int depth);

// base-4 odometer on truncations; nullopt = carry past the last digit
std::optional<std::vector<int>> odometer_step(std::vector<int> digits,
                                              int direction);

struct OdometerResult {
  bool ok = false;
  std::string error;
  std::vector<int> digits;
  int n_x = -1;
};

// f(x)_{n_x} = x_{n_x} + 2 where n_x is the least index from which the
// (declared) tail lies in {1,2}.
OdometerResult odometer_compression(const std::vector<int>& digits,
                                    bool declared_tail);

}  // namespace gsd
