#include "builder.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "amenability.hpp"
#include "matching.hpp"

namespace gsd {

int BuilderParams::window_radius() const {
  return std::max({n * rho, m * rho, 2 * rho});
}

namespace {

// minimal unsigned bignum: enough to compare s^(3n) against 2^(s-6)
struct Big {
  std::vector<std::uint64_t> limb{1};

  void mul_small(std::uint64_t f) {
    unsigned __int128 carry = 0;
    for (auto& l : limb) {
      unsigned __int128 v = (unsigned __int128)l * f + carry;
      l = (std::uint64_t)v;
      carry = v >> 64;
    }
    while (carry) {
      limb.push_back((std::uint64_t)carry);
      carry >>= 64;
    }
  }

  long long bits() const {
    for (std::size_t i = limb.size(); i-- > 0;)
      if (limb[i]) {
        long long b = 0;
        std::uint64_t v = limb[i];
        while (v) {
          ++b;
          v >>= 1;
        }
        return (long long)i * 64 + b;
      }
    return 0;
  }

  bool is_pow2() const {
    int nz = 0;
    for (auto l : limb)
      if (l) {
        ++nz;
        if (nz > 1 || (l & (l - 1))) return false;
      }
    return nz == 1;
  }

  // *this <= 2^e ?
  bool leq_pow2(long long e) const {
    long long b = bits();
    if (b <= e) return true;
    return b == e + 1 && is_pow2();
  }
};

long long ceil_log2(long long x) {  // least k with 2^k >= x, x >= 1
  long long k = 0;
  unsigned __int128 p = 1;
  while (p < (unsigned __int128)x) {
    p <<= 1;
    ++k;
  }
  return k;
}

}  // namespace

std::optional<std::pair<long long, long long>> parameter_window(long long s) {
  if (s < 2) throw std::invalid_argument("parameter window needs s >= 2");
  long long cube = s * s * s;
  long long lower = 4 + ceil_log2(cube);  // least n with 2^(n-4) >= s^3
  if (s - 6 < 0) return std::nullopt;
  Big v;
  long long upper = -1;
  for (long long n = 0;; ++n) {
    if (!v.leq_pow2(s - 6)) break;
    upper = n;
    for (int i = 0; i < 3; ++i) v.mul_small((std::uint64_t)s);
    if (v.bits() > s + 64) break;  // already hopeless, avoid growth
  }
  if (upper < lower) return std::nullopt;
  return std::make_pair(lower, upper);
}

std::vector<Elem> independent_subset(const Group& g,
                                     const std::vector<Elem>& S,
                                     const Elem& r) {
  Elem id = g.identity();
  Elem ri = g.inverse(r);
  auto adjacent = [&](const Elem& s, const Elem& t) {
    if (!(t == g.multiply(s, r)) && !(t == g.multiply(s, ri))) return false;
    bool pair_1r = (s == id && t == r) || (s == r && t == id);
    return !pair_1r;
  };
  std::vector<Elem> out{id, r};
  for (const Elem& s : S) {
    if (s == id || s == r) continue;
    bool blocked = false;
    for (const Elem& t : out)
      if (adjacent(s, t) || adjacent(t, s)) {
        blocked = true;
        break;
      }
    if (!blocked) out.push_back(s);
  }
  return out;
}

BuilderParams select_parameters(GroupPtr group, int rho, bool toy, int n_toy) {
  if (rho < 1) throw std::invalid_argument("rho must be >= 1");
  BuilderParams p;
  p.group = group;
  p.rho = rho;
  p.toy = toy;
  p.S = ball(*group, rho).elements;

  bool have_r = false;
  for (const Elem& g : group->standard_generators(false)) {
    if (!group->is_identity(group->multiply(g, g))) {
      p.r = g;
      have_r = true;
      break;
    }
  }
  if (!have_r)
    throw std::invalid_argument("no generator r with r^2 != identity");

  if (toy) {
    if (n_toy < 1) throw std::invalid_argument("toy mode needs n >= 1");
    p.n = n_toy;
    p.m = std::max(1, std::min(3, n_toy - 1));
    p.S_prime = {group->identity(), p.r};
  } else {
    auto window = parameter_window((long long)p.S.size());
    if (!window)
      throw std::invalid_argument("parameter window empty for |S| = " +
                                  std::to_string(p.S.size()));
    p.n = (int)window->first;
    p.m = 3;
    ExpansionOutcome e = expansion_certificate(group, p.S, 1);
    if (!e.cert)
      throw std::invalid_argument("expansion violator: S fails doubling");
    p.S_prime = independent_subset(*group, p.S, p.r);
  }

  std::vector<Elem> avoid = ball(*group, p.m * rho).elements;
  Elem r2 = group->multiply(p.r, p.r);
  avoid.push_back(r2);
  avoid.push_back(group->inverse(r2));
  avoid = sorted_unique(std::move(avoid));
  Elem id = group->identity();
  std::erase_if(avoid, [&](const Elem& e) { return e == id; });
  p.avoid = std::move(avoid);
  return p;
}

std::vector<int> PatternInjection::code(const Elem& t) const {
  int rank = tball.position(t);
  if (rank < 0) throw std::invalid_argument("symbol outside T");
  std::vector<int> bits(s_prime.size(), 0);
  bits[pos_one] = 1;
  bits[pos_r] = 1;
  int b = 0;
  for (std::size_t i = 0; i < s_prime.size(); ++i) {
    if ((int)i == pos_one || (int)i == pos_r) continue;
    bits[i] = (rank >> b) & 1;
    ++b;
  }
  return bits;
}

PatternInjection pattern_injection(const BuilderParams& p) {
  PatternInjection phi;
  phi.group = p.group;
  phi.s_prime = p.S_prime;
  Elem id = p.group->identity();
  for (std::size_t i = 0; i < phi.s_prime.size(); ++i) {
    if (phi.s_prime[i] == id) phi.pos_one = (int)i;
    if (phi.s_prime[i] == p.r) phi.pos_r = (int)i;
  }
  if (phi.pos_one < 0 || phi.pos_r < 0)
    throw std::invalid_argument("S' must contain the identity and r");
  phi.free_bits = (int)phi.s_prime.size() - 2;
  phi.tball = ball(*p.group, p.T_radius());
  phi.strict = !p.toy;
  if (phi.strict) {
    if (phi.free_bits >= 63 ||
        (std::uint64_t)phi.tball.size() > (1ull << phi.free_bits))
      throw std::invalid_argument("phi capacity exceeded: log2|T| > |S'|-2");
  }
  return phi;
}

std::vector<Elem> support_scaffold(const BuilderParams& p, int R) {
  if (R < p.m * p.rho)
    throw std::invalid_argument("scaffold radius below the disjointness range");
  const Group& g = *p.group;
  Ball b = ball(g, R);
  std::set<Elem, ElemLess> chosen;
  std::vector<Elem> A;
  for (const Elem& gamma : b.elements) {
    bool blocked = false;
    for (const Elem& d : p.avoid)
      if (chosen.count(g.multiply(gamma, d))) {
        blocked = true;
        break;
      }
    if (!blocked) {
      chosen.insert(gamma);
      A.push_back(gamma);
    }
  }
  return A;
}

std::string verify_scaffold(const BuilderParams& p, const std::vector<Elem>& A,
                            int R) {
  const Group& g = *p.group;
  std::vector<Elem> asort = sorted_unique(A);
  std::vector<Elem> avoid = p.avoid;
  // pairwise disjointness
  for (const Elem& a : asort)
    for (const Elem& d : avoid)
      if (set_contains(asort, g.multiply(a, d)))
        return "disjointness violated at " + g.to_string(a);
  // maximality on the shrunken interior
  Ball reach_ball = ball(g, std::max(p.m * p.rho, 2 * p.rho));
  int reach = 0;
  for (const Elem& d : avoid) {
    int pos = reach_ball.position(d);
    if (pos < 0) return "avoid-set element outside its radius bound";
    reach = std::max(reach, reach_ball.length[pos]);
  }
  for (const Elem& gamma : ball(g, R - reach).elements) {
    if (set_contains(asort, gamma)) continue;
    bool covered = false;
    for (const Elem& d : avoid)
      if (set_contains(asort, g.multiply(gamma, d))) {
        covered = true;
        break;
      }
    if (!covered) return "maximality violated at " + g.to_string(gamma);
  }
  return "";
}

SubshiftSpec compressible_spec(const BuilderParams& p) {
  const Group& g = *p.group;
  Ball tb = ball(g, p.T_radius());
  if (tb.size() > 100'000)
    throw ResourceLimit("alphabet T too large to instantiate");
  int W = p.window_radius();
  Ball win = ball(g, W);

  SubshiftSpec spec;
  spec.group = p.group;
  spec.alphabet.push_back("*");
  for (const Elem& t : tb.elements) spec.alphabet.push_back(g.to_string(t));
  spec.window = win.elements;

  // ball prefix property: the first |ball(T_radius)| window cells are
  // exactly the T-ball, in matching order
  std::size_t tcount = tb.size();
  std::vector<int> invsym(tcount);  // symbol h^-1 at window position h
  for (std::size_t h = 0; h < tcount; ++h)
    invsym[h] = 1 + tb.position(g.inverse(win.elements[h]));
  std::vector<int> target_pos(tcount);  // window position of each T-symbol
  for (std::size_t t = 0; t < tcount; ++t)
    target_pos[t] = win.position(tb.elements[t]);
  std::vector<int> dpos;
  for (const Elem& d : p.avoid) dpos.push_back(win.position(d));

  spec.oracle = [tcount, invsym, target_pos, dpos](std::span<const int> pat) {
    int preimages = 0;
    for (std::size_t h = 0; h < tcount; ++h)
      if (pat[h] == invsym[h]) ++preimages;
    int c = pat[0];
    if (c >= 1) {
      if (pat[target_pos[c - 1]] == 0) return false;  // target must be support
      for (int dp : dpos)
        if (pat[dp] != 0) return false;  // D-disjointness
      return preimages == 2;
    }
    for (int dp : dpos)
      if (pat[dp] >= 1) return preimages == 0;  // maximality + no hits
    return false;
  };
  spec.name = "compressible(rho=" + std::to_string(p.rho) +
              ",n=" + std::to_string(p.n) + ",m=" + std::to_string(p.m) +
              ")@" + g.descriptor();
  return spec;
}

WitnessResult witness_patch(const BuilderParams& p, int R) {
  const Group& g = *p.group;
  WitnessResult res;
  res.R = R;
  res.interior = R - p.window_radius();
  if (res.interior < 0)
    throw std::invalid_argument("radius below the rule window");
  res.scaffold = support_scaffold(p, R);

  Ball big = ball(g, R);
  Ball tb = ball(g, p.T_radius());
  int inner = R - p.T_radius();

  std::vector<Elem> left = res.scaffold;  // shortlex (greedy) order
  std::vector<Elem> right;
  for (const Elem& a : left)
    if (big.length[big.position(a)] <= inner) right.push_back(a);
  if (right.empty())
    throw std::invalid_argument("no support points in the matchable core");

  std::map<Elem, int, ElemLess> rindex;
  for (std::size_t j = 0; j < right.size(); ++j)
    rindex.emplace(right[j], (int)j);
  BipartiteGraph bg;
  bg.left_count = left.size();
  bg.right_count = right.size();
  bg.adj.resize(left.size());
  for (std::size_t i = 0; i < left.size(); ++i)
    for (const Elem& t : tb.elements) {
      auto it = rindex.find(g.multiply(left[i], t));
      if (it != rindex.end()) bg.adj[i].push_back(it->second);
    }

  KToOneResult kr = k_to_one_surjection(bg, 2);
  if (!kr.assignment) {
    std::vector<Elem> v;
    for (int j : kr.violator->right_set) v.push_back(right[j]);
    res.violator = std::move(v);
    return res;
  }

  std::set<Elem, ElemLess> asort(left.begin(), left.end());
  Patch patch;
  for (const Elem& cell : big.elements) patch.cells.emplace(cell, 0);
  for (std::size_t i = 0; i < left.size(); ++i) {
    Elem target;
    if (kr.assignment->left_to_right[i] != -1) {
      target = right[kr.assignment->left_to_right[i]];
    } else {
      // unmatched support cell: send it into the unverified annulus so it
      // cannot disturb the exact counts on the core
      bool found = false;
      for (const Elem& t : tb.elements) {
        Elem cand = g.multiply(left[i], t);
        if (!asort.count(cand)) continue;
        if (big.length[big.position(cand)] > inner) {
          target = cand;
          found = true;
          break;
        }
      }
      if (!found) {
        for (const Elem& t : tb.elements) {
          Elem cand = g.multiply(left[i], t);
          if (asort.count(cand)) {
            target = cand;
            found = true;
            break;
          }
        }
      }
      if (!found)
        throw std::invalid_argument("isolated support cell, enlarge radius");
    }
    int sym = 1 + tb.position(g.multiply(g.inverse(left[i]), target));
    patch.cells[left[i]] = sym;
  }
  res.patch = std::move(patch);
  return res;
}

CompressionEvidence verify_compression(const BuilderParams& p,
                                       const SubshiftSpec& spec,
                                       const Patch& patch, int interior) {
  const Group& g = *p.group;
  Ball tb = ball(g, p.T_radius());
  CompressionEvidence ev;
  std::vector<std::pair<Elem, Elem>> supp;  // (cell, target)
  for (const auto& [cell, sym] : patch.cells)
    if (sym >= 1)
      supp.emplace_back(cell, g.multiply(cell, tb.elements[sym - 1]));
  Ball ib = ball(g, interior);
  for (const auto& [cell, target] : supp) {
    (void)target;
    if (!ib.contains(cell)) continue;
    int count = 0;
    for (const auto& [h, ht] : supp)
      if (ht == cell) ++count;
    ev.table.emplace_back(cell, count);
    if (count != 2 && ev.error.empty())
      ev.error = "preimage count " + std::to_string(count) + " at " +
                 g.to_string(cell);
  }
  ev.degenerate = ev.table.empty();
  ev.ok = ev.error.empty();
  return ev;
}

CodeReport code_patch(const BuilderParams& p, const SubshiftSpec& spec,
                      const Patch& patch, int R) {
  const Group& g = *p.group;
  PatternInjection phi = pattern_injection(p);
  Ball tb = ball(g, p.T_radius());
  CodeReport rep;
  rep.code_radius = R - p.rho;
  rep.check_radius = R - p.rho - 1;
  if (rep.check_radius < 0) {
    rep.error = "radius too small for the code window";
    return rep;
  }

  auto f_at = [&](const Elem& gamma) -> int {
    int found = -1;
    Elem symbol;
    for (std::size_t i = 0; i < phi.s_prime.size(); ++i) {
      Elem cell = g.multiply(gamma, g.inverse(phi.s_prime[i]));
      auto it = patch.cells.find(cell);
      if (it == patch.cells.end())
        throw std::invalid_argument("code cell outside the patch");
      if (it->second >= 1) {
        if (found >= 0) throw std::runtime_error(
            "well-definedness clash at " + g.to_string(gamma));
        found = (int)i;
        symbol = tb.elements[it->second - 1];
      }
    }
    if (found < 0) return 0;
    return phi.code(symbol)[found];
  };

  try {
    for (const Elem& gamma : ball(g, rep.code_radius).elements)
      rep.fcode.cells.emplace(gamma, f_at(gamma));
    for (const Elem& gamma : ball(g, rep.check_radius).elements) {
      bool supp = patch.cells.at(gamma) >= 1;
      int f1 = rep.fcode.cells.at(gamma);
      int f2 = rep.fcode.cells.at(g.multiply(gamma, p.r));
      if (supp != (f1 == 1 && f2 == 1)) {
        rep.error = "support detection fails at " + g.to_string(gamma);
        return rep;
      }
    }
  } catch (const std::runtime_error& e) {
    rep.error = e.what();
    return rep;
  }
  rep.ok = true;
  return rep;
}

}  // namespace gsd
