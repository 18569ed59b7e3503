// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Each check recomputes its expected values independently of the
// library paths under test wherever that is feasible.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "../src/amenability.hpp"
#include "../src/builder.hpp"
#include "../src/flows.hpp"
#include "../src/group.hpp"
#include "../src/matching.hpp"
#include "../src/subshift.hpp"

using namespace gsd;

namespace {

int failures = 0;

void report(int idx, const char* what, bool ok, const std::string& note = "") {
  std::printf("criterion %2d: %s  %s%s%s\n", idx, ok ? "pass" : "FAIL", what,
              note.empty() ? "" : " -- ", note.c_str());
  if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::vector<Elem> interval(const Group& z, int lo, int hi) {
  std::vector<Elem> out;
  for (int i = lo; i <= hi; ++i)
    out.push_back(z.parse_elem("(" + std::to_string(i) + ")"));
  return out;
}

void c1_ball_growth() {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  auto f2 = Group::parse("free(2)");
  std::uint64_t pw = 1;
  for (int r = 0; r <= 8; ++r) {
    ok = ok && ball(*f2, r).size() == 2 * pw - 1;
    pw *= 3;
  }
  auto z2 = Group::parse("Z^2");
  for (int r = 0; r <= 20; ++r)
    ok = ok && ball(*z2, r).size() == std::size_t(2 * r * r + 2 * r + 1);
  double dt = seconds_since(t0);
  report(1, "ball growth closed forms (F2 r<=8, Z^2 r<=20)", ok && dt < 5.0,
         dt >= 5.0 ? "too slow" : "");
}

void c2_folner() {
  bool ok = true;
  auto z = Group::parse("Z");
  auto cz = folner_search(z, z->standard_generators(), Rational(1, 20), 64);
  ok = ok && cz && cz->family == "ball(20)" && cz->ratio == Rational(2, 41) &&
       verify_folner(*cz);

  auto z2 = Group::parse("Z^2");
  auto c2 = folner_search(z2, z2->standard_generators(), Rational(1, 5), 16);
  ok = ok && c2 && verify_folner(*c2) && c2->ratio < Rational(1, 5);

  auto ll = Group::parse("lamplighter");
  auto pl = amenability_probe(ll, 8, Rational(1, 5));
  ok = ok && pl.folner && verify_folner(*pl.folner) &&
       pl.folner->ratio < Rational(1, 5);
  report(2, "Folner certificates (Z exact 2/41, Z^2, lamplighter)", ok);
}

void c3_expansion() {
  auto t0 = std::chrono::steady_clock::now();
  auto f2 = Group::parse("free(2)");
  auto out = expansion_certificate(f2, f2->standard_generators(), 5);
  bool ok = out.cert.has_value() && !out.violator.has_value();
  if (ok) {
    ok = ball(*f2, 6).size() == 1457;
    // independent preimage recount over all of ball(5)
    auto b5 = ball(*f2, 5);
    std::map<Elem, int, ElemLess> count;
    for (auto& [g, pg] : out.cert->assignment) ++count[pg];
    for (const Elem& e : b5.elements)
      ok = ok && count.count(e) && count[e] == 2;
    ok = ok && count.size() == b5.size();
    ok = ok && verify_expansion(*out.cert).empty();
  }
  double dt = seconds_since(t0);
  report(3, "expansion certificate on F2 at R=5, counts exactly 2",
         ok && dt < 10.0, dt >= 10.0 ? "too slow" : "");
}

void c4_paradoxical() {
  auto f2 = Group::parse("free(2)");
  std::vector<Elem> S = {f2->identity(), f2->evaluate("a")};
  std::vector<Elem> T = {f2->identity(), f2->evaluate("b")};
  auto out = xst_certificate(f2, S, T, classical_f2_pieces(*f2), 6);
  bool ok = out.cert.has_value() && verify_paradox(*out.cert).empty();
  if (ok) {
    auto stu = sorted_unique([&] {
      auto v = S;
      v.insert(v.end(), T.begin(), T.end());
      return v;
    }());
    ok = stu.size() == 3;
    auto rep = tarski_report({*out.cert});
    ok = ok && rep.k_bound && *rep.k_bound == 4 && rep.l_bound &&
         *rep.l_bound == 3;
  }
  report(4, "X_{S,T} certificate on ball(6), k <= 4 and l <= 3", ok);
}

void c5_parameter_window() {
  bool ok = !parameter_window(64).has_value();
  auto w = parameter_window(4373);
  ok = ok && w && w->first == 41 && w->second == 120;
  report(5, "parameter window arithmetic (64 empty; 4373 -> {41..120})", ok);
}

void c6_toy_witness() {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string note;
  try {
    auto f2 = Group::parse("free(2)");
    auto p = select_parameters(f2, 1, true, 2);
    auto res = witness_patch(p, 6);
    ok = res.patch.has_value();
    if (ok) {
      auto spec = compressible_spec(p);
      ok = !patch_check(spec, *res.patch).has_value();
      auto ev = verify_compression(p, spec, *res.patch, res.interior);
      ok = ok && ev.ok && !ev.degenerate;
      for (auto& [cell, count] : ev.table) ok = ok && count == 2;
      auto code = code_patch(p, spec, *res.patch, 6);
      ok = ok && code.ok;
    }
  } catch (const std::exception& e) {
    ok = false;
    note = e.what();
  }
  double dt = seconds_since(t0);
  report(6, "toy compressible witness (rho=1, n=2, R=6), three checks",
         ok && dt < 60.0, dt >= 60.0 ? "too slow" : note);
}

bool brute_k_feasible(const BipartiteGraph& g, int k, std::size_t next,
                      std::vector<int>& load, std::size_t assigned) {
  if (assigned == g.right_count * k) return true;
  if (next == g.left_count) return false;
  for (int r : g.adj[next])
    if (load[r] < k) {
      ++load[r];
      if (brute_k_feasible(g, k, next + 1, load, assigned + 1)) return true;
      --load[r];
    }
  return brute_k_feasible(g, k, next + 1, load, assigned);
}

void c7_matching() {
  std::mt19937 rng(20'26);
  bool ok = true;
  int graphs = 0;
  for (int trial = 0; trial < 11'000 && ok; ++trial) {
    std::size_t l = 1 + rng() % 8, r = 1 + rng() % 4;
    int k = 1 + int(rng() % 3);
    BipartiteGraph g;
    g.left_count = l;
    g.right_count = r;
    g.adj.resize(l);
    for (std::size_t i = 0; i < l; ++i)
      for (std::size_t j = 0; j < r; ++j)
        if (rng() % 100 < 50) g.adj[i].push_back(int(j));
    std::vector<int> load(r, 0);
    bool feasible = brute_k_feasible(g, k, 0, load, 0);
    auto res = k_to_one_surjection(g, k);
    ok = res.assignment.has_value() == feasible &&
         res.violator.has_value() == !feasible;
    if (feasible) ok = ok && check_k_to_one(g, *res.assignment).empty();
    ++graphs;
  }
  report(7, "matching oracle equivalence on random graphs",
         ok && graphs >= 10'000,
         "graphs checked: " + std::to_string(graphs));
}

void c8_pattern_counts() {
  auto z = Group::parse("Z");
  auto gm = golden_mean(z);
  bool ok = true;
  std::uint64_t fa = 1, fb = 2;  // F(2), F(3)
  for (int L = 1; L <= 12; ++L) {
    ok = ok && count_patterns(gm, interval(*z, 0, L - 1)) == fb;
    std::uint64_t fc = fa + fb;
    fa = fb;
    fb = fc;
  }
  auto f2 = Group::parse("free(2)");
  ok = ok && count_patterns(hard_core(f2), ball(*f2, 1).elements) == 17;
  auto prod = product_spec(golden_mean(z), full_shift(z, 2));
  ok = ok && count_patterns(prod, interval(*z, 0, 1)) == 12;
  report(8, "pattern-count oracles (Fibonacci, hard-core 17, products)", ok);
}

void c9_f2_action() {
  bool inverses = true;
  std::vector<std::string> strings_by_len[11];
  for (int len = 1; len <= 10; ++len)
    for (unsigned bits = 0; bits < (1u << len); ++bits) {
      std::string x;
      for (int i = 0; i < len; ++i) x += char('0' + (bits >> i & 1));
      strings_by_len[len].push_back(x);
      for (int gen : {1, -1, 2, -2}) {
        auto fwd = f2_apply_gen(x, gen);
        if (!fwd) continue;
        auto back = f2_apply_gen(*fwd, -gen);
        inverses = inverses && back && *back == x;
      }
    }

  // BFS-connected length-<=8 pairs never refute the tail condition
  bool et_ok = true;
  for (int len = 1; len <= 8 && et_ok; ++len)
    for (const std::string& x : strings_by_len[len]) {
      std::set<std::string> seen{x};
      std::vector<std::string> frontier{x};
      for (int d = 0; d < 8; ++d) {
        std::vector<std::string> next;
        for (const std::string& u : frontier)
          for (int gen : {1, -1, 2, -2})
            if (auto v = f2_apply_gen(u, gen))
              if (v->size() <= 16 && seen.insert(*v).second)
                next.push_back(*v);
        frontier = std::move(next);
      }
      for (const std::string& y : seen) {
        if (y.size() > 8) continue;
        et_ok = et_ok && f2_orbit_check(x, y, 0).et_consistent;
      }
    }

  // first-bit partition separates distinct equal-length strings: the label
  // maps w -> first bit of w.x over words |w| <= 8 must differ somewhere
  // both are defined
  bool sep_ok = true;
  for (int len = 1; len <= 8 && sep_ok; ++len) {
    const auto& strs = strings_by_len[len];
    // feature vector over the BFS tree of reduced generator words
    std::vector<std::vector<signed char>> codes(strs.size());
    for (std::size_t i = 0; i < strs.size(); ++i) {
      codes[i].push_back(strs[i][0] == '1');
      std::vector<std::pair<std::string, int>> cur{{strs[i], 0}};  // (str, last)
      for (int d = 0; d < 8; ++d) {
        std::vector<std::pair<std::string, int>> next;
        for (auto& [u, last] : cur)
          for (int gen : {1, -1, 2, -2}) {
            if (gen == -last) {  // reduced words only, fixed traversal
              next.emplace_back(std::string(), gen);
              codes[i].push_back(-1);
              continue;
            }
            std::optional<std::string> v;
            if (!u.empty()) v = f2_apply_gen(u, gen);
            if (v) {
              codes[i].push_back((*v)[0] == '1');
              next.emplace_back(std::move(*v), gen);
            } else {
              codes[i].push_back(-1);
              next.emplace_back(std::string(), gen);
            }
          }
        cur = std::move(next);
      }
    }
    for (std::size_t i = 0; i < strs.size() && sep_ok; ++i)
      for (std::size_t j = i + 1; j < strs.size(); ++j) {
        bool separated = false;
        for (std::size_t t = 0; t < codes[i].size(); ++t)
          if (codes[i][t] >= 0 && codes[j][t] >= 0 &&
              codes[i][t] != codes[j][t]) {
            separated = true;
            break;
          }
        if (!separated) {
          sep_ok = false;
          break;
        }
      }
  }
  report(9, "F2 tail action: inverses, tail consistency, first-bit separation",
         inverses && et_ok && sep_ok,
         std::string(inverses ? "" : "inverses ") +
             (et_ok ? "" : "tail-consistency ") +
             (sep_ok ? ""
                     : "separation incomplete at radius 8; prefix peeling "
                       "costs two steps per bit, minimal sufficient radius "
                       "is 13 (see notes)"));
}

void c10_odometer() {
  bool ok = true;
  std::set<std::vector<int>> images;
  for (int code = 0; code < 4096; ++code) {
    std::vector<int> x(6);
    int c = code;
    for (int i = 0; i < 6; ++i) {
      x[i] = c % 4;
      c /= 4;
    }
    bool declared = x.back() == 1 || x.back() == 2;
    auto r = odometer_compression(x, declared);
    if (!r.ok) continue;
    ok = ok && images.insert(r.digits).second;
    int diff = 0;
    for (int i = 0; i < 6; ++i)
      if (r.digits[i] != x[i]) ++diff;
    ok = ok && diff == 1;
    bool image_all12 = true;
    for (int v : r.digits) image_all12 = image_all12 && (v == 1 || v == 2);
    ok = ok && !image_all12;  // image misses {n_x = 0}
  }
  ok = ok && images.size() >= 1000;
  report(10, "odometer compression: injective, one-coordinate, image gap", ok);
}

void c11_coinduction_jump() {
  auto z = Group::parse("Z");
  std::mt19937 rng(99);
  bool ok = true;
  for (int trial = 0; trial < 10; ++trial) {
    SubshiftSpec inner;
    inner.group = z;
    int syms = 2 + int(rng() % 3);
    for (int s = 0; s < syms; ++s) inner.alphabet.push_back(std::to_string(s));
    inner.window = interval(*z, 0, 1);
    std::set<std::vector<int>> allowed;
    for (int a = 0; a < syms; ++a)
      for (int b = 0; b < syms; ++b)
        if (rng() % 4) allowed.insert({a, b});
    inner.allowed = allowed;
    inner.name = "rnd";
    auto out = coinduce(inner, full_cosets(z));
    auto dom = interval(*z, 0, 3);
    ok = ok && count_patterns(out, dom) == count_patterns(inner, dom);
  }

  auto eng = wreath_jump({1, 0}, z);
  for (int trial = 0; trial < 1000 && ok; ++trial) {
    Patch p;
    for (int i = -4; i <= 4; ++i)
      p.cells[z->parse_elem("(" + std::to_string(i) + ")")] = int(rng() % 2);
    int sign = rng() % 2 ? 1 : -1;
    std::vector<std::pair<int, int>> lhs = {{1, sign}, {0, 1}, {1, -sign}};
    Elem lam = sign > 0 ? z->parse_elem("(1)") : z->parse_elem("(-1)");
    ok = ok && eng.apply(lhs, p) == eng.flip_at(lam, p);
  }
  report(11, "coinduction preserves counts; wreath relation on patches", ok);
}

}  // namespace

int main() {
  c1_ball_growth();
  c2_folner();
  c3_expansion();
  c4_paradoxical();
  c5_parameter_window();
  c6_toy_witness();
  c7_matching();
  c8_pattern_counts();
  c9_f2_action();
  c10_odometer();
  c11_coinduction_jump();
  std::printf("%d of 11 criteria passed\n", 11 - failures);
  return failures == 0 ? 0 : 1;
}
