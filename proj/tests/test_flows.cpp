#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "../src/flows.hpp"

using namespace gsd;

namespace {

std::vector<Elem> interval(const Group& z, int lo, int hi) {
  std::vector<Elem> out;
  for (int i = lo; i <= hi; ++i)
    out.push_back(z.parse_elem("(" + std::to_string(i) + ")"));
  return out;
}

}  // namespace

TEST_CASE("coinduction from the trivial subgroup is the full shift") {
  auto z = Group::parse("Z");
  SubshiftSpec point;  // one-point spec over the symbol set {0,1,2}
  point.group = z;
  point.alphabet = {"0", "1", "2"};
  point.window = {z->identity()};
  point.oracle = [](std::span<const int>) { return true; };
  point.name = "point3";

  auto spec = coinduce(point, trivial_cosets(z));
  CHECK(spec.window.size() == 1);
  CHECK(count_patterns(spec, interval(*z, 0, 2)) == 27);
}

TEST_CASE("coinduction with Gamma = Delta preserves counts") {
  auto z = Group::parse("Z");
  std::mt19937 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    SubshiftSpec inner;
    inner.group = z;
    int syms = 2 + int(rng() % 2);
    for (int s = 0; s < syms; ++s) inner.alphabet.push_back(std::to_string(s));
    inner.window = interval(*z, 0, 1);
    std::set<std::vector<int>> allowed;
    for (int a = 0; a < syms; ++a)
      for (int b = 0; b < syms; ++b)
        if (rng() % 3) allowed.insert({a, b});
    inner.allowed = allowed;
    inner.name = "random";

    auto out = coinduce(inner, full_cosets(z));
    auto dom = interval(*z, 0, 3);
    CHECK(count_patterns(out, dom) == count_patterns(inner, dom));
  }
}

TEST_CASE("coinduction of golden-mean along 2Z") {
  auto z = Group::parse("Z");
  auto inner = golden_mean(z);
  auto spec = coinduce(inner, mz_in_z(z, 2));
  CHECK(spec.window.size() == 4);  // {0,1,2,3}
  // cosets evolve independently: 3 * 3 admissible patterns
  CHECK(count_patterns(spec, interval(*z, 0, 3)) == 9);
  // and 11 at one cell further: coset 0 sees {0,2,4}, coset 1 sees {1,3}
  CHECK(count_patterns(spec, interval(*z, 0, 4)) == 15);  // 5 * 3
}

TEST_CASE("wreath jump basics") {
  auto z = Group::parse("Z");
  auto eng = wreath_jump({1, 0}, z);

  Patch p;
  for (int i = -1; i <= 1; ++i)
    p.cells[z->parse_elem("(" + std::to_string(i) + ")")] = 0;
  auto q = eng.flip_at(z->identity(), p);
  CHECK(q.cells.at(z->parse_elem("(-1)")) == 0);
  CHECK(q.cells.at(z->identity()) == 1);
  CHECK(q.cells.at(z->parse_elem("(1)")) == 0);

  // identity word
  std::vector<std::pair<int, int>> id_word;
  CHECK(eng.apply(id_word, p) == p);

  CHECK_THROWS_AS(wreath_jump({1, 2, 0}, z), std::invalid_argument);
}

TEST_CASE("wreath relation on random patches") {
  auto z = Group::parse("Z");
  auto eng = wreath_jump({1, 0}, z);
  std::mt19937 rng(5);
  for (int trial = 0; trial < 1000; ++trial) {
    Patch p;
    for (int i = -3; i <= 3; ++i)
      p.cells[z->parse_elem("(" + std::to_string(i) + ")")] = int(rng() % 2);
    //  λ γ λ⁻¹  =  flip at λ
    std::vector<std::pair<int, int>> lhs = {{1, 1}, {0, 1}, {1, -1}};
    auto a = eng.apply(lhs, p);
    auto b = eng.flip_at(z->parse_elem("(1)"), p);
    CHECK(a == b);
  }
}

TEST_CASE("f2 generator rules") {
  CHECK(f2_apply_gen("10", 2) == "01");
  CHECK(f2_apply_gen("0", 2) == "00");
  CHECK(f2_apply_gen("11", 2) == "1");
  CHECK(f2_apply_gen("0110", 1) == "1110");
  CHECK(f2_apply_gen(*f2_apply_gen("0110", 1), 1) == "0110");
  CHECK_FALSE(f2_apply_gen("1", 2).has_value());   // needs two bits
  CHECK_FALSE(f2_apply_gen("0", -2).has_value());  // inverse boundary
  CHECK(f2_apply_gen(*f2_apply_gen("0", 2), -2) == "0");
}

TEST_CASE("f2 generators are mutually inverse where defined") {
  for (int len = 1; len <= 10; ++len)
    for (unsigned bits = 0; bits < (1u << len); ++bits) {
      std::string x;
      for (int i = 0; i < len; ++i) x += char('0' + (bits >> i & 1));
      for (int gen : {1, -1, 2, -2}) {
        auto fwd = f2_apply_gen(x, gen);
        if (!fwd) continue;
        auto back = f2_apply_gen(*fwd, -gen);
        REQUIRE(back.has_value());
        CHECK(*back == x);
      }
    }
}

TEST_CASE("orbit check") {
  auto r1 = f2_orbit_check("0110", "00110", 2);
  CHECK(r1.connected);  // one g2 step: 0w -> 00w
  CHECK(r1.path.size() == 1);
  CHECK(r1.et_consistent);

  auto r2 = f2_orbit_check("01", "10", 6);
  CHECK(r2.connected);
  CHECK(r2.et_consistent);

  auto r3 = f2_orbit_check("00000000", "11111111", 3);
  CHECK_FALSE(r3.connected);  // inconclusive at this depth

  // connectivity never contradicts the tail condition on length <= 8
  std::mt19937 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    std::string x, y;
    int lx = 1 + int(rng() % 8), ly = 1 + int(rng() % 8);
    for (int i = 0; i < lx; ++i) x += char('0' + rng() % 2);
    for (int i = 0; i < ly; ++i) y += char('0' + rng() % 2);
    auto r = f2_orbit_check(x, y, 5);
    if (r.connected) CHECK(r.et_consistent);
    if (r.connected) {
      auto img = f2_tail_action(x, r.path);
      REQUIRE(img.has_value());
      CHECK(*img == y);
    }
  }
}

namespace {

// least word length whose application to both strings yields defined
// results with different first bits; -1 if none within max_depth
int separation_depth(const std::string& x, const std::string& y,
                     int max_depth) {
  std::set<std::pair<std::string, std::string>> seen{{x, y}};
  std::vector<std::pair<std::string, std::string>> cur{{x, y}};
  for (int d = 0; d <= max_depth; ++d) {
    std::vector<std::pair<std::string, std::string>> next;
    for (auto& [u, v] : cur) {
      if (!u.empty() && !v.empty() && u[0] != v[0]) return d;
      for (int gen : {1, -1, 2, -2}) {
        auto nu = u.empty() ? std::nullopt : f2_apply_gen(u, gen);
        auto nv = v.empty() ? std::nullopt : f2_apply_gen(v, gen);
        if (!nu && !nv) continue;
        std::pair<std::string, std::string> st{nu ? *nu : "", nv ? *nv : ""};
        if (seen.insert(st).second) next.push_back(st);
      }
    }
    cur = std::move(next);
  }
  return -1;
}

}  // namespace

TEST_CASE("first-bit separation peels two steps per prefix bit") {
  // differences in late positions stay invisible at small radius: the
  // worst length-8 pair needs a word of length 13
  CHECK(separation_depth("0", "1", 8) == 0);
  CHECK(separation_depth("01", "00", 8) == 1);  // one g2 inverse step
  CHECK(separation_depth("01010100", "01010101", 8) == -1);
  CHECK(separation_depth("01010100", "01010101", 14) == 13);
  CHECK(separation_depth("010100", "010101", 14) <= 13);
  // a prefix and its extension are never separated: same cylinder data
  CHECK(separation_depth("0", "00", 14) == -1);
}

TEST_CASE("odometer step") {
  CHECK(odometer_step({3, 0, 2}, 1) == std::vector<int>{0, 1, 2});
  CHECK(odometer_step({0, 2}, 1) == std::vector<int>{1, 2});
  CHECK_FALSE(odometer_step({3, 3, 3}, 1).has_value());
  CHECK(odometer_step({0, 1}, -1) == std::vector<int>{3, 0});
  CHECK_FALSE(odometer_step({0, 0}, -1).has_value());
  CHECK(odometer_step(*odometer_step({1, 2, 3}, 1), -1) ==
        std::vector<int>{1, 2, 3});
}

TEST_CASE("odometer compression") {
  auto r1 = odometer_compression({1, 2, 1}, true);
  REQUIRE(r1.ok);
  CHECK(r1.n_x == 0);
  CHECK(r1.digits == std::vector<int>{3, 2, 1});

  auto r2 = odometer_compression({0, 1, 1}, true);
  REQUIRE(r2.ok);
  CHECK(r2.n_x == 1);
  CHECK(r2.digits == std::vector<int>{0, 3, 1});

  auto r3 = odometer_compression({3, 3, 0}, false);
  CHECK_FALSE(r3.ok);
  CHECK(r3.error == "no stable tail declared");

  auto r4 = odometer_compression({3, 3, 0}, true);
  CHECK_FALSE(r4.ok);
  CHECK(r4.error == "no valid n_x within the truncation");
}

TEST_CASE("odometer compression is injective with image avoiding n=0") {
  // all length-6 truncations whose tail stabilizes in {1,2}
  std::set<std::vector<int>> images;
  int total = 0;
  for (int code = 0; code < 4096; ++code) {
    std::vector<int> x(6);
    int c = code;
    for (int i = 0; i < 6; ++i) {
      x[i] = c % 4;
      c /= 4;
    }
    if (x.back() != 1 && x.back() != 2) continue;
    auto r = odometer_compression(x, true);
    if (!r.ok) continue;
    ++total;
    CHECK(images.insert(r.digits).second);  // injective
    int diff = 0;
    for (int i = 0; i < 6; ++i)
      if (r.digits[i] != x[i]) ++diff;
    CHECK(diff == 1);
    // image never starts its stable {1,2}-tail at 0
    bool all12 = true;
    for (int v : r.digits) all12 = all12 && (v == 1 || v == 2);
    CHECK_FALSE(all12);
  }
  CHECK(total > 1000);
}
