#include "flows.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace gsd {

CosetStructure trivial_cosets(GroupPtr ambient) {
  CosetStructure c;
  c.kind = CosetStructure::Kind::TrivialSubgroup;
  c.ambient = ambient;
  c.transversal = {ambient->identity()};
  c.embed = [ambient](const Elem&) { return ambient->identity(); };
  return c;
}

CosetStructure full_cosets(GroupPtr gamma) {
  CosetStructure c;
  c.kind = CosetStructure::Kind::Full;
  c.ambient = gamma;
  c.transversal = {gamma->identity()};
  c.embed = [](const Elem& e) { return e; };
  return c;
}

CosetStructure mz_in_z(GroupPtr z, int m) {
  if (z->family() != Group::Family::FreeAbelian || z->dim() != 1)
    throw std::invalid_argument("mZ <= Z requires the ambient group Z");
  if (m < 1) throw std::invalid_argument("index must be >= 1");
  CosetStructure c;
  c.kind = CosetStructure::Kind::FiniteIndexZ;
  c.ambient = z;
  for (int d = 0; d < m; ++d)
    c.transversal.push_back(Elem{Elem::Vec{{d}}});
  c.embed = [m](const Elem& e) {
    return Elem{Elem::Vec{{std::get<Elem::Vec>(e.v).coords[0] * m}}};
  };
  return c;
}

SubshiftSpec coinduce(const SubshiftSpec& inner, const CosetStructure& c) {
  if (c.kind == CosetStructure::Kind::TrivialSubgroup &&
      inner.window.size() != 1)
    throw std::invalid_argument(
        "trivial-subgroup coinduction needs a one-point inner window");
  const Group& g = *c.ambient;
  SubshiftSpec out;
  out.group = c.ambient;
  out.alphabet = inner.alphabet;

  std::vector<Elem> w;
  for (const Elem& rep : c.transversal)
    for (const Elem& iw : inner.window)
      w.push_back(g.multiply(rep, c.embed(iw)));
  out.window = sorted_unique(std::move(w));

  auto locate = [&](const Elem& e) {
    auto it = std::lower_bound(out.window.begin(), out.window.end(), e,
                               ElemLess{});
    return static_cast<int>(it - out.window.begin());
  };
  std::vector<std::vector<int>> coset_pos;  // per rep, inner-window cells
  for (const Elem& rep : c.transversal) {
    std::vector<int> pos;
    for (const Elem& iw : inner.window)
      pos.push_back(locate(g.multiply(rep, c.embed(iw))));
    coset_pos.push_back(std::move(pos));
  }

  out.oracle = [inner, coset_pos](std::span<const int> pat) {
    std::vector<int> sub;
    for (const auto& pos : coset_pos) {
      sub.clear();
      for (int i : pos) sub.push_back(pat[i]);
      if (!inner.admits(sub)) return false;
    }
    return true;
  };
  out.name = "coinduce(" + inner.name + ")@" + g.descriptor();
  return out;
}

JumpEngine wreath_jump(std::vector<int> flip_table, GroupPtr lambda) {
  for (std::size_t i = 0; i < flip_table.size(); ++i) {
    std::size_t j = flip_table[i];
    if (j >= flip_table.size() || (std::size_t)flip_table[j] != i)
      throw std::invalid_argument("flip table must be an involution");
  }
  if (lambda->family() != Group::Family::FreeAbelian &&
      lambda->family() != Group::Family::Free)
    throw std::invalid_argument("unsupported base group for the jump");
  return JumpEngine{std::move(lambda), std::move(flip_table)};
}

Patch JumpEngine::flip_at(const Elem& pos, const Patch& p) const {
  auto it = p.cells.find(pos);
  if (it == p.cells.end())
    throw std::invalid_argument("flip position outside the patch");
  Patch out = p;
  out.cells[pos] = flip[it->second];
  return out;
}

Patch JumpEngine::translate(const Elem& lam, const Patch& p) const {
  return translate_patch(*lambda, lam, p);
}

Patch JumpEngine::apply(std::span<const std::pair<int, int>> word,
                        const Patch& p) const {
  // rightmost factor acts first
  Patch cur = p;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    auto [gen, exp] = *it;
    if (gen == 0) {
      if (exp % 2 != 0) cur = flip_at(lambda->identity(), cur);
    } else {
      Elem g = lambda->generator(gen - 1);
      if (exp < 0) g = lambda->inverse(g);
      int steps = exp < 0 ? -exp : exp;
      for (int i = 0; i < steps; ++i) cur = translate(g, cur);
    }
  }
  return cur;
}

std::optional<std::string> f2_apply_gen(const std::string& x, int gen) {
  switch (gen) {
    case 1:
    case -1:
      if (x.empty()) return std::nullopt;
      return std::string(1, x[0] == '0' ? '1' : '0') + x.substr(1);
    case 2:
      if (x.empty()) return std::nullopt;
      if (x[0] == '0') return "0" + x;          // 0 -> 00
      if (x.size() < 2) return std::nullopt;    // "1" alone is ambiguous
      if (x[1] == '1') return x.substr(1);      // 11 -> 1
      return "01" + x.substr(2);                // 10 -> 01
    case -2:
      if (x.empty()) return std::nullopt;
      if (x[0] == '1') return "1" + x;          // 1 -> 11
      if (x.size() < 2) return std::nullopt;    // "0" alone is ambiguous
      if (x[1] == '0') return x.substr(1);      // 00 -> 0
      return "10" + x.substr(2);                // 01 -> 10
    default:
      throw std::invalid_argument("unknown generator");
  }
}

std::optional<std::string> f2_tail_action(const std::string& x,
                                          std::span<const int> word) {
  std::string cur = x;
  for (int gen : word) {
    auto next = f2_apply_gen(cur, gen);
    if (!next) return std::nullopt;
    cur = std::move(*next);
  }
  return cur;
}

OrbitCheck f2_orbit_check(const std::string& x, const std::string& y,
                          int depth) {
  OrbitCheck res;
  // tail identification with the least total cut, agreeing on the overlap
  for (std::size_t cost = 0; cost <= x.size() + y.size(); ++cost) {
    bool found = false;
    for (std::size_t m = 0; m <= std::min(cost, x.size()) && !found; ++m) {
      std::size_t n = cost - m;
      if (n > y.size()) continue;
      std::size_t overlap = std::min(x.size() - m, y.size() - n);
      bool ok = true;
      for (std::size_t k = 0; k < overlap; ++k)
        if (x[m + k] != y[n + k]) {
          ok = false;
          break;
        }
      if (ok) {
        res.et_m = static_cast<int>(m);
        res.et_n = static_cast<int>(n);
        res.et_overlap = static_cast<int>(overlap);
        res.et_consistent = true;
        found = true;
      }
    }
    if (found) break;
  }

  std::map<std::string, std::pair<std::string, int>> parent;
  std::deque<std::pair<std::string, int>> queue{{x, 0}};
  parent.emplace(x, std::make_pair(std::string(), 0));
  const int gens[4] = {1, -1, 2, -2};
  while (!queue.empty()) {
    auto [cur, d] = queue.front();
    queue.pop_front();
    if (cur == y) {
      res.connected = true;
      std::vector<int> path;
      std::string node = cur;
      while (node != x) {
        auto& [prev, gen] = parent.at(node);
        path.push_back(gen);
        node = prev;
      }
      std::reverse(path.begin(), path.end());
      res.path = std::move(path);
      return res;
    }
    if (d == depth) continue;
    for (int gen : gens) {
      auto next = f2_apply_gen(cur, gen);
      if (!next) continue;
      if (parent.emplace(*next, std::make_pair(cur, gen)).second)
        queue.emplace_back(std::move(*next), d + 1);
    }
  }
  return res;
}

std::optional<std::vector<int>> odometer_step(std::vector<int> digits,
                                              int direction) {
  if (digits.empty() || (direction != 1 && direction != -1))
    throw std::invalid_argument("odometer needs digits and direction ±1");
  for (auto& d : digits) {
    d += direction;
    if (d >= 0 && d <= 3) return digits;
    d = direction > 0 ? 0 : 3;  // carry / borrow into the next digit
  }
  return std::nullopt;
}

OdometerResult odometer_compression(const std::vector<int>& digits,
                                    bool declared_tail) {
  OdometerResult res;
  if (!declared_tail) {
    res.error = "no stable tail declared";
    return res;
  }
  int L = static_cast<int>(digits.size());
  int nx = 0;
  for (int i = L; i-- > 0;) {
    if (digits[i] == 1 || digits[i] == 2) continue;
    nx = i + 1;
    break;
  }
  if (nx >= L) {
    res.error = "no valid n_x within the truncation";
    return res;
  }
  res.digits = digits;
  res.digits[nx] = (res.digits[nx] + 2) % 4;
  res.n_x = nx;
  res.ok = true;
  return res;
}

}  // namespace gsd
