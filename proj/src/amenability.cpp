#include "amenability.hpp"

#include <algorithm>
#include <cmath>

namespace gsd {

Rational parse_rational(const std::string& s) {
  if (auto slash = s.find('/'); slash != std::string::npos)
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::int64_t den = 1;
    for (std::size_t i = dot + 1; i < s.size(); ++i) den *= 10;
    return Rational(std::stoll(digits), den);
  }
  return Rational(std::stoll(s), 1);
}

Rational folner_ratio(const Group& g, const std::vector<Elem>& F,
                      const std::vector<Elem>& S) {
  std::vector<Elem> f = sorted_unique(F);
  std::vector<Elem> fs = set_product(g, f, S);
  std::size_t common = 0;
  for (const Elem& e : fs)
    if (set_contains(f, e)) ++common;
  std::size_t sym = (fs.size() - common) + (f.size() - common);
  return Rational(static_cast<std::int64_t>(sym),
                  static_cast<std::int64_t>(f.size()));
}

bool verify_folner(const FolnerCertificate& c) {
  if (c.F.empty()) return false;
  Rational r = folner_ratio(*c.group, c.F, c.S);
  return r == c.ratio && r < c.epsilon;
}

std::vector<Elem> lamplighter_rectangle(const Group& g, int N) {
  if (g.family() != Group::Family::Lamplighter)
    throw std::invalid_argument("rectangle family is lamplighter-only");
  if (N > 9) throw ResourceLimit("rectangle too large");
  std::vector<Elem> out;
  int width = 2 * N + 1;
  for (std::uint64_t mask = 0; mask < (1ull << width); ++mask) {
    Elem::Lamp base;
    for (int i = 0; i < width; ++i)
      if (mask & (1ull << i)) base.lamps.push_back(i - N);
    for (int p = -N; p <= N; ++p) {
      Elem::Lamp l = base;
      l.pos = p;
      out.push_back(Elem{std::move(l)});
    }
  }
  return sorted_unique(std::move(out));
}

std::optional<FolnerCertificate> folner_search(GroupPtr group,
                                               const std::vector<Elem>& S,
                                               Rational epsilon, int r_max) {
  for (int r = 0; r <= r_max; ++r) {
    Ball b = ball(*group, S, r);
    Rational ratio = folner_ratio(*group, b.elements, S);
    if (ratio < epsilon) {
      FolnerCertificate c;
      c.group = group;
      c.S = S;
      c.F = b.elements;
      c.family = "ball(" + std::to_string(r) + ")";
      c.ratio = ratio;
      c.epsilon = epsilon;
      return c;
    }
  }
  return std::nullopt;
}

ExpansionOutcome expansion_certificate(GroupPtr group,
                                       const std::vector<Elem>& S, int R) {
  const Group& g = *group;
  Ball left = ball(g, S, R + 1);
  Ball right = ball(g, S, R);
  BipartiteGraph bg;
  bg.left_count = left.size();
  bg.right_count = right.size();
  bg.adj.resize(left.size());
  for (std::size_t i = 0; i < left.size(); ++i) {
    for (const Elem& s : S) {
      int j = right.position(g.multiply(left.elements[i], s));
      if (j >= 0) bg.adj[i].push_back(j);
    }
    std::sort(bg.adj[i].begin(), bg.adj[i].end());
    bg.adj[i].erase(std::unique(bg.adj[i].begin(), bg.adj[i].end()),
                    bg.adj[i].end());
  }
  KToOneResult r = k_to_one_surjection(bg, 2);
  ExpansionOutcome out;
  if (r.assignment) {
    ExpansionCertificate c;
    c.group = group;
    c.S = S;
    c.R = R;
    for (std::size_t i = 0; i < left.size(); ++i)
      if (r.assignment->left_to_right[i] != -1)
        c.assignment.emplace_back(
            left.elements[i], right.elements[r.assignment->left_to_right[i]]);
    out.cert = std::move(c);
  } else {
    std::vector<Elem> v;
    for (int j : r.violator->right_set) v.push_back(right.elements[j]);
    out.violator = std::move(v);
  }
  return out;
}

std::string verify_expansion(const ExpansionCertificate& c) {
  const Group& g = *c.group;
  Ball left = ball(g, c.S, c.R + 1);
  Ball right = ball(g, c.S, c.R);
  std::vector<Elem> ssorted = sorted_unique(c.S);
  std::map<Elem, int, ElemLess> count;
  std::map<Elem, char, ElemLess> used;
  for (const auto& [from, to] : c.assignment) {
    if (!left.contains(from)) return "domain element outside ball(R+1)";
    if (!right.contains(to)) return "target outside ball(R)";
    if (!used.emplace(from, 1).second) return "domain element assigned twice";
    Elem step = g.multiply(g.inverse(from), to);
    if (!set_contains(ssorted, step)) return "step outside S";
    ++count[to];
  }
  for (const Elem& h : right.elements) {
    auto it = count.find(h);
    int n = it == count.end() ? 0 : it->second;
    if (n != 2)
      return "preimage count " + std::to_string(n) + " at " + g.to_string(h);
  }
  return "";
}

ParadoxCertificate xt_patch_from_expansion(const ExpansionCertificate& c) {
  std::string err = verify_expansion(c);
  if (!err.empty())
    throw std::invalid_argument("invalid expansion certificate: " + err);
  const Group& g = *c.group;
  ParadoxCertificate p;
  p.kind = ParadoxCertificate::Kind::XT;
  p.group = c.group;
  p.T = sorted_unique(c.S);
  p.R = c.R + 1;
  p.R0 = c.R - 1;
  for (const auto& [from, to] : c.assignment)
    p.patch.emplace(from, std::make_pair(1, g.multiply(g.inverse(from), to)));
  return p;
}

namespace {

int elem_radius(const Group& g, const Elem& e, int max_r = 16) {
  for (int r = 0; r <= max_r; ++r)
    if (ball(g, r).contains(e)) return r;
  throw std::invalid_argument("element outside the supported radius");
}

}  // namespace

std::string verify_paradox(const ParadoxCertificate& c) {
  const Group& g = *c.group;
  Ball outer = ball(g, c.R);
  Ball interior = ball(g, c.R0);
  std::vector<Elem> ssorted = sorted_unique(c.S);
  std::vector<Elem> tsorted = sorted_unique(c.T);
  for (const auto& [cell, sym] : c.patch) {
    if (!outer.contains(cell)) return "cell outside ball(R)";
    const auto& [side, value] = sym;
    if (c.kind == ParadoxCertificate::Kind::XT && side != 1)
      return "XT patch carries an S-side symbol";
    if (side == 0 && !set_contains(ssorted, value)) return "symbol outside S";
    if (side == 1 && !set_contains(tsorted, value)) return "symbol outside T";
  }
  for (const Elem& gamma : interior.elements) {
    int s_hits = 0, t_hits = 0;
    for (const auto& [cell, sym] : c.patch) {
      if (g.multiply(cell, sym.second) == gamma)
        (sym.first == 0 ? s_hits : t_hits)++;
    }
    if (c.kind == ParadoxCertificate::Kind::XT) {
      if (t_hits != 2)
        return "preimage count " + std::to_string(t_hits) + " at " +
               g.to_string(gamma);
    } else {
      if (s_hits != 1)
        return "S-partition violated at " + g.to_string(gamma) + " (count " +
               std::to_string(s_hits) + ")";
      if (t_hits != 1)
        return "T-partition violated at " + g.to_string(gamma) + " (count " +
               std::to_string(t_hits) + ")";
    }
  }
  return "";
}

XstOutcome xst_certificate(GroupPtr group, const std::vector<Elem>& S,
                           const std::vector<Elem>& T,
                           const std::vector<PiecePredicate>& pieces, int R) {
  const Group& g = *group;
  XstOutcome out;
  int reach = 0;
  for (const Elem& e : S) reach = std::max(reach, elem_radius(g, e));
  for (const Elem& e : T) reach = std::max(reach, elem_radius(g, e));

  ParadoxCertificate c;
  c.kind = ParadoxCertificate::Kind::XST;
  c.group = group;
  c.S = sorted_unique(S);
  c.T = sorted_unique(T);
  c.R = R;
  c.R0 = R - reach;

  Ball b = ball(g, R);
  for (const Elem& gamma : b.elements) {
    const PiecePredicate* hit = nullptr;
    for (const auto& p : pieces) {
      if (!p.contains(gamma)) continue;
      if (hit) {
        out.error = "overlapping pieces at " + g.to_string(gamma);
        return out;
      }
      hit = &p;
    }
    if (!hit) {
      out.error = "piece coverage violation at " + g.to_string(gamma);
      return out;
    }
    c.patch.emplace(gamma, std::make_pair(hit->side, hit->value));
  }
  out.error = verify_paradox(c);
  if (out.error.empty()) out.cert = std::move(c);
  return out;
}

std::vector<PiecePredicate> classical_f2_pieces(const Group& f2) {
  auto last_letter = [](const Elem& e) -> int {
    const auto& w = std::get<Elem::Word>(e.v).letters;
    return w.empty() ? 0 : w.back();
  };
  auto a_power_ray = [](const Elem& e) {  // e, a^-1, a^-2, ...
    const auto& w = std::get<Elem::Word>(e.v).letters;
    return std::all_of(w.begin(), w.end(), [](int l) { return l == -1; });
  };
  Elem id = f2.identity();
  Elem a = f2.generator(0);
  Elem b = f2.generator(1);
  std::vector<PiecePredicate> pieces;
  pieces.push_back({"ends-a-or-a-ray", 0, id, [=](const Elem& e) {
                      return last_letter(e) == 1 || a_power_ray(e);
                    }});
  pieces.push_back({"ends-a-inv", 0, a, [=](const Elem& e) {
                      return last_letter(e) == -1 && !a_power_ray(e);
                    }});
  pieces.push_back({"ends-b", 1, id,
                    [=](const Elem& e) { return last_letter(e) == 2; }});
  pieces.push_back({"ends-b-inv", 1, b,
                    [=](const Elem& e) { return last_letter(e) == -2; }});
  return pieces;
}

TarskiReport tarski_report(const std::vector<ParadoxCertificate>& certs) {
  TarskiReport r;
  for (const auto& c : certs) {
    if (c.kind == ParadoxCertificate::Kind::XST) {
      int k = static_cast<int>(c.S.size() + c.T.size());
      std::vector<Elem> u = c.S;
      u.insert(u.end(), c.T.begin(), c.T.end());
      int l = static_cast<int>(sorted_unique(std::move(u)).size());
      if (!r.k_bound || k < *r.k_bound) r.k_bound = k;
      if (!r.l_bound || l < *r.l_bound) r.l_bound = l;
    } else {
      int l = static_cast<int>(c.T.size());
      if (!r.l_bound || l < *r.l_bound) r.l_bound = l;
    }
  }
  if (r.k_bound && r.l_bound) r.inequality_consistent = *r.l_bound <= *r.k_bound - 1;
  return r;
}

ProbeResult amenability_probe(GroupPtr group, int budget, Rational epsilon) {
  ProbeResult res;
  bool rectangles = group->family() == Group::Family::Lamplighter;
  std::vector<Elem> S = ball(*group, 1).elements;
  // Small-radius 2-to-1 expansion succeeds even on Z^d and the lamplighter
  // (any group with enough growth near the identity), so a single success
  // is not returned eagerly. A Hall violator at any radius disqualifies
  // the expansion side for good; the deepest surviving certificate is
  // returned only once the budget is spent without a Følner hit.
  std::optional<ExpansionCertificate> deepest;
  bool refuted = false;
  for (int r = 1; r <= budget; ++r) {
    res.rounds = r;
    std::vector<Elem> F =
        rectangles ? lamplighter_rectangle(*group, r) : ball(*group, r).elements;
    Rational ratio = folner_ratio(*group, F, S);
    if (ratio < epsilon) {
      FolnerCertificate c;
      c.group = group;
      c.S = S;
      c.F = std::move(F);
      c.family = (rectangles ? "rect(" : "ball(") + std::to_string(r) + ")";
      c.ratio = ratio;
      c.epsilon = epsilon;
      res.folner = std::move(c);
      return res;
    }
    if (refuted) continue;
    try {
      ExpansionOutcome e = expansion_certificate(group, S, r);
      if (e.cert)
        deepest = std::move(e.cert);
      else
        refuted = true;
    } catch (const ResourceLimit&) {
      // out of room at this radius; earlier certificates stay valid
    }
  }
  if (!refuted) res.expansion = std::move(deepest);
  return res;
}

}  // namespace gsd
