#include "subshift.hpp"

#include <algorithm>
#include <cassert>

namespace gsd {

int SubshiftSpec::symbol(const std::string& s) const {
  for (std::size_t i = 0; i < alphabet.size(); ++i)
    if (alphabet[i] == s) return static_cast<int>(i);
  throw std::invalid_argument("unknown symbol: " + s);
}

SubshiftSpec full_shift(GroupPtr g, int symbols) {
  SubshiftSpec s;
  s.group = std::move(g);
  for (int i = 0; i < symbols; ++i) s.alphabet.push_back(std::to_string(i));
  s.window = {s.group->identity()};
  s.oracle = [](std::span<const int>) { return true; };
  s.name = "full-shift(" + std::to_string(symbols) + ")@" + s.group->descriptor();
  return s;
}

SubshiftSpec golden_mean(GroupPtr z) {
  SubshiftSpec s;
  s.group = std::move(z);
  s.alphabet = {"0", "1"};
  Elem g0 = s.group->generator(0);
  s.window = {s.group->identity(), g0};
  s.allowed = std::set<std::vector<int>>{{0, 0}, {0, 1}, {1, 0}};
  s.name = "golden-mean@" + s.group->descriptor();
  return s;
}

SubshiftSpec hard_core(GroupPtr g) {
  SubshiftSpec s;
  s.group = std::move(g);
  s.alphabet = {"0", "1"};
  s.window = s.group->standard_generators(true);
  // no two adjacent 1s: a 1 at the center forbids 1 on every neighbor
  s.oracle = [](std::span<const int> p) {
    if (p[0] == 0) return true;
    for (std::size_t i = 1; i < p.size(); ++i)
      if (p[i] == 1) return false;
    return true;
  };
  s.name = "hard-core@" + s.group->descriptor();
  return s;
}

Patch translate_patch(const Group& g, const Elem& gamma, const Patch& p) {
  Patch out;
  for (const auto& [l, v] : p.cells) out.cells.emplace(g.multiply(gamma, l), v);
  return out;
}

namespace {

// Window placements γ with γ·W inside a fixed cell list, with the cell
// positions of γ·W precomputed. Shared by patch_check and the searcher.
struct Placement {
  Elem gamma;
  std::vector<int> pos;  // pos[i] = cell index of gamma*window[i]
  int last = 0;          // max over pos
};

std::vector<Placement> placements(const SubshiftSpec& spec,
                                  const std::vector<Elem>& cells) {
  const Group& g = *spec.group;
  std::map<Elem, int, ElemLess> index;
  for (std::size_t i = 0; i < cells.size(); ++i)
    index.emplace(cells[i], static_cast<int>(i));
  std::map<Elem, char, ElemLess> seen;
  std::vector<Placement> out;
  for (const Elem& c : cells)
    for (const Elem& w : spec.window) {
      Elem gamma = g.multiply(c, g.inverse(w));
      if (!seen.emplace(gamma, 1).second) continue;
      Placement pl;
      pl.gamma = gamma;
      bool ok = true;
      for (const Elem& wi : spec.window) {
        auto it = index.find(g.multiply(gamma, wi));
        if (it == index.end()) {
          ok = false;
          break;
        }
        pl.pos.push_back(it->second);
        pl.last = std::max(pl.last, it->second);
      }
      if (ok) out.push_back(std::move(pl));
    }
  std::sort(out.begin(), out.end(), [](const Placement& a, const Placement& b) {
    return elem_less(a.gamma, b.gamma);
  });
  return out;
}

struct Searcher {
  const SubshiftSpec& spec;
  std::vector<Elem> cells;
  std::vector<int> value;
  std::size_t fixed = 0;  // leading cells pre-assigned from the base patch
  std::vector<std::vector<const Placement*>> by_last;
  std::vector<Placement> store;
  std::uint64_t nodes = 0, cap = 0;

  Searcher(const SubshiftSpec& s, const Patch& base,
           std::span<const Elem> target, std::uint64_t cap_)
      : spec(s), cap(cap_) {
    for (const auto& [l, v] : base.cells) {
      cells.push_back(l);
      value.push_back(v);
    }
    fixed = cells.size();
    for (const Elem& t : target)
      if (!base.cells.count(t)) {
        cells.push_back(t);
        value.push_back(-1);
      }
    store = placements(spec, cells);
    by_last.resize(cells.size() + 1);
    for (const Placement& p : store)
      by_last[std::max<std::size_t>(p.last + 1, fixed)].push_back(&p);
  }

  bool consistent_at(std::size_t i) const {
    // placements completed exactly when cell i-1 got its value
    for (const Placement* p : by_last[i]) {
      std::vector<int> pat(p->pos.size());
      for (std::size_t k = 0; k < p->pos.size(); ++k) pat[k] = value[p->pos[k]];
      if (!spec.admits(pat)) return false;
    }
    return true;
  }

  // visit(i): all cells < i assigned and locally consistent
  template <typename Leaf>
  bool run(std::size_t i, const Leaf& leaf) {
    if (++nodes > cap) throw ResourceLimit("pattern search cap exceeded");
    if (i == cells.size()) return leaf();
    for (int a = 0; a < static_cast<int>(spec.alphabet.size()); ++a) {
      value[i] = a;
      if (consistent_at(i + 1) && run(i + 1, leaf)) return true;
    }
    value[i] = -1;
    return false;
  }

  template <typename Leaf>
  bool start(const Leaf& leaf) {
    for (std::size_t i = 1; i <= fixed; ++i)
      if (!consistent_at(i)) return false;
    if (fixed == cells.size()) return leaf();
    return run(fixed, leaf);
  }

  Patch snapshot() const {
    Patch p;
    for (std::size_t i = 0; i < cells.size(); ++i) p.cells.emplace(cells[i], value[i]);
    return p;
  }
};

}  // namespace

std::optional<Elem> patch_check(const SubshiftSpec& spec, const Patch& p) {
  std::vector<Elem> cells;
  for (const auto& [l, v] : p.cells) cells.push_back(l);
  auto place = placements(spec, cells);
  for (const Placement& pl : place) {
    std::vector<int> pat(pl.pos.size());
    for (std::size_t k = 0; k < pl.pos.size(); ++k) {
      auto it = p.cells.find(cells[pl.pos[k]]);
      pat[k] = it->second;
    }
    if (!spec.admits(pat)) return pl.gamma;
  }
  return std::nullopt;
}

std::optional<Patch> extend_search(const SubshiftSpec& spec, const Patch& base,
                                   std::span<const Elem> target,
                                   std::uint64_t cap) {
  Searcher s(spec, base, target, cap);
  std::optional<Patch> out;
  s.start([&] {
    out = s.snapshot();
    return true;
  });
  return out;
}

std::uint64_t count_patterns(const SubshiftSpec& spec,
                             std::span<const Elem> domain, std::uint64_t cap) {
  Searcher s(spec, Patch{}, domain, cap);
  std::uint64_t n = 0;
  s.start([&] {
    ++n;
    return false;
  });
  return n;
}

std::vector<Patch> enumerate_patterns(const SubshiftSpec& spec,
                                      std::span<const Elem> domain,
                                      std::uint64_t cap) {
  Searcher s(spec, Patch{}, domain, cap);
  std::vector<Patch> out;
  s.start([&] {
    out.push_back(s.snapshot());
    return false;
  });
  return out;
}

bool empty_on_ball(const SubshiftSpec& spec, int r, std::uint64_t cap) {
  Ball b = ball(*spec.group, r);
  return !extend_search(spec, Patch{}, b.elements, cap).has_value();
}

SubshiftSpec product_spec(const SubshiftSpec& a, const SubshiftSpec& b) {
  if (a.group->descriptor() != b.group->descriptor())
    throw std::invalid_argument("product requires a common group");
  SubshiftSpec s;
  s.group = a.group;
  int nb = static_cast<int>(b.alphabet.size());
  for (const auto& sa : a.alphabet)
    for (const auto& sb : b.alphabet) s.alphabet.push_back(sa + "|" + sb);

  std::vector<Elem> w = a.window;
  w.insert(w.end(), b.window.begin(), b.window.end());
  s.window = sorted_unique(std::move(w));
  std::vector<int> pa, pb;
  auto locate = [&](const Elem& e) {
    auto it = std::lower_bound(s.window.begin(), s.window.end(), e, ElemLess{});
    return static_cast<int>(it - s.window.begin());
  };
  for (const Elem& e : a.window) pa.push_back(locate(e));
  for (const Elem& e : b.window) pb.push_back(locate(e));

  s.oracle = [a, b, pa, pb, nb](std::span<const int> p) {
    std::vector<int> qa(pa.size()), qb(pb.size());
    for (std::size_t i = 0; i < pa.size(); ++i) qa[i] = p[pa[i]] / nb;
    for (std::size_t i = 0; i < pb.size(); ++i) qb[i] = p[pb[i]] % nb;
    return a.admits(qa) && b.admits(qb);
  };
  s.name = "product(" + a.name + "," + b.name + ")";
  return s;
}

GeneratorCheckResult clopen_generator_check(const SubshiftSpec& spec,
                                            const CylinderLabeling& labeling,
                                            int w, std::uint64_t cap) {
  const Group& g = *spec.group;
  Ball bd = ball(g, labeling.depth);
  Ball bw = ball(g, w);
  Ball big = ball(g, w + labeling.depth);
  auto patches = enumerate_patterns(spec, big.elements, cap);

  // code of a patch: the label at every translate in ball(w)
  std::map<std::vector<int>, int> seen;
  GeneratorCheckResult res;
  res.radius = w;
  for (std::size_t idx = 0; idx < patches.size(); ++idx) {
    std::vector<int> code;
    code.reserve(bw.size());
    for (const Elem& gamma : bw.elements) {
      std::vector<int> pat;
      pat.reserve(bd.size());
      for (const Elem& l : bd.elements)
        pat.push_back(patches[idx].cells.at(g.multiply(gamma, l)));
      code.push_back(labeling.label(pat));
    }
    auto [it, fresh] = seen.emplace(std::move(code), static_cast<int>(idx));
    if (!fresh) {
      res.counterexample = {patches[it->second], patches[idx]};
      return res;
    }
  }
  res.separates = true;
  return res;
}

namespace {

// per check-patch data for the compression search
struct CheckedPatch {
  int at_e = -1;                 // depth-d pattern index at the identity
  std::vector<int> at;           // depth-d pattern index at each translation
};

struct CompressionContext {
  std::vector<std::vector<int>> patterns;  // admissible d-patterns
  std::vector<CheckedPatch> checked;
  std::vector<std::vector<std::uint64_t>> cov;  // cov[p][j]
  int m = 0;  // translation count
};

int element_length(const Group& g, const Elem& e, int max_r) {
  for (int r = 0; r <= max_r; ++r)
    if (ball(g, r).contains(e)) return r;
  throw std::invalid_argument("translation outside the supported radius");
}

CompressionContext build_context(const SubshiftSpec& spec, int d,
                                 std::span<const Elem> translations,
                                 int check_radius, std::uint64_t cap) {
  const Group& g = *spec.group;
  Ball bd = ball(g, d);
  Ball bc = ball(g, check_radius);
  CompressionContext ctx;
  ctx.m = static_cast<int>(translations.size());
  auto dpatches = enumerate_patterns(spec, bd.elements, cap);
  std::map<std::vector<int>, int> pindex;
  for (auto& p : dpatches) {
    std::vector<int> flat;
    for (const Elem& l : bd.elements) flat.push_back(p.cells.at(l));
    pindex.emplace(flat, static_cast<int>(ctx.patterns.size()));
    ctx.patterns.push_back(std::move(flat));
  }
  ctx.cov.assign(ctx.patterns.size(),
                 std::vector<std::uint64_t>(ctx.m, 0));

  auto cpatches = enumerate_patterns(spec, bc.elements, cap);
  for (const Patch& q : cpatches) {
    CheckedPatch info;
    auto extract = [&](const Elem& gamma) {
      std::vector<int> flat;
      flat.reserve(bd.size());
      for (const Elem& l : bd.elements)
        flat.push_back(q.cells.at(g.multiply(gamma, l)));
      auto it = pindex.find(flat);
      return it == pindex.end() ? -1 : it->second;
    };
    info.at_e = extract(g.identity());
    for (int j = 0; j < ctx.m; ++j) {
      int p = extract(translations[j]);
      info.at.push_back(p);
      if (p >= 0) ++ctx.cov[p][j];
    }
    ctx.checked.push_back(std::move(info));
  }
  return ctx;
}

// checks partition/disjointness/missed-cylinder for a full assignment
std::string verify_assignment(const CompressionContext& ctx,
                              const std::vector<int>& piece,
                              std::vector<int>* missed_out) {
  for (std::size_t p = 0; p < ctx.patterns.size(); ++p)
    if (piece[p] < 0 || piece[p] >= ctx.m)
      return "pattern " + std::to_string(p) + " has no piece";
  std::vector<char> covered(ctx.patterns.size(), 0);
  std::vector<char> realized(ctx.patterns.size(), 0);
  for (const CheckedPatch& q : ctx.checked) {
    int hits = 0;
    for (int j = 0; j < ctx.m; ++j)
      if (q.at[j] >= 0 && piece[q.at[j]] == j) ++hits;
    if (hits > 1) return "translated images overlap";
    if (q.at_e >= 0) {
      realized[q.at_e] = 1;
      if (hits == 1) covered[q.at_e] = 1;
    }
  }
  std::vector<int> missed;
  for (std::size_t p = 0; p < ctx.patterns.size(); ++p)
    if (realized[p] && !covered[p]) missed.push_back(static_cast<int>(p));
  if (missed.empty()) return "no realized cylinder is missed";
  if (missed_out) *missed_out = std::move(missed);
  return "";
}

}  // namespace

std::string verify_compression_witness(const SubshiftSpec& spec,
                                       const CompressionWitness& w,
                                       std::uint64_t cap) {
  CompressionContext ctx =
      build_context(spec, w.depth, w.translations, w.check_radius, cap);
  if (ctx.patterns != w.patterns) return "pattern list mismatch";
  if (w.piece.size() != ctx.patterns.size()) return "piece table arity mismatch";
  std::vector<int> missed;
  std::string err = verify_assignment(ctx, w.piece, &missed);
  if (!err.empty()) return err;
  if (missed != w.missed) return "missed-cylinder set mismatch";
  return "";
}

ParadoxSearchResult clopen_paradox_search(const SubshiftSpec& spec, int d,
                                          std::span<const Elem> translations,
                                          ParadoxMode mode,
                                          std::uint64_t cap) {
  const Group& g = *spec.group;
  int reach = 0;
  for (const Elem& t : translations)
    reach = std::max(reach, element_length(g, t, 16));
  int check_radius = d + reach;
  CompressionContext ctx =
      build_context(spec, d, translations, check_radius, cap);
  std::uint64_t total = ctx.checked.size();
  std::size_t np = ctx.patterns.size();

  ParadoxSearchResult res;
  auto emit = [&](const std::vector<int>& piece, std::vector<int> missed) {
    CompressionWitness w;
    w.depth = d;
    w.check_radius = check_radius;
    w.translations.assign(translations.begin(), translations.end());
    w.patterns = ctx.patterns;
    w.piece = piece;
    w.missed = std::move(missed);
    res.witness = std::move(w);
  };

  if (mode == ParadoxMode::Compression) {
    // Least-section candidate: assign each cylinder to the first listed
    // translation t whose symbol sits at cell t⁻¹, when symbols are
    // element strings. This is the canonical section of a 2-to-1 map.
    Ball bd = ball(g, d);
    bool applicable = true;
    std::vector<int> candidate(np, -1);
    std::vector<int> tpos(translations.size(), -1);
    std::vector<int> tsym(translations.size(), -1);
    for (std::size_t j = 0; j < translations.size() && applicable; ++j) {
      tpos[j] = bd.position(g.inverse(translations[j]));
      if (tpos[j] < 0) {
        applicable = false;
        break;
      }
      std::string name = g.to_string(translations[j]);
      tsym[j] = -1;
      for (std::size_t a = 0; a < spec.alphabet.size(); ++a)
        if (spec.alphabet[a] == name) tsym[j] = static_cast<int>(a);
      if (tsym[j] < 0) applicable = false;
    }
    if (applicable) {
      for (std::size_t p = 0; p < np && applicable; ++p) {
        for (std::size_t j = 0; j < translations.size(); ++j)
          if (ctx.patterns[p][tpos[j]] == tsym[j]) {
            candidate[p] = static_cast<int>(j);
            break;
          }
        if (candidate[p] < 0) applicable = false;
      }
    }
    if (applicable) {
      std::vector<int> missed;
      if (verify_assignment(ctx, candidate, &missed).empty()) {
        emit(candidate, std::move(missed));
        res.exhausted = false;
        return res;
      }
    }

    // exhaustive assignment search with an exact counting prune:
    // disjoint images forced to miss a cylinder need Σ covered < total
    std::vector<std::uint64_t> min_cov(np, 0);
    for (std::size_t p = 0; p < np; ++p) {
      std::uint64_t mn = ctx.cov[p][0];
      for (int j = 1; j < ctx.m; ++j) mn = std::min(mn, ctx.cov[p][j]);
      min_cov[p] = mn;
    }
    std::vector<std::uint64_t> tail(np + 1, 0);
    for (std::size_t p = np; p-- > 0;) tail[p] = tail[p + 1] + min_cov[p];

    std::vector<int> piece(np, -1);
    std::uint64_t nodes = 0;
    bool truncated = false;
    auto dfs = [&](auto&& self, std::size_t p, std::uint64_t sum) -> bool {
      if (++nodes > cap) {
        truncated = true;
        return false;
      }
      if (sum + tail[p] >= total && total > 0) return false;
      if (p == np) {
        std::vector<int> missed;
        if (verify_assignment(ctx, piece, &missed).empty()) {
          emit(piece, std::move(missed));
          return true;
        }
        return false;
      }
      for (int j = 0; j < ctx.m; ++j) {
        piece[p] = j;
        if (self(self, p + 1, sum + ctx.cov[p][j])) return true;
      }
      piece[p] = -1;
      return false;
    };
    bool found = np > 0 && ctx.m > 0 && dfs(dfs, 0, 0);
    res.exhausted = !found && !truncated;
    return res;
  }

  // Paradox mode: every cylinder joins one piece of one of two families;
  // each family's translated images must tile the check region exactly.
  std::vector<int> choice(np, -1);  // j for family 1, m+j for family 2
  std::uint64_t nodes = 0;
  bool truncated = false;
  auto verify_paradox = [&]() {
    for (const CheckedPatch& q : ctx.checked) {
      int h1 = 0, h2 = 0;
      for (int j = 0; j < ctx.m; ++j) {
        if (q.at[j] < 0) continue;
        if (choice[q.at[j]] == j) ++h1;
        if (choice[q.at[j]] == ctx.m + j) ++h2;
      }
      if (h1 != 1 || h2 != 1) return false;
    }
    return true;
  };
  auto dfs2 = [&](auto&& self, std::size_t p) -> bool {
    if (++nodes > cap) {
      truncated = true;
      return false;
    }
    if (p == np) {
      if (!verify_paradox()) return false;
      emit(choice, {});
      return true;
    }
    for (int c = 0; c < 2 * ctx.m; ++c) {
      choice[p] = c;
      if (self(self, p + 1)) return true;
    }
    choice[p] = -1;
    return false;
  };
  bool found = np > 0 && ctx.m > 0 && dfs2(dfs2, 0);
  res.exhausted = !found && !truncated;
  return res;
}

}  // namespace gsd
