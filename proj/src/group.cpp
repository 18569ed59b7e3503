#include "group.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <deque>
#include <sstream>

namespace gsd {

namespace {

int variant_rank(const Elem& e) { return static_cast<int>(e.v.index()); }

template <typename T>
int lex_compare(const std::vector<T>& a, const std::vector<T>& b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] < b[i]) return -1;
    if (b[i] < a[i]) return 1;
  }
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

int compare(const Elem& a, const Elem& b);

int compare_pairs(const std::vector<std::pair<int, Elem>>& a,
                  const std::vector<std::pair<int, Elem>>& b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].first != b[i].first) return a[i].first < b[i].first ? -1 : 1;
    int c = compare(a[i].second, b[i].second);
    if (c != 0) return c;
  }
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

int compare_elems(const std::vector<Elem>& a, const std::vector<Elem>& b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = compare(a[i], b[i]);
    if (c != 0) return c;
  }
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

int compare(const Elem& a, const Elem& b) {
  if (variant_rank(a) != variant_rank(b))
    return variant_rank(a) < variant_rank(b) ? -1 : 1;
  switch (a.v.index()) {
    case 0:
      return lex_compare(std::get<Elem::Vec>(a.v).coords,
                         std::get<Elem::Vec>(b.v).coords);
    case 1: {
      // shortlex-flavored: shorter words first
      const auto& wa = std::get<Elem::Word>(a.v).letters;
      const auto& wb = std::get<Elem::Word>(b.v).letters;
      if (wa.size() != wb.size()) return wa.size() < wb.size() ? -1 : 1;
      return lex_compare(wa, wb);
    }
    case 2: {
      const auto& la = std::get<Elem::Lamp>(a.v);
      const auto& lb = std::get<Elem::Lamp>(b.v);
      if (la.pos != lb.pos) return la.pos < lb.pos ? -1 : 1;
      return lex_compare(la.lamps, lb.lamps);
    }
    case 3:
      return compare_elems(std::get<Elem::Pair>(a.v).parts,
                           std::get<Elem::Pair>(b.v).parts);
    default:
      return compare_pairs(std::get<Elem::Alt>(a.v).factors,
                           std::get<Elem::Alt>(b.v).factors);
  }
}

}  // namespace

bool elem_less(const Elem& a, const Elem& b) { return compare(a, b) < 0; }

GroupPtr Group::free_abelian(int dim) {
  if (dim < 1) throw std::invalid_argument("free-abelian dimension must be >= 1");
  return GroupPtr(new Group(Family::FreeAbelian, dim, nullptr, nullptr));
}

GroupPtr Group::free_group(int rank) {
  if (rank < 1 || rank > 26) throw std::invalid_argument("free rank must be in 1..26");
  return GroupPtr(new Group(Family::Free, rank, nullptr, nullptr));
}

GroupPtr Group::lamplighter() {
  return GroupPtr(new Group(Family::Lamplighter, 0, nullptr, nullptr));
}

GroupPtr Group::direct(GroupPtr left, GroupPtr right) {
  return GroupPtr(new Group(Family::Direct, 0, std::move(left), std::move(right)));
}

GroupPtr Group::free_product(GroupPtr left, GroupPtr right) {
  return GroupPtr(new Group(Family::FreeProd, 0, std::move(left), std::move(right)));
}

Elem Group::identity() const {
  switch (family_) {
    case Family::FreeAbelian:
      return Elem{Elem::Vec{std::vector<std::int64_t>(dim_, 0)}};
    case Family::Free:
      return Elem{Elem::Word{}};
    case Family::Lamplighter:
      return Elem{Elem::Lamp{}};
    case Family::Direct:
      return Elem{Elem::Pair{{left_->identity(), right_->identity()}}};
    case Family::FreeProd:
      return Elem{Elem::Alt{}};
  }
  throw std::logic_error("unreachable");
}

Elem Group::multiply(const Elem& a, const Elem& b) const {
  switch (family_) {
    case Family::FreeAbelian: {
      const auto& va = std::get<Elem::Vec>(a.v).coords;
      const auto& vb = std::get<Elem::Vec>(b.v).coords;
      Elem::Vec out;
      out.coords.resize(dim_);
      for (int i = 0; i < dim_; ++i) out.coords[i] = va[i] + vb[i];
      return Elem{std::move(out)};
    }
    case Family::Free: {
      const auto& wa = std::get<Elem::Word>(a.v).letters;
      const auto& wb = std::get<Elem::Word>(b.v).letters;
      Elem::Word out;
      out.letters = wa;
      for (auto l : wb) {
        if (!out.letters.empty() && out.letters.back() == -l)
          out.letters.pop_back();
        else
          out.letters.push_back(l);
      }
      return Elem{std::move(out)};
    }
    case Family::Lamplighter: {
      const auto& la = std::get<Elem::Lamp>(a.v);
      const auto& lb = std::get<Elem::Lamp>(b.v);
      // (A,p)(B,q) = (A xor (B+p), p+q)
      std::vector<std::int64_t> lamps = la.lamps;
      for (auto i : lb.lamps) {
        auto j = i + la.pos;
        auto it = std::lower_bound(lamps.begin(), lamps.end(), j);
        if (it != lamps.end() && *it == j)
          lamps.erase(it);
        else
          lamps.insert(it, j);
      }
      return Elem{Elem::Lamp{std::move(lamps), la.pos + lb.pos}};
    }
    case Family::Direct: {
      const auto& pa = std::get<Elem::Pair>(a.v).parts;
      const auto& pb = std::get<Elem::Pair>(b.v).parts;
      return Elem{Elem::Pair{{left_->multiply(pa[0], pb[0]),
                              right_->multiply(pa[1], pb[1])}}};
    }
    case Family::FreeProd: {
      const auto& fa = std::get<Elem::Alt>(a.v).factors;
      const auto& fb = std::get<Elem::Alt>(b.v).factors;
      std::vector<std::pair<int, Elem>> out = fa;
      std::size_t i = 0;
      while (i < fb.size()) {
        const auto& [side, f] = fb[i];
        if (!out.empty() && out.back().first == side) {
          const Group& fac = side == 0 ? *left_ : *right_;
          Elem prod = fac.multiply(out.back().second, f);
          out.pop_back();
          if (!fac.is_identity(prod)) {
            out.emplace_back(side, std::move(prod));
            // no further cancellation possible at this boundary
            ++i;
          } else {
            ++i;  // cancelled; next factor may merge with the new tail
          }
        } else {
          out.emplace_back(side, f);
          ++i;
        }
      }
      return Elem{Elem::Alt{std::move(out)}};
    }
  }
  throw std::logic_error("unreachable");
}

Elem Group::inverse(const Elem& a) const {
  switch (family_) {
    case Family::FreeAbelian: {
      Elem::Vec out = std::get<Elem::Vec>(a.v);
      for (auto& c : out.coords) c = -c;
      return Elem{std::move(out)};
    }
    case Family::Free: {
      const auto& w = std::get<Elem::Word>(a.v).letters;
      Elem::Word out;
      out.letters.assign(w.rbegin(), w.rend());
      for (auto& l : out.letters) l = -l;
      return Elem{std::move(out)};
    }
    case Family::Lamplighter: {
      const auto& l = std::get<Elem::Lamp>(a.v);
      std::vector<std::int64_t> lamps;
      lamps.reserve(l.lamps.size());
      for (auto i : l.lamps) lamps.push_back(i - l.pos);
      std::sort(lamps.begin(), lamps.end());
      return Elem{Elem::Lamp{std::move(lamps), -l.pos}};
    }
    case Family::Direct: {
      const auto& p = std::get<Elem::Pair>(a.v).parts;
      return Elem{Elem::Pair{{left_->inverse(p[0]), right_->inverse(p[1])}}};
    }
    case Family::FreeProd: {
      const auto& f = std::get<Elem::Alt>(a.v).factors;
      std::vector<std::pair<int, Elem>> out;
      out.reserve(f.size());
      for (auto it = f.rbegin(); it != f.rend(); ++it) {
        const Group& fac = it->first == 0 ? *left_ : *right_;
        out.emplace_back(it->first, fac.inverse(it->second));
      }
      return Elem{Elem::Alt{std::move(out)}};
    }
  }
  throw std::logic_error("unreachable");
}

int Group::generator_count() const {
  switch (family_) {
    case Family::FreeAbelian:
      return dim_;
    case Family::Free:
      return dim_;
    case Family::Lamplighter:
      return 2;  // a (lamp toggle at 0), t (cursor step)
    case Family::Direct:
    case Family::FreeProd:
      return left_->generator_count() + right_->generator_count();
  }
  throw std::logic_error("unreachable");
}

Elem Group::generator(int i) const {
  if (i < 0 || i >= generator_count())
    throw std::invalid_argument("generator index out of range");
  switch (family_) {
    case Family::FreeAbelian: {
      Elem::Vec v{std::vector<std::int64_t>(dim_, 0)};
      v.coords[i] = 1;
      return Elem{std::move(v)};
    }
    case Family::Free:
      return Elem{Elem::Word{{static_cast<std::int32_t>(i + 1)}}};
    case Family::Lamplighter:
      if (i == 0) return Elem{Elem::Lamp{{0}, 0}};
      return Elem{Elem::Lamp{{}, 1}};
    case Family::Direct: {
      int nl = left_->generator_count();
      Elem e = identity();
      auto& parts = std::get<Elem::Pair>(e.v).parts;
      if (i < nl)
        parts[0] = left_->generator(i);
      else
        parts[1] = right_->generator(i - nl);
      return e;
    }
    case Family::FreeProd: {
      int nl = left_->generator_count();
      Elem::Alt alt;
      if (i < nl)
        alt.factors.emplace_back(0, left_->generator(i));
      else
        alt.factors.emplace_back(1, right_->generator(i - nl));
      return Elem{std::move(alt)};
    }
  }
  throw std::logic_error("unreachable");
}

std::string Group::generator_name(int i) const {
  switch (family_) {
    case Family::FreeAbelian:
      return "e" + std::to_string(i + 1);
    case Family::Free:
      return std::string(1, static_cast<char>('a' + i));
    case Family::Lamplighter:
      return i == 0 ? "a" : "t";
    case Family::Direct:
    case Family::FreeProd: {
      int nl = left_->generator_count();
      if (i < nl) return "l." + left_->generator_name(i);
      return "r." + right_->generator_name(i - nl);
    }
  }
  throw std::logic_error("unreachable");
}

std::vector<Elem> Group::standard_generators(bool with_identity) const {
  std::vector<Elem> out;
  if (with_identity) out.push_back(identity());
  for (int i = 0; i < generator_count(); ++i) {
    Elem g = generator(i);
    Elem gi = inverse(g);
    out.push_back(g);
    if (!(gi == g)) out.push_back(std::move(gi));
  }
  return out;
}

namespace {

std::string vec_to_string(const Elem::Vec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.coords.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v.coords[i]);
  }
  return s + ")";
}

}  // namespace

std::string Group::to_string(const Elem& e) const {
  switch (family_) {
    case Family::FreeAbelian:
      return vec_to_string(std::get<Elem::Vec>(e.v));
    case Family::Free: {
      const auto& w = std::get<Elem::Word>(e.v).letters;
      if (w.empty()) return "e";
      std::string s;
      for (auto l : w)
        s += l > 0 ? static_cast<char>('a' + l - 1)
                   : static_cast<char>('A' - l - 1);
      return s;
    }
    case Family::Lamplighter: {
      const auto& l = std::get<Elem::Lamp>(e.v);
      std::string s = "({";
      for (std::size_t i = 0; i < l.lamps.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(l.lamps[i]);
      }
      s += "};" + std::to_string(l.pos) + ")";
      return s;
    }
    case Family::Direct: {
      const auto& p = std::get<Elem::Pair>(e.v).parts;
      return "(" + left_->to_string(p[0]) + "|" + right_->to_string(p[1]) + ")";
    }
    case Family::FreeProd: {
      const auto& f = std::get<Elem::Alt>(e.v).factors;
      if (f.empty()) return "e";
      std::string s = "[";
      for (std::size_t i = 0; i < f.size(); ++i) {
        if (i) s += "|";
        const Group& fac = f[i].first == 0 ? *left_ : *right_;
        s += std::to_string(f[i].first) + ":" + fac.to_string(f[i].second);
      }
      return s + "]";
    }
  }
  throw std::logic_error("unreachable");
}

namespace {

struct ParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// splits "a,b" at the top-level comma (ignoring nested parens/brackets)
std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == '[' || c == '{') ++depth;
    if (c == ')' || c == ']' || c == '}') --depth;
    if (c == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string strip(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

}  // namespace

Elem Group::parse_elem(const std::string& raw) const {
  std::string s = strip(raw);
  if (s.empty()) throw ParseError("empty element string");
  switch (family_) {
    case Family::FreeAbelian: {
      if (s == "e") return identity();
      std::string body = s;
      if (s.front() == '(') {
        if (s.back() != ')') throw ParseError("bad vector: " + s);
        body = s.substr(1, s.size() - 2);
      }
      auto parts = split_top(body, ',');
      if (static_cast<int>(parts.size()) != dim_)
        throw ParseError("vector arity mismatch: " + s);
      Elem::Vec v;
      for (auto& p : parts) v.coords.push_back(std::stoll(strip(p)));
      return Elem{std::move(v)};
    }
    case Family::Free: {
      if (s == "e") return identity();
      Elem::Word w;
      Elem acc = identity();
      for (char c : s) {
        std::int32_t l;
        if (c >= 'a' && c < 'a' + dim_)
          l = c - 'a' + 1;
        else if (c >= 'A' && c < 'A' + dim_)
          l = -(c - 'A' + 1);
        else
          throw ParseError(std::string("unknown generator symbol '") + c + "'");
        acc = multiply(acc, Elem{Elem::Word{{l}}});
      }
      return acc;
    }
    case Family::Lamplighter: {
      if (s == "e") return identity();
      // "({0,2};3)"
      auto open = s.find('{');
      auto close = s.find('}');
      auto semi = s.find(';');
      if (s.front() != '(' || s.back() != ')' || open == std::string::npos ||
          close == std::string::npos || semi == std::string::npos)
        throw ParseError("bad lamplighter element: " + s);
      Elem::Lamp l;
      std::string lamps = s.substr(open + 1, close - open - 1);
      if (!strip(lamps).empty())
        for (auto& p : split_top(lamps, ','))
          l.lamps.push_back(std::stoll(strip(p)));
      std::sort(l.lamps.begin(), l.lamps.end());
      l.pos = std::stoll(strip(s.substr(semi + 1, s.size() - semi - 2)));
      return Elem{std::move(l)};
    }
    case Family::Direct: {
      if (s == "e") return identity();
      if (s.front() != '(' || s.back() != ')')
        throw ParseError("bad product element: " + s);
      auto parts = split_top(s.substr(1, s.size() - 2), '|');
      if (parts.size() != 2) throw ParseError("bad product element: " + s);
      return Elem{Elem::Pair{{left_->parse_elem(parts[0]),
                              right_->parse_elem(parts[1])}}};
    }
    case Family::FreeProd: {
      if (s == "e") return identity();
      if (s.front() != '[' || s.back() != ']')
        throw ParseError("bad free-product element: " + s);
      Elem acc = identity();
      for (auto& p : split_top(s.substr(1, s.size() - 2), '|')) {
        auto t = strip(p);
        auto colon = t.find(':');
        if (colon == std::string::npos)
          throw ParseError("bad free-product factor: " + t);
        int side = std::stoi(t.substr(0, colon));
        if (side != 0 && side != 1)
          throw ParseError("bad free-product side: " + t);
        const Group& fac = side == 0 ? *left_ : *right_;
        Elem f = fac.parse_elem(t.substr(colon + 1));
        Elem::Alt alt;
        if (!fac.is_identity(f)) alt.factors.emplace_back(side, std::move(f));
        acc = multiply(acc, Elem{std::move(alt)});
      }
      return acc;
    }
  }
  throw std::logic_error("unreachable");
}

Elem Group::evaluate(const std::string& expr) const {
  // generator-name map, with x/y/z aliases for low-dimensional lattices
  std::map<std::string, int> names;
  for (int i = 0; i < generator_count(); ++i) names[generator_name(i)] = i;
  if (family_ == Family::FreeAbelian) {
    const char* alias = "xyz";
    for (int i = 0; i < std::min(dim_, 3); ++i)
      names[std::string(1, alias[i])] = i;
  }

  // tokenize on whitespace and '*'
  std::vector<std::string> tokens;
  std::string cur;
  for (char c : expr) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == '*') {
      if (!cur.empty()) tokens.push_back(cur), cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) tokens.push_back(cur);

  Elem acc = identity();
  for (const auto& tok : tokens) {
    std::string base = tok;
    long long power = 1;
    if (auto caret = tok.find('^'); caret != std::string::npos) {
      base = tok.substr(0, caret);
      power = std::stoll(tok.substr(caret + 1));
    }
    Elem factor = identity();
    if (auto it = names.find(base); it != names.end()) {
      factor = generator(it->second);
    } else if (family_ == Family::Free) {
      factor = parse_elem(base);  // compact word like "aBa"
    } else {
      throw ParseError("unknown generator symbol '" + base + "'");
    }
    if (power < 0) {
      factor = inverse(factor);
      power = -power;
    }
    for (long long i = 0; i < power; ++i) acc = multiply(acc, factor);
  }
  return acc;
}

std::string Group::descriptor() const {
  switch (family_) {
    case Family::FreeAbelian:
      return "free-abelian(" + std::to_string(dim_) + ")";
    case Family::Free:
      return "free(" + std::to_string(dim_) + ")";
    case Family::Lamplighter:
      return "lamplighter";
    case Family::Direct:
      return "direct(" + left_->descriptor() + "," + right_->descriptor() + ")";
    case Family::FreeProd:
      return "freeprod(" + left_->descriptor() + "," + right_->descriptor() + ")";
  }
  throw std::logic_error("unreachable");
}

GroupPtr Group::parse(const std::string& raw) {
  std::string s = strip(raw);
  if (s == "Z" || s == "z") return free_abelian(1);
  if ((s.rfind("Z^", 0) == 0) || (s.rfind("z^", 0) == 0))
    return free_abelian(std::stoi(s.substr(2)));
  if (s.size() >= 2 && (s[0] == 'Z' || s[0] == 'z') &&
      std::isdigit(static_cast<unsigned char>(s[1])))
    return free_abelian(std::stoi(s.substr(1)));
  if (s.size() >= 2 && (s[0] == 'F' || s[0] == 'f') &&
      (std::isdigit(static_cast<unsigned char>(s[1])) || s[1] == '_')) {
    int off = s[1] == '_' ? 2 : 1;
    return free_group(std::stoi(s.substr(off)));
  }
  if (s == "lamplighter" || s == "L" || s == "Z2wrZ") return lamplighter();
  auto open = s.find('(');
  if (open == std::string::npos || s.back() != ')')
    throw ParseError("unknown group descriptor: " + s);
  std::string head = s.substr(0, open);
  std::string body = s.substr(open + 1, s.size() - open - 2);
  if (head == "free-abelian") return free_abelian(std::stoi(body));
  if (head == "free") return free_group(std::stoi(body));
  auto parts = split_top(body, ',');
  if (parts.size() == 2 && (head == "direct" || head == "product"))
    return direct(parse(parts[0]), parse(parts[1]));
  if (parts.size() == 2 && (head == "freeprod" || head == "free-product"))
    return free_product(parse(parts[0]), parse(parts[1]));
  throw ParseError("unknown group descriptor: " + s);
}

Ball ball(const Group& g, std::span<const Elem> gens, int radius,
          std::size_t cap) {
  if (radius < 0) throw std::invalid_argument("ball radius must be >= 0");
  Ball out;
  out.radius = radius;
  Elem id = g.identity();
  out.elements.push_back(id);
  out.length.push_back(0);
  out.index.emplace(id, 0);
  std::size_t layer_begin = 0;
  for (int r = 1; r <= radius; ++r) {
    std::size_t layer_end = out.elements.size();
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      Elem cur = out.elements[i];
      for (const Elem& s : gens) {
        if (g.is_identity(s)) continue;
        Elem next = g.multiply(cur, s);
        if (out.index.count(next)) continue;
        if (out.elements.size() >= cap)
          throw ResourceLimit("ball size cap exceeded");
        out.index.emplace(next, static_cast<int>(out.elements.size()));
        out.elements.push_back(std::move(next));
        out.length.push_back(r);
      }
    }
    layer_begin = layer_end;
  }
  return out;
}

Ball ball(const Group& g, int radius, std::size_t cap) {
  auto gens = g.standard_generators(false);
  return ball(g, gens, radius, cap);
}

std::vector<Elem> set_product(const Group& g, std::span<const Elem> F,
                              std::span<const Elem> S) {
  std::vector<Elem> out;
  out.reserve(F.size() * S.size());
  for (const Elem& f : F)
    for (const Elem& s : S) out.push_back(g.multiply(f, s));
  return sorted_unique(std::move(out));
}

std::vector<Elem> sorted_unique(std::vector<Elem> v) {
  std::sort(v.begin(), v.end(), ElemLess{});
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

bool set_contains(const std::vector<Elem>& sorted, const Elem& e) {
  return std::binary_search(sorted.begin(), sorted.end(), e, ElemLess{});
}

}  // namespace gsd
