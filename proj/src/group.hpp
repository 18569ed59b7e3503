#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace gsd {

// Canonical-form group element. One alternative per built-in family;
// composite families (direct / free products) nest recursively.
struct Elem {
  struct Vec {
    std::vector<std::int64_t> coords;
    bool operator==(const Vec&) const = default;
  };
  // Reduced word over 2k letters; letter +i / -i is generator i (1-based)
  // or its inverse. No adjacent inverse pair.
  struct Word {
    std::vector<std::int32_t> letters;
    bool operator==(const Word&) const = default;
  };
  // Lamplighter Z/2 wr Z: sorted set of lit lamp positions plus cursor.
  struct Lamp {
    std::vector<std::int64_t> lamps;
    std::int64_t pos = 0;
    bool operator==(const Lamp&) const = default;
  };
  // Direct product: exactly two components.
  struct Pair {
    std::vector<Elem> parts;
    bool operator==(const Pair&) const = default;
  };
  // Free product: alternating normal form, (side, nontrivial factor).
  struct Alt {
    std::vector<std::pair<int, Elem>> factors;
    bool operator==(const Alt&) const = default;
  };

  std::variant<Vec, Word, Lamp, Pair, Alt> v;

  bool operator==(const Elem&) const = default;
};

// Deterministic structural order; used for canonical-form sets and maps.
bool elem_less(const Elem& a, const Elem& b);

struct ElemLess {
  bool operator()(const Elem& a, const Elem& b) const { return elem_less(a, b); }
};

class Group;
using GroupPtr = std::shared_ptr<const Group>;

class Group : public std::enable_shared_from_this<Group> {
 public:
  enum class Family { FreeAbelian, Free, Lamplighter, Direct, FreeProd };

  static GroupPtr free_abelian(int dim);
  static GroupPtr free_group(int rank);
  static GroupPtr lamplighter();
  static GroupPtr direct(GroupPtr left, GroupPtr right);
  static GroupPtr free_product(GroupPtr left, GroupPtr right);

  // Descriptor grammar: free-abelian(d), free(k), lamplighter,
  // direct(A,B), freeprod(A,B); aliases Z, Z^d, F2, F3, ...
  static GroupPtr parse(const std::string& descriptor);

  Family family() const { return family_; }
  int dim() const { return dim_; }  // dimension / rank for the base families
  const GroupPtr& left() const { return left_; }
  const GroupPtr& right() const { return right_; }

  Elem identity() const;
  Elem multiply(const Elem& a, const Elem& b) const;
  Elem inverse(const Elem& a) const;
  bool is_identity(const Elem& a) const { return a == identity(); }

  int generator_count() const;
  Elem generator(int i) const;
  std::string generator_name(int i) const;

  // S-ball generating set in fixed order: e, g0, g0^-1, g1, g1^-1, ...
  std::vector<Elem> standard_generators(bool with_identity = true) const;

  std::string to_string(const Elem& e) const;
  Elem parse_elem(const std::string& s) const;

  // Word over generator names (compact letters for free groups, or
  // whitespace/'*'-separated tokens with an optional ^-1 / ^k suffix).
  Elem evaluate(const std::string& expr) const;

  std::string descriptor() const;

 private:
  Group(Family f, int dim, GroupPtr l, GroupPtr r)
      : family_(f), dim_(dim), left_(std::move(l)), right_(std::move(r)) {}

  Family family_;
  int dim_;
  GroupPtr left_, right_;
};

struct Ball {
  int radius = 0;
  std::vector<Elem> elements;  // shortlex order w.r.t. the generating set
  std::vector<int> length;     // word length of elements[i]
  std::map<Elem, int, ElemLess> index;

  bool contains(const Elem& e) const { return index.count(e) != 0; }
  int position(const Elem& e) const {
    auto it = index.find(e);
    return it == index.end() ? -1 : it->second;
  }
  std::size_t size() const { return elements.size(); }
};

struct ResourceLimit : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Breadth-first ball of S-word-length <= radius; elements come out in
// shortlex order (layer by layer, first-discovery order inside a layer).
Ball ball(const Group& g, std::span<const Elem> gens, int radius,
          std::size_t cap = 1'000'000);

// Ball w.r.t. the standard symmetric generating set.
Ball ball(const Group& g, int radius, std::size_t cap = 1'000'000);

// {f*s : f in F, s in S}, sorted canonically, duplicate-free.
std::vector<Elem> set_product(const Group& g, std::span<const Elem> F,
                              std::span<const Elem> S);

// Sorted canonical set helpers.
std::vector<Elem> sorted_unique(std::vector<Elem> v);
bool set_contains(const std::vector<Elem>& sorted, const Elem& e);

}  // namespace gsd
