#pragma once

#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "group.hpp"
#include "matching.hpp"

namespace gsd {

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d) : num(n), den(d) { reduce(); }

  void reduce() {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
  bool operator==(const Rational&) const = default;
  bool operator<(const Rational& o) const { return num * o.den < o.num * den; }
  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

Rational parse_rational(const std::string& s);

struct FolnerCertificate {
  GroupPtr group;
  std::vector<Elem> S;
  std::vector<Elem> F;
  std::string family;  // "ball(r)" or "rect(N)"
  Rational ratio;
  Rational epsilon;
};

// |FS △ F| / |F| recomputed from scratch.
Rational folner_ratio(const Group& g, const std::vector<Elem>& F,
                      const std::vector<Elem>& S);
bool verify_folner(const FolnerCertificate& c);

// Lamplighter rectangle F_N: lamps inside [-N,N], cursor in [-N,N].
std::vector<Elem> lamplighter_rectangle(const Group& g, int N);

std::optional<FolnerCertificate> folner_search(GroupPtr group,
                                               const std::vector<Elem>& S,
                                               Rational epsilon, int r_max);

struct ExpansionCertificate {
  GroupPtr group;
  std::vector<Elem> S;
  int R = 0;
  // (g, p(g)) pairs; domain ⊆ ball(R+1), image 2-to-1 onto ball(R)
  std::vector<std::pair<Elem, Elem>> assignment;
};

struct ExpansionOutcome {
  std::optional<ExpansionCertificate> cert;
  std::optional<std::vector<Elem>> violator;  // deficient subset of ball(R)
};

ExpansionOutcome expansion_certificate(GroupPtr group,
                                       const std::vector<Elem>& S, int R);
std::string verify_expansion(const ExpansionCertificate& c);

struct ParadoxCertificate {
  enum class Kind { XST, XT };
  Kind kind = Kind::XT;
  GroupPtr group;
  std::vector<Elem> S, T;
  // cell -> (side, value); side 0 = S-symbol, 1 = T-symbol (XT: all 1)
  std::map<Elem, std::pair<int, Elem>, ElemLess> patch;
  int R = 0;   // patch radius
  int R0 = 0;  // verified interior radius
};

std::string verify_paradox(const ParadoxCertificate& c);

ParadoxCertificate xt_patch_from_expansion(const ExpansionCertificate& c);

struct PiecePredicate {
  std::string name;
  int side = 0;  // 0: S-symbol, 1: T-symbol
  Elem value;
  std::function<bool(const Elem&)> contains;
};

struct XstOutcome {
  std::optional<ParadoxCertificate> cert;
  std::string error;  // empty on success
};

XstOutcome xst_certificate(GroupPtr group, const std::vector<Elem>& S,
                           const std::vector<Elem>& T,
                           const std::vector<PiecePredicate>& pieces, int R);

// The classical 4-piece decomposition of the free group on {a, b},
// last-letter pieces with the a-power ray absorbed into the first piece.
std::vector<PiecePredicate> classical_f2_pieces(const Group& f2);

struct TarskiReport {
  std::optional<int> k_bound;  // pieces: min |S|+|T| over XST certs
  std::optional<int> l_bound;  // translations: min(|T| XT, |S∪T| XST)
  bool inequality_consistent = true;
};

TarskiReport tarski_report(const std::vector<ParadoxCertificate>& certs);

struct ProbeResult {
  std::optional<FolnerCertificate> folner;
  std::optional<ExpansionCertificate> expansion;
  int rounds = 0;
};

// Interleaves the two semi-procedures round by round. Følner wins as
// soon as a set clears epsilon; the expansion side must survive every
// explored radius and is only reported once the budget is spent.
ProbeResult amenability_probe(GroupPtr group, int budget,
                              Rational epsilon = Rational(1, 5));

}  // namespace gsd
