#include "serialize.hpp"

#include <cstdio>
#include <sstream>

namespace gsd {

namespace {

constexpr const char* kCertHeader = "gsd-certificate v1";
constexpr const char* kPatchHeader = "gsd-patch v1";
constexpr const char* kGraphHeader = "gsd-graph v1";

struct Record {
  std::string header;
  std::map<std::string, std::string> fields;
  std::vector<std::string> body;  // lines between the section marker and "end"
};

Record parse_record(const std::string& text) {
  Record r;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty file");
  r.header = line;
  bool in_body = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line == "end") break;
    if (in_body) {
      r.body.push_back(line);
      continue;
    }
    auto colon = line.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("malformed line: " + line);
    std::string key = line.substr(0, colon);
    std::string value = line.substr(colon + 1);
    if (!value.empty() && value[0] == ' ') value.erase(0, 1);
    if (value.empty() && (key == "cells" || key == "assignment" ||
                          key == "edges" || key == "patch")) {
      in_body = true;
      continue;
    }
    r.fields[key] = value;
  }
  return r;
}

const std::string& need(const Record& r, const std::string& key) {
  auto it = r.fields.find(key);
  if (it == r.fields.end())
    throw std::invalid_argument("missing field: " + key);
  return it->second;
}

std::string join_elems(const Group& g, const std::vector<Elem>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += " ";
    out += g.to_string(v[i]);
  }
  return out;
}

std::vector<Elem> split_elems(const Group& g, const std::string& s) {
  std::vector<Elem> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(g.parse_elem(tok));
  return out;
}

}  // namespace

std::string spec_hash(const SubshiftSpec& spec) {
  std::string data = spec.name + "|";
  for (const auto& a : spec.alphabet) data += a + ",";
  data += "|";
  for (const Elem& w : spec.window) data += spec.group->to_string(w) + ",";
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
  return buf;
}

std::string to_text(const FolnerCertificate& c) {
  std::ostringstream out;
  out << kCertHeader << "\n";
  out << "kind: folner\n";
  out << "group: " << c.group->descriptor() << "\n";
  out << "epsilon: " << c.epsilon.str() << "\n";
  out << "family: " << c.family << "\n";
  out << "ratio: " << c.ratio.str() << "\n";
  out << "S: " << join_elems(*c.group, c.S) << "\n";
  out << "F: " << join_elems(*c.group, c.F) << "\n";
  out << "end\n";
  return out.str();
}

FolnerCertificate folner_from_text(const std::string& text) {
  Record r = parse_record(text);
  if (r.header != kCertHeader || need(r, "kind") != "folner")
    throw std::invalid_argument("not a folner certificate");
  FolnerCertificate c;
  c.group = Group::parse(need(r, "group"));
  c.epsilon = parse_rational(need(r, "epsilon"));
  c.ratio = parse_rational(need(r, "ratio"));
  c.family = need(r, "family");
  c.S = split_elems(*c.group, need(r, "S"));
  c.F = split_elems(*c.group, need(r, "F"));
  return c;
}

std::string to_text(const ExpansionCertificate& c) {
  std::ostringstream out;
  out << kCertHeader << "\n";
  out << "kind: expansion\n";
  out << "group: " << c.group->descriptor() << "\n";
  out << "R: " << c.R << "\n";
  out << "S: " << join_elems(*c.group, c.S) << "\n";
  out << "assignment:\n";
  for (const auto& [from, to] : c.assignment)
    out << c.group->to_string(from) << " " << c.group->to_string(to) << "\n";
  out << "end\n";
  return out.str();
}

ExpansionCertificate expansion_from_text(const std::string& text) {
  Record r = parse_record(text);
  if (r.header != kCertHeader || need(r, "kind") != "expansion")
    throw std::invalid_argument("not an expansion certificate");
  ExpansionCertificate c;
  c.group = Group::parse(need(r, "group"));
  c.R = std::stoi(need(r, "R"));
  c.S = split_elems(*c.group, need(r, "S"));
  for (const auto& line : r.body) {
    std::istringstream in(line);
    std::string from, to;
    in >> from >> to;
    c.assignment.emplace_back(c.group->parse_elem(from),
                              c.group->parse_elem(to));
  }
  return c;
}

std::string to_text(const ParadoxCertificate& c) {
  std::ostringstream out;
  out << kCertHeader << "\n";
  out << "kind: "
      << (c.kind == ParadoxCertificate::Kind::XST ? "paradox-xst"
                                                  : "paradox-xt")
      << "\n";
  out << "group: " << c.group->descriptor() << "\n";
  out << "R: " << c.R << "\n";
  out << "R0: " << c.R0 << "\n";
  out << "S: " << join_elems(*c.group, c.S) << "\n";
  out << "T: " << join_elems(*c.group, c.T) << "\n";
  out << "patch:\n";
  for (const auto& [cell, sym] : c.patch)
    out << c.group->to_string(cell) << " " << (sym.first == 0 ? "S" : "T")
        << " " << c.group->to_string(sym.second) << "\n";
  out << "end\n";
  return out.str();
}

ParadoxCertificate paradox_from_text(const std::string& text) {
  Record r = parse_record(text);
  std::string kind = need(r, "kind");
  if (r.header != kCertHeader || (kind != "paradox-xst" && kind != "paradox-xt"))
    throw std::invalid_argument("not a paradox certificate");
  ParadoxCertificate c;
  c.kind = kind == "paradox-xst" ? ParadoxCertificate::Kind::XST
                                 : ParadoxCertificate::Kind::XT;
  c.group = Group::parse(need(r, "group"));
  c.R = std::stoi(need(r, "R"));
  c.R0 = std::stoi(need(r, "R0"));
  c.S = split_elems(*c.group, need(r, "S"));
  c.T = split_elems(*c.group, need(r, "T"));
  for (const auto& line : r.body) {
    std::istringstream in(line);
    std::string cell, side, value;
    in >> cell >> side >> value;
    c.patch.emplace(c.group->parse_elem(cell),
                    std::make_pair(side == "S" ? 0 : 1,
                                   c.group->parse_elem(value)));
  }
  return c;
}

std::string witness_to_text(const BuilderParams& p, const Patch& patch,
                            int R) {
  SubshiftSpec spec = compressible_spec(p);
  std::ostringstream out;
  out << kPatchHeader << "\n";
  out << "kind: compressible-witness\n";
  out << "group: " << p.group->descriptor() << "\n";
  out << "rho: " << p.rho << "\n";
  out << "n: " << p.n << "\n";
  out << "mode: " << (p.toy ? "toy" : "faithful") << "\n";
  out << "R: " << R << "\n";
  out << "spec-hash: " << spec_hash(spec) << "\n";
  out << "cells:\n";
  for (const auto& [cell, sym] : patch.cells)
    out << p.group->to_string(cell) << " " << spec.alphabet[sym] << "\n";
  out << "end\n";
  return out.str();
}

WitnessFile witness_from_text(const std::string& text) {
  Record r = parse_record(text);
  if (r.header != kPatchHeader || need(r, "kind") != "compressible-witness")
    throw std::invalid_argument("not a witness patch file");
  WitnessFile w;
  GroupPtr group = Group::parse(need(r, "group"));
  bool toy = need(r, "mode") == "toy";
  w.params = select_parameters(group, std::stoi(need(r, "rho")), toy,
                               toy ? std::stoi(need(r, "n")) : 0);
  w.R = std::stoi(need(r, "R"));
  SubshiftSpec spec = compressible_spec(w.params);
  if (spec_hash(spec) != need(r, "spec-hash"))
    throw std::invalid_argument("spec hash mismatch");
  for (const auto& line : r.body) {
    std::istringstream in(line);
    std::string cell, sym;
    in >> cell >> sym;
    w.patch.cells.emplace(group->parse_elem(cell), spec.symbol(sym));
  }
  return w;
}

SubshiftSpec spec_by_name(const std::string& name) {
  auto at = name.find('@');
  if (at == std::string::npos)
    throw std::invalid_argument("spec name needs the form <rule>@<group>");
  std::string rule = name.substr(0, at);
  GroupPtr group = Group::parse(name.substr(at + 1));
  if (rule == "golden-mean") return golden_mean(group);
  if (rule == "hard-core") return hard_core(group);
  if (rule.rfind("full-shift(", 0) == 0 && rule.back() == ')')
    return full_shift(group, std::stoi(rule.substr(11, rule.size() - 12)));
  throw std::invalid_argument("unknown spec rule: " + rule);
}

std::string patch_to_text(const SubshiftSpec& spec, const Patch& patch) {
  std::ostringstream out;
  out << kPatchHeader << "\n";
  out << "kind: patch\n";
  out << "spec: " << spec.name << "\n";
  out << "spec-hash: " << spec_hash(spec) << "\n";
  out << "cells:\n";
  for (const auto& [cell, sym] : patch.cells)
    out << spec.group->to_string(cell) << " " << spec.alphabet[sym] << "\n";
  out << "end\n";
  return out.str();
}

PatchFile patch_from_text(const std::string& text) {
  Record r = parse_record(text);
  if (r.header != kPatchHeader || need(r, "kind") != "patch")
    throw std::invalid_argument("not a patch file");
  PatchFile p;
  p.spec = spec_by_name(need(r, "spec"));
  if (spec_hash(p.spec) != need(r, "spec-hash"))
    throw std::invalid_argument("spec hash mismatch");
  for (const auto& line : r.body) {
    std::istringstream in(line);
    std::string cell, sym;
    in >> cell >> sym;
    p.patch.cells.emplace(p.spec.group->parse_elem(cell), p.spec.symbol(sym));
  }
  return p;
}

std::string to_text(const BipartiteGraph& g) {
  std::ostringstream out;
  out << kGraphHeader << "\n";
  out << "left: " << g.left_count << "\n";
  out << "right: " << g.right_count << "\n";
  out << "edges:\n";
  for (std::size_t l = 0; l < g.left_count; ++l)
    for (int r : g.adj[l]) out << l << " " << r << "\n";
  out << "end\n";
  return out.str();
}

BipartiteGraph graph_from_text(const std::string& text) {
  Record r = parse_record(text);
  if (r.header != kGraphHeader)
    throw std::invalid_argument("not a graph file");
  BipartiteGraph g;
  g.left_count = std::stoul(need(r, "left"));
  g.right_count = std::stoul(need(r, "right"));
  g.adj.resize(g.left_count);
  for (const auto& line : r.body) {
    std::istringstream in(line);
    std::size_t l;
    int rr;
    in >> l >> rr;
    if (l >= g.left_count || rr < 0 || (std::size_t)rr >= g.right_count)
      throw std::invalid_argument("edge references an undeclared vertex");
    g.adj[l].push_back(rr);
  }
  return g;
}

VerifyResult verify_text(const std::string& text) {
  VerifyResult res;
  try {
    Record r = parse_record(text);
    if (r.header == kGraphHeader) {
      graph_from_text(text);
      res.kind = "graph";
      res.ok = true;
      res.message = "well-formed";
      return res;
    }
    res.kind = need(r, "kind");
    if (res.kind == "folner") {
      FolnerCertificate c = folner_from_text(text);
      res.ok = verify_folner(c);
      res.message = res.ok ? "ratio re-verified: " + c.ratio.str()
                           : "ratio or bound check failed";
    } else if (res.kind == "expansion") {
      std::string err = verify_expansion(expansion_from_text(text));
      res.ok = err.empty();
      res.message = res.ok ? "2-to-1 surjection re-verified" : err;
    } else if (res.kind == "paradox-xst" || res.kind == "paradox-xt") {
      std::string err = verify_paradox(paradox_from_text(text));
      res.ok = err.empty();
      res.message = res.ok ? "partition conditions re-verified" : err;
    } else if (res.kind == "compressible-witness") {
      WitnessFile w = witness_from_text(text);
      SubshiftSpec spec = compressible_spec(w.params);
      if (auto bad = patch_check(spec, w.patch)) {
        res.message = "local rule violated at " +
                      w.params.group->to_string(*bad);
        return res;
      }
      int interior = w.R - w.params.window_radius();
      CompressionEvidence ev =
          verify_compression(w.params, spec, w.patch, interior);
      if (!ev.ok) {
        res.message = ev.error;
        return res;
      }
      CodeReport code = code_patch(w.params, spec, w.patch, w.R);
      res.ok = code.ok;
      res.message = res.ok ? "admissibility, compression and code re-verified"
                           : code.error;
    } else if (res.kind == "patch") {
      PatchFile p = patch_from_text(text);
      auto bad = patch_check(p.spec, p.patch);
      res.ok = !bad.has_value();
      res.message = res.ok ? "patch admissible"
                           : "local rule violated at " +
                                 p.spec.group->to_string(*bad);
    } else {
      res.message = "unknown kind: " + res.kind;
    }
  } catch (const std::exception& e) {
    res.message = e.what();
  }
  return res;
}

}  // namespace gsd
