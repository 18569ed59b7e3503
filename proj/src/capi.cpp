#include "gsd/gsd.h"

#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>

#include "amenability.hpp"
#include "builder.hpp"
#include "flows.hpp"
#include "group.hpp"
#include "serialize.hpp"
#include "subshift.hpp"

using namespace gsd;

struct gsd_group {
  GroupPtr g;
};

namespace {

void set_out(char** out, const std::string& s) {
  if (!out) return;
  *out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(*out, s.c_str(), s.size() + 1);
}

template <typename Fn>
gsd_status guarded(char** out, Fn&& fn) {
  try {
    return fn();
  } catch (const ResourceLimit& e) {
    set_out(out, std::string("resource limit: ") + e.what());
    return GSD_INCONCLUSIVE;
  } catch (const std::invalid_argument& e) {
    set_out(out, std::string("invalid input: ") + e.what());
    return GSD_INVALID;
  } catch (const std::exception& e) {
    set_out(out, std::string("error: ") + e.what());
    return GSD_ERROR;
  }
}

}  // namespace

extern "C" {

gsd_group* gsd_group_open(const char* descriptor) {
  try {
    return new gsd_group{Group::parse(descriptor ? descriptor : "")};
  } catch (const std::exception&) {
    return nullptr;
  }
}

void gsd_group_close(gsd_group* g) { delete g; }

void gsd_free_string(char* s) { std::free(s); }

gsd_status gsd_ball(gsd_group* g, int radius, char** out) {
  return guarded(out, [&] {
    if (!g) throw std::invalid_argument("null group");
    Ball b = ball(*g->g, radius);
    std::ostringstream os;
    os << "group: " << g->g->descriptor() << "\n";
    os << "radius: " << radius << "\n";
    os << "size: " << b.size() << "\n";
    for (const Elem& e : b.elements) os << g->g->to_string(e) << "\n";
    set_out(out, os.str());
    return GSD_OK;
  });
}

gsd_status gsd_evaluate(gsd_group* g, const char* expr, char** out) {
  return guarded(out, [&] {
    if (!g || !expr) throw std::invalid_argument("null argument");
    set_out(out, g->g->to_string(g->g->evaluate(expr)));
    return GSD_OK;
  });
}

gsd_status gsd_folner(gsd_group* g, const char* epsilon, int r_max,
                      char** out) {
  return guarded(out, [&] {
    if (!g || !epsilon) throw std::invalid_argument("null argument");
    Rational eps = parse_rational(epsilon);
    std::vector<Elem> S = ball(*g->g, 1).elements;
    auto cert = folner_search(g->g, S, eps, r_max);
    if (!cert) {
      set_out(out, "not-found: no ball reaches the target ratio (inconclusive)\n");
      return GSD_INCONCLUSIVE;
    }
    set_out(out, to_text(*cert));
    return GSD_OK;
  });
}

gsd_status gsd_expand(gsd_group* g, int R, char** out) {
  return guarded(out, [&] {
    if (!g) throw std::invalid_argument("null group");
    std::vector<Elem> S = ball(*g->g, 1).elements;
    ExpansionOutcome e = expansion_certificate(g->g, S, R);
    if (!e.cert) {
      std::ostringstream os;
      os << "violator: |N(F)| < 2|F| on this region (inconclusive)\n";
      os << "F:";
      for (const Elem& v : *e.violator) os << " " << g->g->to_string(v);
      os << "\n";
      set_out(out, os.str());
      return GSD_INCONCLUSIVE;
    }
    set_out(out, to_text(*e.cert));
    return GSD_OK;
  });
}

gsd_status gsd_probe(gsd_group* g, int budget, char** out) {
  return guarded(out, [&] {
    if (!g) throw std::invalid_argument("null group");
    ProbeResult r = amenability_probe(g->g, budget);
    if (r.folner) {
      set_out(out, to_text(*r.folner));
      return GSD_OK;
    }
    if (r.expansion) {
      set_out(out, to_text(*r.expansion));
      return GSD_OK;
    }
    set_out(out, "budget exhausted with neither certificate\n");
    return GSD_INCONCLUSIVE;
  });
}

gsd_status gsd_xst_classical(gsd_group* g, int R, char** out) {
  return guarded(out, [&] {
    if (!g) throw std::invalid_argument("null group");
    if (g->g->family() != Group::Family::Free || g->g->dim() != 2)
      throw std::invalid_argument("classical decomposition needs free(2)");
    Elem id = g->g->identity();
    std::vector<Elem> S{id, g->g->generator(0)};
    std::vector<Elem> T{id, g->g->generator(1)};
    XstOutcome o =
        xst_certificate(g->g, S, T, classical_f2_pieces(*g->g), R);
    if (!o.cert) {
      set_out(out, "verification failed: " + o.error + "\n");
      return GSD_INVALID;
    }
    TarskiReport t = tarski_report({*o.cert});
    std::ostringstream os;
    os << to_text(*o.cert);
    os << "tarski: k <= " << *t.k_bound << ", l <= " << *t.l_bound << "\n";
    set_out(out, os.str());
    return GSD_OK;
  });
}

gsd_status gsd_build_compressible(gsd_group* g, int rho, int n, int toy,
                                  int R, char** out) {
  return guarded(out, [&] {
    if (!g) throw std::invalid_argument("null group");
    BuilderParams p = select_parameters(g->g, rho, toy != 0, n);
    WitnessResult w = witness_patch(p, R);
    if (!w.patch) {
      std::ostringstream os;
      os << "hall-failure: no 2-to-1 T-surjection on this region; enlarge R\n";
      os << "violator:";
      for (const Elem& v : *w.violator) os << " " << g->g->to_string(v);
      os << "\n";
      set_out(out, os.str());
      return GSD_INCONCLUSIVE;
    }
    SubshiftSpec spec = compressible_spec(p);
    if (auto bad = patch_check(spec, *w.patch))
      throw std::runtime_error("emitted patch violates its own rule at " +
                               g->g->to_string(*bad));
    CompressionEvidence ev = verify_compression(p, spec, *w.patch, w.interior);
    if (!ev.ok) throw std::runtime_error(ev.error);
    CodeReport code = code_patch(p, spec, *w.patch, R);
    if (!code.ok) throw std::runtime_error(code.error);
    std::ostringstream os;
    os << witness_to_text(p, *w.patch, R);
    os << "checks: admissible, compression 2-to-1 on ball(" << w.interior
       << "), support detection on ball(" << code.check_radius << ")\n";
    set_out(out, os.str());
    return GSD_OK;
  });
}

gsd_status gsd_verify(const char* text, char** out) {
  return guarded(out, [&] {
    if (!text) throw std::invalid_argument("null text");
    VerifyResult r = verify_text(text);
    set_out(out, r.kind + ": " + r.message + "\n");
    return r.ok ? GSD_OK : GSD_INVALID;
  });
}

gsd_status gsd_subshift_check(const char* patch_text, char** out) {
  return guarded(out, [&] {
    if (!patch_text) throw std::invalid_argument("null text");
    PatchFile p = patch_from_text(patch_text);
    auto bad = patch_check(p.spec, p.patch);
    if (bad) {
      set_out(out, "violated at " + p.spec.group->to_string(*bad) + "\n");
      return GSD_INVALID;
    }
    set_out(out, "ok\n");
    return GSD_OK;
  });
}

gsd_status gsd_subshift_extend(const char* spec_name, int radius, char** out) {
  return guarded(out, [&] {
    if (!spec_name) throw std::invalid_argument("null spec name");
    SubshiftSpec spec = spec_by_name(spec_name);
    Ball b = ball(*spec.group, radius);
    auto patch = extend_search(spec, Patch{}, b.elements);
    if (!patch) {
      set_out(out, "unsat: no admissible pattern on ball(" +
                       std::to_string(radius) + ")\n");
      return GSD_INCONCLUSIVE;
    }
    set_out(out, patch_to_text(spec, *patch));
    return GSD_OK;
  });
}

gsd_status gsd_gen_check(const char* spec_name, int w, char** out) {
  return guarded(out, [&] {
    if (!spec_name) throw std::invalid_argument("null spec name");
    SubshiftSpec spec = spec_by_name(spec_name);
    CylinderLabeling lab;
    lab.depth = 0;
    lab.label_count = static_cast<int>(spec.alphabet.size());
    lab.label = [](std::span<const int> p) { return p[0]; };
    GeneratorCheckResult r = clopen_generator_check(spec, lab, w);
    if (r.separates) {
      set_out(out, "separates-at-radius " + std::to_string(w) + "\n");
      return GSD_OK;
    }
    std::ostringstream os;
    os << "counterexample: two distinct admissible patches share all labels "
          "on ball("
       << w << ")\n";
    set_out(out, os.str());
    return GSD_INVALID;
  });
}

gsd_status gsd_f2_orbit(const char* x, const char* y, int depth, char** out) {
  return guarded(out, [&] {
    if (!x || !y) throw std::invalid_argument("null string");
    OrbitCheck r = f2_orbit_check(x, y, depth);
    std::ostringstream os;
    if (r.connected) {
      os << "connected\npath:";
      for (int gen : r.path) os << " " << gen;
      os << "\n";
    } else {
      os << "not-within-depth " << depth << " (inconclusive)\n";
    }
    os << "tail-witness: m=" << r.et_m << " n=" << r.et_n
       << " overlap=" << r.et_overlap
       << (r.et_consistent ? " consistent" : " inconsistent") << "\n";
    set_out(out, os.str());
    return r.connected ? GSD_OK : GSD_INCONCLUSIVE;
  });
}

gsd_status gsd_odometer(const char* digits, int direction, int compress,
                        char** out) {
  return guarded(out, [&] {
    if (!digits) throw std::invalid_argument("null digits");
    std::vector<int> d;
    for (const char* c = digits; *c; ++c) {
      if (*c < '0' || *c > '3')
        throw std::invalid_argument("digits must be base 4");
      d.push_back(*c - '0');
    }
    auto render = [](const std::vector<int>& v) {
      std::string s;
      for (int x : v) s += static_cast<char>('0' + x);
      return s;
    };
    if (compress) {
      bool declared = !d.empty() && (d.back() == 1 || d.back() == 2);
      OdometerResult r = odometer_compression(d, declared);
      if (!r.ok) {
        set_out(out, r.error + "\n");
        return GSD_INVALID;
      }
      set_out(out, render(r.digits) + " (n_x=" + std::to_string(r.n_x) + ")\n");
      return GSD_OK;
    }
    auto r = odometer_step(d, direction);
    if (!r) {
      set_out(out, "carry-overflow\n");
      return GSD_INVALID;
    }
    set_out(out, render(*r) + "\n");
    return GSD_OK;
  });
}

}  // extern "C"
