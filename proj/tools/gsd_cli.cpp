#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "gsd/gsd.h"

namespace {

int finish(gsd_status st, char* text, const std::string& out_path) {
  if (text) {
    if (!out_path.empty() && st == GSD_OK) {
      std::ofstream f(out_path);
      f << text;
      std::cout << "wrote " << out_path << "\n";
    } else {
      std::cout << text;
    }
    gsd_free_string(text);
  }
  if (st == GSD_ERROR) return 1;
  return static_cast<int>(st);
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw CLI::ValidationError("cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct GroupHandle {
  gsd_group* g = nullptr;
  ~GroupHandle() { gsd_group_close(g); }
  bool open(const std::string& descriptor) {
    g = gsd_group_open(descriptor.c_str());
    return g != nullptr;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite certificates for symbolic dynamics over groups"};
  app.require_subcommand(1);

  std::string group, epsilon = "1/5", out_path, spec_name, file, x, y, digits;
  int radius = 3, r_max = 64, budget = 16, rho = 1, n = 2, w = 0, depth = 6,
      direction = 1;
  bool toy = true, compress = false;

  auto* ball = app.add_subcommand("ball", "enumerate a word-metric ball");
  ball->add_option("--group", group)->required();
  ball->add_option("--radius", radius)->required();

  auto* folner = app.add_subcommand("folner", "search Folner sets over balls");
  folner->add_option("--group", group)->required();
  folner->add_option("--epsilon", epsilon);
  folner->add_option("--r-max", r_max);
  folner->add_option("--out", out_path);

  auto* expand = app.add_subcommand("expand", "2-to-1 expansion certificate");
  expand->add_option("--group", group)->required();
  expand->add_option("--radius", radius);
  expand->add_option("--out", out_path);

  auto* probe = app.add_subcommand("probe", "amenability probe (both sides)");
  probe->add_option("--group", group)->required();
  probe->add_option("--budget", budget);
  probe->add_option("--out", out_path);

  auto* xst = app.add_subcommand("xst", "classical X_{S,T} certificate");
  xst->add_option("--group", group)->required();
  xst->add_option("--radius", radius);
  xst->add_option("--out", out_path);

  auto* build = app.add_subcommand("build-compressible",
                                   "compressible-subshift witness patch");
  build->add_option("--group", group)->required();
  std::string mode = "toy";
  build->add_option("--mode", mode)->check(CLI::IsMember({"toy", "faithful"}));
  build->add_option("--rho", rho);
  build->add_option("--n", n);
  build->add_option("--radius", radius);
  build->add_option("--out", out_path);

  auto* scheck = app.add_subcommand("subshift-check", "check a patch file");
  scheck->add_option("file", file)->required();

  auto* sextend = app.add_subcommand("subshift-extend",
                                     "extend the empty patch over a ball");
  sextend->add_option("--spec", spec_name)->required();
  sextend->add_option("--radius", radius);
  sextend->add_option("--out", out_path);

  auto* gen = app.add_subcommand("gen-check",
                                 "clopen generator separation check");
  gen->add_option("--spec", spec_name)->required();
  gen->add_option("--w", w);

  auto* verify = app.add_subcommand("verify", "re-verify an emitted file");
  verify->add_option("file", file)->required();

  auto* orbit = app.add_subcommand("f2-orbit", "F2 tail-action orbit search");
  orbit->add_option("--x", x)->required();
  orbit->add_option("--y", y)->required();
  orbit->add_option("--depth", depth);

  auto* odo = app.add_subcommand("odometer", "base-4 odometer / compression");
  odo->add_option("--digits", digits)->required();
  odo->add_option("--direction", direction);
  odo->add_flag("--compress", compress);

  CLI11_PARSE(app, argc, argv);

  char* text = nullptr;
  try {
    if (scheck->parsed()) {
      gsd_status st = gsd_subshift_check(slurp(file).c_str(), &text);
      return finish(st, text, "");
    }
    if (verify->parsed()) {
      gsd_status st = gsd_verify(slurp(file).c_str(), &text);
      return finish(st, text, "");
    }
    if (sextend->parsed()) {
      gsd_status st = gsd_subshift_extend(spec_name.c_str(), radius, &text);
      return finish(st, text, out_path);
    }
    if (gen->parsed()) {
      gsd_status st = gsd_gen_check(spec_name.c_str(), w, &text);
      return finish(st, text, "");
    }
    if (orbit->parsed()) {
      gsd_status st = gsd_f2_orbit(x.c_str(), y.c_str(), depth, &text);
      return finish(st, text, "");
    }
    if (odo->parsed()) {
      gsd_status st = gsd_odometer(digits.c_str(), direction, compress, &text);
      return finish(st, text, "");
    }

    GroupHandle gh;
    if (!gh.open(group)) {
      std::cerr << "malformed group descriptor: " << group << "\n";
      return 1;
    }
    if (ball->parsed()) {
      gsd_status st = gsd_ball(gh.g, radius, &text);
      return finish(st, text, "");
    }
    if (folner->parsed()) {
      gsd_status st = gsd_folner(gh.g, epsilon.c_str(), r_max, &text);
      return finish(st, text, out_path);
    }
    if (expand->parsed()) {
      gsd_status st = gsd_expand(gh.g, radius, &text);
      return finish(st, text, out_path);
    }
    if (probe->parsed()) {
      gsd_status st = gsd_probe(gh.g, budget, &text);
      return finish(st, text, out_path);
    }
    if (xst->parsed()) {
      gsd_status st = gsd_xst_classical(gh.g, radius, &text);
      return finish(st, text, out_path);
    }
    if (build->parsed()) {
      toy = mode == "toy";
      gsd_status st =
          gsd_build_compressible(gh.g, rho, n, toy ? 1 : 0, radius, &text);
      return finish(st, text, out_path);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 1;
}
