#pragma once

#include <string>

#include "amenability.hpp"
#include "builder.hpp"
#include "matching.hpp"
#include "subshift.hpp"

namespace gsd {

// All certificate files are line-oriented structured text beginning with
// "gsd-certificate v1" (or "gsd-patch v1" / "gsd-graph v1"), so third
// parties can re-verify without this toolkit.

std::string to_text(const FolnerCertificate& c);
FolnerCertificate folner_from_text(const std::string& text);

std::string to_text(const ExpansionCertificate& c);
ExpansionCertificate expansion_from_text(const std::string& text);

std::string to_text(const ParadoxCertificate& c);
ParadoxCertificate paradox_from_text(const std::string& text);

// Witness patch with the builder parameter record embedded.
std::string witness_to_text(const BuilderParams& p, const Patch& patch, int R);
struct WitnessFile {
  BuilderParams params;
  Patch patch;
  int R = 0;
};
WitnessFile witness_from_text(const std::string& text);

// Generic patch against a named spec (golden-mean@G, hard-core@G,
// full-shift(n)@G).
SubshiftSpec spec_by_name(const std::string& name);
std::string patch_to_text(const SubshiftSpec& spec, const Patch& patch);
struct PatchFile {
  SubshiftSpec spec;
  Patch patch;
};
PatchFile patch_from_text(const std::string& text);

std::string to_text(const BipartiteGraph& g);
BipartiteGraph graph_from_text(const std::string& text);

struct VerifyResult {
  bool ok = false;
  std::string kind;
  std::string message;
};

// Re-verifies any file this toolkit emits, from the text alone.
VerifyResult verify_text(const std::string& text);

// FNV-1a content hash used to tie patch files to their spec.
std::string spec_hash(const SubshiftSpec& spec);

}  // namespace gsd
