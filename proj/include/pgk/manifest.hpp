#pragma once

#include "pgk/congruence.hpp"

namespace pgk {

inline constexpr int kFormatVersion = 1;

/// One batch task.  "sweep" runs a randomized congruence sweep; "brauer"
/// emits the explicit induction coefficients of one irreducible.
struct ManifestTask {
  std::string command;  // sweep | brauer
  SweepConfig sweep;    // command == "sweep"
  std::string group_id; // command == "brauer"
  int irr_index = 0;
};

struct RunManifest {
  int format_version = kFormatVersion;
  std::vector<ManifestTask> tasks;
};

/// Parse + validate: every referenced group must resolve in the catalog
/// before anything runs; malformed input throws with a position message.
RunManifest parse_manifest(const std::string& json_text);

struct ManifestResult {
  std::vector<CongruenceReport> rows;  // ordered by task index
  std::vector<int> task_of_row;
  bool unexpected = false;  // a theta-tuple failed, or a perturbation escaped
};

ManifestResult run_manifest(const RunManifest& m, int jobs);

/// Deterministic serializations (no timestamps: identical manifest + seed
/// must give byte-identical bytes).
std::string result_csv(const ManifestResult& r);
std::string result_json(const ManifestResult& r);

/// Brauer coefficients of one irreducible as a JSON object, with the
/// section identity re-verified and reported.
std::string brauer_json(const std::string& group_id, int irr_index);

}  // namespace pgk
