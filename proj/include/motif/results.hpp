#pragma once
// Result emission and evaluation: per-graphlet estimate tables (CSV with a
// JSON mirror), census files, and the error metrics used to score a run
// against ground truth.

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "motif/common.hpp"
#include "motif/graphlet.hpp"
#include "motif/oracle.hpp"

namespace motif {

struct ResultRow {
  GraphletCode code;
  double g_hat = 0;         // uncolored count estimate
  double colorful_hat = 0;  // colorful count estimate
  u64 samples = 0;
  double frequency = 0;     // estimated share of all k-graphlet copies
  bool covered = false;     // adaptive runs only
};

struct ResultSet {
  int k = 0;
  u64 seed = 0;
  std::string mode;  // "naive" or "ags"
  u64 total_samples = 0;
  int colorings = 1;
  double wall_seconds = 0;
  std::vector<ResultRow> rows;  // sorted by code

  void write_csv(std::ostream& out) const;
  static ResultSet read_csv(std::istream& in);
  void write_json(std::ostream& out) const;
};

void write_census_csv(std::ostream& out, const Census& census);
Census read_census_csv(std::istream& in);

struct MetricsReport {
  double l1 = 0;
  std::map<GraphletCode, double> err;  // (estimate - truth) / truth, -1 = missed
  double fraction_within_half = 0;
  std::optional<double> rarest_found_frequency;  // truth frequency, >= 10 samples
};

// Throws on k mismatch between the two inputs.
MetricsReport compute_metrics(const ResultSet& estimates, const Census& truth);

}  // namespace motif
