#pragma once
// Adaptive graphlet sampling: draw from one treelet shape at a time, track
// per-graphlet weights w_i (the expected hit mass accumulated so far), and
// once a graphlet has been seen often enough ("covered"), switch to the
// shape that minimizes the probability of spanning anything already covered.
// Estimates are c_i / w_i for colorful counts; dividing by p_k gives the
// uncolored counts.

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "motif/common.hpp"
#include "motif/graph.hpp"
#include "motif/graphlet.hpp"
#include "motif/sample.hpp"
#include "motif/table.hpp"

namespace motif {

// Covering threshold ceil((4 / eps^2) * ln(2s / delta)).
u64 cbar(double epsilon, double delta, u64 s);

// Number of connected graphs on k nodes up to isomorphism, k <= 10.
u64 graphlet_class_count(int k);

struct AgsConfig {
  double epsilon = 0.5;
  double delta = 0.1;
  std::optional<u64> cbar_override;          // explicit threshold wins over the formula
  std::optional<u64> graphlet_classes;       // s in the threshold formula
  u64 max_samples = 10000000;
  u64 patience = 0;                          // 0 => covering threshold
  u64 seed = 0;
  SamplerConfig sampler;
};

struct AgsGraphletStat {
  u64 samples = 0;
  double weight = 0;
  bool covered = false;
  double colorful_estimate = 0;
  double uncolored_estimate = 0;
};

struct AgsResult {
  std::map<GraphletCode, AgsGraphletStat> graphlets;
  std::map<TreeletCode, u64> per_shape_samples;
  u64 total_samples = 0;
  u64 threshold = 0;
  bool partial = false;  // stopped by the sample cap
  std::vector<std::string> events;
};

struct CoveredStat {
  const SpanningProfile* profile;
  u64 samples;
  double weight;
};

// argmin over shapes of (1/r_j) * sum over covered graphlets of
// sigma_ij * c_i / w_i; ties go to the smallest shape code.
TreeletCode select_next_treelet(const std::map<TreeletCode, u128>& shape_totals,
                                const std::vector<CoveredStat>& covered);

AgsResult ags_run(const CountTable& table, const Graph& g, const AgsConfig& cfg,
                  SigmaCache& sigma, std::ostream* diagnostics = nullptr);

}  // namespace motif
