#pragma once
// Build-up phase: random (uniform or biased) k-coloring of the host graph,
// then the check-and-merge dynamic program over treelet sizes h = 1..k,
// producing a finalized count table. At h == k only nodes of color 0 emit
// records (0-rooting).
//
// Biased mode assigns each color in {1..k-1} with probability lambda and
// color 0 with the remaining mass, concentrating counts on the rooting
// color. The table is bit-identical regardless of thread count.

#include <optional>
#include <string>
#include <vector>

#include "motif/common.hpp"
#include "motif/graph.hpp"
#include "motif/table.hpp"

namespace motif {

enum class ColorMode { uniform, biased };

struct Coloring {
  int k = 0;
  ColorMode mode = ColorMode::uniform;
  double lambda = 0;  // biased mode only
  u64 seed = 0;
  std::vector<u8> colors;

  u8 color(u32 v) const { return colors[v]; }
};

struct BuildConfig {
  int k = 5;
  u64 seed = 0;
  std::optional<double> lambda;  // set => biased coloring
  int threads = 1;
  std::string table_dir;  // empty => in-memory table
};

Coloring color_graph(const Graph& g, const BuildConfig& cfg);

CountTable build_tables(const Graph& g, const Coloring& coloring, const BuildConfig& cfg);

struct LambdaChoice {
  double lambda = 0;
  int doublings = 0;
  bool capped = false;  // schedule hit 1/(k-1); lambda fell back to 1/k
};

// Doubling schedule from lambda_0 = 1/(b(k-1)n); stops at the first lambda
// whose size-2 probe leaves at least 1% of nodes with a positive count.
LambdaChoice choose_lambda(const Graph& g, int k, double b, u64 seed);

}  // namespace motif
