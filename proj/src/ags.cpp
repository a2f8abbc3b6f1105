#include "motif/ags.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

namespace motif {

namespace {

struct KahanSum {
  double sum = 0;
  double comp = 0;
  void add(double x) {
    double y = x - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

struct Tracked {
  u64 samples = 0;
  KahanSum weight;
  bool covered = false;
  const SpanningProfile* profile = nullptr;
};

}  // namespace

u64 cbar(double epsilon, double delta, u64 s) {
  if (!(epsilon > 0) || !(epsilon < 1) || !(delta > 0) || !(delta < 1) || s < 1)
    throw std::invalid_argument("need 0 < epsilon, delta < 1 and s >= 1");
  double v = 4.0 / (epsilon * epsilon) * std::log(2.0 * static_cast<double>(s) / delta);
  return static_cast<u64>(std::ceil(v));
}

u64 graphlet_class_count(int k) {
  static const u64 counts[] = {0, 1, 1, 2, 6, 21, 112, 853, 11117, 261080, 11716571};
  if (k < 1 || k > 10) throw std::invalid_argument("graphlet class count known for k <= 10");
  return counts[k];
}

TreeletCode select_next_treelet(const std::map<TreeletCode, u128>& shape_totals,
                                const std::vector<CoveredStat>& covered) {
  if (shape_totals.empty()) throw std::runtime_error("no shapes available");
  TreeletCode best{0};
  double best_score = 0;
  bool first = true;
  for (const auto& [shape, r] : shape_totals) {
    if (r == 0) continue;
    double score = 0;
    for (const CoveredStat& cs : covered) {
      u128 s_ij = cs.profile->shape_count(shape);
      if (s_ij == 0 || cs.weight <= 0) continue;
      score += to_double(s_ij) * (static_cast<double>(cs.samples) / cs.weight);
    }
    score /= to_double(r);
    if (first || score < best_score) {
      first = false;
      best_score = score;
      best = shape;
    }
  }
  if (first) throw std::runtime_error("no shapes available");
  return best;
}

AgsResult ags_run(const CountTable& table, const Graph& g, const AgsConfig& cfg,
                  SigmaCache& sigma, std::ostream* diagnostics) {
  AgsResult result;
  std::map<TreeletCode, u128> shape_totals = table.shape_totals();
  if (shape_totals.empty()) throw std::runtime_error("empty urn");

  u64 s = cfg.graphlet_classes ? *cfg.graphlet_classes
                               : graphlet_class_count(table.k());
  u64 threshold = cfg.cbar_override ? *cfg.cbar_override : cbar(cfg.epsilon, cfg.delta, s);
  u64 patience = cfg.patience ? cfg.patience : threshold;
  result.threshold = threshold;

  // Start from the shape with the most colorful occurrences.
  TreeletCode current{0};
  u128 best_r = 0;
  for (const auto& [shape, r] : shape_totals)
    if (r > best_r) {
      best_r = r;
      current = shape;
    }
  RootAlias alias = RootAlias::for_shape(table, current);

  std::map<GraphletCode, Tracked> tracked;
  std::map<TreeletCode, u64> shape_samples;
  Rng rng(cfg.seed);
  NeighborBuffer buffer(cfg.sampler);
  Rational p_k = colorful_probability(table.k());

  auto emit = [&](const std::string& line) {
    result.events.push_back(line);
    if (diagnostics) *diagnostics << line << '\n';
  };

  u64 covered_count = 0;
  u64 last_uncovered_seen = 0;
  u64 tau = 0;
  for (;;) {
    if (tau >= cfg.max_samples) {
      result.partial = true;
      break;
    }
    ++tau;
    // Weight updates precede the draw; graphlets discovered later receive
    // the same mass through the per-shape sample ledger below.
    double r_j = to_double(shape_totals.at(current));
    for (auto& [code, t] : tracked) {
      u128 s_ij = t.profile->shape_count(current);
      if (s_ij > 0) t.weight.add(to_double(s_ij) / r_j);
    }
    ++shape_samples[current];

    Occurrence occ = sample_occurrence_of_shape(table, g, current, alias, rng, &buffer);
    GraphletCode code = materialize(occ, g);

    auto it = tracked.find(code);
    if (it == tracked.end()) {
      Tracked fresh;
      fresh.profile = &sigma.profile(code);
      // Replay the ledger: the weight this graphlet would have accumulated
      // had it been tracked from the first sample (current one included).
      for (const auto& [shape, n] : shape_samples) {
        u128 s_ij = fresh.profile->shape_count(shape);
        if (s_ij > 0)
          fresh.weight.add(static_cast<double>(n) * to_double(s_ij) /
                           to_double(shape_totals.at(shape)));
      }
      it = tracked.emplace(code, std::move(fresh)).first;
    }
    Tracked& t = it->second;
    if (!t.covered) last_uncovered_seen = tau;
    t.samples += 1;

    if (!t.covered && t.samples >= threshold) {
      t.covered = true;
      ++covered_count;
      std::vector<CoveredStat> covered;
      for (const auto& [c2, t2] : tracked)
        if (t2.covered) covered.push_back({t2.profile, t2.samples, t2.weight.sum});
      TreeletCode next_shape = select_next_treelet(shape_totals, covered);
      std::ostringstream line;
      line << "covered sample=" << tau << " graphlet=" << code.hex()
           << " covered_total=" << covered_count << " next_shape=" << hex_string(next_shape.bits);
      for (const auto& [shape, r] : shape_totals) {
        double score = 0;
        for (const CoveredStat& cs : covered) {
          u128 s_ij = cs.profile->shape_count(shape);
          if (s_ij > 0 && cs.weight > 0)
            score += to_double(s_ij) * (static_cast<double>(cs.samples) / cs.weight);
        }
        score /= to_double(r);
        line << " score[" << hex_string(shape.bits) << "]=" << score;
      }
      emit(line.str());
      if (next_shape != current) {
        current = next_shape;
        alias = RootAlias::for_shape(table, current);
      }
    }
    if (tau - last_uncovered_seen >= patience) break;
  }

  result.total_samples = tau;
  result.per_shape_samples = shape_samples;
  for (const auto& [code, t] : tracked) {
    AgsGraphletStat stat;
    stat.samples = t.samples;
    stat.weight = t.weight.sum;
    stat.covered = t.covered;
    if (t.weight.sum > 0) {
      stat.colorful_estimate = static_cast<double>(t.samples) / t.weight.sum;
      stat.uncolored_estimate = stat.colorful_estimate / p_k.value();
    }
    result.graphlets.emplace(code, stat);
  }
  return result;
}

}  // namespace motif
