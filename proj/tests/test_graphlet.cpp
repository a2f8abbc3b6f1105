#include <doctest.h>

#include <array>
#include <filesystem>
#include <fstream>
#include <set>

#include "motif/graphlet.hpp"
#include "motif/oracle.hpp"
#include "test_util.hpp"

using namespace motif;

namespace {

SmallAdj adj_from_edges(int k, std::initializer_list<std::pair<int, int>> edges) {
  SmallAdj a;
  a.k = k;
  for (auto [i, j] : edges) a.set(i, j);
  return a;
}

SmallAdj complete_adj(int k) {
  SmallAdj a;
  a.k = k;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) a.set(i, j);
  return a;
}

// All connected graphs on k labeled nodes, mapped to canonical codes.
std::set<u128> connected_class_codes(int k) {
  std::set<u128> codes;
  int bits = k * (k - 1) / 2;
  for (u64 mask = 0; mask < (1ull << bits); ++mask) {
    SmallAdj a{k, static_cast<u128>(mask)};
    if (!a.connected()) continue;
    codes.insert(canonical_graphlet(a).bits);
  }
  return codes;
}

SmallAdj random_connected(Rng& rng, int k, double p) {
  for (;;) {
    SmallAdj a;
    a.k = k;
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j)
        if (uniform01(rng) < p) a.set(i, j);
    if (a.connected()) return a;
  }
}

}  // namespace

TEST_CASE("canonical codes separate isomorphism classes") {
  // All relabelings of the 3-path collapse to one code, distinct from the
  // triangle's; three nodes admit exactly two connected classes.
  std::set<u128> codes3 = connected_class_codes(3);
  CHECK(codes3.size() == 2);
  CHECK(connected_class_codes(4).size() == 6);
  CHECK(connected_class_codes(5).size() == 21);
  CHECK_THROWS_AS(canonical_graphlet(adj_from_edges(3, {{0, 1}})), std::invalid_argument);
}

TEST_CASE("canonicalization is permutation-invariant") {
  Rng rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    int k = 3 + static_cast<int>(uniform_below(rng, static_cast<u64>(6)));
    SmallAdj a = random_connected(rng, k, 0.45);
    GraphletCode code = canonical_graphlet(a);
    for (int rep = 0; rep < 10; ++rep) {
      std::vector<int> perm(k);
      for (int i = 0; i < k; ++i) perm[i] = i;
      for (int i = k; i > 1; --i)
        std::swap(perm[i - 1], perm[uniform_below(rng, static_cast<u64>(i))]);
      SmallAdj b;
      b.k = k;
      for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
          if (a.at(i, j)) b.set(perm[i], perm[j]);
      CHECK(canonical_graphlet(b) == code);
    }
  }
}

TEST_CASE("large-k canonicalization agrees with a permutation oracle") {
  // k = 9 leaves the exhaustive path and uses the frontier search; compare
  // it against an independent full-permutation minimum computed here.
  Rng rng(61);
  for (int trial = 0; trial < 5; ++trial) {
    SmallAdj a = random_connected(rng, 9, 0.4);
    GraphletCode fast = canonical_graphlet(a);
    std::array<int, 9> perm{};
    for (int i = 0; i < 9; ++i) perm[i] = i;
    u128 best = ~static_cast<u128>(0);
    do {
      u128 bits = 0;
      int idx = 0;
      for (int i = 0; i < 9; ++i)
        for (int j = i + 1; j < 9; ++j, ++idx)
          if (a.at(perm[i], perm[j])) bits |= static_cast<u128>(1) << idx;
      best = std::min(best, bits);
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(fast.bits == best);
    CHECK(fast.k == 9);
  }
  // Heavy-tie inputs (paths, stars) exercise the fallback.
  SmallAdj path10;
  path10.k = 10;
  for (int i = 0; i + 1 < 10; ++i) path10.set(i, i + 1);
  GraphletCode p = canonical_graphlet(path10);
  for (int rep = 0; rep < 5; ++rep) {
    std::vector<int> relabel(10);
    for (int i = 0; i < 10; ++i) relabel[i] = i;
    for (int i = 10; i > 1; --i)
      std::swap(relabel[i - 1], relabel[uniform_below(rng, static_cast<u64>(i))]);
    SmallAdj b;
    b.k = 10;
    for (int i = 0; i + 1 < 10; ++i) b.set(relabel[i], relabel[i + 1]);
    CHECK(canonical_graphlet(b) == p);
  }
  CHECK_THROWS_AS(canonical_graphlet(SmallAdj{11, 0}), std::invalid_argument);
}

TEST_CASE("spanning tree counts") {
  CHECK(spanning_tree_count(complete_adj(5)) == 125);  // 5^3
  CHECK(spanning_tree_count(adj_from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}})) == 4);
  CHECK(spanning_tree_count(adj_from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}})) == 1);
  CHECK(spanning_tree_count(adj_from_edges(4, {{0, 1}, {0, 2}, {0, 3}})) == 1);
  for (int k = 2; k <= 8; ++k) {
    u128 expect = 1;
    for (int i = 0; i < k - 2; ++i) expect *= static_cast<u128>(k);
    CHECK(spanning_tree_count(complete_adj(k)) == expect);
  }
}

TEST_CASE("spanning profiles match brute force") {
  SUBCASE("triangle: all three trees are paths") {
    SpanningProfile p = spanning_profile(complete_adj(3));
    CHECK(p.sigma == 3);
    CHECK(p.shapes.size() == 1);
    CHECK(p.shapes[0].second == 3);
  }
  SUBCASE("K4 splits into 12 paths and 4 stars") {
    SpanningProfile p = spanning_profile(complete_adj(4));
    CHECK(p.sigma == 16);
    SpanningOracle oracle = exact_spanning_trees(complete_adj(4));
    REQUIRE(p.shapes.size() == 2);
    std::map<TreeletCode, u128> got(p.shapes.begin(), p.shapes.end());
    CHECK(got == oracle.by_shape);
    std::multiset<u128> counts;
    for (auto& [shape, c] : got) counts.insert(c);
    CHECK(counts == std::multiset<u128>{4, 12});
  }
  SUBCASE("a path graphlet has exactly its own shape") {
    SpanningProfile p = spanning_profile(adj_from_edges(4, {{0, 1}, {1, 2}, {2, 3}}));
    CHECK(p.sigma == 1);
    CHECK(p.shapes.size() == 1);
    CHECK(p.shapes[0].second == 1);
  }
  SUBCASE("random graphlets agree with edge-subset enumeration") {
    Rng rng(5);
    for (int trial = 0; trial < 30; ++trial) {
      int k = 3 + static_cast<int>(uniform_below(rng, static_cast<u64>(4)));
      SmallAdj a = random_connected(rng, k, 0.5);
      SpanningProfile p = spanning_profile(a);
      SpanningOracle oracle = exact_spanning_trees(a);
      CHECK(p.sigma == oracle.sigma);
      CHECK(std::map<TreeletCode, u128>(p.shapes.begin(), p.shapes.end()) == oracle.by_shape);
    }
  }
}

TEST_CASE("colorful probability is exact") {
  Rational p3 = colorful_probability(3);
  CHECK(p3.num == 2);
  CHECK(p3.den == 9);
  Rational p5 = colorful_probability(5);
  CHECK(p5.value() == doctest::Approx(0.0384).epsilon(1e-12));
  Rational p1 = colorful_probability(1);
  CHECK(p1.num == 1);
  CHECK(p1.den == 1);
  CHECK(colorful_probability(16).value() > 0);
}

TEST_CASE("histogram estimator arithmetic") {
  SigmaCache sigma;
  GraphletCode c4 = canonical_graphlet(adj_from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}));
  std::map<GraphletCode, u64> hist{{c4, 500}};
  auto est = estimate_from_histogram(hist, 500, static_cast<u128>(100), sigma, 0.0384);
  // all mass on one graphlet with sigma 4: 100 / (4 * 0.0384)
  CHECK(est[c4].colorful == doctest::Approx(25.0));
  CHECK(est[c4].uncolored == doctest::Approx(651.0416666667));
  CHECK_THROWS_AS(estimate_from_histogram(hist, 0, 100, sigma, 0.0384), std::invalid_argument);
  auto none = estimate_from_histogram({}, 10, 100, sigma, 0.0384);
  CHECK(none.empty());
}

TEST_CASE("sigma cache persists profiles") {
  SigmaCache cache;
  GraphletCode k4 = canonical_graphlet(complete_adj(4));
  GraphletCode c5 = canonical_graphlet(adj_from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}}));
  CHECK(cache.sigma(k4) == 16);
  CHECK(cache.sigma(c5) == 5);
  std::string path = (std::filesystem::temp_directory_path() / "sigma_cache_test.txt").string();
  cache.save(path);
  SigmaCache loaded;
  loaded.load(path);
  CHECK(loaded.sigma(k4) == 16);
  CHECK(loaded.profile(c5).shapes == cache.profile(c5).shapes);
  std::filesystem::remove(path);
  {
    std::ofstream bad(path);
    bad << "not,a,valid\nline\n";
  }
  SigmaCache broken;
  CHECK_THROWS_AS(broken.load(path), std::exception);
  std::filesystem::remove(path);
}
