#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "padicpose/errors.hpp"
#include "padicpose/ultraclust.hpp"

#include <random>
#include <set>

using namespace padicpose;

namespace {

std::vector<UnramifiedElement> scalars(const std::vector<std::uint64_t>& v, int m) {
  std::vector<UnramifiedElement> out;
  for (auto a : v) out.push_back(encode_residues({a}, m));
  return out;
}

std::vector<int> members(const Dendrogram& d, int node) {
  std::vector<int> out;
  for (int i = d.node(node).begin; i < d.node(node).end; ++i) out.push_back(d.order()[i]);
  std::sort(out.begin(), out.end());
  return out;
}

Rational sum_to(const std::vector<UnramifiedElement>& x, const std::vector<int>& c, int centre) {
  Rational s = 0;
  for (int i : c) s += dist_K(x[i], x[centre]);
  return s;
}

// O(|C|^2) minimizers of the distance sum.
std::vector<int> brute_centres(const std::vector<UnramifiedElement>& x, const std::vector<int>& c) {
  Rational best = -1;
  std::vector<int> out;
  for (int a : c) {
    const Rational s = sum_to(x, c, a);
    if (best < 0 || s < best) {
      best = s;
      out = {a};
    } else if (s == best) {
      out.push_back(a);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Validity from first principles, with the given centre per cluster.
Rational brute_validity(const std::vector<UnramifiedElement>& x, const std::vector<std::vector<int>>& clusters,
                        const std::vector<int>& centre) {
  Rational intra = 0, inter = -1;
  for (std::size_t i = 0; i < clusters.size(); ++i) intra += sum_to(x, clusters[i], centre[i]);
  intra /= static_cast<long long>(x.size());
  for (std::size_t i = 0; i < clusters.size(); ++i)
    for (std::size_t j = i + 1; j < clusters.size(); ++j) {
      const Rational dd = dist_K(x[centre[i]], x[centre[j]]);
      if (inter < 0 || dd < inter) inter = dd;
    }
  return intra / inter;
}

// Every verticial clustering below node v: v itself or a union over its children.
std::vector<std::vector<int>> verticial(const Dendrogram& d, int v) {
  v = d.canonical(v);
  std::vector<std::vector<int>> out = {{v}};
  if (d.node(v).children.empty()) return out;
  std::vector<std::vector<int>> acc = {{}};
  for (int c : d.node(v).children) {
    std::vector<std::vector<int>> next;
    for (const auto& a : acc)
      for (const auto& b : verticial(d, c)) {
        auto u = a;
        u.insert(u.end(), b.begin(), b.end());
        next.push_back(u);
      }
    acc = std::move(next);
  }
  out.insert(out.end(), acc.begin(), acc.end());
  return out;
}

// Exhaustive minimum of Validity over clusterings with 2..max_size clusters.
Rational exhaustive_index(const Dendrogram& d, const std::vector<UnramifiedElement>& x, std::size_t max_size) {
  Rational best = -1;
  for (const auto& cl : verticial(d, 0)) {
    if (cl.size() < 2 || cl.size() > max_size) continue;
    std::vector<std::vector<int>> groups;
    std::vector<int> centre;
    for (int node : cl) {
      groups.push_back(members(d, node));
      centre.push_back(brute_centres(x, groups.back()).front());
    }
    const Rational v = brute_validity(x, groups, centre);
    if (best < 0 || v < best) best = v;
  }
  return best;
}

std::vector<UnramifiedElement> random_points(std::mt19937_64& rng, int count, int dim, int m, int spread) {
  std::vector<UnramifiedElement> x;
  std::vector<std::uint64_t> base(dim);
  for (auto& b : base) b = rng() & mask_bits(m);
  for (int i = 0; i < count; ++i) {
    std::vector<std::uint64_t> v(dim);
    const int keep = static_cast<int>(rng() % (spread + 1));
    for (int j = 0; j < dim; ++j) v[j] = ((base[j] & mask_bits(keep)) | (rng() & ~mask_bits(keep))) & mask_bits(m);
    x.push_back(encode_residues(v, m));
  }
  return x;
}

// Two groups differing at level 0, each of radius 2^-6.
// Points within a group are pairwise at distance 2^-6, the groups at distance 1.
std::vector<UnramifiedElement> two_groups(std::mt19937_64& rng, int a, int b) {
  std::vector<UnramifiedElement> out;
  for (int g = 0; g < 2; ++g) {
    std::set<std::uint64_t> digits;
    while (static_cast<int>(digits.size()) < (g == 0 ? a : b)) digits.insert(rng() & 511);
    for (std::uint64_t t : digits) {
      std::vector<std::uint64_t> v(9);
      v[0] = static_cast<std::uint64_t>(g);
      for (int c = 0; c < 9; ++c) v[c] |= ((t >> c) & 1) << 6;
      out.push_back(encode_residues(v, 8));
    }
  }
  return out;
}

}  // namespace

TEST_CASE("dendrogram structure") {
  const auto x = scalars({0, 1, 2}, 2);
  const Dendrogram d = build_dendrogram(x);
  const auto& root = d.node(0);
  REQUIRE(root.children.size() == 2);
  CHECK(members(d, root.children[0]) == std::vector<int>{0, 2});
  CHECK(members(d, root.children[1]) == std::vector<int>{1});
  CHECK(d.node(root.children[0]).children.size() == 2);

  const Dendrogram one = build_dendrogram(scalars({5}, 4));
  CHECK(one.nodes().size() == 5);
  CHECK(one.canonical(0) == one.leaf_of(0));

  std::mt19937_64 rng(1);
  const auto r = random_points(rng, 40, 3, 10, 8);
  const Dendrogram dr = build_dendrogram(r);
  for (int i = 0; i < 40; ++i)
    for (int j = 0; j < 40; ++j) {
      const int depth = dr.node(dr.lca(dr.leaf_of(i), dr.leaf_of(j))).depth;
      CHECK(depth == agreement_depth(r[i], r[j]));
    }
  // Children partition their parent.
  for (std::size_t v = 0; v < dr.nodes().size(); ++v) {
    const auto& n = dr.node(static_cast<int>(v));
    if (n.children.empty()) continue;
    int total = 0;
    for (int c : n.children) total += dr.size(c);
    CHECK(total == dr.size(static_cast<int>(v)));
  }
}

TEST_CASE("centres") {
  const auto x = scalars({0, 2, 4}, 4);
  const Dendrogram d = build_dendrogram(x);
  const CentreSet c = centres(d, 0);
  CHECK(c.indices == std::vector<int>{0, 2});
  CHECK(c.representative == 0);
  CHECK(dyadic_to_rational(c.sum, d.levels()) == Rational(3, 4));
  CHECK(sum_to(x, {0, 1, 2}, 1) == 1);

  const Dendrogram s = build_dendrogram(scalars({7}, 4));
  CHECK(centres(s, 0).indices == std::vector<int>{0});
  CHECK(centres(s, 0).sum == 0);

  const Dendrogram two = build_dendrogram(scalars({3, 9}, 4));
  CHECK(centres(two, 0).indices == std::vector<int>{0, 1});
}

TEST_CASE("trie centres equal brute-force centres") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const int count = 1 + static_cast<int>(rng() % 64);
    const auto x = random_points(rng, count, 1 + static_cast<int>(rng() % 3), 8, 6);
    const Dendrogram d = build_dendrogram(x);
    const int node = static_cast<int>(rng() % d.nodes().size());
    const auto mem = members(d, node);
    const CentreSet c = centres(d, node);
    CHECK(c.indices == brute_centres(x, mem));
    CHECK(dyadic_to_rational(c.sum, d.levels()) == sum_to(x, mem, c.representative));
  }
}

TEST_CASE("energy") {
  const auto x = scalars({0, 2, 4}, 4);
  const Dendrogram d = build_dendrogram(x);
  Clustering one{{d.canonical(0)}, d.best(d.canonical(0))};
  CHECK(energy(d, one) == Rational(3, 4));

  const auto seq = lbgp(d, 3);
  CHECK(energy(d, seq.back()) == 0);
}

TEST_CASE("LBG_p sequence") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    const int count = 2 + static_cast<int>(rng() % 60);
    const auto x = random_points(rng, count, 2, 10, 8);
    const Dendrogram d = build_dendrogram(x);
    const int k = 1 + static_cast<int>(rng() % 12);
    const auto seq = lbgp(d, k);
    CHECK(seq.size() <= static_cast<std::size_t>(k));
    CHECK(seq.front().clusters.size() == 1);
    for (std::size_t i = 1; i < seq.size(); ++i) {
      CHECK(energy(d, seq[i]) <= energy(d, seq[i - 1]));
      CHECK(seq[i].clusters.size() > seq[i - 1].clusters.size());
    }
    for (const auto& c : seq) {
      // Clusters partition X and their stored energy matches the brute force sum.
      std::vector<int> all;
      Rational e = 0;
      for (int node : c.clusters) {
        const auto mem = members(d, node);
        all.insert(all.end(), mem.begin(), mem.end());
        e += sum_to(x, mem, brute_centres(x, mem).front());
      }
      std::sort(all.begin(), all.end());
      CHECK(all.size() == x.size());
      CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
      CHECK(energy(d, c) == e);
    }
  }
  const Dendrogram d = build_dendrogram(scalars({1, 2, 3}, 4));
  CHECK(lbgp(d, 1).size() == 1);
  CHECK(energy(d, lbgp(d, 3).back()) == 0);
}

TEST_CASE("Validity") {
  const auto x = scalars({0, 2, 4}, 4);
  const Dendrogram d = build_dendrogram(x);
  Clustering one{{d.canonical(0)}, d.best(d.canonical(0))};
  CHECK_THROWS_AS(validity(d, one), SingleCluster);
  CHECK(energy(d, one) / 3 == Rational(1, 4));

  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 50; ++trial) {
    const int count = 3 + static_cast<int>(rng() % 6);
    const auto data = random_points(rng, count, 1, 6, 4);
    const Dendrogram dd = build_dendrogram(data);
    for (const auto& cl : verticial(dd, 0)) {
      if (cl.size() < 2) continue;
      std::vector<std::vector<int>> groups;
      std::vector<std::vector<int>> choices;
      for (int node : cl) {
        groups.push_back(members(dd, node));
        choices.push_back(brute_centres(data, groups.back()));
      }
      Clustering c{cl, 0};
      for (int node : cl) c.energy += dd.best(node);
      const Rational v = validity(dd, c).validity;
      // Every combination of centre choices gives the same Validity.
      std::vector<std::size_t> pick(cl.size(), 0);
      for (;;) {
        std::vector<int> centre;
        for (std::size_t i = 0; i < cl.size(); ++i) centre.push_back(choices[i][pick[i]]);
        CHECK(brute_validity(data, groups, centre) == v);
        std::size_t i = 0;
        while (i < cl.size() && ++pick[i] == choices[i].size()) pick[i++] = 0;
        if (i == cl.size()) break;
      }
    }
  }
}

TEST_CASE("validity index") {
  std::mt19937_64 rng(41);
  SUBCASE("two separated groups") {
    for (int trial = 0; trial < 20; ++trial) {
      const auto x = two_groups(rng, 3 + static_cast<int>(rng() % 2), 3 + static_cast<int>(rng() % 2));
      const Dendrogram d = build_dendrogram(x);
      // Three steps stop before both groups shatter into singletons, where the index is 0.
      const auto r = validity_index(d, 3);
      CHECK(r.argmin_clusters == 2);
      std::size_t most = 0;
      for (const auto& c : lbgp(d, 3)) most = std::max(most, c.clusters.size());
      CHECK(r.index == exhaustive_index(d, x, most));
    }
  }
  SUBCASE("greedy never beats the exhaustive minimum") {
    int equal = 0, trials = 0;
    for (int trial = 0; trial < 60; ++trial) {
      const int count = 3 + static_cast<int>(rng() % 6);
      const auto x = random_points(rng, count, 1 + static_cast<int>(rng() % 2), 6, 5);
      const Dendrogram d = build_dendrogram(x);
      if (d.node(d.canonical(0)).children.empty()) continue;
      const int k = 2 + static_cast<int>(rng() % (count - 2));
      const auto r = validity_index(d, k);
      std::size_t most = 0;
      for (const auto& c : lbgp(d, k)) most = std::max(most, c.clusters.size());
      const Rational ex = exhaustive_index(d, x, most);
      CHECK(r.index >= ex);
      equal += r.index == ex;
      ++trials;
    }
    MESSAGE("greedy matched the exhaustive minimum on " << equal << " of " << trials << " instances");
  }
  SUBCASE("index of all singletons is zero") {
    for (int trial = 0; trial < 30; ++trial) {
      std::set<std::uint64_t> distinct;
      while (distinct.size() < 6) distinct.insert(rng() & 0xff);
      const auto x = scalars({distinct.begin(), distinct.end()}, 8);
      const Dendrogram d = build_dendrogram(x);
      CHECK(validity_curve(d, static_cast<int>(x.size())).index == 0);
    }
  }
  SUBCASE("monotone in k") {
    const auto x = random_points(rng, 30, 2, 8, 6);
    const Dendrogram d = build_dendrogram(x);
    Rational prev = validity_index(d, 2).index;
    for (int k = 3; k < 12; ++k) {
      const Rational v = validity_index(d, k).index;
      CHECK(v <= prev);
      prev = v;
    }
  }
  const Dendrogram d = build_dendrogram(scalars({1, 2, 3}, 4));
  CHECK_THROWS_AS(validity_index(d, 3), std::invalid_argument);
  CHECK_THROWS_AS(validity_index(d, 1), std::invalid_argument);
}

TEST_CASE("cluster reports") {
  const auto x = scalars({0, 2, 1}, 4);
  const Dendrogram d = build_dendrogram(x);
  const int c02 = d.canonical(d.node(0).children[0]);
  const ClusterReport r = cluster_report(d, c02, 2);
  CHECK(r.size == 2);
  CHECK(r.measure == Rational(1, 2));
  CHECK(r.density == 2);
  CHECK(r.central_depth == 1);
  CHECK(r.precision <= r.measure);

  const ClusterReport s = cluster_report(d, d.leaf_of(2), 1);
  CHECK(s.density == 0);
  CHECK(s.spine_branch_depth == d.levels());

  std::mt19937_64 rng(43);
  const auto data = random_points(rng, 50, 2, 8, 6);
  const Dendrogram dd = build_dendrogram(data);
  for (std::size_t v = 0; v < dd.nodes().size(); ++v) {
    const ClusterReport q = cluster_report(dd, static_cast<int>(v), dd.size(static_cast<int>(v)));
    CHECK(q.precision <= q.measure);
    CHECK(q.density >= q.size - 1);
    if (q.centre.leaves.size() == 1) CHECK(q.spine_branch_depth == dd.levels());
  }
}

TEST_CASE("ranking") {
  const Dendrogram d = build_dendrogram(scalars({0, 1, 2, 3, 4, 5, 6, 7}, 3));
  auto report = [&](int node, int votes, Rational density, Rational precision) {
    ClusterReport r;
    r.node = node;
    r.votes = r.size = votes;
    r.depth = d.node(node).depth;
    r.density = density;
    r.precision = precision;
    return r;
  };
  const int a = d.leaf_of(0), b = d.leaf_of(1), c = d.leaf_of(2);

  auto ranked = rank_clusters(d, {report(c, 1, 0, 1), report(b, 4, 0, 1), report(a, 10, 0, 1)}, 0.05);
  CHECK(ranked[0].votes == 10);
  CHECK(ranked[1].votes == 4);
  CHECK(ranked[2].votes == 1);

  ranked = rank_clusters(d, {report(b, 10, 2, 1), report(a, 10, 8, 1)}, 0.05);
  CHECK(ranked[0].density == 8);

  ranked = rank_clusters(d, {report(b, 10, 4, pow2(-27)), report(a, 10, 4, pow2(-54))}, 0.05);
  CHECK(ranked[0].node == a);

  // Within tolerance, the larger count still loses to a denser cluster.
  ranked = rank_clusters(d, {report(a, 100, 1, 1), report(b, 97, 5, 1)}, 0.05);
  CHECK(ranked[0].node == b);
  ranked = rank_clusters(d, {report(a, 100, 1, 1), report(b, 97, 5, 1)}, 0.0);
  CHECK(ranked[0].node == a);

  CHECK(within_tolerance(100, 95, 0.05));
  CHECK_FALSE(within_tolerance(100, 94, 0.05));
}
