#pragma once

#include "padicpose/padic.hpp"

#include <cstdint>
#include <vector>

namespace padicpose {

// Sums of distances 2^-d held exactly as integers scaled by 2^levels.
using Dyadic = unsigned __int128;

// Prefix trie of digit tuples. Node 0 is the root; children are ordered by
// digit value, so data in `order` is in depth-first (leftmost-first) order.
class Dendrogram {
 public:
  struct Node {
    int depth = 0;
    std::uint64_t digit = 0;  // label of the edge from the parent
    int parent = -1;
    std::vector<int> children;
    int begin = 0, end = 0;  // range into order()
  };

  int dim() const { return dim_; }
  int levels() const { return levels_; }
  const std::vector<UnramifiedElement>& data() const { return data_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& node(int v) const { return nodes_[v]; }
  const std::vector<int>& order() const { return order_; }
  int size(int v) const { return nodes_[v].end - nodes_[v].begin; }
  int leaf_of(int index) const { return leaf_of_[index]; }
  // Deepest node holding the same data as v (end of its unary chain).
  int canonical(int v) const;
  int lca(int a, int b) const;
  // Minimal sum of distances from a data point of v to all of v, scaled by 2^levels.
  Dyadic best(int v) const { return best_[v]; }

  friend Dendrogram build_dendrogram(const std::vector<UnramifiedElement>& x);

 private:
  int dim_ = 0, levels_ = 0;
  std::vector<UnramifiedElement> data_;
  std::vector<Node> nodes_;
  std::vector<int> order_;
  std::vector<int> leaf_of_;
  std::vector<Dyadic> best_;
};

Dendrogram build_dendrogram(const std::vector<UnramifiedElement>& x);

Rational dyadic_to_rational(Dyadic v, int levels);

struct CentreSet {
  std::vector<int> indices;  // sorted data indices minimizing the distance sum
  std::vector<int> leaves;   // trie leaves holding them
  int representative = -1;   // smallest index
  Dyadic sum = 0;
};

CentreSet centres(const Dendrogram& d, int node);

// Canonical cluster nodes in depth-first order.
struct Clustering {
  std::vector<int> clusters;
  Dyadic energy = 0;
};

Rational energy(const Dendrogram& d, const Clustering& c);
// Greedy LBG_p splitting; element i has the clusters after i splits, at most k elements.
std::vector<Clustering> lbgp(const Dendrogram& d, int k);

struct ValidityValues {
  Rational intra, inter, validity;
};
// Throws SingleCluster when fewer than two clusters.
ValidityValues validity(const Dendrogram& d, const Clustering& c);

struct ValidityResult {
  Rational index;
  int argmin_clusters = 0;
  Clustering ideal;
  std::vector<std::pair<int, Rational>> curve;  // cluster count -> Validity
  // Advisory: longest run of consecutive equal curve values, as [first, last] counts.
  std::pair<int, int> plateau{0, 0};
};

// Minimum of Validity along the lbgp sequence, smallest cluster count on ties.
ValidityResult validity_index(const Dendrogram& d, int k);
// Same, without the k < |X| precondition.
ValidityResult validity_curve(const Dendrogram& d, int k);

struct ClusterReport {
  int node = 0;
  int size = 0;
  int votes = 0;
  int depth = 0;
  Rational measure;  // mu(C)
  Rational density;  // (|C| - 1) / mu(C), 0 for singletons
  int central_node = 0;
  int central_depth = 0;
  Rational precision;  // mu(C_c)
  int spine_nodes = 0;
  int spine_branch_depth = 0;
  CentreSet centre;
};

ClusterReport cluster_report(const Dendrogram& d, int node, int votes);

// Votes, then density, then precision; ties within relative tie_tol.
std::vector<ClusterReport> rank_clusters(const Dendrogram& d, std::vector<ClusterReport> reports, double tie_tol);

bool within_tolerance(const Rational& a, const Rational& b, double tie_tol);

}  // namespace padicpose
