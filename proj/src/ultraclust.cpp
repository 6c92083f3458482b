#include "padicpose/ultraclust.hpp"

#include "padicpose/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace padicpose {

int Dendrogram::canonical(int v) const {
  while (nodes_[v].children.size() == 1) v = nodes_[v].children[0];
  return v;
}

int Dendrogram::lca(int a, int b) const {
  while (nodes_[a].depth > nodes_[b].depth) a = nodes_[a].parent;
  while (nodes_[b].depth > nodes_[a].depth) b = nodes_[b].parent;
  while (a != b) {
    a = nodes_[a].parent;
    b = nodes_[b].parent;
  }
  return a;
}

Dendrogram build_dendrogram(const std::vector<UnramifiedElement>& x) {
  if (x.empty()) throw ShapeMismatch("cannot build a dendrogram of no data");
  Dendrogram d;
  d.dim_ = x.front().dim();
  d.levels_ = x.front().levels();
  for (const auto& e : x)
    if (e.dim() != d.dim_ || e.levels() != d.levels_) throw ShapeMismatch("data elements differ in shape");
  d.data_ = x;
  d.order_.resize(x.size());
  std::iota(d.order_.begin(), d.order_.end(), 0);
  std::stable_sort(d.order_.begin(), d.order_.end(),
                   [&](int a, int b) { return x[a].digits() < x[b].digits(); });
  d.leaf_of_.assign(x.size(), -1);

  struct Frame {
    int begin, end, depth, parent;
    std::uint64_t digit;
  };
  // Explicit stack; children are pushed in reverse so ids follow depth-first order.
  std::vector<Frame> stack = {{0, static_cast<int>(x.size()), 0, -1, 0}};
  while (!stack.empty()) {
    const Frame f = stack.back();
    stack.pop_back();
    const int id = static_cast<int>(d.nodes_.size());
    Dendrogram::Node n;
    n.depth = f.depth;
    n.digit = f.digit;
    n.parent = f.parent;
    n.begin = f.begin;
    n.end = f.end;
    d.nodes_.push_back(n);
    if (f.parent >= 0) d.nodes_[f.parent].children.push_back(id);
    if (f.depth == d.levels_) {
      for (int i = f.begin; i < f.end; ++i) d.leaf_of_[d.order_[i]] = id;
      continue;
    }
    std::vector<Frame> kids;
    for (int i = f.begin; i < f.end;) {
      const std::uint64_t dig = x[d.order_[i]].digit(f.depth);
      int j = i;
      while (j < f.end && x[d.order_[j]].digit(f.depth) == dig) ++j;
      kids.push_back({i, j, f.depth + 1, id, dig});
      i = j;
    }
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
  }

  d.best_.assign(d.nodes_.size(), 0);
  for (int v = static_cast<int>(d.nodes_.size()) - 1; v >= 0; --v) {
    const auto& n = d.nodes_[v];
    if (n.children.empty()) continue;
    Dyadic best = ~Dyadic{0};
    for (int c : n.children) {
      const Dyadic outside = static_cast<Dyadic>(d.size(v) - d.size(c)) << (d.levels_ - n.depth);
      best = std::min(best, outside + d.best_[c]);
    }
    d.best_[v] = best;
  }
  return d;
}

Rational dyadic_to_rational(Dyadic v, int levels) {
  BigInt num = static_cast<std::uint64_t>(v >> 64);
  num <<= 64;
  num += static_cast<std::uint64_t>(v);
  BigInt den = 1;
  den <<= static_cast<unsigned>(levels);
  return Rational(num, den);
}

CentreSet centres(const Dendrogram& d, int node) {
  CentreSet out;
  out.sum = d.best(node);
  std::vector<int> stack = {node};
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    const auto& n = d.node(v);
    if (n.children.empty()) {
      out.leaves.push_back(v);
      for (int i = n.begin; i < n.end; ++i) out.indices.push_back(d.order()[i]);
      continue;
    }
    for (int c : n.children) {
      const Dyadic outside = static_cast<Dyadic>(d.size(v) - d.size(c)) << (d.levels() - n.depth);
      if (outside + d.best(c) == d.best(v)) stack.push_back(c);
    }
  }
  std::sort(out.indices.begin(), out.indices.end());
  std::sort(out.leaves.begin(), out.leaves.end());
  out.representative = out.indices.front();
  return out;
}

Rational energy(const Dendrogram& d, const Clustering& c) { return dyadic_to_rational(c.energy, d.levels()); }

std::vector<Clustering> lbgp(const Dendrogram& d, int k) {
  if (k < 1) throw std::invalid_argument("cluster bound must be positive");
  Clustering cur;
  cur.clusters = {d.canonical(0)};
  cur.energy = d.best(cur.clusters[0]);
  std::vector<Clustering> seq = {cur};
  // One clustering per step: a split may add many clusters when a vertex is wide.
  while (seq.size() < static_cast<std::size_t>(k)) {
    int pick = -1;
    Dyadic pick_gain = 0;
    for (std::size_t i = 0; i < cur.clusters.size(); ++i) {
      const int v = cur.clusters[i];
      const auto& n = d.node(v);
      if (n.children.size() < 2) continue;
      Dyadic after = 0;
      for (int c : n.children) after += d.best(d.canonical(c));
      const Dyadic gain = d.best(v) - after;
      if (pick >= 0) {
        const auto& p = d.node(cur.clusters[pick]);
        if (gain < pick_gain) continue;
        // Clusters are scanned leftmost first, so only a shallower node wins an exact tie.
        if (gain == pick_gain && n.depth >= p.depth) continue;
      }
      pick = static_cast<int>(i);
      pick_gain = gain;
    }
    if (pick < 0) break;
    const int v = cur.clusters[pick];
    std::vector<int> next(cur.clusters.begin(), cur.clusters.begin() + pick);
    for (int c : d.node(v).children) next.push_back(d.canonical(c));
    next.insert(next.end(), cur.clusters.begin() + pick + 1, cur.clusters.end());
    cur.clusters = std::move(next);
    cur.energy -= pick_gain;
    seq.push_back(cur);
  }
  return seq;
}

ValidityValues validity(const Dendrogram& d, const Clustering& c) {
  if (c.clusters.size() < 2) throw SingleCluster("Inter needs at least two clusters");
  int deepest = 0;
  for (std::size_t i = 0; i < c.clusters.size(); ++i)
    for (std::size_t j = i + 1; j < c.clusters.size(); ++j)
      deepest = std::max(deepest, d.node(d.lca(c.clusters[i], c.clusters[j])).depth);
  ValidityValues out;
  out.intra = energy(d, c) / Rational(static_cast<long long>(d.data().size()));
  out.inter = pow2(-deepest);
  out.validity = out.intra / out.inter;
  return out;
}

ValidityResult validity_curve(const Dendrogram& d, int k) {
  const auto seq = lbgp(d, k);
  ValidityResult out;
  bool found = false;
  for (const auto& c : seq) {
    if (c.clusters.size() < 2) continue;
    const Rational v = validity(d, c).validity;
    out.curve.emplace_back(static_cast<int>(c.clusters.size()), v);
    if (!found || v < out.index) {
      out.index = v;
      out.argmin_clusters = static_cast<int>(c.clusters.size());
      out.ideal = c;
      found = true;
    }
  }
  if (!found) throw SingleCluster("data does not split into two clusters");
  std::size_t run_start = 0, best_start = 0, best_len = 1;
  for (std::size_t i = 1; i <= out.curve.size(); ++i) {
    if (i < out.curve.size() && out.curve[i].second == out.curve[run_start].second) continue;
    if (i - run_start > best_len) {
      best_len = i - run_start;
      best_start = run_start;
    }
    run_start = i;
  }
  out.plateau = {out.curve[best_start].first, out.curve[best_start + best_len - 1].first};
  return out;
}

ValidityResult validity_index(const Dendrogram& d, int k) {
  if (k < 2 || k >= static_cast<int>(d.data().size()))
    throw std::invalid_argument("validity index needs 2 <= k < |X|");
  return validity_curve(d, k);
}

ClusterReport cluster_report(const Dendrogram& d, int node, int votes) {
  ClusterReport r;
  r.node = node;
  r.size = d.size(node);
  r.votes = votes;
  r.depth = d.node(node).depth;
  r.measure = ball_measure(r.depth, d.dim());
  r.density = r.size > 1 ? Rational(r.size - 1) / r.measure : Rational(0);
  r.centre = centres(d, node);
  int cc = r.centre.leaves.front();
  for (int leaf : r.centre.leaves) cc = d.lca(cc, leaf);
  r.central_node = cc;
  r.central_depth = d.node(cc).depth;
  r.precision = ball_measure(r.central_depth, d.dim());
  std::set<int> spine;
  for (int leaf : r.centre.leaves)
    for (int v = leaf; v >= 0; v = d.node(v).parent) {
      spine.insert(v);
      if (v == node) break;
    }
  r.spine_nodes = static_cast<int>(spine.size());
  r.spine_branch_depth = r.centre.leaves.size() > 1 ? r.central_depth : d.levels();
  return r;
}

bool within_tolerance(const Rational& a, const Rational& b, double tie_tol) {
  if (a == b) return true;
  const Rational tol(BigInt(static_cast<long long>(std::llround(tie_tol * 1e9))), BigInt(1000000000));
  const Rational hi = a > b ? a : b;
  const Rational diff = a > b ? a - b : b - a;
  return diff <= tol * hi;
}

std::vector<ClusterReport> rank_clusters(const Dendrogram& d, std::vector<ClusterReport> reports, double tie_tol) {
  auto before = [&](const ClusterReport& a, const ClusterReport& b) {
    if (!within_tolerance(Rational(a.votes), Rational(b.votes), tie_tol)) return a.votes > b.votes;
    if (!within_tolerance(a.density, b.density, tie_tol)) return a.density > b.density;
    if (a.precision != b.precision) return a.precision < b.precision;
    if (a.depth != b.depth) return a.depth < b.depth;
    return d.node(a.node).begin < d.node(b.node).begin;
  };
  for (std::size_t i = 1; i < reports.size(); ++i)
    for (std::size_t j = i; j > 0 && before(reports[j], reports[j - 1]); --j) std::swap(reports[j], reports[j - 1]);
  return reports;
}

}  // namespace padicpose
