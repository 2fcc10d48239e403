#include "harmless/graph.hpp"

#include <algorithm>

namespace harmless {

Graph::Graph(std::size_t n, std::span<const Edge> edges) : adj_(n) {
  for (auto [u, v] : edges)
    add_edge(u, v);
}

Vertex Graph::add_vertex() {
  adj_.emplace_back();
  return static_cast<Vertex>(adj_.size() - 1);
}

void Graph::add_edge(Vertex u, Vertex v) {
  if (!contains(u) || !contains(v))
    throw std::invalid_argument("edge endpoint out of range");
  if (u == v)
    throw std::invalid_argument("self-loop on vertex " + std::to_string(u));
  auto &nu = adj_[static_cast<std::size_t>(u)];
  auto it = std::lower_bound(nu.begin(), nu.end(), v);
  if (it != nu.end() && *it == v)
    throw std::invalid_argument("duplicate edge " + std::to_string(u) + "-" + std::to_string(v));
  nu.insert(it, v);
  auto &nv = adj_[static_cast<std::size_t>(v)];
  nv.insert(std::lower_bound(nv.begin(), nv.end(), u), u);
  ++num_edges_;
}

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (const auto &a : adj_)
    best = std::max(best, a.size());
  return best;
}

bool Graph::adjacent(Vertex u, Vertex v) const {
  const auto &nu = adj_[static_cast<std::size_t>(u)];
  return std::binary_search(nu.begin(), nu.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges_);
  for (std::size_t u = 0; u < adj_.size(); ++u)
    for (Vertex v : adj_[u])
      if (static_cast<Vertex>(u) < v)
        out.emplace_back(static_cast<Vertex>(u), v);
  return out;
}

Graph Graph::induced(std::span<const Vertex> keep) const {
  std::vector<Vertex> remap(adj_.size(), -1);
  for (std::size_t i = 0; i < keep.size(); ++i)
    remap[static_cast<std::size_t>(keep[i])] = static_cast<Vertex>(i);
  Graph out(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    auto &list = out.adj_[i];
    for (Vertex w : neighbours(keep[i]))
      if (remap[static_cast<std::size_t>(w)] >= 0)
        list.push_back(remap[static_cast<std::size_t>(w)]);
    std::sort(list.begin(), list.end());
    out.num_edges_ += list.size();
  }
  out.num_edges_ /= 2;
  return out;
}

Threshold Instance::max_threshold() const {
  Threshold best = 0;
  for (Threshold t : thresholds)
    best = std::max(best, t);
  return best;
}

void Instance::validate() const {
  if (thresholds.size() != graph.num_vertices())
    throw std::invalid_argument("thresholds must cover every vertex");
  for (std::size_t v = 0; v < thresholds.size(); ++v)
    if (thresholds[v] < 1)
      throw std::invalid_argument("threshold of vertex " + std::to_string(v) + " is below 1");
  if (k < 0)
    throw std::invalid_argument("target size k must be non-negative");
}

AnnotatedInstance AnnotatedInstance::with_core(Instance inst, VertexSet core) {
  AnnotatedInstance out;
  out.labels.resize(inst.size());
  for (std::size_t v = 0; v < out.labels.size(); ++v)
    out.labels[v] = static_cast<Vertex>(v);
  out.instance = std::move(inst);
  out.core = normalized(std::move(core));
  out.validate();
  return out;
}

void AnnotatedInstance::validate() const {
  instance.validate();
  for (Vertex v : core)
    if (!instance.graph.contains(v))
      throw std::invalid_argument("core vertex out of range");
  if (labels.size() != instance.size())
    throw std::invalid_argument("label table must cover every vertex");
}

VertexSet normalized(VertexSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

VertexMask to_mask(std::size_t n, std::span<const Vertex> s) {
  VertexMask mask(n, 0);
  for (Vertex v : s) {
    if (v < 0 || static_cast<std::size_t>(v) >= n)
      throw std::invalid_argument("vertex id " + std::to_string(v) + " out of range");
    mask[static_cast<std::size_t>(v)] = 1;
  }
  return mask;
}

VertexSet from_mask(const VertexMask &mask) {
  VertexSet out;
  for (std::size_t v = 0; v < mask.size(); ++v)
    if (mask[v])
      out.push_back(static_cast<Vertex>(v));
  return out;
}

bool is_harmless(const Instance &instance, std::span<const Vertex> s) {
  const auto n = instance.size();
  auto in_s = to_mask(n, s);
  for (std::size_t v = 0; v < n; ++v) {
    int hits = 0;
    for (Vertex w : instance.graph.neighbours(static_cast<Vertex>(v)))
      hits += in_s[static_cast<std::size_t>(w)] ? 1 : 0;
    if (hits >= instance.thresholds[v])
      return false;
  }
  return true;
}

int residual_budget(const Instance &instance, std::span<const Vertex> s, Vertex u) {
  if (!instance.graph.contains(u))
    throw std::invalid_argument("vertex id " + std::to_string(u) + " out of range");
  auto in_s = to_mask(instance.size(), s);
  int hits = 0;
  for (Vertex w : instance.graph.neighbours(u))
    hits += in_s[static_cast<std::size_t>(w)] ? 1 : 0;
  return instance.threshold(u) - hits - 1;
}

Instance cap_thresholds(const Instance &instance) {
  Instance out = instance;
  const Threshold cap = instance.k + 1;
  for (auto &t : out.thresholds)
    t = std::min(t, cap);
  return out;
}

VertexSet compute_core(const Instance &instance) {
  VertexSet core;
  for (std::size_t u = 0; u < instance.size(); ++u) {
    auto nbrs = instance.graph.neighbours(static_cast<Vertex>(u));
    bool fragile_nbr = std::any_of(nbrs.begin(), nbrs.end(),
                                   [&](Vertex v) { return instance.threshold(v) == 1; });
    if (!fragile_nbr)
      core.push_back(static_cast<Vertex>(u));
  }
  return core;
}

const std::vector<BoundedBfs::Reached> &BoundedBfs::run(const Graph &g, Vertex source, int radius,
                                                        std::span<const char> removed,
                                                        std::span<const char> stop) {
  if (++epoch_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    epoch_ = 1;
  }
  order_.clear();
  auto visit = [&](Vertex v, int d) {
    stamp_[static_cast<std::size_t>(v)] = epoch_;
    dist_[static_cast<std::size_t>(v)] = d;
    order_.push_back({v, d});
  };
  visit(source, 0);
  for (std::size_t head = 0; head < order_.size(); ++head) {
    auto [v, d] = order_[head];
    if (d == radius)
      continue;
    if (head > 0 && !stop.empty() && stop[static_cast<std::size_t>(v)])
      continue;
    for (Vertex w : g.neighbours(v)) {
      auto wi = static_cast<std::size_t>(w);
      if (stamp_[wi] == epoch_)
        continue;
      if (!removed.empty() && removed[wi])
        continue;
      visit(w, d + 1);
    }
  }
  return order_;
}

int x_avoiding_distance(const Graph &g, std::span<const Vertex> x, Vertex u, Vertex v, int r) {
  if (!g.contains(u) || !g.contains(v))
    throw std::invalid_argument("vertex id out of range");
  auto in_x = to_mask(g.num_vertices(), x);
  if (in_x[static_cast<std::size_t>(u)])
    throw std::invalid_argument("source vertex lies in the avoided set");
  BoundedBfs bfs(g.num_vertices());
  bfs.run(g, u, r, {}, in_x);
  return bfs.dist(v);
}

int bounded_distance(const Graph &g, Vertex u, Vertex v, int limit, std::span<const char> removed) {
  BoundedBfs bfs(g.num_vertices());
  bfs.run(g, u, limit, removed);
  return bfs.dist(v);
}

} // namespace harmless
