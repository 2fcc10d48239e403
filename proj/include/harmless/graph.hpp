#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace harmless {

using Vertex = std::int32_t;
using Threshold = std::int32_t;
using Edge = std::pair<Vertex, Vertex>;

/// Sorted, duplicate-free list of vertex ids.
using VertexSet = std::vector<Vertex>;

/// Byte mask indexed by vertex id; non-zero means "member".
using VertexMask = std::vector<char>;

/// Distance sentinel for "no path within the radius".
inline constexpr int kInfinity = std::numeric_limits<int>::max();

/// Raised when an input file does not conform to its format.
class ParseError : public std::runtime_error {
public:
  ParseError(int line, const std::string &what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  int line() const noexcept { return line_; }

private:
  int line_;
};

/// Raised when an exact solver refuses an instance above its configured cap.
class ResourceLimit : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Simple undirected graph on dense ids 0..n-1. Adjacency lists are kept sorted.
class Graph {
public:
  Graph() = default;
  explicit Graph(std::size_t n) : adj_(n) {}
  Graph(std::size_t n, std::span<const Edge> edges);

  Vertex add_vertex();

  /// Throws std::invalid_argument on self-loops, duplicates or bad ids.
  void add_edge(Vertex u, Vertex v);

  std::size_t num_vertices() const noexcept { return adj_.size(); }
  std::size_t num_edges() const noexcept { return num_edges_; }

  std::span<const Vertex> neighbours(Vertex v) const { return adj_[static_cast<std::size_t>(v)]; }
  std::size_t degree(Vertex v) const { return adj_[static_cast<std::size_t>(v)].size(); }
  std::size_t max_degree() const;
  bool adjacent(Vertex u, Vertex v) const;
  bool contains(Vertex v) const noexcept {
    return v >= 0 && static_cast<std::size_t>(v) < adj_.size();
  }

  /// Edges as (u, v) with u < v, in lexicographic order.
  std::vector<Edge> edges() const;

  /// Subgraph induced by `keep`; vertex keep[i] becomes vertex i.
  Graph induced(std::span<const Vertex> keep) const;

  friend bool operator==(const Graph &, const Graph &) = default;

private:
  std::vector<std::vector<Vertex>> adj_;
  std::size_t num_edges_ = 0;
};

/// A Harmless Set instance: graph, per-vertex thresholds (all >= 1) and target size k.
struct Instance {
  Graph graph;
  std::vector<Threshold> thresholds;
  int k = 0;

  std::size_t size() const noexcept { return graph.num_vertices(); }
  Threshold threshold(Vertex v) const { return thresholds[static_cast<std::size_t>(v)]; }
  Threshold max_threshold() const;

  /// Throws std::invalid_argument if thresholds do not cover the graph or some t(v) < 1.
  void validate() const;

  friend bool operator==(const Instance &, const Instance &) = default;
};

/// Instance together with a solution core K: solutions must lie inside K.
/// `labels[v]` is the id v had in the instance this one was derived from.
struct AnnotatedInstance {
  Instance instance;
  VertexSet core;
  std::vector<Vertex> labels;

  static AnnotatedInstance with_core(Instance inst, VertexSet core);
  void validate() const;
};

struct SolutionSet {
  VertexSet members;
  bool verified = false;
};

VertexSet normalized(VertexSet s);
VertexMask to_mask(std::size_t n, std::span<const Vertex> s);
VertexSet from_mask(const VertexMask &mask);

/// True iff every vertex v (members of S included) has fewer than t(v) neighbours in S.
bool is_harmless(const Instance &instance, std::span<const Vertex> s);

/// t(u) - |N(u) ∩ S| - 1; negative when u's constraint is already violated.
int residual_budget(const Instance &instance, std::span<const Vertex> s, Vertex u);

/// Replaces every threshold above k+1 by k+1. Preserves the size-k decision.
Instance cap_thresholds(const Instance &instance);

/// Vertices without a neighbour of threshold one. Every harmless set lies inside it.
VertexSet compute_core(const Instance &instance);

/// Length of a shortest u-v path whose internal vertices avoid X, or kInfinity if
/// that length exceeds r. Throws std::invalid_argument when u is in X.
int x_avoiding_distance(const Graph &g, std::span<const Vertex> x, Vertex u, Vertex v, int r);

/// Breadth-first search bounded by a radius, reusable across calls.
///
/// Vertices flagged in `removed` are never entered. Vertices flagged in `stop` are
/// reached but not expanded, which realises X-avoiding paths. Empty spans disable
/// the corresponding filter.
class BoundedBfs {
public:
  struct Reached {
    Vertex vertex;
    int dist;
  };

  explicit BoundedBfs(std::size_t n) : stamp_(n, 0), dist_(n, kInfinity) {}

  const std::vector<Reached> &run(const Graph &g, Vertex source, int radius,
                                  std::span<const char> removed = {},
                                  std::span<const char> stop = {});

  /// Distance of v in the last run, kInfinity if not reached.
  int dist(Vertex v) const {
    auto i = static_cast<std::size_t>(v);
    return stamp_[i] == epoch_ ? dist_[i] : kInfinity;
  }

private:
  std::vector<std::uint32_t> stamp_;
  std::vector<int> dist_;
  std::uint32_t epoch_ = 0;
  std::vector<Reached> order_;
};

/// All-pairs-free helper: distance between u and v in G minus `removed`, capped at limit.
int bounded_distance(const Graph &g, Vertex u, Vertex v, int limit, std::span<const char> removed = {});

} // namespace harmless
