#pragma once

#include <optional>
#include <string>

#include "harmless/graph.hpp"

namespace harmless {

/// Shortest X-avoiding distance from a vertex u ∉ X to every member of X,
/// kInfinity where no such path of length at most r exists.
struct ProjectionProfile {
  VertexSet targets;
  std::vector<int> dist;

  /// Members of X at finite distance, i.e. the r-projection.
  VertexSet support() const;

  friend bool operator==(const ProjectionProfile &, const ProjectionProfile &) = default;
};

VertexSet r_projection(const Graph &g, std::span<const Vertex> x, Vertex u, int r);
ProjectionProfile projection_profile(const Graph &g, std::span<const Vertex> x, Vertex u, int r);

/// Number of distinct r-projection profiles realised by vertices outside X.
std::size_t count_profiles(const Graph &g, std::span<const Vertex> x, int r);

/// Grows X until every outside vertex projects onto at most `c_close` members.
/// Repeatedly adds the outside vertex with the largest projection (lowest id on ties).
VertexSet projection_closure(const Graph &g, std::span<const Vertex> x, int r, std::size_t c_close);

struct DominationResult {
  int radius = 0;
  VertexSet dominators;  // D: X ⊆ N^r[D]
  VertexSet scattered;   // I ⊆ D ∩ X, pairwise distance >= 2r+1
};

/// Greedy r-dominating set of X together with an r-scattered subset of X inside it.
/// The scattered set is built first and seeds the dominating set.
DominationResult domination_scattered(const Graph &g, std::span<const Vertex> x, int r);

struct ScatteredResult {
  bool success = false;
  VertexSet hubs;       // S
  VertexSet scattered;  // B ⊆ A - S, r-scattered in G - S
  std::vector<std::size_t> rounds;  // |B| after each hub removal, starting with S = ∅
};

/// Looks for at most `s_max` hub vertices whose removal leaves `m` members of A
/// pairwise r-scattered. On failure the largest scattered set seen is returned.
ScatteredResult uqw_scattered(const Graph &g, std::span<const Vertex> a, int r, std::size_t m,
                              std::size_t s_max);

/// Roots R and centres C. C is r-scattered in G - R, every pad N^r_{G-R}[x] lies
/// within distance `depth` of R in G, and all centres share one depth-projection
/// profile onto R.
struct Waterlily {
  VertexSet roots;
  VertexSet centres;
  int radius = 0;
  int depth = 0;
};

struct WaterlilyParams {
  int radius = 2;
  int depth = 1;
  std::size_t target = 1;
  std::size_t c_close = 4;
  std::size_t s_max = 4;
};

/// Sizes reached by each construction stage, and the stage that stopped it.
struct WaterlilyReport {
  std::size_t dominators = 0;
  std::size_t closure = 0;
  std::size_t remainder = 0;
  std::size_t profile_class = 0;
  std::size_t hubs = 0;
  std::size_t scattered = 0;
  std::size_t dominated = 0;
  std::size_t roots = 0;
  std::size_t centres = 0;
  std::vector<std::size_t> scatter_rounds;
  std::string failed_stage;
};

struct WaterlilyResult {
  std::optional<Waterlily> lily;
  WaterlilyReport report;

  explicit operator bool() const noexcept { return lily.has_value(); }
};

struct WaterlilyCheck {
  bool disjoint = false;
  bool scattered = false;
  bool dominated = false;
  bool uniform = false;

  bool ok() const noexcept { return disjoint && scattered && dominated && uniform; }
};

/// Builds a uniform waterlily with centres in A and |C| >= target, or reports
/// the stage that fell short. The result is checked before it is returned.
/// Throws std::invalid_argument if depth > radius.
WaterlilyResult build_waterlily(const Graph &g, std::span<const Vertex> a, const WaterlilyParams &params);

WaterlilyCheck check_waterlily(const Graph &g, const Waterlily &lily);

/// Pairwise distance in G - removed is at least 2r+1.
bool is_scattered(const Graph &g, std::span<const Vertex> x, int r, std::span<const char> removed = {});

/// Vertices sorted by descending degree, ties by ascending id.
std::vector<Vertex> greedy_order(const Graph &g, std::span<const Vertex> vertices);

} // namespace harmless
