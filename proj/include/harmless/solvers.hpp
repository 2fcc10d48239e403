#pragma once

#include <cstdint>
#include <optional>

#include "harmless/graph.hpp"

namespace harmless {

struct SolveResult {
  int optimum = 0;
  VertexSet witness;
  std::uint64_t nodes = 0;  // search nodes, 0 where not applicable
};

struct BruteForceOptions {
  /// Largest number of selectable vertices accepted.
  std::size_t cap = 48;
  /// Restrict solutions to this set (a solution core), if given.
  std::optional<VertexSet> allowed;
  /// Stop as soon as a harmless set of this size is found.
  std::optional<int> stop_at;
};

/// Maximum harmless set by branch and bound over the core. Throws ResourceLimit
/// when the number of selectable vertices exceeds the cap.
SolveResult brute_force_max(const Instance &instance, const BruteForceOptions &options = {});
SolveResult brute_force_max(const AnnotatedInstance &ann, std::size_t cap = 48);

/// Both endpoints of a greedily chosen maximal matching: a 2-approximate vertex cover.
VertexSet greedy_vertex_cover(const Graph &g);

/// Vertices outside the cover sharing one neighbourhood A inside it.
struct NeighbourhoodClass {
  VertexSet roots;    // A, as indices into IlpModel::cover
  VertexSet members;  // R_A, ascending ids
};

/// max Σ x_A  s.t.  0 <= x_A <= |R_A|,  Σ_{A ∋ u} x_A <= capacity(u)  for u in the cover.
struct IlpModel {
  VertexSet cover;
  std::vector<int> capacity;  // t(u) - |N(u) ∩ S| - 1 for each cover vertex
  std::vector<NeighbourhoodClass> classes;

  bool feasible() const;
};

struct IlpSolution {
  bool feasible = false;
  int optimum = 0;
  std::vector<int> counts;  // x_A per class
};

/// Model for a guess S ⊆ X of the solution's intersection with the cover X.
/// Returns nullopt when S is not harmless on its own. Throws std::invalid_argument
/// when S is not contained in X.
std::optional<IlpModel> build_ilp(const Instance &instance, std::span<const Vertex> cover,
                                  std::span<const Vertex> guess);

/// Exact branch and bound over the class counts.
IlpSolution ilp_solve(const IlpModel &model);

struct VcOptions {
  std::size_t cover_cap = 22;
  unsigned workers = 1;
};

/// Exact optimum by guessing the cover intersection and solving the packing program
/// for the remaining independent set. Throws ResourceLimit above the cover cap.
SolveResult vc_solve(const Instance &instance, const VcOptions &options = {});

} // namespace harmless
