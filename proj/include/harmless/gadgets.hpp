#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "harmless/graph.hpp"

namespace harmless {

/// Edge between vertex `index_a` of colour `colour_a` and vertex `index_b` of
/// colour `colour_b`; colours and indices are 0-based, colour_a < colour_b.
struct MccEdge {
  int colour_a = 0, index_a = 0;
  int colour_b = 0, index_b = 0;

  friend auto operator<=>(const MccEdge &, const MccEdge &) = default;
};

/// Multicoloured Clique input: k colour classes of n vertices each.
struct MccInstance {
  int k = 0;
  int n = 0;
  std::vector<MccEdge> edges;

  /// Orients and sorts edges. Throws std::invalid_argument on intra-class edges,
  /// out-of-range ids or duplicates.
  void normalize();

  std::size_t pair_edges(int i, int j) const;
};

/// Builds an instance from explicit class sizes. Throws std::invalid_argument
/// unless every class has the same size.
MccInstance mcc_from_classes(const std::vector<int> &class_sizes, std::vector<MccEdge> edges);

// `p mcc <k> <n>` header, `e <i> <s> <j> <t>` edges, 1-indexed; `c` comments.
MccInstance load_mcc(std::istream &in);
void save_mcc(const MccInstance &mcc, std::ostream &out);
MccInstance load_mcc_file(const std::string &path);

/// Some multicoloured clique as one index per colour, by exhaustive search.
std::optional<std::vector<int>> find_multicoloured_clique(const MccInstance &mcc);

enum class GadgetKind { Selection, Port, Test, Apex, Global };
enum class Role { Light, Dark, Xor, PortPlus, PortMinus, Apex, ForbiddenHub, ForbiddenPartner };

const char *to_string(GadgetKind kind);
const char *to_string(Role role);

/// Where a vertex of H comes from. `colour` is the selection gadget (or port side),
/// `pair` the colour pair (i, j), `edge` the source edge indices (x, y) of a test
/// gadget and `index` the position inside its gadget; -1 where not applicable.
struct VertexRole {
  GadgetKind gadget;
  Role role;
  bool forbidden = false;
  int colour = -1;
  int pair_i = -1, pair_j = -1;
  int edge_x = -1, edge_y = -1;
  int index = -1;

  /// Forbidden by a gadget, or one of a_F, b_F.
  bool never_selectable() const noexcept {
    return forbidden || role == Role::ForbiddenHub || role == Role::ForbiddenPartner;
  }
};

struct SelectionGadget {
  std::vector<Vertex> lights, darks, xors;
};

struct TestGadget {
  int x = 0, y = 0;  // 0-based source indices in colours i and j
  std::vector<Vertex> lights, xors;
  Vertex dark = -1;
};

struct PairGadgets {
  int i = 0, j = 0;
  Vertex plus_i = -1, minus_i = -1, plus_j = -1, minus_j = -1;
  std::vector<TestGadget> tests;
  Vertex apex = -1;
};

struct ReductionOutput {
  Instance h;  // h.k is the target size
  std::vector<VertexRole> roles;
  VertexSet modulator;
  int target = 0;
  std::vector<SelectionGadget> selection;
  std::vector<PairGadgets> pairs;  // lexicographic (i, j), i < j
  Vertex a_f = -1, b_f = -1;
  /// Colour pairs without edges; the instance is then a NO-instance.
  std::vector<std::pair<int, int>> empty_pairs;
  /// n is the class size used by the gadgets: 2 when the source has n = 1 and an empty pair.
  int k = 0, n = 0, m = 0;

  const PairGadgets &pair(int i, int j) const;
};

/// C(k,2)(n-1) + kn + m. Throws std::invalid_argument for k < 2.
long long reduction_target_size(long long k, long long n, long long m);

ReductionOutput build_reduction(const MccInstance &mcc);

/// Harmless set of the target size from a multicoloured clique given as one 0-based
/// index per colour. Throws std::invalid_argument if the indices do not form a clique.
VertexSet construct_clique_solution(const ReductionOutput &out, std::span<const int> clique);

/// Port vertices, apexes and a_F.
VertexSet modulator_set(const ReductionOutput &out);

/// Every component is a tree with a centre c such that all vertices lie within
/// distance 2 of c, distance-2 vertices are leaves and distance-1 vertices have degree <= 2.
bool is_2_spider_forest(const Graph &g);

/// Removes the given vertices.
Graph delete_vertices(const Graph &g, std::span<const Vertex> gone);

struct VerifyReport {
  int k = 0, n = 0, m = 0;
  bool clique_exists = false;
  std::vector<int> clique;
  int target = 0;
  int optimum = 0;
  VertexSet witness;
  bool forbidden_in_witness = false;
  bool equivalent = false;
  std::vector<std::pair<int, int>> empty_pairs;
};

/// Exhaustive clique search on the source against the exact optimum of H.
/// Throws ResourceLimit when H has more than `cap` selectable vertices.
VerifyReport verify_reduction(const MccInstance &mcc, std::size_t cap = 64);

} // namespace harmless
