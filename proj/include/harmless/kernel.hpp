#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <variant>

#include "harmless/graph.hpp"
#include "harmless/sparsity.hpp"

namespace harmless {

/// σ(v) = { (t(u), N(u) ∩ R) : u ∈ N_{G-R}(v) }
using Signature = std::set<std::pair<Threshold, VertexSet>>;

/// Throws std::invalid_argument when v ∈ R.
Signature signature(const Instance &instance, std::span<const Vertex> roots, Vertex v);

namespace outcome {

/// A harmless set of size >= k inside the core.
struct YesCertificate {
  VertexSet harmless_set;
};

/// `vertex` can leave the core. `rule` says which trigger held.
struct RemoveVertex {
  Vertex vertex;
  std::string rule;  // "fragile-neighbour" or "waterlily-exchange"
  std::optional<Waterlily> lily;
  VertexSet exchange_class;
};

struct Stuck {
  std::string reason;
};

} // namespace outcome

using CoreShrinkOutcome = std::variant<outcome::YesCertificate, outcome::RemoveVertex, outcome::Stuck>;

struct KernelOptions {
  /// Threshold bound; when absent the instance is capped at k+1 first.
  std::optional<Threshold> p;
  std::size_t c_close = 4;
  std::size_t s_max = 4;
};

/// One application of the core rule (case a or c). Case b returns a certificate.
CoreShrinkOutcome shrink_core_step(const AnnotatedInstance &ann, Threshold p,
                                   const KernelOptions &options = {});

/// Removes one of two outside vertices with equal neighbourhoods in K: the one with the
/// larger threshold, the higher id on ties. Returns its id before removal.
std::optional<Vertex> shrink_graph_step(AnnotatedInstance &ann);

/// Deletes vertex v, renumbering the rest while keeping labels.
void remove_vertex(AnnotatedInstance &ann, Vertex v);

struct KernelStep {
  std::string rule;
  Vertex label;  // vertex id in the input instance
  std::size_t graph_size;
  std::size_t core_size;
};

struct KernelReport {
  std::vector<KernelStep> steps;
  std::size_t graph_before = 0, graph_after = 0;
  std::size_t core_before = 0, core_after = 0;
  Threshold p = 0;
  bool early_yes = false;
  std::string stuck_reason;
  VertexSet certificate;  // input-instance ids, when early_yes
};

struct KernelResult {
  AnnotatedInstance kernel;
  KernelReport report;

  /// "yes" for an early certificate, "no" when |K| < k, otherwise "unknown".
  std::string decision() const;
};

/// Called after every rule application with the instance before and after it.
using KernelHook = std::function<void(const AnnotatedInstance &, const AnnotatedInstance &, const KernelStep &)>;

/// Core rules to a fixpoint, then twin removal to exhaustion. On a certificate the
/// kernel is the constant YES-instance: k isolated vertices of threshold one.
KernelResult kernelize(const Instance &instance, const KernelOptions &options = {},
                       const KernelHook &hook = {});

/// Unannotated instance equivalent to `ann`: adds fragile vertices a, b with a adjacent
/// to b and to every vertex outside K.
Instance to_plain_kernel(const AnnotatedInstance &ann);

/// Constant-size YES-instance for target k.
AnnotatedInstance trivial_yes_instance(int k);

} // namespace harmless
