#include "harmless/kernel.hpp"

#include <algorithm>
#include <map>

namespace harmless {

Signature signature(const Instance &instance, std::span<const Vertex> roots, Vertex v) {
  const auto &g = instance.graph;
  auto in_r = to_mask(g.num_vertices(), roots);
  if (!g.contains(v))
    throw std::invalid_argument("vertex id out of range");
  if (in_r[static_cast<std::size_t>(v)])
    throw std::invalid_argument("signature vertex lies in the root set");
  Signature sig;
  for (Vertex u : g.neighbours(v)) {
    if (in_r[static_cast<std::size_t>(u)])
      continue;
    VertexSet attach;
    for (Vertex w : g.neighbours(u))
      if (in_r[static_cast<std::size_t>(w)])
        attach.push_back(w);
    sig.emplace(instance.threshold(u), std::move(attach));
  }
  return sig;
}

namespace {

/// Stages whose outcome does not depend on the requested centre count.
bool target_independent(const std::string &stage) {
  return stage == "empty-target-set" || stage == "remainder";
}

} // namespace

CoreShrinkOutcome shrink_core_step(const AnnotatedInstance &ann, Threshold p, const KernelOptions &options) {
  const auto &inst = ann.instance;
  const auto &g = inst.graph;
  if (inst.max_threshold() > p)
    throw std::invalid_argument("instance has a threshold above p");

  // (a) A vertex with a fragile neighbour is in no solution.
  for (Vertex x : ann.core)
    for (Vertex u : g.neighbours(x))
      if (inst.threshold(u) == 1)
        return outcome::RemoveVertex{x, "fragile-neighbour", std::nullopt, {}};

  // (b) A 1-scattered subset of K has disjoint neighbourhoods and no fragile
  // neighbours, hence is harmless.
  auto dom = domination_scattered(g, ann.core, 1);
  if (dom.scattered.size() >= static_cast<std::size_t>(inst.k) && is_harmless(inst, dom.scattered))
    return outcome::YesCertificate{dom.scattered};

  if (ann.core.empty())
    return outcome::Stuck{"empty core"};

  // (c) Waterlily of depth 1 and radius 2 on K; a large signature class allows an exchange.
  WaterlilyParams params;
  params.radius = 2;
  params.depth = 1;
  params.c_close = options.c_close;
  params.s_max = options.s_max;
  std::size_t target = ann.core.size();
  std::optional<Waterlily> lily;
  std::string last_stage;
  while (target >= 1) {
    params.target = target;
    auto built = build_waterlily(g, ann.core, params);
    if (built) {
      lily = std::move(built.lily);
      break;
    }
    const auto &rep = built.report;
    last_stage = rep.failed_stage;
    if (target_independent(rep.failed_stage))
      break;
    std::size_t next = 0;
    for (auto size : rep.scatter_rounds)
      if (size < target)
        next = std::max(next, size);
    if (rep.failed_stage == "target" && rep.centres < target)
      next = std::max(next, rep.centres);
    target = next;
  }
  if (!lily)
    return outcome::Stuck{"no waterlily (" + last_stage + ")"};

  std::map<Signature, VertexSet> classes;
  for (Vertex c : lily->centres)
    classes[signature(inst, lily->roots, c)].push_back(c);
  const VertexSet *largest = nullptr;
  for (const auto &[sig, members] : classes)
    if (!largest || members.size() > largest->size() ||
        (members.size() == largest->size() && members.front() < largest->front()))
      largest = &members;

  const auto bound = static_cast<std::size_t>(p) * lily->roots.size();
  if (largest->size() > bound)
    return outcome::RemoveVertex{largest->front(), "waterlily-exchange", lily, *largest};
  return outcome::Stuck{"largest signature class has " + std::to_string(largest->size()) +
                        " centres, needs more than " + std::to_string(bound)};
}

void remove_vertex(AnnotatedInstance &ann, Vertex v) {
  const auto n = ann.instance.size();
  std::vector<Vertex> keep;
  keep.reserve(n - 1);
  for (std::size_t u = 0; u < n; ++u)
    if (static_cast<Vertex>(u) != v)
      keep.push_back(static_cast<Vertex>(u));

  Instance next;
  next.graph = ann.instance.graph.induced(keep);
  next.k = ann.instance.k;
  std::vector<Vertex> labels;
  for (Vertex u : keep) {
    next.thresholds.push_back(ann.instance.threshold(u));
    labels.push_back(ann.labels[static_cast<std::size_t>(u)]);
  }
  VertexSet core;
  for (Vertex u : ann.core)
    if (u != v)
      core.push_back(u < v ? u : u - 1);
  ann.instance = std::move(next);
  ann.labels = std::move(labels);
  ann.core = std::move(core);
}

namespace {

std::optional<Vertex> find_removable_twin(const AnnotatedInstance &ann) {
  const auto &inst = ann.instance;
  auto in_k = to_mask(inst.size(), ann.core);
  std::map<VertexSet, std::vector<Vertex>> groups;
  for (std::size_t u = 0; u < inst.size(); ++u) {
    if (in_k[u])
      continue;
    VertexSet key;
    for (Vertex w : inst.graph.neighbours(static_cast<Vertex>(u)))
      if (in_k[static_cast<std::size_t>(w)])
        key.push_back(w);
    groups[std::move(key)].push_back(static_cast<Vertex>(u));
  }
  // Deterministic: the group holding the lowest id, then its largest (threshold, id).
  const std::vector<Vertex> *chosen = nullptr;
  for (const auto &[key, members] : groups)
    if (members.size() >= 2 && (!chosen || members.front() < chosen->front()))
      chosen = &members;
  if (!chosen)
    return std::nullopt;
  return *std::max_element(chosen->begin(), chosen->end(), [&](Vertex a, Vertex b) {
    return std::pair(inst.threshold(a), a) < std::pair(inst.threshold(b), b);
  });
}

} // namespace

std::optional<Vertex> shrink_graph_step(AnnotatedInstance &ann) {
  auto v = find_removable_twin(ann);
  if (v)
    remove_vertex(ann, *v);
  return v;
}

AnnotatedInstance trivial_yes_instance(int k) {
  Instance inst;
  inst.graph = Graph(static_cast<std::size_t>(k));
  inst.thresholds.assign(static_cast<std::size_t>(k), 1);
  inst.k = k;
  VertexSet all(static_cast<std::size_t>(k));
  for (int v = 0; v < k; ++v)
    all[static_cast<std::size_t>(v)] = v;
  auto ann = AnnotatedInstance::with_core(std::move(inst), std::move(all));
  std::fill(ann.labels.begin(), ann.labels.end(), -1);
  return ann;
}

std::string KernelResult::decision() const {
  if (report.early_yes)
    return "yes";
  if (kernel.core.size() < static_cast<std::size_t>(kernel.instance.k))
    return "no";
  return "unknown";
}

KernelResult kernelize(const Instance &instance, const KernelOptions &options, const KernelHook &hook) {
  instance.validate();
  Instance working;
  Threshold p;
  if (options.p) {
    p = *options.p;
    if (instance.max_threshold() > p)
      throw std::invalid_argument("instance has a threshold above the given p");
    working = instance;
  } else {
    working = cap_thresholds(instance);
    p = instance.k + 1;
  }

  KernelResult result;
  auto &rep = result.report;
  rep.p = p;
  auto core = compute_core(working);
  AnnotatedInstance ann = AnnotatedInstance::with_core(std::move(working), std::move(core));
  rep.graph_before = ann.instance.size();
  rep.core_before = ann.core.size();

  auto record = [&](const std::string &rule, Vertex label, const AnnotatedInstance *before) {
    KernelStep step{rule, label, ann.instance.size(), ann.core.size()};
    rep.steps.push_back(step);
    if (hook && before)
      hook(*before, ann, step);
  };

  for (;;) {
    auto out = shrink_core_step(ann, p, options);
    if (auto *yes = std::get_if<outcome::YesCertificate>(&out)) {
      rep.early_yes = true;
      for (Vertex v : yes->harmless_set)
        rep.certificate.push_back(ann.labels[static_cast<std::size_t>(v)]);
      rep.certificate = normalized(std::move(rep.certificate));
      ann = trivial_yes_instance(ann.instance.k);
      break;
    }
    if (auto *rm = std::get_if<outcome::RemoveVertex>(&out)) {
      std::optional<AnnotatedInstance> before;
      if (hook)
        before = ann;
      std::erase(ann.core, rm->vertex);
      record(rm->rule, ann.labels[static_cast<std::size_t>(rm->vertex)], before ? &*before : nullptr);
      continue;
    }
    rep.stuck_reason = std::get<outcome::Stuck>(out).reason;
    break;
  }

  if (!rep.early_yes) {
    while (auto v = find_removable_twin(ann)) {
      std::optional<AnnotatedInstance> before;
      if (hook)
        before = ann;
      Vertex label = ann.labels[static_cast<std::size_t>(*v)];
      remove_vertex(ann, *v);
      record("outside-twin", label, before ? &*before : nullptr);
    }
  }

  rep.graph_after = ann.instance.size();
  rep.core_after = ann.core.size();
  result.kernel = std::move(ann);
  return result;
}

Instance to_plain_kernel(const AnnotatedInstance &ann) {
  Instance out = ann.instance;
  auto in_k = to_mask(out.size(), ann.core);
  Vertex a = out.graph.add_vertex();
  Vertex b = out.graph.add_vertex();
  out.thresholds.push_back(1);
  out.thresholds.push_back(1);
  out.graph.add_edge(a, b);
  for (std::size_t u = 0; u < in_k.size(); ++u)
    if (!in_k[u])
      out.graph.add_edge(a, static_cast<Vertex>(u));
  return out;
}

} // namespace harmless
