#include "harmless/sparsity.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace harmless {

namespace {

using SparseProfile = std::vector<std::pair<Vertex, int>>;

/// Finite entries of the X-avoiding profile of u, sorted by target.
SparseProfile sparse_profile(BoundedBfs &bfs, const Graph &g, const VertexMask &in_x, Vertex u, int r) {
  SparseProfile out;
  for (auto [v, d] : bfs.run(g, u, r, {}, in_x))
    if (in_x[static_cast<std::size_t>(v)])
      out.emplace_back(v, d);
  std::sort(out.begin(), out.end());
  return out;
}

void check_outside(const VertexMask &in_x, Vertex u) {
  if (in_x[static_cast<std::size_t>(u)])
    throw std::invalid_argument("vertex " + std::to_string(u) + " lies in the target set");
}

std::vector<Vertex> greedy_scatter(const Graph &g, std::span<const Vertex> order, int r,
                                   std::span<const char> removed, BoundedBfs &bfs) {
  VertexMask blocked(g.num_vertices(), 0);
  std::vector<Vertex> picked;
  for (Vertex v : order) {
    if (blocked[static_cast<std::size_t>(v)])
      continue;
    picked.push_back(v);
    for (auto [w, d] : bfs.run(g, v, 2 * r, removed))
      blocked[static_cast<std::size_t>(w)] = 1;
  }
  return picked;
}

/// Multi-source distance to `sources`, capped at `limit`.
std::vector<int> distance_to_set(const Graph &g, std::span<const Vertex> sources, int limit) {
  std::vector<int> dist(g.num_vertices(), kInfinity);
  std::vector<Vertex> queue;
  for (Vertex s : sources) {
    dist[static_cast<std::size_t>(s)] = 0;
    queue.push_back(s);
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Vertex v = queue[head];
    int d = dist[static_cast<std::size_t>(v)];
    if (d == limit)
      continue;
    for (Vertex w : g.neighbours(v))
      if (dist[static_cast<std::size_t>(w)] == kInfinity) {
        dist[static_cast<std::size_t>(w)] = d + 1;
        queue.push_back(w);
      }
  }
  return dist;
}

} // namespace

VertexSet ProjectionProfile::support() const {
  VertexSet out;
  for (std::size_t i = 0; i < targets.size(); ++i)
    if (dist[i] != kInfinity)
      out.push_back(targets[i]);
  return out;
}

std::vector<Vertex> greedy_order(const Graph &g, std::span<const Vertex> vertices) {
  std::vector<Vertex> order(vertices.begin(), vertices.end());
  std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
    auto da = g.degree(a), db = g.degree(b);
    return da != db ? da > db : a < b;
  });
  return order;
}

VertexSet r_projection(const Graph &g, std::span<const Vertex> x, Vertex u, int r) {
  return projection_profile(g, x, u, r).support();
}

ProjectionProfile projection_profile(const Graph &g, std::span<const Vertex> x, Vertex u, int r) {
  auto in_x = to_mask(g.num_vertices(), x);
  if (!g.contains(u))
    throw std::invalid_argument("vertex id out of range");
  check_outside(in_x, u);
  BoundedBfs bfs(g.num_vertices());
  bfs.run(g, u, r, {}, in_x);
  ProjectionProfile p;
  p.targets = normalized(VertexSet(x.begin(), x.end()));
  p.dist.reserve(p.targets.size());
  for (Vertex t : p.targets)
    p.dist.push_back(bfs.dist(t));
  return p;
}

std::size_t count_profiles(const Graph &g, std::span<const Vertex> x, int r) {
  auto in_x = to_mask(g.num_vertices(), x);
  BoundedBfs bfs(g.num_vertices());
  std::set<SparseProfile> seen;
  for (std::size_t u = 0; u < g.num_vertices(); ++u)
    if (!in_x[u])
      seen.insert(sparse_profile(bfs, g, in_x, static_cast<Vertex>(u), r));
  return seen.size();
}

VertexSet projection_closure(const Graph &g, std::span<const Vertex> x, int r, std::size_t c_close) {
  if (c_close < 1)
    throw std::invalid_argument("closure constant must be at least 1");
  auto in_x = to_mask(g.num_vertices(), x);
  BoundedBfs bfs(g.num_vertices());
  for (;;) {
    Vertex best = -1;
    std::size_t best_size = c_close;
    for (std::size_t u = 0; u < g.num_vertices(); ++u) {
      if (in_x[u])
        continue;
      std::size_t size = 0;
      for (auto [v, d] : bfs.run(g, static_cast<Vertex>(u), r, {}, in_x))
        size += in_x[static_cast<std::size_t>(v)] ? 1 : 0;
      if (size > best_size) {
        best = static_cast<Vertex>(u);
        best_size = size;
      }
    }
    if (best < 0)
      break;
    in_x[static_cast<std::size_t>(best)] = 1;
  }
  return from_mask(in_x);
}

DominationResult domination_scattered(const Graph &g, std::span<const Vertex> x, int r) {
  auto targets = normalized(VertexSet(x.begin(), x.end()));
  auto in_x = to_mask(g.num_vertices(), targets);
  auto order = greedy_order(g, targets);
  BoundedBfs bfs(g.num_vertices());

  DominationResult res;
  res.radius = r;
  res.scattered = normalized(greedy_scatter(g, order, r, {}, bfs));

  VertexMask covered(g.num_vertices(), 0);
  VertexMask in_d(g.num_vertices(), 0);
  auto take = [&](Vertex w) {
    in_d[static_cast<std::size_t>(w)] = 1;
    for (auto [v, d] : bfs.run(g, w, r))
      covered[static_cast<std::size_t>(v)] = 1;
  };
  for (Vertex w : res.scattered)
    take(w);

  BoundedBfs inner(g.num_vertices());
  for (Vertex t : order) {
    if (covered[static_cast<std::size_t>(t)])
      continue;
    // Among vertices that would cover t, take the one covering the most uncovered targets.
    std::vector<Vertex> ball;
    for (auto [w, d] : bfs.run(g, t, r))
      ball.push_back(w);
    std::sort(ball.begin(), ball.end());
    Vertex best = t;
    std::size_t best_gain = 0;
    for (Vertex w : ball) {
      std::size_t gain = 0;
      for (auto [v, d] : inner.run(g, w, r))
        gain += (in_x[static_cast<std::size_t>(v)] && !covered[static_cast<std::size_t>(v)]) ? 1 : 0;
      if (gain > best_gain) {
        best = w;
        best_gain = gain;
      }
    }
    take(best);
  }
  res.dominators = from_mask(in_d);
  return res;
}

ScatteredResult uqw_scattered(const Graph &g, std::span<const Vertex> a, int r, std::size_t m,
                              std::size_t s_max) {
  auto candidates = normalized(VertexSet(a.begin(), a.end()));
  VertexMask removed(g.num_vertices(), 0);
  BoundedBfs bfs(g.num_vertices());

  ScatteredResult best;
  VertexSet hubs;
  for (;;) {
    std::vector<Vertex> remaining;
    for (Vertex v : candidates)
      if (!removed[static_cast<std::size_t>(v)])
        remaining.push_back(v);
    auto order = greedy_order(g, remaining);
    auto picked = normalized(greedy_scatter(g, order, r, removed, bfs));
    best.rounds.push_back(picked.size());
    if (picked.size() > best.scattered.size() || best.scattered.empty()) {
      best.scattered = picked;
      best.hubs = hubs;
    }
    if (picked.size() >= m && m <= candidates.size()) {
      best.success = true;
      best.scattered = std::move(picked);
      best.hubs = hubs;
      return best;
    }
    if (hubs.size() >= s_max)
      return best;

    // The hub is the vertex whose r-ball in G - S holds the most other candidates:
    // every pair of those candidates is joined through it by a path of length <= 2r.
    std::vector<std::size_t> load(g.num_vertices(), 0);
    for (Vertex c : remaining)
      for (auto [w, d] : bfs.run(g, c, r, removed))
        if (w != c)
          ++load[static_cast<std::size_t>(w)];
    Vertex hub = -1;
    std::size_t hub_load = 1;
    for (std::size_t w = 0; w < g.num_vertices(); ++w) {
      if (!removed[w] && load[w] > hub_load) {
        hub = static_cast<Vertex>(w);
        hub_load = load[w];
      }
    }
    if (hub < 0)
      return best;
    removed[static_cast<std::size_t>(hub)] = 1;
    hubs.push_back(hub);
    hubs = normalized(std::move(hubs));
  }
}

bool is_scattered(const Graph &g, std::span<const Vertex> x, int r, std::span<const char> removed) {
  auto in_x = to_mask(g.num_vertices(), x);
  BoundedBfs bfs(g.num_vertices());
  for (Vertex v : x) {
    if (!removed.empty() && removed[static_cast<std::size_t>(v)])
      return false;
    for (auto [w, d] : bfs.run(g, v, 2 * r, removed))
      if (w != v && in_x[static_cast<std::size_t>(w)])
        return false;
  }
  return true;
}

WaterlilyCheck check_waterlily(const Graph &g, const Waterlily &lily) {
  WaterlilyCheck check;
  auto in_r = to_mask(g.num_vertices(), lily.roots);
  check.disjoint = std::none_of(lily.centres.begin(), lily.centres.end(),
                                [&](Vertex c) { return in_r[static_cast<std::size_t>(c)]; });
  if (!check.disjoint)
    return check;
  check.scattered = is_scattered(g, lily.centres, lily.radius, in_r);

  auto to_roots = distance_to_set(g, lily.roots, lily.depth);
  BoundedBfs bfs(g.num_vertices());
  check.dominated = true;
  for (Vertex c : lily.centres)
    for (auto [w, d] : bfs.run(g, c, lily.radius, in_r))
      if (to_roots[static_cast<std::size_t>(w)] > lily.depth)
        check.dominated = false;

  check.uniform = true;
  std::optional<SparseProfile> first;
  for (Vertex c : lily.centres) {
    auto p = sparse_profile(bfs, g, in_r, c, lily.depth);
    if (!first)
      first = std::move(p);
    else if (*first != p)
      check.uniform = false;
  }
  return check;
}

WaterlilyResult build_waterlily(const Graph &g, std::span<const Vertex> a, const WaterlilyParams &params) {
  if (params.depth > params.radius)
    throw std::invalid_argument("waterlily depth exceeds its radius");
  if (params.depth < 0 || params.radius < 0)
    throw std::invalid_argument("waterlily radius and depth must be non-negative");

  WaterlilyResult result;
  auto &rep = result.report;
  auto fail = [&](const char *stage) {
    rep.failed_stage = stage;
    return result;
  };

  if (params.target < 1)
    throw std::invalid_argument("waterlily target must be at least 1");
  auto targets = normalized(VertexSet(a.begin(), a.end()));
  if (targets.empty())
    return fail("empty-target-set");

  const int r = params.radius, d = params.depth;
  const auto n = g.num_vertices();
  BoundedBfs bfs(n);

  // Stage 1: a d-dominating set of A, pruned to an inclusion-minimal one.
  auto dom = domination_scattered(g, targets, d).dominators;
  {
    auto in_a = to_mask(n, targets);
    std::vector<int> cover(n, 0);
    for (Vertex w : dom)
      for (auto [v, dist] : bfs.run(g, w, d))
        cover[static_cast<std::size_t>(v)] += in_a[static_cast<std::size_t>(v)] ? 1 : 0;
    auto order = greedy_order(g, dom);
    std::reverse(order.begin(), order.end());
    VertexMask keep = to_mask(n, dom);
    for (Vertex w : order) {
      const auto &ball = bfs.run(g, w, d);
      bool redundant = std::all_of(ball.begin(), ball.end(), [&](const BoundedBfs::Reached &x) {
        return !in_a[static_cast<std::size_t>(x.vertex)] || cover[static_cast<std::size_t>(x.vertex)] >= 2;
      });
      if (!redundant)
        continue;
      keep[static_cast<std::size_t>(w)] = 0;
      for (auto [v, dist] : ball)
        cover[static_cast<std::size_t>(v)] -= in_a[static_cast<std::size_t>(v)] ? 1 : 0;
    }
    dom = from_mask(keep);
  }
  rep.dominators = dom.size();

  // Stage 2: (r+d)-projection closure.
  auto closure = projection_closure(g, dom, r + d, params.c_close);
  rep.closure = closure.size();
  auto in_closure = to_mask(n, closure);

  std::vector<Vertex> remainder;
  for (Vertex v : targets)
    if (!in_closure[static_cast<std::size_t>(v)])
      remainder.push_back(v);
  rep.remainder = remainder.size();
  if (remainder.empty())
    return fail("remainder");

  // Stage 3: largest class of equal (r+d)-profiles onto the closure.
  std::map<SparseProfile, std::vector<Vertex>> classes;
  for (Vertex v : remainder)
    classes[sparse_profile(bfs, g, in_closure, v, r + d)].push_back(v);
  const std::pair<const SparseProfile, std::vector<Vertex>> *chosen = nullptr;
  for (const auto &entry : classes)
    if (!chosen || entry.second.size() > chosen->second.size() ||
        (entry.second.size() == chosen->second.size() && entry.second.front() < chosen->second.front()))
      chosen = &entry;
  rep.profile_class = chosen->second.size();
  VertexSet projected;
  for (auto [v, dist] : chosen->first)
    projected.push_back(v);

  // Stage 4: hubs that scatter the class.
  auto scattered = uqw_scattered(g, chosen->second, r, params.target, params.s_max);
  rep.hubs = scattered.hubs.size();
  rep.scattered = scattered.scattered.size();
  rep.scatter_rounds = scattered.rounds;

  VertexSet roots = projected;
  roots.insert(roots.end(), scattered.hubs.begin(), scattered.hubs.end());
  roots = normalized(std::move(roots));
  rep.roots = roots.size();
  auto in_roots = to_mask(n, roots);

  // Stage 5: keep centres whose pads are d-dominated by the roots.
  auto to_roots = distance_to_set(g, roots, d);
  std::vector<Vertex> dominated;
  for (Vertex c : scattered.scattered) {
    if (in_roots[static_cast<std::size_t>(c)])
      continue;
    const auto &pad = bfs.run(g, c, r, in_roots);
    if (std::all_of(pad.begin(), pad.end(), [&](const BoundedBfs::Reached &x) {
          return to_roots[static_cast<std::size_t>(x.vertex)] <= d;
        }))
      dominated.push_back(c);
  }
  rep.dominated = dominated.size();
  if (dominated.empty())
    return fail("domination");

  // Stage 6: uniform d-profiles onto the roots.
  std::map<SparseProfile, std::vector<Vertex>> uniform;
  for (Vertex c : dominated)
    uniform[sparse_profile(bfs, g, in_roots, c, d)].push_back(c);
  const std::vector<Vertex> *centres = nullptr;
  for (const auto &entry : uniform)
    if (!centres || entry.second.size() > centres->size() ||
        (entry.second.size() == centres->size() && entry.second.front() < centres->front()))
      centres = &entry.second;
  rep.centres = centres->size();

  Waterlily lily{roots, normalized(*centres), r, d};
  if (!check_waterlily(g, lily).ok())
    return fail("verification");
  if (lily.centres.size() < params.target)
    return fail("target");
  result.lily = std::move(lily);
  return result;
}

} // namespace harmless
