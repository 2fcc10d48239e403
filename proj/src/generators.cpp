#include "harmless/generators.hpp"

#include <algorithm>

namespace harmless::gen {

Graph gnp(std::size_t n, double p, Rng &rng) {
  std::bernoulli_distribution coin(p);
  Graph g(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (coin(rng))
        g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
  return g;
}

Graph bounded_degree(std::size_t n, std::size_t max_degree, std::size_t attempts, Rng &rng) {
  Graph g(n);
  if (n < 2)
    return g;
  std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(n - 1));
  for (std::size_t i = 0; i < attempts; ++i) {
    Vertex u = pick(rng), v = pick(rng);
    if (u == v || g.degree(u) >= max_degree || g.degree(v) >= max_degree || g.adjacent(u, v))
      continue;
    g.add_edge(u, v);
  }
  return g;
}

Graph grid(std::size_t width, std::size_t height) {
  Graph g(width * height);
  for (std::size_t y = 0; y < height; ++y)
    for (std::size_t x = 0; x < width; ++x) {
      auto id = static_cast<Vertex>(y * width + x);
      if (x + 1 < width)
        g.add_edge(id, id + 1);
      if (y + 1 < height)
        g.add_edge(id, id + static_cast<Vertex>(width));
    }
  return g;
}

Graph path(std::size_t n) {
  Graph g(n);
  for (std::size_t v = 1; v < n; ++v)
    g.add_edge(static_cast<Vertex>(v - 1), static_cast<Vertex>(v));
  return g;
}

Graph cycle(std::size_t n) {
  Graph g = path(n);
  if (n >= 3)
    g.add_edge(0, static_cast<Vertex>(n - 1));
  return g;
}

Graph star(std::size_t leaves) {
  Graph g(leaves + 1);
  for (std::size_t v = 1; v <= leaves; ++v)
    g.add_edge(0, static_cast<Vertex>(v));
  return g;
}

Graph complete(std::size_t n) {
  Graph g(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
  return g;
}

std::vector<Threshold> uniform_thresholds(std::size_t n, Threshold lo, Threshold hi, Rng &rng) {
  std::uniform_int_distribution<Threshold> pick(lo, std::max(lo, hi));
  std::vector<Threshold> t(n);
  for (auto &x : t)
    x = pick(rng);
  return t;
}

Instance uniform_instance(Graph g, Threshold t, int k) {
  Instance inst;
  inst.thresholds.assign(g.num_vertices(), t);
  inst.graph = std::move(g);
  inst.k = k;
  return inst;
}

Instance random_instance(std::size_t n, Rng &rng) {
  std::uniform_real_distribution<double> density(0.1, 0.7);
  Instance inst;
  inst.graph = gnp(n, density(rng), rng);
  inst.thresholds = uniform_thresholds(n, 1, static_cast<Threshold>(std::max<std::size_t>(n, 1)), rng);
  return inst;
}

} // namespace harmless::gen
