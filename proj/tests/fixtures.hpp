#pragma once

#include <initializer_list>

#include "harmless/generators.hpp"
#include "harmless/graph.hpp"

namespace fixture {

using namespace harmless;

inline Instance make(std::size_t n, std::initializer_list<Edge> edges, std::vector<Threshold> t, int k = 0) {
  std::vector<Edge> list(edges);
  return Instance{Graph(n, list), std::move(t), k};
}

inline Instance uniform(Graph g, Threshold t, int k = 0) { return gen::uniform_instance(std::move(g), t, k); }

inline Instance triangle(Threshold t) { return uniform(gen::complete(3), t); }

/// Random subset of the given vertices.
inline VertexSet sample(std::span<const Vertex> from, gen::Rng &rng) {
  VertexSet out;
  for (Vertex v : from)
    if (rng() % 2)
      out.push_back(v);
  return out;
}

inline VertexSet all_vertices(std::size_t n) {
  VertexSet out(n);
  for (std::size_t v = 0; v < n; ++v)
    out[v] = static_cast<Vertex>(v);
  return out;
}

} // namespace fixture
