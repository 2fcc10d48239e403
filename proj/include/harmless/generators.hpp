#pragma once

#include <random>

#include "harmless/graph.hpp"

namespace harmless::gen {

using Rng = std::mt19937_64;

/// Erdős–Rényi G(n, p).
Graph gnp(std::size_t n, double p, Rng &rng);

/// Random graph with maximum degree at most `max_degree`, built by inserting
/// `attempts` random edges and skipping those that would break the degree bound.
Graph bounded_degree(std::size_t n, std::size_t max_degree, std::size_t attempts, Rng &rng);

/// width x height grid, vertex (x, y) has id y * width + x.
Graph grid(std::size_t width, std::size_t height);

Graph path(std::size_t n);
Graph cycle(std::size_t n);
Graph star(std::size_t leaves);  // centre is vertex 0
Graph complete(std::size_t n);

/// Uniform thresholds in [lo, hi].
std::vector<Threshold> uniform_thresholds(std::size_t n, Threshold lo, Threshold hi, Rng &rng);

Instance uniform_instance(Graph g, Threshold t, int k);

/// G(n, p) with p drawn uniformly from [0.1, 0.7] and thresholds uniform in [1, n].
Instance random_instance(std::size_t n, Rng &rng);

} // namespace harmless::gen
