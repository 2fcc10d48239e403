#include <doctest.h>

#include <functional>

#include "fixtures.hpp"
#include "harmless/solvers.hpp"
#include "oracles.hpp"

using namespace harmless;
using fixture::make;

namespace {

/// Exhaustive optimum of a packing model by enumerating every count vector.
int packing_oracle(const IlpModel &model) {
  if (!model.feasible())
    return -1;
  int best = 0;
  std::vector<int> x(model.classes.size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t c) {
    if (c == x.size()) {
      std::vector<int> load(model.cover.size(), 0);
      int total = 0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        total += x[i];
        for (Vertex r : model.classes[i].roots)
          load[static_cast<std::size_t>(r)] += x[i];
      }
      for (std::size_t u = 0; u < load.size(); ++u)
        if (load[u] > model.capacity[u])
          return;
      best = std::max(best, total);
      return;
    }
    for (int v = 0; v <= static_cast<int>(model.classes[c].members.size()); ++v) {
      x[c] = v;
      rec(c + 1);
    }
  };
  rec(0);
  return best;
}

IlpModel model_of(std::vector<std::pair<VertexSet, int>> classes, std::vector<int> capacity) {
  IlpModel m;
  for (std::size_t i = 0; i < capacity.size(); ++i)
    m.cover.push_back(static_cast<Vertex>(i));
  m.capacity = std::move(capacity);
  Vertex next = static_cast<Vertex>(m.cover.size());
  for (auto &[roots, size] : classes) {
    NeighbourhoodClass c{roots, {}};
    for (int i = 0; i < size; ++i)
      c.members.push_back(next++);
    m.classes.push_back(c);
  }
  return m;
}

} // namespace

TEST_CASE("brute_force_max examples") {
  auto edgeless = fixture::uniform(Graph(5), 1);
  CHECK(brute_force_max(edgeless).optimum == 5);
  CHECK(brute_force_max(fixture::triangle(2)).optimum == oracle::max_harmless(fixture::triangle(2)));
  CHECK(brute_force_max(fixture::triangle(2)).optimum == 1);
  auto p3 = fixture::uniform(gen::path(3), 2);
  CHECK(brute_force_max(p3).optimum == 2);
  CHECK(brute_force_max(fixture::uniform(Graph(0), 1)).optimum == 0);
}

TEST_CASE("brute_force_max refuses above its cap") {
  auto big = fixture::uniform(Graph(30), 1);
  BruteForceOptions o;
  o.cap = 20;
  CHECK_THROWS_AS(brute_force_max(big, o), ResourceLimit);
  // Vertices outside the core do not count against the cap.
  auto star = fixture::uniform(gen::star(29), 2);
  star.thresholds[0] = 1;
  CHECK(brute_force_max(star, o).optimum == 1);
}

TEST_CASE("brute_force_max honours allowed and stop_at") {
  auto inst = fixture::uniform(Graph(6), 1);
  BruteForceOptions o;
  o.allowed = VertexSet{1, 3};
  CHECK(brute_force_max(inst, o).optimum == 2);
  BruteForceOptions stop;
  stop.stop_at = 3;
  auto r = brute_force_max(inst, stop);
  CHECK(r.optimum >= 3);
  CHECK(is_harmless(inst, r.witness));
}

TEST_CASE("brute_force_max matches subset enumeration") {
  gen::Rng rng(71);
  for (int i = 0; i < 400; ++i) {
    auto inst = gen::random_instance(1 + rng() % 12, rng);
    auto r = brute_force_max(inst);
    CHECK(r.optimum == oracle::max_harmless(inst));
    CHECK(static_cast<int>(r.witness.size()) == r.optimum);
    CHECK(oracle::harmless(inst, r.witness));
  }
}

TEST_CASE("annotated brute force stays inside the core") {
  gen::Rng rng(73);
  for (int i = 0; i < 200; ++i) {
    auto inst = gen::random_instance(1 + rng() % 10, rng);
    auto core = fixture::sample(fixture::all_vertices(inst.size()), rng);
    auto ann = AnnotatedInstance::with_core(inst, core);
    auto r = brute_force_max(ann);
    CHECK(r.optimum == oracle::max_harmless_within(inst, core));
    CHECK(std::includes(core.begin(), core.end(), r.witness.begin(), r.witness.end()));
  }
}

TEST_CASE("greedy_vertex_cover") {
  CHECK(greedy_vertex_cover(Graph(4)).empty());
  CHECK(greedy_vertex_cover(gen::path(2)) == VertexSet{0, 1});
  CHECK(greedy_vertex_cover(gen::complete(3)).size() == 2);
  gen::Rng rng(79);
  for (int i = 0; i < 100; ++i) {
    auto g = gen::gnp(12, 0.3, rng);
    auto cover = greedy_vertex_cover(g);
    for (auto [u, v] : g.edges())
      CHECK((std::binary_search(cover.begin(), cover.end(), u) || std::binary_search(cover.begin(), cover.end(), v)));
    // Both ends of a matching: the optimum needs at least half of them.
    CHECK(cover.size() % 2 == 0);
  }
}

TEST_CASE("build_ilp examples") {
  auto star = fixture::uniform(gen::star(3), 2);
  auto m = build_ilp(star, VertexSet{0}, VertexSet{});
  REQUIRE(m);
  REQUIRE(m->classes.size() == 1);
  CHECK(m->classes[0].roots == VertexSet{0});
  CHECK(m->classes[0].members == VertexSet{1, 2, 3});
  CHECK(m->capacity == std::vector<int>{1});

  auto fragile = make(3, {{0, 1}, {1, 2}}, {2, 1, 2});
  CHECK(build_ilp(fragile, VertexSet{1}, VertexSet{1}));
  CHECK_FALSE(build_ilp(fragile, VertexSet{0, 1}, VertexSet{0, 1}));

  CHECK_THROWS_AS(build_ilp(star, VertexSet{0}, VertexSet{1}), std::invalid_argument);

  auto loose = make(3, {{0, 1}}, {2, 2, 1});
  auto iso = build_ilp(loose, VertexSet{0}, VertexSet{});
  REQUIRE(iso);
  bool found_free = false;
  for (const auto &c : iso->classes)
    if (c.roots.empty()) {
      found_free = true;
      CHECK(c.members == VertexSet{2});
    }
  CHECK(found_free);
  CHECK(ilp_solve(*iso).optimum == 2);
}

TEST_CASE("ilp_solve examples") {
  auto one = model_of({{{0}, 5}}, {2});
  auto s = ilp_solve(one);
  CHECK(s.feasible);
  CHECK(s.optimum == 2);
  CHECK(s.counts == std::vector<int>{2});

  CHECK(ilp_solve(model_of({{{0}, 3}, {{0, 1}, 3}}, {2, 9})).optimum == 2);
  CHECK(ilp_solve(model_of({}, {})).optimum == 0);
  CHECK_FALSE(ilp_solve(model_of({{{0}, 1}}, {-1})).feasible);
}

TEST_CASE("ilp_solve matches count enumeration") {
  gen::Rng rng(83);
  for (int i = 0; i < 300; ++i) {
    std::size_t cover = 1 + rng() % 4;
    std::vector<int> cap;
    for (std::size_t u = 0; u < cover; ++u)
      cap.push_back(static_cast<int>(rng() % 5));
    std::vector<std::pair<VertexSet, int>> classes;
    std::size_t count = rng() % 5;
    for (std::size_t c = 0; c < count; ++c) {
      VertexSet roots;
      for (std::size_t u = 0; u < cover; ++u)
        if (rng() % 2)
          roots.push_back(static_cast<Vertex>(u));
      classes.emplace_back(roots, 1 + static_cast<int>(rng() % 4));
    }
    auto model = model_of(classes, cap);
    auto sol = ilp_solve(model);
    CHECK(sol.optimum == packing_oracle(model));
    int total = 0;
    for (std::size_t c = 0; c < sol.counts.size(); ++c) {
      CHECK(sol.counts[c] <= static_cast<int>(model.classes[c].members.size()));
      total += sol.counts[c];
    }
    CHECK(total == sol.optimum);
  }
}

TEST_CASE("vc_solve examples") {
  CHECK(vc_solve(fixture::uniform(gen::path(3), 2)).optimum == 2);
  CHECK(vc_solve(fixture::uniform(gen::path(3), 1)).optimum == 0);
  for (std::size_t leaves = 3; leaves <= 6; ++leaves) {
    auto star = fixture::uniform(gen::star(leaves), 2);
    CHECK(vc_solve(star).optimum == 2);
    CHECK(oracle::max_harmless(star) == 2);
  }
  CHECK(vc_solve(fixture::uniform(Graph(0), 1)).optimum == 0);
}

TEST_CASE("vc_solve refuses a large cover") {
  auto g = gen::path(60);
  VcOptions o;
  o.cover_cap = 10;
  CHECK_THROWS_AS(vc_solve(fixture::uniform(g, 2), o), ResourceLimit);
}

TEST_CASE("vc_solve matches brute force with valid witnesses") {
  gen::Rng rng(89);
  for (int i = 0; i < 300; ++i) {
    auto inst = gen::random_instance(1 + rng() % 14, rng);
    auto vc = vc_solve(inst);
    CHECK(vc.optimum == brute_force_max(inst).optimum);
    CHECK(static_cast<int>(vc.witness.size()) == vc.optimum);
    CHECK(oracle::harmless(inst, vc.witness));
  }
}

TEST_CASE("vc_solve is independent of the worker count") {
  gen::Rng rng(97);
  for (int i = 0; i < 40; ++i) {
    auto inst = gen::random_instance(8 + rng() % 7, rng);
    auto one = vc_solve(inst, {22, 1});
    for (unsigned w : {2u, 3u, 8u}) {
      auto many = vc_solve(inst, {22, w});
      CHECK(many.optimum == one.optimum);
      CHECK(many.witness == one.witness);
    }
  }
}

TEST_CASE("members of one neighbourhood class are interchangeable") {
  gen::Rng rng(101);
  for (int i = 0; i < 150; ++i) {
    auto inst = gen::random_instance(4 + rng() % 9, rng);
    auto vc = vc_solve(inst);
    auto cover = greedy_vertex_cover(inst.graph);
    VertexSet guess;
    for (Vertex v : vc.witness)
      if (std::binary_search(cover.begin(), cover.end(), v))
        guess.push_back(v);
    auto model = build_ilp(inst, cover, guess);
    REQUIRE(model);
    for (const auto &cls : model->classes)
      for (Vertex in : cls.members) {
        if (!std::binary_search(vc.witness.begin(), vc.witness.end(), in))
          continue;
        for (Vertex out : cls.members) {
          if (std::binary_search(vc.witness.begin(), vc.witness.end(), out))
            continue;
          auto swapped = vc.witness;
          std::replace(swapped.begin(), swapped.end(), in, out);
          CHECK(is_harmless(inst, normalized(swapped)));
        }
      }
  }
}
