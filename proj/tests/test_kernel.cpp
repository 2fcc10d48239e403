#include <doctest.h>

#include <map>

#include "fixtures.hpp"
#include "harmless/kernel.hpp"
#include "harmless/solvers.hpp"
#include "oracles.hpp"

using namespace harmless;
using fixture::make;

namespace {

Instance disjoint_edges(int count, Threshold t, int k) {
  Graph g(static_cast<std::size_t>(2 * count));
  for (int i = 0; i < count; ++i)
    g.add_edge(2 * i, 2 * i + 1);
  return fixture::uniform(std::move(g), t, k);
}

/// Star whose centre 0 has threshold `centre_t` and whose leaves have threshold 2.
Instance star_instance(std::size_t leaves, Threshold centre_t, int k) {
  auto inst = fixture::uniform(gen::star(leaves), 2, k);
  inst.thresholds[0] = centre_t;
  return inst;
}

bool kernel_decision(const KernelResult &kr) {
  if (kr.report.early_yes)
    return true;
  return oracle::max_harmless_within(kr.kernel.instance, kr.kernel.core) >= kr.kernel.instance.k;
}

} // namespace

TEST_CASE("signature") {
  // 0 is the root; 1 - 2 - 0 and 1 - 3
  auto inst = make(4, {{1, 2}, {2, 0}, {1, 3}}, {2, 2, 2, 5});
  CHECK(signature(inst, VertexSet{0}, 3) == Signature{{2, VertexSet{}}});
  CHECK(signature(inst, VertexSet{0}, 2) == Signature{{2, VertexSet{}}});
  CHECK(signature(inst, VertexSet{0}, 1) == Signature{{2, VertexSet{0}}, {5, VertexSet{}}});
  CHECK(signature(make(2, {{0, 1}}, {2, 2}), VertexSet{0}, 1).empty());
  CHECK_THROWS_AS(signature(inst, VertexSet{0}, 0), std::invalid_argument);
}

TEST_CASE("signatures of symmetric centres agree") {
  // Roots 0, 1; centres 2 and 3 each hang a private vertex (4, 5) attached to both roots.
  auto inst = make(6, {{2, 4}, {3, 5}, {4, 0}, {4, 1}, {5, 0}, {5, 1}, {2, 0}, {3, 0}}, {3, 3, 2, 2, 2, 2});
  CHECK(signature(inst, VertexSet{0, 1}, 2) == signature(inst, VertexSet{0, 1}, 3));
  CHECK(signature(inst, VertexSet{0, 1}, 2) == Signature{{2, VertexSet{0, 1}}});
}

TEST_CASE("shrink_core_step removes a vertex with a fragile neighbour") {
  auto inst = make(3, {{0, 1}, {1, 2}}, {2, 2, 1}, 1);
  auto ann = AnnotatedInstance::with_core(inst, VertexSet{0, 1});
  auto out = shrink_core_step(ann, 2);
  auto *rm = std::get_if<outcome::RemoveVertex>(&out);
  REQUIRE(rm);
  CHECK(rm->vertex == 1);
  CHECK(rm->rule == "fragile-neighbour");
}

TEST_CASE("shrink_core_step certifies disjoint edges") {
  for (int k = 1; k <= 6; ++k) {
    auto inst = disjoint_edges(k, 2, k);
    auto ann = AnnotatedInstance::with_core(inst, fixture::all_vertices(inst.size()));
    auto out = shrink_core_step(ann, 2);
    auto *yes = std::get_if<outcome::YesCertificate>(&out);
    REQUIRE(yes);
    CHECK(yes->harmless_set.size() >= static_cast<std::size_t>(k));
    CHECK(oracle::harmless(inst, yes->harmless_set));
  }
}

TEST_CASE("shrink_core_step rejects thresholds above p") {
  auto ann = AnnotatedInstance::with_core(fixture::triangle(5), VertexSet{0});
  CHECK_THROWS_AS(shrink_core_step(ann, 4), std::invalid_argument);
}

TEST_CASE("waterlily exchange on a large star") {
  auto inst = star_instance(12, 3, 4);
  auto ann = AnnotatedInstance::with_core(inst, fixture::all_vertices(inst.size()));
  auto out = shrink_core_step(ann, 3);
  auto *rm = std::get_if<outcome::RemoveVertex>(&out);
  REQUIRE(rm);
  CHECK(rm->rule == "waterlily-exchange");
  REQUIRE(rm->lily);
  CHECK(rm->exchange_class.size() > 3 * rm->lily->roots.size());
  CHECK(oracle::check_waterlily(inst.graph, *rm->lily).ok());
  auto smaller = ann.core;
  std::erase(smaller, rm->vertex);
  CHECK(oracle::max_harmless_within(inst, smaller) == oracle::max_harmless_within(inst, ann.core));
}

TEST_CASE("every core removal keeps the optimum") {
  gen::Rng rng(107);
  std::map<std::string, int> fired;
  for (int i = 0; i < 400; ++i) {
    Instance inst = i % 2 ? gen::random_instance(2 + rng() % 8, rng)
                          : star_instance(3 + rng() % 6, 1 + static_cast<Threshold>(rng() % 4), 0);
    inst.k = 1 + static_cast<int>(rng() % 4);
    auto capped = cap_thresholds(inst);
    // Half the runs start from the whole vertex set so the fragile-neighbour rule has work to do.
    auto ann = AnnotatedInstance::with_core(capped, i % 4 < 2 ? fixture::all_vertices(capped.size()) : compute_core(capped));
    const Threshold p = capped.k + 1;
    for (;;) {
      auto out = shrink_core_step(ann, p);
      auto *rm = std::get_if<outcome::RemoveVertex>(&out);
      if (auto *yes = std::get_if<outcome::YesCertificate>(&out)) {
        CHECK(oracle::harmless(capped, yes->harmless_set));
        CHECK(yes->harmless_set.size() >= static_cast<std::size_t>(capped.k));
      }
      if (!rm)
        break;
      ++fired[rm->rule];
      auto smaller = ann.core;
      std::erase(smaller, rm->vertex);
      CHECK(oracle::max_harmless_within(capped, smaller) == oracle::max_harmless_within(capped, ann.core));
      ann.core = smaller;
    }
  }
  CHECK(fired["fragile-neighbour"] > 0);
  CHECK(fired["waterlily-exchange"] > 0);
}

TEST_CASE("shrink_graph_step") {
  // core {0}; 1 and 2 both see only 0
  auto inst = make(3, {{0, 1}, {0, 2}}, {4, 2, 3});
  auto ann = AnnotatedInstance::with_core(inst, VertexSet{0});
  auto removed = shrink_graph_step(ann);
  REQUIRE(removed);
  CHECK(*removed == 2);
  CHECK(ann.instance.size() == 2);
  CHECK(ann.labels == std::vector<Vertex>{0, 1});
  CHECK_FALSE(shrink_graph_step(ann));

  auto tie = make(3, {{0, 1}, {0, 2}}, {4, 2, 2});
  auto tied = AnnotatedInstance::with_core(tie, VertexSet{0});
  CHECK(shrink_graph_step(tied) == Vertex{2});

  auto none = make(3, {{0, 1}, {1, 2}}, {2, 2, 2});
  auto ann2 = AnnotatedInstance::with_core(none, VertexSet{0, 2});
  CHECK_FALSE(shrink_graph_step(ann2));
}

TEST_CASE("twin removal keeps the optimum") {
  gen::Rng rng(109);
  for (int i = 0; i < 300; ++i) {
    auto inst = gen::random_instance(2 + rng() % 8, rng);
    auto core = fixture::sample(fixture::all_vertices(inst.size()), rng);
    auto ann = AnnotatedInstance::with_core(inst, core);
    int before = oracle::max_harmless_within(inst, core);
    while (shrink_graph_step(ann))
      CHECK(oracle::max_harmless_within(ann.instance, ann.core) == before);
  }
}

TEST_CASE("remove_vertex renumbers and keeps labels") {
  auto inst = make(4, {{0, 1}, {1, 2}, {2, 3}}, {1, 2, 3, 4});
  auto ann = AnnotatedInstance::with_core(inst, VertexSet{1, 3});
  remove_vertex(ann, 1);
  CHECK(ann.instance.size() == 3);
  CHECK(ann.instance.thresholds == std::vector<Threshold>{1, 3, 4});
  CHECK(ann.labels == std::vector<Vertex>{0, 2, 3});
  CHECK(ann.core == VertexSet{2});
  CHECK(ann.instance.graph.edges() == std::vector<Edge>{{1, 2}});
}

TEST_CASE("kernelize examples") {
  auto empty_core = make(2, {{0, 1}}, {1, 1}, 1);
  auto kr = kernelize(empty_core);
  CHECK(kr.kernel.core.empty());
  CHECK(kr.decision() == "no");

  auto edges = disjoint_edges(4, 2, 4);
  auto yes = kernelize(edges);
  CHECK(yes.report.early_yes);
  CHECK(yes.decision() == "yes");
  CHECK(yes.report.certificate.size() >= 4);
  CHECK(oracle::harmless(edges, yes.report.certificate));
  CHECK(yes.kernel.instance.size() == 4);
  CHECK(oracle::max_harmless_within(yes.kernel.instance, yes.kernel.core) >= 4);

  CHECK_THROWS_AS(kernelize(fixture::triangle(5), {.p = 3}), std::invalid_argument);
}

TEST_CASE("kernelize keeps every decision") {
  gen::Rng rng(113);
  for (int i = 0; i < 250; ++i) {
    auto inst = gen::random_instance(1 + rng() % 10, rng);
    int opt = oracle::max_harmless(inst);
    for (int k = 0; k <= static_cast<int>(inst.size()); ++k) {
      inst.k = k;
      auto kr = kernelize(inst);
      CHECK(kernel_decision(kr) == (opt >= k));
      CHECK(kr.kernel.instance.k == k);
    }
  }
}

TEST_CASE("kernel report sizes never grow") {
  gen::Rng rng(127);
  for (int i = 0; i < 100; ++i) {
    auto inst = gen::random_instance(4 + rng() % 10, rng);
    inst.k = static_cast<int>(rng() % inst.size());
    auto kr = kernelize(inst);
    std::size_t g = kr.report.graph_before, c = kr.report.core_before;
    for (const auto &s : kr.report.steps) {
      CHECK(s.graph_size <= g);
      CHECK(s.core_size <= c);
      g = s.graph_size;
      c = s.core_size;
    }
    CHECK(kr.report.graph_after <= kr.report.graph_before);
  }
}

TEST_CASE("every kernel step keeps the optimum") {
  gen::Rng rng(131);
  int steps = 0;
  for (int i = 0; i < 150; ++i) {
    Instance inst = i % 3 ? gen::random_instance(3 + rng() % 7, rng)
                          : star_instance(4 + rng() % 5, 2 + static_cast<Threshold>(rng() % 2), 0);
    inst.k = 1 + static_cast<int>(rng() % 3);
    kernelize(inst, {}, [&](const AnnotatedInstance &before, const AnnotatedInstance &after, const KernelStep &) {
      ++steps;
      CHECK(oracle::max_harmless_within(before.instance, before.core) ==
            oracle::max_harmless_within(after.instance, after.core));
    });
  }
  CHECK(steps > 0);
}

TEST_CASE("to_plain_kernel") {
  auto inst = fixture::triangle(2);
  auto full = AnnotatedInstance::with_core(inst, fixture::all_vertices(3));
  auto plain = to_plain_kernel(full);
  CHECK(plain.size() == 5);
  CHECK(plain.graph.degree(3) == 1);
  CHECK(plain.thresholds[3] == 1);
  CHECK(plain.thresholds[4] == 1);

  gen::Rng rng(137);
  for (int i = 0; i < 200; ++i) {
    auto base = gen::random_instance(1 + rng() % 9, rng);
    auto core = fixture::sample(fixture::all_vertices(base.size()), rng);
    auto ann = AnnotatedInstance::with_core(base, core);
    auto out = to_plain_kernel(ann);
    CHECK(out.size() == base.size() + 2);
    CHECK(oracle::max_harmless(out) == oracle::max_harmless_within(base, core));
  }
}

TEST_CASE("trivial_yes_instance") {
  auto ann = trivial_yes_instance(3);
  CHECK(ann.instance.size() == 3);
  CHECK(ann.core.size() == 3);
  CHECK(oracle::max_harmless_within(ann.instance, ann.core) == 3);
}
