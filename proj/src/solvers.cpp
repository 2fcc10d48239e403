#include "harmless/solvers.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <queue>
#include <thread>

namespace harmless {

namespace {

class HarmlessSearch {
public:
  HarmlessSearch(const Instance &inst, std::vector<Vertex> candidates, std::optional<int> stop_at)
      : inst_(inst), g_(inst.graph), cand_(std::move(candidates)), stop_at_(stop_at),
        count_(inst.size(), 0), state_(inst.size(), kOutside), assigned_(inst.size(), 0),
        load_(inst.size(), 0) {
    for (Vertex v : cand_)
      state_[static_cast<std::size_t>(v)] = kUndecided;
  }

  SolveResult run() {
    dfs();
    SolveResult res;
    res.optimum = static_cast<int>(best_.size());
    res.witness = normalized(best_);
    res.nodes = nodes_;
    return res;
  }

private:
  static constexpr char kOutside = 0, kUndecided = 1, kIn = 2, kOut = 3;

  bool addable(Vertex v) const {
    for (Vertex w : g_.neighbours(v))
      if (count_[static_cast<std::size_t>(w)] + 1 >= inst_.threshold(w))
        return false;
    return true;
  }

  int budget(Vertex w) const { return inst_.threshold(w) - 1 - count_[static_cast<std::size_t>(w)]; }

  /// Upper bound on how many of `open` can still join: partition `open` into groups
  /// N(w) ∩ open, each capped by w's budget, picking the groups that save the most first.
  std::size_t group_bound(const std::vector<Vertex> &open) {
    for (Vertex u : open) {
      assigned_[static_cast<std::size_t>(u)] = 0;
      for (Vertex w : g_.neighbours(u))
        load_[static_cast<std::size_t>(w)] = 0;
    }
    std::vector<Vertex> touched;
    for (Vertex u : open)
      for (Vertex w : g_.neighbours(u)) {
        if (load_[static_cast<std::size_t>(w)]++ == 0)
          touched.push_back(w);
      }
    std::priority_queue<std::pair<int, Vertex>> heap;
    for (Vertex w : touched) {
      int saving = load_[static_cast<std::size_t>(w)] - budget(w);
      if (saving > 0)
        heap.emplace(saving, -w);
    }
    std::size_t bound = 0, covered = 0;
    while (!heap.empty()) {
      auto [saving, neg_w] = heap.top();
      heap.pop();
      Vertex w = -neg_w;
      int current = load_[static_cast<std::size_t>(w)] - budget(w);
      if (current != saving) {
        if (current > 0)
          heap.emplace(current, neg_w);
        continue;
      }
      int members = 0;
      for (Vertex u : g_.neighbours(w)) {
        auto ui = static_cast<std::size_t>(u);
        if (state_[ui] != kUndecided || assigned_[ui] || !in_open_[ui])
          continue;
        assigned_[ui] = 1;
        ++members;
        for (Vertex x : g_.neighbours(u))
          --load_[static_cast<std::size_t>(x)];
      }
      bound += static_cast<std::size_t>(std::min(members, budget(w)));
      covered += static_cast<std::size_t>(members);
    }
    return bound + (open.size() - covered);
  }

  void set_in(Vertex v, int delta) {
    for (Vertex w : g_.neighbours(v))
      count_[static_cast<std::size_t>(w)] += delta;
  }

  bool done() const { return stop_at_ && static_cast<int>(best_.size()) >= *stop_at_; }

  void dfs() {
    ++nodes_;
    if (current_.size() > best_.size())
      best_ = current_;
    if (done())
      return;

    std::vector<Vertex> open;
    for (Vertex v : cand_)
      if (state_[static_cast<std::size_t>(v)] == kUndecided && addable(v))
        open.push_back(v);
    if (open.empty() || current_.size() + open.size() <= best_.size())
      return;

    in_open_.assign(g_.num_vertices(), 0);
    for (Vertex v : open)
      in_open_[static_cast<std::size_t>(v)] = 1;
    if (current_.size() + group_bound(open) <= best_.size())
      return;

    Vertex v = open.front();
    auto vi = static_cast<std::size_t>(v);

    state_[vi] = kIn;
    current_.push_back(v);
    set_in(v, +1);
    dfs();
    set_in(v, -1);
    current_.pop_back();
    if (done()) {
      state_[vi] = kUndecided;
      return;
    }

    state_[vi] = kOut;
    dfs();
    state_[vi] = kUndecided;
  }

  const Instance &inst_;
  const Graph &g_;
  std::vector<Vertex> cand_;
  std::optional<int> stop_at_;
  std::vector<int> count_;
  std::vector<char> state_;
  std::vector<char> assigned_;
  std::vector<int> load_;
  std::vector<char> in_open_;
  std::vector<Vertex> current_, best_;
  std::uint64_t nodes_ = 0;
};

} // namespace

SolveResult brute_force_max(const Instance &instance, const BruteForceOptions &options) {
  instance.validate();
  auto core = compute_core(instance);
  if (options.allowed) {
    auto allowed = to_mask(instance.size(), *options.allowed);
    std::erase_if(core, [&](Vertex v) { return !allowed[static_cast<std::size_t>(v)]; });
  }
  if (core.size() > options.cap)
    throw ResourceLimit("brute force refuses " + std::to_string(core.size()) +
                        " selectable vertices (cap " + std::to_string(options.cap) + ")");
  return HarmlessSearch(instance, std::move(core), options.stop_at).run();
}

SolveResult brute_force_max(const AnnotatedInstance &ann, std::size_t cap) {
  BruteForceOptions options;
  options.cap = cap;
  options.allowed = ann.core;
  return brute_force_max(ann.instance, options);
}

VertexSet greedy_vertex_cover(const Graph &g) {
  VertexMask covered(g.num_vertices(), 0);
  for (auto [u, v] : g.edges())
    if (!covered[static_cast<std::size_t>(u)] && !covered[static_cast<std::size_t>(v)])
      covered[static_cast<std::size_t>(u)] = covered[static_cast<std::size_t>(v)] = 1;
  return from_mask(covered);
}

bool IlpModel::feasible() const {
  return std::all_of(capacity.begin(), capacity.end(), [](int c) { return c >= 0; });
}

namespace {

/// Classes of V \ X by neighbourhood, roots expressed as indices into `cover`.
std::vector<NeighbourhoodClass> neighbourhood_classes(const Instance &instance, const VertexSet &cover,
                                                      const VertexMask &excluded) {
  const auto &g = instance.graph;
  std::vector<int> index(g.num_vertices(), -1);
  for (std::size_t i = 0; i < cover.size(); ++i)
    index[static_cast<std::size_t>(cover[i])] = static_cast<int>(i);
  std::map<VertexSet, VertexSet> grouped;
  for (std::size_t u = 0; u < g.num_vertices(); ++u) {
    if (index[u] >= 0 || (!excluded.empty() && excluded[u]))
      continue;
    VertexSet roots;
    for (Vertex w : g.neighbours(static_cast<Vertex>(u))) {
      if (index[static_cast<std::size_t>(w)] < 0)
        throw std::invalid_argument("cover misses edge " + std::to_string(u) + "-" + std::to_string(w));
      roots.push_back(index[static_cast<std::size_t>(w)]);
    }
    grouped[roots].push_back(static_cast<Vertex>(u));
  }
  std::vector<NeighbourhoodClass> out;
  for (auto &[roots, members] : grouped)
    out.push_back({roots, std::move(members)});
  return out;
}

class PackingSearch {
public:
  explicit PackingSearch(const IlpModel &model) : model_(model), cap_(model.capacity) {
    for (std::size_t c = 0; c < model.classes.size(); ++c)
      order_.push_back(c);
    // Larger classes first, then fewer roots: tight choices settle early.
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
      const auto &ca = model.classes[a], &cb = model.classes[b];
      if (ca.members.size() != cb.members.size())
        return ca.members.size() > cb.members.size();
      return ca.roots.size() < cb.roots.size();
    });
    counts_.assign(model.classes.size(), 0);
  }

  IlpSolution run() {
    IlpSolution sol;
    sol.feasible = true;
    best_counts_ = counts_;
    dfs(0, 0);
    sol.optimum = best_;
    sol.counts = best_counts_;
    return sol;
  }

private:
  int room(std::size_t c) const {
    const auto &cls = model_.classes[c];
    int r = static_cast<int>(cls.members.size());
    for (Vertex i : cls.roots)
      r = std::min(r, cap_[static_cast<std::size_t>(i)]);
    return std::max(r, 0);
  }

  void dfs(std::size_t depth, int value) {
    if (value > best_) {
      best_ = value;
      best_counts_ = counts_;
    }
    if (depth == order_.size())
      return;
    int bound = value;
    for (std::size_t d = depth; d < order_.size(); ++d)
      bound += room(order_[d]);
    if (bound <= best_)
      return;
    std::size_t c = order_[depth];
    const auto &cls = model_.classes[c];
    for (int x = room(c); x >= 0; --x) {
      for (Vertex i : cls.roots)
        cap_[static_cast<std::size_t>(i)] -= x;
      counts_[c] = x;
      dfs(depth + 1, value + x);
      counts_[c] = 0;
      for (Vertex i : cls.roots)
        cap_[static_cast<std::size_t>(i)] += x;
    }
  }

  const IlpModel &model_;
  std::vector<int> cap_;
  std::vector<std::size_t> order_;
  std::vector<int> counts_, best_counts_;
  int best_ = -1;
};

} // namespace

std::optional<IlpModel> build_ilp(const Instance &instance, std::span<const Vertex> cover,
                                  std::span<const Vertex> guess) {
  IlpModel model;
  model.cover = normalized(VertexSet(cover.begin(), cover.end()));
  auto in_cover = to_mask(instance.size(), model.cover);
  for (Vertex s : guess)
    if (!instance.graph.contains(s) || !in_cover[static_cast<std::size_t>(s)])
      throw std::invalid_argument("guess is not contained in the cover");
  if (!is_harmless(instance, guess))
    return std::nullopt;

  auto in_guess = to_mask(instance.size(), guess);
  auto used = [&](Vertex u) {
    int hits = 0;
    for (Vertex w : instance.graph.neighbours(u))
      hits += in_guess[static_cast<std::size_t>(w)] ? 1 : 0;
    return hits;
  };
  for (Vertex u : model.cover)
    model.capacity.push_back(instance.threshold(u) - used(u) - 1);

  // Vertices outside the cover keep their own neighbour count fixed at |N(u) ∩ S|;
  // any with a negative residual budget would be unselectable.
  VertexMask excluded(instance.size(), 0);
  for (std::size_t u = 0; u < instance.size(); ++u)
    if (!in_cover[u] && instance.threshold(static_cast<Vertex>(u)) - used(static_cast<Vertex>(u)) - 1 < 0)
      excluded[u] = 1;
  model.classes = neighbourhood_classes(instance, model.cover, excluded);
  return model;
}

IlpSolution ilp_solve(const IlpModel &model) {
  if (!model.feasible())
    return {};
  return PackingSearch(model).run();
}

SolveResult vc_solve(const Instance &instance, const VcOptions &options) {
  instance.validate();
  const auto &g = instance.graph;
  auto cover = greedy_vertex_cover(g);
  if (cover.size() > options.cover_cap)
    throw ResourceLimit("vertex cover of size " + std::to_string(cover.size()) + " exceeds cap " +
                        std::to_string(options.cover_cap));
  if (cover.size() > 62)
    throw ResourceLimit("vertex cover too large for guess enumeration");

  const auto n = g.num_vertices();
  std::vector<int> index(n, -1);
  for (std::size_t i = 0; i < cover.size(); ++i)
    index[static_cast<std::size_t>(cover[i])] = static_cast<int>(i);
  // Neighbourhood of every vertex inside the cover, as a bitmask over cover indices.
  std::vector<std::uint64_t> cover_nbrs(n, 0);
  for (std::size_t v = 0; v < n; ++v)
    for (Vertex w : g.neighbours(static_cast<Vertex>(v)))
      if (index[static_cast<std::size_t>(w)] >= 0)
        cover_nbrs[v] |= std::uint64_t{1} << index[static_cast<std::size_t>(w)];

  const auto base_classes = neighbourhood_classes(instance, cover, {});
  const std::uint64_t guesses = std::uint64_t{1} << cover.size();

  struct Best {
    int value = -1;
    std::uint64_t mask = 0;
    std::vector<int> counts;
  };

  auto evaluate = [&](std::uint64_t mask, Best &best) {
    for (std::size_t v = 0; v < n; ++v)
      if (std::popcount(cover_nbrs[v] & mask) >= instance.thresholds[v])
        return;
    IlpModel model;
    model.cover = cover;
    model.capacity.resize(cover.size());
    for (std::size_t i = 0; i < cover.size(); ++i) {
      auto u = static_cast<std::size_t>(cover[i]);
      model.capacity[i] = instance.thresholds[u] - std::popcount(cover_nbrs[u] & mask) - 1;
    }
    model.classes = base_classes;
    auto sol = ilp_solve(model);
    int value = std::popcount(mask) + sol.optimum;
    if (value > best.value || (value == best.value && mask < best.mask)) {
      best.value = value;
      best.mask = mask;
      best.counts = std::move(sol.counts);
    }
  };

  unsigned workers = std::max(1u, options.workers);
  if (guesses < workers)
    workers = static_cast<unsigned>(guesses);
  std::vector<Best> partial(workers);
  auto work = [&](unsigned w) {
    for (std::uint64_t mask = w; mask < guesses; mask += workers)
      evaluate(mask, partial[w]);
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back(work, w);
    for (auto &t : pool)
      t.join();
  }
  Best best;
  for (auto &p : partial)
    if (p.value > best.value || (p.value == best.value && p.mask < best.mask))
      best = std::move(p);

  SolveResult res;
  res.optimum = best.value;
  for (std::size_t i = 0; i < cover.size(); ++i)
    if (best.mask >> i & 1)
      res.witness.push_back(cover[i]);
  for (std::size_t c = 0; c < base_classes.size(); ++c)
    for (int j = 0; j < best.counts[c]; ++j)
      res.witness.push_back(base_classes[c].members[static_cast<std::size_t>(j)]);
  res.witness = normalized(std::move(res.witness));
  return res;
}

} // namespace harmless
