#include "harmless/gadgets.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "harmless/solvers.hpp"

namespace harmless {

void MccInstance::normalize() {
  if (k < 0 || n < 0)
    throw std::invalid_argument("negative multicoloured clique dimensions");
  for (auto &e : edges) {
    if (e.colour_a == e.colour_b)
      throw std::invalid_argument("intra-class edge in colour " + std::to_string(e.colour_a + 1));
    for (auto [c, s] : {std::pair{e.colour_a, e.index_a}, std::pair{e.colour_b, e.index_b}})
      if (c < 0 || c >= k || s < 0 || s >= n)
        throw std::invalid_argument("edge endpoint out of range");
    if (e.colour_a > e.colour_b) {
      std::swap(e.colour_a, e.colour_b);
      std::swap(e.index_a, e.index_b);
    }
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw std::invalid_argument("duplicate edge in multicoloured clique instance");
}

std::size_t MccInstance::pair_edges(int i, int j) const {
  return static_cast<std::size_t>(std::count_if(edges.begin(), edges.end(), [&](const MccEdge &e) {
    return e.colour_a == i && e.colour_b == j;
  }));
}

MccInstance mcc_from_classes(const std::vector<int> &class_sizes, std::vector<MccEdge> edges) {
  MccInstance mcc;
  mcc.k = static_cast<int>(class_sizes.size());
  mcc.n = class_sizes.empty() ? 0 : class_sizes.front();
  for (int size : class_sizes)
    if (size != mcc.n)
      throw std::invalid_argument("colour classes must all have the same size");
  mcc.edges = std::move(edges);
  mcc.normalize();
  return mcc;
}

MccInstance load_mcc(std::istream &in) {
  MccInstance mcc;
  std::string text;
  int line = 0;
  bool have_header = false;
  while (std::getline(in, text)) {
    ++line;
    std::istringstream fields(text);
    std::string tag;
    if (!(fields >> tag) || tag == "c")
      continue;
    if (tag == "p") {
      std::string kind;
      if (have_header || !(fields >> kind >> mcc.k >> mcc.n) || kind != "mcc" || mcc.k < 0 || mcc.n < 0)
        throw ParseError(line, "header must read 'p mcc <k> <n>'");
      have_header = true;
    } else if (tag == "e") {
      if (!have_header)
        throw ParseError(line, "edge before header");
      MccEdge e;
      if (!(fields >> e.colour_a >> e.index_a >> e.colour_b >> e.index_b))
        throw ParseError(line, "edge must read 'e <i> <s> <j> <t>'");
      --e.colour_a, --e.index_a, --e.colour_b, --e.index_b;
      if (e.colour_a == e.colour_b)
        throw ParseError(line, "intra-class edge");
      if (e.colour_a < 0 || e.colour_a >= mcc.k || e.colour_b < 0 || e.colour_b >= mcc.k ||
          e.index_a < 0 || e.index_a >= mcc.n || e.index_b < 0 || e.index_b >= mcc.n)
        throw ParseError(line, "edge endpoint out of range");
      mcc.edges.push_back(e);
    } else {
      throw ParseError(line, "unknown line tag '" + tag + "'");
    }
  }
  if (!have_header)
    throw ParseError(line, "missing 'p mcc' header");
  try {
    mcc.normalize();
  } catch (const std::invalid_argument &e) {
    throw ParseError(line, e.what());
  }
  return mcc;
}

void save_mcc(const MccInstance &mcc, std::ostream &out) {
  out << "p mcc " << mcc.k << ' ' << mcc.n << '\n';
  for (const auto &e : mcc.edges)
    out << "e " << e.colour_a + 1 << ' ' << e.index_a + 1 << ' ' << e.colour_b + 1 << ' ' << e.index_b + 1
        << '\n';
}

MccInstance load_mcc_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open " + path);
  return load_mcc(in);
}

std::optional<std::vector<int>> find_multicoloured_clique(const MccInstance &mcc) {
  const auto kn = static_cast<std::size_t>(mcc.k) * static_cast<std::size_t>(mcc.n);
  std::vector<char> adj(kn * kn, 0);
  auto id = [&](int c, int s) { return static_cast<std::size_t>(c) * static_cast<std::size_t>(mcc.n) + static_cast<std::size_t>(s); };
  for (const auto &e : mcc.edges) {
    auto a = id(e.colour_a, e.index_a), b = id(e.colour_b, e.index_b);
    adj[a * kn + b] = adj[b * kn + a] = 1;
  }
  std::vector<int> pick(static_cast<std::size_t>(mcc.k), -1);
  auto extend = [&](auto &self, int colour) -> bool {
    if (colour == mcc.k)
      return true;
    for (int s = 0; s < mcc.n; ++s) {
      bool ok = true;
      for (int c = 0; c < colour && ok; ++c)
        ok = adj[id(c, pick[static_cast<std::size_t>(c)]) * kn + id(colour, s)];
      if (!ok)
        continue;
      pick[static_cast<std::size_t>(colour)] = s;
      if (self(self, colour + 1))
        return true;
    }
    return false;
  };
  if (mcc.k == 0 || mcc.n == 0 || !extend(extend, 0))
    return std::nullopt;
  return pick;
}

const char *to_string(GadgetKind kind) {
  switch (kind) {
  case GadgetKind::Selection: return "selection";
  case GadgetKind::Port: return "port";
  case GadgetKind::Test: return "test";
  case GadgetKind::Apex: return "apex";
  case GadgetKind::Global: return "global";
  }
  return "?";
}

const char *to_string(Role role) {
  switch (role) {
  case Role::Light: return "light";
  case Role::Dark: return "dark";
  case Role::Xor: return "xor";
  case Role::PortPlus: return "port-plus";
  case Role::PortMinus: return "port-minus";
  case Role::Apex: return "apex";
  case Role::ForbiddenHub: return "a_F";
  case Role::ForbiddenPartner: return "b_F";
  }
  return "?";
}

const PairGadgets &ReductionOutput::pair(int i, int j) const {
  for (const auto &p : pairs)
    if (p.i == i && p.j == j)
      return p;
  throw std::invalid_argument("no port gadget for colour pair");
}

long long reduction_target_size(long long k, long long n, long long m) {
  if (k < 2)
    throw std::invalid_argument("reduction needs at least two colours");
  if (n < 1 || m < 0)
    throw std::invalid_argument("reduction needs n >= 1 and m >= 0");
  return k * (k - 1) / 2 * (n - 1) + k * n + m;
}

namespace {

class Builder {
public:
  Vertex add(VertexRole role, Threshold t) {
    roles.push_back(role);
    thresholds.push_back(t);
    return static_cast<Vertex>(roles.size() - 1);
  }
  void link(Vertex u, Vertex v) { edges.emplace_back(u, v); }

  std::vector<VertexRole> roles;
  std::vector<Threshold> thresholds;
  std::vector<Edge> edges;
};

// Lights and darks never have a selectable neighbour, so their own threshold is
// never tested; 1 is the smallest legal value.
constexpr Threshold kSelectableThreshold = 1;
constexpr Threshold kXorThreshold = 2;

} // namespace

ReductionOutput build_reduction(const MccInstance &source) {
  MccInstance mcc = source;
  mcc.normalize();
  const int k = mcc.k;
  const auto m = static_cast<long long>(mcc.edges.size());
  if (mcc.n < 1)
    throw std::invalid_argument("colour classes must be non-empty");
  // With one vertex per colour an edgeless pair costs nothing in the count, so the
  // classes are padded with an isolated vertex to keep such instances NO.
  bool some_pair_empty = false;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      some_pair_empty = some_pair_empty || mcc.pair_edges(i, j) == 0;
  const int n = mcc.n == 1 && some_pair_empty ? 2 : mcc.n;

  ReductionOutput out;
  out.k = k;
  out.n = n;
  out.m = static_cast<int>(m);
  out.target = static_cast<int>(reduction_target_size(k, n, m));
  const Threshold port_t = n + 1;
  Builder b;

  auto xor_link = [&](Vertex xv, Vertex u, Vertex v) {
    b.link(xv, u);
    b.link(xv, v);
  };

  for (int i = 0; i < k; ++i) {
    SelectionGadget sel;
    for (int s = 0; s < n; ++s)
      sel.lights.push_back(b.add({GadgetKind::Selection, Role::Light, false, i, -1, -1, -1, -1, s}, kSelectableThreshold));
    for (int s = 0; s < n; ++s)
      sel.darks.push_back(b.add({GadgetKind::Selection, Role::Dark, false, i, -1, -1, -1, -1, s}, kSelectableThreshold));
    for (int s = 0; s < n; ++s) {
      Vertex xv = b.add({GadgetKind::Selection, Role::Xor, true, i, -1, -1, -1, -1, s}, kXorThreshold);
      sel.xors.push_back(xv);
      xor_link(xv, sel.lights[static_cast<std::size_t>(s)], sel.darks[static_cast<std::size_t>(s)]);
    }
    out.selection.push_back(std::move(sel));
  }

  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      PairGadgets pg;
      pg.i = i;
      pg.j = j;
      auto port = [&](Role role, int side) {
        return b.add({GadgetKind::Port, role, true, side, i, j, -1, -1, -1}, port_t);
      };
      pg.plus_i = port(Role::PortPlus, i);
      pg.minus_i = port(Role::PortMinus, i);
      pg.plus_j = port(Role::PortPlus, j);
      pg.minus_j = port(Role::PortMinus, j);
      const auto &si = out.selection[static_cast<std::size_t>(i)];
      const auto &sj = out.selection[static_cast<std::size_t>(j)];
      for (int s = 0; s < n; ++s) {
        b.link(pg.plus_i, si.lights[static_cast<std::size_t>(s)]);
        b.link(pg.minus_i, si.darks[static_cast<std::size_t>(s)]);
        b.link(pg.plus_j, sj.lights[static_cast<std::size_t>(s)]);
        b.link(pg.minus_j, sj.darks[static_cast<std::size_t>(s)]);
      }

      for (const auto &e : mcc.edges) {
        if (e.colour_a != i || e.colour_b != j)
          continue;
        TestGadget tg;
        tg.x = e.index_a;
        tg.y = e.index_b;
        for (int s = 0; s < n; ++s)
          tg.lights.push_back(b.add({GadgetKind::Test, Role::Light, false, -1, i, j, tg.x, tg.y, s}, kSelectableThreshold));
        tg.dark = b.add({GadgetKind::Test, Role::Dark, false, -1, i, j, tg.x, tg.y, -1}, kSelectableThreshold);
        for (int s = 0; s < n; ++s) {
          Vertex xv = b.add({GadgetKind::Test, Role::Xor, true, -1, i, j, tg.x, tg.y, s}, kXorThreshold);
          tg.xors.push_back(xv);
          xor_link(xv, tg.lights[static_cast<std::size_t>(s)], tg.dark);
        }
        // Source indices are 1-based in the wiring: p+ takes the first n - x lights,
        // p- the last x.
        auto wire = [&](Vertex plus, Vertex minus, int x) {
          for (int s = 0; s < n; ++s)
            b.link(s < n - x ? plus : minus, tg.lights[static_cast<std::size_t>(s)]);
        };
        wire(pg.plus_i, pg.minus_i, tg.x + 1);
        wire(pg.plus_j, pg.minus_j, tg.y + 1);
        pg.tests.push_back(std::move(tg));
      }

      pg.apex = b.add({GadgetKind::Apex, Role::Apex, true, -1, i, j, -1, -1, -1}, port_t);
      for (const auto &tg : pg.tests)
        for (Vertex l : tg.lights)
          b.link(pg.apex, l);
      if (pg.tests.empty())
        out.empty_pairs.emplace_back(i, j);
      out.pairs.push_back(std::move(pg));
    }

  out.a_f = b.add({GadgetKind::Global, Role::ForbiddenHub, false}, 1);
  out.b_f = b.add({GadgetKind::Global, Role::ForbiddenPartner, false}, 1);
  for (std::size_t v = 0; v < b.roles.size(); ++v)
    if (b.roles[v].forbidden)
      b.link(out.a_f, static_cast<Vertex>(v));
  b.link(out.a_f, out.b_f);

  out.h.graph = Graph(b.roles.size(), b.edges);
  out.h.thresholds = std::move(b.thresholds);
  out.h.k = out.target;
  out.roles = std::move(b.roles);
  out.modulator = modulator_set(out);
  return out;
}

VertexSet construct_clique_solution(const ReductionOutput &out, std::span<const int> clique) {
  const int k = out.k, n = out.n;
  if (static_cast<int>(clique.size()) != k)
    throw std::invalid_argument("clique must name one vertex per colour");
  for (int x : clique)
    if (x < 0 || x >= n)
      throw std::invalid_argument("clique index out of range");

  VertexSet s;
  for (int i = 0; i < k; ++i) {
    const auto &sel = out.selection[static_cast<std::size_t>(i)];
    const int x = clique[static_cast<std::size_t>(i)] + 1;
    for (int t = 0; t < x; ++t)
      s.push_back(sel.lights[static_cast<std::size_t>(t)]);
    for (int t = x; t < n; ++t)
      s.push_back(sel.darks[static_cast<std::size_t>(t)]);
  }
  for (const auto &pg : out.pairs) {
    const int xi = clique[static_cast<std::size_t>(pg.i)], xj = clique[static_cast<std::size_t>(pg.j)];
    bool found = false;
    for (const auto &tg : pg.tests) {
      if (tg.x == xi && tg.y == xj) {
        found = true;
        s.insert(s.end(), tg.lights.begin(), tg.lights.end());
      } else {
        s.push_back(tg.dark);
      }
    }
    if (!found)
      throw std::invalid_argument("indices do not form a multicoloured clique");
  }
  return normalized(std::move(s));
}

VertexSet modulator_set(const ReductionOutput &out) {
  VertexSet mod;
  for (const auto &pg : out.pairs) {
    mod.insert(mod.end(), {pg.plus_i, pg.minus_i, pg.plus_j, pg.minus_j, pg.apex});
  }
  mod.push_back(out.a_f);
  return normalized(std::move(mod));
}

Graph delete_vertices(const Graph &g, std::span<const Vertex> gone) {
  auto removed = to_mask(g.num_vertices(), gone);
  std::vector<Vertex> keep;
  for (std::size_t v = 0; v < g.num_vertices(); ++v)
    if (!removed[v])
      keep.push_back(static_cast<Vertex>(v));
  return g.induced(keep);
}

bool is_2_spider_forest(const Graph &g) {
  const auto n = g.num_vertices();
  std::vector<int> comp(n, -1);
  BoundedBfs bfs(n);
  for (std::size_t root = 0; root < n; ++root) {
    if (comp[root] >= 0)
      continue;
    std::vector<Vertex> members;
    std::size_t degree_sum = 0;
    for (auto [v, d] : bfs.run(g, static_cast<Vertex>(root), static_cast<int>(n))) {
      comp[static_cast<std::size_t>(v)] = static_cast<int>(root);
      members.push_back(v);
      degree_sum += g.degree(v);
    }
    if (degree_sum / 2 != members.size() - 1)
      return false;
    bool has_centre = false;
    for (Vertex c : members) {
      const auto &ball = bfs.run(g, c, 2);
      if (ball.size() != members.size())
        continue;
      has_centre = std::all_of(ball.begin(), ball.end(), [&](const BoundedBfs::Reached &x) {
        return (x.dist == 2 && g.degree(x.vertex) == 1) || (x.dist == 1 && g.degree(x.vertex) <= 2) ||
               x.dist == 0;
      });
      if (has_centre)
        break;
    }
    if (!has_centre)
      return false;
  }
  return true;
}

VerifyReport verify_reduction(const MccInstance &mcc, std::size_t cap) {
  auto out = build_reduction(mcc);
  VerifyReport rep;
  rep.k = out.k;
  rep.n = out.n;
  rep.m = out.m;
  rep.target = out.target;
  rep.empty_pairs = out.empty_pairs;
  if (auto clique = find_multicoloured_clique(mcc)) {
    rep.clique_exists = true;
    rep.clique = *clique;
  }
  BruteForceOptions options;
  options.cap = cap;
  auto solved = brute_force_max(out.h, options);
  rep.optimum = solved.optimum;
  rep.witness = solved.witness;
  rep.forbidden_in_witness = std::any_of(rep.witness.begin(), rep.witness.end(), [&](Vertex v) {
    return out.roles[static_cast<std::size_t>(v)].never_selectable();
  });
  rep.equivalent = !rep.forbidden_in_witness && rep.clique_exists == (rep.optimum >= rep.target);
  return rep;
}

} // namespace harmless
