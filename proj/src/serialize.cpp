#include "harmless/serialize.hpp"

namespace harmless {

const char *version() noexcept { return HARMLESS_VERSION; }

namespace {

json distance(int d) { return d == kInfinity ? json(nullptr) : json(d); }

json pairs_to_json(const std::vector<std::pair<int, int>> &pairs) {
  json out = json::array();
  for (auto [i, j] : pairs)
    out.push_back({i, j});
  return out;
}

} // namespace

json to_json(const SolveResult &result) {
  return {{"optimum", result.optimum}, {"witness", result.witness}, {"nodes", result.nodes}};
}

json to_json(const DominationResult &result) {
  return {{"radius", result.radius},
          {"dominators", result.dominators},
          {"scattered", result.scattered},
          {"dominating_size", result.dominators.size()},
          {"scattered_size", result.scattered.size()}};
}

json to_json(const Waterlily &lily) {
  return {{"roots", lily.roots}, {"centres", lily.centres}, {"radius", lily.radius}, {"depth", lily.depth}};
}

json to_json(const WaterlilyReport &report) {
  return {{"dominators", report.dominators},
          {"closure", report.closure},
          {"remainder", report.remainder},
          {"profile_class", report.profile_class},
          {"hubs", report.hubs},
          {"scattered", report.scattered},
          {"dominated", report.dominated},
          {"roots", report.roots},
          {"centres", report.centres},
          {"scatter_rounds", report.scatter_rounds},
          {"failed_stage", report.failed_stage.empty() ? json(nullptr) : json(report.failed_stage)}};
}

json to_json(const KernelReport &report) {
  json steps = json::array();
  for (const auto &s : report.steps)
    steps.push_back({{"rule", s.rule}, {"vertex", s.label}, {"graph_size", s.graph_size}, {"core_size", s.core_size}});
  json doc = {{"p", report.p},
              {"graph_before", report.graph_before},
              {"graph_after", report.graph_after},
              {"core_before", report.core_before},
              {"core_after", report.core_after},
              {"early_yes", report.early_yes},
              {"steps", std::move(steps)}};
  if (report.early_yes)
    doc["certificate"] = report.certificate;
  if (!report.stuck_reason.empty())
    doc["stuck_reason"] = report.stuck_reason;
  return doc;
}

json to_json(const VerifyReport &report) {
  return {{"k", report.k},
          {"n", report.n},
          {"m", report.m},
          {"clique_exists", report.clique_exists},
          {"clique", report.clique},
          {"target", report.target},
          {"optimum", report.optimum},
          {"witness", report.witness},
          {"forbidden_in_witness", report.forbidden_in_witness},
          {"empty_pairs", pairs_to_json(report.empty_pairs)},
          {"equivalent", report.equivalent}};
}

json to_json(const VertexRole &role) {
  json doc = {{"gadget", to_string(role.gadget)}, {"role", to_string(role.role)}, {"forbidden", role.forbidden}};
  if (role.colour >= 0)
    doc["colour"] = role.colour;
  if (role.pair_i >= 0)
    doc["pair"] = {role.pair_i, role.pair_j};
  if (role.edge_x >= 0)
    doc["edge"] = {role.edge_x, role.edge_y};
  if (role.index >= 0)
    doc["index"] = role.index;
  return doc;
}

json to_json(const ProjectionProfile &profile) {
  json dist = json::array();
  for (int d : profile.dist)
    dist.push_back(distance(d));
  return {{"targets", profile.targets}, {"dist", std::move(dist)}};
}

json roles_to_json(const ReductionOutput &out) {
  json roles = json::array();
  for (std::size_t v = 0; v < out.roles.size(); ++v) {
    auto entry = to_json(out.roles[v]);
    entry["vertex"] = v;
    entry["threshold"] = out.h.thresholds[v];
    roles.push_back(std::move(entry));
  }
  return {{"format", "harmless-roles"},
          {"k", out.k},
          {"n", out.n},
          {"m", out.m},
          {"target", out.target},
          {"modulator", out.modulator},
          {"a_f", out.a_f},
          {"b_f", out.b_f},
          {"empty_pairs", pairs_to_json(out.empty_pairs)},
          {"roles", std::move(roles)}};
}

} // namespace harmless
