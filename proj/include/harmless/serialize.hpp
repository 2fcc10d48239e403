#pragma once

#include <json.hpp>

#include "harmless/gadgets.hpp"
#include "harmless/kernel.hpp"
#include "harmless/solvers.hpp"
#include "harmless/sparsity.hpp"

namespace harmless {

using nlohmann::json;

const char *version() noexcept;

json to_json(const SolveResult &result);
json to_json(const DominationResult &result);
json to_json(const Waterlily &lily);
json to_json(const WaterlilyReport &report);
json to_json(const KernelReport &report);
json to_json(const VerifyReport &report);
json to_json(const VertexRole &role);
json to_json(const ProjectionProfile &profile);

/// Role registry of a reduction: one entry per vertex of H, plus modulator and target.
json roles_to_json(const ReductionOutput &out);

} // namespace harmless
