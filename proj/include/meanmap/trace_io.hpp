#pragma once

#include <string>

#include <json.hpp>

#include "meanmap/invariant.hpp"
#include "meanmap/mapping.hpp"

namespace meanmap {

/// Header "step,x1,...,xp,diameter", one row per step. Numbers use the
/// shortest round-trip representation.
std::string trace_to_csv(const IterationTrace& trace);

/// {"mapping": id, "steps": [{"step": k, "x": [...], "diameter": d}, ...]}
nlohmann::ordered_json trace_to_json(const IterationTrace& trace);

/// {mapping, v, tol, max_iter, value, steps, final_diameter, status}
/// plus "trace" when the estimate carries one and include_trace is set.
nlohmann::ordered_json estimate_to_json(const MeanTypeMapping& m,
                                        std::span<const double> v,
                                        const GaussOptions& options,
                                        const InvariantEstimate& estimate,
                                        bool include_trace);

}  // namespace meanmap
