#include "meanmap/trace_io.hpp"

#include "text.hpp"

namespace meanmap {

std::string trace_to_csv(const IterationTrace& trace) {
  const std::size_t p = trace.steps.empty() ? 0 : trace.steps.front().x.size();
  std::string out = "step";
  for (std::size_t i = 1; i <= p; ++i) out += ",x" + std::to_string(i);
  out += ",diameter\n";
  for (std::size_t k = 0; k < trace.steps.size(); ++k) {
    out += std::to_string(k);
    for (double x : trace.steps[k].x) out += "," + detail::format_double(x);
    out += "," + detail::format_double(trace.steps[k].diameter) + "\n";
  }
  return out;
}

nlohmann::ordered_json trace_to_json(const IterationTrace& trace) {
  nlohmann::ordered_json steps = nlohmann::ordered_json::array();
  for (std::size_t k = 0; k < trace.steps.size(); ++k) {
    steps.push_back({{"step", k},
                     {"x", trace.steps[k].x},
                     {"diameter", trace.steps[k].diameter}});
  }
  return {{"mapping", trace.mapping_id}, {"steps", std::move(steps)}};
}

nlohmann::ordered_json estimate_to_json(const MeanTypeMapping& m,
                                        std::span<const double> v,
                                        const GaussOptions& options,
                                        const InvariantEstimate& estimate,
                                        bool include_trace) {
  nlohmann::ordered_json doc;
  doc["mapping"] = m.id();
  doc["v"] = std::vector<double>(v.begin(), v.end());
  doc["tol"] = options.tol;
  doc["max_iter"] = options.max_iter;
  doc["readout"] = to_string(options.readout);
  doc["value"] = estimate.value;
  doc["steps"] = estimate.steps;
  doc["final_diameter"] = estimate.final_diameter;
  doc["status"] = to_string(estimate.status);
  if (include_trace && estimate.trace) doc["trace"] = trace_to_json(*estimate.trace);
  return doc;
}

}  // namespace meanmap
