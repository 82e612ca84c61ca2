#include "meanmap/cli.hpp"

#include <cstdlib>
#include <sstream>

#include "meanmap/config.hpp"
#include "meanmap/decompose.hpp"
#include "meanmap/trace_io.hpp"
#include "text.hpp"

namespace meanmap::cli {

using json = nlohmann::ordered_json;

std::uint64_t default_seed() {
  if (const char* env = std::getenv(kSeedEnvVar)) {
    try {
      const long long seed = detail::parse_integer(env);
      if (seed >= 0) return static_cast<std::uint64_t>(seed);
    } catch (const Error&) {
    }
  }
  return kDefaultSeed;
}

const std::vector<std::string>& commands() {
  static const std::vector<std::string> names = {
      "mean-eval", "map-apply", "map-iterate", "contractive-probe", "n0",
      "invariant", "residual",  "uniqueness",  "decompose"};
  return names;
}

std::vector<double> parse_vector(std::string_view text) {
  std::vector<double> out;
  for (const auto& token : detail::split(text, ',')) {
    out.push_back(detail::parse_real(token));
  }
  return out;
}

OutputFormat parse_output(std::string_view text) {
  const std::string t = detail::lower(detail::trim(text));
  if (t == "human") return OutputFormat::Human;
  if (t == "json") return OutputFormat::Json;
  if (t == "csv") return OutputFormat::Csv;
  raise(ErrorKind::ParseError, "unknown output format '" + t + "'");
}

namespace {

/// Error attributed to one command-line field.
struct FieldError {
  std::string field;
  std::string message;
};

std::string fmt(double x) { return detail::format_double(x); }

std::string fmt_vector(std::span<const double> v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += fmt(v[i]);
  }
  return out + ")";
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

/// key,value rows for non-trace documents in CSV mode.
std::string flat_csv(const json& doc) {
  std::string out = "key,value\n";
  for (const auto& [key, value] : doc.items()) {
    std::string cell = value.is_string() ? value.get<std::string>() : value.dump();
    if (cell.find_first_of(",\"\n") != std::string::npos) {
      std::string quoted = "\"";
      for (char c : cell) {
        if (c == '"') quoted += '"';
        quoted += c;
      }
      cell = quoted + "\"";
    }
    out += key + "," + cell + "\n";
  }
  return out;
}

class Runner {
 public:
  explicit Runner(const RunConfig& config) : config_(config) {}

  RunResult run() {
    const auto& names = commands();
    if (std::find(names.begin(), names.end(), config_.command) == names.end()) {
      throw FieldError{"command", "unknown command '" + config_.command + "'"};
    }
    if (!(config_.tol > 0.0)) throw FieldError{"--tol", "must be > 0"};
    if (config_.max_iter < 1) throw FieldError{"--max-iter", "must be >= 1"};
    if (config_.cap < 1) throw FieldError{"--cap", "must be >= 1"};
    if (config_.samples < 1) throw FieldError{"--samples", "must be >= 1"};

    const std::string& c = config_.command;
    if (c == "mean-eval") return mean_eval();
    if (c == "map-apply") return apply_once();
    if (c == "map-iterate") return map_iterate();
    if (c == "contractive-probe") return contractive_probe();
    if (c == "n0") return n0();
    if (c == "invariant") return invariant();
    if (c == "residual") return residual();
    if (c == "uniqueness") return uniqueness();
    return decompose();
  }

 private:
  const MappingConfig& mapping_config() {
    if (!loaded_) {
      if (config_.mapping_file.empty()) {
        throw FieldError{"--mapping", "required for '" + config_.command + "'"};
      }
      try {
        loaded_ = load_mapping_config(config_.mapping_file);
      } catch (const Error& e) {
        throw FieldError{"--mapping", e.detail()};
      }
    }
    return *loaded_;
  }
  const MeanTypeMapping& mapping() { return mapping_config().mapping; }

  std::vector<double> vector_arg(std::optional<std::size_t> arity) {
    if (!config_.vector) {
      throw FieldError{"--vector", "required for '" + config_.command + "'"};
    }
    std::vector<double> v;
    try {
      v = parse_vector(*config_.vector);
    } catch (const Error& e) {
      throw FieldError{"--vector", e.detail()};
    }
    if (arity && v.size() != *arity) {
      throw FieldError{"--vector", "expected " + std::to_string(*arity) +
                                       " values (p), got " + std::to_string(v.size())};
    }
    return v;
  }

  GaussOptions gauss_options(Readout readout) const {
    GaussOptions options;
    options.tol = config_.tol;
    options.max_iter = config_.max_iter;
    options.readout = readout;
    options.stop = config_.relative ? StopRule::Relative : StopRule::Absolute;
    options.keep_trace = config_.trace;
    return options;
  }

  RunResult emit(const json& doc, const std::string& human, int code = kExitOk,
                 const std::optional<std::string>& csv = std::nullopt) const {
    RunResult result;
    result.exit_code = code;
    switch (config_.output) {
      case OutputFormat::Human: result.document = human; break;
      case OutputFormat::Json: result.document = dump(doc); break;
      case OutputFormat::Csv: result.document = csv.value_or(flat_csv(doc)); break;
    }
    return result;
  }

  RunResult mean_eval() {
    if (config_.mean) {
      const auto v = vector_arg(std::nullopt);
      const Interval domain =
          config_.mapping_file.empty() ? Interval::real_line() : mapping().domain();
      MeanSpec spec = [&] {
        try {
          return MeanSpec::parse(*config_.mean, v.size());
        } catch (const Error& e) {
          throw FieldError{"--mean", e.detail()};
        }
      }();
      const double value = eval_mean(spec, v, domain);
      json doc{{"mean", spec.to_string()}, {"domain", domain.to_string()},
               {"v", v}, {"value", value}};
      return emit(doc, fmt(value) + "\n");
    }
    const auto& m = mapping();
    const auto v = vector_arg(m.p());
    json components = json::array();
    std::string human;
    for (std::size_t i = 0; i < m.p(); ++i) {
      double value = 0.0;
      try {
        value = eval_mean(m.components()[i], v, m.domain());
      } catch (const Error& e) {
        throw e.with_component(i);
      }
      components.push_back({{"mean", m.components()[i].to_string()}, {"value", value}});
      human += m.components()[i].to_string() + ": " + fmt(value) + "\n";
    }
    json doc{{"mapping", m.id()}, {"v", v}, {"components", components}};
    return emit(doc, human);
  }

  RunResult apply_once() {
    const auto& m = mapping();
    const auto v = vector_arg(m.p());
    const Vector image = meanmap::map_apply(m, v);
    json doc{{"mapping", m.id()},
             {"v", v},
             {"result", image},
             {"diameter_before", diameter(v)},
             {"diameter_after", diameter(image)}};
    IterationTrace trace{m.id(), {{v, diameter(v)}, {image, diameter(image)}}};
    return emit(doc, fmt_vector(image) + "\n", kExitOk, trace_to_csv(trace));
  }

  RunResult map_iterate() {
    const auto& m = mapping();
    const auto v = vector_arg(m.p());
    const IterationTrace trace = iterate(m, v, config_.steps);
    std::string human;
    for (std::size_t k = 0; k < trace.steps.size(); ++k) {
      human += std::to_string(k) + "  " + fmt_vector(trace.steps[k].x) +
               "  diameter " + fmt(trace.steps[k].diameter) + "\n";
    }
    return emit(trace_to_json(trace), human, kExitOk, trace_to_csv(trace));
  }

  RunResult contractive_probe() {
    const auto& m = mapping();
    const ContractivityVerdict verdict =
        probe_contractivity(m, config_.samples, config_.seed);
    json doc{{"mapping", m.id()},
             {"samples", verdict.samples},
             {"seed", config_.seed},
             {"checked", verdict.checked},
             {"skipped", verdict.skipped},
             {"counterexample", verdict.counterexample_found()}};
    std::string human;
    if (verdict.witness) {
      const Vector image = meanmap::map_apply(m, *verdict.witness);
      doc["witness"] = *verdict.witness;
      doc["witness_image"] = image;
      doc["witness_diameter"] = diameter(*verdict.witness);
      doc["image_diameter"] = diameter(image);
      human = "counterexample " + fmt_vector(*verdict.witness) + " -> " +
              fmt_vector(image) + " (diameter " + fmt(diameter(*verdict.witness)) +
              " -> " + fmt(diameter(image)) + ")\n";
    } else {
      human = "no counterexample found in " + std::to_string(verdict.checked) +
              " checked samples (" + std::to_string(verdict.skipped) + " skipped)\n";
    }
    if (!verdict.errors.empty()) doc["errors"] = verdict.errors;
    return emit(doc, human, verdict.witness ? kExitNegative : kExitOk);
  }

  RunResult n0() {
    const auto& m = mapping();
    const auto v = vector_arg(m.p());
    try {
      const std::size_t n = find_n0(m, v, config_.cap);
      json doc{{"mapping", m.id()}, {"v", v}, {"cap", config_.cap}, {"n0", n}};
      if (config_.trace) doc["trace"] = trace_to_json(iterate(m, v, n));
      return emit(doc, std::to_string(n) + "\n", kExitOk,
                  config_.trace ? std::optional(trace_to_csv(iterate(m, v, n)))
                                : std::nullopt);
    } catch (const NotFoundWithinCap& e) {
      json doc{{"mapping", m.id()}, {"v", v}, {"cap", config_.cap},
               {"n0", nullptr}, {"status", "not_found_within_cap"}};
      if (config_.trace) doc["trace"] = trace_to_json(e.trace());
      return emit(doc,
                  "not found within cap " + std::to_string(config_.cap) + "\n",
                  kExitNegative,
                  config_.trace ? std::optional(trace_to_csv(e.trace())) : std::nullopt);
    }
  }

  RunResult invariant() {
    const auto& m = mapping();
    const auto v = vector_arg(m.p());
    const GaussOptions options = gauss_options(config_.readout);
    const InvariantEstimate est = gauss_iterate(m, v, options);
    const json doc = estimate_to_json(m, v, options, est, config_.trace);
    std::string human = "value " + fmt(est.value) + "\nsteps " +
                        std::to_string(est.steps) + "\nfinal_diameter " +
                        fmt(est.final_diameter) + "\nstatus " +
                        to_string(est.status) + "\n";
    std::optional<std::string> csv;
    if (config_.trace && est.trace) csv = trace_to_csv(*est.trace);
    return emit(doc, human, est.converged() ? kExitOk : kExitNegative, csv);
  }

  MeanFunction function_as_mean(const MeanTypeMapping& m) {
    const std::string text = *config_.function;
    try {
      InvariantFunction f =
          InvariantFunction::parse(text, m, gauss_options(config_.readout));
      return [f = std::move(f)](std::span<const double> v) { return f(v); };
    } catch (const Error& e) {
      throw FieldError{"--function", e.detail()};
    }
  }

  json probe_json(const ProbeReport& report, const std::string& label) const {
    json doc{{label, report.value},
             {"samples", report.samples},
             {"evaluated", report.evaluated},
             {"seed", config_.seed},
             {"threshold", config_.threshold}};
    if (report.worst) doc["worst"] = *report.worst;
    if (!report.errors.empty()) doc["errors"] = report.errors;
    return doc;
  }

  int probe_exit(const ProbeReport& report) const {
    return (report.value > config_.threshold || !report.errors.empty()) ? kExitNegative
                                                                        : kExitOk;
  }

  RunResult residual() {
    const auto& m = mapping();
    const MeanFunction k = config_.function
                               ? function_as_mean(m)
                               : MeanFunction(invariant_mean(m, gauss_options(config_.readout)));
    const ProbeReport report = invariance_residual(k, m, config_.samples, config_.seed);
    json doc{{"mapping", m.id()},
             {"k", config_.function.value_or("invariant")},
             {"tol", config_.tol}};
    doc.update(probe_json(report, "residual"));
    return emit(doc, "residual " + fmt(report.value) + "\n", probe_exit(report));
  }

  RunResult uniqueness() {
    const auto& m = mapping();
    const MeanFunction k1 = invariant_mean(m, gauss_options(Readout::Mid));
    const MeanFunction k2 = config_.function
                                ? function_as_mean(m)
                                : MeanFunction(invariant_mean(m, gauss_options(config_.readout)));
    const std::string k2_label = config_.function.value_or(
        "invariant (readout " + to_string(config_.readout) + ")");
    const ProbeReport report =
        uniqueness_probe(k1, k2, m.domain(), m.p(), config_.samples, config_.seed,
                         {.box = m.sample_box(), .stress = true});
    json doc{{"mapping", m.id()},
             {"k1", "invariant (readout mid)"},
             {"k2", k2_label},
             {"tol", config_.tol}};
    doc.update(probe_json(report, "max_difference"));
    return emit(doc, "max difference " + fmt(report.value) + "\n", probe_exit(report));
  }

  RunResult decompose() {
    const MappingConfig& cfg = mapping_config();
    const auto& m = cfg.mapping;
    const std::optional<std::string> text =
        config_.function ? config_.function : cfg.function;
    if (!text) {
      throw FieldError{"--function",
                       "decompose needs --function or a 'function' key in the mapping file"};
    }
    const GaussOptions options = gauss_options(Readout::Mid);
    InvariantFunction f = [&] {
      try {
        return InvariantFunction::parse(*text, m, options);
      } catch (const Error& e) {
        throw FieldError{"--function", e.detail()};
      }
    }();
    const DecompositionReport report = verify_decomposition(
        f, m, options, config_.samples, config_.seed, config_.threshold);
    json doc{{"fixture", report.fixture},
             {"invariance_residual", report.invariance_residual},
             {"decomposition_residual", report.decomposition_residual},
             {"samples", report.samples},
             {"tol", report.tol},
             {"K_steps",
              {{"min", report.k_steps.min},
               {"max", report.k_steps.max},
               {"mean", report.k_steps.mean}}}};
    doc["evaluated"] = report.evaluated;
    doc["seed"] = config_.seed;
    doc["threshold"] = config_.threshold;
    if (cfg.lipschitz) doc["lipschitz"] = *cfg.lipschitz;
    doc["flags"] = report.flags;
    if (!report.errors.empty()) doc["errors"] = report.errors;

    std::string human = "fixture " + report.fixture + "\ninvariance_residual " +
                        fmt(report.invariance_residual) + "\ndecomposition_residual " +
                        fmt(report.decomposition_residual) + "\nK steps min " +
                        std::to_string(report.k_steps.min) + " max " +
                        std::to_string(report.k_steps.max) + " mean " +
                        fmt(report.k_steps.mean) + "\n";
    for (const auto& flag : report.flags) human += "flag: " + flag + "\n";
    return emit(doc, human, report.flagged() ? kExitNegative : kExitOk);
  }

  const RunConfig& config_;
  std::optional<MappingConfig> loaded_;
};

}  // namespace

RunResult run(const RunConfig& config) {
  try {
    return Runner(config).run();
  } catch (const FieldError& e) {
    return {kExitError, "", "error: " + e.field + ": " + e.message + "\n"};
  } catch (const Error& e) {
    return {kExitError, "", std::string("error: ") + e.what() + "\n"};
  } catch (const std::exception& e) {
    return {kExitError, "", std::string("error: ") + e.what() + "\n"};
  }
}

}  // namespace meanmap::cli
