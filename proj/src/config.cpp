#include "meanmap/config.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "text.hpp"

namespace meanmap {

namespace {

struct Field {
  std::string value;
  std::size_t line;
};

[[noreturn]] void field_error(const std::string& key, std::size_t line,
                              const std::string& message) {
  raise(ErrorKind::ParseError, "field '" + key + "' (line " +
                                   std::to_string(line) + "): " + message);
}

template <class Fn>
auto in_field(const std::string& key, const Field& field, Fn&& fn) {
  try {
    return fn(field.value);
  } catch (const Error& e) {
    field_error(key, field.line, e.detail());
  }
}

}  // namespace

MappingConfig parse_mapping_config(std::string_view text) {
  static const char* const kKnown[] = {"name",       "p",        "domain",
                                       "components", "sample_box", "function",
                                       "lipschitz"};
  std::map<std::string, Field> fields;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw.substr(0, raw.find('#'));
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      raise(ErrorKind::ParseError, "line " + std::to_string(line_no) +
                                       ": expected 'key = value', got '" + line + "'");
    }
    const std::string key = detail::lower(detail::trim(line.substr(0, eq)));
    if (std::find(std::begin(kKnown), std::end(kKnown), key) == std::end(kKnown)) {
      field_error(key, line_no, "unknown key");
    }
    if (fields.count(key)) field_error(key, line_no, "duplicate key");
    fields[key] = {detail::trim(line.substr(eq + 1)), line_no};
  }

  for (const char* required : {"p", "domain", "components"}) {
    if (!fields.count(required)) {
      raise(ErrorKind::ParseError, std::string("field '") + required + "': missing");
    }
  }

  const auto& p_field = fields.at("p");
  const long long p = in_field("p", p_field, [](const std::string& v) {
    return detail::parse_integer(v);
  });
  if (p < 2) field_error("p", p_field.line, "p must be >= 2");

  const Interval domain = in_field("domain", fields.at("domain"),
                                   [](const std::string& v) { return Interval::parse(v); });

  const auto& comp_field = fields.at("components");
  const auto tokens = detail::split_tokens(comp_field.value);
  if (tokens.size() != static_cast<std::size_t>(p)) {
    field_error("components", comp_field.line,
                "expected " + std::to_string(p) + " components, got " +
                    std::to_string(tokens.size()));
  }
  std::vector<MeanSpec> specs;
  for (const auto& token : tokens) {
    specs.push_back(in_field("components", comp_field, [&](const std::string&) {
      return MeanSpec::parse(token, static_cast<std::size_t>(p));
    }));
  }

  std::string name;
  if (fields.count("name")) name = fields.at("name").value;

  MappingConfig config{MeanTypeMapping(std::move(specs), domain, std::move(name)),
                       std::nullopt, std::nullopt};

  if (fields.count("sample_box")) {
    in_field("sample_box", fields.at("sample_box"), [&](const std::string& v) {
      const Interval box = Interval::parse(v);
      if (!box.bounded()) {
        raise(ErrorKind::ParseError, "sample_box must be bounded");
      }
      config.mapping.set_sample_box({box.lower(), box.upper()});
      return 0;
    });
  }
  if (fields.count("function")) config.function = fields.at("function").value;
  if (fields.count("lipschitz")) {
    config.lipschitz = in_field("lipschitz", fields.at("lipschitz"),
                                [](const std::string& v) { return detail::parse_real(v); });
    if (*config.lipschitz < 0.0) {
      field_error("lipschitz", fields.at("lipschitz").line, "must be nonnegative");
    }
  }
  return config;
}

MappingConfig load_mapping_config(const std::filesystem::path& path) {
  std::ifstream file(path);
  if (!file) {
    raise(ErrorKind::ParseError, "mapping file '" + path.string() + "' cannot be read");
  }
  std::stringstream buffer;
  buffer << file.rdbuf();
  try {
    return parse_mapping_config(buffer.str());
  } catch (const Error& e) {
    raise(e.kind(), path.filename().string() + ": " + e.detail());
  }
}

}  // namespace meanmap
