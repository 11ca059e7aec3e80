#include "loopkit/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "loopkit/constants.hpp"
#include "loopkit/tline.hpp"

namespace loopkit::config {

namespace {

[[noreturn]] void fail(const std::string& message) {
  throw std::invalid_argument("config: " + message);
}

std::string trim(const std::string& text) {
  const auto begin = text.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return {};
  const auto end = text.find_last_not_of(" \t\r");
  return text.substr(begin, end - begin + 1);
}

struct KeyValue {
  std::string key;
  std::string value;
  int line = 0;
};

struct Section {
  std::string kind;   // "loop", "feed", "sweep", "tolerances", "output"
  std::string name;   // empty for the singleton sections
  int line = 0;
  std::vector<KeyValue> entries;

  std::string label() const {
    return kind + (name.empty() ? "" : " " + name);
  }
};

// Typed view over one section's entries with consumption tracking, so that
// unknown keys can be reported after the known ones are read.
class Reader {
 public:
  explicit Reader(const Section& section) : section_(section) {
    used_.assign(section.entries.size(), false);
  }

  [[noreturn]] void fail_key(const std::string& key,
                             const std::string& message) const {
    fail("[" + section_.label() + "]: key '" + key + "': " + message);
  }

  bool has(const std::string& key) const { return find(key) != nullptr; }

  std::optional<std::string> text(const std::string& key) {
    const KeyValue* kv = find(key);
    if (!kv) return std::nullopt;
    used_[static_cast<std::size_t>(kv - section_.entries.data())] = true;
    return kv->value;
  }

  std::optional<double> number(const std::string& key) {
    const auto raw = text(key);
    if (!raw) return std::nullopt;
    double value = 0.0;
    const char* begin = raw->data();
    const char* end = begin + raw->size();
    const auto result = std::from_chars(begin, end, value);
    if (result.ec != std::errc{} || result.ptr != end)
      fail_key(key, "expected a number, got '" + *raw + "'");
    return value;
  }

  double require_number(const std::string& key) {
    const auto value = number(key);
    if (!value) fail("[" + section_.label() + "]: missing key '" + key + "'");
    return *value;
  }

  double number_or(const std::string& key, double fallback) {
    return number(key).value_or(fallback);
  }

  std::optional<int> integer(const std::string& key) {
    const auto raw = text(key);
    if (!raw) return std::nullopt;
    int value = 0;
    const char* begin = raw->data();
    const char* end = begin + raw->size();
    const auto result = std::from_chars(begin, end, value);
    if (result.ec != std::errc{} || result.ptr != end)
      fail_key(key, "expected an integer, got '" + *raw + "'");
    return value;
  }

  bool boolean_or(const std::string& key, bool fallback) {
    const auto raw = text(key);
    if (!raw) return fallback;
    if (*raw == "true" || *raw == "1") return true;
    if (*raw == "false" || *raw == "0") return false;
    fail_key(key, "expected true or false, got '" + *raw + "'");
  }

  // Every entry must have been consumed by now.
  void finish() const {
    for (std::size_t i = 0; i < used_.size(); ++i) {
      if (!used_[i])
        fail("[" + section_.label() + "]: unknown key '" +
             section_.entries[i].key + "' (line " +
             std::to_string(section_.entries[i].line) + ")");
    }
  }

 private:
  const KeyValue* find(const std::string& key) const {
    for (const auto& kv : section_.entries)
      if (kv.key == key) return &kv;
    return nullptr;
  }

  const Section& section_;
  std::vector<bool> used_;
};

std::vector<Section> split_sections(const std::string& text) {
  std::vector<Section> sections;
  std::istringstream stream(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(stream, raw)) {
    ++line_no;
    const auto comment = raw.find_first_of("#;");
    if (comment != std::string::npos) raw.erase(comment);
    const std::string line = trim(raw);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']')
        fail("line " + std::to_string(line_no) + ": unterminated section header");
      const std::string inside = trim(line.substr(1, line.size() - 2));
      const auto space = inside.find_first_of(" \t");
      Section section;
      section.line = line_no;
      if (space == std::string::npos) {
        section.kind = inside;
      } else {
        section.kind = inside.substr(0, space);
        section.name = trim(inside.substr(space + 1));
      }
      const bool named = section.kind == "loop" || section.kind == "feed" ||
                         section.kind == "sweep";
      const bool singleton =
          section.kind == "tolerances" || section.kind == "output";
      if (!named && !singleton)
        fail("line " + std::to_string(line_no) + ": unknown section '[" +
             inside + "]'; expected loop, feed, sweep, tolerances, or output");
      if (named && section.name.empty())
        fail("line " + std::to_string(line_no) + ": section '[" +
             section.kind + "]' needs a name");
      if (singleton && !section.name.empty())
        fail("line " + std::to_string(line_no) + ": section '[" +
             section.kind + "]' takes no name");
      sections.push_back(std::move(section));
      continue;
    }

    const auto equals = line.find('=');
    if (equals == std::string::npos)
      fail("line " + std::to_string(line_no) + ": expected 'key = value'");
    if (sections.empty())
      fail("line " + std::to_string(line_no) + ": key outside any section");
    KeyValue kv;
    kv.key = trim(line.substr(0, equals));
    kv.value = trim(line.substr(equals + 1));
    kv.line = line_no;
    if (kv.key.empty())
      fail("line " + std::to_string(line_no) + ": empty key");
    for (const auto& prior : sections.back().entries)
      if (prior.key == kv.key)
        fail("[" + sections.back().label() + "]: duplicate key '" + kv.key +
             "' (line " + std::to_string(line_no) + ")");
    sections.back().entries.push_back(std::move(kv));
  }
  return sections;
}

// Shared by loops and geometric feeds: reads kind + the keys that apply to
// it, rejecting keys belonging to the other kinds.
tline::CrossSection read_cross_section(Reader& reader,
                                       const std::string& label) {
  const auto kind = reader.text("kind");
  if (!kind) fail("[" + label + "]: missing key 'kind'");

  const auto forbid = [&](const char* key) {
    if (reader.has(key))
      fail("[" + label + "]: key '" + std::string(key) +
           "' does not apply to kind '" + *kind + "'");
  };

  if (*kind == "stripline") {
    forbid("substrate_height");
    forbid("inner_radius");
    forbid("outer_radius");
    tline::Stripline cs;
    cs.width = reader.require_number("width");
    cs.ground_spacing = reader.require_number("ground_spacing");
    cs.thickness = reader.require_number("thickness");
    return cs;
  }
  if (*kind == "microstrip") {
    forbid("ground_spacing");
    forbid("inner_radius");
    forbid("outer_radius");
    tline::Microstrip cs;
    cs.width = reader.require_number("width");
    cs.substrate_height = reader.require_number("substrate_height");
    cs.thickness = reader.require_number("thickness");
    return cs;
  }
  if (*kind == "coax") {
    forbid("width");
    forbid("ground_spacing");
    forbid("substrate_height");
    forbid("thickness");
    tline::Coax cs;
    cs.inner_radius = reader.require_number("inner_radius");
    cs.outer_radius = reader.require_number("outer_radius");
    return cs;
  }
  fail("[" + label + "]: unknown kind '" + *kind +
       "'; expected stripline, microstrip, or coax");
}

tline::Dielectric read_dielectric(Reader& reader) {
  tline::Dielectric diel;
  diel.eps_r = reader.number_or("eps_r", 1.0);
  diel.loss_tangent = reader.number_or("loss_tangent", 0.0);
  return diel;
}

tline::Conductor read_conductor(Reader& reader) {
  tline::Conductor cond;
  cond.conductivity = reader.number_or("conductivity", copper_conductivity);
  return cond;
}

LoopSpec read_loop(const Section& section) {
  Reader reader(section);
  LoopSpec spec;
  spec.name = section.name;
  spec.loop.cross_section = read_cross_section(reader, section.label());
  spec.loop.dielectric = read_dielectric(reader);
  spec.loop.conductor = read_conductor(reader);
  spec.loop.loop_radius = reader.require_number("loop_radius");

  const double slit_deg = reader.number_or("slit_angle_deg", 180.0);
  if (!(slit_deg > 0.0 && slit_deg < 360.0))
    reader.fail_key("slit_angle_deg", "must lie strictly between 0 and 360");
  spec.loop.slit_angle = slit_deg * pi / 180.0;

  const bool planar =
      !std::holds_alternative<tline::Coax>(spec.loop.cross_section);
  if (planar) {
    spec.loop.shield_width = reader.require_number("shield_width");
  } else if (reader.has("shield_width")) {
    reader.fail_key("shield_width", "does not apply to kind 'coax'");
  }

  spec.options.exact_stub = reader.boolean_or("exact_stub", false);
  spec.options.conductor_loss_uses_circumference =
      reader.boolean_or("conductor_loss_uses_circumference", false);
  spec.options.step_scale = reader.number_or("step_scale", 1e-4);
  if (const auto eval = reader.number("eval_frequency"))
    spec.options.eval_frequency = *eval;

  reader.finish();
  return spec;
}

FeedSpec read_feed(const Section& section) {
  Reader reader(section);
  FeedSpec spec;
  spec.name = section.name;
  spec.length = reader.require_number("length");

  const bool has_direct = reader.has("gamma_real") || reader.has("gamma_imag") ||
                          reader.has("z0_real") || reader.has("z0_imag");
  const bool has_geometry = reader.has("kind");
  if (has_direct && has_geometry)
    fail("[" + section.label() +
         "]: give either direct line constants or a cross-section, not both");
  if (!has_direct && !has_geometry)
    fail("[" + section.label() +
         "]: needs either gamma/z0 constants or a 'kind' cross-section");

  if (has_direct) {
    FeedSpec::Direct direct;
    direct.gamma = {reader.require_number("gamma_real"),
                    reader.require_number("gamma_imag")};
    direct.z0 = {reader.require_number("z0_real"),
                 reader.require_number("z0_imag")};
    spec.direct = direct;
  } else {
    FeedSpec::Geometric geo;
    geo.cross_section = read_cross_section(reader, section.label());
    geo.dielectric = read_dielectric(reader);
    geo.conductor = read_conductor(reader);
    spec.geometric = geo;
  }

  reader.finish();
  return spec;
}

SweepSpec read_sweep(const Section& section) {
  Reader reader(section);
  SweepSpec spec;
  spec.name = section.name;
  const auto loop = reader.text("loop");
  if (!loop) fail("[" + section.label() + "]: missing key 'loop'");
  spec.loop = *loop;
  spec.parameter = reader.text("parameter").value_or("width");
  if (spec.parameter != "width")
    reader.fail_key("parameter",
                    "unsupported sweep parameter '" + spec.parameter +
                        "'; only 'width' is available");
  const auto steps = reader.integer("steps");
  if (!steps) fail("[" + section.label() + "]: missing key 'steps'");
  spec.steps = *steps;
  if (spec.steps < 1) reader.fail_key("steps", "must be at least 1");
  spec.start = reader.require_number("start");
  spec.stop = reader.number_or("stop", spec.start);
  if (spec.steps > 1 && !(spec.stop > spec.start))
    reader.fail_key("stop", "must exceed start for a multi-point sweep");
  reader.finish();
  return spec;
}

}  // namespace

feedline::Line FeedSpec::line_at(double frequency) const {
  if (direct) return {direct->gamma, direct->z0, length};
  if (!geometric)
    throw std::logic_error("config: feed '" + name + "' has no description");
  const auto params =
      tline::analyze(geometric->cross_section, geometric->dielectric,
                     geometric->conductor, frequency);
  return {params.gamma, params.z0_complex, length};
}

std::vector<double> SweepSpec::grid() const {
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(steps));
  if (steps == 1) {
    values.push_back(start);
    return values;
  }
  for (int i = 0; i < steps; ++i)
    values.push_back(start + (stop - start) * i / (steps - 1));
  return values;
}

const LoopSpec* Project::find_loop(const std::string& name) const {
  for (const auto& spec : loops)
    if (spec.name == name) return &spec;
  return nullptr;
}

const FeedSpec* Project::find_feed(const std::string& name) const {
  for (const auto& spec : feeds)
    if (spec.name == name) return &spec;
  return nullptr;
}

const SweepSpec* Project::find_sweep(const std::string& name) const {
  for (const auto& spec : sweeps)
    if (spec.name == name) return &spec;
  return nullptr;
}

namespace {

template <typename T>
std::string join_names(const std::vector<T>& specs) {
  std::string out;
  for (const auto& spec : specs) {
    if (!out.empty()) out += ", ";
    out += spec.name;
  }
  return out.empty() ? "(none)" : out;
}

}  // namespace

std::string Project::loop_names() const { return join_names(loops); }
std::string Project::feed_names() const { return join_names(feeds); }
std::string Project::sweep_names() const { return join_names(sweeps); }

Project parse(const std::string& text) {
  Project project;
  for (const auto& section : split_sections(text)) {
    if (section.kind == "loop") {
      if (project.find_loop(section.name))
        fail("duplicate loop '" + section.name + "'");
      project.loops.push_back(read_loop(section));
    } else if (section.kind == "feed") {
      if (project.find_feed(section.name))
        fail("duplicate feed '" + section.name + "'");
      project.feeds.push_back(read_feed(section));
    } else if (section.kind == "sweep") {
      if (project.find_sweep(section.name))
        fail("duplicate sweep '" + section.name + "'");
      project.sweeps.push_back(read_sweep(section));
    } else if (section.kind == "tolerances") {
      Reader reader(section);
      project.tolerance_scale = reader.number_or("scale", 1.0);
      if (!(project.tolerance_scale > 0.0))
        reader.fail_key("scale", "must be positive");
      reader.finish();
    } else {  // output
      Reader reader(section);
      project.output_directory = reader.text("directory").value_or("");
      reader.finish();
    }
  }

  for (const auto& sweep : project.sweeps) {
    if (!project.find_loop(sweep.loop))
      fail("[sweep " + sweep.name + "]: references unknown loop '" +
           sweep.loop + "'; known loops: " + project.loop_names());
  }
  return project;
}

Project load(const std::string& path) {
  std::ifstream file(path);
  if (!file)
    throw std::invalid_argument("config: cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << file.rdbuf();
  try {
    return parse(buffer.str());
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

}  // namespace loopkit::config
