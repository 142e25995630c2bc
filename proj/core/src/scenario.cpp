#include "ancsim/scenario.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace ancsim {

using nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// Sectioned key/value text -> json tree
// ---------------------------------------------------------------------------

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// Comments start at a '#' or ';' that begins the line or follows whitespace.
std::string strip_comment(std::string_view line) {
  for (std::size_t i = 0; i < line.size(); ++i) {
    if ((line[i] == '#' || line[i] == ';') &&
        (i == 0 || std::isspace(static_cast<unsigned char>(line[i - 1])))) {
      return std::string(line.substr(0, i));
    }
  }
  return std::string(line);
}

json parse_scalar(const std::string& raw) {
  std::string s = trim(raw);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
    return json(s.substr(1, s.size() - 2));
  }
  if (s == "true") return json(true);
  if (s == "false") return json(false);
  if (s == "inf" || s == "+inf" || s == "-inf") return json(s);

  // Integer first so seeds and counts keep their exact value.
  if (!s.empty()) {
    char* end = nullptr;
    errno = 0;
    const long long ll = std::strtoll(s.c_str(), &end, 10);
    if (errno == 0 && end == s.c_str() + s.size()) return json(ll);
    errno = 0;
    const double d = std::strtod(s.c_str(), &end);
    if (errno == 0 && end == s.c_str() + s.size() && std::isfinite(d)) {
      return json(d);
    }
  }
  return json(s);
}

json parse_value(const std::string& raw, int line_no) {
  if (raw.find(',') == std::string::npos) return parse_scalar(raw);
  json arr = json::array();
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = raw.find(',', start);
    const std::string item =
        trim(raw.substr(start, comma == std::string::npos ? std::string::npos
                                                          : comma - start));
    if (item.empty()) {
      throw ConfigError("syntax error at line " + std::to_string(line_no) +
                        ": empty list element");
    }
    arr.push_back(parse_scalar(item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return arr;
}

json parse_ini(std::string_view text) {
  json root = json::object();
  json* section = &root;
  std::string section_path;
  std::set<std::string> seen_keys;  // "section.path\x1fkey"

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view raw_line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos
                                                      : nl - pos);
    pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
    ++line_no;

    const std::string line = trim(strip_comment(raw_line));
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("syntax error at line " + std::to_string(line_no) +
                          ": unterminated section header");
      }
      section_path = trim(line.substr(1, line.size() - 2));
      if (section_path.empty()) {
        throw ConfigError("syntax error at line " + std::to_string(line_no) +
                          ": empty section name");
      }
      section = &root;
      std::size_t start = 0;
      while (true) {
        const std::size_t dot = section_path.find('.', start);
        const std::string part = section_path.substr(
            start, dot == std::string::npos ? std::string::npos : dot - start);
        if (part.empty()) {
          throw ConfigError("syntax error at line " + std::to_string(line_no) +
                            ": malformed section name '" + section_path + "'");
        }
        json& child = (*section)[part];
        if (!child.is_object() && !child.is_null()) {
          throw ConfigError("syntax error at line " + std::to_string(line_no) +
                            ": section '" + section_path +
                            "' collides with an existing key");
        }
        if (child.is_null()) child = json::object();
        section = &child;
        if (dot == std::string::npos) break;
        start = dot + 1;
      }
      continue;
    }

    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("syntax error at line " + std::to_string(line_no) +
                        ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) {
      throw ConfigError("syntax error at line " + std::to_string(line_no) +
                        ": empty key");
    }
    const std::string tag = section_path + '\x1f' + key;
    if (!seen_keys.insert(tag).second) {
      throw ConfigError("syntax error at line " + std::to_string(line_no) +
                        ": duplicate key '" + key + "' in section [" +
                        (section_path.empty() ? "top level" : section_path) + "]");
    }
    if (section->contains(key) && (*section)[key].is_object()) {
      throw ConfigError("syntax error at line " + std::to_string(line_no) +
                        ": key '" + key + "' collides with a section");
    }
    (*section)[key] = parse_value(line.substr(eq + 1), line_no);
  }
  return root;
}

// ---------------------------------------------------------------------------
// Strict schema walk
// ---------------------------------------------------------------------------

class Walker {
public:
  explicit Walker(std::vector<std::string>* errors) : errors_(errors) {}

  void fail(const std::string& path, const std::string& msg) {
    errors_->push_back(path + ": " + msg);
  }

  /// Marks a key consumed and returns it, or nullptr when absent.
  const json* take(const json& obj, std::set<std::string>& used,
                   const std::string& key) {
    used.insert(key);
    const auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
  }

  void report_unknown(const json& obj, const std::set<std::string>& used,
                      const std::string& path) {
    for (const auto& [key, value] : obj.items()) {
      if (!used.contains(key)) {
        fail(path.empty() ? key : path + "." + key, "unknown key");
      }
    }
  }

  bool to_number(const json& v, double* out) {
    if (v.is_number()) {
      *out = v.get<double>();
      return true;
    }
    if (v.is_string()) {
      const std::string s = v.get<std::string>();
      if (s == "inf" || s == "+inf") {
        *out = std::numeric_limits<double>::infinity();
        return true;
      }
    }
    return false;
  }

  double number(const json& obj, std::set<std::string>& used,
                const std::string& key, const std::string& path, double dflt) {
    const json* v = take(obj, used, key);
    if (!v) return dflt;
    double out = dflt;
    if (!to_number(*v, &out)) fail(path, "expected a number");
    return out;
  }

  std::size_t count(const json& obj, std::set<std::string>& used,
                    const std::string& key, const std::string& path,
                    std::size_t dflt) {
    const json* v = take(obj, used, key);
    if (!v) return dflt;
    if (!v->is_number_integer() || v->get<long long>() < 0) {
      fail(path, "expected a non-negative integer");
      return dflt;
    }
    return static_cast<std::size_t>(v->get<long long>());
  }

  bool boolean(const json& obj, std::set<std::string>& used,
               const std::string& key, const std::string& path, bool dflt) {
    const json* v = take(obj, used, key);
    if (!v) return dflt;
    if (!v->is_boolean()) {
      fail(path, "expected true or false");
      return dflt;
    }
    return v->get<bool>();
  }

  std::string text(const json& obj, std::set<std::string>& used,
                   const std::string& key, const std::string& path,
                   const std::string& dflt) {
    const json* v = take(obj, used, key);
    if (!v) return dflt;
    if (!v->is_string()) {
      fail(path, "expected a string");
      return dflt;
    }
    return v->get<std::string>();
  }

  std::vector<double> taps(const json& obj, std::set<std::string>& used,
                           const std::string& key, const std::string& path,
                           std::vector<double> dflt) {
    const json* v = take(obj, used, key);
    if (!v) return dflt;
    std::vector<double> out;
    if (v->is_array()) {
      for (const auto& item : *v) {
        double d = 0.0;
        if (!item.is_number()) {
          fail(path, "expected a list of numbers");
          return dflt;
        }
        d = item.get<double>();
        out.push_back(d);
      }
    } else if (v->is_number()) {
      out.push_back(v->get<double>());
    } else {
      fail(path, "expected a list of numbers");
      return dflt;
    }
    if (out.empty()) {
      fail(path, "tap list must not be empty");
      return dflt;
    }
    for (double t : out) {
      if (!std::isfinite(t)) {
        fail(path, "taps must be finite");
        return dflt;
      }
    }
    return out;
  }

private:
  std::vector<std::string>* errors_;
};

NoiseSpec parse_noise(Walker& w, const json& obj, const std::string& path,
                      double sample_rate, std::uint64_t default_seed);

NoiseSpec parse_noise_body(Walker& w, const json& obj,
                           std::set<std::string>& used, const std::string& path,
                           double sample_rate, std::uint64_t default_seed) {
  NoiseSpec spec;
  spec.sample_rate = sample_rate;
  const std::string kind = w.text(obj, used, "kind", path + ".kind", "white");
  if (kind == "white") {
    WhiteNoiseSpec white;
    white.sigma = w.number(obj, used, "sigma", path + ".sigma", 1.0);
    white.seed = w.count(obj, used, "seed", path + ".seed", default_seed);
    if (!(white.sigma >= 0.0) || !std::isfinite(white.sigma)) {
      w.fail(path + ".sigma", "must be finite and >= 0");
    }
    spec.source = white;
  } else if (kind == "sine") {
    SineSpec sine;
    sine.frequency_hz = w.number(obj, used, "frequency", path + ".frequency", 500.0);
    sine.amplitude = w.number(obj, used, "amplitude", path + ".amplitude", 1.0);
    sine.phase_rad = w.number(obj, used, "phase", path + ".phase", 0.0);
    if (!(sine.frequency_hz >= 0.0 && sine.frequency_hz < sample_rate / 2.0)) {
      w.fail(path + ".frequency", "must lie in [0, sample_rate/2)");
    }
    spec.source = sine;
  } else if (kind == "bandlimited") {
    BandLimitedSpec band;
    band.sigma = w.number(obj, used, "sigma", path + ".sigma", 1.0);
    band.seed = w.count(obj, used, "seed", path + ".seed", default_seed);
    band.shaping = w.taps(obj, used, "shaping", path + ".shaping", {1.0});
    if (!(band.sigma >= 0.0) || !std::isfinite(band.sigma)) {
      w.fail(path + ".sigma", "must be finite and >= 0");
    }
    spec.source = band;
  } else if (kind == "mixture") {
    MixtureSpec mix;
    const json* comp = w.take(obj, used, "component");
    if (!comp || !comp->is_object() || comp->empty()) {
      w.fail(path + ".component", "mixture requires component.<index> subsections");
    } else {
      // Components are indexed subsections; seeds default to seed + 10 + index.
      std::vector<std::pair<long long, const json*>> ordered;
      for (const auto& [key, value] : comp->items()) {
        char* end = nullptr;
        const long long idx = std::strtoll(key.c_str(), &end, 10);
        if (end != key.c_str() + key.size() || idx < 0 || !value.is_object()) {
          w.fail(path + ".component." + key, "expected a numeric component index");
          continue;
        }
        ordered.emplace_back(idx, &value);
      }
      std::sort(ordered.begin(), ordered.end());
      for (const auto& [idx, value] : ordered) {
        mix.components.push_back(parse_noise(
            w, *value, path + ".component." + std::to_string(idx), sample_rate,
            default_seed + 10 + static_cast<std::uint64_t>(idx)));
      }
    }
    spec.source = std::move(mix);
  } else {
    w.fail(path + ".kind", "unknown noise kind '" + kind + "'");
  }
  return spec;
}

NoiseSpec parse_noise(Walker& w, const json& obj, const std::string& path,
                      double sample_rate, std::uint64_t default_seed) {
  std::set<std::string> used;
  NoiseSpec spec = parse_noise_body(w, obj, used, path, sample_rate, default_seed);
  w.report_unknown(obj, used, path);
  return spec;
}

InverseModelSpec parse_inverse(Walker& w, const json& obj, const std::string& path,
                               std::uint64_t default_seed) {
  std::set<std::string> used;
  InverseModelSpec spec;
  spec.length = w.count(obj, used, "length", path + ".length", 32);
  const json* delay = w.take(obj, used, "delay");
  if (delay) {
    if (!delay->is_number_integer() || delay->get<long long>() < 0) {
      w.fail(path + ".delay", "expected a non-negative integer");
    } else {
      spec.modeling_delay = static_cast<std::size_t>(delay->get<long long>());
    }
  }
  spec.mu = w.number(obj, used, "mu", path + ".mu", 0.01);
  spec.iterations = w.count(obj, used, "iterations", path + ".iterations", 200000);
  WhiteNoiseSpec excitation;
  excitation.sigma = w.number(obj, used, "sigma", path + ".sigma", 1.0);
  excitation.seed = w.count(obj, used, "seed", path + ".seed", default_seed);
  spec.excitation.source = excitation;
  w.report_unknown(obj, used, path);

  if (spec.length == 0) w.fail(path + ".length", "must be >= 1");
  if (spec.modeling_delay && *spec.modeling_delay >= spec.length && spec.length > 0) {
    w.fail(path + ".delay", "must be below the inverse length");
  }
  if (!(spec.mu > 0.0)) w.fail(path + ".mu", "must be positive");
  return spec;
}

Algorithm parse_algorithm(Walker& w, const std::string& name, const std::string& path) {
  for (Algorithm a :
       {Algorithm::none, Algorithm::fxlms, Algorithm::clipping_fxlms,
        Algorithm::leaky, Algorithm::olfxlms, Algorithm::olfxlms_online,
        Algorithm::two_grad, Algorithm::two_grad_momentum}) {
    if (name == algorithm_name(a)) return a;
  }
  w.fail(path, "unknown algorithm '" + name + "'");
  return Algorithm::none;
}

}  // namespace

const char* estimate_mode_name(EstimateMode m) {
  switch (m) {
    case EstimateMode::exact: return "exact";
    case EstimateMode::taps: return "taps";
    case EstimateMode::identify: return "identify";
  }
  return "unknown";
}

const char* saturation_kind_name(SaturationKind k) {
  switch (k) {
    case SaturationKind::none: return "none";
    case SaturationKind::hard_clip: return "hard-clip";
    case SaturationKind::scaled_tanh: return "scaled-tanh";
  }
  return "unknown";
}

const char* constraint_mode_name(ConstraintMode m) {
  return m == ConstraintMode::instantaneous_amplitude ? "instantaneous"
                                                      : "average-power";
}

const char* disturbance_source_name(DisturbanceSource s) {
  return s == DisturbanceSource::true_disturbance ? "true" : "reconstructed";
}

ScenarioConfig parse_scenario(std::string_view text) {
  // JSON documents start with '{'; everything else is sectioned text.
  json root;
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    try {
      root = json::parse(text);
    } catch (const json::parse_error& err) {
      throw ConfigError(std::string("syntax error: ") + err.what());
    }
    if (!root.is_object()) throw ConfigError("syntax error: expected a JSON object");
  } else {
    root = parse_ini(text);
  }

  std::vector<std::string> errors;
  Walker w(&errors);
  ScenarioConfig cfg;
  cfg.source_text = std::string(text);

  std::set<std::string> root_used;

  // [simulation]
  if (const json* sim = w.take(root, root_used, "simulation")) {
    if (!sim->is_object()) {
      w.fail("simulation", "expected a section");
    } else {
      std::set<std::string> used;
      cfg.sample_rate = w.number(*sim, used, "sample_rate", "simulation.sample_rate",
                                 cfg.sample_rate);
      cfg.num_samples = w.count(*sim, used, "num_samples", "simulation.num_samples",
                                cfg.num_samples);
      cfg.seed = w.count(*sim, used, "seed", "simulation.seed", cfg.seed);
      w.report_unknown(*sim, used, "simulation");
    }
  }
  if (!(cfg.sample_rate > 0.0) || !std::isfinite(cfg.sample_rate)) {
    w.fail("simulation.sample_rate", "must be positive");
  }

  // [noise]
  if (const json* noise = w.take(root, root_used, "noise")) {
    if (!noise->is_object()) {
      w.fail("noise", "expected a section");
    } else {
      cfg.noise = parse_noise(w, *noise, "noise", cfg.sample_rate, cfg.seed);
    }
  } else {
    cfg.noise.sample_rate = cfg.sample_rate;
    cfg.noise.source = WhiteNoiseSpec{1.0, cfg.seed};
  }

  // [paths]
  if (const json* paths = w.take(root, root_used, "paths")) {
    if (!paths->is_object()) {
      w.fail("paths", "expected a section");
    } else {
      std::set<std::string> used;
      cfg.primary_path = w.taps(*paths, used, "primary", "paths.primary",
                                cfg.primary_path);
      cfg.secondary_path = w.taps(*paths, used, "secondary", "paths.secondary",
                                  cfg.secondary_path);
      if (const json* est = w.take(*paths, used, "estimate")) {
        if (!est->is_object()) {
          w.fail("paths.estimate", "expected a section");
        } else {
          std::set<std::string> est_used;
          const std::string mode =
              w.text(*est, est_used, "mode", "paths.estimate.mode", "exact");
          if (mode == "exact") {
            cfg.secondary_estimate.mode = EstimateMode::exact;
          } else if (mode == "taps") {
            cfg.secondary_estimate.mode = EstimateMode::taps;
            cfg.secondary_estimate.taps =
                w.taps(*est, est_used, "taps", "paths.estimate.taps", {});
            if (cfg.secondary_estimate.taps.empty()) {
              w.fail("paths.estimate.taps", "required when mode = taps");
            }
          } else if (mode == "identify") {
            cfg.secondary_estimate.mode = EstimateMode::identify;
            IdentifySpec id;
            id.length = w.count(*est, est_used, "length",
                                "paths.estimate.length", 16);
            id.mu = w.number(*est, est_used, "mu", "paths.estimate.mu", 0.01);
            id.iterations = w.count(*est, est_used, "iterations",
                                    "paths.estimate.iterations", 100000);
            WhiteNoiseSpec excitation;
            excitation.sigma =
                w.number(*est, est_used, "sigma", "paths.estimate.sigma", 1.0);
            excitation.seed =
                w.count(*est, est_used, "seed", "paths.estimate.seed", cfg.seed + 1);
            id.excitation.source = excitation;
            if (id.length == 0) w.fail("paths.estimate.length", "must be >= 1");
            if (!(id.mu > 0.0)) w.fail("paths.estimate.mu", "must be positive");
            cfg.secondary_estimate.identify = id;
          } else {
            w.fail("paths.estimate.mode", "expected exact, taps, or identify");
          }
          w.report_unknown(*est, est_used, "paths.estimate");
        }
      }
      w.report_unknown(*paths, used, "paths");
    }
  }

  // [saturation]
  if (const json* sat = w.take(root, root_used, "saturation")) {
    if (!sat->is_object()) {
      w.fail("saturation", "expected a section");
    } else {
      std::set<std::string> used;
      const std::string kind = w.text(*sat, used, "kind", "saturation.kind", "none");
      if (kind == "none") {
        cfg.saturation.kind = SaturationKind::none;
      } else if (kind == "hard-clip") {
        cfg.saturation.kind = SaturationKind::hard_clip;
      } else if (kind == "scaled-tanh") {
        cfg.saturation.kind = SaturationKind::scaled_tanh;
      } else {
        w.fail("saturation.kind", "expected none, hard-clip, or scaled-tanh");
      }
      cfg.saturation.rho = w.number(*sat, used, "rho", "saturation.rho", 0.0);
      if (cfg.saturation.kind != SaturationKind::none &&
          !(cfg.saturation.rho > 0.0 && std::isfinite(cfg.saturation.rho))) {
        w.fail("saturation.rho", "must be finite and positive");
      }
      w.report_unknown(*sat, used, "saturation");
    }
  }

  // [controller]
  if (const json* ctl = w.take(root, root_used, "controller")) {
    if (!ctl->is_object()) {
      w.fail("controller", "expected a section");
    } else {
      std::set<std::string> used;
      auto& c = cfg.controller;
      c.algorithm = parse_algorithm(
          w, w.text(*ctl, used, "algorithm", "controller.algorithm", "none"),
          "controller.algorithm");
      c.length = w.count(*ctl, used, "length", "controller.length", c.length);
      c.mu = w.number(*ctl, used, "mu", "controller.mu", c.mu);
      if (const json* v = w.take(*ctl, used, "mu1")) {
        double d;
        if (w.to_number(*v, &d)) c.mu1 = d; else w.fail("controller.mu1", "expected a number");
      }
      if (const json* v = w.take(*ctl, used, "mu2")) {
        double d;
        if (w.to_number(*v, &d)) c.mu2 = d; else w.fail("controller.mu2", "expected a number");
      }
      c.gamma = w.number(*ctl, used, "gamma", "controller.gamma", c.gamma);
      c.matrix_leak = w.boolean(*ctl, used, "matrix_leak", "controller.matrix_leak",
                                c.matrix_leak);
      const std::string stats =
          w.text(*ctl, used, "stats_file", "controller.stats_file", "");
      if (!stats.empty()) c.stats_file = stats;
      if (const json* v = w.take(*ctl, used, "rho")) {
        double d;
        if (w.to_number(*v, &d)) c.rho = d; else w.fail("controller.rho", "expected a number");
      }
      const std::string mode = w.text(*ctl, used, "constraint_mode",
                                      "controller.constraint_mode", "instantaneous");
      if (mode == "instantaneous") {
        c.constraint_mode = ConstraintMode::instantaneous_amplitude;
      } else if (mode == "average-power") {
        c.constraint_mode = ConstraintMode::average_power;
      } else {
        w.fail("controller.constraint_mode", "expected instantaneous or average-power");
      }
      c.forgetting = w.number(*ctl, used, "forgetting", "controller.forgetting",
                              c.forgetting);
      c.beta = w.number(*ctl, used, "beta", "controller.beta", c.beta);
      c.frame_len = w.count(*ctl, used, "frame", "controller.frame", c.frame_len);
      const std::string source = w.text(*ctl, used, "d_source",
                                        "controller.d_source", "true");
      if (source == "true") {
        c.d_source = DisturbanceSource::true_disturbance;
      } else if (source == "reconstructed") {
        c.d_source = DisturbanceSource::reconstructed;
      } else {
        w.fail("controller.d_source", "expected true or reconstructed");
      }
      if (const json* inv = w.take(*ctl, used, "inverse")) {
        if (!inv->is_object()) {
          w.fail("controller.inverse", "expected a section");
        } else {
          c.inverse = parse_inverse(w, *inv, "controller.inverse", cfg.seed + 3);
        }
      }
      w.report_unknown(*ctl, used, "controller");

      // Cross-field requirements.
      if (c.length == 0) w.fail("controller.length", "must be >= 1");
      const bool constrained = c.algorithm == Algorithm::clipping_fxlms ||
                               c.algorithm == Algorithm::two_grad ||
                               c.algorithm == Algorithm::two_grad_momentum ||
                               c.algorithm == Algorithm::olfxlms_online;
      if (constrained) {
        if (!c.rho) {
          w.fail("controller.rho",
                 std::string("required for algorithm '") +
                     algorithm_name(c.algorithm) + "'");
        } else if (!(*c.rho > 0.0)) {
          w.fail("controller.rho", "must be positive");
        }
      }
      if (c.algorithm != Algorithm::none && !(c.mu > 0.0)) {
        w.fail("controller.mu", "must be positive");
      }
      if (c.mu1 && !(*c.mu1 > 0.0)) w.fail("controller.mu1", "must be positive");
      if (c.mu2 && !(*c.mu2 > 0.0)) w.fail("controller.mu2", "must be positive");
      if (!(c.gamma >= 0.0)) w.fail("controller.gamma", "must be >= 0");
      if (!(c.forgetting >= 0.0 && c.forgetting < 1.0)) {
        w.fail("controller.forgetting", "must lie in [0, 1)");
      }
      if (!(c.beta >= 0.0 && c.beta < 1.0)) {
        w.fail("controller.beta", "must lie in [0, 1)");
      }
      if (c.frame_len == 0) w.fail("controller.frame", "must be >= 1");
    }
  }

  // [metrics]
  if (const json* met = w.take(root, root_used, "metrics")) {
    if (!met->is_object()) {
      w.fail("metrics", "expected a section");
    } else {
      std::set<std::string> used;
      cfg.metrics.steady_window_fraction =
          w.number(*met, used, "steady_window_fraction",
                   "metrics.steady_window_fraction", cfg.metrics.steady_window_fraction);
      cfg.metrics.convergence_window =
          w.count(*met, used, "convergence_window", "metrics.convergence_window",
                  cfg.metrics.convergence_window);
      cfg.metrics.convergence_threshold_db =
          w.number(*met, used, "convergence_threshold_db",
                   "metrics.convergence_threshold_db",
                   cfg.metrics.convergence_threshold_db);
      w.report_unknown(*met, used, "metrics");
      if (!(cfg.metrics.steady_window_fraction > 0.0 &&
            cfg.metrics.steady_window_fraction <= 1.0)) {
        w.fail("metrics.steady_window_fraction", "must lie in (0, 1]");
      }
      if (cfg.metrics.convergence_window == 0) {
        w.fail("metrics.convergence_window", "must be >= 1");
      }
    }
  }

  // [tuning]
  if (const json* tun = w.take(root, root_used, "tuning")) {
    if (!tun->is_object()) {
      w.fail("tuning", "expected a section");
    } else {
      std::set<std::string> used;
      cfg.tuning.measure_samples = w.count(*tun, used, "measure_samples",
                                           "tuning.measure_samples",
                                           cfg.tuning.measure_samples);
      cfg.tuning.omega1 = w.number(*tun, used, "omega1", "tuning.omega1",
                                   cfg.tuning.omega1);
      cfg.tuning.omega2 = w.number(*tun, used, "omega2", "tuning.omega2",
                                   cfg.tuning.omega2);
      cfg.tuning.grid = w.count(*tun, used, "grid", "tuning.grid", cfg.tuning.grid);
      if (const json* inv = w.take(*tun, used, "inverse")) {
        if (!inv->is_object()) {
          w.fail("tuning.inverse", "expected a section");
        } else {
          cfg.tuning.inverse = parse_inverse(w, *inv, "tuning.inverse", cfg.seed + 2);
        }
      }
      w.report_unknown(*tun, used, "tuning");
      if (!(cfg.tuning.omega1 >= 0.0 && cfg.tuning.omega1 < cfg.tuning.omega2 &&
            cfg.tuning.omega2 <= std::numbers::pi)) {
        w.fail("tuning.omega1", "band must satisfy 0 <= omega1 < omega2 <= pi");
      }
      if (cfg.tuning.measure_samples == 0) {
        w.fail("tuning.measure_samples", "must be >= 1");
      }
    }
  }

  w.report_unknown(root, root_used, "");

  if (!errors.empty()) {
    std::string msg = "invalid scenario:";
    for (const auto& e : errors) msg += "\n  - " + e;
    throw ConfigError(msg);
  }
  return cfg;
}

ScenarioConfig load_scenario_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failure on scenario file '" + path + "'");
  return parse_scenario(buf.str());
}

namespace {

json rho_to_json(double rho) {
  if (std::isinf(rho)) return json(rho > 0 ? "inf" : "-inf");
  return json(rho);
}

json noise_to_json(const NoiseSpec& spec) {
  json out;
  if (const auto* white = std::get_if<WhiteNoiseSpec>(&spec.source)) {
    out["kind"] = "white";
    out["sigma"] = white->sigma;
    out["seed"] = white->seed;
  } else if (const auto* sine = std::get_if<SineSpec>(&spec.source)) {
    out["kind"] = "sine";
    out["frequency"] = sine->frequency_hz;
    out["amplitude"] = sine->amplitude;
    out["phase"] = sine->phase_rad;
  } else if (const auto* band = std::get_if<BandLimitedSpec>(&spec.source)) {
    out["kind"] = "bandlimited";
    out["sigma"] = band->sigma;
    out["seed"] = band->seed;
    out["shaping"] = band->shaping;
  } else {
    const auto& mix = std::get<MixtureSpec>(spec.source);
    out["kind"] = "mixture";
    json comps = json::object();
    for (std::size_t i = 0; i < mix.components.size(); ++i) {
      comps[std::to_string(i)] = noise_to_json(mix.components[i]);
    }
    out["component"] = comps;
  }
  return out;
}

json inverse_to_json(const InverseModelSpec& inv) {
  json out;
  out["length"] = inv.length;
  if (inv.modeling_delay) out["delay"] = *inv.modeling_delay;
  out["mu"] = inv.mu;
  out["iterations"] = inv.iterations;
  if (const auto* white = std::get_if<WhiteNoiseSpec>(&inv.excitation.source)) {
    out["sigma"] = white->sigma;
    out["seed"] = white->seed;
  }
  return out;
}

}  // namespace

std::string scenario_to_json(const ScenarioConfig& cfg, int indent) {
  json out;
  out["simulation"] = {{"sample_rate", cfg.sample_rate},
                       {"num_samples", cfg.num_samples},
                       {"seed", cfg.seed}};
  out["noise"] = noise_to_json(cfg.noise);
  out["paths"]["primary"] = cfg.primary_path;
  out["paths"]["secondary"] = cfg.secondary_path;
  json est;
  est["mode"] = estimate_mode_name(cfg.secondary_estimate.mode);
  if (cfg.secondary_estimate.mode == EstimateMode::taps) {
    est["taps"] = cfg.secondary_estimate.taps;
  } else if (cfg.secondary_estimate.mode == EstimateMode::identify) {
    const auto& id = cfg.secondary_estimate.identify;
    est["length"] = id.length;
    est["mu"] = id.mu;
    est["iterations"] = id.iterations;
    if (const auto* white = std::get_if<WhiteNoiseSpec>(&id.excitation.source)) {
      est["sigma"] = white->sigma;
      est["seed"] = white->seed;
    }
  }
  out["paths"]["estimate"] = est;
  out["saturation"] = {{"kind", saturation_kind_name(cfg.saturation.kind)},
                       {"rho", cfg.saturation.rho}};
  const auto& c = cfg.controller;
  json ctl;
  ctl["algorithm"] = algorithm_name(c.algorithm);
  ctl["length"] = c.length;
  ctl["mu"] = c.mu;
  if (c.mu1) ctl["mu1"] = *c.mu1;
  if (c.mu2) ctl["mu2"] = *c.mu2;
  ctl["gamma"] = c.gamma;
  ctl["matrix_leak"] = c.matrix_leak;
  if (c.stats_file) ctl["stats_file"] = *c.stats_file;
  if (c.rho) ctl["rho"] = rho_to_json(*c.rho);
  ctl["constraint_mode"] = constraint_mode_name(c.constraint_mode);
  ctl["forgetting"] = c.forgetting;
  ctl["beta"] = c.beta;
  ctl["frame"] = c.frame_len;
  ctl["d_source"] = disturbance_source_name(c.d_source);
  if (c.algorithm == Algorithm::olfxlms_online) {
    ctl["inverse"] = inverse_to_json(c.inverse);
  }
  out["controller"] = ctl;
  out["metrics"] = {{"steady_window_fraction", cfg.metrics.steady_window_fraction},
                    {"convergence_window", cfg.metrics.convergence_window},
                    {"convergence_threshold_db", cfg.metrics.convergence_threshold_db}};
  out["tuning"] = {{"measure_samples", cfg.tuning.measure_samples},
                   {"omega1", cfg.tuning.omega1},
                   {"omega2", cfg.tuning.omega2},
                   {"grid", cfg.tuning.grid},
                   {"inverse", inverse_to_json(cfg.tuning.inverse)}};
  return out.dump(indent);
}

}  // namespace ancsim
