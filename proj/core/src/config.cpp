#include "qsl/config.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "qsl/error.hpp"

namespace qsl {

namespace {

constexpr double kRadPerDeg = std::numbers::pi / 180.0;

struct Entry {
  std::string value;
  int line = 0;
  bool used = false;
};

// section -> key -> entry; the unnamed top-level section is "".
using Document = std::map<std::string, std::map<std::string, Entry>>;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

Document tokenize(std::string_view text) {
  Document doc;
  doc[""];
  std::string section;
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError("unterminated section header", lineno);
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) throw ParseError("empty section name", lineno);
      if (doc.count(section) && section != "") throw ParseError("duplicate section [" + section + "]", lineno);
      doc[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", lineno);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError("missing key before '='", lineno);
    auto& sec = doc[section];
    if (sec.count(key)) throw ParseError("duplicate key '" + key + "'", lineno);
    sec[key] = Entry{value, lineno, false};
  }
  return doc;
}

std::string field_name(const std::string& section, const std::string& key) {
  return section.empty() ? key : section + "." + key;
}

class Reader {
 public:
  explicit Reader(Document doc) : doc_(std::move(doc)) {}

  bool has_section(const std::string& s) const { return doc_.count(s) > 0; }

  std::optional<std::string> text(const std::string& section, const std::string& key) {
    auto sit = doc_.find(section);
    if (sit == doc_.end()) return std::nullopt;
    auto kit = sit->second.find(key);
    if (kit == sit->second.end()) return std::nullopt;
    kit->second.used = true;
    return kit->second.value;
  }

  int line(const std::string& section, const std::string& key) const {
    auto sit = doc_.find(section);
    if (sit == doc_.end()) return 0;
    auto kit = sit->second.find(key);
    return kit == sit->second.end() ? 0 : kit->second.line;
  }

  double real(const std::string& section, const std::string& key, double fallback,
              const std::function<bool(double)>& valid = {}, const char* requirement = "") {
    const auto v = text(section, key);
    if (!v) return fallback;
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(*v, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != v->size() || !std::isfinite(x))
      throw ParseError(field_name(section, key) + ": '" + *v + "' is not a finite number", line(section, key));
    if (valid && !valid(x))
      throw ParseError(field_name(section, key) + ": " + *v + " out of range (" + requirement + ")",
                       line(section, key));
    return x;
  }

  std::uint64_t unsigned_int(const std::string& section, const std::string& key, std::uint64_t fallback) {
    const auto v = text(section, key);
    if (!v) return fallback;
    std::size_t used = 0;
    std::uint64_t x = 0;
    try {
      if (!v->empty() && v->front() == '-') throw std::invalid_argument("negative");
      x = std::stoull(*v, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != v->size())
      throw ParseError(field_name(section, key) + ": '" + *v + "' is not a non-negative integer",
                       line(section, key));
    return x;
  }

  bool boolean(const std::string& section, const std::string& key, bool fallback) {
    const auto v = text(section, key);
    if (!v) return fallback;
    if (*v == "true" || *v == "yes" || *v == "1") return true;
    if (*v == "false" || *v == "no" || *v == "0") return false;
    throw ParseError(field_name(section, key) + ": '" + *v + "' is not a boolean (true/false)", line(section, key));
  }

  void reject_unused() const {
    for (const auto& [section, keys] : doc_)
      for (const auto& [key, entry] : keys)
        if (!entry.used) throw ParseError("unknown field '" + field_name(section, key) + "'", entry.line);
  }

 private:
  Document doc_;
};

const std::set<std::string> kSections = {"", "source", "selector", "decoherer", "tomography", "uncertainty"};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

ExperimentConfig parse_config(std::string_view text) {
  Document doc = tokenize(text);
  for (const auto& [name, keys] : doc)
    if (!kSections.count(name)) {
      const int line = keys.empty() ? 0 : keys.begin()->second.line;
      throw ParseError("unknown section [" + name + "]", line);
    }
  Reader r(std::move(doc));
  ExperimentConfig cfg;

  if (auto label = r.text("", "label")) cfg.label = *label;
  if (cfg.label.empty() || cfg.label.find_first_of("\t\n") != std::string::npos)
    throw ParseError("label must be non-empty and free of tabs", r.line("", "label"));

  const auto non_negative = [](double x) { return x >= 0.0; };
  const auto positive = [](double x) { return x > 0.0; };
  const auto unit = [](double x) { return x >= 0.0 && x <= 1.0; };

  cfg.source.epsilon = r.real("source", "epsilon", 1.0, non_negative, ">= 0");
  cfg.source.phi = r.real("source", "phi", 0.0) * kRadPerDeg;

  cfg.selector.theta1 = r.real("selector", "theta1", 0.0);
  cfg.selector.theta2 = r.real("selector", "theta2", 0.0);

  const std::string type = r.text("decoherer", "type").value_or("none");
  if (type == "none") {
    cfg.decoherer = NoDecoherer{};
  } else if (type == "spatial") {
    SpatialDecohererSetting s;
    const std::string arms = r.text("decoherer", "arms").value_or("one");
    if (arms == "one")
      s.arms = SpatialArms::kOne;
    else if (arms == "both")
      s.arms = SpatialArms::kBoth;
    else
      throw ParseError("decoherer.arms: '" + arms + "' must be 'one' or 'both'", r.line("decoherer", "arms"));
    s.axis1 = r.real("decoherer", "axis1", s.axis1);
    s.axis2 = r.real("decoherer", "axis2", s.axis2);
    s.strength = r.real("decoherer", "strength", s.strength, unit, "0 <= strength <= 1");
    cfg.decoherer = s;
  } else if (type == "temporal") {
    TemporalDecohererSetting t;
    t.tau1 = r.real("decoherer", "tau1", t.tau1, non_negative, ">= 0");
    t.tau2 = r.real("decoherer", "tau2", t.tau2, non_negative, ">= 0");
    t.sigma = r.real("decoherer", "sigma", t.sigma, non_negative, ">= 0");
    t.carrier = r.real("decoherer", "carrier", t.carrier);
    t.compensate_phase = r.boolean("decoherer", "compensate_phase", t.compensate_phase);
    cfg.decoherer = t;
  } else {
    throw ParseError("decoherer.type: '" + type + "' must be none, spatial or temporal",
                     r.line("decoherer", "type"));
  }

  cfg.tomography.n_per_basis = r.real("tomography", "n_per_basis", cfg.tomography.n_per_basis, positive, "> 0");
  if (r.text("tomography", "seed")) cfg.tomography.seed = r.unsigned_int("tomography", "seed", 0);

  if (r.has_section("uncertainty")) {
    UncertaintyConfig u;
    u.settings_sigma = r.real("uncertainty", "settings_sigma", u.settings_sigma, non_negative, ">= 0");
    const double n_mc = r.real("uncertainty", "n_mc", u.n_mc, [](double x) { return x >= 1 && x == std::floor(x); },
                               "integer >= 1");
    u.n_mc = static_cast<int>(n_mc);
    u.poisson = r.boolean("uncertainty", "poisson", u.poisson);
    cfg.uncertainty = u;
  }

  r.reject_unused();
  return cfg;
}

std::string serialize_config(const ExperimentConfig& cfg) {
  std::ostringstream os;
  os << "label = " << cfg.label << "\n\n";
  os << "[source]\n"
     << "epsilon = " << fmt(cfg.source.epsilon) << '\n'
     << "phi = " << fmt(cfg.source.phi / kRadPerDeg) << "\n\n";
  os << "[selector]\n"
     << "theta1 = " << fmt(cfg.selector.theta1) << '\n'
     << "theta2 = " << fmt(cfg.selector.theta2) << "\n\n";
  os << "[decoherer]\n";
  if (const auto* s = std::get_if<SpatialDecohererSetting>(&cfg.decoherer)) {
    os << "type = spatial\n"
       << "arms = " << (s->arms == SpatialArms::kOne ? "one" : "both") << '\n'
       << "axis1 = " << fmt(s->axis1) << '\n'
       << "axis2 = " << fmt(s->axis2) << '\n'
       << "strength = " << fmt(s->strength) << '\n';
  } else if (const auto* t = std::get_if<TemporalDecohererSetting>(&cfg.decoherer)) {
    os << "type = temporal\n"
       << "tau1 = " << fmt(t->tau1) << '\n'
       << "tau2 = " << fmt(t->tau2) << '\n'
       << "sigma = " << fmt(t->sigma) << '\n'
       << "carrier = " << fmt(t->carrier) << '\n'
       << "compensate_phase = " << (t->compensate_phase ? "true" : "false") << '\n';
  } else {
    os << "type = none\n";
  }
  os << "\n[tomography]\n"
     << "n_per_basis = " << fmt(cfg.tomography.n_per_basis) << '\n';
  if (cfg.tomography.seed) os << "seed = " << *cfg.tomography.seed << '\n';
  if (cfg.uncertainty) {
    const UncertaintyConfig& u = *cfg.uncertainty;
    os << "\n[uncertainty]\n"
       << "settings_sigma = " << fmt(u.settings_sigma) << '\n'
       << "n_mc = " << u.n_mc << '\n'
       << "poisson = " << (u.poisson ? "true" : "false") << '\n';
  }
  return os.str();
}

std::string config_template() {
  return R"(# qsl experiment configuration
#
# Units: angles in degrees, delays in photon coherence times, spectral width
# in inverse coherence times. '#' starts a comment.

label = bell-temporal

[source]
# |HH> + epsilon e^{i phi} |VV>, normalised
epsilon = 1.0
phi = 0

[selector]
# half-wave plate fast-axis angles, arm 1 and arm 2
theta1 = 0
theta2 = 0

[decoherer]
# none | spatial | temporal
type = temporal
# temporal: H-vs-V group delay per arm, spectral width, carrier frequency,
# and whether the deterministic carrier phase is compensated
tau1 = 1
tau2 = 1
sigma = 1
compensate_phase = true
# spatial (instead of the above):
# arms = one | both
# axis1 = 45
# axis2 = 0
# strength = 1

[tomography]
# expected coincidences per analyzer setting
n_per_basis = 10000
# seed = 1          # the CLI's --seed takes precedence

[uncertainty]
# analyzer setting accuracy and Monte-Carlo sample count
settings_sigma = 0.25
n_mc = 100
)";
}

}  // namespace qsl
