#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "phonoblock/sweep.hpp"

namespace phonoblock {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<std::string> words(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

class Reader {
 public:
  Reader(int line, std::string key) : line_(line), key_(std::move(key)) {}

  [[noreturn]] void fail(const std::string& why) const {
    throw ConfigError("line " + std::to_string(line_) + " (" + key_ + "): " + why);
  }

  double number(const std::string& text) const {
    double v = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
      fail("not a number: '" + text + "'");
    }
    return v;
  }

  std::size_t count(const std::string& text) const {
    const double v = number(text);
    if (v < 1.0 || v != std::floor(v)) fail("count must be a positive integer");
    return static_cast<std::size_t>(v);
  }

  bool boolean(const std::string& text) const {
    if (text == "true" || text == "on" || text == "yes" || text == "1") return true;
    if (text == "false" || text == "off" || text == "no" || text == "0") return false;
    fail("not a boolean: '" + text + "'");
  }

  // "range a b n", "logrange a b n", "list v1, v2, ..." or a bare list.
  std::vector<double> grid(const std::string& text) const {
    const auto w = words(text);
    if (w.empty()) fail("empty axis");
    if (w[0] == "range" || w[0] == "logrange") {
      if (w.size() != 4) fail(w[0] + " needs: start stop count");
      const double a = number(w[1]);
      const double b = number(w[2]);
      const std::size_t n = count(w[3]);
      if (w[0] == "range") return linspace(a, b, n);
      if (!(a > 0.0) || !(b > 0.0)) fail("logrange bounds must be positive");
      return logspace(a, b, n);
    }
    std::string body = text;
    if (w[0] == "list") body = trim(std::string_view(text).substr(text.find("list") + 4));
    std::vector<double> out;
    for (const auto& item : split(body, ',')) out.push_back(number(item));
    if (out.empty()) fail("empty axis");
    return out;
  }

 private:
  int line_;
  std::string key_;
};

const std::map<std::string, Axis>& axis_names() {
  static const std::map<std::string, Axis> names{
      {"delta", Axis::kDelta}, {"u", Axis::kU},     {"j", Axis::kJ},
      {"zeta", Axis::kZeta},   {"phi", Axis::kPhi}, {"nth", Axis::kNth},
      {"tau", Axis::kTau}};
  return names;
}

const std::map<std::string, Observable>& observable_names() {
  static const std::map<std::string, Observable> names{
      {"g2_b", Observable::kG2B}, {"g2_a", Observable::kG2A},
      {"n_b1", Observable::kNB1}, {"n_b2", Observable::kNB2},
      {"n_a", Observable::kNA},   {"g2_tau", Observable::kG2Tau}};
  return names;
}

}  // namespace

const char* axis_name(Axis a) {
  for (const auto& [name, value] : axis_names()) {
    if (value == a) return name.c_str();
  }
  return "?";
}

const char* observable_name(Observable o) {
  for (const auto& [name, value] : observable_names()) {
    if (value == o) return name.c_str();
  }
  return "?";
}

std::vector<double> linspace(double start, double stop, std::size_t count) {
  if (count == 0) throw ConfigError("grid count must be >= 1");
  if (count == 1) return {start};
  std::vector<double> out(count);
  const double step = (stop - start) / static_cast<double>(count - 1);
  for (std::size_t k = 0; k < count; ++k) out[k] = start + step * static_cast<double>(k);
  out.back() = stop;
  return out;
}

std::vector<double> logspace(double start, double stop, std::size_t count) {
  if (!(start > 0.0) || !(stop > 0.0)) {
    throw ConfigError("logspace bounds must be positive");
  }
  auto exps = linspace(std::log10(start), std::log10(stop), count);
  for (double& e : exps) e = std::pow(10.0, e);
  exps.front() = start;
  if (count > 1) exps.back() = stop;
  return exps;
}

// ---------------------------------------------------------------------------

std::vector<int> SweepConfig::effective_dims() const {
  if (!dims.empty()) return dims;
  if (model == ModelKind::kFull) return {5, 5, 3};
  return {6, 6};
}

bool SweepConfig::has_axis(Axis a) const {
  return std::any_of(axes.begin(), axes.end(),
                     [a](const AxisSpec& s) { return s.axis == a; });
}

bool SweepConfig::wants(Observable o) const {
  return std::find(observables.begin(), observables.end(), o) != observables.end();
}

std::size_t SweepConfig::row_count() const {
  std::size_t n = 1;
  for (const auto& a : axes) n *= a.values.size();
  return n;
}

void SweepConfig::validate() const {
  if (axes.empty()) throw ConfigError("at least one grid axis is required");
  for (std::size_t k = 0; k < axes.size(); ++k) {
    if (axes[k].values.empty()) {
      throw ConfigError(std::string("axis ") + axis_name(axes[k].axis) + " is empty");
    }
    for (std::size_t m = 0; m < k; ++m) {
      if (axes[m].axis == axes[k].axis) {
        throw ConfigError(std::string("axis ") + axis_name(axes[k].axis) +
                          " given twice");
      }
    }
  }
  if (observables.empty()) throw ConfigError("no observables requested");

  const bool full = model == ModelKind::kFull;
  for (Observable o : observables) {
    if (!full && (o == Observable::kG2A || o == Observable::kNA)) {
      throw ConfigError(std::string(observable_name(o)) +
                        " needs model kind = full");
    }
  }
  const bool tau_axis = has_axis(Axis::kTau);
  if (wants(Observable::kG2Tau) != tau_axis) {
    throw ConfigError("g2_tau output and the tau axis must be used together");
  }
  if (tau_axis) {
    if (axes.back().axis != Axis::kTau) {
      throw ConfigError("tau must be the last (innermost) axis");
    }
    const auto& t = axes.back().values;
    for (std::size_t k = 0; k < t.size(); ++k) {
      if (t[k] < 0.0 || (k > 0 && !(t[k] > t[k - 1]))) {
        throw ConfigError("tau values must be non-negative and increasing");
      }
    }
  }
  for (const auto& a : axes) {
    if (a.axis == Axis::kNth) {
      for (double v : a.values) {
        if (v < 0.0) throw ConfigError("nth values must be non-negative");
      }
    }
    if (a.axis == Axis::kZeta) {
      for (double v : a.values) {
        if (v < 0.0) throw ConfigError("zeta values must be non-negative");
      }
    }
  }
  const auto d = effective_dims();
  if (d.size() != (full ? 3u : 2u)) {
    throw ConfigError("dims must list " + std::string(full ? "3" : "2") +
                      " truncations for this model");
  }
  for (int n : d) {
    if (n < 2) throw ConfigError("every truncation must be >= 2");
  }
  if (zeta && *zeta < 0.0) throw ConfigError("zeta must be non-negative");
  if (zeta && params.omega2 != 0.0) {
    throw ConfigError("give either omega2 or zeta, not both");
  }
  if (optimal == OptimalMode::kTwoDrivePlus || optimal == OptimalMode::kTwoDriveMinus) {
    if (params.omega2 != 0.0) {
      throw ConfigError("two-drive optimal mode sets omega2 itself");
    }
  }
  try {
    params.validate();
    if (full) om.validate();
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

// ---------------------------------------------------------------------------

SweepConfig parse_config(std::istream& in) {
  SweepConfig cfg;
  std::string section;
  std::string raw;
  int line_no = 0;
  bool have_omega2 = false;

  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("line " + std::to_string(line_no) + ": bad section header");
      }
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      static const char* known[] = {"model", "params", "optomech", "grid", "outputs"};
      if (std::find(std::begin(known), std::end(known), section) == std::end(known)) {
        throw ConfigError("line " + std::to_string(line_no) + ": unknown section [" +
                          section + "]");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    const Reader r(line_no, section.empty() ? key : section + "." + key);
    if (section.empty()) r.fail("key outside any section");
    if (value.empty()) r.fail("missing value");

    if (section == "model") {
      if (key == "kind") {
        if (value == "mech") cfg.model = ModelKind::kMech;
        else if (value == "full") cfg.model = ModelKind::kFull;
        else r.fail("kind must be mech or full");
      } else if (key == "optimal") {
        if (value == "off") cfg.optimal = OptimalMode::kOff;
        else if (value == "single-drive") cfg.optimal = OptimalMode::kSingleDrive;
        else if (value == "two-drive-plus") cfg.optimal = OptimalMode::kTwoDrivePlus;
        else if (value == "two-drive-minus") cfg.optimal = OptimalMode::kTwoDriveMinus;
        else r.fail("optimal must be off, single-drive, two-drive-plus or two-drive-minus");
      } else if (key == "optimal_delta") {
        cfg.optimal_delta = r.number(value);
      } else if (key == "dims") {
        cfg.dims.clear();
        for (const auto& item : split(value, ',')) {
          cfg.dims.push_back(static_cast<int>(r.count(item)));
        }
      } else if (key == "convergence_check") {
        cfg.convergence_check = r.boolean(value);
      } else {
        r.fail("unknown key");
      }
    } else if (section == "params") {
      const double v = r.number(value);
      if (key == "delta") cfg.params.delta = v;
      else if (key == "u") cfg.params.u = v;
      else if (key == "j") cfg.params.j = v;
      else if (key == "omega1") cfg.params.omega1 = v;
      else if (key == "omega2") { cfg.params.omega2 = v; have_omega2 = true; }
      else if (key == "zeta") cfg.zeta = v;
      else if (key == "phi") cfg.params.phi = v;
      else if (key == "nth") cfg.params.nth = v;
      else r.fail("unknown key (rates are in units of gamma; gamma is fixed to 1)");
    } else if (section == "optomech") {
      const double v = r.number(value);
      if (key == "g") cfg.om.g = v;
      else if (key == "kappa") cfg.om.kappa = v;
      else if (key == "delta_a") cfg.om.delta_a = v;
      else r.fail("unknown key");
    } else if (section == "grid") {
      const auto it = axis_names().find(key);
      if (it == axis_names().end()) r.fail("unknown axis");
      cfg.axes.push_back({it->second, r.grid(value)});
    } else if (section == "outputs") {
      if (key != "observables") r.fail("unknown key");
      cfg.observables.clear();
      for (const auto& name : split(value, ',')) {
        const auto it = observable_names().find(name);
        if (it == observable_names().end()) r.fail("unknown observable '" + name + "'");
        cfg.observables.push_back(it->second);
      }
    }
  }
  if (have_omega2 && cfg.zeta) throw ConfigError("give either omega2 or zeta, not both");
  cfg.validate();
  return cfg;
}

SweepConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in);
}

}  // namespace phonoblock
