// Copyright 2026 The superlind Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "superlind/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace superlind {

namespace {

struct Value {
  enum class Kind { kString, kNumber, kBool, kArray } kind = Kind::kNumber;
  std::string str;
  double num = 0.0;
  bool flag = false;
  std::vector<Value> items;
  int line = 0;
};

struct Entry {
  Value value;
  bool used = false;
};

using Section = std::map<std::string, Entry>;

struct Document {
  std::map<std::string, Section> sections;
  std::map<std::string, int> section_lines;
};

class Parser {
 public:
  Parser(const std::string& text, int line) : text_(text), line_(line) {}

  Value parse_value() {
    skip_space();
    if (pos_ >= text_.size()) fail("missing value");
    const char c = text_[pos_];
    Value v;
    v.line = line_;
    if (c == '"') {
      ++pos_;
      v.kind = Value::Kind::kString;
      while (pos_ < text_.size() && text_[pos_] != '"') {
        if (text_[pos_] == '\\') fail("escape sequences are not supported");
        v.str += text_[pos_++];
      }
      if (pos_ >= text_.size()) fail("unterminated string");
      ++pos_;
    } else if (c == '[') {
      ++pos_;
      v.kind = Value::Kind::kArray;
      skip_space();
      if (peek() == ']') {
        ++pos_;
        return v;
      }
      while (true) {
        v.items.push_back(parse_value());
        skip_space();
        if (peek() == ',') {
          ++pos_;
          skip_space();
          if (peek() == ']') {
            ++pos_;
            break;
          }
          continue;
        }
        if (peek() == ']') {
          ++pos_;
          break;
        }
        fail("expected ',' or ']' in array");
      }
    } else if (text_.compare(pos_, 4, "true") == 0) {
      v.kind = Value::Kind::kBool;
      v.flag = true;
      pos_ += 4;
    } else if (text_.compare(pos_, 5, "false") == 0) {
      v.kind = Value::Kind::kBool;
      v.flag = false;
      pos_ += 5;
    } else {
      char* end = nullptr;
      std::string token;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.' ||
                                     text_[pos_] == '-' || text_[pos_] == '+' || text_[pos_] == '_')) {
        if (text_[pos_] != '_') token += text_[pos_];
        ++pos_;
      }
      if (token.empty()) fail("unexpected character '" + std::string(1, c) + "'");
      v.num = std::strtod(token.c_str(), &end);
      if (end != token.c_str() + token.size()) fail("invalid number '" + token + "'");
      v.kind = Value::Kind::kNumber;
    }
    return v;
  }

  void expect_end() {
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing characters");
  }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const { throw ConfigError(line_, what); }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_;
};

std::string strip_comment(const std::string& line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_string = !in_string;
    if (line[i] == '#' && !in_string) return line.substr(0, i);
  }
  return line;
}

std::string trim(const std::string& s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

bool valid_key(const std::string& key) {
  if (key.empty()) return false;
  for (char c : key) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '.' && c != '-') return false;
  }
  return true;
}

Document parse_document(const std::string& text) {
  Document doc;
  doc.sections[""];
  std::string section;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(line_no, "malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (!valid_key(section)) throw ConfigError(line_no, "invalid section name '" + section + "'");
      if (doc.section_lines.count(section) != 0) throw ConfigError(line_no, "duplicate section [" + section + "]");
      doc.sections[section];
      doc.section_lines[section] = line_no;
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(line_no, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    if (!valid_key(key)) throw ConfigError(line_no, "invalid key '" + key + "'");
    const std::string rest = line.substr(eq + 1);
    Parser parser(rest, line_no);
    Value v = parser.parse_value();
    parser.expect_end();
    Section& s = doc.sections[section];
    if (s.count(key) != 0) throw ConfigError(line_no, "duplicate key '" + key + "'");
    s[key] = Entry{v, false};
  }
  return doc;
}

// Typed accessors that mark keys as consumed and report line numbers.
class Reader {
 public:
  explicit Reader(Document& doc) : doc_(doc) {}

  bool has_section(const std::string& s) const { return doc_.sections.count(s) != 0; }
  bool has(const std::string& s, const std::string& k) const {
    auto it = doc_.sections.find(s);
    return it != doc_.sections.end() && it->second.count(k) != 0;
  }

  const Value& get(const std::string& s, const std::string& k) {
    Entry& e = doc_.sections.at(s).at(k);
    e.used = true;
    return e.value;
  }

  double number(const std::string& s, const std::string& k) {
    const Value& v = get(s, k);
    if (v.kind != Value::Kind::kNumber) throw ConfigError(v.line, name(s, k) + " must be a number");
    return v.num;
  }
  // Angular frequency given either as `<base>_hz` or `<base>_rad_s`.
  bool has_frequency(const std::string& s, const std::string& base) const {
    return has(s, base + "_hz") || has(s, base + "_rad_s");
  }
  double frequency(const std::string& s, const std::string& base) {
    const bool hz = has(s, base + "_hz");
    const bool rad = has(s, base + "_rad_s");
    if (hz && rad) throw ConfigError(line(s, base + "_rad_s"), name(s, base) + " given in both Hz and rad/s");
    if (!hz && !rad) throw ConfigError(0, "missing " + name(s, base + "_hz"));
    return hz ? hz_to_angular(number(s, base + "_hz")) : number(s, base + "_rad_s");
  }
  std::size_t index(const std::string& s, const std::string& k) {
    const Value& v = get(s, k);
    if (v.kind != Value::Kind::kNumber || v.num < 0 || v.num != std::floor(v.num)) {
      throw ConfigError(v.line, name(s, k) + " must be a non-negative integer");
    }
    return static_cast<std::size_t>(v.num);
  }
  bool flag(const std::string& s, const std::string& k) {
    const Value& v = get(s, k);
    if (v.kind != Value::Kind::kBool) throw ConfigError(v.line, name(s, k) + " must be true or false");
    return v.flag;
  }
  std::string string(const std::string& s, const std::string& k) {
    const Value& v = get(s, k);
    if (v.kind != Value::Kind::kString) throw ConfigError(v.line, name(s, k) + " must be a quoted string");
    return v.str;
  }
  std::vector<double> numbers(const std::string& s, const std::string& k) {
    const Value& v = get(s, k);
    if (v.kind != Value::Kind::kArray) throw ConfigError(v.line, name(s, k) + " must be an array of numbers");
    std::vector<double> out;
    for (const Value& item : v.items) {
      if (item.kind != Value::Kind::kNumber) throw ConfigError(v.line, name(s, k) + " must contain only numbers");
      out.push_back(item.num);
    }
    return out;
  }
  std::vector<std::string> strings(const std::string& s, const std::string& k) {
    const Value& v = get(s, k);
    if (v.kind != Value::Kind::kArray) throw ConfigError(v.line, name(s, k) + " must be an array of strings");
    std::vector<std::string> out;
    for (const Value& item : v.items) {
      if (item.kind != Value::Kind::kString) throw ConfigError(v.line, name(s, k) + " must contain only strings");
      out.push_back(item.str);
    }
    return out;
  }
  Vec3 vector3(const std::string& s, const std::string& k) {
    const int line = get(s, k).line;
    const std::vector<double> v = numbers(s, k);
    if (v.size() != 3) throw ConfigError(line, name(s, k) + " must have 3 components");
    return Vec3(v[0], v[1], v[2]);
  }
  int line(const std::string& s, const std::string& k) const { return doc_.sections.at(s).at(k).value.line; }

  void reject_unused() const {
    for (const auto& [section, entries] : doc_.sections) {
      for (const auto& [key, entry] : entries) {
        if (!entry.used) throw ConfigError(entry.value.line, "unknown key '" + name(section, key) + "'");
      }
    }
  }

  static std::string name(const std::string& s, const std::string& k) { return s.empty() ? k : s + "." + k; }

 private:
  Document& doc_;
};

std::vector<Variant> parse_variants(Reader& r, const std::string& s, const std::string& k) {
  const int line = r.line(s, k);
  std::vector<Variant> out;
  for (const std::string& name : r.strings(s, k)) {
    try {
      out.push_back(parse_variant(name));
    } catch (const ValidationError& e) {
      throw ConfigError(line, e.what());
    }
  }
  return out;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s = buf;
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

std::string fmt_list(const std::vector<double>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt(v[i]);
  return s + "]";
}

std::string fmt_variants(const std::vector<Variant>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", \"" : "\"") + variant_name(v[i]) + "\"";
  return s + "]";
}

const char* fmt_bool(bool b) { return b ? "true" : "false"; }

void check_positive_list(const std::vector<double>& v, const std::string& field) {
  for (double x : v) {
    if (!(x > 0.0) || !std::isfinite(x)) throw ValidationError(field, "entries must be positive");
  }
}

}  // namespace

RunConfig default_run_config() {
  RunConfig c;
  c.sim.scheme = hydrogen_2s4p_preset();
  c.sim.array = emitter_pair(1e-7);
  return c;
}

RunConfig parse_config_string(const std::string& text) {
  Document doc = parse_document(text);
  Reader r(doc);
  RunConfig c = default_run_config();
  SimConfig& sim = c.sim;

  const std::string top;
  bool have_scheme = false;
  if (r.has(top, "preset")) {
    const std::string preset = r.string(top, "preset");
    if (preset != "hydrogen_2s4p") throw ConfigError(r.line(top, "preset"), "unknown preset '" + preset + "'");
    sim.scheme = hydrogen_2s4p_preset();
    have_scheme = true;
  }
  if (r.has(top, "coarse_grain_dt")) sim.coarse_grain_dt = r.number(top, "coarse_grain_dt");
  if (r.has(top, "temperature")) sim.temperature = r.number(top, "temperature");
  if (r.has(top, "smoothing")) sim.smoothing = r.flag(top, "smoothing") ? Smoothing::kGaussian : Smoothing::kSinc;
  if (r.has(top, "speed_of_light")) sim.speed_of_light = r.number(top, "speed_of_light");

  // Explicit level scheme: [scheme] plus one [transition.N] section each.
  std::map<std::size_t, std::string> transition_sections;
  for (const auto& [name, entries] : doc.sections) {
    if (name.rfind("transition.", 0) == 0) {
      const std::string idx = name.substr(11);
      char* end = nullptr;
      const unsigned long n = std::strtoul(idx.c_str(), &end, 10);
      if (idx.empty() || *end != '\0') throw ConfigError(doc.section_lines[name], "bad transition section name");
      transition_sections[n] = name;
    }
  }
  if (r.has_section("scheme") || !transition_sections.empty()) {
    if (have_scheme) throw ConfigError(doc.section_lines.count("scheme") ? doc.section_lines["scheme"] : 0,
                                       "preset and explicit scheme are mutually exclusive");
    LevelScheme s;
    s.transitions.clear();
    if (r.has("scheme", "num_levels")) s.num_levels = r.index("scheme", "num_levels");
    if (r.has("scheme", "ground")) s.ground = r.index("scheme", "ground");
    std::size_t expected = 0;
    for (const auto& [n, name] : transition_sections) {
      if (n != expected++) throw ConfigError(doc.section_lines[name], "transition sections must be numbered 0, 1, ...");
      Transition t;
      t.lower = r.index(name, "lower");
      t.upper = r.index(name, "upper");
      t.frequency = r.frequency(name, "frequency");
      t.decay_rate = r.frequency(name, "decay_rate");
      if (r.has(name, "dipole_direction")) t.dipole_direction = r.vector3(name, "dipole_direction");
      t.dipole_sign_amplitude = r.number(name, "amplitude");
      if (r.has_frequency(name, "diagonal_shift")) s.diagonal_shifts[n] = r.frequency(name, "diagonal_shift");
      s.transitions.push_back(t);
    }
    sim.scheme = s;
  }
  if (r.has_frequency("overrides", "cross_shift")) {
    sim.scheme.cross_shift_overrides[{0, 1}] = r.frequency("overrides", "cross_shift");
  }

  if (r.has_section("emitters")) {
    const bool explicit_positions = r.has("emitters", "positions_m");
    if (explicit_positions) {
      const Value& v = r.get("emitters", "positions_m");
      if (v.kind != Value::Kind::kArray) throw ConfigError(v.line, "emitters.positions_m must be an array");
      sim.array.positions.clear();
      for (const Value& p : v.items) {
        if (p.kind != Value::Kind::kArray || p.items.size() != 3) {
          throw ConfigError(v.line, "emitters.positions_m entries must be 3-vectors");
        }
        Vec3 pos;
        for (int k = 0; k < 3; ++k) {
          if (p.items[static_cast<std::size_t>(k)].kind != Value::Kind::kNumber) {
            throw ConfigError(v.line, "emitters.positions_m entries must be numbers");
          }
          pos(k) = p.items[static_cast<std::size_t>(k)].num;
        }
        sim.array.positions.push_back(pos);
      }
    }
    if (r.has("emitters", "count")) {
      if (explicit_positions) throw ConfigError(r.line("emitters", "count"), "count conflicts with positions_m");
      const std::size_t n = r.index("emitters", "count");
      if (n == 1) {
        sim.array = single_emitter();
      } else if (n == 2) {
        sim.array = emitter_pair(1e-7);
      } else {
        throw ConfigError(r.line("emitters", "count"), "emitters.count must be 1 or 2 (use positions_m otherwise)");
      }
    }
    if (r.has("emitters", "distance_m")) {
      if (explicit_positions) throw ConfigError(r.line("emitters", "distance_m"), "distance_m conflicts with positions_m");
      sim.array = emitter_pair(r.number("emitters", "distance_m"));
    }
  }

  const char* toggle_keys[] = {"intra_cross_damping", "inter_cross_damping", "intra_cross_shift",
                               "inter_cross_shift", "inter_diagonal"};
  bool* toggle_fields[] = {&sim.toggles.intra_cross_damping, &sim.toggles.inter_cross_damping,
                           &sim.toggles.intra_cross_shift, &sim.toggles.inter_cross_shift,
                           &sim.toggles.inter_diagonal};
  for (int k = 0; k < 5; ++k) {
    if (r.has("toggles", toggle_keys[k])) *toggle_fields[k] = r.flag("toggles", toggle_keys[k]);
  }

  if (r.has("drive", "reference_transition")) c.drive.reference_transition = r.index("drive", "reference_transition");
  if (r.has("drive", "rabi_over_gamma")) c.drive.rabi_over_gamma = r.number("drive", "rabi_over_gamma");
  if (r.has_frequency("drive", "rabi")) c.drive.rabi = r.frequency("drive", "rabi");
  if (r.has("drive", "rabi_ratio")) c.drive.rabi_ratio = r.numbers("drive", "rabi_ratio");
  if (r.has_frequency("drive", "detuning")) c.drive.detuning = r.frequency("drive", "detuning");

  if (r.has("grid", "points")) c.grid.points = r.index("grid", "points");
  if (r.has("grid", "margin_gammas")) c.grid.margin_gammas = r.number("grid", "margin_gammas");
  if (r.has("grid", "refine_half_width_gammas")) {
    c.grid.refine_half_width_gammas = r.number("grid", "refine_half_width_gammas");
  }
  if (r.has("grid", "refine_factor")) c.grid.refine_factor = r.index("grid", "refine_factor");

  if (r.has("spectrum", "distances_m")) c.spectrum_distances = r.numbers("spectrum", "distances_m");
  if (r.has("spectrum", "variants")) c.spectrum_variants = parse_variants(r, "spectrum", "variants");
  if (r.has("spectrum", "refine")) c.spectrum_refine = r.flag("spectrum", "refine");

  if (r.has("shifts", "distances_m")) c.shift_distances = r.numbers("shifts", "distances_m");
  const bool range = r.has("shifts", "r_min_m") || r.has("shifts", "r_max_m") || r.has("shifts", "r_points");
  if (range) {
    if (!c.shift_distances.empty()) throw ConfigError(r.line("shifts", "distances_m"), "give distances_m or a range, not both");
    if (!(r.has("shifts", "r_min_m") && r.has("shifts", "r_max_m") && r.has("shifts", "r_points"))) {
      throw ConfigError(doc.section_lines["shifts"], "shifts range needs r_min_m, r_max_m and r_points");
    }
    const double lo = r.number("shifts", "r_min_m");
    const double hi = r.number("shifts", "r_max_m");
    const std::size_t n = r.index("shifts", "r_points");
    std::string spacing = "linear";
    if (r.has("shifts", "spacing")) spacing = r.string("shifts", "spacing");
    if (spacing != "linear" && spacing != "log") throw ConfigError(r.line("shifts", "spacing"), "spacing must be \"linear\" or \"log\"");
    if (n < 1 || !(lo > 0.0) || !(hi >= lo)) throw ValidationError("shifts.r_min_m", "need 0 < r_min_m <= r_max_m and r_points >= 1");
    for (std::size_t k = 0; k < n; ++k) {
      const double f = n == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(n - 1);
      c.shift_distances.push_back(spacing == "log" ? lo * std::pow(hi / lo, f) : lo + (hi - lo) * f);
    }
  }
  if (r.has("shifts", "variants")) c.shift_variants = parse_variants(r, "shifts", "variants");
  if (r.has("shifts", "drive_over_gamma")) c.drive_over_gamma = r.numbers("shifts", "drive_over_gamma");

  if (r.has("cg_scan", "distances_m")) c.cg_distances = r.numbers("cg_scan", "distances_m");
  if (r.has("cg_scan", "dt_s")) c.cg_times = r.numbers("cg_scan", "dt_s");
  if (r.has("cg_scan", "variant")) {
    try {
      c.cg_variant = parse_variant(r.string("cg_scan", "variant"));
    } catch (const ValidationError& e) {
      throw ConfigError(r.line("cg_scan", "variant"), e.what());
    }
  }
  if (r.has("fit", "noise_relative")) c.noise_relative = r.number("fit", "noise_relative");

  r.reject_unused();

  validate(sim);
  if (c.drive.reference_transition >= sim.scheme.num_transitions()) {
    throw ValidationError("drive.reference_transition", "no such transition");
  }
  if (!c.drive.rabi_ratio.empty() && c.drive.rabi_ratio.size() != sim.scheme.num_transitions()) {
    throw ValidationError("drive.rabi_ratio", "needs one entry per transition");
  }
  if (!std::isfinite(c.drive.rabi_over_gamma)) throw ValidationError("drive.rabi_over_gamma", "must be finite");
  if (c.grid.points < 2) throw ValidationError("grid.points", "must be at least 2");
  if (!(c.grid.margin_gammas >= 0.0)) throw ValidationError("grid.margin_gammas", "must be non-negative");
  check_positive_list(c.spectrum_distances, "spectrum.distances_m");
  check_positive_list(c.shift_distances, "shifts.distances_m");
  check_positive_list(c.drive_over_gamma, "shifts.drive_over_gamma");
  check_positive_list(c.cg_distances, "cg_scan.distances_m");
  check_positive_list(c.cg_times, "cg_scan.dt_s");
  if (c.drive_over_gamma.size() < 3) throw ValidationError("shifts.drive_over_gamma", "needs at least 3 values");
  if (!(c.noise_relative >= 0.0)) throw ValidationError("fit.noise_relative", "must be non-negative");
  return c;
}

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(0, "cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_string(buf.str());
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream out;
  const SimConfig& sim = c.sim;
  out << "coarse_grain_dt = " << fmt(sim.coarse_grain_dt) << "\n";
  out << "temperature = " << fmt(sim.temperature) << "\n";
  out << "smoothing = " << fmt_bool(sim.smoothing == Smoothing::kGaussian) << "\n";
  out << "speed_of_light = " << fmt(sim.speed_of_light) << "\n";

  out << "\n[scheme]\nnum_levels = " << sim.scheme.num_levels << "\nground = " << sim.scheme.ground << "\n";
  for (std::size_t t = 0; t < sim.scheme.num_transitions(); ++t) {
    const Transition& tr = sim.scheme.transitions[t];
    out << "\n[transition." << t << "]\n";
    out << "lower = " << tr.lower << "\nupper = " << tr.upper << "\n";
    out << "frequency_rad_s = " << fmt(tr.frequency) << "\n";
    out << "decay_rate_rad_s = " << fmt(tr.decay_rate) << "\n";
    out << "dipole_direction = "
        << fmt_list({tr.dipole_direction.x(), tr.dipole_direction.y(), tr.dipole_direction.z()}) << "\n";
    out << "amplitude = " << fmt(tr.dipole_sign_amplitude) << "\n";
    auto it = sim.scheme.diagonal_shifts.find(t);
    if (it != sim.scheme.diagonal_shifts.end()) out << "diagonal_shift_rad_s = " << fmt(it->second) << "\n";
  }
  auto ov = sim.scheme.cross_shift_overrides.find({0, 1});
  if (ov != sim.scheme.cross_shift_overrides.end()) {
    out << "\n[overrides]\ncross_shift_rad_s = " << fmt(ov->second) << "\n";
  }

  out << "\n[emitters]\npositions_m = [";
  for (std::size_t a = 0; a < sim.array.size(); ++a) {
    const Vec3& p = sim.array.positions[a];
    out << (a ? ", " : "") << fmt_list({p.x(), p.y(), p.z()});
  }
  out << "]\n";

  out << "\n[toggles]\n";
  out << "intra_cross_damping = " << fmt_bool(sim.toggles.intra_cross_damping) << "\n";
  out << "inter_cross_damping = " << fmt_bool(sim.toggles.inter_cross_damping) << "\n";
  out << "intra_cross_shift = " << fmt_bool(sim.toggles.intra_cross_shift) << "\n";
  out << "inter_cross_shift = " << fmt_bool(sim.toggles.inter_cross_shift) << "\n";
  out << "inter_diagonal = " << fmt_bool(sim.toggles.inter_diagonal) << "\n";

  out << "\n[drive]\nreference_transition = " << c.drive.reference_transition << "\n";
  out << "rabi_over_gamma = " << fmt(c.drive.rabi_over_gamma) << "\n";
  if (c.drive.rabi) out << "rabi_rad_s = " << fmt(*c.drive.rabi) << "\n";
  if (!c.drive.rabi_ratio.empty()) out << "rabi_ratio = " << fmt_list(c.drive.rabi_ratio) << "\n";
  out << "detuning_rad_s = " << fmt(c.drive.detuning) << "\n";

  out << "\n[grid]\npoints = " << c.grid.points << "\nmargin_gammas = " << fmt(c.grid.margin_gammas) << "\n";
  out << "refine_half_width_gammas = " << fmt(c.grid.refine_half_width_gammas) << "\n";
  out << "refine_factor = " << c.grid.refine_factor << "\n";

  out << "\n[spectrum]\ndistances_m = " << fmt_list(c.spectrum_distances) << "\n";
  out << "variants = " << fmt_variants(c.spectrum_variants) << "\n";
  out << "refine = " << fmt_bool(c.spectrum_refine) << "\n";

  out << "\n[shifts]\ndistances_m = " << fmt_list(c.shift_distances) << "\n";
  out << "variants = " << fmt_variants(c.shift_variants) << "\n";
  out << "drive_over_gamma = " << fmt_list(c.drive_over_gamma) << "\n";

  out << "\n[cg_scan]\ndistances_m = " << fmt_list(c.cg_distances) << "\n";
  out << "dt_s = " << fmt_list(c.cg_times) << "\n";
  out << "variant = \"" << variant_name(c.cg_variant) << "\"\n";

  out << "\n[fit]\nnoise_relative = " << fmt(c.noise_relative) << "\n";
  return out.str();
}

std::string config_hash(const RunConfig& config) {
  const std::string text = serialize_config(config);
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

DriveProfile drive_profile(const RunConfig& config) {
  const LevelScheme& scheme = config.sim.scheme;
  if (config.drive.rabi_ratio.empty()) return amplitude_ratio_profile(scheme, config.drive.reference_transition);
  DriveProfile p;
  p.reference_transition = config.drive.reference_transition;
  for (double r : config.drive.rabi_ratio) p.relative.emplace_back(r);
  return p;
}

DriveConfig drive_for(const RunConfig& config, const SimConfig& sim) {
  const double gamma_ref = sim.scheme.transitions.at(config.drive.reference_transition).decay_rate;
  const double rabi = config.drive.rabi ? *config.drive.rabi : config.drive.rabi_over_gamma * gamma_ref;
  return make_drive(sim, drive_profile(config), rabi, config.drive.detuning);
}

ShiftOptions shift_options(const RunConfig& config, unsigned threads, std::uint64_t seed) {
  ShiftOptions o;
  o.drive_over_gamma = config.drive_over_gamma;
  o.profile = drive_profile(config);
  o.grid = config.grid;
  o.threads = threads;
  o.noise_relative = config.noise_relative;
  o.seed = seed;
  return o;
}

}  // namespace superlind
