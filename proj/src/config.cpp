// Copyright 2026 The emre-kit developers
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

#include "emrekit/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace emrekit {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Strips a trailing comment that is not inside a string literal.
std::string strip_comment(const std::string& line) {
  bool in_string = false;
  for (size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (c == '"' && (i == 0 || line[i - 1] != '\\')) in_string = !in_string;
    if (c == '#' && !in_string) return line.substr(0, i);
  }
  return line;
}

json parse_toml_scalar(const std::string& raw, int line_no);

json parse_toml_array(const std::string& raw, int line_no) {
  json arr = json::array();
  std::string inner = trim(raw.substr(1, raw.size() - 2));
  if (inner.empty()) return arr;
  std::vector<std::string> parts;
  int depth = 0;
  bool in_string = false;
  std::string cur;
  for (char c : inner) {
    if (c == '"') in_string = !in_string;
    if (!in_string) {
      if (c == '[') ++depth;
      if (c == ']') --depth;
      if (c == ',' && depth == 0) {
        parts.push_back(cur);
        cur.clear();
        continue;
      }
    }
    cur.push_back(c);
  }
  if (!trim(cur).empty()) parts.push_back(cur);
  for (const auto& p : parts) arr.push_back(parse_toml_scalar(trim(p), line_no));
  return arr;
}

json parse_toml_scalar(const std::string& raw, int line_no) {
  require(!raw.empty(), ErrorCode::ParseError,
          "toml line " + std::to_string(line_no) + ": missing value");
  if (raw.front() == '"') {
    require(raw.size() >= 2 && raw.back() == '"', ErrorCode::ParseError,
            "toml line " + std::to_string(line_no) + ": unterminated string");
    std::string out;
    for (size_t i = 1; i + 1 < raw.size(); ++i) {
      if (raw[i] == '\\' && i + 2 < raw.size()) {
        ++i;
        switch (raw[i]) {
          case 'n': out.push_back('\n'); break;
          case 't': out.push_back('\t'); break;
          case '"': out.push_back('"'); break;
          case '\\': out.push_back('\\'); break;
          default: out.push_back(raw[i]);
        }
      } else {
        out.push_back(raw[i]);
      }
    }
    return json(out);
  }
  if (raw.front() == '[') {
    require(raw.back() == ']', ErrorCode::ParseError,
            "toml line " + std::to_string(line_no) + ": unterminated array");
    return parse_toml_array(raw, line_no);
  }
  if (raw == "true") return json(true);
  if (raw == "false") return json(false);
  // Number: integer when it round-trips as one.
  try {
    size_t used = 0;
    if (raw.find_first_of(".eE") == std::string::npos) {
      long long v = std::stoll(raw, &used);
      if (used == raw.size()) return json(v);
    }
    double d = std::stod(raw, &used);
    require(used == raw.size(), ErrorCode::ParseError,
            "toml line " + std::to_string(line_no) + ": bad value '" + raw + "'");
    return json(d);
  } catch (const std::exception&) {
    fail(ErrorCode::ParseError,
         "toml line " + std::to_string(line_no) + ": bad value '" + raw + "'");
  }
}

}  // namespace

nlohmann::json toml_to_json(const std::string& text) {
  json root = json::object();
  json* current = &root;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string s = trim(strip_comment(line));
    if (s.empty()) continue;
    if (s.size() >= 4 && s.substr(0, 2) == "[[" && s.substr(s.size() - 2) == "]]") {
      std::string name = trim(s.substr(2, s.size() - 4));
      require(!name.empty(), ErrorCode::ParseError,
              "toml line " + std::to_string(line_no) + ": empty table name");
      if (!root.contains(name)) root[name] = json::array();
      require(root[name].is_array(), ErrorCode::ParseError,
              "toml line " + std::to_string(line_no) + ": '" + name +
                  "' is not an array of tables");
      root[name].push_back(json::object());
      current = &root[name].back();
      continue;
    }
    if (s.front() == '[' && s.back() == ']') {
      std::string name = trim(s.substr(1, s.size() - 2));
      require(!name.empty(), ErrorCode::ParseError,
              "toml line " + std::to_string(line_no) + ": empty table name");
      root[name] = json::object();
      current = &root[name];
      continue;
    }
    size_t eq = std::string::npos;
    bool in_string = false;
    for (size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '"') in_string = !in_string;
      if (s[i] == '=' && !in_string) {
        eq = i;
        break;
      }
    }
    require(eq != std::string::npos, ErrorCode::ParseError,
            "toml line " + std::to_string(line_no) + ": expected key = value");
    std::string key = trim(s.substr(0, eq));
    if (key.size() >= 2 && key.front() == '"' && key.back() == '"')
      key = key.substr(1, key.size() - 2);
    require(!key.empty(), ErrorCode::ParseError,
            "toml line " + std::to_string(line_no) + ": empty key");
    (*current)[key] = parse_toml_scalar(trim(s.substr(eq + 1)), line_no);
  }
  return root;
}

nlohmann::json parse_config_text(const std::string& text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == '{') {
      try {
        return json::parse(text);
      } catch (const json::parse_error& e) {
        fail(ErrorCode::ParseError, std::string("config JSON: ") + e.what());
      }
    }
    break;
  }
  return toml_to_json(text);
}

namespace {

double get_number(const json& j, const std::string& field, const std::string& ctx) {
  require(j.contains(field) && j[field].is_number(), ErrorCode::ParseError,
          "field '" + ctx + field + "': expected a number");
  return j[field].get<double>();
}

double get_number_or(const json& j, const std::string& field, double fallback,
                     const std::string& ctx) {
  if (!j.contains(field)) return fallback;
  require(j[field].is_number(), ErrorCode::ParseError,
          "field '" + ctx + field + "': expected a number");
  return j[field].get<double>();
}

std::string get_string(const json& j, const std::string& field, const std::string& ctx) {
  require(j.contains(field) && j[field].is_string(), ErrorCode::ParseError,
          "field '" + ctx + field + "': expected a string");
  return j[field].get<std::string>();
}

void apply_gate_classes(const json& j, const std::string& field, bool& single,
                        bool& two, const std::string& ctx) {
  if (!j.contains(field)) return;
  require(j[field].is_array(), ErrorCode::ParseError,
          "field '" + ctx + field + "': expected an array of class names");
  single = false;
  two = false;
  for (const auto& v : j[field]) {
    require(v.is_string(), ErrorCode::ParseError,
            "field '" + ctx + field + "': expected strings");
    std::string c = v.get<std::string>();
    if (c == "single" || c == "single_qubit" || c == "1q") {
      single = true;
    } else if (c == "two" || c == "two_qubit" || c == "2q") {
      two = true;
    } else {
      fail(ErrorCode::ParseError,
           "field '" + ctx + field + "': unknown gate class '" + c + "'");
    }
  }
}

}  // namespace

NoiseModel noise_from_json(const nlohmann::json& j) {
  require(j.is_object(), ErrorCode::ParseError, "noise entry must be an object");
  std::string ctx = "noise.";
  std::string kind = get_string(j, "kind", ctx);
  NoiseModel m;
  if (kind == "none") {
    m = NoiseModel::none();
  } else if (kind == "depolarizing_local" || kind == "depolarizing") {
    m = NoiseModel::depolarizing_local(get_number(j, "p", ctx));
  } else if (kind == "depolarizing_ddim") {
    int d = static_cast<int>(get_number_or(j, "d", 2, ctx));
    m = NoiseModel::depolarizing_ddim(get_number(j, "p", ctx), d);
  } else if (kind == "dephasing") {
    m = NoiseModel::dephasing(get_number(j, "p", ctx));
  } else if (kind == "inhomogeneous_pauli") {
    m = NoiseModel::inhomogeneous_pauli(get_number(j, "px", ctx),
                                        get_number(j, "py", ctx),
                                        get_number(j, "pz", ctx));
  } else {
    fail(ErrorCode::ParseError, "field 'noise.kind': unknown kind '" + kind + "'");
  }
  if (j.contains("attachment")) {
    std::string a = get_string(j, "attachment", ctx);
    if (a == "after_every_gate_local" || a == "local") {
      m.attachment = NoiseAttachment::AfterEveryGateLocal;
    } else if (a == "after_every_gate_joint" || a == "joint") {
      m.attachment = NoiseAttachment::AfterEveryGateJoint;
    } else if (a == "none") {
      m.attachment = NoiseAttachment::None;
    } else {
      fail(ErrorCode::ParseError,
           "field 'noise.attachment': unknown attachment '" + a + "'");
    }
  }
  apply_gate_classes(j, "noisy_gate_classes", m.noisy_single, m.noisy_two, ctx);
  apply_gate_classes(j, "mitigated_gate_classes", m.mitigate_single, m.mitigate_two,
                     ctx);
  m.validate();
  return m;
}

NoiseModel noise_from_spec(const std::string& spec) {
  size_t colon = spec.find(':');
  std::string kind = colon == std::string::npos ? spec : spec.substr(0, colon);
  std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  std::vector<std::pair<std::string, std::string>> kv;
  std::vector<std::string> positional;
  {
    std::istringstream in(rest);
    std::string part;
    while (std::getline(in, part, ',')) {
      part = trim(part);
      if (part.empty()) continue;
      size_t eq = part.find('=');
      if (eq == std::string::npos) {
        positional.push_back(part);
      } else {
        kv.emplace_back(trim(part.substr(0, eq)), trim(part.substr(eq + 1)));
      }
    }
  }
  auto to_num = [&](const std::string& s) {
    try {
      return std::stod(s);
    } catch (const std::exception&) {
      fail(ErrorCode::ParseError, "noise spec: bad number '" + s + "'");
    }
  };
  auto lookup = [&](const std::string& key, int pos, double fallback,
                    bool required) {
    for (const auto& [k, v] : kv)
      if (k == key) return to_num(v);
    if (pos >= 0 && static_cast<size_t>(pos) < positional.size())
      return to_num(positional[static_cast<size_t>(pos)]);
    require(!required, ErrorCode::ParseError,
            "noise spec: missing parameter '" + key + "'");
    return fallback;
  };

  json j;
  j["kind"] = kind == "depolarizing" ? "depolarizing_local" : kind;
  if (kind == "none") return noise_from_json(j);
  if (kind == "inhomogeneous_pauli") {
    j["px"] = lookup("px", 0, 0.0, true);
    j["py"] = lookup("py", 1, 0.0, true);
    j["pz"] = lookup("pz", 2, 0.0, true);
    return noise_from_json(j);
  }
  j["p"] = lookup("p", 0, 0.0, true);
  if (kind == "depolarizing_ddim") j["d"] = lookup("d", 1, 2.0, false);
  return noise_from_json(j);
}

EstimatorOptions estimator_from_json(const nlohmann::json& j) {
  require(j.is_object(), ErrorCode::ParseError, "method entry must be an object");
  EstimatorOptions o;
  std::string ctx = "method.";
  o.method = j.contains("method") ? get_string(j, "method", ctx)
                                  : get_string(j, "name", ctx);
  require(o.method == "none" || o.method == "pec" || o.method == "emre" ||
              o.method == "hemre",
          ErrorCode::ParseError,
          "field 'method': unknown estimator '" + o.method + "'");
  if (j.contains("shots")) {
    require(j["shots"].is_number_integer() && j["shots"].get<std::int64_t>() >= 1,
            ErrorCode::ParseError, "field 'method.shots': expected a positive integer");
    o.shots = j["shots"].get<std::int64_t>();
  }
  if (j.contains("c")) o.c = get_number(j, "c", ctx);
  o.precision = get_number_or(j, "precision", o.precision, ctx);
  o.p_fail = get_number_or(j, "p_fail", o.p_fail, ctx);
  o.delta_fixed = get_number_or(j, "delta_fixed", o.delta_fixed, ctx);
  if (j.contains("selector")) {
    std::string s = get_string(j, "selector", ctx);
    if (s == "greedy") {
      o.selector = Selector::Greedy;
    } else if (s == "window") {
      o.selector = Selector::Window;
    } else {
      fail(ErrorCode::ParseError, "field 'method.selector': unknown selector '" + s + "'");
    }
  }
  if (j.contains("shot_mode")) {
    std::string s = get_string(j, "shot_mode", ctx);
    if (s == "single_shot") {
      o.shot_mode = ShotMode::SingleShot;
    } else if (s == "exact_trajectory") {
      o.shot_mode = ShotMode::ExactTrajectory;
    } else {
      fail(ErrorCode::ParseError, "field 'method.shot_mode': unknown mode '" + s + "'");
    }
  }
  if (j.contains("emre_mode")) {
    std::string s = get_string(j, "emre_mode", ctx);
    if (s == "closed_form") {
      o.emre_mode = EmreMode::ClosedForm;
    } else if (s == "positive_part") {
      o.emre_mode = EmreMode::PositivePartOfPec;
    } else {
      fail(ErrorCode::ParseError, "field 'method.emre_mode': unknown mode '" + s + "'");
    }
  }
  if (j.contains("hemre_epsilon_base")) {
    std::string s = get_string(j, "hemre_epsilon_base", ctx);
    if (s == "s_total") {
      o.hemre_epsilon_on_s_incl = false;
    } else if (s == "s_incl") {
      o.hemre_epsilon_on_s_incl = true;
    } else {
      fail(ErrorCode::ParseError,
           "field 'method.hemre_epsilon_base': expected s_total or s_incl");
    }
  }
  return o;
}

ExperimentConfig experiment_from_json(const nlohmann::json& j) {
  require(j.is_object(), ErrorCode::ParseError, "config must be an object/table");
  ExperimentConfig cfg;
  if (j.contains("spec_version")) {
    require(j["spec_version"].is_number_integer(), ErrorCode::ParseError,
            "field 'spec_version': expected an integer");
    cfg.spec_version = j["spec_version"].get<int>();
    require(cfg.spec_version == 1, ErrorCode::ParseError,
            "field 'spec_version': unsupported version");
  }
  if (j.contains("circuit")) cfg.circuit = get_string(j, "circuit", "");
  if (j.contains("output")) cfg.output = get_string(j, "output", "");
  if (j.contains("repetitions")) {
    require(j["repetitions"].is_number_integer() && j["repetitions"].get<int>() >= 1,
            ErrorCode::ParseError, "field 'repetitions': expected a positive integer");
    cfg.repetitions = j["repetitions"].get<int>();
  }
  if (j.contains("seed")) {
    require(j["seed"].is_number_integer(), ErrorCode::ParseError,
            "field 'seed': expected an integer");
    cfg.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("shots")) {
    require(j["shots"].is_number_integer() && j["shots"].get<std::int64_t>() >= 1,
            ErrorCode::ParseError, "field 'shots': expected a positive integer");
    cfg.shots = j["shots"].get<std::int64_t>();
  }
  cfg.p_fail = get_number_or(j, "p_fail", cfg.p_fail, "");
  if (j.contains("emit")) {
    require(j["emit"].is_array(), ErrorCode::ParseError,
            "field 'emit': expected an array");
    cfg.emit_summary_csv = false;
    cfg.emit_per_run_csv = false;
    cfg.emit_histogram_csv = false;
    cfg.emit_json = false;
    for (const auto& v : j["emit"]) {
      require(v.is_string(), ErrorCode::ParseError, "field 'emit': expected strings");
      std::string e = v.get<std::string>();
      if (e == "summary_csv") {
        cfg.emit_summary_csv = true;
      } else if (e == "per_run_csv") {
        cfg.emit_per_run_csv = true;
      } else if (e == "histogram_csv") {
        cfg.emit_histogram_csv = true;
      } else if (e == "json") {
        cfg.emit_json = true;
      } else {
        fail(ErrorCode::ParseError, "field 'emit': unknown artifact '" + e + "'");
      }
    }
  }
  require(j.contains("noise") && j["noise"].is_array() && !j["noise"].empty(),
          ErrorCode::ParseError, "field 'noise': at least one noise entry required");
  for (size_t i = 0; i < j["noise"].size(); ++i) {
    NoisePoint point;
    point.model = noise_from_json(j["noise"][i]);
    point.label = point.model.label();
    if (j["noise"][i].contains("label"))
      point.label = get_string(j["noise"][i], "label", "noise.");
    cfg.noise.push_back(std::move(point));
  }
  if (j.contains("methods") || j.contains("method")) {
    const json& arr = j.contains("methods") ? j["methods"] : j["method"];
    require(arr.is_array(), ErrorCode::ParseError,
            "field 'methods': expected an array");
    for (const auto& mj : arr) {
      MethodEntry entry;
      entry.options = estimator_from_json(mj);
      entry.label = mj.contains("label") ? get_string(mj, "label", "method.")
                                         : entry.options.method;
      // Sweep-level defaults.
      if (!entry.options.shots && !entry.options.c && cfg.shots)
        entry.options.shots = cfg.shots;
      if (!mj.contains("p_fail")) entry.options.p_fail = cfg.p_fail;
      cfg.methods.push_back(std::move(entry));
    }
  }
  return cfg;
}

ExperimentConfig load_experiment_config(const std::string& text) {
  return experiment_from_json(parse_config_text(text));
}

CircuitIR load_circuit(const std::string& name_or_path) {
  if (name_or_path == "swap_test") return build_swap_test_circuit(false);
  if (name_or_path == "swap_test_ghz_ghz") return build_swap_test_circuit(true);
  std::ifstream in(name_or_path);
  require(in.good(), ErrorCode::Io,
          "cannot open circuit file '" + name_or_path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return circuit_from_json(buf.str());
}

}  // namespace emrekit
