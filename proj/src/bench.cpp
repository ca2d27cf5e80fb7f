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

#include "emrekit/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

namespace emrekit {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

struct BiasStats {
  double mean_E = 0.0;
  double mean_bias = 0.0;
  double std_bias = 0.0;
  double mean_b = 0.0;
  double std_E = 0.0;
};

BiasStats bias_stats(const std::vector<RunRecord>& runs, const std::string& method,
                     const std::string& noise_label, double e_ideal) {
  std::vector<double> es, biases, bs;
  for (const auto& r : runs) {
    if (r.method != method || r.noise_label != noise_label) continue;
    es.push_back(r.E);
    biases.push_back(std::abs(r.E - e_ideal));
    bs.push_back(r.b);
  }
  BiasStats st;
  if (es.empty()) return st;
  auto mean = [](const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
  };
  auto sdev = [&](const std::vector<double>& v, double m) {
    if (v.size() < 2) return 0.0;
    double s = 0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
  };
  st.mean_E = mean(es);
  st.mean_bias = mean(biases);
  st.std_bias = sdev(biases, st.mean_bias);
  st.mean_b = mean(bs);
  st.std_E = sdev(es, st.mean_E);
  return st;
}

}  // namespace

const char* branch_name(Branch b) {
  switch (b) {
    case Branch::None: return "none";
    case Branch::Trivial: return "trivial";
    case Branch::NonTrivialUpper: return "non_trivial_upper";
    case Branch::NonTrivialLower: return "non_trivial_lower";
    case Branch::SmallS: return "small_s";
  }
  return "none";
}

SweepResult run_mitigate_sweep(const ExperimentConfig& cfg, int threads) {
  require(!cfg.methods.empty(), ErrorCode::InvalidArgument,
          "mitigation sweep needs at least one method");
  CircuitIR circuit = load_circuit(cfg.circuit);

  SweepResult result;
  {
    CircuitIR ideal = circuit;
    ideal.noise = NoiseModel::none();
    result.e_ideal = exact_expectation(ideal);
  }

  for (size_t ni = 0; ni < cfg.noise.size(); ++ni) {
    CircuitIR noisy = circuit;
    noisy.noise = cfg.noise[ni].model;
    double e_noisy = exact_expectation(noisy);

    for (size_t mi = 0; mi < cfg.methods.size(); ++mi) {
      const MethodEntry& entry = cfg.methods[mi];
      EstimatorOptions opts = entry.options;
      opts.threads = threads;
      for (int rep = 0; rep < cfg.repetitions; ++rep) {
        std::uint64_t seed =
            RngStream::derive(cfg.seed, {ni, mi, static_cast<std::uint64_t>(rep)})
                .next_u64();
        auto t0 = std::chrono::steady_clock::now();
        EstimateReport er = run_estimator(noisy, opts, seed);
        auto t1 = std::chrono::steady_clock::now();

        RunRecord rec;
        rec.noise_label = cfg.noise[ni].label;
        rec.noise_p = cfg.noise[ni].model.parameter_p();
        rec.method = entry.label;
        rec.repetition = rep;
        rec.E = er.E;
        rec.b = er.b;
        rec.E_hat = er.E_hat;
        rec.shots = er.shots;
        rec.seed = seed;
        rec.branch = er.branch;
        rec.wall_time_ms =
            std::chrono::duration<double, std::milli>(t1 - t0).count();
        result.runs.push_back(std::move(rec));
      }

      SummaryRow row;
      row.noise_label = cfg.noise[ni].label;
      row.noise_p = result.runs.back().noise_p;
      row.method = entry.label;
      row.e_ideal = result.e_ideal;
      row.e_noisy = e_noisy;
      BiasStats st =
          bias_stats(result.runs, entry.label, cfg.noise[ni].label, result.e_ideal);
      row.mean_E = st.mean_E;
      row.mean_bias = st.mean_bias;
      row.std_bias = st.std_bias;
      row.mean_b_reported = st.mean_b;
      row.std_E = st.std_E;
      row.shots = result.runs.back().shots;
      row.repetitions = cfg.repetitions;
      result.summary.push_back(std::move(row));
    }
  }
  return result;
}

SweepResult run_simulate_sweep(const ExperimentConfig& cfg, int threads) {
  CircuitIR circuit = load_circuit(cfg.circuit);
  SweepResult result;
  {
    CircuitIR ideal = circuit;
    ideal.noise = NoiseModel::none();
    result.e_ideal = exact_expectation(ideal);
  }
  for (size_t ni = 0; ni < cfg.noise.size(); ++ni) {
    CircuitIR noisy = circuit;
    noisy.noise = cfg.noise[ni].model;
    double e_noisy = exact_expectation(noisy);

    SummaryRow row;
    row.noise_label = cfg.noise[ni].label;
    row.noise_p = cfg.noise[ni].model.parameter_p();
    row.method = "exact";
    row.e_ideal = result.e_ideal;
    row.e_noisy = e_noisy;
    row.mean_E = e_noisy;
    row.mean_bias = std::abs(e_noisy - result.e_ideal);
    row.repetitions = 0;

    if (cfg.shots) {
      EstimatorOptions opts;
      opts.method = "none";
      opts.shots = cfg.shots;
      opts.p_fail = cfg.p_fail;
      opts.threads = threads;
      for (int rep = 0; rep < cfg.repetitions; ++rep) {
        std::uint64_t seed =
            RngStream::derive(cfg.seed, {ni, 0, static_cast<std::uint64_t>(rep)})
                .next_u64();
        auto t0 = std::chrono::steady_clock::now();
        EstimateReport er = unmitigated_estimate(noisy, opts, seed);
        auto t1 = std::chrono::steady_clock::now();
        RunRecord rec;
        rec.noise_label = cfg.noise[ni].label;
        rec.noise_p = row.noise_p;
        rec.method = "none";
        rec.repetition = rep;
        rec.E = er.E;
        rec.b = er.b;
        rec.E_hat = er.E_hat;
        rec.shots = er.shots;
        rec.seed = seed;
        rec.branch = er.branch;
        rec.wall_time_ms =
            std::chrono::duration<double, std::milli>(t1 - t0).count();
        result.runs.push_back(std::move(rec));
      }
      BiasStats st =
          bias_stats(result.runs, "none", cfg.noise[ni].label, result.e_ideal);
      row.method = "none";
      row.mean_E = st.mean_E;
      row.mean_bias = st.mean_bias;
      row.std_bias = st.std_bias;
      row.mean_b_reported = st.mean_b;
      row.std_E = st.std_E;
      row.shots = *cfg.shots;
      row.repetitions = cfg.repetitions;
    }
    result.summary.push_back(std::move(row));
  }
  return result;
}

std::vector<std::string> write_sweep_outputs(const ExperimentConfig& cfg,
                                             const SweepResult& result,
                                             const std::string& out_dir,
                                             bool simulate_layout) {
  namespace fs = std::filesystem;
  std::vector<std::string> written;
  fs::create_directories(out_dir);

  if (cfg.emit_summary_csv) {
    fs::path path = fs::path(out_dir) / "summary.csv";
    std::ofstream out(path);
    require(out.good(), ErrorCode::Io, "cannot write " + path.string());
    if (simulate_layout) {
      out << "noise_label,noise_p,method,e_ideal,e_noisy,exact_bias,mean_bias,"
             "std_bias,shots,repetitions\n";
      for (const auto& r : result.summary) {
        out << r.noise_label << ',' << fmt(r.noise_p) << ',' << r.method << ','
            << fmt(r.e_ideal) << ',' << fmt(r.e_noisy) << ','
            << fmt(std::abs(r.e_noisy - r.e_ideal)) << ','
            << (r.repetitions > 0 ? fmt(r.mean_bias) : "") << ','
            << (r.repetitions > 0 ? fmt(r.std_bias) : "") << ',' << r.shots << ','
            << r.repetitions << '\n';
      }
    } else {
      out << "noise_label,noise_p,method,mean_bias,std_bias,mean_b_reported,"
             "shots,repetitions,mean_E,std_E,e_ideal,e_noisy\n";
      for (const auto& r : result.summary) {
        out << r.noise_label << ',' << fmt(r.noise_p) << ',' << r.method << ','
            << fmt(r.mean_bias) << ',' << fmt(r.std_bias) << ','
            << fmt(r.mean_b_reported) << ',' << r.shots << ',' << r.repetitions
            << ',' << fmt(r.mean_E) << ',' << fmt(r.std_E) << ','
            << fmt(r.e_ideal) << ',' << fmt(r.e_noisy) << '\n';
      }
    }
    written.push_back(path.string());
  }

  if (cfg.emit_per_run_csv && !result.runs.empty()) {
    fs::path path = fs::path(out_dir) / "per_run.csv";
    std::ofstream out(path);
    require(out.good(), ErrorCode::Io, "cannot write " + path.string());
    out << "noise_label,noise_p,method,repetition,E,b,E_hat,shots,seed,branch,"
           "wall_time_ms\n";
    for (const auto& r : result.runs) {
      out << r.noise_label << ',' << fmt(r.noise_p) << ',' << r.method << ','
          << r.repetition << ',' << fmt(r.E) << ',' << fmt(r.b) << ','
          << fmt(r.E_hat) << ',' << r.shots << ',' << r.seed << ','
          << branch_name(r.branch) << ',' << fmt(r.wall_time_ms) << '\n';
    }
    written.push_back(path.string());
  }

  if (cfg.emit_histogram_csv && !result.runs.empty()) {
    fs::path path = fs::path(out_dir) / "histogram.csv";
    std::ofstream out(path);
    require(out.good(), ErrorCode::Io, "cannot write " + path.string());
    out << "noise_label,noise_p,method,repetition,E\n";
    for (const auto& r : result.runs) {
      out << r.noise_label << ',' << fmt(r.noise_p) << ',' << r.method << ','
          << r.repetition << ',' << fmt(r.E) << '\n';
    }
    written.push_back(path.string());
  }

  if (cfg.emit_json) {
    nlohmann::json doc;
    doc["spec_version"] = cfg.spec_version;
    doc["e_ideal"] = result.e_ideal;
    doc["summary"] = nlohmann::json::array();
    for (const auto& r : result.summary) {
      nlohmann::json row;
      row["noise_label"] = r.noise_label;
      row["noise_p"] = r.noise_p;
      row["method"] = r.method;
      row["mean_bias"] = r.mean_bias;
      row["std_bias"] = r.std_bias;
      row["mean_b_reported"] = r.mean_b_reported;
      row["mean_E"] = r.mean_E;
      row["std_E"] = r.std_E;
      row["e_ideal"] = r.e_ideal;
      row["e_noisy"] = r.e_noisy;
      row["shots"] = r.shots;
      row["repetitions"] = r.repetitions;
      doc["summary"].push_back(std::move(row));
    }
    doc["runs"] = nlohmann::json::array();
    for (const auto& r : result.runs) {
      nlohmann::json row;
      row["noise_label"] = r.noise_label;
      row["noise_p"] = r.noise_p;
      row["method"] = r.method;
      row["repetition"] = r.repetition;
      row["E"] = r.E;
      row["b"] = r.b;
      row["E_hat"] = r.E_hat;
      row["shots"] = r.shots;
      row["seed"] = r.seed;
      row["branch"] = branch_name(r.branch);
      doc["runs"].push_back(std::move(row));
    }
    fs::path path = fs::path(out_dir) / "results.json";
    std::ofstream out(path);
    require(out.good(), ErrorCode::Io, "cannot write " + path.string());
    out << doc.dump(2) << '\n';
    written.push_back(path.string());
  }
  return written;
}

}  // namespace emrekit
