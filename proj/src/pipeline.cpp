// SPDX-License-Identifier: Apache-2.0
#include "thinlayer/pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "thinlayer/errors.hpp"
#include "thinlayer/version.hpp"

namespace thinlayer {

using nlohmann::json;
using nlohmann::ordered_json;

Command parse_command(const std::string& text) {
  if (text == "limit-spectrum") return Command::LimitSpectrum;
  if (text == "predict") return Command::Predict;
  if (text == "verify") return Command::Verify;
  fail(ErrorKind::Config, "unknown command '" + text + "' (expected limit-spectrum, predict or verify)");
}

const char* to_string(Command command) {
  switch (command) {
    case Command::LimitSpectrum: return "limit-spectrum";
    case Command::Predict: return "predict";
    case Command::Verify: return "verify";
  }
  return "?";
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    fail(ErrorKind::Io, "SHA-256 digest failed");
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ordered_json config_object(const std::string& text) {
  ordered_json out = ordered_json::object();
  std::istringstream in(text);
  std::string line, section;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.front() == '[') {
      section = line.substr(1, line.size() - 2);
      out[section] = ordered_json::object();
      continue;
    }
    const auto eq = line.find(" = ");
    out[section][line.substr(0, eq)] = line.substr(eq + 3);
  }
  return out;
}

ordered_json point_json(const LimitEigenvalue& p, const Geometry& geometry) {
  ordered_json j;
  j["value"] = p.value;
  j["kind"] = to_string(p.kind);
  j["K"] = p.K;
  j["d"] = p.d;
  j["k_minus"] = p.k_minus;
  j["k_plus"] = p.k_plus;
  ordered_json contributors = ordered_json::array();
  for (const auto& m : p.membrane)
    contributors.push_back({{"source", "membrane"},
                            {"side", to_string(m.side)},
                            {"nu", m.mode.nu},
                            {"sector", to_string(m.mode.sector)},
                            {"index", m.index},
                            {"lambda", m.lambda},
                            {"trace_dr", m.trace_dr}});
  if (p.level)
    contributors.push_back({{"source", "cross_section"},
                            {"level", p.level->index},
                            {"lambda", p.level->lambda},
                            {"theta_minus", p.level->theta_minus},
                            {"theta_plus", p.level->theta_plus}});
  j["contributors"] = contributors;
  if (p.kind == EigenKind::TypeC) {
    const auto g = gram_matrix(psi_vector(p.value, *p.level, p.membrane), geometry);
    ordered_json omegas = ordered_json::array();
    for (const auto& w : g.omegas) omegas.push_back({{"omega", w.omega}, {"nu", w.mode.nu}, {"sector", to_string(w.mode.sector)}});
    j["gram_rank"] = g.rank;
    j["omegas"] = omegas;
  }
  j["warnings"] = p.warnings;
  return j;
}

std::string contributors_text(const LimitEigenvalue& p) {
  std::string s;
  for (const auto& m : p.membrane) {
    if (!s.empty()) s += ' ';
    s += std::string(to_string(m.side)) + ":" + to_string(m.mode);
  }
  if (p.level) {
    if (!s.empty()) s += ' ';
    s += "level:" + std::to_string(p.level->index);
  }
  return s;
}

ordered_json prediction_json(const Prediction& p) {
  ordered_json j;
  j["lambda0"] = p.lambda0;
  j["kind"] = to_string(p.kind);
  j["branch"] = to_string(p.branch);
  j["nu"] = p.mode.nu;
  j["sector"] = to_string(p.mode.sector);
  j["coefficient"] = p.coefficient;
  j["sign"] = p.sign;
  j["expected_order"] = p.expected_order;
  j["provenance"] = p.provenance;
  return j;
}

ordered_json sweep_json(const SweepResult& r) {
  ordered_json j;
  j["prediction"] = prediction_json(r.prediction);
  ordered_json samples = ordered_json::array();
  for (const auto& s : r.samples)
    samples.push_back({{"eps", s.eps},
                       {"matched", s.matched},
                       {"measured", s.measured},
                       {"residual", s.residual},
                       {"error", s.error},
                       {"window", {s.window.first, s.window.second}},
                       {"usable", s.usable},
                       {"note", s.note}});
  j["samples"] = samples;
  j["fitted_order"] = r.fitted_order;
  j["fitted_coefficient"] = r.fitted_coefficient;
  j["used_samples"] = r.used_samples;
  j["verdict"] = to_string(r.verdict);
  j["notes"] = r.notes;
  return j;
}

const char* kCsvColumns[] = {"record", "lambda0", "kind", "K", "d", "k_minus", "k_plus", "contributors",
                             "branch", "nu", "sector", "coefficient", "sign", "expected_order", "provenance",
                             "eps", "matched", "measured", "residual", "error", "window_lo", "window_hi",
                             "usable", "note", "fitted_order", "fitted_coefficient", "used_samples", "verdict"};

class CsvTable {
 public:
  using Row = std::vector<std::pair<std::string, std::string>>;

  void add(const Row& row) {
    std::string line;
    for (std::size_t c = 0; c < std::size(kCsvColumns); ++c) {
      if (c) line += ',';
      for (const auto& [k, v] : row)
        if (k == kCsvColumns[c]) line += escape(v);
    }
    body_ += line + "\n";
  }

  std::string header() const {
    std::string line;
    for (std::size_t c = 0; c < std::size(kCsvColumns); ++c) line += (c ? "," : "") + std::string(kCsvColumns[c]);
    return line + "\n";
  }

  const std::string& body() const { return body_; }

 private:
  static std::string escape(const std::string& v) {
    if (v.find_first_of(",\"\n") == std::string::npos) return v;
    std::string out = "\"";
    for (char ch : v) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return out + "\"";
  }

  std::string body_;
};

CsvTable::Row prediction_cells(const Prediction& p) {
  return {{"lambda0", num(p.lambda0)},
          {"kind", to_string(p.kind)},
          {"branch", to_string(p.branch)},
          {"nu", std::to_string(p.mode.nu)},
          {"sector", to_string(p.mode.sector)},
          {"coefficient", num(p.coefficient)},
          {"sign", std::to_string(p.sign)},
          {"expected_order", num(p.expected_order)},
          {"provenance", p.provenance}};
}

bool keep(const Prediction& p, KindFilter f) {
  switch (f) {
    case KindFilter::All: return true;
    case KindFilter::TypeA: return p.kind == EigenKind::TypeA && p.branch != Branch::SmallSeries;
    case KindFilter::TypeB: return p.kind == EigenKind::TypeB && p.branch != Branch::SmallSeries;
    case KindFilter::TypeC: return p.kind == EigenKind::TypeC;
    case KindFilter::Small: return p.branch == Branch::SmallSeries;
  }
  return true;
}

}  // namespace

RunResult run(Command command, const RunConfig& cfg) {
  cfg.validate();
  RunResult out;
  out.command = command;

  const auto spectrum = classify(cfg.geometry, cfg.model, cfg.lambda_max, cfg.classify_options());
  out.warnings = spectrum.warnings;

  std::vector<LimitEigenvalue> points;
  if (cfg.targets.empty()) {
    points = spectrum.points;
  } else {
    for (double t : cfg.targets) {
      const LimitEigenvalue* hit = nullptr;
      for (const auto& p : spectrum.points)
        if (std::abs(p.value - t) <= 1e-6 * std::max(1.0, std::abs(t))) hit = &p;
      if (!hit)
        fail(ErrorKind::Config, "[sweep] target " + num(t) + " is not a point of the limit spectrum below lambda_max");
      points.push_back(*hit);
    }
  }

  std::vector<Prediction> predictions;
  if (command != Command::LimitSpectrum) {
    const auto modes = cfg.mode_list();
    std::vector<std::vector<Prediction>> per_point(points.size());
    parallel_for(points.size(), cfg.jobs, [&](std::size_t i) {
      per_point[i] = predict(points[i], modes, cfg.geometry, cfg.model, cfg.predict_options());
    });
    for (auto& v : per_point)
      for (auto& p : v)
        if (keep(p, cfg.filter)) predictions.push_back(p);

    const bool zero_selected =
        std::any_of(points.begin(), points.end(), [](const LimitEigenvalue& p) { return p.value == 0.0; });
    if (zero_selected && (cfg.filter == KindFilter::All || cfg.filter == KindFilter::Small)) {
      try {
        for (auto& p : small_eigenvalue_series(cfg.geometry, cfg.model, modes, cfg.predict_options()))
          predictions.push_back(p);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::InvalidCase) throw;
        out.warnings.push_back(std::string("small series skipped: ") + e.what());
      }
    }
  }

  std::vector<SweepResult> sweeps;
  if (command == Command::Verify) {
    sweeps.resize(predictions.size());
    parallel_for(predictions.size(), cfg.jobs, [&](std::size_t i) {
      sweeps[i] = sweep(predictions[i], cfg.eps, cfg.geometry, cfg.model, cfg.sweep_options());
    });
    for (const auto& s : sweeps) {
      if (s.verdict == Verdict::Fail) out.exit_status = 1;
      if (s.verdict == Verdict::Inconclusive)
        out.warnings.push_back("inconclusive: " + std::string(to_string(s.prediction.branch)) + " at lambda0 = " +
                               num(s.prediction.lambda0) + ", mode " + to_string(s.prediction.mode));
    }
  }

  // structured report
  const std::string config_text = cfg.to_text();
  ordered_json j;
  j["tool"] = "thinlayer";
  j["version"] = kVersion;
  j["command"] = to_string(command);
  j["config"] = config_object(config_text);
  j["config_text"] = config_text;
  j["config_sha256"] = sha256_hex(config_text);
  ordered_json pts = ordered_json::array();
  for (const auto& p : points) pts.push_back(point_json(p, cfg.geometry));
  j["limit_spectrum"] = pts;
  if (command != Command::LimitSpectrum) {
    ordered_json preds = ordered_json::array();
    for (const auto& p : predictions) preds.push_back(prediction_json(p));
    j["predictions"] = preds;
  }
  if (command == Command::Verify) {
    ordered_json sw = ordered_json::array();
    for (const auto& s : sweeps) sw.push_back(sweep_json(s));
    j["sweeps"] = sw;
  }
  j["warnings"] = out.warnings;
  j["exit_status"] = out.exit_status;
  j["content_sha256"] = sha256_hex(j.dump());
  out.json = j.dump(2) + "\n";

  // flat table carrying the same records
  CsvTable table;
  for (const auto& p : points)
    table.add({{"record", "point"},
               {"lambda0", num(p.value)},
               {"kind", to_string(p.kind)},
               {"K", std::to_string(p.K)},
               {"d", std::to_string(p.d)},
               {"k_minus", std::to_string(p.k_minus)},
               {"k_plus", std::to_string(p.k_plus)},
               {"contributors", contributors_text(p)},
               {"note", [&] {
                  std::string s;
                  for (const auto& w : p.warnings) s += (s.empty() ? "" : "; ") + w;
                  return s;
                }()}});
  if (command == Command::Predict)
    for (const auto& p : predictions) {
      auto row = prediction_cells(p);
      row.emplace_back("record", "prediction");
      table.add(row);
    }
  if (command == Command::Verify)
    for (const auto& s : sweeps)
      for (const auto& smp : s.samples) {
        auto row = prediction_cells(s.prediction);
        row.insert(row.end(), {{"record", "sample"},
                               {"eps", num(smp.eps)},
                               {"matched", smp.matched ? "true" : "false"},
                               {"measured", num(smp.measured)},
                               {"residual", num(smp.residual)},
                               {"error", num(smp.error)},
                               {"window_lo", num(smp.window.first)},
                               {"window_hi", num(smp.window.second)},
                               {"usable", smp.usable ? "true" : "false"},
                               {"note", smp.note},
                               {"fitted_order", num(s.fitted_order)},
                               {"fitted_coefficient", num(s.fitted_coefficient)},
                               {"used_samples", std::to_string(s.used_samples)},
                               {"verdict", to_string(s.verdict)}});
        table.add(row);
      }
  std::ostringstream csv;
  csv << "# thinlayer " << kVersion << " " << to_string(command) << "\n";
  csv << "# config_sha256 " << j["config_sha256"].get<std::string>() << "\n";
  csv << "# content_sha256 " << j["content_sha256"].get<std::string>() << "\n";
  std::istringstream cfg_lines(config_text);
  for (std::string line; std::getline(cfg_lines, line);)
    if (!line.empty()) csv << "# config: " << line << "\n";
  csv << table.header() << table.body();
  out.csv = csv.str();
  return out;
}

void write_outputs(const RunResult& result, const std::string& dir, const std::string& name) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorKind::Io, "cannot create output directory '" + dir + "': " + ec.message());
  for (const auto& [ext, text] : {std::pair<std::string, const std::string*>{".json", &result.json},
                                  std::pair<std::string, const std::string*>{".csv", &result.csv}}) {
    const auto path = std::filesystem::path(dir) / (name + ext);
    std::ofstream f(path, std::ios::binary);
    if (!f) fail(ErrorKind::Io, "cannot write '" + path.string() + "'");
    f << *text;
    if (!f) fail(ErrorKind::Io, "write to '" + path.string() + "' failed");
  }
}

}  // namespace thinlayer
