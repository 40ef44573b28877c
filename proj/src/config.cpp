// SPDX-License-Identifier: Apache-2.0
#include "thinlayer/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "thinlayer/errors.hpp"

namespace thinlayer {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return char(std::tolower(c)); });
  return s;
}

double to_double(const std::string& text) {
  const std::string t = trim(text);
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (t.empty() || used != t.size() || !std::isfinite(v)) fail(ErrorKind::Config, "expected a number, got '" + t + "'");
  return v;
}

long to_long(const std::string& text) {
  const std::string t = trim(text);
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(t, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (t.empty() || used != t.size()) fail(ErrorKind::Config, "expected an integer, got '" + t + "'");
  return v;
}

std::vector<std::string> split_list(const std::string& text) {
  std::string buf = text;
  std::replace(buf.begin(), buf.end(), ',', ' ');
  std::istringstream in(buf);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::string num(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

template <class T, class F>
std::string join(const std::vector<T>& v, F f) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + f(v[i]);
  return out;
}

}  // namespace

const char* to_string(KindFilter filter) {
  switch (filter) {
    case KindFilter::All: return "all";
    case KindFilter::TypeA: return "TypeA";
    case KindFilter::TypeB: return "TypeB";
    case KindFilter::TypeC: return "TypeC";
    case KindFilter::Small: return "small";
  }
  return "?";
}

KindFilter parse_filter(const std::string& text) {
  const std::string t = lower(trim(text));
  if (t == "all") return KindFilter::All;
  if (t == "typea" || t == "a") return KindFilter::TypeA;
  if (t == "typeb" || t == "b") return KindFilter::TypeB;
  if (t == "typec" || t == "c") return KindFilter::TypeC;
  if (t == "small" || t == "smallseries") return KindFilter::Small;
  fail(ErrorKind::Config, "unknown filter '" + text + "' (expected all, TypeA, TypeB, TypeC or small)");
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const auto& tok : split_list(text)) {
    const auto dash = tok.find('-', 1);
    if (dash != std::string::npos) {
      const long a = to_long(tok.substr(0, dash)), b = to_long(tok.substr(dash + 1));
      if (b < a) fail(ErrorKind::Config, "empty range '" + tok + "'");
      for (long i = a; i <= b; ++i) out.push_back(int(i));
    } else {
      out.push_back(int(to_long(tok)));
    }
  }
  if (out.empty()) fail(ErrorKind::Config, "empty list");
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& tok : split_list(text)) out.push_back(to_double(tok));
  return out;
}

void RunConfig::set(const std::string& section_in, const std::string& key_in, const std::string& value_in, int line) {
  const std::string section = lower(trim(section_in)), key = lower(trim(key_in)), value = trim(value_in);
  const std::string where = line > 0 ? "line " + std::to_string(line) + ": " : "";
  auto unknown = [&]() {
    fail(ErrorKind::Config, where + "unknown key '" + key + "' in [" + section + "]");
  };
  try {
    if (section == "geometry") {
      if (key == "r1") geometry.r1 = to_double(value);
      else if (key == "r2") geometry.r2 = to_double(value);
      else if (key == "outer_bc") {
        const auto v = lower(value);
        if (v == "dirichlet") geometry.outer_bc = OuterBc::Dirichlet;
        else if (v == "neumann") geometry.outer_bc = OuterBc::Neumann;
        else if (v == "robin") geometry.outer_bc = OuterBc::Robin;
        else fail(ErrorKind::Config, "outer_bc must be dirichlet, neumann or robin");
      } else if (key == "robin_sigma") geometry.robin_sigma = to_double(value);
      else unknown();
    } else if (section == "coefficients") {
      if (key == "rho") model.rho = Profile::parse(value);
      else if (key == "a") model.a = Profile::parse(value);
      else if (key == "q") model.q = Profile::parse(value);
      else unknown();
    } else if (section == "sweep") {
      if (key == "modes") modes = parse_int_list(value);
      else if (key == "sectors") {
        const auto v = lower(value);
        if (v == "cos") sectors = {Sector::Cos};
        else if (v == "sin") sectors = {Sector::Sin};
        else if (v == "both") sectors = {Sector::Cos, Sector::Sin};
        else fail(ErrorKind::Config, "sectors must be cos, sin or both");
      } else if (key == "eps") eps = parse_double_list(value);
      else if (key == "lambda_max") lambda_max = to_double(value);
      else if (key == "targets") targets = lower(value) == "all" ? std::vector<double>{} : parse_double_list(value);
      else if (key == "filter") filter = parse_filter(value);
      else unknown();
    } else if (section == "tolerances") {
      if (key == "intersection_rel") intersection_rel = to_double(value);
      else if (key == "solver") solver_tol = to_double(value);
      else if (key == "order") order_tol = to_double(value);
      else if (key == "window_constant") window_constant = to_double(value);
      else if (key == "pole_guard") pole_guard = to_double(value);
      else if (key == "cross_section") cross_section_tol = to_double(value);
      else if (key == "membrane") membrane_tol = to_double(value);
      else unknown();
    } else if (section == "mesh") {
      if (key == "layer_min") mesh.layer_min = int(to_long(value));
      else if (key == "bulk_cells") mesh.bulk_cells = to_double(value);
      else if (key == "grading") mesh.grading = to_double(value);
      else if (key == "refinements") mesh.refinements = int(to_long(value));
      else if (key == "membrane_nodes") membrane_nodes = std::size_t(to_long(value));
      else if (key == "cross_section_nodes") cross_section_nodes = std::size_t(to_long(value));
      else if (key == "dtn_nodes") dtn_nodes = std::size_t(to_long(value));
      else unknown();
    } else if (section == "output") {
      if (key == "dir") out_dir = value;
      else if (key == "name") name = value;
      else if (key == "jobs") jobs = int(to_long(value));
      else unknown();
    } else {
      fail(ErrorKind::Config, where + "unknown section [" + section + "]");
    }
  } catch (const Error& e) {
    const std::string msg = e.what();
    if (!where.empty() && msg.rfind(where, 0) != 0)
      fail(ErrorKind::Config, where + "[" + section + "] " + key + ": " + msg);
    fail(ErrorKind::Config, msg);
  }
}

void RunConfig::validate() const {
  auto bad = [](const std::string& m) { fail(ErrorKind::Config, m); };
  try {
    geometry.validate();
    model.validate(geometry);
  } catch (const Error& e) {
    bad(e.what());
  }
  if (modes.empty()) bad("[sweep] modes is empty");
  for (int m : modes)
    if (m < 0) bad("[sweep] modes must be nonnegative");
  if (eps.size() < 3) bad("[sweep] eps needs at least 3 values");
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(eps[i] > 0)) bad("[sweep] eps values must be positive");
    if (i > 0 && !(eps[i] < eps[i - 1])) bad("[sweep] eps values must decrease strictly");
  }
  if (!(eps.front() < 0.5 * (geometry.r2 - geometry.r1)) || !(eps.front() < 0.5 * geometry.r1))
    bad("[sweep] largest eps must stay below (r2 - r1)/2 and r1/2");
  for (double v : {intersection_rel, solver_tol, order_tol, window_constant, pole_guard, cross_section_tol,
                   membrane_tol})
    if (!(v > 0)) bad("[tolerances] values must be positive");
  if (mesh.layer_min < 1) bad("[mesh] layer_min must be positive");
  if (!(mesh.grading > 1.0 && mesh.grading <= 1.3)) bad("[mesh] grading must lie in (1, 1.3]");
  if (!(mesh.bulk_cells >= 10)) bad("[mesh] bulk_cells must be at least 10");
  if (mesh.refinements < 0 || mesh.refinements > 4) bad("[mesh] refinements must lie in 0..4");
  if (membrane_nodes < 5 || membrane_nodes % 2 == 0) bad("[mesh] membrane_nodes must be odd and at least 5");
  if (cross_section_nodes < 9) bad("[mesh] cross_section_nodes must be at least 9");
  if (dtn_nodes < 5) bad("[mesh] dtn_nodes must be at least 5");
  if (jobs < 1) bad("[output] jobs must be at least 1");
  if (name.empty() || name.find('/') != std::string::npos) bad("[output] name must be a plain file stem");
}

std::vector<ModeIndex> RunConfig::mode_list() const {
  std::vector<ModeIndex> out;
  for (int nu : modes)
    for (Sector s : sectors) {
      if (nu == 0 && s == Sector::Sin) continue;
      const ModeIndex m{nu, s};
      if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
    }
  // mode 0 has only a cos sector; keep it when only sin was asked for
  if (std::find(modes.begin(), modes.end(), 0) != modes.end() &&
      std::find(out.begin(), out.end(), ModeIndex{0, Sector::Cos}) == out.end())
    out.insert(out.begin(), ModeIndex{0, Sector::Cos});
  return out;
}

std::string RunConfig::to_text() const {
  std::ostringstream o;
  o << "[geometry]\n"
    << "r1 = " << num(geometry.r1) << "\n"
    << "r2 = " << num(geometry.r2) << "\n"
    << "outer_bc = " << to_string(geometry.outer_bc) << "\n"
    << "robin_sigma = " << num(geometry.robin_sigma) << "\n\n"
    << "[coefficients]\n"
    << "rho = " << model.rho.describe() << "\n"
    << "a = " << model.a.describe() << "\n"
    << "q = " << model.q.describe() << "\n\n"
    << "[sweep]\n"
    << "modes = " << join(modes, [](int m) { return std::to_string(m); }) << "\n"
    << "sectors = " << (sectors.size() == 2 ? "both" : to_string(sectors.front())) << "\n"
    << "eps = " << join(eps, num) << "\n"
    << "lambda_max = " << num(lambda_max) << "\n"
    << "targets = " << (targets.empty() ? std::string("all") : join(targets, num)) << "\n"
    << "filter = " << to_string(filter) << "\n\n"
    << "[tolerances]\n"
    << "intersection_rel = " << num(intersection_rel) << "\n"
    << "solver = " << num(solver_tol) << "\n"
    << "order = " << num(order_tol) << "\n"
    << "window_constant = " << num(window_constant) << "\n"
    << "pole_guard = " << num(pole_guard) << "\n"
    << "cross_section = " << num(cross_section_tol) << "\n"
    << "membrane = " << num(membrane_tol) << "\n\n"
    << "[mesh]\n"
    << "layer_min = " << mesh.layer_min << "\n"
    << "bulk_cells = " << num(mesh.bulk_cells) << "\n"
    << "grading = " << num(mesh.grading) << "\n"
    << "refinements = " << mesh.refinements << "\n"
    << "membrane_nodes = " << membrane_nodes << "\n"
    << "cross_section_nodes = " << cross_section_nodes << "\n"
    << "dtn_nodes = " << dtn_nodes << "\n\n"
    << "[output]\n"
    << "dir = " << out_dir << "\n"
    << "name = " << name << "\n"
    << "jobs = " << jobs << "\n";
  return o.str();
}

ClassifyOptions RunConfig::classify_options() const {
  ClassifyOptions o;
  o.nu_max = *std::max_element(modes.begin(), modes.end());
  o.sectors = sectors;
  o.intersection_rel_tol = intersection_rel;
  o.tol = membrane_tol;
  o.membrane.nodes = membrane_nodes;
  o.cross_section.nodes = cross_section_nodes;
  return o;
}

PredictOptions RunConfig::predict_options() const {
  PredictOptions o;
  o.dtn.nodes = dtn_nodes;
  o.dtn.pole_guard = pole_guard;
  o.dtn.intersection_rel_tol = intersection_rel;
  o.cross_section.nodes = cross_section_nodes;
  return o;
}

SweepOptions RunConfig::sweep_options() const {
  SweepOptions o;
  o.window_constant = window_constant;
  o.order_tol = order_tol;
  o.tol = solver_tol;
  o.mesh = mesh;
  return o;
}

RunConfig parse_config(const std::string& text, const std::string& origin) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string raw, section;
  int line = 0;
  std::vector<std::string> seen;
  try {
    while (std::getline(in, raw)) {
      ++line;
      std::string s = trim(raw);
      if (s.empty() || s[0] == '#' || s[0] == ';') continue;
      if (s.front() == '[') {
        if (s.back() != ']') fail(ErrorKind::Config, "line " + std::to_string(line) + ": malformed section header");
        section = lower(trim(s.substr(1, s.size() - 2)));
        static const char* known[] = {"geometry", "coefficients", "sweep", "tolerances", "mesh", "output"};
        if (std::find(std::begin(known), std::end(known), section) == std::end(known))
          fail(ErrorKind::Config, "line " + std::to_string(line) + ": unknown section [" + section + "]");
        continue;
      }
      const auto eq = s.find('=');
      if (eq == std::string::npos)
        fail(ErrorKind::Config, "line " + std::to_string(line) + ": expected 'key = value'");
      if (section.empty())
        fail(ErrorKind::Config, "line " + std::to_string(line) + ": setting outside of any section");
      std::string value = s.substr(eq + 1);
      // trailing comments
      const auto hash = value.find(" #");
      if (hash != std::string::npos) value = value.substr(0, hash);
      const std::string key = lower(trim(s.substr(0, eq)));
      const std::string full = section + "." + key;
      if (std::find(seen.begin(), seen.end(), full) != seen.end())
        fail(ErrorKind::Config, "line " + std::to_string(line) + ": duplicate key '" + key + "'");
      seen.push_back(full);
      cfg.set(section, key, value, line);
    }
    cfg.validate();
  } catch (const Error& e) {
    fail(ErrorKind::Config, origin + ": " + e.what());
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Config, "cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

}  // namespace thinlayer
