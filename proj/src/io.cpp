#include "floatctl/io.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "floatctl/errors.hpp"

namespace floatctl {

using nlohmann::json;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& v, const std::string& key) {
  try {
    size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing");
    return x;
  } catch (const std::exception&) {
    throw ConfigError("cannot parse number for '" + key + "': '" + v + "'");
  }
}

// generic "# key = value" header + csv body reader
struct CsvTable {
  std::map<std::string, std::string> header;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open file: " + path);
  CsvTable t;
  std::string line;
  bool have_columns = false;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq != std::string::npos) {
        t.header[trim(line.substr(1, eq - 1))] = trim(line.substr(eq + 1));
      }
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
    if (!have_columns) {
      t.columns = cells;
      have_columns = true;
      continue;
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) row.push_back(parse_number(c, "csv cell"));
    t.rows.push_back(std::move(row));
  }
  return t;
}

double header_num(const CsvTable& t, const std::string& key) {
  auto it = t.header.find(key);
  if (it == t.header.end()) throw ConfigError("missing header '" + key + "'");
  return parse_number(it->second, key);
}

} // namespace

LoadedConfig load_config_file(const std::string& path) {
  const std::string text = slurp(path);
  LoadedConfig lc;
  lc.source_path = path;
  lc.hash = fnv1a(text);

  std::map<std::string, std::string> kv;
  std::string section;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[' && line.back() == ']') {
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("config line without '=': " + line);
    kv[section + "." + trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }

  auto need = [&](const std::string& key) {
    auto it = kv.find(key);
    if (it == kv.end()) throw ConfigError("config missing key '" + key + "'");
    return it->second;
  };

  const double g = parse_number(need("fluid.g"), "fluid.g");
  const double rho = parse_number(need("fluid.rho"), "fluid.rho");
  const double h0 = parse_number(need("fluid.h0"), "fluid.h0");
  const double l = parse_number(need("geometry.l"), "geometry.l");
  const double L = parse_number(need("geometry.L"), "geometry.L");
  const double Lp = parse_number(need("geometry.Lp"), "geometry.Lp");

  const std::string heq_token = need("object.h_eq");
  HeqProfile prof = HeqProfile::flat(1.0);
  if (heq_token.rfind("samples:", 0) == 0) {
    std::filesystem::path sample_path(trim(heq_token.substr(8)));
    if (sample_path.is_relative())
      sample_path = std::filesystem::path(path).parent_path() / sample_path;
    const CsvTable t = read_csv(sample_path.string());
    std::vector<double> xs, vs;
    for (const auto& row : t.rows) {
      if (row.size() < 2) throw ConfigError("h_eq sample rows need x,value");
      xs.push_back(row[0]);
      vs.push_back(row[1]);
    }
    prof = HeqProfile::sampled(std::move(xs), std::move(vs));
  } else {
    prof = HeqProfile::parse_token(heq_token);
  }

  lc.physical = build_config(g, rho, h0, l, L, Lp, prof);
  if (auto it = kv.find("grid.cells"); it != kv.end())
    lc.cells = static_cast<int>(parse_number(it->second, "grid.cells"));
  if (lc.cells < 4) throw ConfigError("grid.cells must be at least 4");
  return lc;
}

void write_state_csv(const std::string& path, const State& z) {
  const auto& g = *z.grid;
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write file: " + path);
  out << "# floatctl state v1\n";
  out << "# L = " << format_double(g.L()) << "\n";
  out << "# l = " << format_double(g.l()) << "\n";
  out << "# Lp = " << format_double(g.Lp()) << "\n";
  out << "# cells_left = " << g.n_minus() << "\n";
  out << "# cells_right = " << g.n_plus() << "\n";
  out << "# qi_avg = " << format_double(z.qi_avg) << "\n";
  out << "# delta = " << format_double(z.delta) << "\n";
  out << "# eta = " << format_double(z.eta) << "\n";
  out << "x,zeta,q\n";
  const Eigen::VectorXd ql = q_full_component(z, -1);
  const Eigen::VectorXd qr = q_full_component(z, +1);
  for (int j = 0; j <= g.n_minus(); ++j)
    out << format_double(g.zeta_node(j)) << "," << format_double(z.zeta[j]) << ","
        << format_double(ql[j]) << "\n";
  for (int j = 0; j <= g.n_plus(); ++j)
    out << format_double(g.zeta_node(g.n_minus() + 1 + j)) << ","
        << format_double(z.zeta[g.n_minus() + 1 + j]) << "," << format_double(qr[j]) << "\n";
}

State read_state_csv(const std::string& path) {
  const CsvTable t = read_csv(path);
  const int nm = static_cast<int>(header_num(t, "cells_left"));
  const int np = static_cast<int>(header_num(t, "cells_right"));
  auto grid = std::make_shared<ExteriorGrid>(header_num(t, "L"), header_num(t, "l"),
                                             header_num(t, "Lp"), nm, np);
  if (static_cast<int>(t.rows.size()) != nm + np + 2)
    throw ConfigError("state csv row count does not match the grid");
  State z = State::zero(grid);
  z.qi_avg = header_num(t, "qi_avg");
  z.delta = header_num(t, "delta");
  z.eta = header_num(t, "eta");
  for (int j = 0; j < nm + np + 2; ++j) {
    if (t.rows[j].size() < 3) throw ConfigError("state csv rows need x,zeta,q");
    z.zeta[j] = t.rows[j][1];
  }
  for (int j = 1; j < nm; ++j) z.q[j - 1] = t.rows[j][2];
  for (int j = 1; j < np; ++j) z.q[nm - 1 + j - 1] = t.rows[nm + 1 + j][2];
  return z;
}

std::string state_to_json(const State& z) {
  const auto& g = *z.grid;
  json j;
  j["format"] = "floatctl-state";
  j["L"] = g.L();
  j["l"] = g.l();
  j["Lp"] = g.Lp();
  j["cells_left"] = g.n_minus();
  j["cells_right"] = g.n_plus();
  j["qi_avg"] = z.qi_avg;
  j["delta"] = z.delta;
  j["eta"] = z.eta;
  j["zeta"] = std::vector<double>(z.zeta.data(), z.zeta.data() + z.zeta.size());
  j["q_interior"] = std::vector<double>(z.q.data(), z.q.data() + z.q.size());
  return j.dump(2);
}

State state_from_json(const std::string& text) {
  const json j = json::parse(text);
  auto grid = std::make_shared<ExteriorGrid>(j.at("L").get<double>(), j.at("l").get<double>(),
                                             j.at("Lp").get<double>(), j.at("cells_left").get<int>(),
                                             j.at("cells_right").get<int>());
  State z = State::zero(grid);
  const auto zeta = j.at("zeta").get<std::vector<double>>();
  const auto q = j.at("q_interior").get<std::vector<double>>();
  if (static_cast<int>(zeta.size()) != z.zeta.size() || static_cast<int>(q.size()) != z.q.size())
    throw ConfigError("state json field sizes do not match the grid");
  for (size_t i = 0; i < zeta.size(); ++i) z.zeta[static_cast<int>(i)] = zeta[i];
  for (size_t i = 0; i < q.size(); ++i) z.q[static_cast<int>(i)] = q[i];
  z.qi_avg = j.at("qi_avg").get<double>();
  z.delta = j.at("delta").get<double>();
  z.eta = j.at("eta").get<double>();
  return z;
}

void write_control_csv(const std::string& path, const ControlSignal& u) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write file: " + path);
  out << "# floatctl control v1\n";
  out << "# dt = " << format_double(u.dt) << "\n";
  out << "t,u\n";
  for (size_t n = 0; n < u.samples.size(); ++n)
    out << format_double(n * u.dt) << "," << format_double(u.samples[n]) << "\n";
}

ControlSignal read_control_csv(const std::string& path) {
  const CsvTable t = read_csv(path);
  ControlSignal u;
  u.dt = header_num(t, "dt");
  u.samples.reserve(t.rows.size());
  for (const auto& row : t.rows) {
    if (row.size() < 2) throw ConfigError("control csv rows need t,u");
    u.samples.push_back(row[1]);
  }
  return u;
}

void write_spectrum_csv(const std::string& path, const SpectrumReport& rep,
                        const PhysicalConfig& cfg, const std::vector<double>& residuals) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write file: " + path);
  out << "# floatctl spectrum v1\n";
  out << "# branch = "
      << (rep.modes.empty() || rep.modes.front().branch == SymmetryClass::general ? "general"
                                                                                  : "symmetric")
      << "\n";
  out << "# tau0 = " << format_double(cfg.tau0) << "\n";
  out << "k,omega,gap,K1,K2,gamma,residual\n";
  for (size_t k = 0; k < rep.modes.size(); ++k) {
    const auto& m = rep.modes[k];
    const double gap = k == 0 ? 0.0 : m.omega - rep.modes[k - 1].omega;
    out << m.k_index << "," << format_double(m.omega) << "," << format_double(gap) << ","
        << format_double(m.K1) << "," << format_double(m.K2) << "," << format_double(m.gamma)
        << "," << format_double(k < residuals.size() ? residuals[k] : 0.0) << "\n";
  }
}

std::string spectrum_report_to_json(const SpectrumReport& rep, const PhysicalConfig& cfg) {
  json j;
  j["tool_version"] = kToolVersion;
  j["tau0"] = cfg.tau0;
  json modes = json::array();
  for (const auto& m : rep.modes) {
    modes.push_back({{"k", m.k_index},
                     {"omega", m.omega},
                     {"K1", m.K1},
                     {"K2", m.K2},
                     {"gamma", m.gamma},
                     {"c", m.c},
                     {"a_im", m.a_im},
                     {"b", m.b},
                     {"authority", m.control_authority()}});
  }
  j["modes"] = modes;
  if (!rep.gaps.empty) {
    j["gaps"] = {{"min_gap", rep.gaps.min_gap},
                 {"min_gap_k", rep.gaps.min_gap_k},
                 {"min_k_gap", rep.gaps.min_k_gap},
                 {"asymptotic_gap_left", rep.gaps.asymptotic_gap_left},
                 {"asymptotic_gap_right", rep.gaps.asymptotic_gap_right}};
  }
  const char* cls = rep.gaps.ratio_class == GapReport::RatioClass::rational_one_over_k
                        ? "rational_(r+1)/r_one_over_k_gap"
                        : (rep.gaps.ratio_class == GapReport::RatioClass::irrational
                               ? "irrational_one_over_k_gap"
                               : "rational_uniform_gap");
  j["ratio"] = {{"value", rep.gaps.ratio},
                {"class", cls},
                {"p", rep.gaps.ratio_p},
                {"q", rep.gaps.ratio_q}};
  const auto& r = rep.resonance;
  const char* simp = r.simplicity == ResonanceReport::Simplicity::guaranteed
                         ? "guaranteed"
                         : (r.simplicity == ResonanceReport::Simplicity::excluded_candidate
                                ? "excluded_candidate"
                                : "undetermined");
  j["resonance"] = {{"kappa", r.kappa},
                    {"kappa_positive", r.kappa_positive},
                    {"omega_candidate", r.omega_candidate},
                    {"integer_value", r.integer_value},
                    {"integer_distance", r.integer_distance},
                    {"integer_holds", r.integer_holds},
                    {"tan_residual", r.tan_residual},
                    {"tan_holds", r.tan_holds},
                    {"double_candidate", r.double_candidate},
                    {"flat_bottom", r.flat_bottom},
                    {"band_low", r.band_low},
                    {"band_high", r.band_high},
                    {"simplicity", simp}};
  j["cluster_flags"] = rep.cluster_flags;
  return j.dump(2);
}

void write_manifest(const std::string& path, const RunManifest& m) {
  json j;
  j["config_hash"] = m.config_hash;
  j["subcommand"] = m.subcommand;
  j["parameters"] = m.parameters;
  j["outputs"] = m.outputs;
  j["tool_version"] = m.tool_version;
  j["wall_clock_seconds"] = m.wall_clock_seconds;
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write file: " + path);
  out << j.dump(2) << "\n";
}

} // namespace floatctl
