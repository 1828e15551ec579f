#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "jostlp/errors.hpp"
#include "jostlp/grid.hpp"
#include "jostlp/io.hpp"
#include "jostlp/potential.hpp"

namespace jostlp {

//! One experiment: command plus every knob it may need. Parsed from a
//! flat key-value config with [sections]; flags override single fields.
struct RunConfig {
  std::string command; // scatter | jost | kernel | besov | crossloc | counterexample | verify-all

  // [potential]
  std::string pot_kind = "square_barrier";
  double v0 = 1.0, half_width = 1.0, width = 1.0;
  double gamma = 2.0;
  std::string pot_file; // sampled kind: two-column CSV (x, V)

  // [grid]
  double x_min = -40.0, x_max = 40.0;
  int n_points = 2049;

  // [frequency]
  double tau_max = 20.0;
  int n_half = 400;
  bool include_zero = false;

  // [besov]
  std::vector<double> s_list{0.0, 0.2, 0.4};
  double p = 2.0;
  int j_min = -6, j_max = 6;

  // [scales]
  std::vector<double> M_list{0.25, 1.0, 4.0, 16.0};

  // [crossloc]
  int k = 4;
  std::vector<int> j_list{0, 1, 2, 3, 4};
  int probe_count = 32;

  // [counterexample]
  std::vector<int> N_list{4, 8, 16, 32, 64};

  // [run]
  std::uint64_t seed = 12345;
  std::string out_dir = "out";
  double tol = 1e-8;

  //! Canonical text used for the config hash recorded in outputs.
  std::string canonical() const {
    std::ostringstream os;
    os << "command=" << command << ";pot=" << pot_kind << "," << format_double(v0)
       << "," << format_double(half_width) << "," << format_double(width) << ","
       << format_double(gamma) << "," << pot_file << ";grid=" << format_double(x_min)
       << "," << format_double(x_max) << "," << n_points
       << ";freq=" << format_double(tau_max) << "," << n_half << "," << include_zero
       << ";besov=p" << format_double(p) << ",j" << j_min << ".." << j_max << ",s";
    for (double s : s_list) os << format_double(s) << "|";
    os << ";M=";
    for (double M : M_list) os << format_double(M) << "|";
    os << ";crossloc=k" << k << ",probes" << probe_count << ",j";
    for (int j : j_list) os << j << "|";
    os << ";N=";
    for (int N : N_list) os << N << "|";
    os << ";seed=" << seed << ";tol=" << format_double(tol);
    return os.str();
  }

  std::string config_hash() const { return hex64(fnv1a64(canonical())); }
};

namespace detail {

inline std::string trim(const std::string &s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

template <typename T> T parse_num(const std::string &v, const std::string &field);

template <> inline double parse_num<double>(const std::string &v, const std::string &field) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception &) {
    throw validation_error("config: field '" + field + "' expects a number, got '" + v + "'");
  }
}

template <> inline int parse_num<int>(const std::string &v, const std::string &field) {
  try {
    std::size_t pos = 0;
    const int d = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception &) {
    throw validation_error("config: field '" + field + "' expects an integer, got '" + v + "'");
  }
}

template <typename T>
inline std::vector<T> parse_list(const std::string &v, const std::string &field) {
  std::vector<T> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(parse_num<T>(item, field));
  }
  if (out.empty())
    throw validation_error("config: field '" + field + "' expects a comma list");
  return out;
}

} // namespace detail

inline RunConfig parse_config_text(const std::string &text) {
  RunConfig cfg;
  std::istringstream is(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto cut = line.find_first_of("#;");
    if (cut != std::string::npos) line = line.substr(0, cut);
    line = detail::trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw validation_error("config line " + std::to_string(lineno) +
                               ": malformed section header");
      section = detail::trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw validation_error("config line " + std::to_string(lineno) +
                             ": expected key=value");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string val = detail::trim(line.substr(eq + 1));
    const std::string field = "[" + section + "] " + key;

    if (section == "run") {
      if (key == "command") cfg.command = val;
      else if (key == "seed") cfg.seed = std::uint64_t(std::stoull(val));
      else if (key == "out") cfg.out_dir = val;
      else if (key == "tol") cfg.tol = detail::parse_num<double>(val, field);
      else throw validation_error("config: unknown key '" + field + "'");
    } else if (section == "potential") {
      if (key == "kind") cfg.pot_kind = val;
      else if (key == "v0") cfg.v0 = detail::parse_num<double>(val, field);
      else if (key == "half_width") cfg.half_width = detail::parse_num<double>(val, field);
      else if (key == "width") cfg.width = detail::parse_num<double>(val, field);
      else if (key == "gamma") cfg.gamma = detail::parse_num<double>(val, field);
      else if (key == "file") cfg.pot_file = val;
      else throw validation_error("config: unknown key '" + field + "'");
    } else if (section == "grid") {
      if (key == "x_min") cfg.x_min = detail::parse_num<double>(val, field);
      else if (key == "x_max") cfg.x_max = detail::parse_num<double>(val, field);
      else if (key == "n_points") cfg.n_points = detail::parse_num<int>(val, field);
      else throw validation_error("config: unknown key '" + field + "'");
    } else if (section == "frequency") {
      if (key == "tau_max") cfg.tau_max = detail::parse_num<double>(val, field);
      else if (key == "n_half") cfg.n_half = detail::parse_num<int>(val, field);
      else if (key == "include_zero") cfg.include_zero = (val == "true" || val == "1");
      else throw validation_error("config: unknown key '" + field + "'");
    } else if (section == "besov") {
      if (key == "s_list") cfg.s_list = detail::parse_list<double>(val, field);
      else if (key == "p") cfg.p = detail::parse_num<double>(val, field);
      else if (key == "j_min") cfg.j_min = detail::parse_num<int>(val, field);
      else if (key == "j_max") cfg.j_max = detail::parse_num<int>(val, field);
      else throw validation_error("config: unknown key '" + field + "'");
    } else if (section == "scales") {
      if (key == "M_list") cfg.M_list = detail::parse_list<double>(val, field);
      else throw validation_error("config: unknown key '" + field + "'");
    } else if (section == "crossloc") {
      if (key == "k") cfg.k = detail::parse_num<int>(val, field);
      else if (key == "j_list") cfg.j_list = detail::parse_list<int>(val, field);
      else if (key == "probes") cfg.probe_count = detail::parse_num<int>(val, field);
      else throw validation_error("config: unknown key '" + field + "'");
    } else if (section == "counterexample") {
      if (key == "N_list") cfg.N_list = detail::parse_list<int>(val, field);
      else throw validation_error("config: unknown key '" + field + "'");
    } else {
      throw validation_error("config: unknown section [" + section + "]");
    }
  }
  return cfg;
}

inline RunConfig load_config(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw validation_error("config: cannot open file " + path);
  std::ostringstream buf;
  buf << is.rdbuf();
  return parse_config_text(buf.str());
}

inline Potential make_potential(const RunConfig &cfg) {
  if (cfg.pot_kind == "zero") return Potential::zero();
  if (cfg.pot_kind == "square_barrier")
    return Potential::square_barrier(cfg.v0, cfg.half_width, cfg.gamma);
  if (cfg.pot_kind == "gaussian") return Potential::gaussian(cfg.v0, cfg.width, cfg.gamma);
  if (cfg.pot_kind == "sech2_barrier") return Potential::sech2_barrier(cfg.v0, cfg.gamma);
  if (cfg.pot_kind == "sampled") {
    if (cfg.pot_file.empty())
      throw validation_error("config: field '[potential] file' required for kind=sampled");
    auto [xs, vs] = load_two_column_csv(cfg.pot_file);
    return Potential::sampled(std::move(xs), std::move(vs), cfg.gamma);
  }
  throw validation_error("config: field '[potential] kind' must be one of zero, "
                         "square_barrier, gaussian, sech2_barrier, sampled (got '" +
                         cfg.pot_kind + "')");
}

inline SpatialGrid make_grid(const RunConfig &cfg) {
  try {
    return SpatialGrid(cfg.x_min, cfg.x_max, cfg.n_points);
  } catch (const validation_error &e) {
    throw validation_error(std::string("config: [grid] invalid: ") + e.what());
  }
}

inline void validate_config(const RunConfig &cfg) {
  static const std::vector<std::string> commands = {
      "scatter", "jost", "kernel", "besov", "crossloc", "counterexample", "verify-all"};
  bool ok = false;
  for (const auto &c : commands) ok = ok || c == cfg.command;
  if (!ok)
    throw validation_error("config: field '[run] command' must be one of scatter, "
                           "jost, kernel, besov, crossloc, counterexample, "
                           "verify-all (got '" + cfg.command + "')");
  if (!(cfg.tol > 0))
    throw validation_error("config: field '[run] tol' must be positive");
  make_grid(cfg);
  make_potential(cfg); // validates potential fields and file existence
  if (!(cfg.tau_max > 0) || cfg.n_half < 2)
    throw validation_error("config: [frequency] requires tau_max > 0 and n_half >= 2");
  if (cfg.command == "counterexample")
    for (int N : cfg.N_list)
      if (N < 0) throw validation_error("config: field '[counterexample] N_list' "
                                        "entries must be >= 0");
}

} // namespace jostlp
