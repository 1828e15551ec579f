#pragma once

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "jostlp/errors.hpp"
#include "jostlp/jost_field.hpp"
#include "jostlp/kernels.hpp"

namespace jostlp {

inline std::uint64_t fnv1a64(const std::string &s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

//! Shortest round-trippable decimal ('.' decimal point, C locale).
inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void ensure_dir(const std::string &dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw error("cannot create output directory " + dir + ": " + ec.message());
}

//! CSV with '#'-prefixed metadata lines, a header row, then numeric rows.
inline void write_csv(const std::string &path, const std::vector<std::string> &meta,
                      const std::vector<std::string> &columns,
                      const std::vector<std::vector<double>> &rows) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw error("cannot open " + path + " for writing");
  for (const auto &m : meta) os << "# " << m << "\n";
  for (std::size_t c = 0; c < columns.size(); ++c)
    os << columns[c] << (c + 1 < columns.size() ? "," : "");
  os << "\n";
  for (const auto &row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c)
      os << format_double(row[c]) << (c + 1 < row.size() ? "," : "");
    os << "\n";
  }
}

//! Two-column CSV (x, V) for sampled potentials; '#' comments and a
//! non-numeric header row are skipped.
inline std::pair<std::vector<double>, std::vector<double>>
load_two_column_csv(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw validation_error("cannot open potential file " + path);
  std::vector<double> xs, vs;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw validation_error("potential file " + path + ": expected two comma-"
                             "separated columns, got '" + line + "'");
    try {
      const double x = std::stod(line.substr(0, comma));
      const double v = std::stod(line.substr(comma + 1));
      xs.push_back(x);
      vs.push_back(v);
    } catch (const std::exception &) {
      if (xs.empty()) continue; // header row
      throw validation_error("potential file " + path + ": bad numeric row '" +
                             line + "'");
    }
  }
  if (xs.size() < 2)
    throw validation_error("potential file " + path + ": need at least 2 samples");
  return {std::move(xs), std::move(vs)};
}

namespace detail {

static_assert(std::endian::native == std::endian::little,
              "binary dumps are documented little-endian; this platform is not");

template <typename T> void put(std::ofstream &os, const T &v) {
  os.write(reinterpret_cast<const char *>(&v), sizeof v);
}
template <typename T> void get(std::ifstream &is, T &v) {
  is.read(reinterpret_cast<char *>(&v), sizeof v);
  if (!is) throw error("binary dump truncated");
}

} // namespace detail

//! Kernel dump layout (little-endian): magic "JLKERN1\0", u64 rows, u64
//! cols, f64 M, f64 x_min, f64 x_max, u32 provenance, then row-major
//! complex entries as (Re, Im) f64 pairs.
inline void write_kernel_dump(const std::string &path, const KernelMatrix &km) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw error("cannot open " + path + " for writing");
  const char magic[8] = {'J', 'L', 'K', 'E', 'R', 'N', '1', '\0'};
  os.write(magic, 8);
  detail::put(os, std::uint64_t(km.K.rows()));
  detail::put(os, std::uint64_t(km.K.cols()));
  detail::put(os, km.M);
  detail::put(os, km.grid.x_min());
  detail::put(os, km.grid.x_max());
  detail::put(os, std::uint32_t(km.provenance));
  for (Eigen::Index i = 0; i < km.K.rows(); ++i)
    for (Eigen::Index j = 0; j < km.K.cols(); ++j) {
      detail::put(os, km.K(i, j).real());
      detail::put(os, km.K(i, j).imag());
    }
}

inline KernelMatrix read_kernel_dump(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw error("cannot open " + path);
  char magic[8];
  is.read(magic, 8);
  if (!is || std::memcmp(magic, "JLKERN1\0", 8) != 0)
    throw error(path + ": not a kernel dump");
  std::uint64_t rows, cols;
  double M, x_min, x_max;
  std::uint32_t prov;
  detail::get(is, rows);
  detail::get(is, cols);
  detail::get(is, M);
  detail::get(is, x_min);
  detail::get(is, x_max);
  detail::get(is, prov);
  KernelMatrix km{M, SpatialGrid(x_min, x_max, int(rows)),
                  KernelProvenance(prov), 1.0 / (2.0 * pi),
                  Eigen::MatrixXcd(Eigen::Index(rows), Eigen::Index(cols))};
  for (Eigen::Index i = 0; i < km.K.rows(); ++i)
    for (Eigen::Index j = 0; j < km.K.cols(); ++j) {
      double re, im;
      detail::get(is, re);
      detail::get(is, im);
      km.K(i, j) = cplx(re, im);
    }
  return km;
}

//! Jost field dump layout (little-endian): magic "JLJOST1\0", u64 n_tau,
//! u64 n_x, f64 x_min, f64 x_max, f64 solver_h, the tau array (f64), then
//! m_plus and m_minus row-major as (Re, Im) f64 pairs (rows = tau).
inline void write_jost_dump(const std::string &path, const JostField &jf) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw error("cannot open " + path + " for writing");
  const char magic[8] = {'J', 'L', 'J', 'O', 'S', 'T', '1', '\0'};
  os.write(magic, 8);
  detail::put(os, std::uint64_t(jf.fgrid.size()));
  detail::put(os, std::uint64_t(jf.grid.n()));
  detail::put(os, jf.grid.x_min());
  detail::put(os, jf.grid.x_max());
  detail::put(os, jf.solver_h);
  for (std::size_t q = 0; q < jf.fgrid.size(); ++q) detail::put(os, jf.fgrid[q]);
  for (const auto *mat : {&jf.m_plus, &jf.m_minus})
    for (Eigen::Index i = 0; i < mat->rows(); ++i)
      for (Eigen::Index j = 0; j < mat->cols(); ++j) {
        detail::put(os, (*mat)(i, j).real());
        detail::put(os, (*mat)(i, j).imag());
      }
}

inline JostField read_jost_dump(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw error("cannot open " + path);
  char magic[8];
  is.read(magic, 8);
  if (!is || std::memcmp(magic, "JLJOST1\0", 8) != 0)
    throw error(path + ": not a Jost field dump");
  std::uint64_t n_tau, n_x;
  double x_min, x_max, solver_h;
  detail::get(is, n_tau);
  detail::get(is, n_x);
  detail::get(is, x_min);
  detail::get(is, x_max);
  detail::get(is, solver_h);
  std::vector<double> taus(n_tau);
  for (auto &t : taus) detail::get(is, t);
  bool has_zero = false;
  for (double t : taus) has_zero = has_zero || t == 0.0;
  JostField jf{SpatialGrid(x_min, x_max, int(n_x)),
               FrequencyGrid(std::move(taus), has_zero), solver_h,
               Eigen::MatrixXcd(Eigen::Index(n_tau), Eigen::Index(n_x)),
               Eigen::MatrixXcd(Eigen::Index(n_tau), Eigen::Index(n_x)),
               std::vector<double>(n_tau, 0.0), std::vector<double>(n_tau, 0.0)};
  for (auto *mat : {&jf.m_plus, &jf.m_minus})
    for (Eigen::Index i = 0; i < mat->rows(); ++i)
      for (Eigen::Index j = 0; j < mat->cols(); ++j) {
        double re, im;
        detail::get(is, re);
        detail::get(is, im);
        (*mat)(i, j) = cplx(re, im);
      }
  return jf;
}

} // namespace jostlp
