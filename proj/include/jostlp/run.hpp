#pragma once

#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "jostlp/besov.hpp"
#include "jostlp/blocks.hpp"
#include "jostlp/config.hpp"
#include "jostlp/io.hpp"
#include "jostlp/jost_field.hpp"
#include "jostlp/kernels.hpp"
#include "jostlp/shells.hpp"
#include "jostlp/verify.hpp"

namespace jostlp {

namespace detail {

inline std::vector<std::string> standard_meta(const RunConfig &cfg) {
  return {
      "config_hash=" + cfg.config_hash(),
      "potential=" + make_potential(cfg).describe(),
      "grid=[" + format_double(cfg.x_min) + "," + format_double(cfg.x_max) +
          "] n=" + std::to_string(cfg.n_points),
      "seed=" + std::to_string(cfg.seed),
  };
}

inline void write_json(const std::string &path, const nlohmann::ordered_json &j) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw error("cannot open " + path + " for writing");
  os << j.dump(2) << "\n";
}

inline SpatialGrid decimated_to_at_most(const SpatialGrid &g, int max_points) {
  int stride = 1;
  while ((g.n() - 1) / stride + 1 > max_points && (g.n() - 1) % (2 * stride) == 0)
    stride *= 2;
  return g.decimated(stride);
}

inline int run_scatter(const RunConfig &cfg, std::ostream &log) {
  const auto pot = make_potential(cfg);
  const auto g = make_grid(cfg);
  const auto fq = FrequencyGrid::uniform_symmetric(cfg.tau_max, cfg.n_half,
                                                   cfg.include_zero);
  SweepOptions so;
  so.jost.tolerance = cfg.tol;
  const auto sd = scattering_sweep(pot, g, fq, so);

  std::vector<std::vector<double>> rows;
  for (std::size_t q = 0; q < fq.size(); ++q)
    rows.push_back({fq[q], sd.T[q].real(), sd.T[q].imag(), sd.R_plus[q].real(),
                    sd.R_plus[q].imag(), sd.R_minus[q].real(), sd.R_minus[q].imag()});
  write_csv(cfg.out_dir + "/scattering.csv", standard_meta(cfg),
            {"tau", "re_T", "im_T", "re_R_plus", "im_R_plus", "re_R_minus", "im_R_minus"},
            rows);

  nlohmann::ordered_json j;
  j["config_hash"] = cfg.config_hash();
  j["verdict"] = to_string(sd.verdict);
  j["alpha"] = {sd.alpha.real(), sd.alpha.imag()};
  j["unitarity_max_defect"] = sd.unitarity_max_defect;
  write_json(cfg.out_dir + "/scattering_summary.json", j);
  log << "scatter: verdict " << to_string(sd.verdict) << ", unitarity defect "
      << format_double(sd.unitarity_max_defect) << "\n";
  return 0;
}

inline int run_jost(const RunConfig &cfg, std::ostream &log) {
  const auto pot = make_potential(cfg);
  const auto g = make_grid(cfg);
  const auto eval = decimated_to_at_most(g, 257);
  const auto fq = FrequencyGrid::uniform_symmetric(cfg.tau_max, cfg.n_half,
                                                   cfg.include_zero);
  SweepOptions so;
  so.jost.tolerance = cfg.tol;
  so.classify_resonance = false;
  const auto sweep = solve_sweep(pot, g, fq, eval, so);

  for (const auto side : {Side::plus, Side::minus}) {
    const auto &m = side == Side::plus ? sweep.field.m_plus : sweep.field.m_minus;
    std::vector<std::vector<double>> rows;
    rows.reserve(fq.size() * std::size_t(eval.n()));
    for (std::size_t q = 0; q < fq.size(); ++q)
      for (int i = 0; i < eval.n(); ++i)
        rows.push_back({eval.node(i), fq[q], m(Eigen::Index(q), i).real(),
                        m(Eigen::Index(q), i).imag()});
    write_csv(cfg.out_dir + (side == Side::plus ? "/jost_plus.csv" : "/jost_minus.csv"),
              standard_meta(cfg), {"x", "tau", "re_m", "im_m"}, rows);
  }
  write_jost_dump(cfg.out_dir + "/jost.bin", sweep.field);
  log << "jost: field on " << eval.n() << " x " << fq.size()
      << " nodes, max residual " << format_double(sweep.field.max_residual()) << "\n";
  return 0;
}

inline int run_kernel(const RunConfig &cfg, std::ostream &log) {
  const auto pot = make_potential(cfg);
  const auto solver = make_grid(cfg);
  const auto kgrid = decimated_to_at_most(solver, 513);
  const LpWindow w;
  SweepOptions so;
  so.jost.tolerance = cfg.tol;
  so.classify_resonance = false;

  for (double M : cfg.M_list) {
    const auto fq = kernel_band_grid(M, kgrid);
    const auto sweep = solve_sweep(pot, solver, fq, kgrid, so);
    const auto Kf = free_kernel(w, M, kgrid, fq);
    const auto Kp = perturbed_kernel(sweep.field, sweep.scattering, w, M, kgrid);
    const std::string tag = "_M" + format_double(M);
    write_kernel_dump(cfg.out_dir + "/kernel_free" + tag + ".bin", Kf);
    write_kernel_dump(cfg.out_dir + "/kernel_perturbed" + tag + ".bin", Kp);
    if (M <= 1.0) {
      const auto KM = leading_low_energy_kernel(sweep.scattering, w, M, kgrid);
      write_kernel_dump(cfg.out_dir + "/kernel_leading" + tag + ".bin", KM);
    }
    // down-sampled CSV for plotting
    const int stride = std::max(1, (kgrid.n() - 1) / 64);
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < kgrid.n(); i += stride)
      for (int j = 0; j < kgrid.n(); j += stride)
        rows.push_back({kgrid.node(i), kgrid.node(j), Kp.K(i, j).real(),
                        Kp.K(i, j).imag()});
    auto meta = standard_meta(cfg);
    meta.push_back("calibration=" + format_double(Kp.calibration));
    meta.push_back("M=" + format_double(M));
    write_csv(cfg.out_dir + "/kernel_perturbed" + tag + ".csv", meta,
              {"x", "y", "re_K", "im_K"}, rows);
    log << "kernel M=" << format_double(M) << ": symmetry defect "
        << format_double(Kp.symmetry_defect()) << "\n";
  }
  return 0;
}

inline int run_besov(const RunConfig &cfg, std::ostream &log) {
  const auto pot = make_potential(cfg);
  const auto g = make_grid(cfg);
  BlockEngine eng(pot, g, JostOptions{cfg.tol, 9, true});
  const auto suite = standard_equivalence_suite(g);

  nlohmann::ordered_json summary;
  summary["config_hash"] = cfg.config_hash();
  summary["hypothesis_gamma_gt_1p1op"] = cfg.gamma > 1.0 + 1.0 / cfg.p;
  std::vector<std::vector<double>> block_rows;
  bool blocks_written = false;
  for (double s : cfg.s_list) {
    BesovParams params{s, cfg.p, cfg.j_min, cfg.j_max};
    const auto rep = equivalence_ratio(suite, params, eng);
    nlohmann::ordered_json js;
    js["s"] = s;
    js["p"] = cfg.p;
    js["constant"] = rep.constant;
    js["min_ratio"] = rep.min_ratio;
    js["max_ratio"] = rep.max_ratio;
    js["ratios"] = rep.ratios;
    summary["equivalence"].push_back(js);
    if (!blocks_written) {
      for (std::size_t f = 0; f < suite.size(); ++f)
        for (std::size_t idx = 0; idx < rep.free_reports[f].js.size(); ++idx)
          block_rows.push_back({double(f), double(rep.free_reports[f].js[idx]),
                                rep.free_reports[f].block_norms[idx],
                                rep.perturbed_reports[f].block_norms[idx]});
      blocks_written = true;
    }
    log << "besov s=" << format_double(s) << ": constant "
        << format_double(rep.constant) << "\n";
  }
  auto meta = standard_meta(cfg);
  meta.push_back("hypothesis=gamma > 1 + 1/p held: " +
                 std::string(cfg.gamma > 1.0 + 1.0 / cfg.p ? "yes" : "no"));
  write_csv(cfg.out_dir + "/besov_blocks.csv", meta,
            {"function", "j", "block_norm_free", "block_norm_perturbed"}, block_rows);
  write_json(cfg.out_dir + "/besov_summary.json", summary);
  return 0;
}

inline int run_crossloc(const RunConfig &cfg, std::ostream &log) {
  const auto pot = make_potential(cfg);
  const auto g = make_grid(cfg);
  BlockEngine eng(pot, g, JostOptions{cfg.tol, 9, true});
  const auto probes = band_probes(g, cfg.k, cfg.probe_count, cfg.seed);

  std::vector<std::vector<double>> rows;
  std::vector<double> dist, lr;
  for (int j : cfg.j_list) {
    const auto res = cross_localization_norm(eng, cfg.k, j, cfg.p, probes);
    rows.push_back({double(std::abs(j - cfg.k)), res.pert_after_free,
                    res.free_after_pert});
    dist.push_back(double(std::abs(j - cfg.k)));
    lr.push_back(std::log2(std::max(res.pert_after_free, 1e-300)));
    log << "crossloc |j-k|=" << std::abs(j - cfg.k) << ": "
        << format_double(res.pert_after_free) << " / "
        << format_double(res.free_after_pert) << "\n";
  }
  auto meta = standard_meta(cfg);
  meta.push_back("probes=" + std::to_string(cfg.probe_count) +
                 " (mt19937_64, lower-bound estimates)");
  write_csv(cfg.out_dir + "/crossloc.csv", meta,
            {"distance", "ratio_pert_after_free", "ratio_free_after_pert"}, rows);

  nlohmann::ordered_json j;
  j["config_hash"] = cfg.config_hash();
  j["k"] = cfg.k;
  j["p"] = cfg.p;
  if (dist.size() >= 2) {
    const auto fit = fit_line(dist, lr);
    j["decay_exponent"] = -fit.slope;
  }
  write_json(cfg.out_dir + "/crossloc_summary.json", j);
  return 0;
}

inline int run_counterexample(const RunConfig &cfg, std::ostream &log) {
  const auto rep = shell_scaling_report(cfg.N_list);
  std::vector<std::vector<double>> rows;
  for (const auto &row : rep.rows)
    rows.push_back({double(row.N), row.riesz0, row.norm_sq, row.ratio});
  write_csv(cfg.out_dir + "/counterexample.csv", standard_meta(cfg),
            {"N", "riesz_at_zero", "l2_norm_sq", "ratio"}, rows);
  nlohmann::ordered_json j;
  j["config_hash"] = cfg.config_hash();
  j["dimension"] = 1;
  j["slope_riesz_sq"] = rep.riesz_sq_fit.slope;
  j["slope_norm_sq"] = rep.norm_sq_fit.slope;
  j["rss_riesz_sq"] = rep.riesz_sq_fit.rss;
  j["rss_norm_sq"] = rep.norm_sq_fit.rss;
  write_json(cfg.out_dir + "/counterexample_summary.json", j);
  log << "counterexample: slopes " << format_double(rep.riesz_sq_fit.slope) << " / "
      << format_double(rep.norm_sq_fit.slope) << "\n";
  return 0;
}

inline int run_verify_all(const RunConfig &cfg, std::ostream &log) {
  const auto results = run_acceptance_checks(cfg.seed, &log);
  nlohmann::ordered_json j;
  j["config_hash"] = cfg.config_hash();
  j["seed"] = cfg.seed;
  bool all = true;
  for (const auto &res : results) {
    nlohmann::ordered_json cj;
    cj["id"] = res.id;
    cj["pass"] = res.pass;
    cj["detail"] = res.detail;
    for (const auto &[k, v] : res.values) cj["values"][k] = v;
    j["checks"].push_back(cj);
    all = all && res.pass;
  }
  j["all_pass"] = all;
  write_json(cfg.out_dir + "/verify.json", j);
  log << (all ? "verify-all: PASS" : "verify-all: FAIL") << "\n";
  return all ? 0 : 1;
}

} // namespace detail

//! Dispatches one command. Exit codes: 0 success, 1 internal/check failure,
//! 2 config validation failure, 3 violated mathematical hypothesis.
inline int run(const RunConfig &cfg, std::ostream &log) {
  try {
    validate_config(cfg);
    ensure_dir(cfg.out_dir);
    if (cfg.command == "scatter") return detail::run_scatter(cfg, log);
    if (cfg.command == "jost") return detail::run_jost(cfg, log);
    if (cfg.command == "kernel") return detail::run_kernel(cfg, log);
    if (cfg.command == "besov") return detail::run_besov(cfg, log);
    if (cfg.command == "crossloc") return detail::run_crossloc(cfg, log);
    if (cfg.command == "counterexample") return detail::run_counterexample(cfg, log);
    if (cfg.command == "verify-all") return detail::run_verify_all(cfg, log);
    throw validation_error("unknown command '" + cfg.command + "'");
  } catch (const hypothesis_error &e) {
    log << "hypothesis violation: " << e.what() << "\n";
    return 3;
  } catch (const validation_error &e) {
    log << "invalid configuration: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    log << "error: " << e.what() << "\n";
    return 1;
  }
}

} // namespace jostlp
