#include "zenolz/runner.hpp"

#include <atomic>
#include <cstdio>
#include <mutex>
#include <thread>

#include "zenolz/discrete_zeno.hpp"
#include "zenolz/exact.hpp"
#include "zenolz/meanfield.hpp"
#include "zenolz/readout.hpp"
#include "zenolz/svg.hpp"
#include "zenolz/table.hpp"
#include "zenolz/tmin.hpp"
#include "zenolz/version.hpp"

namespace zenolz {

namespace {

namespace fs = std::filesystem;

std::string compact(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", x);
  return buf;
}

std::string hash_hex(std::uint64_t h) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "0x%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ResultTable make_table(const RunConfig& cfg, std::vector<Column> columns) {
  ResultTable t;
  t.add_metadata("tool", std::string(kToolName) + " " + kVersion);
  t.add_metadata("mode", to_string(cfg.mode));
  t.add_metadata("config", cfg.canonical);
  t.add_metadata("config_hash", hash_hex(cfg.config_hash));
  t.add_metadata("convention", kConventionNote);
  t.columns = std::move(columns);
  return t;
}

fs::path prepare_out_dir(const RunConfig& cfg) {
  const fs::path dir(cfg.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  return dir;
}

SweepSchedule schedule_of(const RunConfig& cfg) {
  return SweepSchedule(cfg.epsilon0, cfg.delta, cfg.T);
}

// ---------------------------- discrete ------------------------------------

RunOutcome run_discrete(const RunConfig& cfg) {
  const auto dir = prepare_out_dir(cfg);
  const auto s = schedule_of(cfg);
  RunOutcome out;

  std::vector<std::vector<DiscreteSummary>> results(cfg.N.size());
  for (auto& r : results) r.resize(cfg.n.size());
  std::vector<std::pair<std::size_t, std::size_t>> jobs;
  for (std::size_t i = 0; i < cfg.N.size(); ++i)
    for (std::size_t j = 0; j < cfg.n.size(); ++j) jobs.emplace_back(i, j);
  parallel_for_indexed(jobs.size(), cfg.workers, [&](std::size_t k) {
    const auto [i, j] = jobs[k];
    results[i][j] = evaluate_plan(MeasurementPlan(cfg.n[j], cfg.N[i], s));
  });

  std::vector<Series> series;
  for (std::size_t i = 0; i < cfg.N.size(); ++i) {
    auto table = make_table(cfg, {{"n", true},
                                  {"success_probability", false},
                                  {"lower_bound", false},
                                  {"bound_valid", true},
                                  {"max_delta_r", false}});
    table.add_metadata("N", std::to_string(cfg.N[i]));
    Series ser;
    ser.label = "N=" + std::to_string(cfg.N[i]);
    for (std::size_t j = 0; j < cfg.n.size(); ++j) {
      const auto& r = results[i][j];
      table.add_row({static_cast<double>(cfg.n[j]), r.success, r.bound.value,
                     r.bound.valid ? 1.0 : 0.0, r.max_delta_r});
      ser.x.push_back(static_cast<double>(cfg.n[j]));
      ser.y.push_back(r.success);
    }
    const fs::path p = dir / ("discrete_N" + std::to_string(cfg.N[i]) + ".csv");
    table.write_csv(p);
    out.files.push_back(p);
    series.push_back(std::move(ser));
  }

  PlotSpec spec{"ground-state survival vs measurement count", "n", "success probability", true,
                false};
  const fs::path plot = dir / "discrete.svg";
  write_line_plot(plot, spec, series);
  out.files.push_back(plot);
  out.summary = "discrete: " + std::to_string(cfg.N.size() * cfg.n.size()) + " plans evaluated";
  return out;
}

// ------------------------- meanfield / exact -------------------------------

struct GridPoint {
  std::int64_t N;
  double gx, gz;
};

std::vector<GridPoint> relaxation_grid(const RunConfig& cfg) {
  std::vector<GridPoint> grid;
  for (const auto N : cfg.N)
    for (const double gx : cfg.gamma_x)
      for (const double gz : cfg.gamma_z) grid.push_back({N, gx, gz});
  return grid;
}

std::string grid_point_stem(const char* prefix, const GridPoint& g) {
  return std::string(prefix) + "_N" + std::to_string(g.N) + "_gx" + compact(g.gx) + "_gz" +
         compact(g.gz);
}

RunOutcome run_meanfield(const RunConfig& cfg) {
  const auto dir = prepare_out_dir(cfg);
  const auto s = schedule_of(cfg);
  const auto grid = relaxation_grid(cfg);
  RunOutcome out;

  std::vector<TrajectoryRecord> recs(grid.size());
  parallel_for_indexed(grid.size(), cfg.workers, [&](std::size_t k) {
    IntegrateOptions opt;
    opt.rtol = cfg.rtol;
    opt.atol = cfg.atol;
    opt.samples = cfg.samples;
    recs[k] = integrate(s, RelaxationConfig{grid[k].gx, grid[k].gz}, grid[k].N, opt);
  });

  std::vector<Series> series;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    auto table = make_table(cfg, {{"t", false},
                                  {"jz", false},
                                  {"re_jplus", false},
                                  {"im_jplus", false},
                                  {"p_a", false}});
    table.add_metadata("N", std::to_string(grid[k].N));
    table.add_metadata("gamma_x", format_full(grid[k].gx));
    table.add_metadata("gamma_z", format_full(grid[k].gz));
    Series ser;
    ser.label = "N=" + std::to_string(grid[k].N) + " gx=" + compact(grid[k].gx) +
                " gz=" + compact(grid[k].gz);
    for (const auto& smp : recs[k].samples) {
      table.add_row({smp.t, smp.jz, smp.jplus.real(), smp.jplus.imag(), smp.p_a});
      ser.x.push_back(smp.t);
      ser.y.push_back(smp.p_a);
    }
    const fs::path p = dir / (grid_point_stem("meanfield", grid[k]) + ".csv");
    table.write_csv(p);
    out.files.push_back(p);
    series.push_back(std::move(ser));
  }

  PlotSpec spec{"per-boson probability of state a", "t", "p_a", false, false};
  const fs::path plot = dir / "meanfield.svg";
  write_line_plot(plot, spec, series);
  out.files.push_back(plot);
  out.summary = "meanfield: " + std::to_string(grid.size()) + " trajectories";
  return out;
}

RunOutcome run_exact(const RunConfig& cfg) {
  const auto dir = prepare_out_dir(cfg);
  const auto s = schedule_of(cfg);
  const auto grid = relaxation_grid(cfg);
  RunOutcome out;

  std::vector<ExactTrajectory> recs(grid.size());
  parallel_for_indexed(grid.size(), cfg.workers, [&](std::size_t k) {
    EvolveOptions opt;
    opt.rtol = cfg.rtol;
    opt.atol = cfg.atol;
    opt.samples = cfg.samples;
    recs[k] = evolve(DickeDensityMatrix::ground(grid[k].N),
                     RelaxationConfig{grid[k].gx, grid[k].gz}, s, opt);
  });

  std::vector<Series> series;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    auto table = make_table(cfg, {{"t", false},
                                  {"jz", false},
                                  {"re_jplus", false},
                                  {"im_jplus", false},
                                  {"p_a", false},
                                  {"purity", false}});
    table.add_metadata("N", std::to_string(grid[k].N));
    table.add_metadata("gamma_x", format_full(grid[k].gx));
    table.add_metadata("gamma_z", format_full(grid[k].gz));
    Series ser;
    ser.label = "N=" + std::to_string(grid[k].N) + " gx=" + compact(grid[k].gx) +
                " gz=" + compact(grid[k].gz);
    for (const auto& smp : recs[k].samples) {
      table.add_row({smp.t, smp.jz, smp.jplus.real(), smp.jplus.imag(), smp.p_a, smp.purity});
      ser.x.push_back(smp.t);
      ser.y.push_back(smp.p_a);
    }
    const fs::path p = dir / (grid_point_stem("exact", grid[k]) + ".csv");
    table.write_csv(p);
    out.files.push_back(p);
    series.push_back(std::move(ser));
  }

  PlotSpec spec{"per-boson probability of state a (exact)", "t", "p_a", false, false};
  const fs::path plot = dir / "exact.svg";
  write_line_plot(plot, spec, series);
  out.files.push_back(plot);
  out.summary = "exact: " + std::to_string(grid.size()) + " trajectories";
  return out;
}

// ----------------------------- readout ------------------------------------

RunOutcome run_readout(const RunConfig& cfg) {
  const auto dir = prepare_out_dir(cfg);
  RunOutcome out;
  auto table = make_table(
      cfg, {{"N", true}, {"required_p", false}, {"failure_probability_at_required_p", false}});
  table.add_metadata("target_pe", format_full(cfg.target_pe));
  Series ser;
  ser.label = "target_pe=" + compact(cfg.target_pe);
  for (const auto N : cfg.N) {
    const double p = required_p(N, cfg.target_pe);
    table.add_row({static_cast<double>(N), p, failure_probability(p, N)});
    ser.x.push_back(static_cast<double>(N));
    ser.y.push_back(p);
  }
  const fs::path p = dir / "readout.csv";
  table.write_csv(p);
  out.files.push_back(p);
  PlotSpec spec{"per-boson probability required by majority vote", "N", "required p", true, false};
  const fs::path plot = dir / "readout.svg";
  write_line_plot(plot, spec, std::vector<Series>{ser});
  out.files.push_back(plot);
  out.summary = "readout: " + std::to_string(cfg.N.size()) + " grid points";
  return out;
}

// ------------------------------- tmin --------------------------------------

RunOutcome run_tmin(const RunConfig& cfg) {
  const auto dir = prepare_out_dir(cfg);
  const SweepSchedule tpl(cfg.epsilon0, cfg.delta, 1.0);  // T is the search variable
  RunOutcome out;

  TminOptions opt;
  opt.target_pe = cfg.target_pe;
  opt.t_lo = cfg.t_lo;
  opt.t_hi = cfg.t_hi;
  opt.rel_precision = cfg.t_precision;
  opt.rtol = cfg.rtol;
  opt.atol = cfg.atol;
  const RelaxationConfig relax{cfg.gamma_x.front(), cfg.gamma_z.front()};

  std::vector<TminEntry> entries(cfg.N.size());
  parallel_for_indexed(cfg.N.size(), cfg.workers,
                       [&](std::size_t k) { entries[k] = solve_tmin(cfg.N[k], relax, tpl, opt); });

  auto table = make_table(cfg, {{"N", true},
                                {"T_min", false},
                                {"p_final", false},
                                {"certificate_lo", false},
                                {"certificate_hi", false}});
  std::string fit_note = "fit: not computed (needs >= 4 entries spanning two decades)";
  if (entries.size() >= 4) {
    const double n_lo = static_cast<double>(cfg.N.front());
    const double n_hi = static_cast<double>(cfg.N.back());
    if (n_hi / n_lo >= 100.0) {
      const auto fit = fit_exponent(entries);
      table.add_metadata("fit_slope", format_full(fit.slope));
      table.add_metadata("fit_residual", format_full(fit.residual));
      fit_note = "fit: T_min ~ N^(" + compact(fit.slope) + "), rms residual " +
                 compact(fit.residual) + " (largest-N half)";
    }
  }
  Series ser;
  ser.label = "gx=" + compact(relax.gamma_x) + " gz=" + compact(relax.gamma_z);
  for (const auto& e : entries) {
    table.add_row({static_cast<double>(e.N), e.T_min, e.p_final, e.certificate_lo, e.T_min});
    ser.x.push_back(static_cast<double>(e.N));
    ser.y.push_back(e.T_min);
  }
  const fs::path p = dir / "tmin.csv";
  table.write_csv(p);
  out.files.push_back(p);
  PlotSpec spec{"minimum sweep time vs boson count", "N", "T_min", true, true};
  const fs::path plot = dir / "tmin.svg";
  write_line_plot(plot, spec, std::vector<Series>{ser});
  out.files.push_back(plot);
  out.summary = fit_note;
  return out;
}

// ------------------------------- sweep -------------------------------------

RunOutcome run_sweep(const RunConfig& cfg) {
  RunOutcome out;

  // Fig. 1 analogue: sigma_x relaxation across N and gamma_x.
  RunConfig fig1 = cfg;
  fig1.mode = RunMode::meanfield;
  fig1.gamma_z = {0.0};
  fig1.out_dir = (std::filesystem::path(cfg.out_dir) / "fig1_sigma_x").string();
  finalize_config(fig1);
  auto o1 = run_meanfield(fig1);
  out.files.insert(out.files.end(), o1.files.begin(), o1.files.end());

  // Fig. 2 analogue: sigma_z relaxation; N-invariant, so N = 1 suffices.
  RunConfig fig2 = cfg;
  fig2.mode = RunMode::meanfield;
  fig2.N = {1};
  fig2.gamma_x = {0.0};
  fig2.gamma_z = cfg.gamma_z.size() == 1 && cfg.gamma_z.front() == 0.0
                     ? std::vector<double>{0.1, 1.0, 10.0}
                     : cfg.gamma_z;
  fig2.out_dir = (std::filesystem::path(cfg.out_dir) / "fig2_sigma_z").string();
  finalize_config(fig2);
  auto o2 = run_meanfield(fig2);
  out.files.insert(out.files.end(), o2.files.begin(), o2.files.end());

  // Fig. 3 analogue: minimum sweep time across N.
  RunConfig fig3 = cfg;
  fig3.mode = RunMode::tmin;
  fig3.N = cfg.tmin_N;
  fig3.gamma_x = {cfg.gamma_x.front()};
  fig3.gamma_z = {0.0};
  fig3.out_dir = (std::filesystem::path(cfg.out_dir) / "fig3_tmin").string();
  finalize_config(fig3);
  auto o3 = run_tmin(fig3);
  out.files.insert(out.files.end(), o3.files.begin(), o3.files.end());

  out.summary = "sweep: " + o1.summary + "; " + o2.summary + "; " + o3.summary;
  return out;
}

}  // namespace

void parallel_for_indexed(std::size_t count, int workers,
                          const std::function<void(std::size_t)>& fn) {
  if (count == 0) return;
  const std::size_t nthreads =
      std::min<std::size_t>(count, static_cast<std::size_t>(std::max(workers, 1)));
  if (nthreads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (std::size_t w = 0; w < nthreads; ++w) {
    pool.emplace_back([&] {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

RunOutcome run(const RunConfig& cfg) {
  switch (cfg.mode) {
    case RunMode::discrete: return run_discrete(cfg);
    case RunMode::meanfield: return run_meanfield(cfg);
    case RunMode::exact: return run_exact(cfg);
    case RunMode::readout: return run_readout(cfg);
    case RunMode::tmin: return run_tmin(cfg);
    case RunMode::sweep: return run_sweep(cfg);
  }
  throw DomainError("run: unknown mode");
}

}  // namespace zenolz
