// Command-line benchmark runner for the coupled LBM-DEM engine.
//
// Subcommands:
//   hindered   suspension of settling spheres in a periodic box
//   bounce     single sphere rebounding from the bottom wall
//   custom     scenario fully described by a config file
//
// Every parameter can come from a config file (flat "key = value" lines),
// be overridden with --set key=value, or with the dedicated flags below.
// All outputs carry the digest of the effective configuration, so a
// result file always identifies the run that produced it.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure,
// 4 packing failure, 5 I/O failure, 1 unexpected error.

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lbdem/lbdem.hpp"

namespace {

using namespace lbdem;

int exit_code_for(ErrorCategory cat) {
  switch (cat) {
    case ErrorCategory::config: return 2;
    case ErrorCategory::numerical_blowup: return 3;
    case ErrorCategory::packing_failure: return 4;
    case ErrorCategory::io_failure: return 5;
    case ErrorCategory::domain: return 3;
  }
  return 1;
}

void apply_sets(Config& cfg, const std::vector<std::string>& sets) {
  for (const std::string& s : sets) {
    const std::size_t eq = s.find('=');
    if (eq == std::string::npos || eq == 0) {
      fail(ErrorCategory::config, "--set expects key=value, got: " + s);
    }
    cfg.set(s.substr(0, eq), s.substr(eq + 1));
  }
}

struct OutputOptions {
  std::string dir = "out";
  int vtk_every = 0;  // 0 disables field snapshots
  int csv_every = 1;
};

OutputOptions output_from_config(Config& cfg) {
  OutputOptions o;
  o.dir = cfg.get_string("output.dir", o.dir);
  o.vtk_every = cfg.get_int("output.vtk_every", o.vtk_every);
  o.csv_every = cfg.get_int("output.csv_every", o.csv_every);
  if (o.csv_every < 1) o.csv_every = 1;
  return o;
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorCategory::io_failure, "cannot create directory " + dir);
}

void snapshot_fields(const Simulation& sim, const std::string& dir,
                     const std::string& stem, int step,
                     const std::string& digest) {
  char suffix[32];
  std::snprintf(suffix, sizeof suffix, "_%08d.vtk", step);
  write_vtk_cells(dir + "/" + stem + "_fluid" + suffix, "config " + digest,
                  sim.grid(),
                  {{"solid_fraction", &sim.eps_p_field()},
                   {"density", &sim.density_field()}},
                  {{"fluid_velocity", &sim.fluid_velocity_field()}});
  write_vtk_particles(dir + "/" + stem + "_particles" + suffix,
                      "config " + digest, sim.particles());
}

HinderedParams hindered_from_config(Config& cfg) {
  HinderedParams hp;
  hp.d_lat = cfg.get_real("hindered.d_lat", hp.d_lat);
  hp.box_diameters = cfg.get_int("hindered.box", hp.box_diameters);
  hp.target_eps_p = cfg.get_real("hindered.eps", hp.target_eps_p);
  hp.seed = cfg.get_uint64("hindered.seed", hp.seed);
  hp.duration_stokes = cfg.get_real("hindered.duration_stokes", hp.duration_stokes);
  hp.averaging_stokes = cfg.get_real("hindered.averaging_stokes", hp.averaging_stokes);
  hp.d_p_si = cfg.get_real("hindered.d_p_si", hp.d_p_si);
  hp.rho_f_si = cfg.get_real("hindered.rho_f_si", hp.rho_f_si);
  hp.rho_p_si = cfg.get_real("hindered.rho_p_si", hp.rho_p_si);
  hp.mu_si = cfg.get_real("hindered.mu_si", hp.mu_si);
  hp.g_si = cfg.get_real("hindered.g_si", hp.g_si);
  hp.g_lat = cfg.get_real("hindered.g_lat", hp.g_lat);
  hp.e_n = cfg.get_real("hindered.e_n", hp.e_n);
  hp.mu_c = cfg.get_real("hindered.mu_c", hp.mu_c);
  hp.t_c_steps = cfg.get_real("hindered.t_c_steps", hp.t_c_steps);
  hp.h_c_over_d = cfg.get_real("hindered.h_c", hp.h_c_over_d);
  hp.n_int = cfg.get_int("hindered.n_int", hp.n_int);
  hp.n_dem = cfg.get_int("hindered.n_dem", hp.n_dem);
  hp.use_lift = cfg.get_bool("hindered.lift", hp.use_lift);
  hp.use_added_mass = cfg.get_bool("hindered.added_mass", hp.use_added_mass);
  hp.use_les = cfg.get_bool("hindered.les", hp.use_les);
  hp.use_eilers = cfg.get_bool("hindered.eilers", hp.use_eilers);
  return hp;
}

BounceParams bounce_from_config(Config& cfg) {
  BounceParams bp;
  bp.d_lat = cfg.get_real("bounce.d_lat", bp.d_lat);
  bp.box_xy_diameters = cfg.get_int("bounce.box_xy", bp.box_xy_diameters);
  bp.box_z_diameters = cfg.get_int("bounce.box_z", bp.box_z_diameters);
  bp.stokes_target = cfg.get_real("bounce.stokes", bp.stokes_target);
  bp.g_lat = cfg.get_real("bounce.g_lat", bp.g_lat);
  bp.rho_r_default = cfg.get_real("bounce.rho_r", bp.rho_r_default);
  bp.re_cap = cfg.get_real("bounce.re_cap", bp.re_cap);
  bp.e_n = cfg.get_real("bounce.e_n", bp.e_n);
  bp.mu_c = cfg.get_real("bounce.mu_c", bp.mu_c);
  bp.h_c_over_d = cfg.get_real("bounce.h_c", bp.h_c_over_d);
  bp.n_int = cfg.get_int("bounce.n_int", bp.n_int);
  bp.n_dem = cfg.get_int("bounce.n_dem", bp.n_dem);
  bp.use_lift = cfg.get_bool("bounce.lift", bp.use_lift);
  bp.use_added_mass = cfg.get_bool("bounce.added_mass", bp.use_added_mass);
  bp.use_les = cfg.get_bool("bounce.les", bp.use_les);
  bp.use_eilers = cfg.get_bool("bounce.eilers", bp.use_eilers);
  bp.drop_below_top_diameters =
      cfg.get_real("bounce.drop_diameters", bp.drop_below_top_diameters);
  bp.max_steps_safety = cfg.get_real("bounce.safety", bp.max_steps_safety);
  return bp;
}

int run_hindered_cli(Config& cfg) {
  cfg.get_string("scenario", "");  // consumed; set by custom runs
  const bool single = cfg.get_bool("hindered.single_sphere", false);
  const HinderedParams hp = hindered_from_config(cfg);
  const OutputOptions out = output_from_config(cfg);
  cfg.reject_unconsumed();
  const std::string digest = cfg.digest_hex();
  ensure_dir(out.dir);

  const std::vector<std::string> meta = {"config_digest=" + digest};

  if (single) {
    CsvWriter series(out.dir + "/single_timeseries.csv",
                     {"step", "u_rel_z", "u_particle_z", "u_fluid_z"}, meta);
    SingleSphereReport r =
        run_single_sphere(hp, [&](Simulation& sim, int step) {
          if (step % out.csv_every == 0) {
            const Vec3 up = sim.mean_particle_velocity();
            const Vec3 uf = sim.mean_fluid_velocity();
            series.row({real(step), up.z - uf.z, up.z, uf.z});
          }
          if (out.vtk_every > 0 && step % out.vtk_every == 0) {
            snapshot_fields(sim, out.dir, "single", step, digest);
          }
        });
    series.close();
    CsvWriter summary(out.dir + "/single_summary.csv",
                      {"u_measured", "u_drag_balance", "re_measured",
                       "re_drag_balance", "steps"},
                      meta);
    summary.row({r.u_relative, r.u_predicted, r.re_measured, r.re_predicted,
                 real(r.steps)});
    summary.close();
    std::printf("single sphere: u_rel=%.6g (drag balance %.6g) Re=%.4g\n",
                -r.u_relative, r.u_predicted, r.re_measured);
    return 0;
  }

  CsvWriter series(out.dir + "/hindered_timeseries.csv",
                   {"step", "u_rel_z", "u_particle_z", "u_fluid_z"}, meta);
  HinderedReport r = run_hindered(hp, [&](Simulation& sim, int step) {
    if (step % out.csv_every == 0) {
      const Vec3 up = sim.mean_particle_velocity();
      const Vec3 uf = sim.mean_fluid_velocity();
      series.row({real(step), up.z - uf.z, up.z, uf.z});
    }
    if (out.vtk_every > 0 && step % out.vtk_every == 0) {
      snapshot_fields(sim, out.dir, "hindered", step, digest);
    }
  });
  series.close();

  const HinderedSetup setup = make_hindered_setup(hp);
  const real ratio = -r.settling_velocity / setup.single_sphere.u_t;
  const real kappa = richardson_zaki_exponent(setup.single_sphere.re_t);
  const real reference = hindered_settling_ratio(r.mean_eps_p, kappa);

  CsvWriter summary(
      out.dir + "/hindered_summary.csv",
      {"eps_p", "particles", "steps", "u_settling", "u_terminal_single",
       "settling_ratio", "rz_exponent", "rz_reference", "state_hash_lo"},
      meta);
  summary.row({r.mean_eps_p, real(r.particle_count), real(r.steps),
               r.settling_velocity, setup.single_sphere.u_t, ratio, kappa,
               reference,
               real(static_cast<std::uint32_t>(r.final_state_hash))});
  summary.close();

  std::printf(
      "hindered: eps=%.4g N=%d ratio=%.4g (reference %.4g, kappa=%.4g)\n",
      r.mean_eps_p, r.particle_count, ratio, reference, kappa);
  return 0;
}

int run_bounce_cli(Config& cfg) {
  cfg.get_string("scenario", "");  // consumed; set by custom runs
  const BounceParams bp = bounce_from_config(cfg);
  const OutputOptions out = output_from_config(cfg);
  cfg.reject_unconsumed();
  const std::string digest = cfg.digest_hex();
  ensure_dir(out.dir);

  const std::vector<std::string> meta = {"config_digest=" + digest};
  CsvWriter series(out.dir + "/bounce_timeseries.csv",
                   {"step", "z", "u_z", "wall_contact"}, meta);
  BounceReport r = run_bounce(bp, [&](Simulation& sim, int step) {
    if (step % out.csv_every == 0) {
      const Particle& p = sim.particles()[0];
      series.row({real(step), p.x.z, p.u.z,
                  sim.wall_contact_in_last_step() ? real(1) : real(0)});
    }
    if (out.vtk_every > 0 && step % out.vtk_every == 0) {
      snapshot_fields(sim, out.dir, "bounce", step, digest);
    }
  });
  series.close();

  CsvWriter summary(out.dir + "/bounce_summary.csv",
                    {"stokes_target", "stokes_measured", "e_wet",
                     "terminal_speed", "re_measured", "steps", "completed"},
                    meta);
  summary.row({bp.stokes_target, r.stokes_measured, r.e_wet,
               r.terminal_speed, r.re_measured, real(r.steps),
               r.completed ? real(1) : real(0)});
  summary.close();

  if (!r.completed) {
    fail(ErrorCategory::numerical_blowup,
         "bounce run ended without a measurable rebound or settling");
  }
  std::printf("bounce: St=%.4g (measured %.4g) e_wet=%.4g e_wet/e_n=%.4g\n",
              bp.stokes_target, r.stokes_measured, r.e_wet, r.e_wet / bp.e_n);
  return 0;
}

struct CommonFlags {
  std::string config_path;
  std::vector<std::string> sets;
  std::string outdir;
  int vtk_every = -1;
  std::uint64_t seed = 0;
  real d_lat = 0;
  int n_int = 0, n_dem = 0;
  real h_c = -1;
  bool no_lift = false, no_lub = false, no_les = false, no_eilers = false,
       no_am = false;
};

void add_common(CLI::App* cmd, CommonFlags* f) {
  cmd->add_option("--config", f->config_path, "config file (key = value lines)");
  cmd->add_option("--set", f->sets, "override a config entry (key=value)");
  cmd->add_option("--outdir", f->outdir, "output directory");
  cmd->add_option("--vtk-every", f->vtk_every,
                  "write field snapshots every N steps (0 = off)");
  cmd->add_option("--n-int", f->n_int, "interaction subcycles per step");
  cmd->add_option("--n-dem", f->n_dem, "contact substeps per subcycle");
  cmd->add_option("--h-c", f->h_c, "lubrication cutoff in diameters");
  cmd->add_flag("--no-lift", f->no_lift, "disable the shear lift force");
  cmd->add_flag("--no-lubrication", f->no_lub, "disable lubrication forces");
  cmd->add_flag("--no-les", f->no_les, "disable the eddy-viscosity model");
  cmd->add_flag("--no-eilers", f->no_eilers,
                "disable the suspension viscosity correction");
  cmd->add_flag("--no-added-mass", f->no_am, "disable the added-mass force");
}

Config build_config(const CommonFlags& f, const std::string& section,
                    const CLI::App* cmd) {
  Config cfg = f.config_path.empty() ? Config{}
                                     : Config::parse_file(f.config_path);
  apply_sets(cfg, f.sets);
  if (cmd->count("--outdir")) cfg.set("output.dir", f.outdir);
  if (cmd->count("--vtk-every"))
    cfg.set("output.vtk_every", std::to_string(f.vtk_every));
  if (cmd->count("--n-int")) cfg.set(section + ".n_int", std::to_string(f.n_int));
  if (cmd->count("--n-dem")) cfg.set(section + ".n_dem", std::to_string(f.n_dem));
  if (cmd->count("--h-c"))
    cfg.set(section + ".h_c", detail::format_real(f.h_c));
  if (f.no_lift) cfg.set(section + ".lift", "false");
  if (f.no_lub) cfg.set(section + ".h_c", "0");
  if (f.no_les) cfg.set(section + ".les", "false");
  if (f.no_eilers) cfg.set(section + ".eilers", "false");
  if (f.no_am) cfg.set(section + ".added_mass", "false");
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coupled LBM-DEM particulate flow benchmarks"};
  app.require_subcommand(1);

  CommonFlags hf, bf, cf;
  real h_eps = -1, h_dlat = 0;
  int h_box = 0;
  std::uint64_t h_seed = 0;
  bool h_single = false;

  CLI::App* hindered = app.add_subcommand("hindered", "settling suspension");
  add_common(hindered, &hf);
  hindered->add_option("--eps", h_eps, "target mean solid volume fraction");
  hindered->add_option("--d-lat", h_dlat, "particle diameter in cells");
  hindered->add_option("--box", h_box, "box edge in particle diameters");
  hindered->add_option("--seed", h_seed, "packing seed");
  hindered->add_flag("--single", h_single,
                     "single sphere instead of a suspension");

  real b_stokes = 0, b_dlat = 0;
  int b_xy = 0, b_z = 0;
  CLI::App* bounce = app.add_subcommand("bounce", "sphere-wall rebound");
  add_common(bounce, &bf);
  bounce->add_option("--stokes", b_stokes, "target collision Stokes number");
  bounce->add_option("--d-lat", b_dlat, "particle diameter in cells");
  bounce->add_option("--box-xy", b_xy, "lateral box size in diameters");
  bounce->add_option("--box-z", b_z, "box height in diameters");

  CLI::App* custom = app.add_subcommand(
      "custom", "scenario chosen by the 'scenario' config key");
  add_common(custom, &cf);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (hindered->parsed()) {
      Config cfg = build_config(hf, "hindered", hindered);
      if (hindered->count("--eps"))
        cfg.set("hindered.eps", lbdem::detail::format_real(h_eps));
      if (hindered->count("--d-lat"))
        cfg.set("hindered.d_lat", lbdem::detail::format_real(h_dlat));
      if (hindered->count("--box"))
        cfg.set("hindered.box", std::to_string(h_box));
      if (hindered->count("--seed"))
        cfg.set("hindered.seed", std::to_string(h_seed));
      if (h_single) cfg.set("hindered.single_sphere", "true");
      return run_hindered_cli(cfg);
    }
    if (bounce->parsed()) {
      Config cfg = build_config(bf, "bounce", bounce);
      if (bounce->count("--stokes"))
        cfg.set("bounce.stokes", lbdem::detail::format_real(b_stokes));
      if (bounce->count("--d-lat"))
        cfg.set("bounce.d_lat", lbdem::detail::format_real(b_dlat));
      if (bounce->count("--box-xy"))
        cfg.set("bounce.box_xy", std::to_string(b_xy));
      if (bounce->count("--box-z"))
        cfg.set("bounce.box_z", std::to_string(b_z));
      return run_bounce_cli(cfg);
    }
    // custom: the scenario key picks the runner and the flag section.
    std::string scenario;
    {
      Config peek = cf.config_path.empty() ? Config{}
                                           : Config::parse_file(cf.config_path);
      apply_sets(peek, cf.sets);
      scenario = peek.get_string("scenario", "");
    }
    if (scenario != "hindered" && scenario != "bounce") {
      lbdem::fail(lbdem::ErrorCategory::config,
                  "custom runs need scenario = hindered | bounce");
    }
    Config cfg = build_config(cf, scenario, custom);
    return scenario == "hindered" ? run_hindered_cli(cfg)
                                  : run_bounce_cli(cfg);
  } catch (const lbdem::SimError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code_for(e.category());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "unexpected error: %s\n", e.what());
    return 1;
  }
  return 1;
}
