#include "rifscatter/commands.hpp"

#include <filesystem>
#include <nlohmann/json.hpp>

#include "rifscatter/spectra.hpp"
#include "rifscatter/version.hpp"

namespace rif {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json base_meta(const RunConfig& cfg, const std::string& command) {
  ordered_json j;
  j["tool"] = "rifscatter";
  j["version"] = version();
  j["command"] = command;
  j["config_hash"] = config_hash_hex(cfg);
  ordered_json c;
  for (const auto& [k, v] : config_to_map(cfg)) {
    c[k] = v;
  }
  j["config"] = c;
  return j;
}

ordered_json sli_meta(const std::optional<SubluminalInterval>& s) {
  ordered_json o;
  o["present"] = static_cast<bool>(s);
  if (s) {
    o["omega_min_rad_s"] = units::omega_to_si(s->omega_min);
    o["omega_max_rad_s"] = units::omega_to_si(s->omega_max);
    o["lab_edge_low_nm"] = units::omega_to_wavelength(s->lab_omega_low) * 1e9;
    o["lab_edge_high_nm"] = units::omega_to_wavelength(s->lab_omega_high) * 1e9;
  }
  return o;
}

void add_context_meta(ordered_json& j, const StepContext& ctx) {
  j["sigma"] = ctx.step.sigma;
  j["n_ref"] = ctx.step.n_ref;
  j["gamma"] = ctx.frame.gamma;
  j["static_index_right"] = static_index(ctx.step.right);
  j["static_index_left"] = static_index(ctx.step.left);
  j["sli_left"] = sli_meta(ctx.sli_left);
  j["sli_right"] = sli_meta(ctx.sli_right);
  j["scope_max_rad_s"] = units::omega_to_si(ctx.scope_max);
}

void add_quarantine(ordered_json& j, const std::vector<QuarantineEntry>& entries,
                    const std::string& axis, double axis_to_si) {
  ordered_json arr = ordered_json::array();
  for (const auto& e : entries) {
    ordered_json o;
    o["index"] = e.index;
    o[axis] = e.axis_value * axis_to_si;
    o["reason"] = e.reason;
    arr.push_back(o);
  }
  j["quarantine"] = arr;
}

std::string out_path(const RunConfig& cfg, const std::string& name) {
  std::filesystem::create_directories(cfg.out_dir);
  return (std::filesystem::path(cfg.out_dir) / name).string();
}

void emit(const RunConfig& cfg, const std::string& stem, Table& t, const ordered_json& meta) {
  t.meta.insert(t.meta.begin(),
                {"rifscatter " + std::string(version()), "command: " + stem,
                 "config_hash: " + config_hash_hex(cfg)});
  write_csv(t, out_path(cfg, stem + ".csv"));
  write_text_file(out_path(cfg, stem + ".meta.json"), meta.dump(2) + "\n");
}

}  // namespace

Table cmd_dispersion(const RunConfig& cfg) {
  validate(cfg);
  const StepContext ctx = make_context(cfg);
  const BranchWindow wr = branch_window(ctx.step.right, 2);
  const BranchWindow wl = branch_window(ctx.step.left, 2);
  const double lo = std::max(wr.lo, wl.lo) * (1.0 + 2e-3);
  const double hi = std::min(wr.hi, wl.hi) * (1.0 - 2e-3);

  Table t;
  t.columns = {"omega_rad_s",  "wavelength_nm", "n_right", "n_group_right",
               "v_g_right_c",  "n_left",        "n_group_left", "v_g_left_c"};
  const int n = cfg.omega_points;
  const double la = std::log(lo);
  const double lb = std::log(hi);
  const MediumOptions mopt{cfg.guard_band};
  for (int i = 0; i < n; ++i) {
    const double w = std::exp(la + (lb - la) * i / (n - 1.0));
    const double nr = refractive_index_w(ctx.step.right, w, mopt);
    const double nl = refractive_index_w(ctx.step.left, w, mopt);
    const double gr = group_index_w(ctx.step.right, w);
    const double gl = group_index_w(ctx.step.left, w);
    t.add_row(std::vector<double>{units::omega_to_si(w),
                                  units::omega_to_wavelength(w) * 1e9, nr, gr, 1.0 / gr,
                                  nl, gl, 1.0 / gl});
  }

  ordered_json meta = base_meta(cfg, "dispersion");
  add_context_meta(meta, ctx);
  emit(cfg, "dispersion", t, meta);
  return t;
}

Table cmd_modes(const RunConfig& cfg) {
  validate(cfg);
  if (!(cfg.omega_prime > 0.0)) {
    throw ValidationError("run.omega_prime (rad/s) must be positive for the modes command");
  }
  const StepContext ctx = make_context(cfg);
  const double wp = units::omega_to_internal(cfg.omega_prime);
  if (!(wp < ctx.scope_max)) {
    throw ValidationError("run.omega_prime beyond the uppermost-branch onset");
  }

  Table t;
  t.columns = {"label",
               "side",
               "propagating",
               "marginal",
               "branch",
               "norm_sign",
               "omega_lab_re_rad_s",
               "omega_lab_im_rad_s",
               "k_lab_re_rad_m",
               "k_lab_im_rad_m",
               "omega_comoving_rad_s",
               "k_comoving_re_rad_m",
               "k_comoving_im_rad_m",
               "v_g_lab_c",
               "v_g_comoving_c",
               "norm_density",
               "flux_density",
               "residual"};

  auto add_side = [&](const SellmeierMedium& m, Side side,
                      const std::optional<SubluminalInterval>& sli) {
    const auto roots = solve_modes(m, wp, ctx.frame, side, sli, ctx.options.solve);
    for (const auto& r : roots) {
      PolarizedMode pm = polarization_vector(m, r, ctx.frame);
      if (r.propagating) {
        pm = normalize(pm);
      }
      t.add_row(std::vector<std::string>{
          r.label.text(), std::string(1, side_letter(side)),
          std::to_string(r.propagating ? 1 : 0), std::to_string(r.marginal ? 1 : 0),
          std::to_string(r.branch), std::to_string(r.norm_sign),
          format_g17(units::omega_to_si(r.lab.omega.real())),
          format_g17(units::omega_to_si(r.lab.omega.imag())),
          format_g17(units::wavenumber_to_si(r.lab.k.real())),
          format_g17(units::wavenumber_to_si(r.lab.k.imag())),
          format_g17(units::omega_to_si(r.comoving.omega.real())),
          format_g17(units::wavenumber_to_si(r.comoving.k.real())),
          format_g17(units::wavenumber_to_si(r.comoving.k.imag())),
          format_g17(r.v_g_lab), format_g17(r.v_g_comoving), format_g17(pm.norm_density),
          format_g17(pm.flux_density), format_g17(r.residual)});
    }
  };
  add_side(ctx.step.left, Side::Left, ctx.sli_left);
  add_side(ctx.step.right, Side::Right, ctx.sli_right);

  ordered_json meta = base_meta(cfg, "modes");
  add_context_meta(meta, ctx);
  meta["omega_prime_rad_s"] = cfg.omega_prime;
  const ConfigurationResult cr =
      configuration(wp, ctx.sli_left, ctx.sli_right, cfg.eps_edge);
  meta["configuration"] = static_cast<int>(cr.config);
  meta["configuration_degenerate"] = cr.degenerate;
  emit(cfg, "modes", t, meta);
  return t;
}

Table cmd_sli(const RunConfig& cfg) {
  validate(cfg);
  Table t;
  t.columns = {"delta_n",
               "sigma",
               "omega_min_left_rad_s",
               "omega_max_left_rad_s",
               "omega_min_right_rad_s",
               "omega_max_right_rad_s",
               "bh_width_rad_s",
               "wh_width_rad_s",
               "saturated"};
  ordered_json rows_meta = ordered_json::array();
  for (double dn : cfg.sweep_delta_n) {
    const StepContext ctx = make_context(cfg, dn);
    const WidthResult w = sli_width(ctx);
    t.add_row(std::vector<double>{dn, ctx.step.sigma, units::omega_to_si(w.min_left),
                                  units::omega_to_si(w.max_left),
                                  units::omega_to_si(w.min_right),
                                  units::omega_to_si(w.max_right),
                                  units::omega_to_si(w.black_hole_width),
                                  units::omega_to_si(w.white_hole_width),
                                  w.saturated ? 1.0 : 0.0});
    ordered_json r;
    r["delta_n"] = dn;
    r["sli_left"] = sli_meta(ctx.sli_left);
    r["sli_right"] = sli_meta(ctx.sli_right);
    rows_meta.push_back(r);
  }
  ordered_json meta = base_meta(cfg, "sli");
  meta["rows"] = rows_meta;
  emit(cfg, "sli", t, meta);
  return t;
}

Table cmd_spectrum(const RunConfig& cfg) {
  validate(cfg);
  const StepContext ctx = make_context(cfg);
  const auto grid = default_omega_prime_grid(ctx, cfg.omega_points);
  const MovingSpectrum spec = moving_frame_spectrum(ctx, grid, cfg.jobs);

  Table t;
  t.columns = {"omega_prime_rad_s", "config", "ok"};
  for (const auto& c : spec.columns) {
    t.columns.push_back(c);
  }
  t.columns.push_back("unitarity_residual");
  std::vector<bool> bad(grid.size(), false);
  for (const auto& q : spec.quarantine) {
    bad[q.index] = true;
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::vector<double> row{units::omega_to_si(grid[i]),
                            static_cast<double>(spec.config[i]), bad[i] ? 0.0 : 1.0};
    for (std::size_t c = 0; c < spec.columns.size(); ++c) {
      row.push_back(spec.flux[c][i]);
    }
    row.push_back(spec.unitarity_residual[i]);
    t.add_row(row);
  }

  ordered_json meta = base_meta(cfg, "spectrum");
  add_context_meta(meta, ctx);
  meta["grid_points"] = grid.size();
  add_quarantine(meta, spec.quarantine, "omega_prime_rad_s", units::omega_unit_si);
  emit(cfg, "spectrum", t, meta);
  return t;
}

Table cmd_labspectrum(const RunConfig& cfg) {
  validate(cfg);
  const StepContext ctx = make_context(cfg);
  const auto grid =
      wavelength_grid(cfg.lab_min_nm * 1e-9, cfg.lab_max_nm * 1e-9, cfg.lab_points);
  const LabSpectrum spec = lab_spectrum(ctx, grid, cfg.jobs);

  Table t;
  t.columns = {"wavelength_nm"};
  for (const auto& c : spec.columns) {
    t.columns.push_back(c + "_photons_s_m");
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::vector<double> row{grid[i] * 1e9};
    for (std::size_t c = 0; c < spec.columns.size(); ++c) {
      row.push_back(spec.flux[c][i]);
    }
    t.add_row(row);
  }

  ordered_json meta = base_meta(cfg, "labspectrum");
  add_context_meta(meta, ctx);
  ordered_json markers;
  auto marker = [&](const char* name, double a) {
    ordered_json o;
    o["present"] = a > 0.0;
    if (a > 0.0) {
      o["omega_rad_s"] = units::omega_to_si(a);
      o["wavelength_nm"] = units::omega_to_wavelength(a) * 1e9;
    }
    markers[name] = o;
  };
  marker("black_hole_low", spec.markers.black_hole_low);
  marker("black_hole_high", spec.markers.black_hole_high);
  marker("white_hole_low", spec.markers.white_hole_low);
  marker("white_hole_high", spec.markers.white_hole_high);
  marker("negative_edge", spec.markers.negative_edge);
  meta["markers"] = markers;
  add_quarantine(meta, spec.quarantine, "wavelength_nm", 1e9);
  emit(cfg, "labspectrum", t, meta);
  return t;
}

Table cmd_photons(const RunConfig& cfg) {
  validate(cfg);
  const StepContext ctx = make_context(cfg);
  const PhotonNumberResult res =
      photon_number(ctx, cfg.length_mm * 1e-3, 240, cfg.jobs);

  Table t;
  t.columns = {"delta_n",  "length_mm",           "delta_tau_s",
               "flux_integral_rad_s", "photons", "grid_points"};
  t.add_row(std::vector<double>{cfg.delta_n, cfg.length_mm, res.delta_tau_si,
                                res.flux_integral * units::omega_unit_si, res.photons,
                                static_cast<double>(res.grid_points)});

  ordered_json meta = base_meta(cfg, "photons");
  add_context_meta(meta, ctx);
  emit(cfg, "photons", t, meta);
  return t;
}

Table cmd_sweep(const RunConfig& cfg) {
  validate(cfg);
  Table t;
  t.columns = {"delta_n",        "sigma",         "photons", "flux_integral_rad_s",
               "bh_width_rad_s", "wh_width_rad_s", "saturated", "ok"};
  std::vector<QuarantineEntry> quarantine;
  std::vector<double> fit_x, fit_y;
  std::vector<double> fit_hx, fit_hy;
  int index = 0;
  for (double dn : cfg.sweep_delta_n) {
    double photons = 0.0;
    double integral = 0.0;
    double ok = 1.0;
    const IndexStep step = make_step(cfg, dn);
    WidthResult w{};
    try {
      const StepContext ctx =
          make_context(step, make_front(cfg), make_scatter_options(cfg));
      w = sli_width(ctx);
      const PhotonNumberResult res =
          photon_number(ctx, cfg.length_mm * 1e-3, 240, cfg.jobs);
      photons = res.photons;
      integral = res.flux_integral * units::omega_unit_si;
    } catch (const Error& e) {
      ok = 0.0;
      quarantine.push_back({index, dn, e.what()});
    }
    t.add_row(std::vector<double>{dn, step.sigma, photons, integral,
                                  units::omega_to_si(w.black_hole_width),
                                  units::omega_to_si(w.white_hole_width),
                                  w.saturated ? 1.0 : 0.0, ok});
    if (ok == 1.0 && photons > 0.0) {
      if (dn >= cfg.fit_low_min && dn <= cfg.fit_low_max) {
        fit_x.push_back(dn);
        fit_y.push_back(photons);
      }
      if (dn >= cfg.fit_high_min) {
        fit_hx.push_back(dn);
        fit_hy.push_back(photons);
      }
    }
    ++index;
  }

  ordered_json meta = base_meta(cfg, "sweep");
  auto fit_json = [](const std::vector<double>& x, const std::vector<double>& y) {
    ordered_json o;
    o["n"] = x.size();
    if (x.size() >= 2) {
      const PowerLawFit fit = fit_power_law(x, y);
      o["exponent"] = fit.exponent;
      o["amplitude"] = fit.amplitude;
      o["r_squared"] = fit.r_squared;
    }
    return o;
  };
  meta["fit_low"] = fit_json(fit_x, fit_y);
  meta["fit_high"] = fit_json(fit_hx, fit_hy);
  ordered_json arr = ordered_json::array();
  for (const auto& q : quarantine) {
    ordered_json o;
    o["index"] = q.index;
    o["delta_n"] = q.axis_value;
    o["reason"] = q.reason;
    arr.push_back(o);
  }
  meta["quarantine"] = arr;
  emit(cfg, "sweep", t, meta);
  return t;
}

}  // namespace rif
