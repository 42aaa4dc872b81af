#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rifscatter/commands.hpp"
#include "rifscatter/spectra.hpp"
#include "rifscatter/version.hpp"

namespace py = pybind11;

namespace {

rif::RunConfig config_from(const py::dict& overrides) {
  rif::RunConfig cfg;
  for (auto item : overrides) {
    rif::apply_key_value(cfg, py::cast<std::string>(py::str(item.first)),
                         py::cast<std::string>(py::str(item.second)));
  }
  rif::validate(cfg);
  return cfg;
}

rif::Side side_from(const std::string& s) {
  if (s == "L" || s == "left") {
    return rif::Side::Left;
  }
  if (s == "R" || s == "right") {
    return rif::Side::Right;
  }
  throw rif::ValidationError("side must be 'left' or 'right'");
}

py::dict sli_to_dict(const std::optional<rif::SubluminalInterval>& sli) {
  py::dict d;
  d["exists"] = sli.has_value();
  if (sli) {
    d["omega_prime_min_rad_s"] = rif::units::omega_to_si(sli->omega_min);
    d["omega_prime_max_rad_s"] = rif::units::omega_to_si(sli->omega_max);
    d["lab_omega_low_rad_s"] = rif::units::omega_to_si(sli->lab_omega_low);
    d["lab_omega_high_rad_s"] = rif::units::omega_to_si(sli->lab_omega_high);
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "Spontaneous vacuum emission at a moving refractive index front";

  py::register_exception<rif::Error>(mod, "RifError", PyExc_RuntimeError);

  mod.def("version", [] { return rif::version(); });

  mod.def("config_keys", [] { return rif::config_keys(); });

  mod.def("defaults", [] { return rif::config_to_map(rif::RunConfig{}); });

  mod.def(
      "refractive_index",
      [](double omega_rad_s, const py::dict& config) {
        const auto cfg = config_from(config);
        return rif::refractive_index(rif::make_medium(cfg), omega_rad_s);
      },
      py::arg("omega_rad_s"), py::arg("config") = py::dict());

  mod.def(
      "group_velocity",
      [](double omega_rad_s, const py::dict& config) {
        const auto cfg = config_from(config);
        return rif::group_velocity(rif::make_medium(cfg), omega_rad_s);
      },
      py::arg("omega_rad_s"), py::arg("config") = py::dict());

  mod.def(
      "sli_edges",
      [](const py::dict& config) {
        const auto cfg = config_from(config);
        const auto ctx = rif::make_context(cfg);
        const auto width = rif::sli_width(ctx);
        py::dict d;
        d["left"] = sli_to_dict(ctx.sli_left);
        d["right"] = sli_to_dict(ctx.sli_right);
        d["sigma"] = ctx.step.sigma;
        d["black_hole_width_rad_s"] = rif::units::omega_to_si(width.black_hole_width);
        d["white_hole_width_rad_s"] = rif::units::omega_to_si(width.white_hole_width);
        d["saturated"] = width.saturated;
        return d;
      },
      py::arg("config") = py::dict());

  mod.def(
      "solve_modes",
      [](double omega_prime_rad_s, const std::string& side, const py::dict& config) {
        const auto cfg = config_from(config);
        const auto ctx = rif::make_context(cfg);
        const rif::Side s = side_from(side);
        const auto& m = s == rif::Side::Left ? ctx.step.left : ctx.step.right;
        const auto& sli = s == rif::Side::Left ? ctx.sli_left : ctx.sli_right;
        const auto roots =
            rif::solve_modes(m, rif::units::omega_to_internal(omega_prime_rad_s),
                             ctx.frame, s, sli, ctx.options.solve);
        py::list out;
        for (const auto& r : roots) {
          py::dict d;
          d["label"] = r.label.text();
          d["propagating"] = r.propagating;
          d["marginal"] = r.marginal;
          d["norm_sign"] = r.norm_sign;
          d["branch"] = r.branch;
          d["omega_rad_s"] = rif::cdouble(r.lab.omega) * rif::units::omega_unit_si;
          d["k_rad_m"] = rif::units::wavenumber_to_si(1.0) * r.lab.k;
          d["k_comoving_rad_m"] = rif::units::wavenumber_to_si(1.0) * r.comoving.k;
          d["v_g_lab_c"] = r.v_g_lab;
          d["v_g_comoving_c"] = r.v_g_comoving;
          d["residual"] = r.residual;
          out.append(d);
        }
        return out;
      },
      py::arg("omega_prime_rad_s"), py::arg("side"), py::arg("config") = py::dict());

  mod.def(
      "scattering_matrix",
      [](double omega_prime_rad_s, const py::dict& config) {
        const auto cfg = config_from(config);
        const auto ctx = rif::make_context(cfg);
        const auto sm =
            rif::s_matrix(ctx, rif::units::omega_to_internal(omega_prime_rad_s));
        py::dict d;
        d["omega_prime_rad_s"] = rif::units::omega_to_si(sm.omega_prime);
        py::list ins;
        for (const auto& l : sm.in_labels) {
          ins.append(l.text());
        }
        py::list outs;
        for (const auto& l : sm.out_labels) {
          outs.append(l.text());
        }
        d["in_labels"] = ins;
        d["out_labels"] = outs;
        py::list rows;
        for (int i = 0; i < sm.s.rows(); ++i) {
          py::list row;
          for (int j = 0; j < sm.s.cols(); ++j) {
            row.append(sm.s(i, j));
          }
          rows.append(row);
        }
        d["s"] = rows;
        d["metric_in"] = sm.metric_in;
        d["metric_out"] = sm.metric_out;
        d["unitarity_residual"] = sm.unitarity_residual;
        d["continuity_residual"] = sm.continuity_residual;
        d["configuration"] = static_cast<int>(sm.config.config);
        d["fluxes"] = rif::mode_fluxes(sm);
        return d;
      },
      py::arg("omega_prime_rad_s"), py::arg("config") = py::dict());

  mod.def(
      "moving_spectrum",
      [](const py::dict& config) {
        const auto cfg = config_from(config);
        const auto ctx = rif::make_context(cfg);
        const auto grid = rif::default_omega_prime_grid(ctx, cfg.omega_points);
        const auto sp = rif::moving_frame_spectrum(ctx, grid, cfg.jobs);
        py::dict d;
        py::list omega;
        for (double w : sp.omega_prime) {
          omega.append(rif::units::omega_to_si(w));
        }
        d["omega_prime_rad_s"] = omega;
        d["columns"] = sp.columns;
        py::dict flux;
        for (std::size_t c = 0; c < sp.columns.size(); ++c) {
          flux[py::str(sp.columns[c])] = sp.flux[c];
        }
        d["flux"] = flux;
        d["configuration"] = sp.config;
        d["quarantined"] = static_cast<int>(sp.quarantine.size());
        return d;
      },
      py::arg("config") = py::dict());

  mod.def(
      "lab_spectrum",
      [](const py::dict& config) {
        const auto cfg = config_from(config);
        const auto ctx = rif::make_context(cfg);
        const auto grid =
            rif::wavelength_grid(cfg.lab_min_nm * 1e-9, cfg.lab_max_nm * 1e-9,
                                 cfg.lab_points);
        const auto sp = rif::lab_spectrum(ctx, grid, cfg.jobs);
        py::dict d;
        d["wavelength_m"] = sp.wavelength;
        d["columns"] = sp.columns;
        py::dict flux;
        for (std::size_t c = 0; c < sp.columns.size(); ++c) {
          flux[py::str(sp.columns[c])] = sp.flux[c];
        }
        d["flux"] = flux;
        py::dict markers;
        markers["black_hole_low_rad_s"] = rif::units::omega_to_si(sp.markers.black_hole_low);
        markers["black_hole_high_rad_s"] = rif::units::omega_to_si(sp.markers.black_hole_high);
        markers["white_hole_low_rad_s"] = rif::units::omega_to_si(sp.markers.white_hole_low);
        markers["white_hole_high_rad_s"] = rif::units::omega_to_si(sp.markers.white_hole_high);
        markers["negative_edge_rad_s"] = rif::units::omega_to_si(sp.markers.negative_edge);
        d["markers"] = markers;
        d["quarantined"] = static_cast<int>(sp.quarantine.size());
        return d;
      },
      py::arg("config") = py::dict());

  mod.def(
      "photon_number",
      [](const py::dict& config, int n_core) {
        const auto cfg = config_from(config);
        const auto ctx = rif::make_context(cfg);
        const auto r =
            rif::photon_number(ctx, cfg.length_mm * 1e-3, n_core, cfg.jobs);
        py::dict d;
        d["photons"] = r.photons;
        d["flux_integral_rad_s"] = rif::units::omega_to_si(r.flux_integral);
        d["delta_tau_s"] = r.delta_tau_si;
        d["grid_points"] = r.grid_points;
        return d;
      },
      py::arg("config") = py::dict(), py::arg("n_core") = 240);
}
