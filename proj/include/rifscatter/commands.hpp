#pragma once

#include "rifscatter/config.hpp"
#include "rifscatter/table.hpp"

namespace rif {

// One CLI subcommand each. Every command writes its CSV plus a .meta.json
// sidecar into cfg.out_dir and returns the produced table for testing.

// Refractive index, group index and group velocity of both media over the
// optical band.
Table cmd_dispersion(const RunConfig& cfg);

// All sixteen local modes at cfg.omega_prime (rad/s), eight per side.
Table cmd_modes(const RunConfig& cfg);

// Subluminal intervals and configuration boundaries versus step height.
Table cmd_sli(const RunConfig& cfg);

// Moving-frame emission spectrum on the default grid.
Table cmd_spectrum(const RunConfig& cfg);

// Lab-frame spectrum over the configured wavelength window.
Table cmd_labspectrum(const RunConfig& cfg);

// Photon number in the middle-optical mode for the configured length.
Table cmd_photons(const RunConfig& cfg);

// Photon number and interval widths across sweep.delta_n, plus power-law
// fits over the configured ranges.
Table cmd_sweep(const RunConfig& cfg);

}  // namespace rif
