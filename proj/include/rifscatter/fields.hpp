#pragma once

#include <Eigen/Dense>

#include "rifscatter/modes.hpp"

namespace rif {

using Vector8cd = Eigen::Matrix<cdouble, 8, 1>;
using Matrix8d = Eigen::Matrix<double, 8, 8>;

// Field amplitudes of one plane-wave mode in the comoving frame, ordered as
// (A, P1, P2, P3, Pi_A, Pi_P1, Pi_P2, Pi_P3).
struct PolarizedMode {
  ModeRoot root;
  Vector8cd v = Vector8cd::Zero();
  double u = 0.0;             // front speed of the frame the mode was built in
  double norm_density = 0.0;  // i v^dag eta v, signed
  double flux_density = 0.0;  // conserved flux J(v, v), signed
  bool normalized = false;
};

// Symplectic metric eta pairing fields with momenta.
Matrix8d norm_metric();

// Field and momentum amplitudes for a dispersion root, gauge A = 1.
PolarizedMode polarization_vector(const SellmeierMedium& m, const ModeRoot& root,
                                  const FrontFrame& f);

// Scalar-product density i a^dag eta b between two modes of equal comoving
// frequency. Throws ValidationError when the frequencies differ.
cdouble scalar_product_density(const PolarizedMode& a, const PolarizedMode& b);

// Density of the zeta-independent conserved flux between two modes of equal
// comoving frequency. For a = b this equals norm density times comoving group
// velocity; for distinct non-conjugate wavenumbers it vanishes.
cdouble flux_pairing(const PolarizedMode& a, const PolarizedMode& b);

// Rescales a propagating mode to unit conserved flux magnitude, with the A
// component made real positive. Throws NormalizationError when the comoving
// group velocity is below eps_vg (subluminal-interval edge).
PolarizedMode normalize(const PolarizedMode& mode, double eps_vg = 1e-14);

}  // namespace rif
