#pragma once

// Seeded test families shared by the suite runner, unit tests and acceptance.

#include <cstdint>
#include <random>

#include "vb/diffeo.hpp"
#include "vb/liealg.hpp"

namespace vb::families {

using Rng = std::mt19937_64;

// real trig poly, coefficient n drawn from amp * U(-1,1) / (n+1)
TrigPoly random_trigpoly(Rng& rng, int max_harmonic, double amp, bool with_constant = true);

// Alexander extension o radial twist o rotation, all with canonical isotopies.
DiscDiffeo random_disc_diffeo(Rng& rng);

// Generalized asymptotically radial field: xi(r)(a(theta), b(theta)) near the
// boundary plus a Cartesian polynomial field damped to zero near it.  a = 0
// when `genuine`.
DiscVectorField random_ar_field(Rng& rng, int max_harmonic, double amp, bool genuine);

// Boundary-trivial map with amplitude scale `amp`: a twist composed with an
// Alexander-conjugated twist.
DiscDiffeo random_h_element(Rng& rng, double amp);

// Rotation-conjugated member of the Delta_g family.
DiscDiffeo conjugated_twist(double amp, double phase);

// Loops in H (isotopy ends at the identity), k = 0..4.
SphereIsotopy loop_isotopy(int k, double amp);

SemidirectElement random_semidirect(Rng& rng, int max_harmonic);

}  // namespace vb::families
