#pragma once

#include <cstddef>

#include "mrpower/qobjects.hpp"

namespace mrpower {

/// C_R(rho) = S(Delta(rho)) - S(rho). Throws NotDensity unless rho is PSD with
/// unit trace (within 1e-9).
double relative_entropy_of_coherence(const HermitianOperator& rho);

/// D_m(M||N) = (1/d) sum_x D(M_x||N_x), d being the measured (input)
/// dimension. Returns +inf if any term is infinite.
double measurement_relative_entropy(const Povm& m, const Povm& n);

/// Closed form of the measurement-coherence: (1/d) sum_x [S(Delta(M_x)) - S(M_x)].
double measurement_coherence(const Povm& m);

/// Variational oracle for the measurement-coherence of a qubit two-outcome
/// POVM: minimizes D_m(M||F) over every incoherent F = {diag(a,b),
/// diag(1-a,1-b)} on a grid_steps x grid_steps grid of (a, b) in [0,1]^2,
/// then repeats once on a grid of the same size spanning the two cells
/// around the best point. Throws UnsupportedScale unless d = n = 2 and
/// PreconditionViolation for grid_steps < 100.
double measurement_coherence_bruteforce(const Povm& m, std::size_t grid_steps);

/// True iff every element's off-diagonal max-abs is at most `tolerance`.
bool is_incoherent_measurement(const Povm& m, double tolerance = 1e-9);

struct IncoherentDecomposition {
  StochasticMatrix post;  ///< p(x|i) = <i|M_x|i>, n x d
  double residual;        ///< max-abs error of rebuilding M from the basis measurement
};

/// Writes an incoherent POVM as the basis measurement followed by classical
/// post-processing. Throws NotIncoherent if an element has off-diagonal
/// entries above 1e-9.
IncoherentDecomposition decompose_incoherent(const Povm& m);

/// max{S(tr_B X) - S(X), S(tr_A X) - S(X)}. The raw value is returned even
/// when negative; it lower-bounds the relative entropy of entanglement either way.
double ere_lower_bound(const HermitianOperator& x, Dims dims);

}  // namespace mrpower
