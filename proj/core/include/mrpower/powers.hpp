#pragma once

#include <cstddef>
#include <vector>

#include "mrpower/qobjects.hpp"

namespace mrpower {

/// Largest d accepted by the conversion operations (the bipartite space is d^2).
inline constexpr std::size_t kDefaultConversionCap = 6;

/// C(E): measurement-coherence of the basis measurement pulled back through E,
/// (1/d) sum_i [S(Delta(E^dag(|i><i|))) - S(E^dag(|i><i|))]. Square channels only.
double measurement_cohering_power(const QuantumChannel& e);

/// C_g(E) = max_i C_R(E(|i><i|)); ancilla-free form. Square channels only.
double state_cohering_power(const QuantumChannel& e);

/// Generalized CNOT on C^d (x) C^d: |i, j> -> |i, i + j mod d>.
Matrix cnot_matrix(std::size_t d);
QuantumChannel cnot_unitary(std::size_t d);

/// Delta_AB o (E (x) id_B) o U_CNOT^dag on the d^2-dimensional space.
QuantumChannel conversion_channel(const QuantumChannel& e,
                                  std::size_t cap = kDefaultConversionCap);

struct ConversionCertificate {
  double cohering_power = 0.0;         ///< C(E) from the closed form
  double avg_ere_lower_bound = 0.0;    ///< (1/d^2) sum_ij of per-element bounds
  std::vector<double> per_element_bounds;  ///< index i*d + j
  double gap = 0.0;                    ///< |cohering_power - avg_ere_lower_bound|
};

/// Evaluates both sides of the conversion equality independently: C(E) from
/// the closed form and the averaged E_R lower bound over the pulled-back
/// elements (conversion channel)^dag(|ij><ij|).
ConversionCertificate conversion_ent_lower_bound(const QuantumChannel& e,
                                                 std::size_t cap = kDefaultConversionCap);

/// (1/d^2) sum_ij ere_lower_bound((Delta o K o (E (x) id) o L)^dag(|ij><ij|)).
/// K must be DIO and L unital DIO on d^2 (PreconditionViolation otherwise).
/// The value lower-bounds the measurement-entangling power of the composite,
/// so it is a one-sided proxy for the bound by C(E).
double composite_ent_lower_bound(const QuantumChannel& e, const QuantumChannel& k,
                                 const QuantumChannel& l);

struct DualityResult {
  double c_g = 0.0;        ///< state_cohering_power(E)
  double c_adj = 0.0;      ///< measurement_cohering_power(E^dag)
  double c_r_average = 0.0;  ///< (1/d) sum_i C_R(E(|i><i|))
  bool sandwich_ok = false;  ///< c_g/d - 1e-8 <= c_adj <= c_g + 1e-8
};

/// Throws NotUnital if E is not unital.
DualityResult duality_check(const QuantumChannel& e, double tolerance = 1e-8);

/// Embeds a measurement channel (output dim n) into a square channel of
/// dimension d by padding the output with never-occurring outcomes. Throws
/// UnsupportedScale if n > d.
QuantumChannel square_measurement_channel(const Povm& m);

}  // namespace mrpower
