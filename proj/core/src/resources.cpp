#include "mrpower/resources.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace mrpower {

double relative_entropy_of_coherence(const HermitianOperator& rho) {
  const double tr = rho.trace();
  if (std::abs(tr - 1.0) > 1e-9) {
    throw Error(ErrorKind::NotDensity, "trace is " + std::to_string(tr));
  }
  if (!is_psd(rho)) throw Error(ErrorKind::NotDensity, "state is not PSD");
  return von_neumann_entropy(dephase(rho)) - von_neumann_entropy(rho);
}

double measurement_relative_entropy(const Povm& m, const Povm& n) {
  if (m.dim() != n.dim() || m.size() != n.size()) {
    throw Error(ErrorKind::DimensionMismatch,
                "D_m needs equal dim and outcome count: (" + std::to_string(m.dim()) + ", " +
                    std::to_string(m.size()) + ") vs (" + std::to_string(n.dim()) + ", " +
                    std::to_string(n.size()) + ")");
  }
  double total = 0.0;
  for (std::size_t x = 0; x < m.size(); ++x) {
    const double term = relative_entropy(m[x], n[x]);
    if (std::isinf(term)) return std::numeric_limits<double>::infinity();
    total += term;
  }
  return total / static_cast<double>(m.dim());
}

double measurement_coherence(const Povm& m) {
  double total = 0.0;
  for (const HermitianOperator& mx : m.elements()) {
    total += von_neumann_entropy(dephase(mx)) - von_neumann_entropy(mx);
  }
  return total / static_cast<double>(m.dim());
}

namespace {

// Evaluates D_m(M||F) for the qubit incoherent POVM F = {diag(a,b), diag(1-a,1-b)}
// straight from the definition sum_x (tr M_x log M_x - tr M_x log F_x) / 2. F is
// diagonal, so log F_x acts entrywise on the diagonal of M_x.
class QubitIncoherentObjective {
 public:
  explicit QubitIncoherentObjective(const Povm& m) {
    for (std::size_t x = 0; x < 2; ++x) {
      neg_entropy_ += -von_neumann_entropy(m[x]);
      diag_[x][0] = m[x](0, 0).real();
      diag_[x][1] = m[x](1, 1).real();
    }
  }

  double operator()(double a, double b) const {
    const double f[2][2] = {{a, b}, {1.0 - a, 1.0 - b}};
    double cross = 0.0;
    for (int x = 0; x < 2; ++x) {
      for (int i = 0; i < 2; ++i) {
        const double w = diag_[x][i];
        if (f[x][i] > tol::eig_clip) {
          cross += w * std::log2(f[x][i]);
        } else if (w > tol::support) {
          return std::numeric_limits<double>::infinity();
        }
      }
    }
    return 0.5 * (neg_entropy_ - cross);
  }

 private:
  double neg_entropy_ = 0.0;
  double diag_[2][2] = {};
};

struct GridBest {
  double value = std::numeric_limits<double>::infinity();
  double a = 0.0;
  double b = 0.0;
};

GridBest grid_minimize(const QubitIncoherentObjective& f, double a_lo, double a_hi, double b_lo,
                       double b_hi, std::size_t steps) {
  std::vector<double> as(steps), bs(steps);
  const double denom = static_cast<double>(steps - 1);
  for (std::size_t k = 0; k < steps; ++k) {
    as[k] = a_lo + (a_hi - a_lo) * static_cast<double>(k) / denom;
    bs[k] = b_lo + (b_hi - b_lo) * static_cast<double>(k) / denom;
  }
  GridBest best;
  for (double a : as) {
    for (double b : bs) {
      const double v = f(a, b);
      if (v < best.value) best = {v, a, b};
    }
  }
  return best;
}

}  // namespace

double measurement_coherence_bruteforce(const Povm& m, std::size_t grid_steps) {
  if (m.dim() != 2 || m.size() != 2) {
    throw Error(ErrorKind::UnsupportedScale,
                "brute-force oracle supports d = 2, n = 2 only (got d = " +
                    std::to_string(m.dim()) + ", n = " + std::to_string(m.size()) + ")");
  }
  if (grid_steps < 100) {
    throw Error(ErrorKind::PreconditionViolation, "grid_steps must be >= 100");
  }
  const QubitIncoherentObjective f(m);
  const GridBest coarse = grid_minimize(f, 0.0, 1.0, 0.0, 1.0, grid_steps);
  const double h = 1.0 / static_cast<double>(grid_steps - 1);
  const GridBest fine =
      grid_minimize(f, std::max(0.0, coarse.a - h), std::min(1.0, coarse.a + h),
                    std::max(0.0, coarse.b - h), std::min(1.0, coarse.b + h), grid_steps);
  return std::min(coarse.value, fine.value);
}

bool is_incoherent_measurement(const Povm& m, double tolerance) {
  return std::all_of(m.elements().begin(), m.elements().end(),
                     [&](const HermitianOperator& mx) { return max_off_diagonal(mx) <= tolerance; });
}

IncoherentDecomposition decompose_incoherent(const Povm& m) {
  if (!is_incoherent_measurement(m, 1e-9)) {
    throw Error(ErrorKind::NotIncoherent, "POVM has off-diagonal elements above 1e-9");
  }
  const std::size_t n = m.size();
  const std::size_t d = m.dim();
  Eigen::MatrixXd p(n, d);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t i = 0; i < d; ++i) p(x, i) = std::max(0.0, m[x](i, i).real());

  StochasticMatrix post(std::move(p));
  const Povm rebuilt = classical_postprocess(basis_measurement(d), post);
  double residual = 0.0;
  for (std::size_t x = 0; x < n; ++x) residual = std::max(residual, max_abs_diff(rebuilt[x], m[x]));
  return {std::move(post), residual};
}

double ere_lower_bound(const HermitianOperator& x, Dims dims) {
  const double joint = von_neumann_entropy(x);
  const double sa = von_neumann_entropy(partial_trace(x, dims, Keep::A));
  const double sb = von_neumann_entropy(partial_trace(x, dims, Keep::B));
  return std::max(sa - joint, sb - joint);
}

}  // namespace mrpower
