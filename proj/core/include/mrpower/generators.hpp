#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <string_view>

#include "mrpower/qobjects.hpp"

namespace mrpower {

/// SplitMix64 finalizer applied to master + (index + 1) * golden gamma.
/// Gives the per-trial seed used by every randomized suite.
std::uint64_t splitmix(std::uint64_t master, std::uint64_t index) noexcept;

/// Reproducible random source. The engine is std::mt19937_64, whose output
/// sequence is fixed by the standard; all distributions are implemented here
/// rather than through <random> distributions, which are not portable.
class SeededRng {
 public:
  static constexpr std::string_view algorithm = "mt19937_64+splitmix64";

  explicit SeededRng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  /// Independent stream for trial `index`, seeded with splitmix(seed, index).
  SeededRng derive(std::uint64_t index) const { return SeededRng(splitmix(seed_, index)); }

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform integer in [lo, hi] (inclusive).
  std::size_t uniform_int(std::size_t lo, std::size_t hi);
  /// Standard normal via Box-Muller.
  double normal();
  /// (N(0,1) + i N(0,1)) / sqrt(2).
  Complex complex_normal();
  /// Flat Dirichlet(1, ..., 1) sample of length k.
  RealVector dirichlet(std::size_t k);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// Haar-random unitary from the QR decomposition of a complex Ginibre matrix,
/// with the phases of diag(R) divided out.
Matrix haar_unitary(std::size_t d, SeededRng& rng);

/// Matrix of a uniformly random permutation of the computational basis.
Matrix random_permutation(std::size_t d, SeededRng& rng);

/// Permutation times random diagonal phases; maps basis states to basis states.
Matrix random_incoherent_unitary(std::size_t d, SeededRng& rng);

enum class ChannelKind { General, Unital };

/// General: Stinespring isometry cut from a Haar unitary on d * kraus_rank.
/// Unital: Dirichlet-weighted mixture of kraus_rank Haar unitaries.
/// Throws InvalidRank unless 1 <= kraus_rank <= d^2.
QuantumChannel random_channel(std::size_t d, std::size_t kraus_rank, ChannelKind kind,
                              SeededRng& rng);

/// unital = false: compose(random general channel, Delta). unital = true: Dirichlet mixture of
/// (permutation o Delta). The result is checked with classify_channel and
/// ConstructionFailed is thrown if the check fails.
QuantumChannel random_dio(std::size_t d, bool unital, SeededRng& rng);

/// Wider unital DIO family: Dirichlet mixture whose components are either
/// incoherent unitaries (permutation times phases) or (permutation o Delta).
/// Verified unital and DIO before return.
QuantumChannel random_unital_dio_mixture(std::size_t d, SeededRng& rng);

/// Columns drawn from a flat Dirichlet.
StochasticMatrix random_stochastic(std::size_t outcomes, std::size_t inputs, SeededRng& rng);

/// Coherent: M_x = T^{-1/2} A_x A_x^dag T^{-1/2} with Ginibre A_x and T their sum.
/// Incoherent: basis measurement post-processed by a random stochastic matrix.
/// Throws SingularTotal if T stays singular after 10 redraws.
Povm random_povm(std::size_t d, std::size_t n, bool incoherent, SeededRng& rng);

/// Random full-rank density matrix (normalized Wishart).
HermitianOperator random_density(std::size_t d, SeededRng& rng);
Vector random_pure_state(std::size_t d, SeededRng& rng);

/// "prep", "g", "hadamard", "qubit_dephase", "cnot2".
std::map<std::string, QuantumChannel> paper_examples();

}  // namespace mrpower
