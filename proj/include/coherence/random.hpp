#pragma once

#include <cstdint>
#include <random>

#include "coherence/qmat.hpp"

namespace coherence {

using Rng = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for sub-task `index` of a run seeded with `seed`. Independent of
/// evaluation order, so parallel and serial runs agree.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ (index + 0x632be59bd9b4e019ULL));
}

/// m x m matrix of standard complex Gaussians, E|z|^2 = 1.
ComplexMatrix complex_ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng);

/// Haar-distributed unitary: QR of a Ginibre matrix with R's diagonal phases
/// folded back into Q.
ComplexMatrix haar_unitary(Eigen::Index m, Rng& rng);

/// Random density matrix of the given rank, drawn as G G^dagger / tr for a
/// d x rank Ginibre G (Hilbert-Schmidt measure when rank == d).
DensityMatrix random_density(Eigen::Index d, Rng& rng, Eigen::Index rank = 0);

/// Uniform point on the probability simplex (flat Dirichlet).
RealVector random_simplex(Eigen::Index d, Rng& rng);

}  // namespace coherence
