#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "expmbt/matrix.hpp"

namespace expmbt {

/// Seeded standard normal entries.
Matrix gen_randn(Index n, std::uint64_t seed);

/// Random upper triangular with every diagonal entry forced negative.
Matrix gen_stable_tri(Index n, std::uint64_t seed);

/// (C + C^t)/2 of a seeded random matrix.
Matrix gen_symm(Index n, std::uint64_t seed);

/// Chebyshev spectral differentiation matrix on the n+1 extreme points with
/// the row and column of the node x = 1 deleted (the classical n x n
/// nilpotent-spectrum test matrix).
Matrix gen_chebspec(Index n);

/// (T, H): T is the real Schur triangular factor of a seeded random matrix
/// with positive diagonal entries negated (stable), H is the symmetrized
/// Chebyshev matrix (C + C^t)/2.
std::pair<Matrix, Matrix> gen_hamiltonian_pair(Index n, std::uint64_t seed);

/// Dispatch by name: stable-tri, symm, randn, chebspec. The pair generator
/// has its own entry point since it returns two matrices.
Matrix gen_testmat(const std::string& kind, Index n, std::uint64_t seed);

} // namespace expmbt
