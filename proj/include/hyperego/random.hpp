#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace hyperego {

using Rng = std::mt19937_64;

/// Derives an independent stream seed from a base seed and a stream index
/// (splitmix64 finalizer), so per-ego work is reproducible in any order.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

std::vector<std::size_t> identity_permutation(std::size_t m);

/// Uniform permutation of 0..m-1.
std::vector<std::size_t> random_permutation(std::size_t m, Rng& rng);

/// Uniform over the m!-1 non-identity permutations (rejection sampling).
/// Requires m >= 2.
std::vector<std::size_t> random_nonidentity_permutation(std::size_t m, Rng& rng);

/// Uniform index in [0, n).
std::size_t uniform_index(std::size_t n, Rng& rng);

}  // namespace hyperego
