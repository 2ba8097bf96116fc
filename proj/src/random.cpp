#include "hyperego/random.hpp"

#include <algorithm>
#include <numeric>

#include "hyperego/error.hpp"

namespace hyperego {

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::vector<std::size_t> identity_permutation(std::size_t m) {
    std::vector<std::size_t> p(m);
    std::iota(p.begin(), p.end(), std::size_t{0});
    return p;
}

std::vector<std::size_t> random_permutation(std::size_t m, Rng& rng) {
    auto p = identity_permutation(m);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

std::vector<std::size_t> random_nonidentity_permutation(std::size_t m, Rng& rng) {
    if (m < 2) {
        throw ContractError("a non-identity permutation needs at least 2 items");
    }
    const auto id = identity_permutation(m);
    while (true) {
        auto p = random_permutation(m, rng);
        if (p != id) {
            return p;
        }
    }
}

std::size_t uniform_index(std::size_t n, Rng& rng) {
    std::uniform_int_distribution<std::size_t> dist(0, n - 1);
    return dist(rng);
}

}  // namespace hyperego
