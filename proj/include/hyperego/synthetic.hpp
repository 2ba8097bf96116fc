#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hyperego/simplex.hpp"

namespace hyperego::synthetic {

/// Unstructured random dataset: up to `max_nodes` nodes, up to
/// `max_simplices` simplices of size 1..5, timestamps drawn with ties.
SimplexDataset random_dataset(std::uint64_t seed, std::size_t max_nodes = 50, std::size_t max_simplices = 200);

/// Parameters of the locality generator. Each alter appears in a contiguous
/// run of geometric length, runs start at staggered times, and every simplex
/// brings a one-off alter with probability `novel_rate`. A mentor opens the
/// sequence and fades out, so early simplices are subsets of later ones.
struct LocalityConfig {
    std::size_t egos = 500;
    std::size_t min_length = 10;
    std::size_t max_length = 20;
    /// Per-simplex probability that an active alter stays for the next one.
    double run_continue = 0.75;
    /// Probability that a new alter starts a run at a given simplex.
    double join_rate = 0.5;
    std::size_t max_group = 3;
    double novel_rate = 0.3;
    /// Probability of an extra alter-only simplex after each ego simplex.
    double alter_only_rate = 0.15;
    /// Initial probability that the mentor joins a simplex; decays linearly to 0.
    double mentor_rate = 0.8;
};

struct LocalityDataset {
    SimplexDataset dataset;
    /// The designated user nodes, one per generated ego-network.
    std::vector<NodeId> egos;
};

/// Each ego lives on its own block of node identifiers, so its star
/// ego-network is exactly the generated sequence.
LocalityDataset locality_dataset(const LocalityConfig& cfg, std::uint64_t seed);

/// Star-style sequence built by concatenating per-alter runs: alter k
/// appears in `run_length` consecutive simplices {ego, k}.
std::vector<Simplex> concatenated_runs(NodeId ego, std::size_t alters, std::size_t run_length);

}  // namespace hyperego::synthetic
