#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace hyperego {

using NodeId = std::uint64_t;
using Timestamp = std::int64_t;

/// Sorted, duplicate-free node identifiers.
using NodeSet = std::vector<NodeId>;

/// Sorts and deduplicates in place; returns the number of duplicates removed.
std::size_t canonicalize(NodeSet& nodes);

std::size_t intersection_size(const NodeSet& a, const NodeSet& b);
NodeSet intersect(const NodeSet& a, const NodeSet& b);
bool is_subset(const NodeSet& sub, const NodeSet& super);
bool contains(const NodeSet& set, NodeId node);

/// A timestamped hyperedge.
struct Simplex {
    NodeSet nodes;
    Timestamp real_time = 0;
    /// 1-based position in arrival order; 0 until assigned.
    std::int64_t ordinal_time = 0;
    /// 0-based position in the source file.
    std::size_t source_index = 0;

    std::size_t size() const noexcept { return nodes.size(); }
    bool trivial() const noexcept { return nodes.size() < 2; }

    friend bool operator==(const Simplex&, const Simplex&) = default;
};

/// Full ordered stream of simplices. Immutable once built; share read-only.
struct SimplexDataset {
    std::string name;
    /// Sorted by (real_time, source_index).
    std::vector<Simplex> simplices;
    std::size_t node_count = 0;
    std::map<NodeId, std::size_t> degree_index;
    /// Repeated identifiers collapsed while reading simplex lines.
    std::size_t duplicate_nodes_collapsed = 0;

    std::size_t trivial_count() const;
};

/// Paths of the three-file layout `<prefix>-nverts.txt` etc.
struct DatasetFiles {
    std::filesystem::path nverts;
    std::filesystem::path simplices;
    std::filesystem::path times;

    static DatasetFiles from_prefix(const std::filesystem::path& prefix);
};

/// Reads the three-file format. Throws ParseError, StructuralError or
/// EmptyDatasetError. The result is sorted, carries global ordinals and
/// an up-to-date degree index; trivial simplices are kept.
SimplexDataset load_dataset(const DatasetFiles& files, std::string name);

/// Writes the dataset in its current order (round-trips through load_dataset).
void write_dataset(const SimplexDataset& dataset, const DatasetFiles& files);

/// Builds a dataset from in-memory simplices, sorting and indexing as
/// load_dataset does. `source_index` is taken from each simplex.
SimplexDataset make_dataset(std::vector<Simplex> simplices, std::string name);

SimplexDataset filter_trivial(const SimplexDataset& dataset);

/// Re-indexes ordinals as 1..m. Input must be sorted by
/// (real_time, source_index); throws ContractError otherwise.
std::vector<Simplex> assign_ordinal_times(std::vector<Simplex> simplices);

std::map<NodeId, std::size_t> compute_degrees(std::span<const Simplex> simplices);

}  // namespace hyperego
