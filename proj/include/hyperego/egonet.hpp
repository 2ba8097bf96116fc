#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hyperego/simplex.hpp"

namespace hyperego {

enum class EgoKind { star, radial, contracted };

std::string_view to_string(EgoKind kind);
/// Accepts "star", "radial", "contracted"; throws ContractError otherwise.
EgoKind parse_ego_kind(std::string_view text);

/// Simplices around a user node, in arrival order with ordinals 1..m.
struct EgoNetwork {
    NodeId ego = 0;
    EgoKind kind = EgoKind::star;
    std::vector<Simplex> simplices;
    /// A(u), sorted; never contains the ego.
    NodeSet alters;

    std::size_t length() const noexcept { return simplices.size(); }
};

/// Ordinals (within an ego-network) of the simplices containing one alter.
struct AlterNetwork {
    NodeId alter = 0;
    std::vector<std::int64_t> ordinals;
};

struct EligibilityConfig {
    std::size_t min_length = 1;
    std::size_t min_alters = 0;
    bool majority_identical_filter = false;
};

enum class DatasetStyle { coauth, email, threads };

DatasetStyle parse_dataset_style(std::string_view text);
/// Per-domain thresholds: coauth 20/10, email 10/0, threads 10/10, all with
/// the majority-identical filter on.
EligibilityConfig default_eligibility(DatasetStyle style);

struct Eligibility {
    bool eligible = true;
    /// Empty when eligible, otherwise "length", "alters" or "majority-identical".
    std::string reason;

    explicit operator bool() const noexcept { return eligible; }
};

/// Indexes a dataset's non-trivial simplices by node so that many
/// ego-networks can be extracted without rescanning. Holds a reference to
/// the dataset, which must outlive the extractor.
class EgoExtractor {
public:
    explicit EgoExtractor(const SimplexDataset& dataset);

    /// Throws UnknownEgoError when u is in no non-trivial simplex.
    NodeSet alters(NodeId u) const;
    EgoNetwork extract(NodeId u, EgoKind kind) const;

    /// Nodes occurring in at least one non-trivial simplex, ascending.
    std::vector<NodeId> nodes() const;
    /// Star length of u (number of non-trivial simplices containing u).
    std::size_t star_length(NodeId u) const;

private:
    const std::vector<std::size_t>& incident(NodeId u) const;

    const SimplexDataset* dataset_;
    std::map<NodeId, std::vector<std::size_t>> incidence_;
};

NodeSet alters(const SimplexDataset& dataset, NodeId u);
EgoNetwork extract_ego(const SimplexDataset& dataset, NodeId u, EgoKind kind);

/// Throws NotAnAlterError if a is not in ego.alters.
AlterNetwork alter_network(const EgoNetwork& ego, NodeId a);

Eligibility is_eligible(const EgoNetwork& ego, const EligibilityConfig& cfg);

/// Highest multiplicity of any node set in the ego's simplex multiset.
std::size_t modal_multiplicity(const EgoNetwork& ego);

/// Text form: header `ego kind m`, then `ordinal real_time v1 v2 ...` per line.
void write_ego(std::ostream& out, const EgoNetwork& ego);
/// Inverse of write_ego. Alters are recomputed as every non-ego node seen.
EgoNetwork read_ego(std::istream& in);

}  // namespace hyperego
