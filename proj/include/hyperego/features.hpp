#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hyperego/egonet.hpp"
#include "hyperego/simplex.hpp"

namespace hyperego {

/// A presented order over node sets. Position i (0-based) is read as
/// ordinal time i+1, whatever the underlying simplices' own ordinals are.
/// Holds pointers into storage owned by the caller.
class SetSequence {
public:
    SetSequence(std::span<const Simplex> simplices);
    SetSequence(const std::vector<Simplex>& simplices) : SetSequence(std::span<const Simplex>(simplices)) {}
    SetSequence(std::span<const Simplex> simplices, std::span<const std::size_t> order);
    SetSequence(std::span<const NodeSet> sets);
    SetSequence(const std::vector<NodeSet>& sets) : SetSequence(std::span<const NodeSet>(sets)) {}
    SetSequence(std::span<const NodeSet> sets, std::span<const std::size_t> order);

    std::size_t size() const noexcept { return sets_.size(); }
    const NodeSet& operator[](std::size_t i) const { return *sets_[i]; }

private:
    std::vector<const NodeSet*> sets_;
};

/// Sum over adjacent pairs of |s_i ∩ s_{i+1}|.
std::size_t adjacent_intersection_total(const SetSequence& seq);

/// I(E): mean adjacent intersection cardinality. Throws UndefinedMeasureError for m < 2.
double avg_intersection_size(const SetSequence& seq);
double mean_simplex_size(const SetSequence& seq);
/// avg_intersection_size / mean simplex size.
double intersection_density(const SetSequence& seq);

/// (last - first) / (size - 1); nullopt for a single occurrence.
std::optional<double> alter_spread(const AlterNetwork& net);

/// Alter-networks of every node other than `ego`, with positions as ordinals.
std::vector<AlterNetwork> alter_networks(const SetSequence& seq, NodeId ego);

/// Mean spread over alters occurring at least twice; m when none does.
double avg_alter_spread(const SetSequence& seq, NodeId ego);

/// Minimum alter-network size for the thirds analysis.
inline constexpr std::size_t kLargeAlterNetwork = 10;

/// Spread of each contiguous third (sizes n/3, n/3, remainder).
/// nullopt when the network has fewer than kLargeAlterNetwork occurrences.
std::optional<std::array<double, 3>> thirds_spread(const AlterNetwork& net);

/// Per position, the number of nodes never seen at an earlier position.
std::vector<std::size_t> novelty_profile(const SetSequence& seq);

/// Later sets the first set is a (non-strict) subset of.
std::size_t first_subset_count(const SetSequence& seq);
/// Earlier sets the last set is a (non-strict) superset of.
std::size_t last_superset_count(const SetSequence& seq);

/// Smallest 1-based position containing u; throws UnknownEgoError if absent.
std::size_t user_arrival_time(const SetSequence& seq, NodeId u);

struct FeatureVector {
    std::size_t length = 0;
    double intersection_density = 0.0;
    double avg_alter_spread = 0.0;
    std::size_t first_subset_count = 0;
    std::size_t last_superset_count = 0;
    /// Only for radial and contracted ego-networks.
    std::optional<std::size_t> user_arrival;

    std::vector<double> values() const;
};

/// Column names matching FeatureVector::values() for a kind.
std::vector<std::string> feature_names(EgoKind kind);
std::size_t feature_count(EgoKind kind);

/// Throws UndefinedMeasureError for m < 2.
FeatureVector featurize(const SetSequence& seq, EgoKind kind, NodeId ego);
inline FeatureVector featurize(const EgoNetwork& ego) {
    return featurize(SetSequence(ego.simplices), ego.kind, ego.ego);
}

// ---------------------------------------------------------------------------
// Aggregate curves across many ego-networks.

enum class Measure { intersection, density, spread, arrival, novelty, simplex_size };
enum class CurveVariant { ordered, shuffled, first_fifth };

std::string_view to_string(Measure m);
std::string_view to_string(CurveVariant v);
Measure parse_measure(std::string_view text);
CurveVariant parse_curve_variant(std::string_view text);

struct CurvePoint {
    /// Ego length, or 1-based position for the per-position measures
    /// (novelty, simplex_size).
    std::size_t x = 0;
    CurveVariant variant = CurveVariant::ordered;
    double mean = 0.0;
    std::size_t count = 0;
};

using StatCurve = std::vector<CurvePoint>;

/// Window used by the first-fifth variant: ceil(0.2 m) leading simplices.
std::size_t first_fifth_window(std::size_t m);

/// Per-x means of `measure` for each requested variant. The shuffled variant
/// uses one permutation per ego, seeded from (seed, ego index). Points are
/// sorted by (variant, x). Egos where a measure is undefined are skipped.
StatCurve aggregate_curves(std::span<const EgoNetwork> egos, Measure measure,
                           std::span<const CurveVariant> variants, std::uint64_t seed);

/// Alters bucketed by floor(log2(dataset degree)); mean arrival position
/// normalized to (first ordinal - 1) / (m - 1). Descriptive only.
struct DegreeArrivalRow {
    std::size_t degree_bucket = 0;
    double mean_normalized_arrival = 0.0;
    std::size_t count = 0;
};
std::vector<DegreeArrivalRow> degree_arrival(std::span<const EgoNetwork> egos, const SimplexDataset& dataset);

void write_curve_csv(std::ostream& out, const StatCurve& curve);
void write_curve_json(std::ostream& out, const StatCurve& curve, Measure measure);

}  // namespace hyperego
