#include "hyperego/features.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <utility>

#include "json.hpp"

#include "hyperego/error.hpp"
#include "hyperego/random.hpp"

namespace hyperego {

SetSequence::SetSequence(std::span<const Simplex> simplices) {
    sets_.reserve(simplices.size());
    for (const auto& s : simplices) {
        sets_.push_back(&s.nodes);
    }
}

SetSequence::SetSequence(std::span<const Simplex> simplices, std::span<const std::size_t> order) {
    sets_.reserve(order.size());
    for (std::size_t idx : order) {
        sets_.push_back(&simplices[idx].nodes);
    }
}

SetSequence::SetSequence(std::span<const NodeSet> sets) {
    sets_.reserve(sets.size());
    for (const auto& s : sets) {
        sets_.push_back(&s);
    }
}

SetSequence::SetSequence(std::span<const NodeSet> sets, std::span<const std::size_t> order) {
    sets_.reserve(order.size());
    for (std::size_t idx : order) {
        sets_.push_back(&sets[idx]);
    }
}

namespace {

void require_pairs(const SetSequence& seq, const char* what) {
    if (seq.size() < 2) {
        throw UndefinedMeasureError(std::string(what) + " needs at least 2 simplices, got " +
                                    std::to_string(seq.size()));
    }
}

}  // namespace

std::size_t adjacent_intersection_total(const SetSequence& seq) {
    std::size_t total = 0;
    for (std::size_t i = 1; i < seq.size(); ++i) {
        total += intersection_size(seq[i - 1], seq[i]);
    }
    return total;
}

double avg_intersection_size(const SetSequence& seq) {
    require_pairs(seq, "average intersection size");
    return static_cast<double>(adjacent_intersection_total(seq)) / static_cast<double>(seq.size() - 1);
}

double mean_simplex_size(const SetSequence& seq) {
    if (seq.size() == 0) {
        throw UndefinedMeasureError("mean simplex size of an empty sequence");
    }
    std::size_t total = 0;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        total += seq[i].size();
    }
    return static_cast<double>(total) / static_cast<double>(seq.size());
}

double intersection_density(const SetSequence& seq) {
    require_pairs(seq, "intersection density");
    double mean_size = mean_simplex_size(seq);
    return mean_size > 0.0 ? avg_intersection_size(seq) / mean_size : 0.0;
}

std::optional<double> alter_spread(const AlterNetwork& net) {
    if (net.ordinals.size() < 2) {
        return std::nullopt;
    }
    auto span = static_cast<double>(net.ordinals.back() - net.ordinals.front());
    return span / static_cast<double>(net.ordinals.size() - 1);
}

std::vector<AlterNetwork> alter_networks(const SetSequence& seq, NodeId ego) {
    std::vector<std::pair<NodeId, std::int64_t>> hits;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        for (NodeId v : seq[i]) {
            if (v != ego) {
                hits.emplace_back(v, static_cast<std::int64_t>(i + 1));
            }
        }
    }
    std::sort(hits.begin(), hits.end());
    std::vector<AlterNetwork> nets;
    for (const auto& [v, pos] : hits) {
        if (nets.empty() || nets.back().alter != v) {
            nets.push_back({v, {}});
        }
        nets.back().ordinals.push_back(pos);
    }
    return nets;
}

double avg_alter_spread(const SetSequence& seq, NodeId ego) {
    require_pairs(seq, "average alter spread");
    double sum = 0.0;
    std::size_t defined = 0;
    for (const auto& net : alter_networks(seq, ego)) {
        if (auto s = alter_spread(net)) {
            sum += *s;
            ++defined;
        }
    }
    if (defined == 0) {
        return static_cast<double>(seq.size());
    }
    return sum / static_cast<double>(defined);
}

std::optional<std::array<double, 3>> thirds_spread(const AlterNetwork& net) {
    const std::size_t n = net.ordinals.size();
    if (n < kLargeAlterNetwork) {
        return std::nullopt;
    }
    const std::size_t third = n / 3;
    const std::size_t bounds[4] = {0, third, 2 * third, n};
    std::array<double, 3> out{};
    for (std::size_t k = 0; k < 3; ++k) {
        AlterNetwork part{net.alter, {net.ordinals.begin() + static_cast<std::ptrdiff_t>(bounds[k]),
                                      net.ordinals.begin() + static_cast<std::ptrdiff_t>(bounds[k + 1])}};
        out[k] = *alter_spread(part);
    }
    return out;
}

std::vector<std::size_t> novelty_profile(const SetSequence& seq) {
    std::vector<std::size_t> out;
    out.reserve(seq.size());
    NodeSet seen;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        std::size_t fresh = seq[i].size() - intersection_size(seq[i], seen);
        out.push_back(fresh);
        NodeSet merged;
        merged.reserve(seen.size() + seq[i].size());
        std::set_union(seen.begin(), seen.end(), seq[i].begin(), seq[i].end(), std::back_inserter(merged));
        seen = std::move(merged);
    }
    return out;
}

std::size_t first_subset_count(const SetSequence& seq) {
    require_pairs(seq, "first subset count");
    std::size_t count = 0;
    for (std::size_t i = 1; i < seq.size(); ++i) {
        count += is_subset(seq[0], seq[i]) ? 1 : 0;
    }
    return count;
}

std::size_t last_superset_count(const SetSequence& seq) {
    require_pairs(seq, "last superset count");
    const auto& last = seq[seq.size() - 1];
    std::size_t count = 0;
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
        count += is_subset(seq[i], last) ? 1 : 0;
    }
    return count;
}

std::size_t user_arrival_time(const SetSequence& seq, NodeId u) {
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (contains(seq[i], u)) {
            return i + 1;
        }
    }
    throw UnknownEgoError("user node " + std::to_string(u) + " does not occur in the ordering");
}

std::vector<double> FeatureVector::values() const {
    std::vector<double> v{static_cast<double>(length), intersection_density, avg_alter_spread,
                          static_cast<double>(first_subset_count), static_cast<double>(last_superset_count)};
    if (user_arrival) {
        v.push_back(static_cast<double>(*user_arrival));
    }
    return v;
}

std::vector<std::string> feature_names(EgoKind kind) {
    std::vector<std::string> names{"length", "intersection_density", "avg_alter_spread", "first_subset_count",
                                   "last_superset_count"};
    if (kind != EgoKind::star) {
        names.emplace_back("user_arrival");
    }
    return names;
}

std::size_t feature_count(EgoKind kind) {
    return kind == EgoKind::star ? 5 : 6;
}

FeatureVector featurize(const SetSequence& seq, EgoKind kind, NodeId ego) {
    require_pairs(seq, "featurize");
    FeatureVector f;
    f.length = seq.size();
    f.intersection_density = intersection_density(seq);
    f.avg_alter_spread = avg_alter_spread(seq, ego);
    f.first_subset_count = first_subset_count(seq);
    f.last_superset_count = last_superset_count(seq);
    if (kind != EgoKind::star) {
        f.user_arrival = user_arrival_time(seq, ego);
    }
    return f;
}

std::string_view to_string(Measure m) {
    switch (m) {
        case Measure::intersection: return "intersection";
        case Measure::density: return "density";
        case Measure::spread: return "spread";
        case Measure::arrival: return "arrival";
        case Measure::novelty: return "novelty";
        case Measure::simplex_size: return "simplex_size";
    }
    return "intersection";
}

std::string_view to_string(CurveVariant v) {
    switch (v) {
        case CurveVariant::ordered: return "ordered";
        case CurveVariant::shuffled: return "shuffled";
        case CurveVariant::first_fifth: return "first20";
    }
    return "ordered";
}

Measure parse_measure(std::string_view text) {
    for (auto m : {Measure::intersection, Measure::density, Measure::spread, Measure::arrival, Measure::novelty,
                   Measure::simplex_size}) {
        if (to_string(m) == text) {
            return m;
        }
    }
    throw ContractError("unknown measure '" + std::string(text) + "'");
}

CurveVariant parse_curve_variant(std::string_view text) {
    for (auto v : {CurveVariant::ordered, CurveVariant::shuffled, CurveVariant::first_fifth}) {
        if (to_string(v) == text) {
            return v;
        }
    }
    throw ContractError("unknown curve variant '" + std::string(text) + "'");
}

std::size_t first_fifth_window(std::size_t m) {
    return (m + 4) / 5;
}

namespace {

struct Accumulator {
    double sum = 0.0;
    std::size_t count = 0;
};

using CurveMap = std::map<std::pair<CurveVariant, std::size_t>, Accumulator>;

void add(CurveMap& acc, CurveVariant v, std::size_t x, double y) {
    auto& a = acc[{v, x}];
    a.sum += y;
    a.count += 1;
}

// Records one (ego, variant) sample. `length` keys the per-length measures
// and is the full ego length even for the first-fifth window.
void accumulate(CurveMap& acc, Measure measure, CurveVariant v, const SetSequence& seq, std::size_t length,
                NodeId ego) {
    switch (measure) {
        case Measure::intersection:
            if (seq.size() >= 2) add(acc, v, length, avg_intersection_size(seq));
            break;
        case Measure::density:
            if (seq.size() >= 2) add(acc, v, length, intersection_density(seq));
            break;
        case Measure::spread:
            if (seq.size() >= 2) add(acc, v, length, avg_alter_spread(seq, ego));
            break;
        case Measure::arrival:
            for (std::size_t i = 0; i < seq.size(); ++i) {
                if (contains(seq[i], ego)) {
                    add(acc, v, length, static_cast<double>(i + 1));
                    break;
                }
            }
            break;
        case Measure::novelty: {
            auto profile = novelty_profile(seq);
            // Position 1 is omitted: its novelty is just the first simplex's size.
            for (std::size_t i = 1; i < profile.size(); ++i) {
                add(acc, v, i + 1, static_cast<double>(profile[i]));
            }
            break;
        }
        case Measure::simplex_size:
            for (std::size_t i = 0; i < seq.size(); ++i) {
                add(acc, v, i + 1, static_cast<double>(seq[i].size()));
            }
            break;
    }
}

}  // namespace

StatCurve aggregate_curves(std::span<const EgoNetwork> egos, Measure measure,
                           std::span<const CurveVariant> variants, std::uint64_t seed) {
    CurveMap acc;
    for (std::size_t e = 0; e < egos.size(); ++e) {
        const auto& ego = egos[e];
        const std::size_t m = ego.length();
        for (CurveVariant v : variants) {
            if (v == CurveVariant::ordered) {
                accumulate(acc, measure, v, SetSequence(ego.simplices), m, ego.ego);
            } else if (v == CurveVariant::first_fifth) {
                std::span<const Simplex> head(ego.simplices.data(), first_fifth_window(m));
                accumulate(acc, measure, v, SetSequence(head), m, ego.ego);
            } else if (m >= 2) {
                Rng rng(derive_seed(seed, e));
                auto order = random_nonidentity_permutation(m, rng);
                accumulate(acc, measure, v, SetSequence(ego.simplices, order), m, ego.ego);
            }
        }
    }
    StatCurve curve;
    curve.reserve(acc.size());
    for (const auto& [key, a] : acc) {
        curve.push_back({key.second, key.first, a.sum / static_cast<double>(a.count), a.count});
    }
    return curve;
}

std::vector<DegreeArrivalRow> degree_arrival(std::span<const EgoNetwork> egos, const SimplexDataset& dataset) {
    std::map<std::size_t, Accumulator> buckets;
    for (const auto& ego : egos) {
        if (ego.length() < 2) {
            continue;
        }
        const double span = static_cast<double>(ego.length() - 1);
        for (const auto& net : alter_networks(SetSequence(ego.simplices), ego.ego)) {
            auto it = dataset.degree_index.find(net.alter);
            std::size_t degree = it == dataset.degree_index.end() ? 1 : std::max<std::size_t>(it->second, 1);
            auto bucket = static_cast<std::size_t>(std::floor(std::log2(static_cast<double>(degree))));
            auto& a = buckets[bucket];
            a.sum += static_cast<double>(net.ordinals.front() - 1) / span;
            a.count += 1;
        }
    }
    std::vector<DegreeArrivalRow> rows;
    for (const auto& [b, a] : buckets) {
        rows.push_back({b, a.sum / static_cast<double>(a.count), a.count});
    }
    return rows;
}

void write_curve_csv(std::ostream& out, const StatCurve& curve) {
    out << "length,variant,mean,count\n";
    out.precision(17);
    for (const auto& p : curve) {
        out << p.x << ',' << to_string(p.variant) << ',' << p.mean << ',' << p.count << '\n';
    }
}

void write_curve_json(std::ostream& out, const StatCurve& curve, Measure measure) {
    nlohmann::json j;
    j["measure"] = std::string(to_string(measure));
    j["points"] = nlohmann::json::array();
    for (const auto& p : curve) {
        j["points"].push_back(
            {{"length", p.x}, {"variant", std::string(to_string(p.variant))}, {"mean", p.mean}, {"count", p.count}});
    }
    out << j.dump(2) << '\n';
}

}  // namespace hyperego
