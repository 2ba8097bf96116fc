#include "hyperego/egonet.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "hyperego/error.hpp"

namespace hyperego {

std::string_view to_string(EgoKind kind) {
    switch (kind) {
        case EgoKind::star: return "star";
        case EgoKind::radial: return "radial";
        case EgoKind::contracted: return "contracted";
    }
    return "star";
}

EgoKind parse_ego_kind(std::string_view text) {
    if (text == "star") return EgoKind::star;
    if (text == "radial") return EgoKind::radial;
    if (text == "contracted") return EgoKind::contracted;
    throw ContractError("unknown ego kind '" + std::string(text) + "'");
}

DatasetStyle parse_dataset_style(std::string_view text) {
    if (text == "coauth") return DatasetStyle::coauth;
    if (text == "email") return DatasetStyle::email;
    if (text == "threads") return DatasetStyle::threads;
    throw ContractError("unknown dataset style '" + std::string(text) + "'");
}

EligibilityConfig default_eligibility(DatasetStyle style) {
    switch (style) {
        case DatasetStyle::coauth: return {20, 10, true};
        case DatasetStyle::email: return {10, 0, true};
        case DatasetStyle::threads: return {10, 10, true};
    }
    return {};
}

EgoExtractor::EgoExtractor(const SimplexDataset& dataset) : dataset_(&dataset) {
    for (std::size_t i = 0; i < dataset.simplices.size(); ++i) {
        const auto& s = dataset.simplices[i];
        if (s.trivial()) {
            continue;
        }
        for (NodeId v : s.nodes) {
            incidence_[v].push_back(i);
        }
    }
}

const std::vector<std::size_t>& EgoExtractor::incident(NodeId u) const {
    auto it = incidence_.find(u);
    if (it == incidence_.end()) {
        throw UnknownEgoError("node " + std::to_string(u) + " is in no non-trivial simplex");
    }
    return it->second;
}

std::vector<NodeId> EgoExtractor::nodes() const {
    std::vector<NodeId> out;
    out.reserve(incidence_.size());
    for (const auto& [v, _] : incidence_) {
        out.push_back(v);
    }
    return out;
}

std::size_t EgoExtractor::star_length(NodeId u) const {
    auto it = incidence_.find(u);
    return it == incidence_.end() ? 0 : it->second.size();
}

NodeSet EgoExtractor::alters(NodeId u) const {
    NodeSet out;
    for (std::size_t idx : incident(u)) {
        for (NodeId v : dataset_->simplices[idx].nodes) {
            if (v != u) {
                out.push_back(v);
            }
        }
    }
    canonicalize(out);
    return out;
}

EgoNetwork EgoExtractor::extract(NodeId u, EgoKind kind) const {
    EgoNetwork ego;
    ego.ego = u;
    ego.kind = kind;
    ego.alters = alters(u);

    const auto& all = dataset_->simplices;
    std::vector<Simplex> picked;
    if (kind == EgoKind::star) {
        for (std::size_t idx : incident(u)) {
            picked.push_back(all[idx]);
        }
    } else {
        NodeSet closure = ego.alters;
        closure.push_back(u);
        canonicalize(closure);

        // Any simplex meeting the closure in two or more nodes is incident to one of them.
        std::vector<std::size_t> candidates;
        for (NodeId v : closure) {
            const auto& inc = incident(v);
            candidates.insert(candidates.end(), inc.begin(), inc.end());
        }
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

        for (std::size_t idx : candidates) {
            const Simplex& s = all[idx];
            if (kind == EgoKind::radial) {
                if (is_subset(s.nodes, closure)) {
                    picked.push_back(s);
                }
            } else {
                NodeSet kept = intersect(s.nodes, closure);
                if (kept.size() >= 2) {
                    Simplex c = s;
                    c.nodes = std::move(kept);
                    picked.push_back(std::move(c));
                }
            }
        }
    }
    for (std::size_t i = 0; i < picked.size(); ++i) {
        picked[i].ordinal_time = static_cast<std::int64_t>(i + 1);
    }
    ego.simplices = std::move(picked);
    return ego;
}

NodeSet alters(const SimplexDataset& dataset, NodeId u) {
    return EgoExtractor(dataset).alters(u);
}

EgoNetwork extract_ego(const SimplexDataset& dataset, NodeId u, EgoKind kind) {
    return EgoExtractor(dataset).extract(u, kind);
}

AlterNetwork alter_network(const EgoNetwork& ego, NodeId a) {
    if (!contains(ego.alters, a)) {
        throw NotAnAlterError("node " + std::to_string(a) + " is not an alter of " + std::to_string(ego.ego));
    }
    AlterNetwork net;
    net.alter = a;
    for (const auto& s : ego.simplices) {
        if (contains(s.nodes, a)) {
            net.ordinals.push_back(s.ordinal_time);
        }
    }
    return net;
}

std::size_t modal_multiplicity(const EgoNetwork& ego) {
    std::map<NodeSet, std::size_t> counts;
    std::size_t best = 0;
    for (const auto& s : ego.simplices) {
        best = std::max(best, ++counts[s.nodes]);
    }
    return best;
}

Eligibility is_eligible(const EgoNetwork& ego, const EligibilityConfig& cfg) {
    if (ego.length() < cfg.min_length) {
        return {false, "length"};
    }
    if (ego.alters.size() < cfg.min_alters) {
        return {false, "alters"};
    }
    // "Majority" means strictly more than half of the simplices.
    if (cfg.majority_identical_filter && 2 * modal_multiplicity(ego) > ego.length()) {
        return {false, "majority-identical"};
    }
    return {true, {}};
}

void write_ego(std::ostream& out, const EgoNetwork& ego) {
    out << ego.ego << ' ' << to_string(ego.kind) << ' ' << ego.length() << '\n';
    for (const auto& s : ego.simplices) {
        out << s.ordinal_time << ' ' << s.real_time;
        for (NodeId v : s.nodes) {
            out << ' ' << v;
        }
        out << '\n';
    }
}

EgoNetwork read_ego(std::istream& in) {
    EgoNetwork ego;
    std::string header;
    if (!std::getline(in, header)) {
        throw ParseError("<ego>", 1, "missing header");
    }
    std::istringstream hs(header);
    std::string kind;
    std::size_t m = 0;
    if (!(hs >> ego.ego >> kind >> m)) {
        throw ParseError("<ego>", 1, "header must be 'ego kind m'");
    }
    ego.kind = parse_ego_kind(kind);
    for (std::size_t i = 0; i < m; ++i) {
        std::string line;
        if (!std::getline(in, line)) {
            throw StructuralError("ego header announces " + std::to_string(m) + " simplices but only " +
                                  std::to_string(i) + " follow");
        }
        std::istringstream ls(line);
        Simplex s;
        if (!(ls >> s.ordinal_time >> s.real_time)) {
            throw ParseError("<ego>", i + 2, "expected 'ordinal real_time nodes...'");
        }
        NodeId v = 0;
        while (ls >> v) {
            s.nodes.push_back(v);
            if (v != ego.ego) {
                ego.alters.push_back(v);
            }
        }
        canonicalize(s.nodes);
        s.source_index = i;
        ego.simplices.push_back(std::move(s));
    }
    canonicalize(ego.alters);
    return ego;
}

}  // namespace hyperego
