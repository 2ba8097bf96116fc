#include "hyperego/isect_search.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <set>

#include "hyperego/error.hpp"
#include "hyperego/features.hpp"
#include "hyperego/parallel.hpp"
#include "hyperego/random.hpp"

namespace hyperego {

std::string Rational::str() const {
    return std::to_string(num) + "/" + std::to_string(den);
}

Instance make_instance(std::vector<NodeSet> simplices) {
    Instance inst;
    std::map<NodeId, std::size_t> occurrences;
    for (auto& s : simplices) {
        canonicalize(s);
        inst.c = std::max(inst.c, s.size());
        for (NodeId v : s) ++occurrences[v];
    }
    for (const auto& [_, k] : occurrences) inst.d = std::max(inst.d, k);
    inst.simplices = std::move(simplices);
    return inst;
}

Instance preprocess(std::vector<NodeSet> raw) {
    for (auto& s : raw) canonicalize(s);
    bool changed = true;
    while (changed) {
        changed = false;
        std::map<NodeId, std::size_t> occurrences;
        for (const auto& s : raw) {
            for (NodeId v : s) ++occurrences[v];
        }
        for (auto& s : raw) {
            auto keep_end = std::remove_if(s.begin(), s.end(), [&](NodeId v) { return occurrences[v] <= 1; });
            if (keep_end != s.end()) {
                s.erase(keep_end, s.end());
                changed = true;
            }
        }
        auto before = raw.size();
        raw.erase(std::remove_if(raw.begin(), raw.end(), [](const NodeSet& s) { return s.empty(); }), raw.end());
        changed = changed || raw.size() != before;
    }
    return make_instance(std::move(raw));
}

namespace {

std::size_t total_intersection(const Instance& instance, std::span<const std::size_t> order) {
    return adjacent_intersection_total(SetSequence(instance.simplices, order));
}

Rational as_average(std::size_t total, std::size_t m) {
    return {static_cast<std::int64_t>(total), static_cast<std::int64_t>(m - 1)};
}

// Distinct simplices get class ids; the instance becomes a sequence of ids
// with a pairwise intersection table.
struct ClassView {
    std::vector<std::size_t> sequence;
    std::vector<std::vector<std::size_t>> inter;

    explicit ClassView(const Instance& instance) {
        std::map<NodeSet, std::size_t> ids;
        for (const auto& s : instance.simplices) ids.emplace(s, 0);
        std::vector<const NodeSet*> sets;
        for (auto& [s, id] : ids) {
            id = sets.size();
            sets.push_back(&s);
        }
        for (const auto& s : instance.simplices) sequence.push_back(ids.at(s));
        std::sort(sequence.begin(), sequence.end());
        inter.assign(sets.size(), std::vector<std::size_t>(sets.size(), 0));
        for (std::size_t a = 0; a < sets.size(); ++a) {
            for (std::size_t b = 0; b < sets.size(); ++b) inter[a][b] = intersection_size(*sets[a], *sets[b]);
        }
    }

    std::size_t total(const std::vector<std::size_t>& seq) const {
        std::size_t t = 0;
        for (std::size_t i = 1; i < seq.size(); ++i) t += inter[seq[i - 1]][seq[i]];
        return t;
    }

    bool locally_optimal(std::vector<std::size_t>& seq, std::size_t current) const {
        for (std::size_t a = 0; a < seq.size(); ++a) {
            for (std::size_t b = a + 1; b < seq.size(); ++b) {
                if (seq[a] == seq[b]) continue;
                std::swap(seq[a], seq[b]);
                const std::size_t t = total(seq);
                std::swap(seq[a], seq[b]);
                if (t > current) return false;
            }
        }
        return true;
    }
};

void require_cap(const Instance& instance, std::size_t cap) {
    if (instance.size() > cap) {
        throw CapExceededError("instance has " + std::to_string(instance.size()) +
                               " simplices; exhaustive enumeration is capped at " + std::to_string(cap));
    }
}

}  // namespace

Rational avg_isect_objective(const Instance& instance, std::span<const std::size_t> order) {
    if (order.size() < 2) {
        throw UndefinedMeasureError("objective needs at least 2 simplices");
    }
    return as_average(total_intersection(instance, order), order.size());
}

bool is_local_optimum(const Instance& instance, std::span<const std::size_t> order) {
    std::vector<std::size_t> perm(order.begin(), order.end());
    const std::size_t current = total_intersection(instance, perm);
    for (std::size_t a = 0; a < perm.size(); ++a) {
        for (std::size_t b = a + 1; b < perm.size(); ++b) {
            std::swap(perm[a], perm[b]);
            const std::size_t t = total_intersection(instance, perm);
            std::swap(perm[a], perm[b]);
            if (t > current) return false;
        }
    }
    return true;
}

std::vector<std::size_t> swap_local_search(const Instance& instance, std::vector<std::size_t> start,
                                           std::uint64_t seed) {
    Rng rng(seed);
    std::size_t current = total_intersection(instance, start);
    std::vector<std::pair<std::size_t, std::size_t>> improving;
    std::vector<std::size_t> totals;
    while (true) {
        improving.clear();
        totals.clear();
        for (std::size_t a = 0; a < start.size(); ++a) {
            for (std::size_t b = a + 1; b < start.size(); ++b) {
                std::swap(start[a], start[b]);
                const std::size_t t = total_intersection(instance, start);
                std::swap(start[a], start[b]);
                if (t > current) {
                    improving.emplace_back(a, b);
                    totals.push_back(t);
                }
            }
        }
        if (improving.empty()) {
            return start;
        }
        const std::size_t k = uniform_index(improving.size(), rng);
        std::swap(start[improving[k].first], start[improving[k].second]);
        current = totals[k];
    }
}

Rational brute_force_optimum(const Instance& instance, std::size_t cap) {
    require_cap(instance, cap);
    if (instance.size() < 2) {
        throw UndefinedMeasureError("objective needs at least 2 simplices");
    }
    ClassView view(instance);
    auto seq = view.sequence;
    std::size_t best = 0;
    do {
        // A sequence and its reverse have the same objective.
        if (std::lexicographical_compare(seq.rbegin(), seq.rend(), seq.begin(), seq.end())) continue;
        best = std::max(best, view.total(seq));
    } while (std::next_permutation(seq.begin(), seq.end()));
    return as_average(best, instance.size());
}

TheoremCheck theorem_ratio_check(const Instance& instance, std::size_t cap) {
    require_cap(instance, cap);
    TheoremCheck check;
    check.m = instance.size();
    check.c = instance.c;
    check.d = instance.d;
    check.bound = {1, static_cast<std::int64_t>(std::max<std::size_t>(2 * instance.c * instance.c * instance.d, 1))};
    if (instance.size() < 2) {
        return check;
    }
    ClassView view(instance);
    auto seq = view.sequence;
    std::size_t best = 0;
    std::size_t worst_local = std::numeric_limits<std::size_t>::max();
    do {
        const std::size_t t = view.total(seq);
        best = std::max(best, t);
        if (view.locally_optimal(seq, t)) {
            ++check.local_optima;
            worst_local = std::min(worst_local, t);
        }
    } while (std::next_permutation(seq.begin(), seq.end()));

    check.optimum = as_average(best, check.m);
    check.worst_local = as_average(worst_local, check.m);
    const auto factor = static_cast<std::int64_t>(2 * check.c * check.c * check.d);
    check.holds = check.worst_local.num * factor * check.optimum.den >= check.optimum.num * check.worst_local.den;
    if (best > 0) {
        const auto cd2 = static_cast<std::int64_t>(2 * check.c * check.d);
        check.intermediate_holds = check.worst_local.num * cd2 >= check.worst_local.den;
    }
    return check;
}

namespace {

std::vector<NodeSet> canonical_under_relabeling(const std::vector<NodeSet>& sets, std::size_t universe) {
    std::vector<NodeId> labels(universe);
    std::iota(labels.begin(), labels.end(), NodeId{0});
    std::vector<NodeSet> best;
    bool first = true;
    do {
        std::vector<NodeSet> mapped;
        mapped.reserve(sets.size());
        for (const auto& s : sets) {
            NodeSet m;
            for (NodeId v : s) m.push_back(labels[v]);
            canonicalize(m);
            mapped.push_back(std::move(m));
        }
        std::sort(mapped.begin(), mapped.end());
        if (first || mapped < best) {
            best = std::move(mapped);
            first = false;
        }
    } while (std::next_permutation(labels.begin(), labels.end()));
    return best;
}

void enumerate_multisets(const std::vector<NodeSet>& pool, std::size_t max_size, std::size_t from,
                         std::vector<NodeSet>& current, const std::function<void(const std::vector<NodeSet>&)>& emit) {
    if (!current.empty()) emit(current);
    if (current.size() == max_size) return;
    for (std::size_t i = from; i < pool.size(); ++i) {
        current.push_back(pool[i]);
        enumerate_multisets(pool, max_size, i, current, emit);
        current.pop_back();
    }
}

}  // namespace

std::vector<Instance> enumerate_small_instances(std::size_t max_simplices, std::size_t universe) {
    std::vector<NodeSet> pool;
    for (std::size_t mask = 1; mask < (std::size_t{1} << universe); ++mask) {
        NodeSet s;
        for (std::size_t v = 0; v < universe; ++v) {
            if (mask & (std::size_t{1} << v)) s.push_back(v);
        }
        pool.push_back(std::move(s));
    }
    std::set<std::vector<NodeSet>> seen;
    std::vector<NodeSet> current;
    enumerate_multisets(pool, max_simplices, 0, current, [&](const std::vector<NodeSet>& raw) {
        Instance pre = preprocess(raw);
        if (pre.size() < 2) return;
        seen.insert(canonical_under_relabeling(pre.simplices, universe));
    });
    std::vector<Instance> out;
    out.reserve(seen.size());
    for (const auto& sets : seen) out.push_back(make_instance(sets));
    return out;
}

SweepResult theorem_sweep(std::span<const Instance> instances, std::size_t jobs) {
    SweepResult sweep;
    sweep.rows.resize(instances.size());
    parallel_for(instances.size(), jobs, [&](std::size_t i) {
        sweep.rows[i] = {i, theorem_ratio_check(instances[i])};
    });
    for (const auto& row : sweep.rows) {
        sweep.violations += row.check.holds ? 0 : 1;
        sweep.intermediate_violations += row.check.intermediate_holds ? 0 : 1;
    }
    return sweep;
}

void write_sweep_csv(std::ostream& out, const SweepResult& sweep) {
    out << "instance_id,m,c,d,bound,worst_local,optimum,holds\n";
    for (const auto& row : sweep.rows) {
        const auto& c = row.check;
        out << row.instance_id << ',' << c.m << ',' << c.c << ',' << c.d << ',' << c.bound.str() << ','
            << c.worst_local.str() << ',' << c.optimum.str() << ',' << (c.holds ? "true" : "false") << '\n';
    }
}

}  // namespace hyperego
