#include "hyperego/synthetic.hpp"

#include <algorithm>
#include <random>

#include "hyperego/random.hpp"

namespace hyperego::synthetic {

SimplexDataset random_dataset(std::uint64_t seed, std::size_t max_nodes, std::size_t max_simplices) {
    Rng rng(seed);
    const std::size_t nodes = 2 + uniform_index(max_nodes - 1, rng);
    const std::size_t count = 1 + uniform_index(max_simplices, rng);
    std::vector<Simplex> simplices;
    simplices.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        Simplex s;
        const std::size_t size = 1 + uniform_index(5, rng);
        for (std::size_t k = 0; k < size; ++k) s.nodes.push_back(uniform_index(nodes, rng));
        s.real_time = static_cast<Timestamp>(uniform_index(count / 2 + 1, rng));
        s.source_index = i;
        simplices.push_back(std::move(s));
    }
    return make_dataset(std::move(simplices), "random-" + std::to_string(seed));
}

LocalityDataset locality_dataset(const LocalityConfig& cfg, std::uint64_t seed) {
    LocalityDataset out;
    std::vector<Simplex> simplices;
    std::bernoulli_distribution stays(cfg.run_continue);
    std::bernoulli_distribution joins(cfg.join_rate);
    std::bernoulli_distribution novel(cfg.novel_rate);
    std::bernoulli_distribution alter_only(cfg.alter_only_rate);

    // Node ids per ego: base + 0 is the ego, alters count up from base + 1.
    const NodeId block = 4 * (cfg.max_length + 1) * (cfg.max_group + 2);
    for (std::size_t e = 0; e < cfg.egos; ++e) {
        Rng rng(derive_seed(seed, e));
        const NodeId base = 1 + e * block;
        const NodeId ego = base;
        NodeId next_alter = base + 1;
        out.egos.push_back(ego);

        // The opening simplex pairs the ego with a mentor who shows up less
        // and less as time goes on.
        const NodeId mentor = next_alter++;
        const std::size_t length = cfg.min_length + uniform_index(cfg.max_length - cfg.min_length + 1, rng);
        std::vector<NodeId> active;
        Timestamp t = 0;
        for (std::size_t step = 0; step < length; ++step) {
            Simplex s;
            s.nodes = {ego, mentor};
            if (step > 0) {
                // Each alter's run ends after a geometric number of simplices.
                std::erase_if(active, [&](NodeId) { return !stays(rng); });
                if (active.empty() || (active.size() < cfg.max_group && joins(rng))) active.push_back(next_alter++);
                const double fade = 1.0 - static_cast<double>(step) / static_cast<double>(length);
                if (!std::bernoulli_distribution(cfg.mentor_rate * fade)(rng)) s.nodes.pop_back();
                s.nodes.insert(s.nodes.end(), active.begin(), active.end());
                if (novel(rng)) s.nodes.push_back(next_alter++);
            }
            s.real_time = ++t;
            simplices.push_back(std::move(s));

            if (active.size() >= 2 && alter_only(rng)) {
                Simplex extra;
                extra.nodes = active;
                extra.real_time = ++t;
                simplices.push_back(std::move(extra));
            }
        }
    }
    for (std::size_t i = 0; i < simplices.size(); ++i) simplices[i].source_index = i;
    out.dataset = make_dataset(std::move(simplices), "locality-" + std::to_string(seed));
    return out;
}

std::vector<Simplex> concatenated_runs(NodeId ego, std::size_t alters, std::size_t run_length) {
    std::vector<Simplex> out;
    for (std::size_t k = 0; k < alters; ++k) {
        for (std::size_t r = 0; r < run_length; ++r) {
            Simplex s;
            s.nodes = {ego, ego + 1 + k};
            canonicalize(s.nodes);
            s.real_time = static_cast<Timestamp>(out.size() + 1);
            s.ordinal_time = s.real_time;
            s.source_index = out.size();
            out.push_back(std::move(s));
        }
    }
    return out;
}

}  // namespace hyperego::synthetic
