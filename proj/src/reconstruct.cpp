#include "hyperego/reconstruct.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <numeric>
#include <ostream>

#include "json.hpp"

#include "hyperego/error.hpp"
#include "hyperego/parallel.hpp"
#include "hyperego/random.hpp"

namespace hyperego {

std::string_view to_string(TiePolicy p) {
    return p == TiePolicy::exclude ? "exclude" : "ordinal";
}

TiePolicy parse_tie_policy(std::string_view text) {
    if (text == "exclude") return TiePolicy::exclude;
    if (text == "ordinal") return TiePolicy::ordinal;
    throw ContractError("unknown tie policy '" + std::string(text) + "'");
}

std::optional<double> pairwise_order_accuracy(std::span<const Simplex> truth, std::span<const std::size_t> predicted,
                                              TiePolicy policy) {
    const std::size_t m = truth.size();
    if (predicted.size() != m) {
        throw ContractError("predicted ordering has " + std::to_string(predicted.size()) + " simplices, truth has " +
                            std::to_string(m));
    }
    // position_of[t] = predicted position of the simplex at true index t.
    std::vector<std::size_t> position_of(m, m);
    for (std::size_t p = 0; p < m; ++p) {
        if (predicted[p] >= m || position_of[predicted[p]] != m) {
            throw ContractError("predicted ordering is not a permutation of the true simplices");
        }
        position_of[predicted[p]] = p;
    }
    std::size_t counted = 0;
    std::size_t correct = 0;
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = a + 1; b < m; ++b) {
            if (policy == TiePolicy::exclude && truth[a].real_time == truth[b].real_time) {
                continue;
            }
            ++counted;
            correct += position_of[a] < position_of[b] ? 1 : 0;
        }
    }
    if (counted == 0) {
        return std::nullopt;
    }
    return static_cast<double>(correct) / static_cast<double>(counted);
}

std::size_t SearchTrace::total_steps() const {
    std::size_t n = 0;
    for (const auto& r : restarts) n += r.steps;
    return n;
}

SearchResult hill_climb(std::size_t m, const OrderingScorer& scorer, const SearchConfig& cfg) {
    if (m < 2) {
        throw ContractError("hill climbing needs at least 2 simplices");
    }
    if (cfg.restarts < 1) {
        throw ContractError("hill climbing needs at least one restart");
    }
    const std::size_t pairs = m * (m - 1) / 2;
    const std::size_t cap = cfg.max_steps_per_restart.value_or(10 * pairs);

    struct Swap {
        std::size_t a, b;
        double score;
    };
    std::vector<Swap> improving;
    improving.reserve(pairs);

    SearchResult result;
    for (std::size_t i = 0; i < cfg.restarts; ++i) {
        Rng rng(derive_seed(cfg.seed, i));
        auto perm = random_permutation(m, rng);
        double current = scorer(perm);
        RestartTrace trace;
        trace.scores.push_back(current);

        while (true) {
            improving.clear();
            for (std::size_t a = 0; a < m; ++a) {
                for (std::size_t b = a + 1; b < m; ++b) {
                    std::swap(perm[a], perm[b]);
                    double s = scorer(perm);
                    std::swap(perm[a], perm[b]);
                    if (s > current) {
                        improving.push_back({a, b, s});
                    }
                }
            }
            if (improving.empty()) {
                break;
            }
            if (trace.steps >= cap) {
                trace.truncated = true;
                break;
            }
            const Swap& pick = improving[uniform_index(improving.size(), rng)];
            std::swap(perm[pick.a], perm[pick.b]);
            current = pick.score;
            ++trace.steps;
            trace.scores.push_back(current);
        }
        trace.final_permutation = perm;
        if (i == 0 || current > *result.best.score) {
            result.best = {perm, current};
            result.trace.best_restart = i;
        }
        result.trace.restarts.push_back(std::move(trace));
    }
    return result;
}

OrderingScorer model_scorer(const EgoNetwork& ego, const OrderingModel& model) {
    if (model.input_size() != feature_count(ego.kind) || model.kind != ego.kind) {
        throw SchemaMismatchError("model was trained on " + std::string(to_string(model.kind)) +
                                  " features; ego-network is " + std::string(to_string(ego.kind)));
    }
    return [&ego, &model](std::span<const std::size_t> perm) {
        SetSequence seq(ego.simplices, perm);
        return predict_proba(model, featurize(seq, ego.kind, ego.ego));
    };
}

SearchResult hill_climb(const EgoNetwork& ego, const OrderingModel& model, const SearchConfig& cfg) {
    return hill_climb(ego.length(), model_scorer(ego, model), cfg);
}

std::vector<std::size_t> baseline_random(std::size_t m, std::uint64_t seed) {
    Rng rng(seed);
    return random_permutation(m, rng);
}

std::vector<std::size_t> baseline_size_sort(std::span<const Simplex> presented) {
    auto order = identity_permutation(presented.size());
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return presented[a].size() < presented[b].size();
    });
    return order;
}

const MethodSummary& ReconstructionReport::method(std::string_view name) const {
    for (const auto& s : summary) {
        if (s.method == name) return s;
    }
    throw ContractError("report has no method '" + std::string(name) + "'");
}

namespace {

constexpr const char* kMethods[] = {"hill_climb", "random", "size_sort"};

std::vector<std::size_t> compose(std::span<const std::size_t> outer, std::span<const std::size_t> inner) {
    std::vector<std::size_t> out(inner.size());
    for (std::size_t p = 0; p < inner.size(); ++p) out[p] = outer[inner[p]];
    return out;
}

}  // namespace

ReconstructionReport evaluate_reconstruction(std::span<const EgoNetwork> egos, const OrderingModel& model,
                                             const SearchConfig& cfg, TiePolicy policy,
                                             const EvaluationOptions& options) {
    if (egos.empty()) {
        throw ContractError("no ego-networks to reconstruct");
    }
    const std::size_t n = egos.size();
    std::vector<std::array<ReconstructionRow, 3>> rows(n);
    std::vector<SearchTrace> traces(n);

    parallel_for(n, options.jobs, [&](std::size_t e) {
        using clock = std::chrono::steady_clock;
        const auto& ego = egos[e];
        const std::uint64_t ego_seed = derive_seed(cfg.seed, e);

        Rng present_rng(derive_seed(ego_seed, 0));
        const auto presentation = random_permutation(ego.length(), present_rng);
        EgoNetwork presented = ego;
        presented.simplices.clear();
        for (std::size_t p = 0; p < presentation.size(); ++p) {
            presented.simplices.push_back(ego.simplices[presentation[p]]);
            presented.simplices.back().ordinal_time = static_cast<std::int64_t>(p + 1);
        }

        auto elapsed = [&](clock::time_point since) {
            return options.record_timing ? std::chrono::duration<double>(clock::now() - since).count() : 0.0;
        };

        auto t0 = clock::now();
        SearchConfig search = cfg;
        search.seed = derive_seed(ego_seed, 1);
        auto found = hill_climb(presented, model, search);
        auto hc = compose(presentation, found.best.permutation);
        rows[e][0] = {ego.ego, ego.kind, kMethods[0], pairwise_order_accuracy(ego.simplices, hc, policy),
                      found.trace.total_steps(), elapsed(t0)};
        traces[e] = std::move(found.trace);

        t0 = clock::now();
        auto rnd = baseline_random(ego.length(), derive_seed(ego_seed, 2));
        rows[e][1] = {ego.ego, ego.kind, kMethods[1], pairwise_order_accuracy(ego.simplices, rnd, policy), 0,
                      elapsed(t0)};

        t0 = clock::now();
        auto sized = compose(presentation, baseline_size_sort(presented.simplices));
        rows[e][2] = {ego.ego, ego.kind, kMethods[2], pairwise_order_accuracy(ego.simplices, sized, policy), 0,
                      elapsed(t0)};
    });

    ReconstructionReport report;
    report.traces = std::move(traces);
    for (auto& r : rows) {
        for (auto& row : r) report.rows.push_back(std::move(row));
    }
    for (const char* name : kMethods) {
        MethodSummary s{name, 0.0, 0.0, 0};
        std::vector<double> values;
        for (const auto& row : report.rows) {
            if (row.method == name && row.accuracy) values.push_back(*row.accuracy);
        }
        s.count = values.size();
        if (!values.empty()) {
            s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
            double var = 0.0;
            for (double v : values) var += (v - s.mean) * (v - s.mean);
            s.stddev = std::sqrt(var / static_cast<double>(values.size()));
        }
        report.summary.push_back(std::move(s));
    }
    return report;
}

double sign_test_p_value(std::size_t wins, std::size_t losses) {
    const std::size_t n = wins + losses;
    if (n == 0) {
        return 1.0;
    }
    const double log_half_n = static_cast<double>(n) * std::log(0.5);
    const double log_n_fact = std::lgamma(static_cast<double>(n) + 1.0);
    double p = 0.0;
    for (std::size_t k = wins; k <= n; ++k) {
        double log_choose = log_n_fact - std::lgamma(static_cast<double>(k) + 1.0) -
                            std::lgamma(static_cast<double>(n - k) + 1.0);
        p += std::exp(log_choose + log_half_n);
    }
    return std::min(p, 1.0);
}

PairedComparison compare_methods(const ReconstructionReport& report, std::string_view better,
                                 std::string_view worse) {
    // Rows come in per-ego groups, so the i-th row of each method is the same ego.
    std::vector<std::optional<double>> a;
    std::vector<std::optional<double>> b;
    for (const auto& row : report.rows) {
        if (row.method == better) a.push_back(row.accuracy);
        if (row.method == worse) b.push_back(row.accuracy);
    }
    PairedComparison cmp;
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
        if (!a[i] || !b[i]) continue;
        if (*a[i] > *b[i]) {
            ++cmp.wins;
        } else if (*a[i] < *b[i]) {
            ++cmp.losses;
        } else {
            ++cmp.ties;
        }
    }
    cmp.p_value = sign_test_p_value(cmp.wins, cmp.losses);
    return cmp;
}

void write_report_csv(std::ostream& out, const ReconstructionReport& report) {
    auto old = out.precision(17);
    out << "ego,kind,method,accuracy,steps,seconds\n";
    for (const auto& row : report.rows) {
        out << row.ego << ',' << to_string(row.kind) << ',' << row.method << ',';
        if (row.accuracy) {
            out << *row.accuracy;
        } else {
            out << "nan";
        }
        out << ',' << row.steps << ',' << row.seconds << '\n';
    }
    out.precision(old);
}

void write_trace_json(std::ostream& out, NodeId ego, const SearchTrace& trace) {
    nlohmann::json j;
    j["ego"] = ego;
    j["best_restart"] = trace.best_restart;
    j["restarts"] = nlohmann::json::array();
    for (const auto& r : trace.restarts) {
        j["restarts"].push_back({{"steps", r.steps},
                                 {"truncated", r.truncated},
                                 {"scores", r.scores},
                                 {"final_permutation", r.final_permutation}});
    }
    out << j.dump(2) << '\n';
}

}  // namespace hyperego
