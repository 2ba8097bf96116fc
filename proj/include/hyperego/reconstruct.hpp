#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hyperego/classifier.hpp"
#include "hyperego/egonet.hpp"

namespace hyperego {

/// A candidate order: position p holds simplex index permutation[p] of
/// the sequence it was built over.
struct Ordering {
    std::vector<std::size_t> permutation;
    std::optional<double> score;
};

enum class TiePolicy {
    /// Pairs with equal true real_time are left out of the metric.
    exclude,
    /// Ties are resolved by ordinal (file order) and counted.
    ordinal,
};

std::string_view to_string(TiePolicy p);
TiePolicy parse_tie_policy(std::string_view text);

/// Fraction of simplex pairs whose relative order in `predicted` matches
/// `truth` (true arrival order). `predicted[p]` indexes into `truth`.
/// nullopt when no pair is comparable (all tied under `exclude`).
/// Throws ContractError unless `predicted` is a bijection onto truth's indices.
std::optional<double> pairwise_order_accuracy(std::span<const Simplex> truth,
                                              std::span<const std::size_t> predicted,
                                              TiePolicy policy = TiePolicy::exclude);

struct SearchConfig {
    std::size_t restarts = 10;
    std::uint64_t seed = 0;
    /// Per-restart cap on accepted swaps; default 10 * C(m, 2).
    std::optional<std::size_t> max_steps_per_restart;
};

struct RestartTrace {
    std::size_t steps = 0;
    /// Score after the initial shuffle and after each accepted swap.
    std::vector<double> scores;
    std::vector<std::size_t> final_permutation;
    bool truncated = false;
};

struct SearchTrace {
    std::vector<RestartTrace> restarts;
    std::size_t best_restart = 0;

    std::size_t total_steps() const;
};

struct SearchResult {
    Ordering best;
    SearchTrace trace;
};

/// Scores a permutation of the m items being ordered; higher = more likely correct.
using OrderingScorer = std::function<double(std::span<const std::size_t>)>;

/// Swap hill climbing with restarts. Each restart starts from a fresh
/// uniform shuffle, repeatedly moves to a uniformly chosen strictly
/// improving single swap (all C(m,2) position pairs), and stops at a local
/// optimum. Returns the best local optimum, ties to the earliest restart.
/// Restart i draws from its own stream derived from (seed, i).
SearchResult hill_climb(std::size_t m, const OrderingScorer& scorer, const SearchConfig& cfg);

/// Scorer that featurizes the permuted ego-network and applies the model.
OrderingScorer model_scorer(const EgoNetwork& ego, const OrderingModel& model);

/// Hill climbing over `ego.simplices` scored by `model`.
SearchResult hill_climb(const EgoNetwork& ego, const OrderingModel& model, const SearchConfig& cfg);

std::vector<std::size_t> baseline_random(std::size_t m, std::uint64_t seed);
/// Stable ascending sort of the presented simplices by size.
std::vector<std::size_t> baseline_size_sort(std::span<const Simplex> presented);

struct ReconstructionRow {
    NodeId ego = 0;
    EgoKind kind = EgoKind::star;
    std::string method;
    std::optional<double> accuracy;
    std::size_t steps = 0;
    double seconds = 0.0;
};

struct MethodSummary {
    std::string method;
    double mean = 0.0;
    double stddev = 0.0;
    std::size_t count = 0;
};

struct ReconstructionReport {
    /// Three rows per ego: hill_climb, random, size_sort.
    std::vector<ReconstructionRow> rows;
    std::vector<SearchTrace> traces;
    std::vector<MethodSummary> summary;

    const MethodSummary& method(std::string_view name) const;
};

struct EvaluationOptions {
    std::size_t jobs = 1;
    /// When false the seconds column is written as 0 so reports are byte-stable.
    bool record_timing = true;
};

/// Presents each ego as a seeded shuffle, then scores hill climbing and both
/// baselines against the true order. Throws ContractError on empty input.
ReconstructionReport evaluate_reconstruction(std::span<const EgoNetwork> egos, const OrderingModel& model,
                                             const SearchConfig& cfg, TiePolicy policy,
                                             const EvaluationOptions& options = {});

/// One-sided sign test: P(X >= wins) for X ~ Binomial(wins + losses, 1/2).
double sign_test_p_value(std::size_t wins, std::size_t losses);

struct PairedComparison {
    std::size_t wins = 0;
    std::size_t losses = 0;
    std::size_t ties = 0;
    double p_value = 1.0;
};

/// Per-ego comparison of two methods' accuracies in a report.
PairedComparison compare_methods(const ReconstructionReport& report, std::string_view better,
                                 std::string_view worse);

void write_report_csv(std::ostream& out, const ReconstructionReport& report);
void write_trace_json(std::ostream& out, NodeId ego, const SearchTrace& trace);

}  // namespace hyperego
