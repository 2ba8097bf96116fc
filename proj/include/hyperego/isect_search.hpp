#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "hyperego/simplex.hpp"

namespace hyperego {

/// Exact non-negative ratio num/den with den > 0. Not reduced.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const;

    friend bool operator==(const Rational& a, const Rational& b) { return a.num * b.den == b.num * a.den; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        return a.num * b.den <=> b.num * a.den;
    }
};

/// Multiset of node sets for the average-intersection ordering problem.
struct Instance {
    std::vector<NodeSet> simplices;
    /// Largest simplex size.
    std::size_t c = 0;
    /// Largest number of simplices any node occurs in.
    std::size_t d = 0;

    std::size_t size() const noexcept { return simplices.size(); }
};

/// Computes c and d for the given simplices without modifying them.
Instance make_instance(std::vector<NodeSet> simplices);

/// Repeatedly deletes nodes occurring in at most one simplex and simplices
/// left empty, until neither rule applies.
Instance preprocess(std::vector<NodeSet> raw);

/// (1/(m-1)) * sum of adjacent intersections, exactly. Throws
/// UndefinedMeasureError for m < 2.
Rational avg_isect_objective(const Instance& instance, std::span<const std::size_t> order);

/// True when no single swap strictly increases the objective.
bool is_local_optimum(const Instance& instance, std::span<const std::size_t> order);

/// Applies uniformly chosen strictly improving swaps until none remain.
std::vector<std::size_t> swap_local_search(const Instance& instance, std::vector<std::size_t> start,
                                           std::uint64_t seed);

inline constexpr std::size_t kBruteForceCap = 8;
inline constexpr std::size_t kTheoremCheckCap = 6;

/// Exact maximum objective over all orderings (duplicate simplices and
/// reversals are enumerated once). Throws CapExceededError when m > cap.
Rational brute_force_optimum(const Instance& instance, std::size_t cap = kBruteForceCap);

struct TheoremCheck {
    std::size_t m = 0;
    std::size_t c = 0;
    std::size_t d = 0;
    /// Number of distinct locally optimal orderings.
    std::size_t local_optima = 0;
    Rational worst_local;
    Rational optimum;
    /// 1 / (2 c^2 d).
    Rational bound;
    /// worst_local >= bound * optimum.
    bool holds = true;
    /// worst_local >= 1 / (2 c d) whenever optimum > 0.
    bool intermediate_holds = true;
};

/// Enumerates every local optimum of the instance and compares the worst
/// one with the global optimum. Instances with m < 2 hold vacuously.
/// Throws CapExceededError when m > cap.
TheoremCheck theorem_ratio_check(const Instance& instance, std::size_t cap = kTheoremCheckCap);

/// Every multiset of 1..max_simplices non-empty subsets of a
/// `universe`-node set, preprocessed, with m >= 2 after preprocessing,
/// deduplicated up to node relabeling.
std::vector<Instance> enumerate_small_instances(std::size_t max_simplices, std::size_t universe);

struct SweepRow {
    std::size_t instance_id = 0;
    TheoremCheck check;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    std::size_t violations = 0;
    std::size_t intermediate_violations = 0;
};

SweepResult theorem_sweep(std::span<const Instance> instances, std::size_t jobs = 1);

void write_sweep_csv(std::ostream& out, const SweepResult& sweep);

}  // namespace hyperego
