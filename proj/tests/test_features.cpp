#include <algorithm>
#include <map>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "hyperego/egonet.hpp"
#include "hyperego/error.hpp"
#include "hyperego/features.hpp"
#include "hyperego/random.hpp"
#include "hyperego/synthetic.hpp"

using namespace hyperego;
using namespace hyperego::testing;

namespace {

// Set-based reference for the adjacent intersection mean.
double oracle_avg_intersection(const std::vector<NodeSet>& seq) {
    double total = 0;
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
        std::set<NodeId> a(seq[i].begin(), seq[i].end());
        for (NodeId v : seq[i + 1]) total += a.count(v);
    }
    return total / static_cast<double>(seq.size() - 1);
}

EgoNetwork star_of_one() {
    return extract_ego(eight_papers_dataset(), 1, EgoKind::star);
}

}  // namespace

TEST_SUITE_BEGIN("features");

TEST_CASE("average intersection size") {
    auto star = star_of_one();
    CHECK(avg_intersection_size(star.simplices) == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(avg_intersection_size(from_sets({{1, 2}, {3, 4}})) == 0.0);
    CHECK(avg_intersection_size(from_sets({{1, 2, 3}, {1, 2, 3}})) == 3.0);
    CHECK_THROWS_AS(avg_intersection_size(from_sets({{1, 2}})), UndefinedMeasureError);
}

TEST_CASE("intersection density") {
    auto star = star_of_one();
    CHECK(intersection_density(star.simplices) == doctest::Approx(1.5 / 2.8).epsilon(1e-12));
    CHECK(std::abs(intersection_density(star.simplices) - 0.5357142857142857) < 1e-9);
    CHECK(intersection_density(from_sets({{1, 2, 3}, {1, 2, 3}, {1, 2, 3}})) == 1.0);
    CHECK(intersection_density(from_sets({{1, 2}, {3, 4}, {5, 6}})) == 0.0);
}

TEST_CASE("alter spread") {
    CHECK(*alter_spread({2, {1, 2, 3}}) == 1.0);
    CHECK_FALSE(alter_spread({5, {5}}).has_value());
    CHECK(*alter_spread({9, {1, 10}}) == 9.0);
}

TEST_CASE("average alter spread") {
    // Alter 2 at [1,2,3] -> 1, alter 3 at [1,3] -> 2; alters 4,5,7,8 occur once.
    auto star = star_of_one();
    auto nets = alter_networks(SetSequence(star.simplices), 1);
    REQUIRE(nets.size() == 6);
    CHECK(avg_alter_spread(star.simplices, 1) == doctest::Approx(1.5));

    CHECK(avg_alter_spread(from_sets({{1, 2}, {3, 4}}), 1) == 2.0);
    CHECK(avg_alter_spread(from_sets({{1, 2}, {1, 2}, {1, 2}}), 1) == 1.0);
}

TEST_CASE("thirds spread") {
    auto t = thirds_spread({1, {1, 2, 3, 4, 5, 6, 7, 8, 9, 30}});
    REQUIRE(t.has_value());
    CHECK((*t)[0] == 1.0);
    CHECK((*t)[1] == 1.0);
    CHECK((*t)[2] == doctest::Approx(23.0 / 3.0));

    auto uniform = thirds_spread({1, {2, 4, 6, 8, 10, 12, 14, 16, 18, 20, 22, 24}});
    REQUIRE(uniform.has_value());
    CHECK(*uniform == std::array<double, 3>{2.0, 2.0, 2.0});

    auto dense = thirds_spread({1, {1, 9, 10, 11, 12, 13, 14, 15, 16, 40}});
    REQUIRE(dense.has_value());
    CHECK((*dense)[1] < (*dense)[0]);
    CHECK((*dense)[1] < (*dense)[2]);

    CHECK_FALSE(thirds_spread({1, {1, 2, 3, 4, 5, 6, 7, 8, 9}}).has_value());
}

TEST_CASE("novelty profile") {
    auto star = star_of_one();
    CHECK(novelty_profile(star.simplices) == std::vector<std::size_t>{3, 0, 0, 2, 2});
    // {1,5,7} is the fifth simplex of the star: 5 and 7 are new there.
    CHECK(novelty_profile(star.simplices)[4] == 2);
    // In the full stream node 5 already appeared in {2,3,5,6}.
    auto ds = eight_papers_dataset();
    CHECK(novelty_profile(ds.simplices).back() == 1);
    CHECK(novelty_profile(from_sets({{1, 2, 3}, {1, 2, 3}, {1, 2, 3}})) == std::vector<std::size_t>{3, 0, 0});
}

TEST_CASE("subset and superset counts") {
    auto star = star_of_one();
    CHECK(first_subset_count(star.simplices) == 1);
    CHECK(last_superset_count(star.simplices) == 0);
    auto same = from_sets({{1, 2}, {1, 2}, {1, 2}, {1, 2}});
    CHECK(first_subset_count(same) == 3);
    CHECK(last_superset_count(same) == 3);
    auto chain = from_sets({{1, 2}, {1, 2, 3}, {1, 2, 3, 4}});
    CHECK(first_subset_count(chain) == 2);
    CHECK(last_superset_count(chain) == 2);
}

TEST_CASE("user arrival") {
    auto ds = eight_papers_dataset();
    CHECK(user_arrival_time(SetSequence(extract_ego(ds, 1, EgoKind::radial).simplices), 1) == 2);
    CHECK(user_arrival_time(SetSequence(extract_ego(ds, 1, EgoKind::contracted).simplices), 1) == 2);
    CHECK(user_arrival_time(SetSequence(extract_ego(ds, 1, EgoKind::star).simplices), 1) == 1);
    CHECK_THROWS_AS(user_arrival_time(SetSequence(from_sets({{2, 3}})), 1), UnknownEgoError);
}

TEST_CASE("featurize") {
    auto ds = eight_papers_dataset();
    auto f = featurize(extract_ego(ds, 1, EgoKind::star));
    CHECK(f.length == 5);
    CHECK(f.intersection_density == doctest::Approx(1.5 / 2.8));
    CHECK(f.avg_alter_spread == doctest::Approx(1.5));
    CHECK(f.first_subset_count == 1);
    CHECK(f.last_superset_count == 0);
    CHECK_FALSE(f.user_arrival.has_value());
    CHECK(f.values().size() == feature_count(EgoKind::star));

    auto r = featurize(extract_ego(ds, 1, EgoKind::radial));
    CHECK(r.length == 7);
    REQUIRE(r.user_arrival.has_value());
    CHECK(*r.user_arrival == 2);
    CHECK(r.values().size() == feature_names(EgoKind::radial).size());

    auto disjoint = featurize(SetSequence(from_sets({{1, 2}, {3, 4}})), EgoKind::star, 1);
    CHECK(disjoint.length == 2);
    CHECK(disjoint.intersection_density == 0.0);
    CHECK(disjoint.avg_alter_spread == 2.0);
    CHECK(disjoint.first_subset_count == 0);
    CHECK(disjoint.last_superset_count == 0);
}

TEST_CASE("permuted views read positions as ordinals") {
    auto star = star_of_one();
    std::vector<std::size_t> order{4, 3, 2, 1, 0};
    SetSequence reversed(star.simplices, order);
    CHECK(reversed[0] == NodeSet{1, 5, 7});
    CHECK(novelty_profile(reversed) == std::vector<std::size_t>{3, 2, 2, 0, 0});
    CHECK(avg_intersection_size(reversed) == avg_intersection_size(star.simplices));
}

TEST_CASE("property: measure bounds and conservation") {
    Rng rng(7);
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        auto ds = synthetic::random_dataset(seed, 12, 30);
        auto sets = node_sets(ds.simplices);
        if (sets.size() < 2) continue;
        const std::size_t m = sets.size();
        std::size_t c = 0;
        std::set<NodeId> distinct;
        for (const auto& s : sets) {
            c = std::max(c, s.size());
            distinct.insert(s.begin(), s.end());
        }
        auto order = random_permutation(m, rng);
        SetSequence seq(sets, order);
        std::vector<NodeSet> permuted;
        for (auto i : order) permuted.push_back(sets[i]);

        const double avg = avg_intersection_size(seq);
        CHECK(avg == doctest::Approx(oracle_avg_intersection(permuted)));
        CHECK(avg <= static_cast<double>(c));
        const double density = intersection_density(seq);
        CHECK(density >= 0.0);
        CHECK(density <= static_cast<double>(c) / mean_simplex_size(seq) + 1e-12);

        auto novelty = novelty_profile(seq);
        std::size_t total = 0;
        for (auto n : novelty) total += n;
        CHECK(total == distinct.size());

        for (const auto& net : alter_networks(seq, NodeId(-1))) {
            if (auto s = alter_spread(net)) {
                CHECK(*s >= 1.0);
                CHECK(*s <= static_cast<double>(m - 1));
            }
        }
    }
}

TEST_CASE("property: equal-size sequences have density in [0,1]") {
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<NodeSet> sets;
        const std::size_t m = 2 + uniform_index(10, rng);
        for (std::size_t i = 0; i < m; ++i) {
            NodeSet s;
            while (s.size() < 3) {
                s.push_back(uniform_index(8, rng));
                canonicalize(s);
            }
            sets.push_back(s);
        }
        double d = intersection_density(SetSequence(sets));
        CHECK(d >= 0.0);
        CHECK(d <= 1.0);
    }
}

TEST_CASE("property: shuffling concatenated alter runs raises the spread") {
    auto runs = synthetic::concatenated_runs(0, 5, 4);
    const double ordered = avg_alter_spread(runs, 0);
    CHECK(ordered == 1.0);
    Rng rng(2024);
    int exceeded = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        auto order = random_permutation(runs.size(), rng);
        exceeded += avg_alter_spread(SetSequence(runs, order), 0) > ordered ? 1 : 0;
    }
    CHECK(exceeded >= 990);
}

TEST_CASE("aggregate curves") {
    synthetic::LocalityConfig cfg;
    cfg.egos = 300;
    auto gen = synthetic::locality_dataset(cfg, 5);
    EgoExtractor ex(gen.dataset);
    std::vector<EgoNetwork> egos;
    for (NodeId u : gen.egos) egos.push_back(ex.extract(u, EgoKind::star));

    const std::vector<CurveVariant> both{CurveVariant::ordered, CurveVariant::shuffled};
    auto curve = aggregate_curves(egos, Measure::intersection, both, 1);
    std::map<std::size_t, double> ordered, shuffled;
    for (const auto& p : curve) {
        CHECK(p.count >= 1);
        (p.variant == CurveVariant::ordered ? ordered : shuffled)[p.x] = p.mean;
    }
    REQUIRE(ordered.size() == shuffled.size());
    for (const auto& [len, mean] : ordered) CHECK(mean > shuffled.at(len));

    // Same seed, same curve.
    auto again = aggregate_curves(egos, Measure::intersection, both, 1);
    REQUIRE(again.size() == curve.size());
    for (std::size_t i = 0; i < curve.size(); ++i) CHECK(again[i].mean == curve[i].mean);

    auto arrival = aggregate_curves(egos, Measure::arrival, both, 1);
    for (const auto& p : arrival) {
        if (p.variant == CurveVariant::ordered) CHECK(p.mean == 1.0);
    }

    std::vector<CurveVariant> first{CurveVariant::first_fifth};
    auto window = aggregate_curves(egos, Measure::intersection, first, 1);
    CHECK_FALSE(window.empty());
    CHECK(first_fifth_window(20) == 4);
    CHECK(first_fifth_window(11) == 3);
    CHECK(first_fifth_window(10) == 2);
}

TEST_CASE("novelty curve of identical egos is the profile minus position 1") {
    auto star = star_of_one();
    std::vector<EgoNetwork> egos(4, star);
    std::vector<CurveVariant> ordered{CurveVariant::ordered};
    auto curve = aggregate_curves(egos, Measure::novelty, ordered, 0);
    REQUIRE(curve.size() == 4);
    std::vector<double> ys;
    for (const auto& p : curve) {
        ys.push_back(p.mean);
        CHECK(p.count == 4);
    }
    CHECK(curve.front().x == 2);
    CHECK(ys == std::vector<double>{0, 0, 2, 2});
}

TEST_SUITE_END();
