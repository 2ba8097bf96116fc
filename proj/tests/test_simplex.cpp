#include <fstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "hyperego/error.hpp"
#include "hyperego/simplex.hpp"
#include "hyperego/synthetic.hpp"

using namespace hyperego;
using namespace hyperego::testing;

namespace {

void write_lines(const std::filesystem::path& path, const std::vector<std::string>& lines) {
    std::ofstream f(path);
    for (const auto& l : lines) f << l << '\n';
}

DatasetFiles write_raw(const std::string& name, const std::vector<std::string>& nverts,
                       const std::vector<std::string>& simplices, const std::vector<std::string>& times) {
    auto files = DatasetFiles::from_prefix(scratch_dir(name) / name);
    write_lines(files.nverts, nverts);
    write_lines(files.simplices, simplices);
    write_lines(files.times, times);
    return files;
}

}  // namespace

TEST_SUITE_BEGIN("simplex-core");

TEST_CASE("minimal well-formed input") {
    auto files = write_raw("minimal", {"3", "2"}, {"1", "2", "3", "1", "2"}, {"1995", "1996"});
    auto ds = load_dataset(files, "minimal");
    REQUIRE(ds.simplices.size() == 2);
    CHECK(ds.simplices[0].nodes == NodeSet{1, 2, 3});
    CHECK(ds.simplices[0].real_time == 1995);
    CHECK(ds.simplices[1].nodes == NodeSet{1, 2});
    CHECK(ds.simplices[1].real_time == 1996);
    CHECK(ds.node_count == 3);
    CHECK(ds.degree_index.at(1) == 2);
    CHECK(ds.degree_index.at(3) == 1);
}

TEST_CASE("duplicate ids collapse to a trivial simplex") {
    auto files = write_raw("dedup", {"2"}, {"7", "7"}, {"5"});
    auto ds = load_dataset(files, "dedup");
    REQUIRE(ds.simplices.size() == 1);
    CHECK(ds.simplices[0].nodes == NodeSet{7});
    CHECK(ds.simplices[0].trivial());
    CHECK(ds.duplicate_nodes_collapsed == 1);
    CHECK(filter_trivial(ds).simplices.empty());
}

TEST_CASE("fixture files load in time order with ties in file order") {
    auto prefix = scratch_dir("fixture") / "fig1";
    write_rows(prefix, eight_papers_rows());
    auto ds = load_dataset(DatasetFiles::from_prefix(prefix), "fig1");
    CHECK(node_sets(ds.simplices) == eight_papers_sorted());
    for (std::size_t i = 0; i < ds.simplices.size(); ++i) {
        CHECK(ds.simplices[i].ordinal_time == static_cast<std::int64_t>(i + 1));
    }
    CHECK(ds.node_count == 8);
    CHECK(ds.trivial_count() == 0);
    CHECK(filter_trivial(ds).simplices == ds.simplices);
}

TEST_CASE("parse errors carry line numbers") {
    auto files = write_raw("badint", {"2", "x"}, {"1", "2", "3"}, {"1", "2"});
    try {
        load_dataset(files, "badint");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
    auto negative = write_raw("negative", {"2"}, {"1", "-4"}, {"1"});
    CHECK_THROWS_AS(load_dataset(negative, "negative"), ParseError);
}

TEST_CASE("structural mismatches name both counts") {
    auto sum = write_raw("sum", {"3"}, {"1", "2"}, {"1"});
    try {
        load_dataset(sum, "sum");
        FAIL("expected a structural error");
    } catch (const StructuralError& e) {
        std::string what = e.what();
        CHECK(what.find('3') != std::string::npos);
        CHECK(what.find('2') != std::string::npos);
    }
    auto times = write_raw("times", {"1", "1"}, {"1", "2"}, {"1"});
    CHECK_THROWS_AS(load_dataset(times, "times"), StructuralError);
    auto zero = write_raw("zero", {"0"}, {}, {"1"});
    CHECK_THROWS_AS(load_dataset(zero, "zero"), StructuralError);
}

TEST_CASE("empty files") {
    auto files = write_raw("empty", {}, {}, {});
    CHECK_THROWS_AS(load_dataset(files, "empty"), EmptyDatasetError);
}

TEST_CASE("filter_trivial") {
    auto ds = make_dataset({{{1}, 1, 0, 0}, {{1, 2}, 2, 0, 1}}, "t");
    auto kept = filter_trivial(ds);
    REQUIRE(kept.simplices.size() == 1);
    CHECK(kept.simplices[0].nodes == NodeSet{1, 2});
    CHECK(kept.simplices[0].ordinal_time == 1);
    CHECK(kept.degree_index.at(2) == 1);

    auto all_trivial = make_dataset({{{3}, 1, 0, 0}, {{4}, 2, 0, 1}}, "t");
    CHECK(filter_trivial(all_trivial).simplices.empty());
    CHECK(filter_trivial(all_trivial).degree_index.empty());
}

TEST_CASE("assign_ordinal_times") {
    std::vector<Simplex> s{{{1, 2}, 1995, 0, 0}, {{1, 3}, 1996, 0, 1}, {{2, 3}, 1996, 0, 2}};
    auto out = assign_ordinal_times(s);
    CHECK(out[0].ordinal_time == 1);
    CHECK(out[1].ordinal_time == 2);
    CHECK(out[2].ordinal_time == 3);

    CHECK(assign_ordinal_times({{{1, 2}, 7, 0, 0}})[0].ordinal_time == 1);

    std::swap(s[0], s[2]);
    CHECK_THROWS_AS(assign_ordinal_times(s), ContractError);
}

TEST_CASE("property: round trip, degree recount, gapless ordinals") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto ds = synthetic::random_dataset(seed);
        auto recount = compute_degrees(ds.simplices);
        CHECK(recount == ds.degree_index);
        for (std::size_t i = 0; i < ds.simplices.size(); ++i) {
            REQUIRE(ds.simplices[i].ordinal_time == static_cast<std::int64_t>(i + 1));
        }
        auto prefix = scratch_dir("roundtrip") / "rt";
        write_dataset(ds, DatasetFiles::from_prefix(prefix));
        auto back = load_dataset(DatasetFiles::from_prefix(prefix), ds.name);
        REQUIRE(back.simplices.size() == ds.simplices.size());
        for (std::size_t i = 0; i < ds.simplices.size(); ++i) {
            CHECK(back.simplices[i].nodes == ds.simplices[i].nodes);
            CHECK(back.simplices[i].real_time == ds.simplices[i].real_time);
        }
        CHECK(back.degree_index == ds.degree_index);
    }
}

TEST_SUITE_END();
