#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "hyperego/simplex.hpp"

namespace hyperego::testing {

/// Eight co-authored papers on eight authors. Two papers share 1998 and
/// must be taken in file order. The file lists papers out of time order.
struct FixtureRow {
    std::vector<NodeId> nodes;
    Timestamp year;
};

inline const std::vector<FixtureRow>& eight_papers_rows() {
    static const std::vector<FixtureRow> rows{
        {{1, 5, 7}, 2001}, {{2, 3}, 1995},    {{1, 2, 3}, 1996}, {{2, 8, 4}, 1998},
        {{1, 2}, 1997},    {{1, 2, 3}, 1998}, {{4, 1, 8}, 1999}, {{2, 3, 5, 6}, 2000},
    };
    return rows;
}

/// Expected time-sorted node sets of the fixture.
inline std::vector<NodeSet> eight_papers_sorted() {
    return {{2, 3}, {1, 2, 3}, {1, 2}, {2, 4, 8}, {1, 2, 3}, {1, 4, 8}, {2, 3, 5, 6}, {1, 5, 7}};
}

inline void write_rows(const std::filesystem::path& prefix, const std::vector<FixtureRow>& rows) {
    auto files = DatasetFiles::from_prefix(prefix);
    std::filesystem::create_directories(prefix.parent_path());
    std::ofstream nverts(files.nverts), simplices(files.simplices), times(files.times);
    for (const auto& r : rows) {
        nverts << r.nodes.size() << '\n';
        for (auto v : r.nodes) simplices << v << '\n';
        times << r.year << '\n';
    }
}

inline std::filesystem::path scratch_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("hyperego-test-" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline SimplexDataset eight_papers_dataset() {
    std::vector<Simplex> simplices;
    const auto& rows = eight_papers_rows();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        simplices.push_back({rows[i].nodes, rows[i].year, 0, i});
    }
    return make_dataset(std::move(simplices), "eight-papers");
}

inline std::vector<NodeSet> node_sets(const std::vector<Simplex>& simplices) {
    std::vector<NodeSet> out;
    for (const auto& s : simplices) out.push_back(s.nodes);
    return out;
}

inline std::vector<Simplex> from_sets(const std::vector<NodeSet>& sets) {
    std::vector<Simplex> out;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        Simplex s{sets[i], static_cast<Timestamp>(i + 1), static_cast<std::int64_t>(i + 1), i};
        canonicalize(s.nodes);
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace hyperego::testing
