#include "hyperego/simplex.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iterator>

#include "hyperego/error.hpp"

namespace hyperego {

std::size_t canonicalize(NodeSet& nodes) {
    std::sort(nodes.begin(), nodes.end());
    auto last = std::unique(nodes.begin(), nodes.end());
    auto removed = static_cast<std::size_t>(std::distance(last, nodes.end()));
    nodes.erase(last, nodes.end());
    return removed;
}

std::size_t intersection_size(const NodeSet& a, const NodeSet& b) {
    std::size_t count = 0;
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j) {
            ++i;
        } else if (*j < *i) {
            ++j;
        } else {
            ++count;
            ++i;
            ++j;
        }
    }
    return count;
}

NodeSet intersect(const NodeSet& a, const NodeSet& b) {
    NodeSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool is_subset(const NodeSet& sub, const NodeSet& super) {
    return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

bool contains(const NodeSet& set, NodeId node) {
    return std::binary_search(set.begin(), set.end(), node);
}

std::size_t SimplexDataset::trivial_count() const {
    return static_cast<std::size_t>(
        std::count_if(simplices.begin(), simplices.end(), [](const Simplex& s) { return s.trivial(); }));
}

DatasetFiles DatasetFiles::from_prefix(const std::filesystem::path& prefix) {
    auto with = [&](const char* suffix) {
        auto p = prefix;
        p += suffix;
        return p;
    };
    return {with("-nverts.txt"), with("-simplices.txt"), with("-times.txt")};
}

namespace {

template <typename Int>
std::vector<Int> read_integers(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open " + path.string());
    }
    std::vector<Int> values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) {
            continue;
        }
        auto last = line.find_last_not_of(" \t\r");
        const char* begin = line.data() + first;
        const char* end = line.data() + last + 1;
        Int value{};
        auto [ptr, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc{} || ptr != end) {
            throw ParseError(path.string(), line_no,
                             "expected an integer, got '" + std::string(begin, end) + "'");
        }
        values.push_back(value);
    }
    return values;
}

void sort_stream(std::vector<Simplex>& simplices) {
    std::stable_sort(simplices.begin(), simplices.end(), [](const Simplex& a, const Simplex& b) {
        if (a.real_time != b.real_time) {
            return a.real_time < b.real_time;
        }
        return a.source_index < b.source_index;
    });
}

std::size_t count_nodes(const std::map<NodeId, std::size_t>& degrees) {
    return degrees.size();
}

}  // namespace

std::map<NodeId, std::size_t> compute_degrees(std::span<const Simplex> simplices) {
    std::map<NodeId, std::size_t> degrees;
    for (const auto& s : simplices) {
        for (NodeId v : s.nodes) {
            ++degrees[v];
        }
    }
    return degrees;
}

SimplexDataset make_dataset(std::vector<Simplex> simplices, std::string name) {
    SimplexDataset ds;
    ds.name = std::move(name);
    for (auto& s : simplices) {
        ds.duplicate_nodes_collapsed += canonicalize(s.nodes);
    }
    sort_stream(simplices);
    ds.simplices = assign_ordinal_times(std::move(simplices));
    ds.degree_index = compute_degrees(ds.simplices);
    ds.node_count = count_nodes(ds.degree_index);
    return ds;
}

SimplexDataset load_dataset(const DatasetFiles& files, std::string name) {
    const auto nverts = read_integers<std::int64_t>(files.nverts);
    const auto nodes = read_integers<NodeId>(files.simplices);
    const auto times = read_integers<Timestamp>(files.times);

    if (nverts.empty() && nodes.empty() && times.empty()) {
        throw EmptyDatasetError("dataset '" + name + "' is empty");
    }
    if (nverts.empty()) {
        throw EmptyDatasetError(files.nverts.string() + " is empty");
    }
    if (nverts.size() != times.size()) {
        throw StructuralError("nverts has " + std::to_string(nverts.size()) + " entries but times has " +
                              std::to_string(times.size()));
    }
    std::size_t total = 0;
    for (std::size_t i = 0; i < nverts.size(); ++i) {
        if (nverts[i] < 1) {
            throw StructuralError("nverts entry " + std::to_string(i + 1) + " is " + std::to_string(nverts[i]) +
                                  "; simplex sizes must be positive");
        }
        total += static_cast<std::size_t>(nverts[i]);
    }
    if (total != nodes.size()) {
        throw StructuralError("nverts sums to " + std::to_string(total) + " but simplices has " +
                              std::to_string(nodes.size()) + " entries");
    }

    std::vector<Simplex> simplices;
    simplices.reserve(nverts.size());
    std::size_t cursor = 0;
    for (std::size_t i = 0; i < nverts.size(); ++i) {
        Simplex s;
        auto count = static_cast<std::size_t>(nverts[i]);
        s.nodes.assign(nodes.begin() + static_cast<std::ptrdiff_t>(cursor),
                       nodes.begin() + static_cast<std::ptrdiff_t>(cursor + count));
        cursor += count;
        s.real_time = times[i];
        s.source_index = i;
        simplices.push_back(std::move(s));
    }
    return make_dataset(std::move(simplices), std::move(name));
}

void write_dataset(const SimplexDataset& dataset, const DatasetFiles& files) {
    std::ofstream nverts(files.nverts);
    std::ofstream simplices(files.simplices);
    std::ofstream times(files.times);
    if (!nverts || !simplices || !times) {
        throw Error("cannot write dataset files for '" + dataset.name + "'");
    }
    for (const auto& s : dataset.simplices) {
        nverts << s.nodes.size() << '\n';
        for (NodeId v : s.nodes) {
            simplices << v << '\n';
        }
        times << s.real_time << '\n';
    }
}

SimplexDataset filter_trivial(const SimplexDataset& dataset) {
    SimplexDataset out;
    out.name = dataset.name;
    out.duplicate_nodes_collapsed = dataset.duplicate_nodes_collapsed;
    std::vector<Simplex> kept;
    std::copy_if(dataset.simplices.begin(), dataset.simplices.end(), std::back_inserter(kept),
                 [](const Simplex& s) { return !s.trivial(); });
    out.simplices = assign_ordinal_times(std::move(kept));
    out.degree_index = compute_degrees(out.simplices);
    out.node_count = count_nodes(out.degree_index);
    return out;
}

std::vector<Simplex> assign_ordinal_times(std::vector<Simplex> simplices) {
    for (std::size_t i = 1; i < simplices.size(); ++i) {
        const auto& prev = simplices[i - 1];
        const auto& cur = simplices[i];
        bool ordered = prev.real_time < cur.real_time ||
                       (prev.real_time == cur.real_time && prev.source_index < cur.source_index);
        if (!ordered) {
            throw ContractError("simplices not sorted by (real_time, source_index) at position " +
                                std::to_string(i));
        }
    }
    for (std::size_t i = 0; i < simplices.size(); ++i) {
        simplices[i].ordinal_time = static_cast<std::int64_t>(i + 1);
    }
    return simplices;
}

}  // namespace hyperego
