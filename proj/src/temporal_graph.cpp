#include "commevolve/temporal_graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <stdexcept>

#include "commevolve/util.hpp"

namespace commevolve {

namespace {

const std::set<NodeId> kEmptyNodeSet;

std::int64_t parse_timestamp(std::string_view field, std::size_t line_no) {
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
        throw std::runtime_error("line " + std::to_string(line_no) +
                                 ": invalid timestamp '" + std::string(field) + "'");
    }
    if (value < 0) {
        throw std::runtime_error("line " + std::to_string(line_no) +
                                 ": negative timestamp " + std::string(field));
    }
    return value;
}

}  // namespace

ParseResult parse_interactions(std::istream& in) {
    ParseResult result;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string_view view = trim(line);
        if (view.empty()) continue;
        if (view.front() == '%' || view.front() == '#') {
            ++result.comment_lines_skipped;
            continue;
        }
        auto fields = split(view, ',');
        if (fields.size() != 3) {
            throw std::runtime_error("line " + std::to_string(line_no) +
                                     ": expected source,target,timestamp (got " +
                                     std::to_string(fields.size()) + " fields)");
        }
        NodeId source{trim(fields[0])};
        NodeId target{trim(fields[1])};
        if (source.empty() || target.empty()) {
            throw std::runtime_error("line " + std::to_string(line_no) + ": empty node id");
        }
        std::int64_t ts = parse_timestamp(trim(fields[2]), line_no);
        if (source == target) {
            ++result.self_loops_dropped;
            continue;
        }
        result.interactions.push_back({std::move(source), std::move(target), ts});
    }
    return result;
}

ParseResult parse_interactions_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open interaction file: " + path);
    return parse_interactions(in);
}

void UndirectedGraph::add_node(const NodeId& u) { nodes_.insert(u); }

void UndirectedGraph::add_edge(const NodeId& u, const NodeId& v) {
    if (u == v) return;
    nodes_.insert(u);
    nodes_.insert(v);
    adjacency_[u].insert(v);
    adjacency_[v].insert(u);
}

bool UndirectedGraph::has_edge(const NodeId& u, const NodeId& v) const {
    auto it = adjacency_.find(u);
    return it != adjacency_.end() && it->second.count(v) > 0;
}

const std::set<NodeId>& UndirectedGraph::neighbors(const NodeId& u) const {
    auto it = adjacency_.find(u);
    return it == adjacency_.end() ? kEmptyNodeSet : it->second;
}

std::size_t UndirectedGraph::edge_count() const {
    std::size_t twice = 0;
    for (const auto& [node, nbrs] : adjacency_) twice += nbrs.size();
    return twice / 2;
}

std::pair<int, int> SnapshotNetwork::degrees(const NodeId& node) const {
    int in = 0;
    int out = 0;
    if (auto it = in_adjacency_.find(node); it != in_adjacency_.end()) {
        in = static_cast<int>(it->second.size());
    }
    if (auto it = out_adjacency_.find(node); it != out_adjacency_.end()) {
        out = static_cast<int>(it->second.size());
    }
    return {in, out};
}

const std::set<NodeId>& SnapshotNetwork::undirected_neighbors(const NodeId& node) const {
    auto it = und_adjacency_.find(node);
    return it == und_adjacency_.end() ? kEmptyNodeSet : it->second;
}

void SnapshotNetwork::rebuild_adjacency() {
    in_adjacency_.clear();
    out_adjacency_.clear();
    und_adjacency_.clear();
    for (const auto& [edge, count] : directed_edges) {
        const auto& [src, dst] = edge;
        out_adjacency_[src].insert(dst);
        in_adjacency_[dst].insert(src);
        und_adjacency_[src].insert(dst);
        und_adjacency_[dst].insert(src);
    }
}

const SnapshotNetwork& SnapshotSeries::at(int t) const {
    if (t < 1 || t > T()) {
        throw std::out_of_range("snapshot index " + std::to_string(t) +
                                " outside [1," + std::to_string(T()) + "]");
    }
    return snapshots[static_cast<std::size_t>(t - 1)];
}

const SnapshotNetwork* SnapshotSeries::find(int t) const {
    if (t < 1 || t > T()) return nullptr;
    return &snapshots[static_cast<std::size_t>(t - 1)];
}

SnapshotSeries build_snapshots(const std::vector<TemporalInteraction>& interactions,
                               std::int64_t window_length,
                               int min_pair_interactions) {
    if (window_length <= 0) throw std::invalid_argument("window_length must be positive");
    if (min_pair_interactions < 1) {
        throw std::invalid_argument("min_pair_interactions must be >= 1");
    }
    if (interactions.empty()) throw std::runtime_error("no data: interaction list is empty");

    std::int64_t t0 = std::numeric_limits<std::int64_t>::max();
    std::int64_t t_max = std::numeric_limits<std::int64_t>::min();
    for (const auto& x : interactions) {
        t0 = std::min(t0, x.timestamp);
        t_max = std::max(t_max, x.timestamp);
    }
    std::int64_t span = t_max - t0 + 1;
    // Trailing partial window is dropped, except when all data fits in less
    // than one window (then that single window is kept).
    int T = static_cast<int>(span / window_length);
    if (T == 0) T = 1;

    // Per window: ordered-pair interaction counts.
    std::vector<std::map<std::pair<NodeId, NodeId>, int>> counts(static_cast<std::size_t>(T));
    for (const auto& x : interactions) {
        std::int64_t idx = (x.timestamp - t0) / window_length;
        if (idx >= T) continue;  // dropped trailing partial window
        ++counts[static_cast<std::size_t>(idx)][{x.source, x.target}];
    }

    SnapshotSeries series;
    series.window_length = window_length;
    series.snapshots.reserve(static_cast<std::size_t>(T));
    for (int t = 1; t <= T; ++t) {
        SnapshotNetwork snap;
        snap.index = t;
        snap.window_start = t0 + static_cast<std::int64_t>(t - 1) * window_length;
        snap.window_end = snap.window_start + window_length;
        const auto& window_counts = counts[static_cast<std::size_t>(t - 1)];
        for (const auto& [edge, count] : window_counts) {
            const auto& [src, dst] = edge;
            int reverse = 0;
            if (auto it = window_counts.find({dst, src}); it != window_counts.end()) {
                reverse = it->second;
            }
            if (count + reverse < min_pair_interactions) continue;
            snap.directed_edges[edge] = count;
            snap.nodes.insert(src);
            snap.nodes.insert(dst);
        }
        snap.rebuild_adjacency();
        series.snapshots.push_back(std::move(snap));
    }
    return series;
}

UndirectedGraph undirected_projection(const SnapshotNetwork& snapshot) {
    UndirectedGraph g;
    for (const auto& node : snapshot.nodes) g.add_node(node);
    for (const auto& [edge, count] : snapshot.directed_edges) {
        g.add_edge(edge.first, edge.second);
    }
    return g;
}

UndirectedGraph undirected_projection(const UndirectedGraph& graph) { return graph; }

}  // namespace commevolve
