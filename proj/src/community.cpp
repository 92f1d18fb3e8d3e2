#include "commevolve/community.hpp"

#include <algorithm>
#include <iterator>
#include <numeric>
#include <stdexcept>
#include <string>

namespace commevolve {

namespace {

// Dense integer view of the graph for clique search.
struct DenseGraph {
    std::vector<NodeId> ids;               // sorted; dense index -> NodeId
    std::vector<std::vector<int>> adj;     // sorted neighbor lists

    explicit DenseGraph(const UndirectedGraph& g) {
        ids.assign(g.nodes().begin(), g.nodes().end());
        adj.resize(ids.size());
        for (std::size_t i = 0; i < ids.size(); ++i) {
            for (const auto& nb : g.neighbors(ids[i])) {
                auto it = std::lower_bound(ids.begin(), ids.end(), nb);
                adj[i].push_back(static_cast<int>(it - ids.begin()));
            }
        }
    }
};

std::vector<int> intersect_sorted(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::size_t intersection_size(const std::vector<int>& a, const std::vector<int>& b) {
    std::size_t n = 0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) ++ia;
        else if (*ib < *ia) ++ib;
        else { ++n; ++ia; ++ib; }
    }
    return n;
}

struct CliqueSearch {
    const DenseGraph& graph;
    int k_min;
    std::size_t cap;
    std::vector<std::vector<int>> found;

    void run(std::vector<int>& R, std::vector<int> P, std::vector<int> X) {
        if (P.empty() && X.empty()) {
            if (static_cast<int>(R.size()) >= k_min) {
                if (found.size() >= cap) {
                    throw std::runtime_error("maximal clique cap exceeded (" +
                                             std::to_string(cap) +
                                             "); raise max_cliques or prefilter the snapshot");
                }
                found.push_back(R);
            }
            return;
        }
        // Pivot: vertex of P∪X with the most neighbors in P.
        int pivot = -1;
        std::size_t best = 0;
        for (const auto* pool : {&P, &X}) {
            for (int u : *pool) {
                std::size_t n = intersection_size(P, graph.adj[static_cast<std::size_t>(u)]);
                if (pivot < 0 || n > best) { pivot = u; best = n; }
            }
        }
        std::vector<int> candidates;
        const auto& pivot_adj = graph.adj[static_cast<std::size_t>(pivot)];
        std::set_difference(P.begin(), P.end(), pivot_adj.begin(), pivot_adj.end(),
                            std::back_inserter(candidates));
        for (int v : candidates) {
            const auto& nv = graph.adj[static_cast<std::size_t>(v)];
            R.push_back(v);
            run(R, intersect_sorted(P, nv), intersect_sorted(X, nv));
            R.pop_back();
            P.erase(std::find(P.begin(), P.end(), v));
            auto pos = std::lower_bound(X.begin(), X.end(), v);
            X.insert(pos, v);
        }
    }
};

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int a) {
        while (parent[static_cast<std::size_t>(a)] != a) {
            parent[static_cast<std::size_t>(a)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
            a = parent[static_cast<std::size_t>(a)];
        }
        return a;
    }
    void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

std::size_t overlap(const std::set<NodeId>& a, const std::set<NodeId>& b) {
    const auto& small = a.size() <= b.size() ? a : b;
    const auto& large = a.size() <= b.size() ? b : a;
    std::size_t n = 0;
    for (const auto& x : small) n += large.count(x);
    return n;
}

bool member_sets_linked(const std::set<NodeId>& a, const std::set<NodeId>& b,
                        CliqueMergeBasis basis) {
    std::size_t shared = overlap(a, b);
    std::size_t reference = 0;
    switch (basis) {
        case CliqueMergeBasis::smaller: reference = std::min(a.size(), b.size()); break;
        case CliqueMergeBasis::larger: reference = std::max(a.size(), b.size()); break;
        case CliqueMergeBasis::union_size: reference = a.size() + b.size() - shared; break;
    }
    return 2 * shared > reference;  // strict majority
}

bool canonical_less(const std::set<NodeId>& a, const std::set<NodeId>& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

std::vector<std::set<NodeId>> maximal_cliques(const UndirectedGraph& graph, int k_min,
                                              std::size_t max_cliques) {
    if (k_min < 3) throw std::invalid_argument("k_min must be >= 3");
    DenseGraph dense(graph);
    CliqueSearch search{dense, k_min, max_cliques, {}};
    std::vector<int> R;
    std::vector<int> P(dense.ids.size());
    std::iota(P.begin(), P.end(), 0);
    search.run(R, std::move(P), {});

    std::vector<std::set<NodeId>> cliques;
    cliques.reserve(search.found.size());
    for (const auto& c : search.found) {
        std::set<NodeId> clique;
        for (int v : c) clique.insert(dense.ids[static_cast<std::size_t>(v)]);
        cliques.push_back(std::move(clique));
    }
    std::sort(cliques.begin(), cliques.end(), canonical_less);
    return cliques;
}

std::vector<std::set<NodeId>> merge_cliques(const std::vector<std::set<NodeId>>& cliques,
                                            CliqueMergeBasis basis) {
    const std::size_t n = cliques.size();
    UnionFind uf(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (member_sets_linked(cliques[i], cliques[j], basis)) {
                uf.unite(static_cast<int>(i), static_cast<int>(j));
            }
        }
    }
    std::map<int, std::set<NodeId>> unions;
    for (std::size_t i = 0; i < n; ++i) {
        auto& target = unions[uf.find(static_cast<int>(i))];
        target.insert(cliques[i].begin(), cliques[i].end());
    }
    std::set<std::set<NodeId>> dedup;
    for (auto& [root, members] : unions) dedup.insert(std::move(members));

    std::vector<std::set<NodeId>> out(dedup.begin(), dedup.end());
    std::sort(out.begin(), out.end(), canonical_less);
    return out;
}

std::vector<CommunitySubgraph> detect_communities(const SnapshotNetwork& snapshot,
                                                  const DetectConfig& cfg) {
    UndirectedGraph projection = undirected_projection(snapshot);
    auto cliques = maximal_cliques(projection, cfg.k_min, cfg.max_cliques);
    auto member_sets = merge_cliques(cliques, cfg.merge_basis);

    std::vector<CommunitySubgraph> communities;
    communities.reserve(member_sets.size());
    int ordinal = 1;
    for (auto& members : member_sets) {
        CommunitySubgraph community;
        community.group_id = {snapshot.index, ordinal++};
        for (const auto& m : members) {
            for (const auto& nb : projection.neighbors(m)) {
                if (!members.count(nb)) community.neighbors.insert(nb);
            }
        }
        community.members = std::move(members);
        communities.push_back(std::move(community));
    }
    return communities;
}

}  // namespace commevolve
