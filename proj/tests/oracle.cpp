#include "oracle.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

#include "dsl.hpp"

namespace acmtrace::testing {

namespace {

// Plain recursive enumerator over an adjacency map built directly from the
// link list; shares nothing with the query implementation.
struct BruteForce {
    const TraceGraph& g;
    bool backward = false;
    std::optional<ArtifactKind> to_kind;
    const std::string* to_id = nullptr;
    std::optional<int> max_depth;
    size_t safety_limit = 200000;

    std::map<std::string, std::vector<std::string>> adj;
    std::vector<std::vector<std::string>> found;
    std::vector<std::string> path;

    void build_adjacency() {
        for (const auto& l : g.links()) {
            if (!is_refinement(l.kind)) continue;
            if (backward) {
                adj[concrete_node(l)].push_back(abstract_node(l));
            } else {
                adj[abstract_node(l)].push_back(concrete_node(l));
            }
        }
    }

    bool on_path(const std::string& id) const {
        return std::find(path.begin(), path.end(), id) != path.end();
    }

    void emit() {
        if (found.size() >= safety_limit) {
            throw std::runtime_error("oracle safety limit exceeded");
        }
        found.push_back(path);
    }

    void visit(const std::string& node) {
        bool extended = false;
        if (!max_depth || static_cast<int>(path.size()) - 1 < *max_depth) {
            auto it = adj.find(node);
            if (it != adj.end()) {
                for (const auto& next : it->second) {
                    if (on_path(next)) continue;
                    extended = true;
                    path.push_back(next);
                    bool at_target = false;
                    if (to_id && next == *to_id) at_target = true;
                    if (to_kind && g.find(next)->kind == *to_kind) at_target = true;
                    if (at_target) emit();
                    if (!(to_id && next == *to_id)) visit(next);
                    path.pop_back();
                }
            }
        }
        if (!extended && !to_kind && !to_id && path.size() > 1) emit();
    }

    std::vector<std::vector<std::string>> run(const std::string& start) {
        build_adjacency();
        path.push_back(start);
        visit(start);
        std::sort(found.begin(), found.end());
        return std::move(found);
    }
};

}  // namespace

std::vector<std::vector<std::string>> oracle_chains(const TraceGraph& g, const std::string& start,
                                                    bool backward,
                                                    std::optional<ArtifactKind> to_kind,
                                                    std::optional<int> max_depth,
                                                    size_t safety_limit) {
    BruteForce bf{g, backward, to_kind, nullptr, max_depth, safety_limit, {}, {}, {}};
    return bf.run(start);
}

std::vector<std::vector<std::string>> oracle_chains_between(const TraceGraph& g,
                                                            const std::string& from,
                                                            const std::string& to,
                                                            size_t safety_limit) {
    if (from == to) return {};
    BruteForce bf{g, false, std::nullopt, &to, std::nullopt, safety_limit, {}, {}, {}};
    return bf.run(from);
}

long long oracle_count(const TraceGraph& g, const std::string& from, const std::string& to,
                       long long stop_after) {
    if (from == to) return 0;
    BruteForce bf{g,  false, std::nullopt, &to, std::nullopt, static_cast<size_t>(stop_after),
                  {}, {},    {}};
    try {
        return static_cast<long long>(bf.run(from).size());
    } catch (const std::runtime_error&) {
        return stop_after;  // at least this many
    }
}

std::vector<std::string> oracle_data_submodel(const TraceGraph& g, const std::string& service) {
    std::set<std::string> classes;
    for (const auto& chain :
         oracle_chains(g, service, false, ArtifactKind::ClassMethod)) {
        const std::string& method = chain.back();
        for (const TraceLink* l : g.out(method)) {
            if (l->kind == LinkKind::MemberOf) classes.insert(l->target);
        }
    }
    return {classes.begin(), classes.end()};
}

std::vector<std::string> oracle_services_of_module(const TraceGraph& g,
                                                   const std::string& module_id) {
    std::set<std::string> services;
    for (const auto& chain :
         oracle_chains(g, module_id, true, ArtifactKind::OperationService)) {
        services.insert(chain.back());
    }
    return {services.begin(), services.end()};
}

namespace {

struct Rng {
    std::mt19937 eng;
    explicit Rng(unsigned seed) : eng(seed) {}
    int next(int n) { return static_cast<int>(eng() % static_cast<unsigned>(n)); }
};

}  // namespace

RandomModel random_model(unsigned seed) {
    Rng rng(seed);
    RandomModel model;

    // Weighted kind mix biased toward the chain-bearing kinds.
    constexpr std::pair<ArtifactKind, int> weights[] = {
        {ArtifactKind::SurveyArtifact, 2},  {ArtifactKind::Requirement, 1},
        {ArtifactKind::BusinessProcess, 2}, {ArtifactKind::BusinessFunction, 4},
        {ArtifactKind::BusinessOperation, 4}, {ArtifactKind::AutomatedFunction, 3},
        {ArtifactKind::OperationService, 3}, {ArtifactKind::Dialogue, 3},
        {ArtifactKind::ViewFunction, 3},    {ArtifactKind::FunctionalComponent, 1},
        {ArtifactKind::SoftwareModule, 4},  {ArtifactKind::DataClass, 2},
        {ArtifactKind::ClassMethod, 4},
    };
    int total_weight = 0;
    for (auto [k, w] : weights) total_weight += w;

    int node_count = 5 + rng.next(46);  // 5..50
    std::map<ArtifactKind, std::vector<std::string>> by_kind;
    std::map<ArtifactKind, int> counters;
    for (int i = 0; i < node_count; ++i) {
        int pick = rng.next(total_weight);
        ArtifactKind kind = ArtifactKind::SurveyArtifact;
        for (auto [k, w] : weights) {
            if (pick < w) {
                kind = k;
                break;
            }
            pick -= w;
        }
        Artifact a;
        a.kind = kind;
        a.id = std::string(kind_keyword(kind)) + std::to_string(counters[kind]++);
        a.name = "node " + std::to_string(i);
        a.loc = {"<random>", i + 1, 1};
        by_kind[kind].push_back(a.id);
        model.artifacts.push_back(std::move(a));
    }

    auto table = legality_table();
    std::set<std::tuple<LinkKind, std::string, std::string>> seen;
    int attempts = 30 + rng.next(91);  // 30..120
    for (int i = 0; i < attempts; ++i) {
        const LegalPair& p = table[rng.next(static_cast<int>(table.size()))];
        const auto& sources = by_kind[p.source];
        const auto& targets = by_kind[p.target];
        if (sources.empty() || targets.empty()) continue;
        int si = rng.next(static_cast<int>(sources.size()));
        int ti = rng.next(static_cast<int>(targets.size()));
        // Same-kind refinement edges point at higher indices only, so the
        // refinement subgraph stays acyclic.
        if (p.source == p.target) {
            if (si == ti) continue;
            if (si > ti) std::swap(si, ti);
        }
        TraceLink l;
        l.kind = p.kind;
        l.source = sources[si];
        l.target = targets[ti];
        l.loc = {"<random>", node_count + i + 1, 1};
        if (!seen.emplace(l.kind, l.source, l.target).second) continue;
        if (l.kind == LinkKind::RealizedBy && rng.next(2) == 0) {
            l.seq = 1 + rng.next(5);
        }
        model.links.push_back(std::move(l));
    }
    return model;
}

TraceGraph must_build(std::vector<Artifact> artifacts, std::vector<TraceLink> links) {
    BuildResult built = build_graph(std::move(artifacts), std::move(links));
    if (!built.ok()) {
        std::string msg = "graph build failed:";
        for (const auto& d : built.diagnostics) msg += "\n  " + format_diagnostic(d);
        throw std::runtime_error(msg);
    }
    return std::move(*built.graph);
}

TraceGraph must_parse_build(const std::string& text, const std::string& name) {
    ParseResult parsed = parse(text, name);
    if (parsed.has_errors()) {
        std::string msg = "parse failed:";
        for (const auto& d : parsed.diagnostics) msg += "\n  " + format_diagnostic(d);
        throw std::runtime_error(msg);
    }
    return must_build(std::move(parsed.artifacts), std::move(parsed.links));
}

}  // namespace acmtrace::testing
