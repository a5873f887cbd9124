// Trace-chain queries over the refinement subgraph.
//
// A chain is a sequence of triplets (source, link, target) where every link
// is a refinement kind and adjacent triplets share an artifact; forward
// chains walk abstract -> concrete, backward chains the reverse. Chains are
// simple (no repeated artifact) and enumerated in lexicographic order of
// their id sequence, so output is stable.
#pragma once

#include <optional>

#include "metamodel.hpp"

namespace acmtrace {

struct Trace {
    // Triplet i is (links[i]->source, links[i]->kind, links[i]->target); the
    // pointers alias the queried graph, which must outlive the trace.
    std::vector<const TraceLink*> links;
    bool backward = false;

    // Artifact ids as visited from the query start.
    std::vector<std::string> node_sequence() const;
};

enum class TraceDirection { Forward, Backward };

struct TraceQueryOptions {
    TraceDirection direction = TraceDirection::Forward;
    std::optional<ArtifactKind> to_kind;  // keep only chains ending at this kind
    std::optional<int> max_depth;         // max triplets per chain
    int max_chains = 1000;
};

struct TraceResult {
    std::vector<Trace> chains;
    bool overflow = false;  // true when more than max_chains chains exist
};

// All simple refinement chains starting at id. Without to_kind only maximal
// chains (not extendable within max_depth) are reported; with to_kind every
// chain ending at an artifact of that kind is. Throws std::invalid_argument
// for an unknown id or max_chains < 1.
TraceResult trace_from(const TraceGraph& graph, const std::string& id,
                       const TraceQueryOptions& opts);

// All simple refinement chains from `from` (on its abstract side) to `to`.
// Zero-length chains are never reported.
TraceResult chains_between(const TraceGraph& graph, const std::string& from,
                           const std::string& to, int max_chains = 1000);

// Operation services reachable by the backtrace
// module <- view function <- dialogue <- operation service. Sorted.
std::vector<std::string> services_of_module(const TraceGraph& graph,
                                            const std::string& module_id);

// "A -kind-> B" for forward chains, "A <-kind- B" for backward ones.
std::string render_chain(const Trace& trace);

}  // namespace acmtrace
