#include "query.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace acmtrace {

std::vector<std::string> Trace::node_sequence() const {
    std::vector<std::string> seq;
    seq.reserve(links.size() + 1);
    if (links.empty()) return seq;
    if (!backward) {
        seq.push_back(abstract_node(*links.front()));
        for (const TraceLink* l : links) seq.push_back(concrete_node(*l));
    } else {
        seq.push_back(concrete_node(*links.front()));
        for (const TraceLink* l : links) seq.push_back(abstract_node(*l));
    }
    return seq;
}

std::string render_chain(const Trace& trace) {
    auto seq = trace.node_sequence();
    if (seq.empty()) return {};
    std::string out = seq.front();
    for (size_t i = 0; i < trace.links.size(); ++i) {
        auto kind = link_kind_name(trace.links[i]->kind);
        if (!trace.backward) {
            out += " -";
            out += kind;
            out += "-> ";
        } else {
            out += " <-";
            out += kind;
            out += "- ";
        }
        out += seq[i + 1];
    }
    return out;
}

namespace {

struct Step {
    const TraceLink* link;
    const std::string* next;
};

// Refinement steps leaving `id` in the requested direction, ordered by
// (next id, kind name) so DFS emits chains in lexicographic order.
std::vector<Step> steps_from(const TraceGraph& g, const std::string& id, bool backward) {
    std::vector<Step> steps;
    auto consider = [&](const TraceLink* l) {
        if (!is_refinement(l->kind)) return;
        const std::string& abstract = abstract_node(*l);
        const std::string& concrete = concrete_node(*l);
        if (!backward && abstract == id) steps.push_back({l, &concrete});
        if (backward && concrete == id) steps.push_back({l, &abstract});
    };
    for (const TraceLink* l : g.out(id)) consider(l);
    for (const TraceLink* l : g.in(id)) consider(l);
    std::sort(steps.begin(), steps.end(), [](const Step& a, const Step& b) {
        if (*a.next != *b.next) return *a.next < *b.next;
        return link_kind_name(a.link->kind) < link_kind_name(b.link->kind);
    });
    return steps;
}

struct Enumerator {
    const TraceGraph& graph;
    bool backward = false;
    std::optional<ArtifactKind> to_kind;   // emit only chains ending at this kind
    const std::string* to_id = nullptr;    // emit only chains ending at this id (chains_between)
    std::optional<int> max_depth;
    int max_chains = 1000;

    TraceResult run(const std::string& start) {
        TraceResult result;
        std::vector<const TraceLink*> path;
        std::unordered_set<std::string_view> visited;
        visited.insert(start);

        struct Frame {
            std::vector<Step> steps;
            size_t next = 0;
            const std::string* node;
            bool extended = false;  // a simple extension was taken from here
        };
        std::vector<Frame> stack;
        stack.push_back({steps_from(graph, start, backward), 0, &start, false});

        while (!stack.empty()) {
            Frame& top = stack.back();
            // Find the next step that keeps the chain simple and in budget.
            const Step* step = nullptr;
            if (!max_depth || static_cast<int>(path.size()) < *max_depth) {
                while (top.next < top.steps.size()) {
                    const Step& s = top.steps[top.next];
                    if (!visited.contains(*s.next)) {
                        step = &s;
                        break;
                    }
                    ++top.next;
                }
            }
            if (!step) {
                // Without a target filter, emit maximal chains: ones that
                // never took an extension from this endpoint.
                if (!path.empty() && !to_kind && !to_id && !top.extended) {
                    if (!emit(result, path)) return result;
                }
                if (!path.empty()) {
                    visited.erase(*top.node);
                    path.pop_back();
                }
                stack.pop_back();
                continue;
            }
            ++top.next;
            top.extended = true;
            path.push_back(step->link);
            visited.insert(*step->next);
            const std::string* node = step->next;

            bool is_target = false;
            if (to_id && *node == *to_id) is_target = true;
            if (to_kind) {
                const Artifact* a = graph.find(*node);
                if (a && a->kind == *to_kind) is_target = true;
            }
            if (is_target) {
                if (!emit(result, path)) return result;
            }
            if (to_id && *node == *to_id) {
                // A simple chain cannot revisit the target; stop extending.
                visited.erase(*node);
                path.pop_back();
                continue;
            }
            stack.push_back({steps_from(graph, *node, backward), 0, node, false});
        }
        return result;
    }

private:
    bool emit(TraceResult& result, const std::vector<const TraceLink*>& path) {
        if (static_cast<int>(result.chains.size()) >= max_chains) {
            result.overflow = true;
            return false;
        }
        result.chains.push_back({path, backward});
        return true;
    }
};

const Artifact& require_artifact(const TraceGraph& g, const std::string& id) {
    const Artifact* a = g.find(id);
    if (!a) throw std::invalid_argument("unknown artifact '" + id + "'");
    return *a;
}

}  // namespace

TraceResult trace_from(const TraceGraph& graph, const std::string& id,
                       const TraceQueryOptions& opts) {
    require_artifact(graph, id);
    if (opts.max_chains < 1) throw std::invalid_argument("max_chains must be at least 1");
    if (opts.max_depth && *opts.max_depth < 1) {
        throw std::invalid_argument("max_depth must be at least 1");
    }
    Enumerator e{graph,
                 opts.direction == TraceDirection::Backward,
                 opts.to_kind,
                 nullptr,
                 opts.max_depth,
                 opts.max_chains};
    return e.run(id);
}

TraceResult chains_between(const TraceGraph& graph, const std::string& from,
                           const std::string& to, int max_chains) {
    require_artifact(graph, from);
    require_artifact(graph, to);
    if (max_chains < 1) throw std::invalid_argument("max_chains must be at least 1");
    if (from == to) return {};  // zero-length chains are not reported
    Enumerator e{graph, false, std::nullopt, &to, std::nullopt, max_chains};
    return e.run(from);
}

std::vector<std::string> services_of_module(const TraceGraph& graph,
                                            const std::string& module_id) {
    const Artifact& m = require_artifact(graph, module_id);
    if (m.kind != ArtifactKind::SoftwareModule) {
        throw std::invalid_argument("artifact '" + module_id + "' is not a software module");
    }
    // module <- viewfn (decomposes) <- dialogue (performs) <- service (realized_by)
    std::set<std::string> viewfns;
    for (const TraceLink* l : graph.in(module_id)) {
        if (l->kind == LinkKind::Decomposes) viewfns.insert(l->source);
    }
    std::set<std::string> dialogues;
    for (const auto& vf : viewfns) {
        for (const TraceLink* l : graph.in(vf)) {
            if (l->kind == LinkKind::Performs) dialogues.insert(l->source);
        }
    }
    std::set<std::string> services;
    for (const auto& dg : dialogues) {
        for (const TraceLink* l : graph.in(dg)) {
            if (l->kind == LinkKind::RealizedBy) services.insert(l->source);
        }
    }
    return {services.begin(), services.end()};
}

}  // namespace acmtrace
