#include "validator.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "clustering.hpp"

namespace acmtrace {

namespace {

constexpr Rule kCatalog[] = {
    {"R001", Severity::Error, "link kind must be legal for its endpoint kinds"},
    {"R002", Severity::Error, "refinement links must not form cycles"},
    {"R003", Severity::Error,
     "every business function must decompose to a business operation"},
    {"R004", Severity::Warning,
     "business processes, functions and operations need a justifying survey artifact"},
    {"R005", Severity::Error,
     "a business operation with automated functions needs exactly one operation service"},
    {"R006", Severity::Error, "every operation service must be realized by a dialogue"},
    {"R007", Severity::Error, "every dialogue must perform a view function"},
    {"R008", Severity::Error, "every view function must decompose into a software module"},
    {"R009", Severity::Error,
     "every software module must be allocated to exactly one functional component"},
    {"R010", Severity::Warning, "software module does not decompose into class methods"},
    {"R011", Severity::Error, "every class method must be a member of exactly one data class"},
    {"R012", Severity::Error, "declared data submodel must match the derived one"},
    {"R013", Severity::Warning, "artifact has no links"},
    {"R014", Severity::Error, "seq values on a service's realized_by links must be unique"},
    {"R015", Severity::Warning,
     "software module should backtrace to exactly one operation service"},
    {"R016", Severity::Warning,
     "requirement should constrain an element or refine another requirement"},
};

class Checker {
public:
    explicit Checker(const TraceGraph& g) : g_(g) {}

    std::vector<Diagnostic> run() {
        legality();          // R001
        acyclicity();        // R002
        function_paths();    // R003
        justification();     // R004
        per_artifact();      // R005..R011, R013, R014, R016
        declared_submodels();  // R012
        module_services();   // R015
        sort_diagnostics(diags_);
        return std::move(diags_);
    }

private:
    void report(std::string_view rule, const SourceLocation& loc, std::string message,
                std::vector<std::string> related) {
        Severity sev = Severity::Error;
        for (const auto& r : kCatalog) {
            if (r.id == rule) sev = r.severity;
        }
        diags_.push_back({std::string(rule), sev, std::move(message), loc, std::move(related)});
    }

    const SourceLocation& loc_of(const std::string& id) const {
        return g_.find(id)->loc;
    }

    // R001: the builder already enforces legality; re-check defensively.
    void legality() {
        for (const auto& l : g_.links()) {
            const Artifact* src = g_.find(l.source);
            const Artifact* dst = g_.find(l.target);
            if (src && dst && !is_legal(l.kind, src->kind, dst->kind)) {
                report("R001", l.loc,
                       "link kind '" + std::string(link_kind_name(l.kind)) +
                           "' cannot connect " + std::string(kind_name(src->kind)) + " to " +
                           std::string(kind_name(dst->kind)),
                       {l.source, l.target});
            }
        }
    }

    // R002: Tarjan over refinement edges; report every SCC of size > 1 and
    // every self-loop.
    void acyclicity() {
        std::vector<const std::string*> ids;
        std::map<std::string_view, int> index_of;
        for (const auto& [id, a] : g_.artifacts()) {
            index_of[id] = static_cast<int>(ids.size());
            ids.push_back(&id);
        }
        int n = static_cast<int>(ids.size());
        std::vector<std::vector<int>> adj(n);
        std::vector<bool> self_loop(n, false);
        for (const auto& l : g_.links()) {
            if (!is_refinement(l.kind)) continue;
            int u = index_of[abstract_node(l)];
            int v = index_of[concrete_node(l)];
            if (u == v) {
                self_loop[u] = true;
            } else {
                adj[u].push_back(v);
            }
        }

        std::vector<int> idx(n, -1), low(n, 0);
        std::vector<bool> on_stack(n, false);
        std::vector<int> scc_stack;
        int counter = 0;

        // Iterative Tarjan; frames are (node, next child index).
        for (int root = 0; root < n; ++root) {
            if (idx[root] != -1) continue;
            std::vector<std::pair<int, size_t>> frames{{root, 0}};
            while (!frames.empty()) {
                auto& [u, child] = frames.back();
                if (child == 0) {
                    idx[u] = low[u] = counter++;
                    scc_stack.push_back(u);
                    on_stack[u] = true;
                }
                bool descended = false;
                while (child < adj[u].size()) {
                    int v = adj[u][child++];
                    if (idx[v] == -1) {
                        frames.emplace_back(v, 0);
                        descended = true;
                        break;
                    }
                    if (on_stack[v]) low[u] = std::min(low[u], idx[v]);
                }
                if (descended) continue;
                if (low[u] == idx[u]) {
                    std::vector<int> members;
                    while (true) {
                        int v = scc_stack.back();
                        scc_stack.pop_back();
                        on_stack[v] = false;
                        members.push_back(v);
                        if (v == u) break;
                    }
                    if (members.size() > 1) {
                        std::vector<std::string> names;
                        for (int v : members) names.push_back(*ids[v]);
                        std::sort(names.begin(), names.end());
                        std::string joined;
                        for (const auto& m : names) {
                            if (!joined.empty()) joined += ", ";
                            joined += m;
                        }
                        report("R002", loc_of(names.front()),
                               "refinement links form a cycle through: " + joined, names);
                    }
                }
                int done = u;
                frames.pop_back();
                if (!frames.empty()) {
                    low[frames.back().first] = std::min(low[frames.back().first], low[done]);
                }
            }
        }
        for (int u = 0; u < n; ++u) {
            if (self_loop[u]) {
                report("R002", loc_of(*ids[u]),
                       "refinement link forms a self-loop on '" + *ids[u] + "'", {*ids[u]});
            }
        }
    }

    // R003: reverse reachability from business operations over decomposes.
    void function_paths() {
        std::deque<const std::string*> queue;
        std::set<std::string_view> reaches;
        for (const auto& [id, a] : g_.artifacts()) {
            if (a.kind == ArtifactKind::BusinessOperation) queue.push_back(&id);
        }
        while (!queue.empty()) {
            const std::string* id = queue.front();
            queue.pop_front();
            for (const TraceLink* l : g_.in(*id)) {
                if (l->kind != LinkKind::Decomposes) continue;
                const Artifact* src = g_.find(l->source);
                if (!src || src->kind != ArtifactKind::BusinessFunction) continue;
                if (reaches.insert(l->source).second) queue.push_back(&l->source);
            }
        }
        for (const auto& [id, a] : g_.artifacts()) {
            if (a.kind == ArtifactKind::BusinessFunction && !reaches.contains(id)) {
                report("R003", a.loc,
                       "business function '" + id +
                           "' has no decomposes path to a business operation",
                       {id});
            }
        }
    }

    // R004: a justifies link to a decomposes ancestor covers its descendants.
    void justification() {
        auto covered_kind = [](ArtifactKind k) {
            return k == ArtifactKind::BusinessProcess || k == ArtifactKind::BusinessFunction ||
                   k == ArtifactKind::BusinessOperation;
        };
        std::deque<const std::string*> queue;
        std::set<std::string_view> justified;
        for (const auto& [id, a] : g_.artifacts()) {
            if (!covered_kind(a.kind)) continue;
            for (const TraceLink* l : g_.in(id)) {
                if (l->kind == LinkKind::Justifies) {
                    if (justified.insert(id).second) queue.push_back(&id);
                    break;
                }
            }
        }
        while (!queue.empty()) {
            const std::string* id = queue.front();
            queue.pop_front();
            for (const TraceLink* l : g_.out(*id)) {
                if (l->kind != LinkKind::Decomposes) continue;
                const Artifact* dst = g_.find(l->target);
                if (!dst || !covered_kind(dst->kind)) continue;
                if (justified.insert(l->target).second) queue.push_back(&l->target);
            }
        }
        for (const auto& [id, a] : g_.artifacts()) {
            if (covered_kind(a.kind) && !justified.contains(id)) {
                report("R004", a.loc,
                       std::string(kind_name(a.kind)) + " '" + id +
                           "' is not justified by any survey artifact",
                       {id});
            }
        }
    }

    void per_artifact() {
        for (const auto& [id, a] : g_.artifacts()) {
            if (g_.out(id).empty() && g_.in(id).empty()) {
                report("R013", a.loc, "artifact '" + id + "' has no links", {id});
            }
            switch (a.kind) {
                case ArtifactKind::BusinessOperation: {
                    int autofns = g_.count_out(id, LinkKind::Contains);
                    int services = g_.count_out(id, LinkKind::AutomatedBy);
                    // Manual operations (no automated functions) need no service.
                    if (autofns > 0 && services == 0) {
                        report("R005", a.loc,
                               "business operation '" + id +
                                   "' has automated functions but no operation service",
                               {id});
                    } else if (autofns > 0 && services > 1) {
                        report("R005", a.loc,
                               "business operation '" + id + "' has " +
                                   std::to_string(services) +
                                   " operation services; exactly one is required",
                               {id});
                    }
                    break;
                }
                case ArtifactKind::OperationService: {
                    if (g_.count_out(id, LinkKind::RealizedBy) == 0) {
                        report("R006", a.loc,
                               "operation service '" + id + "' is not realized by any dialogue",
                               {id});
                    }
                    // R014: seq values must be unique when present.
                    std::map<int, std::vector<std::string>> by_seq;
                    for (const TraceLink* l : g_.out(id)) {
                        if (l->kind == LinkKind::RealizedBy && l->seq) {
                            by_seq[*l->seq].push_back(l->target);
                        }
                    }
                    for (const auto& [seq, dialogues] : by_seq) {
                        if (dialogues.size() > 1) {
                            std::string joined;
                            for (const auto& d : dialogues) {
                                if (!joined.empty()) joined += ", ";
                                joined += d;
                            }
                            std::vector<std::string> related = dialogues;
                            related.insert(related.begin(), id);
                            report("R014", a.loc,
                                   "service '" + id + "' uses seq " + std::to_string(seq) +
                                       " on more than one dialogue: " + joined,
                                   std::move(related));
                        }
                    }
                    break;
                }
                case ArtifactKind::Dialogue:
                    if (g_.count_out(id, LinkKind::Performs) == 0) {
                        report("R007", a.loc,
                               "dialogue '" + id + "' performs no view function", {id});
                    }
                    break;
                case ArtifactKind::ViewFunction:
                    if (g_.count_out(id, LinkKind::Decomposes) == 0) {
                        report("R008", a.loc,
                               "view function '" + id +
                                   "' does not decompose into any software module",
                               {id});
                    }
                    break;
                case ArtifactKind::SoftwareModule: {
                    int components = g_.count_out(id, LinkKind::AllocatedTo);
                    if (components != 1) {
                        report("R009", a.loc,
                               "software module '" + id + "' is allocated to " +
                                   std::to_string(components) +
                                   " functional components; exactly one is required",
                               {id});
                    }
                    if (g_.count_out(id, LinkKind::Decomposes) == 0) {
                        report("R010", a.loc,
                               "software module '" + id +
                                   "' does not decompose into any class method",
                               {id});
                    }
                    break;
                }
                case ArtifactKind::ClassMethod: {
                    int classes = g_.count_out(id, LinkKind::MemberOf);
                    if (classes != 1) {
                        report("R011", a.loc,
                               "class method '" + id + "' is a member of " +
                                   std::to_string(classes) +
                                   " data classes; exactly one is required",
                               {id});
                    }
                    break;
                }
                case ArtifactKind::Requirement: {
                    if (g_.count_out(id, LinkKind::Constrains) == 0 &&
                        g_.count_out(id, LinkKind::Refines) == 0) {
                        report("R016", a.loc,
                               "requirement '" + id +
                                   "' constrains no element and refines no requirement",
                               {id});
                    }
                    break;
                }
                default:
                    break;
            }
        }
    }

    // R012: every declared submodel_of assignment must be derivable.
    void declared_submodels() {
        std::map<std::string, std::vector<std::string>> derived;
        for (const auto& l : g_.links()) {
            if (l.kind != LinkKind::SubmodelOf) continue;
            const Artifact* service = g_.find(l.target);
            if (!service || service->kind != ArtifactKind::OperationService) continue;
            auto it = derived.find(l.target);
            if (it == derived.end()) {
                it = derived.emplace(l.target, data_submodel(g_, l.target)).first;
            }
            if (!std::binary_search(it->second.begin(), it->second.end(), l.source)) {
                report("R012", l.loc,
                       "data class '" + l.source + "' is declared in the submodel of '" +
                           l.target + "' but no trace chain reaches it",
                       {l.source, l.target});
            }
        }
    }

    // R015: per-module service backtrace, memoized per dialogue/view function.
    void module_services() {
        std::map<std::string_view, std::vector<std::string_view>> dialogue_services;
        std::map<std::string_view, std::vector<std::string_view>> viewfn_services;

        auto services_of_dialogue = [&](const std::string& dg) -> const std::vector<std::string_view>& {
            auto it = dialogue_services.find(dg);
            if (it != dialogue_services.end()) return it->second;
            std::vector<std::string_view> services;
            for (const TraceLink* l : g_.in(dg)) {
                if (l->kind == LinkKind::RealizedBy) services.push_back(l->source);
            }
            std::sort(services.begin(), services.end());
            services.erase(std::unique(services.begin(), services.end()), services.end());
            return dialogue_services.emplace(dg, std::move(services)).first->second;
        };
        auto services_of_viewfn = [&](const std::string& vf) -> const std::vector<std::string_view>& {
            auto it = viewfn_services.find(vf);
            if (it != viewfn_services.end()) return it->second;
            std::vector<std::string_view> services;
            for (const TraceLink* l : g_.in(vf)) {
                if (l->kind != LinkKind::Performs) continue;
                const auto& via = services_of_dialogue(l->source);
                services.insert(services.end(), via.begin(), via.end());
            }
            std::sort(services.begin(), services.end());
            services.erase(std::unique(services.begin(), services.end()), services.end());
            return viewfn_services.emplace(vf, std::move(services)).first->second;
        };

        for (const auto& [id, a] : g_.artifacts()) {
            if (a.kind != ArtifactKind::SoftwareModule) continue;
            std::vector<std::string_view> services;
            for (const TraceLink* l : g_.in(id)) {
                if (l->kind != LinkKind::Decomposes) continue;
                const Artifact* src = g_.find(l->source);
                if (!src || src->kind != ArtifactKind::ViewFunction) continue;
                const auto& via = services_of_viewfn(l->source);
                services.insert(services.end(), via.begin(), via.end());
            }
            std::sort(services.begin(), services.end());
            services.erase(std::unique(services.begin(), services.end()), services.end());
            if (services.empty()) {
                report("R015", a.loc,
                       "software module '" + id +
                           "' does not backtrace to any operation service",
                       {id});
            } else if (services.size() > 1) {
                std::string joined;
                std::vector<std::string> related{id};
                for (auto s : services) {
                    if (!joined.empty()) joined += ", ";
                    joined += s;
                    related.emplace_back(s);
                }
                report("R015", a.loc,
                       "software module '" + id + "' backtraces to " +
                           std::to_string(services.size()) + " operation services: " + joined,
                       std::move(related));
            }
        }
    }

    const TraceGraph& g_;
    std::vector<Diagnostic> diags_;
};

}  // namespace

std::span<const Rule> rule_catalog() { return kCatalog; }

std::vector<Diagnostic> validate(const TraceGraph& graph) { return Checker(graph).run(); }

}  // namespace acmtrace
