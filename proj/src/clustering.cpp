#include "clustering.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace acmtrace {

Rational Rational::of(long long num, long long den) {
    if (den == 0) return {0, 1};
    long long g = std::gcd(num, den);
    if (g == 0) return {0, 1};
    return {num / g, den / g};
}

std::string Rational::str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

namespace {

void collect_targets(const TraceGraph& g, const std::string& id, LinkKind kind,
                     std::set<std::string>& into) {
    for (const TraceLink* l : g.out(id)) {
        if (l->kind == kind) into.insert(l->target);
    }
}

std::vector<std::string> submodel_of(const TraceGraph& g, const std::string& service_id) {
    std::set<std::string> dialogues;
    collect_targets(g, service_id, LinkKind::RealizedBy, dialogues);
    std::set<std::string> viewfns;
    for (const auto& dg : dialogues) collect_targets(g, dg, LinkKind::Performs, viewfns);
    std::set<std::string> modules;
    for (const auto& vf : viewfns) collect_targets(g, vf, LinkKind::Decomposes, modules);
    std::set<std::string> methods;
    for (const auto& sm : modules) collect_targets(g, sm, LinkKind::Decomposes, methods);
    std::set<std::string> classes;
    for (const auto& cm : methods) collect_targets(g, cm, LinkKind::MemberOf, classes);
    return {classes.begin(), classes.end()};
}

}  // namespace

std::vector<std::string> data_submodel(const TraceGraph& graph, const std::string& service_id) {
    const Artifact* a = graph.find(service_id);
    if (!a) throw std::invalid_argument("unknown artifact '" + service_id + "'");
    if (a->kind != ArtifactKind::OperationService) {
        throw std::invalid_argument("artifact '" + service_id + "' is not an operation service");
    }
    return submodel_of(graph, service_id);
}

SubmodelReport submodel_report(const TraceGraph& graph) {
    SubmodelReport report;
    for (const auto& [id, a] : graph.artifacts()) {
        if (a.kind == ArtifactKind::OperationService) {
            report.assignments.emplace(id, submodel_of(graph, id));
        }
    }

    // class -> services using it
    std::map<std::string, std::vector<std::string>> users;
    for (const auto& [service, classes] : report.assignments) {
        for (const auto& dc : classes) users[dc].push_back(service);
    }
    for (auto& [dc, services] : users) {
        if (services.size() > 1) report.shared.emplace_back(dc, services);
    }

    for (auto it = report.assignments.begin(); it != report.assignments.end(); ++it) {
        const auto& [sa, ca] = *it;
        // cohesion: classes used by this service alone
        long long exclusive = 0;
        for (const auto& dc : ca) {
            if (users[dc].size() == 1) ++exclusive;
        }
        report.cohesion[sa] =
            ca.empty() ? Rational{1, 1} : Rational::of(exclusive, static_cast<long long>(ca.size()));

        for (auto jt = std::next(it); jt != report.assignments.end(); ++jt) {
            const auto& [sb, cb] = *jt;
            std::vector<std::string> inter;
            std::set_intersection(ca.begin(), ca.end(), cb.begin(), cb.end(),
                                  std::back_inserter(inter));
            size_t uni = ca.size() + cb.size() - inter.size();
            Rational j = uni == 0 ? Rational{0, 1}
                                  : Rational::of(static_cast<long long>(inter.size()),
                                                 static_cast<long long>(uni));
            report.coupling.emplace_back(sa, sb, j);
        }
    }
    return report;
}

std::string render_submodel_report_text(const SubmodelReport& report) {
    std::string out;
    auto join = [](const std::vector<std::string>& v) {
        std::string s;
        for (size_t i = 0; i < v.size(); ++i) {
            if (i) s += ", ";
            s += v[i];
        }
        return s;
    };

    out += "submodels:\n";
    if (report.assignments.empty()) out += "  (none)\n";
    for (const auto& [service, classes] : report.assignments) {
        out += "  " + service + ": " + (classes.empty() ? "(none)" : join(classes)) + "\n";
    }
    out += "shared classes:\n";
    if (report.shared.empty()) out += "  (none)\n";
    for (const auto& [dc, services] : report.shared) {
        out += "  " + dc + ": " + join(services) + "\n";
    }
    out += "coupling (jaccard):\n";
    if (report.coupling.empty()) out += "  (none)\n";
    for (const auto& [a, b, j] : report.coupling) {
        out += "  " + a + " / " + b + ": " + j.str() + "\n";
    }
    out += "cohesion:\n";
    if (report.cohesion.empty()) out += "  (none)\n";
    for (const auto& [service, c] : report.cohesion) {
        out += "  " + service + ": " + c.str() + "\n";
    }
    return out;
}

std::string render_submodel_report_json(const SubmodelReport& report) {
    nlohmann::ordered_json doc;
    auto& submodels = doc["submodels"] = nlohmann::ordered_json::object();
    for (const auto& [service, classes] : report.assignments) submodels[service] = classes;
    auto& shared = doc["shared"] = nlohmann::ordered_json::array();
    for (const auto& [dc, services] : report.shared) {
        shared.push_back({{"class", dc}, {"services", services}});
    }
    auto& coupling = doc["coupling"] = nlohmann::ordered_json::array();
    for (const auto& [a, b, j] : report.coupling) {
        coupling.push_back({{"a", a}, {"b", b}, {"jaccard", j.str()}});
    }
    auto& cohesion = doc["cohesion"] = nlohmann::ordered_json::object();
    for (const auto& [service, c] : report.cohesion) cohesion[service] = c.str();
    return doc.dump(2) + "\n";
}

}  // namespace acmtrace
