// Per-service data submodels and the coupling report.
//
// A service's data submodel is the set of data classes whose methods are
// reached by some chain service -> dialogue -> view function -> module ->
// method. Coupling between two services is the Jaccard similarity of their
// class sets; cohesion of a service is the fraction of its classes used by
// no other service (1 for an empty set).
#pragma once

#include "metamodel.hpp"

namespace acmtrace {

// Exact non-negative rational, reduced, den >= 1.
struct Rational {
    long long num = 0;
    long long den = 1;

    static Rational of(long long num, long long den);
    bool operator==(const Rational&) const = default;
    std::string str() const;  // "2/3", or just "1" when den == 1
};

// Sorted set of DataClass ids. Throws std::invalid_argument when service_id
// is missing or not an OperationService.
std::vector<std::string> data_submodel(const TraceGraph& graph, const std::string& service_id);

struct SubmodelReport {
    // service id -> sorted class ids, one entry per OperationService
    std::map<std::string, std::vector<std::string>> assignments;
    // classes appearing in more than one submodel, with their services
    std::vector<std::pair<std::string, std::vector<std::string>>> shared;
    // Jaccard per unordered service pair (a < b), all pairs
    std::vector<std::tuple<std::string, std::string, Rational>> coupling;
    std::map<std::string, Rational> cohesion;
};

SubmodelReport submodel_report(const TraceGraph& graph);

std::string render_submodel_report_text(const SubmodelReport& report);
std::string render_submodel_report_json(const SubmodelReport& report);

}  // namespace acmtrace
