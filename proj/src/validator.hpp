// Completeness and layering rules over a built trace graph.
#pragma once

#include "metamodel.hpp"

namespace acmtrace {

struct Rule {
    std::string_view id;
    Severity severity;
    std::string_view description;
};

// Fixed catalog, R001..R016.
std::span<const Rule> rule_catalog();

// Pure function of the graph; diagnostics sorted by (rule id, location).
// An empty result means the model is fully traceable end to end.
std::vector<Diagnostic> validate(const TraceGraph& graph);

}  // namespace acmtrace
