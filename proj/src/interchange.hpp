// Canonical JSON import/export and DOT export.
//
// The canonical document has fixed key order, 2-space indent, LF line
// endings and sorted artifact/link lists, so exporting the same graph twice
// is byte-identical and export/import/export is a fixed point.
#pragma once

#include "metamodel.hpp"

namespace acmtrace {

inline constexpr std::string_view kDocumentVersion = "1";

std::string export_json(const TraceGraph& graph);

struct ImportResult {
    std::vector<Artifact> artifacts;
    std::vector<TraceLink> links;
    std::vector<Diagnostic> diagnostics;  // J001..J005

    bool ok() const { return !has_errors(diagnostics); }
};

// Tolerant of key order and formatting; the structural checks of build_graph
// still apply downstream. Imported items carry a synthetic location pointing
// at the document.
ImportResult import_json(std::string_view text, std::string_view file_name);

// One cluster per abstraction layer plus one for requirements; node labels
// are "kind\nname", edge labels the link kind.
std::string export_dot(const TraceGraph& graph);

}  // namespace acmtrace
