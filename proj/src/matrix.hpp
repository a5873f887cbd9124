// Traceability matrices: chain counts between two artifact kinds.
#pragma once

#include <cstdint>

#include "metamodel.hpp"

namespace acmtrace {

struct TraceMatrix {
    ArtifactKind row_kind = ArtifactKind::SurveyArtifact;
    ArtifactKind col_kind = ArtifactKind::SurveyArtifact;
    std::vector<std::string> rows;  // sorted ids
    std::vector<std::string> cols;  // sorted ids
    int cap = 1000;

    struct Cell {
        bool reachable = false;
        int chain_count = 0;  // saturated at cap
        bool overflowed = false;
    };
    Cell cell(size_t row, size_t col) const;

    // Packed row-major: count saturated at cap, high bit marks overflow.
    std::vector<std::uint32_t> cells;
};

// Counts simple refinement chains between every row/col artifact pair. The
// abstract side is picked by layer (ties broken by kind declaration order,
// same kind rows->cols), so transposed calls agree. Requires the refinement
// subgraph to be acyclic, which validation guarantees; throws
// std::logic_error otherwise.
TraceMatrix build_matrix(const TraceGraph& graph, ArtifactKind row_kind, ArtifactKind col_kind,
                         int cap = 1000);

enum class MatrixFormat { Csv, Html, Text };

// CSV: header of col ids, one row per row id, counts with a '+' suffix on
// overflow. HTML: standalone document with reachable cells marked. Text:
// aligned grid. All byte-deterministic.
std::string render_matrix(const TraceMatrix& m, MatrixFormat format);

}  // namespace acmtrace
