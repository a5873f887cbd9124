#include "matrix.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

namespace acmtrace {

namespace {

constexpr std::uint32_t kOverflowBit = 0x80000000u;

// True when `a` sits on the abstract side of a matrix against `b`.
bool abstract_side(ArtifactKind a, ArtifactKind b) {
    if (a == b) return true;  // same kind: forward direction only
    int la = orientation_layer(a);
    int lb = orientation_layer(b);
    if (la != lb) return la < lb;
    return static_cast<int>(a) < static_cast<int>(b);
}

}  // namespace

TraceMatrix::Cell TraceMatrix::cell(size_t row, size_t col) const {
    std::uint32_t raw = cells[row * cols.size() + col];
    Cell c;
    c.overflowed = raw & kOverflowBit;
    c.chain_count = static_cast<int>(raw & ~kOverflowBit);
    c.reachable = c.chain_count > 0;
    return c;
}

TraceMatrix build_matrix(const TraceGraph& graph, ArtifactKind row_kind, ArtifactKind col_kind,
                         int cap) {
    if (cap < 1) throw std::invalid_argument("cap must be at least 1");
    TraceMatrix m;
    m.row_kind = row_kind;
    m.col_kind = col_kind;
    m.cap = cap;

    std::map<std::string_view, int> index_of;
    std::vector<const std::string*> ids;
    for (const auto& [id, a] : graph.artifacts()) {
        index_of[id] = static_cast<int>(ids.size());
        ids.push_back(&id);
        if (a.kind == row_kind) m.rows.push_back(id);
        if (a.kind == col_kind) m.cols.push_back(id);
    }
    m.cells.assign(m.rows.size() * m.cols.size(), 0);
    if (m.rows.empty() || m.cols.empty()) return m;

    int n = static_cast<int>(ids.size());
    std::vector<std::vector<int>> fwd(n);
    std::vector<int> indegree(n, 0);
    for (const auto& l : graph.links()) {
        if (!is_refinement(l.kind)) continue;
        int u = index_of[abstract_node(l)];
        int v = index_of[concrete_node(l)];
        fwd[u].push_back(v);
        ++indegree[v];
    }

    // Topological order (Kahn); chain counting needs an acyclic refinement
    // subgraph, which rule R002 guarantees for validated models.
    std::vector<int> topo;
    topo.reserve(n);
    std::deque<int> ready;
    for (int u = 0; u < n; ++u) {
        if (indegree[u] == 0) ready.push_back(u);
    }
    while (!ready.empty()) {
        int u = ready.front();
        ready.pop_front();
        topo.push_back(u);
        for (int v : fwd[u]) {
            if (--indegree[v] == 0) ready.push_back(v);
        }
    }
    if (static_cast<int>(topo.size()) != n) {
        throw std::logic_error("refinement links contain a cycle; validate the model first");
    }
    std::vector<int> topo_pos(n, 0);
    for (int i = 0; i < n; ++i) topo_pos[topo[i]] = i;

    bool rows_abstract = abstract_side(row_kind, col_kind);
    const auto& sources = rows_abstract ? m.rows : m.cols;
    const auto& sinks = rows_abstract ? m.cols : m.rows;

    std::vector<int> sink_index(n, -1);
    for (size_t i = 0; i < sinks.size(); ++i) sink_index[index_of[sinks[i]]] = static_cast<int>(i);

    const std::uint64_t sentinel = static_cast<std::uint64_t>(cap) + 1;
    std::vector<std::uint64_t> count(n);

    for (size_t si = 0; si < sources.size(); ++si) {
        int s = index_of[sources[si]];
        std::fill(count.begin(), count.end(), 0);
        count[s] = 1;
        for (int i = topo_pos[s]; i < n; ++i) {
            int u = topo[i];
            if (count[u] == 0) continue;
            for (int v : fwd[u]) {
                count[v] = std::min(count[v] + count[u], sentinel);
            }
        }
        for (int v = 0; v < n; ++v) {
            int ci = sink_index[v];
            if (ci < 0 || v == s) continue;  // zero-length chains don't count
            std::uint64_t c = count[v];
            if (c == 0) continue;
            std::uint32_t packed = c > static_cast<std::uint64_t>(cap)
                                       ? (static_cast<std::uint32_t>(cap) | kOverflowBit)
                                       : static_cast<std::uint32_t>(c);
            size_t row = rows_abstract ? si : static_cast<size_t>(ci);
            size_t col = rows_abstract ? static_cast<size_t>(ci) : si;
            m.cells[row * m.cols.size() + col] = packed;
        }
    }
    return m;
}

namespace {

std::string cell_text(const TraceMatrix::Cell& c) {
    std::string s = std::to_string(c.chain_count);
    if (c.overflowed) s += '+';
    return s;
}

std::string render_csv(const TraceMatrix& m) {
    std::string out;
    for (const auto& col : m.cols) {
        out += ',';
        out += col;
    }
    out += '\n';
    for (size_t r = 0; r < m.rows.size(); ++r) {
        out += m.rows[r];
        for (size_t c = 0; c < m.cols.size(); ++c) {
            out += ',';
            out += cell_text(m.cell(r, c));
        }
        out += '\n';
    }
    return out;
}

std::string html_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string render_html(const TraceMatrix& m) {
    std::string out;
    out += "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n<title>trace matrix: ";
    out += kind_name(m.row_kind);
    out += " x ";
    out += kind_name(m.col_kind);
    out += "</title>\n<style>\n";
    out += "table { border-collapse: collapse; }\n";
    out += "th, td { border: 1px solid #999; padding: 2px 8px; text-align: right; }\n";
    out += "th { background: #eee; }\n";
    out += "td.hit { background: #cfe8cf; }\n";
    out += "</style>\n</head>\n<body>\n<table>\n<tr><th></th>";
    for (const auto& col : m.cols) {
        out += "<th>" + html_escape(col) + "</th>";
    }
    out += "</tr>\n";
    for (size_t r = 0; r < m.rows.size(); ++r) {
        out += "<tr><th>" + html_escape(m.rows[r]) + "</th>";
        for (size_t c = 0; c < m.cols.size(); ++c) {
            auto cell = m.cell(r, c);
            out += cell.reachable ? "<td class=\"hit\">" : "<td>";
            out += cell_text(cell);
            out += "</td>";
        }
        out += "</tr>\n";
    }
    out += "</table>\n</body>\n</html>\n";
    return out;
}

std::string render_text(const TraceMatrix& m) {
    size_t row_width = 0;
    for (const auto& r : m.rows) row_width = std::max(row_width, r.size());
    std::vector<size_t> col_width(m.cols.size());
    for (size_t c = 0; c < m.cols.size(); ++c) {
        col_width[c] = m.cols[c].size();
        for (size_t r = 0; r < m.rows.size(); ++r) {
            col_width[c] = std::max(col_width[c], cell_text(m.cell(r, c)).size());
        }
    }
    std::string out;
    out.append(row_width, ' ');
    for (size_t c = 0; c < m.cols.size(); ++c) {
        out += "  ";
        out.append(col_width[c] - m.cols[c].size(), ' ');
        out += m.cols[c];
    }
    out += '\n';
    for (size_t r = 0; r < m.rows.size(); ++r) {
        out += m.rows[r];
        out.append(row_width - m.rows[r].size(), ' ');
        for (size_t c = 0; c < m.cols.size(); ++c) {
            auto text = cell_text(m.cell(r, c));
            out += "  ";
            out.append(col_width[c] - text.size(), ' ');
            out += text;
        }
        out += '\n';
    }
    return out;
}

}  // namespace

std::string render_matrix(const TraceMatrix& m, MatrixFormat format) {
    switch (format) {
        case MatrixFormat::Csv: return render_csv(m);
        case MatrixFormat::Html: return render_html(m);
        case MatrixFormat::Text: return render_text(m);
    }
    return {};
}

}  // namespace acmtrace
