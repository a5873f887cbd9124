// extern "C" surface over the C++ engine. Exceptions never cross the
// boundary; they become status codes plus a thread-local message.
#include "acmtrace/acmtrace.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "clustering.hpp"
#include "dsl.hpp"
#include "interchange.hpp"
#include "json.hpp"
#include "matrix.hpp"
#include "metamodel.hpp"
#include "query.hpp"
#include "validator.hpp"

using namespace acmtrace;

struct acm_model {
    std::optional<TraceGraph> graph;
    std::vector<Diagnostic> diagnostics;  // parse, then build, then validation
    bool parse_ok = false;
    bool build_ok = false;
    int validation_errors = 0;
};

namespace {

thread_local std::string g_last_error;

acm_status fail(acm_status status, std::string message) {
    g_last_error = std::move(message);
    return status;
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

acm_model* load(ParseResult parsed) {
    auto* m = new acm_model();
    m->diagnostics = parsed.diagnostics;
    m->parse_ok = !parsed.has_errors();
    if (!m->parse_ok) return m;

    BuildResult built = build_graph(std::move(parsed.artifacts), std::move(parsed.links));
    m->diagnostics.insert(m->diagnostics.end(), built.diagnostics.begin(),
                          built.diagnostics.end());
    m->build_ok = built.ok();
    if (!m->build_ok) return m;
    m->graph = std::move(built.graph);

    auto findings = validate(*m->graph);
    m->validation_errors = count_severity(findings, Severity::Error);
    m->diagnostics.insert(m->diagnostics.end(), findings.begin(), findings.end());
    return m;
}

// Gate shared by the query-style operations.
acm_status gate(const acm_model* m) {
    if (!m) return fail(ACM_E_ARGUMENT, "model handle is null");
    if (!m->parse_ok) return fail(ACM_E_PARSE, "model has syntax errors");
    if (!m->build_ok) return fail(ACM_E_MODEL, "trace graph could not be built");
    if (m->validation_errors > 0) {
        return fail(ACM_E_VALIDATION, "model has validation errors");
    }
    return ACM_OK;
}

template <class Fn>
acm_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const std::invalid_argument& e) {
        return fail(ACM_E_ARGUMENT, e.what());
    } catch (const std::exception& e) {
        return fail(ACM_E_INTERNAL, e.what());
    } catch (...) {
        return fail(ACM_E_INTERNAL, "unknown error");
    }
}

std::string render_stats(const TraceGraph& g) {
    size_t kind_counts[kArtifactKindCount] = {};
    for (const auto& [id, a] : g.artifacts()) ++kind_counts[static_cast<int>(a.kind)];
    size_t link_counts[kLinkKindCount] = {};
    for (const auto& l : g.links()) ++link_counts[static_cast<int>(l.kind)];

    std::string out;
    out += "artifacts: " + std::to_string(g.artifacts().size()) + "\n";
    for (int i = 0; i < kArtifactKindCount; ++i) {
        auto k = static_cast<ArtifactKind>(i);
        out += "  " + std::string(kind_keyword(k)) + ": " + std::to_string(kind_counts[i]) + "\n";
    }
    out += "links: " + std::to_string(g.links().size()) + "\n";
    for (int i = 0; i < kLinkKindCount; ++i) {
        auto k = static_cast<LinkKind>(i);
        out += "  " + std::string(link_kind_name(k)) + ": " + std::to_string(link_counts[i]) +
               "\n";
    }

    size_t layer_counts[6] = {};
    size_t meta = 0;
    int populated = 0;
    for (int i = 0; i < kArtifactKindCount; ++i) {
        auto layer = layer_of(static_cast<ArtifactKind>(i));
        if (layer) {
            layer_counts[*layer] += kind_counts[i];
        } else {
            meta += kind_counts[i];
        }
    }
    out += "layers:\n";
    for (int layer = 0; layer <= 5; ++layer) {
        if (layer_counts[layer] > 0) ++populated;
        out += "  " + std::to_string(layer) + ": " + std::to_string(layer_counts[layer]) + "\n";
    }
    out += "  requirements: " + std::to_string(meta) + "\n";
    out += "coverage: " + std::to_string(populated) + "/6 layers populated\n";
    return out;
}

}  // namespace

extern "C" {

const char* acm_version(void) { return "0.1.0"; }

const char* acm_last_error(void) { return g_last_error.c_str(); }

acm_status acm_model_load_file(const char* path, acm_model** out) {
    if (!path || !out) return fail(ACM_E_ARGUMENT, "null argument");
    *out = nullptr;
    return guarded([&]() -> acm_status {
        ParseResult parsed = parse_file(path);
        if (parsed.io_error) {
            return fail(ACM_E_IO, parsed.diagnostics.empty()
                                      ? "cannot read file"
                                      : parsed.diagnostics.front().message);
        }
        *out = load(std::move(parsed));
        return ACM_OK;
    });
}

acm_status acm_model_load_text(const char* text, const char* file_name, acm_model** out) {
    if (!text || !out) return fail(ACM_E_ARGUMENT, "null argument");
    *out = nullptr;
    return guarded([&]() -> acm_status {
        *out = load(parse(text, file_name ? file_name : "<text>"));
        return ACM_OK;
    });
}

void acm_model_free(acm_model* model) { delete model; }

int acm_model_parse_ok(const acm_model* model) { return model && model->parse_ok ? 1 : 0; }

int acm_model_build_ok(const acm_model* model) { return model && model->build_ok ? 1 : 0; }

size_t acm_model_artifact_count(const acm_model* model) {
    return model && model->graph ? model->graph->artifacts().size() : 0;
}

size_t acm_model_link_count(const acm_model* model) {
    return model && model->graph ? model->graph->links().size() : 0;
}

size_t acm_model_diagnostic_count(const acm_model* model) {
    return model ? model->diagnostics.size() : 0;
}

int acm_model_error_count(const acm_model* model) {
    return model ? count_severity(model->diagnostics, Severity::Error) : 0;
}

int acm_model_warning_count(const acm_model* model) {
    return model ? count_severity(model->diagnostics, Severity::Warning) : 0;
}

acm_status acm_model_diagnostic_text(const acm_model* model, size_t index, char** out) {
    if (!model || !out) return fail(ACM_E_ARGUMENT, "null argument");
    if (index >= model->diagnostics.size()) {
        return fail(ACM_E_ARGUMENT, "diagnostic index out of range");
    }
    *out = dup_string(format_diagnostic(model->diagnostics[index]));
    return ACM_OK;
}

acm_status acm_model_diagnostics_json(const acm_model* model, char** out) {
    if (!model || !out) return fail(ACM_E_ARGUMENT, "null argument");
    return guarded([&]() -> acm_status {
        nlohmann::ordered_json doc = nlohmann::ordered_json::array();
        for (const auto& d : model->diagnostics) {
            nlohmann::ordered_json entry;
            entry["rule_id"] = d.rule_id;
            entry["severity"] = severity_name(d.severity);
            entry["message"] = d.message;
            entry["file"] = d.loc.file;
            entry["line"] = d.loc.line;
            entry["column"] = d.loc.column;
            entry["related"] = d.related;
            doc.push_back(std::move(entry));
        }
        *out = dup_string(doc.dump(2) + "\n");
        return ACM_OK;
    });
}

acm_status acm_model_trace(const acm_model* model, const char* from_id, const char* direction,
                           const char* to_kind, int max_chains, int max_depth, char** out,
                           int* overflowed) {
    if (!model || !from_id || !direction || !out) return fail(ACM_E_ARGUMENT, "null argument");
    if (acm_status s = gate(model); s != ACM_OK) return s;
    return guarded([&]() -> acm_status {
        TraceQueryOptions opts;
        std::string dir = direction;
        if (dir == "forward") {
            opts.direction = TraceDirection::Forward;
        } else if (dir == "back") {
            opts.direction = TraceDirection::Backward;
        } else {
            return fail(ACM_E_ARGUMENT, "direction must be 'forward' or 'back'");
        }
        if (to_kind) {
            auto k = kind_from_keyword(to_kind);
            if (!k) return fail(ACM_E_ARGUMENT, std::string("unknown kind '") + to_kind + "'");
            opts.to_kind = *k;
        }
        if (max_depth < 0) return fail(ACM_E_ARGUMENT, "max_depth must not be negative");
        opts.max_chains = max_chains;
        if (max_depth > 0) opts.max_depth = max_depth;
        TraceResult result = trace_from(*model->graph, from_id, opts);
        std::string text;
        if (result.chains.empty()) {
            text = "no chains\n";
        } else {
            for (const auto& chain : result.chains) text += render_chain(chain) + "\n";
        }
        if (overflowed) *overflowed = result.overflow ? 1 : 0;
        *out = dup_string(text);
        return ACM_OK;
    });
}

acm_status acm_model_matrix(const acm_model* model, const char* row_kind, const char* col_kind,
                            int cap, const char* format, char** out) {
    if (!model || !row_kind || !col_kind || !format || !out) {
        return fail(ACM_E_ARGUMENT, "null argument");
    }
    if (acm_status s = gate(model); s != ACM_OK) return s;
    return guarded([&]() -> acm_status {
        auto rk = kind_from_keyword(row_kind);
        if (!rk) return fail(ACM_E_ARGUMENT, std::string("unknown kind '") + row_kind + "'");
        auto ck = kind_from_keyword(col_kind);
        if (!ck) return fail(ACM_E_ARGUMENT, std::string("unknown kind '") + col_kind + "'");
        MatrixFormat fmt;
        std::string f = format;
        if (f == "csv") {
            fmt = MatrixFormat::Csv;
        } else if (f == "html") {
            fmt = MatrixFormat::Html;
        } else if (f == "text") {
            fmt = MatrixFormat::Text;
        } else {
            return fail(ACM_E_ARGUMENT, "format must be 'csv', 'html' or 'text'");
        }
        TraceMatrix m = build_matrix(*model->graph, *rk, *ck, cap);
        *out = dup_string(render_matrix(m, fmt));
        return ACM_OK;
    });
}

acm_status acm_model_clusters(const acm_model* model, const char* format, char** out) {
    if (!model || !format || !out) return fail(ACM_E_ARGUMENT, "null argument");
    if (acm_status s = gate(model); s != ACM_OK) return s;
    return guarded([&]() -> acm_status {
        std::string f = format;
        SubmodelReport report = submodel_report(*model->graph);
        if (f == "text") {
            *out = dup_string(render_submodel_report_text(report));
        } else if (f == "json") {
            *out = dup_string(render_submodel_report_json(report));
        } else {
            return fail(ACM_E_ARGUMENT, "format must be 'text' or 'json'");
        }
        return ACM_OK;
    });
}

acm_status acm_model_export(const acm_model* model, const char* format, char** out) {
    if (!model || !format || !out) return fail(ACM_E_ARGUMENT, "null argument");
    if (acm_status s = gate(model); s != ACM_OK) return s;
    return guarded([&]() -> acm_status {
        std::string f = format;
        if (f == "json") {
            *out = dup_string(export_json(*model->graph));
        } else if (f == "dot") {
            *out = dup_string(export_dot(*model->graph));
        } else {
            return fail(ACM_E_ARGUMENT, "format must be 'json' or 'dot'");
        }
        return ACM_OK;
    });
}

acm_status acm_model_stats(const acm_model* model, char** out) {
    if (!model || !out) return fail(ACM_E_ARGUMENT, "null argument");
    if (!model->parse_ok) return fail(ACM_E_PARSE, "model has syntax errors");
    if (!model->build_ok) return fail(ACM_E_MODEL, "trace graph could not be built");
    return guarded([&]() -> acm_status {
        *out = dup_string(render_stats(*model->graph));
        return ACM_OK;
    });
}

void acm_string_free(char* s) { std::free(s); }

}  // extern "C"
