#include "interchange.hpp"

#include <algorithm>
#include <cstdint>

#include "json.hpp"

namespace acmtrace {

using nlohmann::ordered_json;

std::string export_json(const TraceGraph& graph) {
    ordered_json doc;
    doc["version"] = kDocumentVersion;
    auto& artifacts = doc["artifacts"] = ordered_json::array();
    for (const auto& [id, a] : graph.artifacts()) {
        ordered_json entry;
        entry["id"] = a.id;
        entry["kind"] = kind_name(a.kind);
        entry["name"] = a.name;
        if (a.description) entry["description"] = *a.description;
        if (!a.attrs.empty()) {
            ordered_json attrs;
            for (const auto& [k, v] : a.attrs) attrs[k] = v;
            entry["attrs"] = std::move(attrs);
        }
        artifacts.push_back(std::move(entry));
    }
    auto& links = doc["links"] = ordered_json::array();
    for (const auto& l : graph.links()) {
        ordered_json entry;
        entry["kind"] = link_kind_name(l.kind);
        entry["source"] = l.source;
        entry["target"] = l.target;
        if (l.rationale) entry["rationale"] = *l.rationale;
        if (l.seq) entry["seq"] = *l.seq;
        links.push_back(std::move(entry));
    }
    return doc.dump(2) + "\n";
}

namespace {

struct Importer {
    std::string_view file;
    ImportResult out;

    SourceLocation loc() const { return {std::string(file), 1, 1}; }

    void error(std::string rule, std::string msg) {
        out.diagnostics.push_back({std::move(rule), Severity::Error, std::move(msg), loc(), {}});
    }

    void artifact(const ordered_json& entry, size_t index) {
        auto where = [&] { return "artifact entry " + std::to_string(index); };
        if (!entry.is_object()) {
            error("J005", where() + " is not an object");
            return;
        }
        Artifact a;
        a.loc = loc();
        if (!entry.contains("id") || !entry["id"].is_string() ||
            !is_valid_id(entry["id"].get<std::string>())) {
            error("J005", where() + " has a missing or invalid id");
            return;
        }
        a.id = entry["id"].get<std::string>();
        if (!entry.contains("kind") || !entry["kind"].is_string()) {
            error("J005", where() + " ('" + a.id + "') has no kind");
            return;
        }
        auto kind = kind_from_name(entry["kind"].get<std::string>());
        if (!kind) {
            error("J003", "unknown artifact kind '" + entry["kind"].get<std::string>() +
                              "' in " + where() + " ('" + a.id + "')");
            return;
        }
        a.kind = *kind;
        if (!entry.contains("name") || !entry["name"].is_string() ||
            entry["name"].get<std::string>().empty()) {
            error("J005", where() + " ('" + a.id + "') has a missing or empty name");
            return;
        }
        a.name = entry["name"].get<std::string>();
        if (entry.contains("description")) {
            if (!entry["description"].is_string()) {
                error("J005", where() + " ('" + a.id + "') has a non-text description");
                return;
            }
            a.description = entry["description"].get<std::string>();
        }
        if (entry.contains("attrs")) {
            if (!entry["attrs"].is_object()) {
                error("J005", where() + " ('" + a.id + "') has a non-object attrs field");
                return;
            }
            for (const auto& [k, v] : entry["attrs"].items()) {
                if (!v.is_string()) {
                    error("J005", where() + " ('" + a.id + "') attr '" + k + "' is not text");
                    return;
                }
                a.attrs[k] = v.get<std::string>();
            }
        }
        out.artifacts.push_back(std::move(a));
    }

    void link(const ordered_json& entry, size_t index) {
        auto where = [&] { return "link entry " + std::to_string(index); };
        if (!entry.is_object()) {
            error("J005", where() + " is not an object");
            return;
        }
        TraceLink l;
        l.loc = loc();
        if (!entry.contains("kind") || !entry["kind"].is_string()) {
            error("J005", where() + " has no kind");
            return;
        }
        auto kind = link_kind_from_name(entry["kind"].get<std::string>());
        if (!kind) {
            error("J004",
                  "unknown link kind '" + entry["kind"].get<std::string>() + "' in " + where());
            return;
        }
        l.kind = *kind;
        for (const char* field : {"source", "target"}) {
            if (!entry.contains(field) || !entry[field].is_string() ||
                !is_valid_id(entry[field].get<std::string>())) {
                error("J005", where() + " has a missing or invalid " + field);
                return;
            }
        }
        l.source = entry["source"].get<std::string>();
        l.target = entry["target"].get<std::string>();
        if (entry.contains("rationale")) {
            if (!entry["rationale"].is_string()) {
                error("J005", where() + " has a non-text rationale");
                return;
            }
            l.rationale = entry["rationale"].get<std::string>();
        }
        if (entry.contains("seq")) {
            if (l.kind != LinkKind::RealizedBy) {
                error("J005", where() + " carries seq but is not a realized_by link");
                return;
            }
            if (!entry["seq"].is_number_integer() || entry["seq"].get<long long>() < 1 ||
                entry["seq"].get<long long>() > INT32_MAX) {
                error("J005", where() + " has a non-positive or non-integer seq");
                return;
            }
            l.seq = entry["seq"].get<int>();
        }
        out.links.push_back(std::move(l));
    }
};

}  // namespace

ImportResult import_json(std::string_view text, std::string_view file_name) {
    Importer imp{file_name, {}};
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const std::exception& e) {
        imp.error("J001", std::string("malformed document: ") + e.what());
        return std::move(imp.out);
    }
    if (!doc.is_object()) {
        imp.error("J001", "malformed document: top level is not an object");
        return std::move(imp.out);
    }
    if (!doc.contains("version") || !doc["version"].is_string()) {
        imp.error("J002", "missing document version");
        return std::move(imp.out);
    }
    if (doc["version"].get<std::string>() != kDocumentVersion) {
        imp.error("J002", "unsupported document version '" +
                              doc["version"].get<std::string>() + "' (expected \"" +
                              std::string(kDocumentVersion) + "\")");
        return std::move(imp.out);
    }
    for (const char* field : {"artifacts", "links"}) {
        if (doc.contains(field) && !doc[field].is_array()) {
            imp.error("J001", std::string("malformed document: '") + field + "' is not an array");
            return std::move(imp.out);
        }
    }
    if (doc.contains("artifacts")) {
        size_t i = 0;
        for (const auto& entry : doc["artifacts"]) imp.artifact(entry, i++);
    }
    if (doc.contains("links")) {
        size_t i = 0;
        for (const auto& entry : doc["links"]) imp.link(entry, i++);
    }
    return std::move(imp.out);
}

namespace {

std::string dot_quote(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

std::string dot_label(const Artifact& a) {
    std::string text(kind_name(a.kind));
    text += "\\n";  // literal \n: DOT renders it as a line break
    for (char c : a.name) {
        if (c == '"' || c == '\\') text += '\\';
        text += c;
    }
    return "\"" + text + "\"";
}

}  // namespace

std::string export_dot(const TraceGraph& graph) {
    std::string out = "digraph model {\n";
    for (int layer = 0; layer <= 5; ++layer) {
        out += "  subgraph cluster_layer_" + std::to_string(layer) + " {\n";
        out += "    label=\"layer " + std::to_string(layer) + "\";\n";
        for (const auto& [id, a] : graph.artifacts()) {
            if (layer_of(a.kind) == layer) {
                out += "    " + dot_quote(id) + " [label=" + dot_label(a) + "];\n";
            }
        }
        out += "  }\n";
    }
    out += "  subgraph cluster_requirements {\n    label=\"requirements\";\n";
    for (const auto& [id, a] : graph.artifacts()) {
        if (a.kind == ArtifactKind::Requirement) {
            out += "    " + dot_quote(id) + " [label=" + dot_label(a) + "];\n";
        }
    }
    out += "  }\n";
    for (const auto& l : graph.links()) {
        out += "  " + dot_quote(l.source) + " -> " + dot_quote(l.target) + " [label=\"" +
               std::string(link_kind_name(l.kind)) + "\"];\n";
    }
    out += "}\n";
    return out;
}

}  // namespace acmtrace
