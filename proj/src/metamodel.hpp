// Typed artifact/link universe and the in-memory traceability graph.
//
// Thirteen artifact kinds spread over six abstraction layers (surveys at the
// top, data classes at the bottom; requirements sit outside the layering) and
// twelve link kinds with a fixed legality table. Eight link kinds are
// refinement links: they carry trace chains from abstract to concrete.
#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "diagnostics.hpp"

namespace acmtrace {

enum class ArtifactKind : unsigned char {
    SurveyArtifact,
    Requirement,
    BusinessProcess,
    BusinessFunction,
    BusinessOperation,
    AutomatedFunction,
    OperationService,
    Dialogue,
    ViewFunction,
    FunctionalComponent,
    SoftwareModule,
    DataClass,
    ClassMethod,
};

inline constexpr int kArtifactKindCount = 13;

enum class LinkKind : unsigned char {
    Justifies,
    Constrains,
    Refines,
    Decomposes,
    Contains,
    AutomatedBy,
    BundledIn,
    RealizedBy,
    Performs,
    AllocatedTo,
    MemberOf,
    SubmodelOf,
};

inline constexpr int kLinkKindCount = 12;

std::string_view kind_name(ArtifactKind k);     // "SurveyArtifact", ...
std::string_view kind_keyword(ArtifactKind k);  // DSL keyword: "survey", ...
std::optional<ArtifactKind> kind_from_name(std::string_view s);
std::optional<ArtifactKind> kind_from_keyword(std::string_view s);

std::string_view link_kind_name(LinkKind k);  // "justifies", ...
std::optional<LinkKind> link_kind_from_name(std::string_view s);

// Abstraction layer, 0 (survey) .. 5 (data). Requirement has none.
std::optional<int> layer_of(ArtifactKind k);

// Layer used only to pick the abstract side of a matrix; requirements are
// slotted right below surveys so justifies keeps its orientation.
int orientation_layer(ArtifactKind k);

struct LegalPair {
    LinkKind kind;
    ArtifactKind source;
    ArtifactKind target;
};

// The full legality table (30 pairs).
std::span<const LegalPair> legality_table();

bool is_legal(LinkKind kind, ArtifactKind source, ArtifactKind target);

// Refinement links participate in trace chains; the others are structural.
bool is_refinement(LinkKind k);

enum class LinkEnd { Source, Target };

// For refinement kinds, which declared endpoint is the more abstract one.
LinkEnd abstract_end(LinkKind k);

// Identifiers: [A-Za-z_][A-Za-z0-9_.-]*, case-sensitive.
bool is_valid_id(std::string_view id);

struct Artifact {
    std::string id;
    ArtifactKind kind = ArtifactKind::SurveyArtifact;
    std::string name;
    std::optional<std::string> description;
    std::map<std::string, std::string> attrs;
    SourceLocation loc;
};

struct TraceLink {
    LinkKind kind = LinkKind::Justifies;
    std::string source;
    std::string target;
    std::optional<std::string> rationale;
    std::optional<int> seq;  // realized_by only
    SourceLocation loc;
};

// Abstract/concrete endpoint of a link as oriented by abstract_end().
const std::string& abstract_node(const TraceLink& l);
const std::string& concrete_node(const TraceLink& l);

// Immutable after build_graph; safe for any number of concurrent readers.
class TraceGraph {
public:
    TraceGraph(const TraceGraph&) = delete;
    TraceGraph& operator=(const TraceGraph&) = delete;
    TraceGraph(TraceGraph&&) = default;
    TraceGraph& operator=(TraceGraph&&) = default;

    // Sorted by id.
    const std::map<std::string, Artifact, std::less<>>& artifacts() const { return artifacts_; }
    // Sorted by (source, kind name, target).
    const std::vector<TraceLink>& links() const { return links_; }

    const Artifact* find(std::string_view id) const;

    // Out-links sorted by (target, kind name); in-links by (source, kind name).
    const std::vector<const TraceLink*>& out(const std::string& id) const;
    const std::vector<const TraceLink*>& in(const std::string& id) const;

    int count_out(const std::string& id, LinkKind k) const;
    int count_in(const std::string& id, LinkKind k) const;

private:
    TraceGraph() = default;
    friend struct GraphBuilder;

    std::map<std::string, Artifact, std::less<>> artifacts_;
    std::vector<TraceLink> links_;
    std::map<std::string, std::vector<const TraceLink*>, std::less<>> out_;
    std::map<std::string, std::vector<const TraceLink*>, std::less<>> in_;
};

struct BuildResult {
    std::optional<TraceGraph> graph;
    std::vector<Diagnostic> diagnostics;  // E001..E004, all collected

    bool ok() const { return graph.has_value(); }
};

// Resolves endpoints, checks legality and duplicates, and builds the indexed
// graph. Collects every error instead of stopping at the first one.
BuildResult build_graph(std::vector<Artifact> artifacts, std::vector<TraceLink> links);

}  // namespace acmtrace
