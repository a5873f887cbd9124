#include "metamodel.hpp"

#include <algorithm>
#include <array>
#include <tuple>

namespace acmtrace {

namespace {

struct KindInfo {
    std::string_view name;
    std::string_view keyword;
    int layer;  // -1 = none (Requirement)
};

constexpr std::array<KindInfo, kArtifactKindCount> kKinds = {{
    {"SurveyArtifact", "survey", 0},
    {"Requirement", "requirement", -1},
    {"BusinessProcess", "process", 1},
    {"BusinessFunction", "function", 1},
    {"BusinessOperation", "operation", 1},
    {"AutomatedFunction", "autofn", 1},
    {"OperationService", "service", 2},
    {"Dialogue", "dialogue", 3},
    {"ViewFunction", "viewfn", 3},
    {"FunctionalComponent", "component", 4},
    {"SoftwareModule", "module", 4},
    {"DataClass", "class", 5},
    {"ClassMethod", "method", 5},
}};

constexpr std::array<std::string_view, kLinkKindCount> kLinkNames = {
    "justifies",  "constrains", "refines",    "decomposes",   "contains",  "automated_by",
    "bundled_in", "realized_by", "performs",  "allocated_to", "member_of", "submodel_of",
};

using AK = ArtifactKind;
using LK = LinkKind;

constexpr LegalPair kLegality[] = {
    {LK::Justifies, AK::SurveyArtifact, AK::BusinessProcess},
    {LK::Justifies, AK::SurveyArtifact, AK::BusinessFunction},
    {LK::Justifies, AK::SurveyArtifact, AK::BusinessOperation},
    {LK::Justifies, AK::SurveyArtifact, AK::AutomatedFunction},
    {LK::Justifies, AK::SurveyArtifact, AK::Requirement},
    {LK::Decomposes, AK::BusinessProcess, AK::BusinessFunction},
    {LK::Decomposes, AK::BusinessFunction, AK::BusinessFunction},
    {LK::Decomposes, AK::BusinessFunction, AK::BusinessOperation},
    {LK::Decomposes, AK::ViewFunction, AK::SoftwareModule},
    {LK::Decomposes, AK::SoftwareModule, AK::ClassMethod},
    {LK::Contains, AK::BusinessOperation, AK::AutomatedFunction},
    {LK::AutomatedBy, AK::BusinessOperation, AK::OperationService},
    {LK::BundledIn, AK::AutomatedFunction, AK::OperationService},
    {LK::RealizedBy, AK::OperationService, AK::Dialogue},
    {LK::Performs, AK::Dialogue, AK::ViewFunction},
    {LK::Refines, AK::Requirement, AK::Requirement},
    {LK::AllocatedTo, AK::SoftwareModule, AK::FunctionalComponent},
    {LK::MemberOf, AK::ClassMethod, AK::DataClass},
    {LK::SubmodelOf, AK::DataClass, AK::OperationService},
    // constrains: a requirement can constrain anything except surveys and
    // other requirements (those use justifies/refines).
    {LK::Constrains, AK::Requirement, AK::BusinessProcess},
    {LK::Constrains, AK::Requirement, AK::BusinessFunction},
    {LK::Constrains, AK::Requirement, AK::BusinessOperation},
    {LK::Constrains, AK::Requirement, AK::AutomatedFunction},
    {LK::Constrains, AK::Requirement, AK::OperationService},
    {LK::Constrains, AK::Requirement, AK::Dialogue},
    {LK::Constrains, AK::Requirement, AK::ViewFunction},
    {LK::Constrains, AK::Requirement, AK::FunctionalComponent},
    {LK::Constrains, AK::Requirement, AK::SoftwareModule},
    {LK::Constrains, AK::Requirement, AK::DataClass},
    {LK::Constrains, AK::Requirement, AK::ClassMethod},
};

// Dense lookup built once from the table.
const bool* legality_lut() {
    static const auto lut = [] {
        static bool t[kLinkKindCount][kArtifactKindCount][kArtifactKindCount] = {};
        for (const auto& p : kLegality) {
            t[static_cast<int>(p.kind)][static_cast<int>(p.source)][static_cast<int>(p.target)] =
                true;
        }
        return &t[0][0][0];
    }();
    return lut;
}

}  // namespace

std::string_view kind_name(ArtifactKind k) { return kKinds[static_cast<int>(k)].name; }
std::string_view kind_keyword(ArtifactKind k) { return kKinds[static_cast<int>(k)].keyword; }

std::optional<ArtifactKind> kind_from_name(std::string_view s) {
    for (int i = 0; i < kArtifactKindCount; ++i) {
        if (kKinds[i].name == s) return static_cast<ArtifactKind>(i);
    }
    return std::nullopt;
}

std::optional<ArtifactKind> kind_from_keyword(std::string_view s) {
    for (int i = 0; i < kArtifactKindCount; ++i) {
        if (kKinds[i].keyword == s) return static_cast<ArtifactKind>(i);
    }
    return std::nullopt;
}

std::string_view link_kind_name(LinkKind k) { return kLinkNames[static_cast<int>(k)]; }

std::optional<LinkKind> link_kind_from_name(std::string_view s) {
    for (int i = 0; i < kLinkKindCount; ++i) {
        if (kLinkNames[i] == s) return static_cast<LinkKind>(i);
    }
    return std::nullopt;
}

std::optional<int> layer_of(ArtifactKind k) {
    int l = kKinds[static_cast<int>(k)].layer;
    if (l < 0) return std::nullopt;
    return l;
}

int orientation_layer(ArtifactKind k) {
    int l = kKinds[static_cast<int>(k)].layer;
    return l < 0 ? 1 : l;
}

std::span<const LegalPair> legality_table() { return kLegality; }

bool is_legal(LinkKind kind, ArtifactKind source, ArtifactKind target) {
    return legality_lut()[(static_cast<int>(kind) * kArtifactKindCount +
                           static_cast<int>(source)) *
                              kArtifactKindCount +
                          static_cast<int>(target)];
}

bool is_refinement(LinkKind k) {
    switch (k) {
        case LinkKind::Justifies:
        case LinkKind::Refines:
        case LinkKind::Decomposes:
        case LinkKind::Contains:
        case LinkKind::AutomatedBy:
        case LinkKind::BundledIn:
        case LinkKind::RealizedBy:
        case LinkKind::Performs:
            return true;
        case LinkKind::Constrains:
        case LinkKind::AllocatedTo:
        case LinkKind::MemberOf:
        case LinkKind::SubmodelOf:
            return false;
    }
    return false;
}

LinkEnd abstract_end(LinkKind) {
    // Every refinement kind in the legality table is declared abstract ->
    // concrete; the marker exists so traversal code never hard-codes that.
    return LinkEnd::Source;
}

bool is_valid_id(std::string_view id) {
    if (id.empty()) return false;
    auto head = [](char c) {
        return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
    };
    auto tail = [&](char c) {
        return head(c) || (c >= '0' && c <= '9') || c == '.' || c == '-';
    };
    if (!head(id[0])) return false;
    for (size_t i = 1; i < id.size(); ++i) {
        if (!tail(id[i])) return false;
    }
    return true;
}

const std::string& abstract_node(const TraceLink& l) {
    return abstract_end(l.kind) == LinkEnd::Source ? l.source : l.target;
}

const std::string& concrete_node(const TraceLink& l) {
    return abstract_end(l.kind) == LinkEnd::Source ? l.target : l.source;
}

const Artifact* TraceGraph::find(std::string_view id) const {
    auto it = artifacts_.find(id);
    return it == artifacts_.end() ? nullptr : &it->second;
}

namespace {
const std::vector<const TraceLink*> kNoLinks;
}

const std::vector<const TraceLink*>& TraceGraph::out(const std::string& id) const {
    auto it = out_.find(id);
    return it == out_.end() ? kNoLinks : it->second;
}

const std::vector<const TraceLink*>& TraceGraph::in(const std::string& id) const {
    auto it = in_.find(id);
    return it == in_.end() ? kNoLinks : it->second;
}

int TraceGraph::count_out(const std::string& id, LinkKind k) const {
    int n = 0;
    for (const TraceLink* l : out(id)) {
        if (l->kind == k) ++n;
    }
    return n;
}

int TraceGraph::count_in(const std::string& id, LinkKind k) const {
    int n = 0;
    for (const TraceLink* l : in(id)) {
        if (l->kind == k) ++n;
    }
    return n;
}

struct GraphBuilder {
    static TraceGraph make() { return TraceGraph(); }
    static std::map<std::string, Artifact, std::less<>>& artifacts(TraceGraph& g) {
        return g.artifacts_;
    }
    static std::vector<TraceLink>& links(TraceGraph& g) { return g.links_; }
    static std::map<std::string, std::vector<const TraceLink*>, std::less<>>& out(TraceGraph& g) {
        return g.out_;
    }
    static std::map<std::string, std::vector<const TraceLink*>, std::less<>>& in(TraceGraph& g) {
        return g.in_;
    }
};

namespace {

std::string loc_text(const SourceLocation& loc) {
    return loc.file + ":" + std::to_string(loc.line) + ":" + std::to_string(loc.column);
}

}  // namespace

BuildResult build_graph(std::vector<Artifact> artifacts, std::vector<TraceLink> links) {
    BuildResult result;
    auto& diags = result.diagnostics;

    TraceGraph g = GraphBuilder::make();
    auto& amap = GraphBuilder::artifacts(g);

    for (auto& a : artifacts) {
        auto [it, inserted] = amap.try_emplace(a.id, std::move(a));
        if (!inserted) {
            diags.push_back({"E001", Severity::Error,
                             "duplicate artifact id '" + it->first + "' (already declared at " +
                                 loc_text(it->second.loc) + ")",
                             a.loc,
                             {it->first}});
        }
    }

    // (kind, source, target) must be unique per model.
    std::map<std::tuple<LinkKind, std::string, std::string>, const SourceLocation*> seen;
    for (const auto& l : links) {
        const Artifact* src = nullptr;
        const Artifact* dst = nullptr;
        if (auto it = amap.find(l.source); it != amap.end()) src = &it->second;
        if (auto it = amap.find(l.target); it != amap.end()) dst = &it->second;
        if (!src) {
            diags.push_back({"E002", Severity::Error,
                             "unknown artifact '" + l.source + "' in trace link",
                             l.loc,
                             {l.source}});
        }
        if (!dst) {
            diags.push_back({"E002", Severity::Error,
                             "unknown artifact '" + l.target + "' in trace link",
                             l.loc,
                             {l.target}});
        }
        auto key = std::make_tuple(l.kind, l.source, l.target);
        if (auto it = seen.find(key); it != seen.end()) {
            diags.push_back({"E003", Severity::Error,
                             "duplicate trace link " + l.source + " - " +
                                 std::string(link_kind_name(l.kind)) + " -> " + l.target +
                                 " (already declared at " + loc_text(*it->second) + ")",
                             l.loc,
                             {l.source, l.target}});
        } else {
            seen.emplace(key, &l.loc);
        }
        if (src && dst && !is_legal(l.kind, src->kind, dst->kind)) {
            diags.push_back({"E004", Severity::Error,
                             "link kind '" + std::string(link_kind_name(l.kind)) +
                                 "' cannot connect " + std::string(kind_name(src->kind)) +
                                 " to " + std::string(kind_name(dst->kind)),
                             l.loc,
                             {l.source, l.target}});
        }
    }

    if (has_errors(diags)) {
        sort_diagnostics(diags);
        return result;
    }

    auto& stored = GraphBuilder::links(g);
    stored = std::move(links);
    std::sort(stored.begin(), stored.end(), [](const TraceLink& a, const TraceLink& b) {
        if (a.source != b.source) return a.source < b.source;
        auto ka = link_kind_name(a.kind);
        auto kb = link_kind_name(b.kind);
        if (ka != kb) return ka < kb;
        return a.target < b.target;
    });

    auto& out = GraphBuilder::out(g);
    auto& in = GraphBuilder::in(g);
    for (const auto& l : stored) {
        out[l.source].push_back(&l);
        in[l.target].push_back(&l);
    }
    for (auto& [id, v] : out) {
        std::sort(v.begin(), v.end(), [](const TraceLink* a, const TraceLink* b) {
            if (a->target != b->target) return a->target < b->target;
            return link_kind_name(a->kind) < link_kind_name(b->kind);
        });
    }
    for (auto& [id, v] : in) {
        std::sort(v.begin(), v.end(), [](const TraceLink* a, const TraceLink* b) {
            if (a->source != b->source) return a->source < b->source;
            return link_kind_name(a->kind) < link_kind_name(b->kind);
        });
    }

    result.graph = std::move(g);
    sort_diagnostics(diags);
    return result;
}

}  // namespace acmtrace
