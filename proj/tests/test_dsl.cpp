#include "doctest.h"
#include "dsl.hpp"
#include "oracle.hpp"

using namespace acmtrace;

namespace {

std::string fixture(const char* name) {
    return std::string(ACMTRACE_FIXTURE_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("empty input parses to nothing") {
    ParseResult r = parse("", "empty.acm");
    CHECK(r.artifacts.empty());
    CHECK(r.links.empty());
    CHECK(r.diagnostics.empty());
}

TEST_CASE("comment-only input parses to nothing") {
    ParseResult r = parse("# a comment\n   # another\n", "c.acm");
    CHECK(r.artifacts.empty());
    CHECK(r.links.empty());
    CHECK(r.diagnostics.empty());
}

TEST_CASE("single artifact declaration") {
    ParseResult r = parse("process BP1 \"Order fulfillment\"", "m.acm");
    REQUIRE(r.diagnostics.empty());
    REQUIRE(r.artifacts.size() == 1);
    const Artifact& a = r.artifacts[0];
    CHECK(a.id == "BP1");
    CHECK(a.kind == ArtifactKind::BusinessProcess);
    CHECK(a.name == "Order fulfillment");
    CHECK(a.loc.line == 1);
    CHECK(a.loc.column == 1);
}

TEST_CASE("every kind keyword maps to its kind") {
    ParseResult r = parse(
        "survey a1 \"x\"\nrequirement a2 \"x\"\nprocess a3 \"x\"\nfunction a4 \"x\"\n"
        "operation a5 \"x\"\nautofn a6 \"x\"\nservice a7 \"x\"\ndialogue a8 \"x\"\n"
        "viewfn a9 \"x\"\ncomponent a10 \"x\"\nmodule a11 \"x\"\nclass a12 \"x\"\n"
        "method a13 \"x\"\n",
        "kinds.acm");
    REQUIRE(r.diagnostics.empty());
    REQUIRE(r.artifacts.size() == 13);
    CHECK(r.artifacts[0].kind == ArtifactKind::SurveyArtifact);
    CHECK(r.artifacts[1].kind == ArtifactKind::Requirement);
    CHECK(r.artifacts[12].kind == ArtifactKind::ClassMethod);
}

TEST_CASE("link declaration with rationale and seq") {
    ParseResult r = parse(
        "service OS1 \"s\"\n"
        "dialogue DG1 \"d\"\n"
        "trace OS1 - realized_by -> DG1 \"opens the flow\" {seq: 2}\n",
        "m.acm");
    REQUIRE(r.diagnostics.empty());
    REQUIRE(r.links.size() == 1);
    const TraceLink& l = r.links[0];
    CHECK(l.kind == LinkKind::RealizedBy);
    CHECK(l.source == "OS1");
    CHECK(l.target == "DG1");
    CHECK(l.rationale == "opens the flow");
    CHECK(l.seq == 2);
}

TEST_CASE("seq outside realized_by is rejected") {
    ParseResult r = parse(
        "process BP1 \"p\"\nfunction BF1 \"f\"\n"
        "trace BP1 - decomposes -> BF1 {seq: 1}\n",
        "m.acm");
    CHECK(r.links.empty());
    REQUIRE(r.diagnostics.size() == 1);
    CHECK(r.diagnostics[0].severity == Severity::Error);
    CHECK(r.diagnostics[0].message.find("seq") != std::string::npos);
}

TEST_CASE("seq must be a positive integer") {
    ParseResult zero = parse(
        "service OS1 \"s\"\ndialogue DG1 \"d\"\n"
        "trace OS1 - realized_by -> DG1 {seq: 0}\n",
        "m.acm");
    CHECK(zero.links.empty());
    CHECK(zero.diagnostics.size() == 1);

    ParseResult text = parse(
        "service OS1 \"s\"\ndialogue DG1 \"d\"\n"
        "trace OS1 - realized_by -> DG1 {seq: first}\n",
        "m.acm");
    CHECK(text.links.empty());
    CHECK(text.diagnostics.size() == 1);
}

TEST_CASE("unknown link attributes warn and are dropped") {
    ParseResult r = parse(
        "process BP1 \"p\"\nfunction BF1 \"f\"\n"
        "trace BP1 - decomposes -> BF1 {weight: 3}\n",
        "m.acm");
    CHECK(r.links.size() == 1);
    REQUIRE(r.diagnostics.size() == 1);
    CHECK(r.diagnostics[0].severity == Severity::Warning);
    CHECK(r.diagnostics[0].rule_id == "P002");
    CHECK(!r.has_errors());
}

TEST_CASE("artifact attributes, description and duplicate keys") {
    ParseResult r = parse(
        "process BP1 \"p\" {owner: \"sales\"; description: \"end to end\"; priority: high}\n",
        "m.acm");
    REQUIRE(r.diagnostics.empty());
    REQUIRE(r.artifacts.size() == 1);
    CHECK(r.artifacts[0].description == "end to end");
    CHECK(r.artifacts[0].attrs.at("owner") == "sales");
    CHECK(r.artifacts[0].attrs.at("priority") == "high");

    ParseResult dup = parse("process BP1 \"p\" {owner: a; owner: b}\n", "m.acm");
    CHECK(dup.artifacts.empty());
    REQUIRE(dup.diagnostics.size() == 1);
    CHECK(dup.diagnostics[0].message.find("duplicate attribute") != std::string::npos);
}

TEST_CASE("empty artifact name is an error") {
    ParseResult r = parse("process BP1 \"\"\n", "m.acm");
    CHECK(r.artifacts.empty());
    REQUIRE(r.diagnostics.size() == 1);
    CHECK(r.diagnostics[0].message.find("name") != std::string::npos);
}

TEST_CASE("text literal escapes") {
    ParseResult r = parse("process BP1 \"say \\\"hi\\\" \\\\ done\"\n", "m.acm");
    REQUIRE(r.diagnostics.empty());
    CHECK(r.artifacts[0].name == "say \"hi\" \\ done");

    ParseResult bad = parse("process BP1 \"a\\n\"\n", "m.acm");
    CHECK(bad.artifacts.empty());
    REQUIRE(!bad.diagnostics.empty());
    CHECK(bad.diagnostics[0].message.find("invalid escape") != std::string::npos);
}

TEST_CASE("unterminated text literal is recovered at the next statement") {
    ParseResult r = parse(
        "process BP1 \"no end\n"
        "function BF1 \"fine\"\n",
        "m.acm");
    CHECK(r.artifacts.size() == 1);
    CHECK(r.artifacts[0].id == "BF1");
    REQUIRE(!r.diagnostics.empty());
    CHECK(r.diagnostics[0].message.find("unterminated") != std::string::npos);
    CHECK(r.diagnostics[0].loc.line == 1);
    CHECK(r.diagnostics[0].loc.column == 13);
}

TEST_CASE("unknown keyword yields one diagnostic at the right spot") {
    ParseResult r = parse("widget W1 \"x\"\nprocess BP1 \"p\"\n", "m.acm");
    CHECK(r.artifacts.size() == 1);
    REQUIRE(!r.diagnostics.empty());
    CHECK(r.diagnostics[0].loc.line == 1);
    CHECK(r.diagnostics[0].loc.column == 1);
}

TEST_CASE("malformed arrows are diagnosed with locations") {
    ParseResult r = parse("trace BP1 - decomposes - BF1\n", "m.acm");
    CHECK(r.links.empty());
    REQUIRE(r.diagnostics.size() == 1);
    CHECK(r.diagnostics[0].message.find("'->'") != std::string::npos);
    CHECK(r.diagnostics[0].loc.line == 1);
    CHECK(r.diagnostics[0].loc.column == 24);

    ParseResult missing = parse("trace BP1 decomposes -> BF1\n", "m.acm");
    CHECK(missing.links.empty());
    CHECK(!missing.diagnostics.empty());

    ParseResult unknown = parse("trace BP1 - explodes -> BF1\n", "m.acm");
    CHECK(unknown.links.empty());
    REQUIRE(!unknown.diagnostics.empty());
    CHECK(unknown.diagnostics[0].message.find("unknown link kind 'explodes'") !=
          std::string::npos);
    CHECK(unknown.diagnostics[0].loc.column == 13);
}

TEST_CASE("recovery: broken statements interleaved with valid ones") {
    // Three valid statements, three broken ones.
    ParseResult r = parse(
        "process BP1 \"ok\"\n"
        "process \"missing id\"\n"
        "function BF1 \"ok\"\n"
        "trace BP1 -> BF9\n"
        "trace BP1 - decomposes -> BF1\n"
        "trace - decomposes -> BF1\n",
        "m.acm");
    CHECK(r.artifacts.size() == 2);
    CHECK(r.links.size() == 1);
    CHECK(r.links[0].target == "BF1");
    CHECK(r.diagnostics.size() >= 3);
    for (const auto& d : r.diagnostics) CHECK(d.severity == Severity::Error);
}

TEST_CASE("column positions are UTF-8 byte columns") {
    // The two-byte e-acute in the name shifts the error column one byte past
    // the character count: the '}' sits at byte column 25.
    ParseResult r = parse("process BP1 \"caf\xc3\xa9\" {x: }\n", "m.acm");
    REQUIRE(!r.diagnostics.empty());
    CHECK(r.diagnostics[0].loc.line == 1);
    CHECK(r.diagnostics[0].loc.column == 25);
}

TEST_CASE("a UTF-8 byte order mark is tolerated") {
    ParseResult r = parse("\xEF\xBB\xBFprocess BP1 \"p\"\n", "bom.acm");
    REQUIRE(r.diagnostics.empty());
    REQUIRE(r.artifacts.size() == 1);
    CHECK(r.artifacts[0].loc.column == 1);
}

TEST_CASE("CRLF input parses like LF input") {
    ParseResult crlf = parse("process BP1 \"p\"\r\nfunction BF1 \"f\"\r\n", "m.acm");
    REQUIRE(crlf.diagnostics.empty());
    CHECK(crlf.artifacts.size() == 2);
    CHECK(crlf.artifacts[1].loc.line == 2);
}

TEST_CASE("identifiers may contain dots and dashes") {
    ParseResult r = parse(
        "module a-b.c \"m\"\ncomponent FC1 \"c\"\n"
        "trace a-b.c - allocated_to -> FC1\n",
        "m.acm");
    REQUIRE(r.diagnostics.empty());
    CHECK(r.artifacts[0].id == "a-b.c");
    CHECK(r.links[0].source == "a-b.c");
}

TEST_CASE("parse_file on fix1 and on a missing path") {
    ParseResult ok = parse_file(fixture("fix1.acm"));
    CHECK(!ok.io_error);
    CHECK(ok.artifacts.size() == 12);
    CHECK(ok.links.size() == 12);

    ParseResult missing = parse_file(fixture("does_not_exist.acm"));
    CHECK(missing.io_error);
    CHECK(missing.has_errors());
    REQUIRE(missing.diagnostics.size() == 1);
    CHECK(missing.diagnostics[0].rule_id == "P000");
}

TEST_CASE("diagnostic text format") {
    Diagnostic d{"P001", Severity::Error, "boom", {"m.acm", 3, 7}, {}};
    CHECK(format_diagnostic(d) == "m.acm:3:7: error[P001]: boom");
}
