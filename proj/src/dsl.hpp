// Parser for the plain-text model format (.acm).
//
// Grammar (whitespace-insensitive, '#' starts a line comment):
//   model        = { statement } ;
//   statement    = artifactDecl | linkDecl ;
//   artifactDecl = kindKw ident textLiteral [ attrBlock ] ;
//   kindKw       = "survey" | "requirement" | "process" | "function"
//                | "operation" | "autofn" | "service" | "dialogue"
//                | "viewfn" | "component" | "module" | "class" | "method" ;
//   attrBlock    = "{" { ident ":" (textLiteral | ident | integer) [";"] } "}" ;
//   linkDecl     = "trace" ident "-" linkKw "->" ident [ textLiteral ] [ attrBlock ] ;
//   linkKw       = one of the twelve link kind names ;
//
// Text literals are double-quoted with \" and \\ escapes only. The optional
// literal on a linkDecl is the rationale. The attr `seq: <int>` is accepted
// on realized_by links only; an artifact attr `description` fills the
// artifact's description field. Syntax errors are recovered at the next
// statement keyword so one bad statement does not poison the rest.
#pragma once

#include <filesystem>
#include <string_view>

#include "metamodel.hpp"

namespace acmtrace {

struct ParseResult {
    std::vector<Artifact> artifacts;
    std::vector<TraceLink> links;
    std::vector<Diagnostic> diagnostics;
    bool io_error = false;

    bool has_errors() const { return io_error || acmtrace::has_errors(diagnostics); }
};

ParseResult parse(std::string_view source_text, std::string_view file_name);

// Reads the file and parses it; a read failure yields io_error plus a single
// P000 diagnostic.
ParseResult parse_file(const std::filesystem::path& path);

}  // namespace acmtrace
