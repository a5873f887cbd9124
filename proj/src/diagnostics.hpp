// Source locations and diagnostics shared by the parser, graph builder and
// rule engine.
#pragma once

#include <string>
#include <vector>

namespace acmtrace {

struct SourceLocation {
    std::string file;
    int line = 1;    // 1-based
    int column = 1;  // 1-based, UTF-8 byte column of the token start
};

enum class Severity { Warning, Error };

const char* severity_name(Severity s);

struct Diagnostic {
    std::string rule_id;  // P*: parser, E*: graph builder, J*: JSON import, R*: validator
    Severity severity = Severity::Error;
    std::string message;
    SourceLocation loc;
    std::vector<std::string> related;  // artifact ids involved, sorted
};

// "<file>:<line>:<col>: <severity>[<rule_id>]: <message>"
std::string format_diagnostic(const Diagnostic& d);

// Sorts by (rule_id, file, line, column, message).
void sort_diagnostics(std::vector<Diagnostic>& diags);

bool has_errors(const std::vector<Diagnostic>& diags);
int count_severity(const std::vector<Diagnostic>& diags, Severity s);

}  // namespace acmtrace
