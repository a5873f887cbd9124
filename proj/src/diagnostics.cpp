#include "diagnostics.hpp"

#include <algorithm>
#include <tuple>

namespace acmtrace {

const char* severity_name(Severity s) {
    return s == Severity::Error ? "error" : "warning";
}

std::string format_diagnostic(const Diagnostic& d) {
    std::string out;
    out += d.loc.file;
    out += ':';
    out += std::to_string(d.loc.line);
    out += ':';
    out += std::to_string(d.loc.column);
    out += ": ";
    out += severity_name(d.severity);
    out += '[';
    out += d.rule_id;
    out += "]: ";
    out += d.message;
    return out;
}

void sort_diagnostics(std::vector<Diagnostic>& diags) {
    std::stable_sort(diags.begin(), diags.end(), [](const Diagnostic& a, const Diagnostic& b) {
        return std::tie(a.rule_id, a.loc.file, a.loc.line, a.loc.column, a.message) <
               std::tie(b.rule_id, b.loc.file, b.loc.line, b.loc.column, b.message);
    });
}

bool has_errors(const std::vector<Diagnostic>& diags) {
    for (const auto& d : diags) {
        if (d.severity == Severity::Error) return true;
    }
    return false;
}

int count_severity(const std::vector<Diagnostic>& diags, Severity s) {
    int n = 0;
    for (const auto& d : diags) {
        if (d.severity == s) ++n;
    }
    return n;
}

}  // namespace acmtrace
