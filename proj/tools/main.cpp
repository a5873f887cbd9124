// acmtrace command line front end. Talks to the engine exclusively through
// the C API; results go to stdout, diagnostics to stderr.
#include <cstdio>
#include <fstream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "acmtrace/acmtrace.h"

namespace {

constexpr int kExitClean = 0;
constexpr int kExitFindings = 1;  // validation/build errors, or warnings under --deny-warnings
constexpr int kExitUsage = 2;     // parse, IO or usage failure

struct ModelHandle {
    acm_model* model = nullptr;
    ~ModelHandle() { acm_model_free(model); }
};

struct OwnedString {
    char* s = nullptr;
    ~OwnedString() { acm_string_free(s); }
};

int status_exit(acm_status status) {
    switch (status) {
        case ACM_OK: return kExitClean;
        case ACM_E_MODEL:
        case ACM_E_VALIDATION: return kExitFindings;
        default: return kExitUsage;
    }
}

void print_diagnostics(const acm_model* model) {
    size_t n = acm_model_diagnostic_count(model);
    for (size_t i = 0; i < n; ++i) {
        OwnedString line;
        if (acm_model_diagnostic_text(model, i, &line.s) == ACM_OK) {
            std::fprintf(stderr, "%s\n", line.s);
        }
    }
}

// Loads the model and prints its diagnostics. Returns kExitUsage on IO
// failure, otherwise kExitClean with the handle filled in.
int load_model(const std::string& path, ModelHandle& handle, bool quiet = false) {
    acm_status status = acm_model_load_file(path.c_str(), &handle.model);
    if (status != ACM_OK) {
        std::fprintf(stderr, "error: %s\n", acm_last_error());
        return kExitUsage;
    }
    if (!quiet) print_diagnostics(handle.model);
    return kExitClean;
}

int run_check(const std::string& path, const std::string& format, bool deny_warnings) {
    ModelHandle handle;
    bool json = format == "json";
    if (int rc = load_model(path, handle, /*quiet=*/json); rc != kExitClean) return rc;
    if (json) {
        OwnedString doc;
        if (acm_model_diagnostics_json(handle.model, &doc.s) != ACM_OK) {
            std::fprintf(stderr, "error: %s\n", acm_last_error());
            return kExitUsage;
        }
        std::fputs(doc.s, stdout);
    }
    if (!acm_model_parse_ok(handle.model)) return kExitUsage;
    if (acm_model_error_count(handle.model) > 0) return kExitFindings;
    if (deny_warnings && acm_model_warning_count(handle.model) > 0) return kExitFindings;
    return kExitClean;
}

// Shared shape of trace/matrix/clusters/export/stats: load, run one C API
// call, print the returned text.
template <class Fn>
int run_op(const std::string& path, Fn&& op) {
    ModelHandle handle;
    if (int rc = load_model(path, handle); rc != kExitClean) return rc;
    OwnedString out;
    acm_status status = op(handle.model, &out.s);
    if (status != ACM_OK) {
        std::fprintf(stderr, "error: %s\n", acm_last_error());
        return status_exit(status);
    }
    if (out.s) std::fputs(out.s, stdout);
    return kExitClean;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"traceability engine for seamless architecture models"};
    app.require_subcommand(1);

    std::string path;
    std::string check_format = "text";
    std::string matrix_format = "csv";
    std::string clusters_format = "text";
    std::string export_format = "json";
    std::string from_id, direction = "forward", to_kind;
    std::string rows, cols;
    std::string out_file;
    bool deny_warnings = false;
    int max_chains = 1000;
    int max_depth = 0;
    int cap = 1000;

    auto* check = app.add_subcommand("check", "parse and validate a model");
    check->add_option("path", path)->required();
    check->add_option("--format", check_format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    check->add_flag("--deny-warnings", deny_warnings, "warnings also fail the check");

    auto* trace = app.add_subcommand("trace", "list trace chains from an artifact");
    trace->add_option("path", path)->required();
    trace->add_option("--from", from_id, "artifact id to start from")->required();
    trace->add_option("--dir", direction, "forward or back")
        ->default_val("forward")
        ->check(CLI::IsMember({"forward", "back"}));
    trace->add_option("--to-kind", to_kind, "keep only chains ending at this kind");
    trace->add_option("--max-chains", max_chains, "truncate after this many chains")
        ->default_val(1000);
    trace->add_option("--max-depth", max_depth, "limit chain length");

    auto* matrix = app.add_subcommand("matrix", "build a traceability matrix");
    matrix->add_option("path", path)->required();
    matrix->add_option("--rows", rows, "row artifact kind")->required();
    matrix->add_option("--cols", cols, "column artifact kind")->required();
    matrix->add_option("--format", matrix_format, "csv, html or text")
        ->check(CLI::IsMember({"csv", "html", "text"}));
    matrix->add_option("--cap", cap, "saturate chain counts here");

    auto* clusters = app.add_subcommand("clusters", "report per-service data submodels");
    clusters->add_option("path", path)->required();
    clusters->add_option("--format", clusters_format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));

    auto* exp = app.add_subcommand("export", "export the graph");
    exp->add_option("path", path)->required();
    exp->add_option("--format", export_format, "json or dot")
        ->check(CLI::IsMember({"json", "dot"}));
    exp->add_option("-o,--output", out_file, "write to a file instead of stdout");

    auto* stats = app.add_subcommand("stats", "print model statistics");
    stats->add_option("path", path)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitClean : kExitUsage;
    }

    if (check->parsed()) return run_check(path, check_format, deny_warnings);

    if (trace->parsed()) {
        return run_op(path, [&](acm_model* m, char** out) {
            int overflowed = 0;
            acm_status status =
                acm_model_trace(m, from_id.c_str(), direction.c_str(),
                                to_kind.empty() ? nullptr : to_kind.c_str(), max_chains,
                                max_depth, out, &overflowed);
            if (status == ACM_OK && overflowed) {
                std::fprintf(stderr, "note: chain list truncated at %d chains\n", max_chains);
            }
            return status;
        });
    }

    if (matrix->parsed()) {
        return run_op(path, [&](acm_model* m, char** out) {
            return acm_model_matrix(m, rows.c_str(), cols.c_str(), cap, matrix_format.c_str(), out);
        });
    }

    if (clusters->parsed()) {
        return run_op(path, [&](acm_model* m, char** out) {
            return acm_model_clusters(m, clusters_format.c_str(), out);
        });
    }

    if (exp->parsed()) {
        ModelHandle handle;
        if (int rc = load_model(path, handle); rc != kExitClean) return rc;
        OwnedString out;
        acm_status status = acm_model_export(handle.model, export_format.c_str(), &out.s);
        if (status != ACM_OK) {
            std::fprintf(stderr, "error: %s\n", acm_last_error());
            return status_exit(status);
        }
        if (out_file.empty()) {
            std::fputs(out.s, stdout);
        } else {
            std::ofstream sink(out_file, std::ios::binary);
            sink << out.s;
            if (!sink) {
                std::fprintf(stderr, "error: cannot write '%s'\n", out_file.c_str());
                return kExitUsage;
            }
        }
        return kExitClean;
    }

    if (stats->parsed()) {
        return run_op(path, [&](acm_model* m, char** out) { return acm_model_stats(m, out); });
    }

    return kExitUsage;
}
