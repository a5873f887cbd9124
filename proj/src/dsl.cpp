#include "dsl.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>

namespace acmtrace {

namespace {

enum class Tok {
    Ident,
    Text,
    Int,
    LBrace,
    RBrace,
    Colon,
    Semicolon,
    Dash,
    Arrow,
    End,
    Bad,
};

struct Token {
    Tok type = Tok::End;
    std::string text;       // ident spelling or unescaped literal
    long long value = 0;    // Int
    SourceLocation loc;
};

bool ident_head(char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}
bool ident_tail(char c) {
    return ident_head(c) || (c >= '0' && c <= '9') || c == '.' || c == '-';
}

class Lexer {
public:
    Lexer(std::string_view src, std::string_view file, std::vector<Diagnostic>& diags)
        : src_(src), file_(file), diags_(diags) {
        // Tolerate a UTF-8 byte order mark; columns still start at 1.
        if (src_.substr(0, 3) == "\xEF\xBB\xBF") {
            pos_ = 3;
            line_start_ = 3;
        }
    }

    Token next() {
        skip_blank();
        Token t;
        t.loc = here();
        if (pos_ >= src_.size()) {
            t.type = Tok::End;
            return t;
        }
        char c = src_[pos_];
        if (ident_head(c)) {
            size_t start = pos_;
            while (pos_ < src_.size() && ident_tail(src_[pos_])) ++pos_;
            t.type = Tok::Ident;
            t.text = std::string(src_.substr(start, pos_ - start));
            return t;
        }
        if (c >= '0' && c <= '9') {
            size_t start = pos_;
            while (pos_ < src_.size() && src_[pos_] >= '0' && src_[pos_] <= '9') ++pos_;
            auto digits = src_.substr(start, pos_ - start);
            t.type = Tok::Int;
            auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), t.value);
            if (ec != std::errc()) {
                error(t.loc, "integer literal out of range");
                t.type = Tok::Bad;
            }
            return t;
        }
        switch (c) {
            case '{': ++pos_; t.type = Tok::LBrace; return t;
            case '}': ++pos_; t.type = Tok::RBrace; return t;
            case ':': ++pos_; t.type = Tok::Colon; return t;
            case ';': ++pos_; t.type = Tok::Semicolon; return t;
            case '-':
                ++pos_;
                if (pos_ < src_.size() && src_[pos_] == '>') {
                    ++pos_;
                    t.type = Tok::Arrow;
                } else {
                    t.type = Tok::Dash;
                }
                return t;
            case '"': return text_literal(t);
            default:
                ++pos_;
                error(t.loc, std::string("unexpected character '") + c + "'");
                t.type = Tok::Bad;
                return t;
        }
    }

private:
    SourceLocation here() const {
        return {std::string(file_), line_, static_cast<int>(pos_ - line_start_) + 1};
    }

    void newline() {
        ++line_;
        line_start_ = pos_;
    }

    void skip_blank() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '\n') {
                ++pos_;
                newline();
            } else if (c == ' ' || c == '\t' || c == '\r') {
                ++pos_;
            } else if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    Token text_literal(Token t) {
        ++pos_;  // opening quote
        std::string out;
        bool bad = false;
        while (true) {
            if (pos_ >= src_.size() || src_[pos_] == '\n') {
                error(t.loc, "unterminated text literal");
                t.type = Tok::Bad;
                return t;
            }
            char c = src_[pos_];
            if (c == '"') {
                ++pos_;
                break;
            }
            if (c == '\\') {
                if (pos_ + 1 >= src_.size()) {
                    error(t.loc, "unterminated text literal");
                    t.type = Tok::Bad;
                    return t;
                }
                char e = src_[pos_ + 1];
                if (e == '"' || e == '\\') {
                    out += e;
                    pos_ += 2;
                    continue;
                }
                if (!bad) {
                    error(here(), std::string("invalid escape sequence '\\") + e + "'");
                    bad = true;
                }
                pos_ += 2;
                continue;
            }
            out += c;
            ++pos_;
        }
        t.type = bad ? Tok::Bad : Tok::Text;
        t.text = std::move(out);
        return t;
    }

    void error(const SourceLocation& loc, std::string msg) {
        diags_.push_back({"P001", Severity::Error, std::move(msg), loc, {}});
    }

    std::string_view src_;
    std::string_view file_;
    std::vector<Diagnostic>& diags_;
    size_t pos_ = 0;
    size_t line_start_ = 0;
    int line_ = 1;
};

struct AttrEntry {
    std::string key;
    std::string value;
    bool is_int = false;
    long long int_value = 0;
    SourceLocation loc;
};

class Parser {
public:
    Parser(std::string_view src, std::string_view file, ParseResult& out)
        : lexer_(src, file, out.diagnostics), out_(out) {
        advance();
    }

    void run() {
        while (cur_.type != Tok::End) {
            if (cur_.type == Tok::Ident) {
                if (cur_.text == "trace") {
                    if (!link_decl()) recover();
                    continue;
                }
                if (auto kind = kind_from_keyword(cur_.text)) {
                    if (!artifact_decl(*kind)) recover();
                    continue;
                }
            }
            // Bad tokens were already reported by the lexer.
            if (cur_.type != Tok::Bad) {
                error(cur_.loc, "expected an artifact or trace declaration");
            }
            advance();
            recover();
        }
    }

private:
    void advance() { cur_ = lexer_.next(); }

    void error(const SourceLocation& loc, std::string msg) {
        out_.diagnostics.push_back({"P001", Severity::Error, std::move(msg), loc, {}});
    }

    void warn(const SourceLocation& loc, std::string msg) {
        out_.diagnostics.push_back({"P002", Severity::Warning, std::move(msg), loc, {}});
    }

    // Skip to the next token that can start a statement. The failed
    // production has always consumed at least one token, so not advancing
    // past a keyword already under the cursor is safe.
    void recover() {
        while (cur_.type != Tok::End) {
            if (cur_.type == Tok::Ident &&
                (cur_.text == "trace" || kind_from_keyword(cur_.text))) {
                return;
            }
            advance();
        }
    }

    bool expect_ident(std::string& into, SourceLocation& loc, const char* what) {
        if (cur_.type != Tok::Ident) {
            error(cur_.loc, std::string("expected ") + what);
            return false;
        }
        into = cur_.text;
        loc = cur_.loc;
        advance();
        return true;
    }

    bool expect_text(std::string& into, const char* what) {
        if (cur_.type != Tok::Text) {
            error(cur_.loc, std::string("expected ") + what);
            return false;
        }
        into = cur_.text;
        advance();
        return true;
    }

    // Returns false on a syntax error inside the block.
    bool attr_block(std::vector<AttrEntry>& entries) {
        advance();  // '{'
        while (cur_.type != Tok::RBrace) {
            if (cur_.type == Tok::End) {
                error(cur_.loc, "unterminated attribute block");
                return false;
            }
            AttrEntry e;
            if (cur_.type != Tok::Ident) {
                error(cur_.loc, "expected attribute name");
                return false;
            }
            e.key = cur_.text;
            e.loc = cur_.loc;
            advance();
            if (cur_.type != Tok::Colon) {
                error(cur_.loc, "expected ':' after attribute name");
                return false;
            }
            advance();
            if (cur_.type == Tok::Text || cur_.type == Tok::Ident) {
                e.value = cur_.text;
            } else if (cur_.type == Tok::Int) {
                e.is_int = true;
                e.int_value = cur_.value;
                e.value = std::to_string(cur_.value);
            } else {
                error(cur_.loc, "expected attribute value");
                return false;
            }
            advance();
            if (cur_.type == Tok::Semicolon) advance();
            entries.push_back(std::move(e));
        }
        advance();  // '}'
        return true;
    }

    bool artifact_decl(ArtifactKind kind) {
        SourceLocation stmt_loc = cur_.loc;
        advance();  // keyword
        Artifact a;
        a.kind = kind;
        a.loc = stmt_loc;
        SourceLocation id_loc;
        if (!expect_ident(a.id, id_loc, "an artifact id")) return false;
        if (!expect_text(a.name, "a quoted artifact name")) return false;
        if (a.name.empty()) {
            error(stmt_loc, "artifact name must not be empty");
            return false;
        }
        if (cur_.type == Tok::LBrace) {
            std::vector<AttrEntry> entries;
            if (!attr_block(entries)) return false;
            for (auto& e : entries) {
                if (e.key == "description") {
                    if (a.description) {
                        error(e.loc, "duplicate attribute 'description'");
                        return false;
                    }
                    a.description = std::move(e.value);
                } else if (!a.attrs.emplace(e.key, std::move(e.value)).second) {
                    error(e.loc, "duplicate attribute '" + e.key + "'");
                    return false;
                }
            }
        }
        out_.artifacts.push_back(std::move(a));
        return true;
    }

    bool link_decl() {
        SourceLocation stmt_loc = cur_.loc;
        advance();  // "trace"
        TraceLink l;
        l.loc = stmt_loc;
        SourceLocation loc;
        if (!expect_ident(l.source, loc, "a source artifact id")) return false;
        if (cur_.type != Tok::Dash) {
            error(cur_.loc, "expected '-' before the link kind");
            return false;
        }
        advance();
        std::string kind_text;
        if (!expect_ident(kind_text, loc, "a link kind")) return false;
        auto kind = link_kind_from_name(kind_text);
        if (!kind) {
            error(loc, "unknown link kind '" + kind_text + "'");
            return false;
        }
        l.kind = *kind;
        if (cur_.type != Tok::Arrow) {
            error(cur_.loc, "expected '->' after the link kind");
            return false;
        }
        advance();
        if (!expect_ident(l.target, loc, "a target artifact id")) return false;
        if (cur_.type == Tok::Text) {
            l.rationale = cur_.text;
            advance();
        }
        if (cur_.type == Tok::LBrace) {
            std::vector<AttrEntry> entries;
            if (!attr_block(entries)) return false;
            for (const auto& e : entries) {
                if (e.key == "seq") {
                    if (l.kind != LinkKind::RealizedBy) {
                        error(e.loc, "attribute 'seq' is only allowed on realized_by links");
                        return false;
                    }
                    if (!e.is_int || e.int_value < 1 || e.int_value > INT32_MAX) {
                        error(e.loc, "attribute 'seq' must be a positive integer");
                        return false;
                    }
                    if (l.seq) {
                        error(e.loc, "duplicate attribute 'seq'");
                        return false;
                    }
                    l.seq = static_cast<int>(e.int_value);
                } else {
                    warn(e.loc, "unsupported link attribute '" + e.key + "' ignored");
                }
            }
        }
        out_.links.push_back(std::move(l));
        return true;
    }

    Lexer lexer_;
    ParseResult& out_;
    Token cur_;
};

}  // namespace

ParseResult parse(std::string_view source_text, std::string_view file_name) {
    ParseResult result;
    Parser(source_text, file_name, result).run();
    return result;
}

ParseResult parse_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        ParseResult result;
        result.io_error = true;
        result.diagnostics.push_back({"P000", Severity::Error,
                                      "cannot read file '" + path.string() + "'",
                                      {path.string(), 1, 1},
                                      {}});
        return result;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str(), path.string());
}

}  // namespace acmtrace
