#include "fdrm/serialize.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>
#include <string>

#include "fdrm/ferrers.hpp"

namespace fdrm {

namespace {

void fail(const std::string& why) { throw std::invalid_argument("code document: " + why); }

u64 parse_number(const std::string& s, const char* what) {
    u64 v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        fail(std::string("bad number for ") + what);
    return v;
}

u64 expect_key(const std::string& line, const char* key) {
    std::string prefix = std::string(key) + "=";
    if (line.rfind(prefix, 0) != 0) fail(std::string("expected ") + prefix + "...");
    return parse_number(line.substr(prefix.size()), key);
}

}  // namespace

std::string serialize_code(const RankCode& c) {
    if (!c.diagram) throw std::invalid_argument("serialize_code: code has no diagram");
    const FieldCtx* cx = c.ctx.get();
    std::ostringstream out;
    out << "p=" << cx->p << "\n";
    out << "e=" << cx->e << "\n";
    out << "m=" << c.m << "\n";
    out << "n=" << c.n << "\n";
    out << "k=" << c.k() << "\n";
    out << "delta=" << c.delta_claimed << "\n";
    out << "diagram=" << diagram_profile_string(*c.diagram) << "\n";
    out << "basis:\n";
    bool wide = cx->q > 9;
    for (std::size_t b = 0; b < c.k(); ++b) {
        if (b) out << "\n";
        for (std::size_t i = 0; i < c.m; ++i) {
            for (std::size_t j = 0; j < c.n; ++j) {
                if (wide && j) out << " ";
                out << c.basis[b].at(i, j);
            }
            out << "\n";
        }
    }
    return out.str();
}

CodeDocument parse_code_document(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    for (char ch : text) {
        if (ch == '\n') {
            lines.push_back(cur);
            cur.clear();
        } else if (ch == '\r') {
            fail("carriage returns not allowed");
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) fail("missing final newline");
    std::size_t at = 0;
    auto next = [&]() -> const std::string& {
        if (at >= lines.size()) fail("unexpected end of document");
        return lines[at++];
    };
    CodeDocument doc;
    doc.p = expect_key(next(), "p");
    doc.e = expect_key(next(), "e");
    doc.m = expect_key(next(), "m");
    doc.n = expect_key(next(), "n");
    doc.k_header = expect_key(next(), "k");
    doc.delta = expect_key(next(), "delta");
    {
        const std::string& line = next();
        if (line.rfind("diagram=", 0) != 0) fail("expected diagram=...");
        doc.diagram = parse_diagram(line.substr(8));
    }
    if (next() != "basis:") fail("expected basis: line");
    if (doc.m == 0 || doc.n == 0) fail("empty matrix shape");
    if (doc.delta == 0) fail("delta must be positive");
    if (doc.diagram.m() != doc.m || doc.diagram.n() != doc.n)
        fail("diagram shape disagrees with m/n header");
    doc.ctx = make_field(doc.p, doc.e, 1);
    u64 q = doc.ctx->q;
    bool wide = q > 9;
    auto parse_row = [&](const std::string& line, MatFq& mat, std::size_t i) {
        if (wide) {
            std::istringstream is(line);
            std::string tok;
            std::size_t j = 0;
            while (is >> tok) {
                if (j >= doc.n) fail("too many entries in a row");
                u64 v = parse_number(tok, "entry");
                if (v >= q) fail("entry out of range");
                mat.at(i, j++) = u32(v);
            }
            if (j != doc.n) fail("too few entries in a row");
        } else {
            if (line.size() != doc.n) fail("row width disagrees with n");
            for (std::size_t j = 0; j < doc.n; ++j) {
                if (line[j] < '0' || line[j] > '9') fail("non-digit entry");
                u64 v = u64(line[j] - '0');
                if (v >= q) fail("entry out of range");
                mat.at(i, j) = u32(v);
            }
        }
    };
    bool first = true;
    while (at < lines.size()) {
        if (!first) {
            if (!next().empty()) fail("expected blank line between basis blocks");
            if (at >= lines.size()) fail("trailing blank line");
        }
        first = false;
        MatFq mat(doc.ctx.get(), doc.m, doc.n);
        for (std::size_t i = 0; i < doc.m; ++i) parse_row(next(), mat, i);
        doc.basis.push_back(std::move(mat));
    }
    return doc;
}

RankCode to_rank_code(const CodeDocument& doc) {
    RankCode c;
    c.ctx = doc.ctx;
    c.m = doc.m;
    c.n = doc.n;
    c.basis = doc.basis;
    c.delta_claimed = doc.delta;
    c.diagram = doc.diagram;
    return c;
}

}  // namespace fdrm
