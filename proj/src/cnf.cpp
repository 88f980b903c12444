#include "shorsat/cnf.hpp"

#include <charconv>
#include <sstream>

namespace shorsat {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::MalformedHeader: return "MalformedHeader";
        case Errc::MalformedClause: return "MalformedClause";
        case Errc::ClauseCountMismatch: return "ClauseCountMismatch";
        case Errc::VariableOutOfRange: return "VariableOutOfRange";
        case Errc::WidthExceeded: return "WidthExceeded";
        case Errc::EmptyFormula: return "EmptyFormula";
        case Errc::LengthMismatch: return "LengthMismatch";
        case Errc::InvalidInstance: return "InvalidInstance";
        case Errc::CertificateInvalid: return "CertificateInvalid";
        case Errc::WidthTooSmall: return "WidthTooSmall";
        case Errc::NotInS: return "NotInS";
        case Errc::BudgetExceeded: return "BudgetExceeded";
        case Errc::AttemptsExhausted: return "AttemptsExhausted";
        case Errc::NotComposite: return "NotComposite";
        case Errc::InvalidArgument: return "InvalidArgument";
    }
    return "UnknownError";
}

std::string Assignment::str() const {
    std::string s;
    s.reserve(bits_.size());
    for (uint8_t b : bits_) s.push_back(b ? '1' : '0');
    return s;
}

namespace {

struct Tokenizer {
    std::string_view text;
    size_t pos = 0;

    // Skips whitespace and comment lines. A comment line starts with 'c'
    // as the first non-blank character of a line.
    void skip() {
        bool at_line_start = (pos == 0);
        while (pos < text.size()) {
            char ch = text[pos];
            if (ch == '\n') { at_line_start = true; ++pos; continue; }
            if (ch == ' ' || ch == '\t' || ch == '\r') { ++pos; continue; }
            if (at_line_start && ch == 'c') {
                while (pos < text.size() && text[pos] != '\n') ++pos;
                continue;
            }
            return;
        }
    }

    bool eof() {
        skip();
        return pos >= text.size();
    }

    std::string_view word() {
        skip();
        size_t start = pos;
        while (pos < text.size() && !isspace(static_cast<unsigned char>(text[pos]))) ++pos;
        return text.substr(start, pos - start);
    }
};

long long parse_int(std::string_view tok, Errc code, const char* what) {
    long long v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || p != tok.data() + tok.size())
        throw Error(code, std::string(what) + " '" + std::string(tok) + "'");
    return v;
}

} // namespace

CnfFormula parse_dimacs(std::string_view text, FormulaKind kind) {
    Tokenizer tok{text};

    if (tok.eof()) throw Error(Errc::MalformedHeader, "empty input");
    std::string_view p = tok.word();
    if (p != "p") throw Error(Errc::MalformedHeader, "expected 'p'");
    std::string_view fmt = tok.word();
    if (fmt != "cnf") throw Error(Errc::MalformedHeader, "expected 'cnf'");
    long long num_vars = parse_int(tok.word(), Errc::MalformedHeader, "bad variable count");
    long long num_clauses = parse_int(tok.word(), Errc::MalformedHeader, "bad clause count");
    if (num_vars < 0 || num_clauses < 0)
        throw Error(Errc::MalformedHeader, "negative header counts");

    if (kind == FormulaKind::MaxSat && num_clauses == 0)
        throw Error(Errc::EmptyFormula, "max-sat instance needs at least one clause");

    CnfFormula formula;
    formula.num_vars = static_cast<int>(num_vars);
    formula.kind = kind;
    formula.clauses.reserve(static_cast<size_t>(num_clauses));

    Clause current;
    while (!tok.eof()) {
        long long lit = parse_int(tok.word(), Errc::MalformedClause, "bad literal");
        if (lit == 0) {
            if (current.empty() || current.size() > 3)
                throw Error(Errc::WidthExceeded,
                            "clause width " + std::to_string(current.size()) + " outside 1..3");
            if (static_cast<long long>(formula.clauses.size()) == num_clauses)
                throw Error(Errc::ClauseCountMismatch, "more clauses than header declares");
            formula.clauses.push_back(std::move(current));
            current.clear();
            continue;
        }
        long long var = lit > 0 ? lit : -lit;
        if (var > num_vars)
            throw Error(Errc::VariableOutOfRange,
                        "variable " + std::to_string(var) + " > " + std::to_string(num_vars));
        if (current.size() == 3)
            throw Error(Errc::WidthExceeded, "clause width > 3");
        current.push_back(static_cast<int>(lit));
    }
    if (!current.empty())
        throw Error(Errc::MalformedClause, "unterminated clause at end of input");
    if (static_cast<long long>(formula.clauses.size()) != num_clauses)
        throw Error(Errc::ClauseCountMismatch,
                    "header declares " + std::to_string(num_clauses) + " clauses, found " +
                        std::to_string(formula.clauses.size()));
    return formula;
}

std::string serialize_dimacs(const CnfFormula& formula) {
    std::ostringstream out;
    out << "p cnf " << formula.num_vars << " " << formula.clauses.size() << "\n";
    for (const Clause& clause : formula.clauses) {
        for (int lit : clause) out << lit << " ";
        out << "0\n";
    }
    return out.str();
}

SatStats evaluate(const CnfFormula& formula, const Assignment& a) {
    if (a.size() != formula.num_vars)
        throw Error(Errc::LengthMismatch,
                    "assignment length " + std::to_string(a.size()) + " != num_vars " +
                        std::to_string(formula.num_vars));
    if (formula.clauses.empty())
        throw Error(Errc::EmptyFormula, "satisfaction fraction undefined for empty formula");

    SatStats stats;
    stats.total = static_cast<long long>(formula.clauses.size());
    for (const Clause& clause : formula.clauses) {
        for (int lit : clause) {
            if (a.lit_true(lit)) { ++stats.satisfied; break; }
        }
    }
    stats.fraction = Rational(stats.satisfied, stats.total);
    return stats;
}

std::pair<CnfFormula, StrictifyMap> strictify(const CnfFormula& formula) {
    bool already_strict = true;
    for (const Clause& c : formula.clauses)
        if (c.size() != 3) { already_strict = false; break; }

    StrictifyMap map;
    map.original_vars = formula.num_vars;
    map.strict_vars = formula.num_vars;
    if (already_strict) return {formula, map};

    CnfFormula strict;
    strict.kind = formula.kind;
    int next_var = formula.num_vars;
    map.expansion.reserve(formula.clauses.size());

    for (const Clause& c : formula.clauses) {
        int start = static_cast<int>(strict.clauses.size());
        if (c.size() == 3) {
            strict.clauses.push_back(c);
            map.expansion.emplace_back(start, 1);
        } else if (c.size() == 2) {
            int u = ++next_var;
            strict.clauses.push_back({c[0], c[1], u});
            strict.clauses.push_back({c[0], c[1], -u});
            map.expansion.emplace_back(start, 2);
        } else { // width 1
            int u = ++next_var;
            int v = ++next_var;
            strict.clauses.push_back({c[0], u, v});
            strict.clauses.push_back({c[0], u, -v});
            strict.clauses.push_back({c[0], -u, v});
            strict.clauses.push_back({c[0], -u, -v});
            map.expansion.emplace_back(start, 4);
        }
    }
    strict.num_vars = next_var;
    map.strict_vars = next_var;
    return {strict, map};
}

Assignment extend_assignment(const StrictifyMap& map, const Assignment& a) {
    if (a.size() != map.original_vars)
        throw Error(Errc::LengthMismatch, "assignment does not match original formula");
    Assignment ext(map.strict_vars);
    for (int v = 1; v <= map.original_vars; ++v) ext.set(v, a.value(v));
    // pads stay false
    return ext;
}

} // namespace shorsat
