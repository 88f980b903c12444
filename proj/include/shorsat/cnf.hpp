#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "shorsat/error.hpp"
#include "shorsat/rational.hpp"

namespace shorsat {

// Literals are DIMACS-style signed integers: +v / -v with v >= 1.
using Clause = std::vector<int>;

inline int lit_var(int lit) { return lit > 0 ? lit : -lit; }
inline bool lit_sign(int lit) { return lit > 0; }

enum class FormulaKind { Decision, MaxSat };

// Width <= 3 CNF. The clause list order is canonical: the reduction
// recognizers depend on the exact construction order, so clauses are
// never sorted or deduplicated after construction.
struct CnfFormula {
    int num_vars = 0;
    std::vector<Clause> clauses;
    FormulaKind kind = FormulaKind::Decision;

    friend bool operator==(const CnfFormula&, const CnfFormula&) = default;
};

// Total assignment of a formula's variables, 1-based access.
class Assignment {
public:
    Assignment() = default;
    explicit Assignment(int num_vars) : bits_(num_vars, 0) {}

    int size() const { return static_cast<int>(bits_.size()); }
    bool value(int var) const { return bits_[var - 1] != 0; }
    void set(int var, bool v) { bits_[var - 1] = v ? 1 : 0; }
    bool lit_true(int lit) const { return lit > 0 ? value(lit) : !value(-lit); }

    // bitstring "x1 x2 ..." without separators, e.g. "1011"
    std::string str() const;

    friend bool operator==(const Assignment&, const Assignment&) = default;

private:
    std::vector<uint8_t> bits_;
};

struct SatStats {
    long long satisfied = 0;
    long long total = 0;
    Rational fraction{0, 1};
};

// Thresholds of the target gap problem. Exact rationals so that
// comparisons against e.g. 7/8 + 1/1000 can never be blurred by rounding.
struct GapSpec {
    Rational completeness{99, 100};
    Rational soundness = Rational(7, 8) + Rational(1, 1000);
    Rational classical_threshold = Rational(7, 8) + Rational(1, 100);
};

// --- DIMACS ------------------------------------------------------------

// Accepts comment lines (`c ...`) anywhere before or between clauses;
// the canonical serialized form never contains them.
CnfFormula parse_dimacs(std::string_view text, FormulaKind kind = FormulaKind::Decision);

// Canonical bytes: "p cnf V C\n" then one clause per line, literals in
// stored order separated by single spaces, "0" terminator, "\n".
std::string serialize_dimacs(const CnfFormula& formula);

// --- evaluation ---------------------------------------------------------

SatStats evaluate(const CnfFormula& formula, const Assignment& a);

// --- strict width-3 normalization ----------------------------------------

// Records how each original clause expanded so assignments can be
// transported: clause i of the source maps to `expansion[i]` =
// (first index, count) in the strict formula. Empty expansion list means
// the formula was already strict and came through unchanged.
struct StrictifyMap {
    int original_vars = 0;
    int strict_vars = 0;
    std::vector<std::pair<int, int>> expansion;

    bool identity() const { return expansion.empty(); }
};

// Width-1 clause (l) becomes 4 clauses over two fresh pad variables,
// width-2 (l1 v l2) becomes 2 clauses over one fresh pad; width-3 clauses
// are copied. A satisfied original clause has all of its expansion clauses
// satisfiable simultaneously (the pads-false extension achieves it); a
// falsified one never has.
std::pair<CnfFormula, StrictifyMap> strictify(const CnfFormula& formula);

// Extends an assignment of the original formula to the strict one;
// all pad variables are set to false.
Assignment extend_assignment(const StrictifyMap& map, const Assignment& a);

} // namespace shorsat
