#include "shorsat/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace shorsat {

namespace {

// ---------------------------------------------------------------------
// DPLL with two watched literals.
// ---------------------------------------------------------------------

class Dpll {
public:
    Dpll(const CnfFormula& formula, const OracleBudget& budget)
        : formula_(formula), budget_(budget), value_(formula.num_vars + 1, 0) {
        watches_.resize(2 * (formula.num_vars + 1));
    }

    SatSearch run() {
        // Unit clauses seed the trail; empty clauses cannot occur (width >= 1).
        for (size_t ci = 0; ci < formula_.clauses.size(); ++ci) {
            const Clause& c = formula_.clauses[ci];
            if (c.size() == 1) {
                if (!enqueue(c[0])) return {SolveStatus::Unsatisfiable, {}};
            } else {
                watch(c[0], static_cast<int>(ci));
                watch(c[1], static_cast<int>(ci));
                clause_lits_.push_back(c);
            }
        }
        if (!propagate()) return {SolveStatus::Unsatisfiable, {}};

        std::vector<Frame> stack;
        while (true) {
            // Decisions pick the lowest unassigned variable; along a branch
            // everything below the last decision is already assigned, so the
            // scan can resume right after it.
            int var = next_unassigned(stack.empty() ? 1 : stack.back().var + 1);
            if (var == 0) return {SolveStatus::Satisfiable, model()};
            if (++nodes_ > budget_.max_nodes) return {SolveStatus::Exhausted, {}};

            stack.push_back({var, static_cast<int>(trail_.size()), false});
            bool ok = enqueue(-var) && propagate(); // false first
            while (!ok) {
                // backtrack to the deepest frame with an untried value
                while (!stack.empty() && stack.back().flipped) {
                    undo_to(stack.back().trail_mark);
                    stack.pop_back();
                }
                if (stack.empty()) return {SolveStatus::Unsatisfiable, {}};
                Frame& f = stack.back();
                undo_to(f.trail_mark);
                f.flipped = true;
                ok = enqueue(f.var) && propagate();
            }
        }
    }

private:
    struct Frame {
        int var;
        int trail_mark;
        bool flipped;
    };

    static size_t widx(int lit) {
        int v = lit_var(lit);
        return static_cast<size_t>(2 * v + (lit > 0 ? 0 : 1));
    }

    void watch(int lit, int ci) { watches_[widx(lit)].push_back(ci); }

    int val(int lit) const { // +1 true, -1 false, 0 unassigned
        int v = value_[lit_var(lit)];
        return lit > 0 ? v : -v;
    }

    bool enqueue(int lit) {
        int v = lit_var(lit);
        int desired = lit > 0 ? 1 : -1;
        if (value_[v] != 0) return value_[v] == desired;
        value_[v] = desired;
        trail_.push_back(lit);
        return true;
    }

    bool propagate() {
        while (qhead_ < trail_.size()) {
            int lit = trail_[qhead_++];
            int falsified = -lit;
            auto& wl = watches_[widx(falsified)];
            size_t keep = 0;
            for (size_t i = 0; i < wl.size(); ++i) {
                int ci = wl[i];
                Clause& c = clause_lits_[ci];
                // ensure the falsified literal sits at position 1
                if (c[0] == falsified) std::swap(c[0], c[1]);
                if (val(c[0]) == 1) { wl[keep++] = ci; continue; }
                bool moved = false;
                for (size_t k = 2; k < c.size(); ++k) {
                    if (val(c[k]) != -1) {
                        std::swap(c[1], c[k]);
                        watch(c[1], ci);
                        moved = true;
                        break;
                    }
                }
                if (moved) continue;
                wl[keep++] = ci;
                if (!enqueue(c[0])) { // unit or conflict
                    for (size_t j = i + 1; j < wl.size(); ++j) wl[keep++] = wl[j];
                    wl.resize(keep);
                    return false;
                }
            }
            wl.resize(keep);
        }
        return true;
    }

    void undo_to(int mark) {
        while (static_cast<int>(trail_.size()) > mark) {
            value_[lit_var(trail_.back())] = 0;
            trail_.pop_back();
        }
        qhead_ = static_cast<size_t>(mark);
    }

    int next_unassigned(int from) const {
        for (int v = from; v <= formula_.num_vars; ++v)
            if (value_[v] == 0) return v;
        return 0;
    }

    const CnfFormula& formula_;
    const OracleBudget& budget_;
    std::vector<int8_t> value_;
    std::vector<int> trail_;
    size_t qhead_ = 0;
    long long nodes_ = 0;
    std::vector<Clause> clause_lits_; // clauses of width >= 2, mutable watch order
    std::vector<std::vector<int>> watches_;

    Assignment model() const {
        Assignment a(formula_.num_vars);
        for (int v = 1; v <= formula_.num_vars; ++v) a.set(v, value_[v] == 1);
        return a;
    }
};

// ---------------------------------------------------------------------
// Exact MAX-SAT.
// ---------------------------------------------------------------------

struct BnbState {
    const OracleBudget* budget;
    long long nodes = 0;
    bool exhausted = false;
};

// Exact optimum of `formula` by branch and bound; assumes nothing about the
// input beyond width >= 1. Returns best count and a total witness.
MaxSatSolution bnb_solve(const CnfFormula& formula, BnbState& st);

class BnbSearcher {
public:
    BnbSearcher(const CnfFormula& formula, BnbState& st)
        : formula_(formula), st_(st), value_(formula.num_vars + 1, 0),
          sat_by_(formula.clauses.size(), 0), free_lits_(formula.clauses.size(), 0) {
        occ_.resize(formula.num_vars + 1);
        for (size_t ci = 0; ci < formula_.clauses.size(); ++ci) {
            free_lits_[ci] = static_cast<int>(formula_.clauses[ci].size());
            for (int lit : formula_.clauses[ci]) occ_[lit_var(lit)].push_back(static_cast<int>(ci));
        }
        best_ = -1;
    }

    MaxSatSolution run() {
        search();
        MaxSatSolution sol;
        sol.best = best_;
        sol.witness = best_model_;
        return sol;
    }

private:
    void search() {
        if (st_.exhausted) return;
        if (++st_.nodes > st_.budget->max_nodes) { st_.exhausted = true; return; }

        long long m = static_cast<long long>(formula_.clauses.size());
        long long bound = m - falsified_;
        if (bound <= best_) return;

        if (satisfied_ + falsified_ == m) { record(); return; }

        // connected components of the undecided part solve independently
        if (try_split()) return;

        int var = pick_var();
        if (var == 0) { record(); return; }

        int cnt_true = 0, cnt_false = 0;
        for (int ci : occ_[var]) {
            if (sat_by_[ci] || free_lits_[ci] == 0) continue;
            for (int lit : formula_.clauses[ci]) {
                if (lit == var) ++cnt_true;
                else if (lit == -var) ++cnt_false;
            }
        }
        bool first = cnt_true > cnt_false; // try the value satisfying more clauses; ties go false
        for (int round = 0; round < 2; ++round) {
            bool v = round == 0 ? first : !first;
            int mark_s = satisfied_, mark_f = falsified_;
            std::vector<std::pair<int, int>> undo; // (clause, previous free count)
            apply(var, v, undo);
            search();
            revert(var, undo, mark_s, mark_f);
            if (st_.exhausted) return;
        }
    }

    bool try_split() {
        // union-find over variables of undecided clauses
        std::vector<int> undecided;
        for (size_t ci = 0; ci < formula_.clauses.size(); ++ci)
            if (!sat_by_[ci] && free_lits_[ci] > 0) undecided.push_back(static_cast<int>(ci));
        if (undecided.size() < 2) return false;

        std::vector<int> parent(formula_.num_vars + 1, -1);
        auto find = [&](int x) {
            while (parent[x] >= 0 && parent[parent[x]] >= 0) x = parent[x] = parent[parent[x]];
            return parent[x] >= 0 ? parent[x] : x;
        };
        for (int ci : undecided) {
            int root = -1;
            for (int lit : formula_.clauses[ci]) {
                int v = lit_var(lit);
                if (value_[v] != 0) continue;
                int r = find(v);
                if (root == -1) root = r;
                else if (r != root) parent[r] = root;
            }
        }
        int first_root = -1;
        bool split = false;
        for (int ci : undecided) {
            int v0 = 0;
            for (int lit : formula_.clauses[ci])
                if (value_[lit_var(lit)] == 0) { v0 = lit_var(lit); break; }
            int r = find(v0);
            if (first_root == -1) first_root = r;
            else if (r != first_root) { split = true; break; }
        }
        if (!split) return false;

        // group clauses per component and solve each reduced instance exactly
        std::vector<int> comp_of(formula_.num_vars + 1, -1);
        std::vector<std::vector<int>> comp_clauses;
        for (int ci : undecided) {
            int v0 = 0;
            for (int lit : formula_.clauses[ci])
                if (value_[lit_var(lit)] == 0) { v0 = lit_var(lit); break; }
            int r = find(v0);
            if (comp_of[r] == -1) {
                comp_of[r] = static_cast<int>(comp_clauses.size());
                comp_clauses.emplace_back();
            }
            comp_clauses[comp_of[r]].push_back(ci);
        }

        long long total = satisfied_;
        Assignment model = snapshot();
        for (const auto& group : comp_clauses) {
            // build a reduced формула: surviving literals of each clause, renumbered
            CnfFormula sub;
            std::vector<int> var_map(formula_.num_vars + 1, 0);
            std::vector<int> back;
            for (int ci : group) {
                Clause reduced;
                for (int lit : formula_.clauses[ci]) {
                    int v = lit_var(lit);
                    if (value_[v] != 0) continue;
                    if (var_map[v] == 0) {
                        back.push_back(v);
                        var_map[v] = static_cast<int>(back.size());
                    }
                    reduced.push_back(lit > 0 ? var_map[v] : -var_map[v]);
                }
                sub.clauses.push_back(std::move(reduced));
            }
            sub.num_vars = static_cast<int>(back.size());
            MaxSatSolution part = bnb_solve(sub, st_);
            if (st_.exhausted) return true;
            total += part.best;
            for (int i = 0; i < sub.num_vars; ++i) model.set(back[i], part.witness.value(i + 1));
        }
        if (total > best_) {
            best_ = total;
            best_model_ = model;
        }
        return true;
    }

    int pick_var() {
        // most occurrences among undecided clauses, lowest index on ties
        std::vector<int> score(formula_.num_vars + 1, 0);
        for (size_t ci = 0; ci < formula_.clauses.size(); ++ci) {
            if (sat_by_[ci] || free_lits_[ci] == 0) continue;
            for (int lit : formula_.clauses[ci])
                if (value_[lit_var(lit)] == 0) ++score[lit_var(lit)];
        }
        int var = 0, bestscore = 0;
        for (int v = 1; v <= formula_.num_vars; ++v)
            if (score[v] > bestscore) { bestscore = score[v]; var = v; }
        return var;
    }

    void apply(int var, bool v, std::vector<std::pair<int, int>>& undo) {
        value_[var] = v ? 1 : -1;
        for (int ci : occ_[var]) {
            if (sat_by_[ci] || free_lits_[ci] == 0) continue;
            const Clause& c = formula_.clauses[ci];
            bool sat = false;
            int freed = 0;
            for (int lit : c) {
                if (lit_var(lit) != var) continue;
                if ((lit > 0) == v) sat = true;
                ++freed;
            }
            undo.emplace_back(ci, free_lits_[ci]);
            if (sat) {
                sat_by_[ci] = var;
                ++satisfied_;
            } else {
                free_lits_[ci] -= freed;
                if (free_lits_[ci] == 0) ++falsified_;
            }
        }
    }

    void revert(int var, const std::vector<std::pair<int, int>>& undo, int mark_s, int mark_f) {
        for (auto it = undo.rbegin(); it != undo.rend(); ++it) {
            int ci = it->first;
            if (sat_by_[ci] == var) sat_by_[ci] = 0;
            free_lits_[ci] = it->second;
        }
        satisfied_ = mark_s;
        falsified_ = mark_f;
        value_[var] = 0;
    }

    // Only reached when every clause is satisfied or falsified: an
    // undecided clause keeps a free variable alive, which pick_var finds.
    void record() {
        if (satisfied_ > best_) {
            best_ = satisfied_;
            best_model_ = snapshot();
        }
    }

    Assignment snapshot() const {
        Assignment a(formula_.num_vars);
        for (int v = 1; v <= formula_.num_vars; ++v) a.set(v, value_[v] == 1);
        return a;
    }

    const CnfFormula& formula_;
    BnbState& st_;
    std::vector<int8_t> value_;
    std::vector<int> sat_by_;     // satisfying decision var, 0 = none
    std::vector<int> free_lits_;  // unassigned literal count; 0 + !sat_by = falsified
    std::vector<std::vector<int>> occ_;
    int satisfied_ = 0;
    int falsified_ = 0;
    long long best_ = -1;
    Assignment best_model_;
};

MaxSatSolution bnb_solve(const CnfFormula& formula, BnbState& st) {
    BnbSearcher searcher(formula, st);
    return searcher.run();
}

MaxSatSolution enumerate_solve(const CnfFormula& formula) {
    int n = formula.num_vars;
    MaxSatSolution sol;
    sol.best = -1;
    for (uint64_t bits = 0; bits < (uint64_t{1} << n); ++bits) {
        long long count = 0;
        for (const Clause& c : formula.clauses) {
            for (int lit : c) {
                int v = lit_var(lit);
                bool val = (bits >> (v - 1)) & 1;
                if (val == (lit > 0)) { ++count; break; }
            }
        }
        if (count > sol.best) {
            sol.best = count;
            Assignment a(n);
            for (int v = 1; v <= n; ++v) a.set(v, (bits >> (v - 1)) & 1);
            sol.witness = a;
        }
    }
    return sol;
}

} // namespace

SatSearch is_satisfiable(const CnfFormula& formula, const OracleBudget& budget) {
    if (formula.clauses.empty()) {
        return {SolveStatus::Satisfiable, Assignment(formula.num_vars)};
    }
    Dpll solver(formula, budget);
    return solver.run();
}

std::optional<MaxSatSolution> max_sat_exact(const CnfFormula& formula, const OracleBudget& budget,
                                            MaxSatEngine engine) {
    if (formula.clauses.empty())
        return MaxSatSolution{0, Assignment(formula.num_vars)};

    if (engine == MaxSatEngine::Enumeration) {
        if (formula.num_vars > budget.max_exhaustive_vars) return std::nullopt;
        bool fits = false;
        return enumerate_solve(formula, fits);
    }

    // Satisfiable formulas are settled by the complete SAT search: the
    // optimum is the clause count and the model is the witness.
    SatSearch sat = is_satisfiable(formula, budget);
    if (sat.status == SolveStatus::Exhausted) return std::nullopt;
    if (sat.status == SolveStatus::Satisfiable)
        return MaxSatSolution{static_cast<long long>(formula.clauses.size()), sat.model};

    BnbState st;
    st.budget = &budget;
    MaxSatSolution sol = bnb_solve(formula, st);
    if (st.exhausted) return std::nullopt;
    return sol;
}

Assignment greedy_conditional_expectation(const CnfFormula& formula,
                                          const std::vector<int>* order) {
    int n = formula.num_vars;
    size_t m = formula.clauses.size();

    // Per clause: distinct variables still unassigned, satisfied flag.
    // Tautologies (x v -x v ...) count as satisfied from the start.
    std::vector<char> satisfied(m, 0);
    std::vector<std::vector<int>> lits(m); // deduplicated literals
    std::vector<int> width(m, 0);
    std::vector<std::vector<int>> occ(n + 1);
    for (size_t ci = 0; ci < m; ++ci) {
        for (int lit : formula.clauses[ci]) {
            bool dup = false, taut = false;
            for (int prev : lits[ci]) {
                if (prev == lit) dup = true;
                if (prev == -lit) taut = true;
            }
            if (taut) { satisfied[ci] = 1; lits[ci].clear(); break; }
            if (!dup) lits[ci].push_back(lit);
        }
        if (!satisfied[ci]) {
            width[ci] = static_cast<int>(lits[ci].size());
            for (int lit : lits[ci]) occ[lit_var(lit)].push_back(static_cast<int>(ci));
        }
    }

    std::vector<int> default_order;
    if (!order) {
        default_order.resize(n);
        std::iota(default_order.begin(), default_order.end(), 1);
        order = &default_order;
    }

    Assignment a(n);
    std::vector<char> assigned(n + 1, 0);
    for (int var : *order) {
        if (assigned[var]) continue;
        // Expected-count deltas, scaled by 8 so they stay integral for w <= 3:
        // satisfying a clause of remaining width w gains 8 >> w; shrinking it
        // loses the same amount from the other side.
        long long gain_true = 0, gain_false = 0;
        for (int ci : occ[var]) {
            if (satisfied[ci] || width[ci] == 0) continue;
            for (int lit : lits[ci]) {
                if (lit == var) gain_true += (8LL >> width[ci]);
                else if (lit == -var) gain_false += (8LL >> width[ci]);
            }
        }
        bool value = gain_true > gain_false; // ties pick false
        a.set(var, value);
        assigned[var] = 1;
        for (int ci : occ[var]) {
            if (satisfied[ci] || width[ci] == 0) continue;
            bool sat = false, present = false;
            for (int lit : lits[ci]) {
                if (lit_var(lit) != var) continue;
                present = true;
                if ((lit > 0) == value) sat = true;
            }
            if (!present) continue;
            if (sat) satisfied[ci] = 1;
            else --width[ci];
        }
    }
    return a;
}

Assignment random_assignment(const CnfFormula& formula, uint64_t seed) {
    std::mt19937_64 rng(seed);
    Assignment a(formula.num_vars);
    for (int v = 1; v <= formula.num_vars; ++v) a.set(v, (rng() & 1) != 0);
    return a;
}

} // namespace shorsat
