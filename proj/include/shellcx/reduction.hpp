#pragma once

#include <cmath>
#include <optional>
#include <random>

#include "gadgets.hpp"
#include "io.hpp"
#include "parallel.hpp"
#include "shelling.hpp"

namespace shellcx {

struct Literal {
    int var = 1;
    bool neg = false;
    bool operator==(const Literal&) const = default;
    int dimacs() const { return neg ? -var : var; }
};

using Clause = std::array<Literal, 3>;

/// Clauses of exactly three literals over variables 1..n.
struct Formula {
    int n = 0;
    std::vector<Clause> clauses;
    /// Total number of literal occurrences.
    std::size_t size() const { return 3 * clauses.size(); }
    bool operator==(const Formula&) const = default;
};

/// Truth values indexed by variable - 1.
using Assignment = std::vector<bool>;

inline std::string var_name(int v) { return "x" + std::to_string(v); }
inline std::string literal_name(const Literal& l) { return (l.neg ? "-" : "") + var_name(l.var); }

inline Formula make_formula(int n, const std::vector<std::array<int, 3>>& cls)
{
    Formula f;
    f.n = n;
    for (const auto& c : cls) {
        Clause k;
        for (int i = 0; i < 3; ++i) {
            if (c[i] == 0 || std::abs(c[i]) > n) throw Error("literal out of range");
            k[i] = {std::abs(c[i]), c[i] < 0};
        }
        f.clauses.push_back(k);
    }
    return f;
}

/// DIMACS CNF with a `p cnf n m` header; every clause must have three literals.
inline Formula parse_cnf(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    int no = 0;
    bool header = false;
    long long declared = 0;
    Formula f;
    std::vector<int> cur;
    int cur_line = 0;
    bool done = false;
    while (!done && std::getline(in, line)) {
        ++no;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "c") continue;
        if (tok == "%") break;
        if (tok == "p") {
            if (header) throw ParseError(no, "duplicate header");
            std::string fmt, sn, sm;
            long long n = 0, m = 0;
            if (!(ls >> fmt >> sn >> sm) || fmt != "cnf" || !parse_int_token(sn, n) || !parse_int_token(sm, m) ||
                n < 0 || m < 0 || n > 1000000 || (ls >> tok))
                throw ParseError(no, "malformed header, expected 'p cnf <vars> <clauses>'");
            header = true;
            f.n = static_cast<int>(n);
            declared = m;
            continue;
        }
        if (!header) throw ParseError(no, "clause before 'p cnf' header");
        do {
            long long v = 0;
            if (tok == "%") {
                done = true;
                break;
            }
            if (!parse_int_token(tok, v)) throw ParseError(no, "malformed literal '" + tok + "'");
            if (cur.empty()) cur_line = no;
            if (v == 0) {
                if (cur.size() != 3)
                    throw ParseError(cur_line, "clause has " + std::to_string(cur.size()) + " literals, expected 3");
                Clause c;
                for (int i = 0; i < 3; ++i) c[i] = {std::abs(cur[i]), cur[i] < 0};
                f.clauses.push_back(c);
                cur.clear();
                continue;
            }
            if (std::llabs(v) > f.n) throw ParseError(no, "variable " + std::to_string(std::llabs(v)) + " out of range");
            cur.push_back(static_cast<int>(v));
        } while (ls >> tok);
    }
    if (!header) throw ParseError(0, "missing 'p cnf' header");
    if (!cur.empty()) throw ParseError(cur_line, "unterminated clause");
    if (static_cast<long long>(f.clauses.size()) != declared)
        throw ParseError(0, "header declares " + std::to_string(declared) + " clauses, found " +
                                std::to_string(f.clauses.size()));
    return f;
}

inline std::string to_dimacs(const Formula& f)
{
    std::ostringstream o;
    o << "p cnf " << f.n << ' ' << f.clauses.size() << '\n';
    for (const auto& c : f.clauses) o << c[0].dimacs() << ' ' << c[1].dimacs() << ' ' << c[2].dimacs() << " 0\n";
    return o.str();
}

inline bool literal_true(const Literal& l, const Assignment& a) { return a.at(l.var - 1) != l.neg; }

inline bool satisfies(const Formula& f, const Assignment& a)
{
    if (static_cast<int>(a.size()) != f.n) throw Error("assignment size does not match the formula");
    for (const auto& c : f.clauses)
        if (!literal_true(c[0], a) && !literal_true(c[1], a) && !literal_true(c[2], a)) return false;
    return true;
}

constexpr int sat_oracle_max_vars = 24;

/// Exhaustive search over all assignments, smallest binary counter first (variable 1 is the low bit).
inline std::optional<Assignment> sat_oracle(const Formula& f)
{
    if (f.n > sat_oracle_max_vars) throw Error("sat_oracle: too many variables for exhaustive search");
    Assignment a(f.n);
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << f.n); ++m) {
        for (int i = 0; i < f.n; ++i) a[i] = (m >> i) & 1;
        if (satisfies(f, a)) return a;
    }
    return std::nullopt;
}

/// Uniform random 3-CNF; literals may repeat within a clause.
inline Formula random_formula(int n, int m, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> var(1, n);
    std::bernoulli_distribution sign(0.5);
    Formula f;
    f.n = n;
    for (int j = 0; j < m; ++j) {
        Clause c;
        for (auto& l : c) l = {var(rng), sign(rng)};
        f.clauses.push_back(c);
    }
    return f;
}

/// Every 3-CNF over n variables with exactly m ordered clauses.
inline std::vector<Formula> all_formulas(int n, int m)
{
    std::vector<Literal> lits;
    for (int v = 1; v <= n; ++v) {
        lits.push_back({v, false});
        lits.push_back({v, true});
    }
    std::vector<Clause> clauses;
    for (const auto& a : lits)
        for (const auto& b : lits)
            for (const auto& c : lits) clauses.push_back({a, b, c});
    std::vector<Formula> out;
    std::vector<std::size_t> idx(m, 0);
    if (clauses.empty()) return out;
    while (true) {
        Formula f;
        f.n = n;
        for (std::size_t i : idx) f.clauses.push_back(clauses[i]);
        out.push_back(f);
        int k = m - 1;
        while (k >= 0 && ++idx[k] == clauses.size()) idx[k--] = 0;
        if (k < 0) break;
    }
    return out;
}

/// Upper bound on simplices of K_φ per unit of (n + size(φ)).
constexpr std::size_t kphi_size_constant = 2000;

namespace detail {

inline std::string occ(int clause, int pos) { return "c" + std::to_string(clause) + "," + std::to_string(pos); }

}  // namespace detail

/**
 * K_φ: the conjunction house A, per variable u the sphere S(u), the
 * complex O(u), the house B(u) and the literal houses X[u], X[-u], and per
 * clause the three-house C(c). Besides the "part/label" entries left by
 * amalgamation, the result carries the names v_and, f_and, f(u), b(u),
 * p(u), s(u), v(u), D[ℓ], f[ℓ], T[ℓ], f[ℓ,c,i], p[ℓ,c,i].
 */
inline LabeledComplex build_K_phi(const Formula& phi)
{
    if (phi.n < 1) throw Error("formula needs at least one variable");
    for (const auto& c : phi.clauses)
        for (const auto& l : c)
            if (l.var < 1 || l.var > phi.n) throw Error("literal out of range");
    std::vector<Part> parts;
    std::vector<Identification> ids;
    OneHouseSpec aspec;
    for (int u = 1; u <= phi.n; ++u) aspec.attachments.push_back({"f(" + var_name(u) + ")", {"x", "w" + std::to_string(u)}});
    parts.push_back({"A", build_one_house(aspec, false)});
    std::map<std::string, std::vector<std::pair<int, int>>> occurrences;
    for (std::size_t j = 0; j < phi.clauses.size(); ++j)
        for (int i = 0; i < 3; ++i)
            occurrences[literal_name(phi.clauses[j][i])].push_back({static_cast<int>(j) + 1, i + 1});
    const LabeledComplex sphere = build_variable_sphere();
    const LabeledComplex ocx = build_O();
    OneHouseSpec bspec;
    bspec.attachments.push_back({"b", {"x", "t"}});
    const LabeledComplex bhouse = build_one_house(bspec, false);
    for (int u = 1; u <= phi.n; ++u) {
        const std::string x = var_name(u);
        parts.push_back({"S(" + x + ")", sphere});
        parts.push_back({"O(" + x + ")", ocx});
        parts.push_back({"B(" + x + ")", bhouse});
        ids.push_back({"B(" + x + ")/f", "A/f(" + x + ")"});
        ids.push_back({"B(" + x + ")/b", "O(" + x + ")/b"});
        ids.push_back({"O(" + x + ")/s", "S(" + x + ")/s"});
        for (bool neg : {false, true}) {
            const std::string ln = (neg ? "-" : "") + x;
            OneHouseSpec xs;
            xs.attachments.push_back({"p", {"x", "m", "a"}});
            for (auto [c, i] : occurrences[ln]) {
                const std::string o = detail::occ(c, i);
                xs.attachments.push_back({"p[" + o + "]", {"a", "r1:" + o, "r2:" + o}});
                xs.attachments.push_back({"f[" + o + "]", {"r2:" + o, "r3:" + o}});
            }
            const std::string pn = "X[" + ln + "]";
            parts.push_back({pn, build_one_house(xs, false)});
            ids.push_back({pn + "/f", "S(" + x + ")/" + (neg ? "f-" : "f+")});
            ids.push_back({pn + "/p", "O(" + x + ")/p"});
        }
    }
    const LabeledComplex three = build_three_house();
    for (std::size_t j = 0; j < phi.clauses.size(); ++j) {
        const std::string cn = "C(c" + std::to_string(j + 1) + ")";
        parts.push_back({cn, three});
        ids.push_back({cn + "/e", "A/f"});
        for (int i = 0; i < 3; ++i) {
            const std::string o = detail::occ(static_cast<int>(j) + 1, i + 1);
            const std::string xn = "X[" + literal_name(phi.clauses[j][i]) + "]";
            ids.push_back({cn + "/f" + std::to_string(i + 1), xn + "/f[" + o + "]"});
            ids.push_back({cn + "/p" + std::to_string(i + 1), xn + "/p[" + o + "]"});
        }
    }
    LabeledComplex k = amalgamate(parts, ids);
    auto alias = [&](const std::string& to, const std::string& from) { k.labels[to] = k.at(from); };
    alias("v_and", "A/x");
    alias("f_and", "A/f");
    for (int u = 1; u <= phi.n; ++u) {
        const std::string x = var_name(u);
        alias("f(" + x + ")", "A/f(" + x + ")");
        alias("b(" + x + ")", "O(" + x + ")/b");
        alias("p(" + x + ")", "O(" + x + ")/p");
        alias("s(" + x + ")", "S(" + x + ")/s");
        alias("v(" + x + ")", "S(" + x + ")/v");
        for (bool neg : {false, true}) {
            const std::string ln = (neg ? "-" : "") + x;
            alias("D[" + ln + "]", "S(" + x + ")/" + (neg ? "D-" : "D+"));
            alias("f[" + ln + "]", "S(" + x + ")/" + (neg ? "f-" : "f+"));
            const std::string pn = "X[" + ln + "]";
            std::vector<Simplex> tree = k.at(pn + "/p").edges();
            for (auto [c, i] : occurrences[ln]) {
                const std::string o = detail::occ(c, i);
                alias("p[" + ln + "," + o + "]", pn + "/p[" + o + "]");
                alias("f[" + ln + "," + o + "]", pn + "/f[" + o + "]");
                for (const auto& e : k.at(pn + "/p[" + o + "]").edges()) tree.push_back(e);
                for (const auto& e : k.at(pn + "/f[" + o + "]").edges()) tree.push_back(e);
            }
            k.labels["T[" + ln + "]"] = Feature::subcomplex(tree);
        }
    }
    k.validate();
    const Complex& c = k.complex;
    if (!c.is_pure(2)) throw Error("internal: K_phi is not pure 2-dimensional");
    if (c.reduced_euler_characteristic() != phi.n)
        throw Error("internal: reduced Euler characteristic of K_phi differs from the number of variables");
    if (!vertex_links_connected(c)) throw Error("internal: K_phi has a disconnected vertex link");
    if (c.num_simplices() > kphi_size_constant * (static_cast<std::size_t>(phi.n) + phi.size()))
        throw Error("internal: K_phi exceeds the linear size bound");
    return k;
}

inline std::vector<Simplex> label_facets(const LabeledComplex& k, const std::string& name)
{
    return k.at(name).facets;
}

/// Triangles of the sphere S(u): D[u] first, then D[-u], each in lexicographic order.
inline std::vector<Simplex> sphere_triangles(const LabeledComplex& k, int u)
{
    auto a = label_facets(k, "D[" + var_name(u) + "]");
    auto b = label_facets(k, "D[-" + var_name(u) + "]");
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

inline int count_variables(const LabeledComplex& k)
{
    int n = 0;
    while (k.has("D[" + var_name(n + 1) + "]")) ++n;
    return n;
}

struct AssignmentReading {
    bool admissible = false;
    Assignment assignment;
    /// Variable whose sphere received no removed triangle; 0 when admissible.
    int uncovered = 0;
};

/// Reads u = true iff the removed triangle of S(u) lies in D[u].
inline AssignmentReading assignment_from_removal(const LabeledComplex& k, const std::vector<Simplex>& removal)
{
    const int n = count_variables(k);
    if (static_cast<long long>(removal.size()) != k.complex.reduced_euler_characteristic())
        throw Error("removal set must contain exactly as many triangles as the reduced Euler characteristic");
    std::set<Simplex> r;
    for (const auto& t : removal) {
        Simplex s = make_simplex(t);
        if (s.size() != 3 || !k.complex.contains(s)) throw Error("removal entry is not a triangle of the complex");
        if (!r.insert(s).second) throw Error("removal set repeats a triangle");
    }
    AssignmentReading out;
    out.assignment.assign(n, false);
    for (int u = 1; u <= n; ++u) {
        int pos = 0, neg = 0;
        for (const auto& t : label_facets(k, "D[" + var_name(u) + "]")) pos += static_cast<int>(r.count(t));
        for (const auto& t : label_facets(k, "D[-" + var_name(u) + "]")) neg += static_cast<int>(r.count(t));
        if (pos + neg == 0) {
            out.uncovered = u;
            return out;
        }
        out.assignment[u - 1] = pos > 0;
    }
    out.admissible = true;
    return out;
}

struct PhaseRecord {
    std::string name;
    std::size_t begin = 0;
    std::size_t end = 0;
};

struct ScheduledCollapse {
    std::vector<Simplex> removal;
    CollapseSequence sequence;
    Vertex final_vertex = 0;
    std::vector<PhaseRecord> phases;
};

namespace detail {

inline Complex closure_of_edges(const std::vector<Simplex>& es) { return Complex::from_facets(es); }

inline Complex complex_union(const Complex& a, const Complex& b)
{
    std::vector<Simplex> fs = a.facets();
    for (const auto& f : b.facets()) fs.push_back(f);
    return Complex::from_facets(fs);
}

inline Complex intersect(const Complex& k, const Complex& m)
{
    std::vector<Simplex> fs;
    for (int d = 0; d <= m.dim(); ++d)
        for (const auto& s : m.faces(d))
            if (k.contains(s)) fs.push_back(s);
    return Complex::from_face_set(fs);
}

/// Collapses the part M of `cur` onto `target` and lifts the collapse through the constrain-complex test.
inline void run_phase(Complex& cur, const Complex& part, const Complex& target, const std::string& name,
                      ScheduledCollapse& out)
{
    const Complex m = intersect(cur, part);
    if (!target.is_subcomplex_of(m)) throw Error("internal: phase " + name + " target is not inside the part");
    auto local = collapses_to(m, target);
    if (!local) throw Error("internal: phase " + name + " cannot collapse its part onto the target");
    glue_local_collapse(cur, m, target, local.witness);
    PhaseRecord rec{name, out.sequence.size(), 0};
    out.sequence.insert(out.sequence.end(), local.witness.begin(), local.witness.end());
    rec.end = out.sequence.size();
    out.phases.push_back(rec);
    cur = replace_subcomplex(cur, m, target);
}

inline Complex sub(const LabeledComplex& k, const std::string& name) { return k.sub(name); }

}  // namespace detail

/**
 * In a collapse of K_φ minus a removal set, the first elementary collapse
 * inside A must come before every collapse of a triangle of D[-ℓ(u)],
 * where ℓ is read from the removal set.
 */
inline bool conjunction_precedes_false_disks(const LabeledComplex& k, const std::vector<Simplex>& removal,
                                             const CollapseSequence& seq)
{
    auto reading = assignment_from_removal(k, removal);
    if (!reading.admissible) return false;
    const Complex a = k.sub("A");
    std::set<Simplex> false_disks;
    for (int u = 1; u <= static_cast<int>(reading.assignment.size()); ++u) {
        const std::string lit = (reading.assignment[u - 1] ? "-" : "") + var_name(u);
        for (const auto& t : label_facets(k, "D[" + lit + "]")) false_disks.insert(t);
    }
    std::optional<std::size_t> first_a;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        const auto& p = seq[i];
        if (!first_a && p.coface.size() == 3 && a.contains(p.coface)) first_a = i;
        if (p.coface.size() == 3 && false_disks.count(p.coface) && (!first_a || *first_a > i)) return false;
    }
    return true;
}

/**
 * Removes one triangle from each D[ℓ(u)] and collapses the rest to a
 * vertex, part by part: true disks, true literal houses, clause houses,
 * the conjunction house, the B/O pairs, then the false disks and literal
 * houses, and finally the remaining tree.
 */
inline ScheduledCollapse schedule_collapse(const Formula& phi, const Assignment& a, const LabeledComplex* prebuilt = nullptr)
{
    if (static_cast<int>(a.size()) != phi.n) throw Error("assignment size does not match the formula");
    if (!satisfies(phi, a)) throw Error("assignment does not satisfy the formula");
    std::optional<LabeledComplex> built;
    if (!prebuilt) built = build_K_phi(phi);
    const LabeledComplex& k = prebuilt ? *prebuilt : *built;
    ScheduledCollapse out;
    auto lit = [&](int u, bool truth) { return (a[u - 1] == truth ? "" : "-") + var_name(u); };
    std::set<Simplex> removed;
    for (int u = 1; u <= phi.n; ++u) {
        auto d = label_facets(k, "D[" + lit(u, true) + "]");
        out.removal.push_back(d.front());
        removed.insert(d.front());
    }
    std::vector<Simplex> fs;
    for (const auto& f : k.complex.facets())
        if (!removed.count(f)) fs.push_back(f);
    Complex cur = Complex::from_facets(fs);
    using detail::closure_of_edges;
    using detail::run_phase;
    for (int u = 1; u <= phi.n; ++u) {
        const std::string l = lit(u, true);
        auto es = k.at("s(" + var_name(u) + ")").edges();
        for (const auto& e : k.at("f[" + l + "]").edges()) es.push_back(e);
        run_phase(cur, k.sub("D[" + l + "]"), closure_of_edges(es), "D[" + l + "]", out);
    }
    for (int u = 1; u <= phi.n; ++u) {
        const std::string l = lit(u, true);
        run_phase(cur, k.sub("X[" + l + "]"), k.sub("T[" + l + "]"), "X[" + l + "]", out);
    }
    for (std::size_t j = 0; j < phi.clauses.size(); ++j) {
        int fire = 0;
        for (int i = 0; i < 3 && !fire; ++i)
            if (literal_true(phi.clauses[j][i], a)) fire = i + 1;
        const std::string cn = "C(c" + std::to_string(j + 1) + ")";
        std::vector<Simplex> es = k.at(cn + "/e").edges();
        for (int i = 1; i <= 3; ++i) {
            for (const auto& e : k.at(cn + "/p" + std::to_string(i)).edges()) es.push_back(e);
            if (i != fire)
                for (const auto& e : k.at(cn + "/f" + std::to_string(i)).edges()) es.push_back(e);
        }
        run_phase(cur, k.sub(cn), closure_of_edges(es), cn, out);
    }
    {
        std::vector<Simplex> es;
        for (int u = 1; u <= phi.n; ++u)
            for (const auto& e : k.at("f(" + var_name(u) + ")").edges()) es.push_back(e);
        run_phase(cur, k.sub("A"), closure_of_edges(es), "A", out);
    }
    for (int u = 1; u <= phi.n; ++u) {
        const std::string x = var_name(u);
        run_phase(cur, k.sub("B(" + x + ")"), closure_of_edges(k.at("b(" + x + ")").edges()), "B(" + x + ")", out);
        auto es = k.at("s(" + x + ")").edges();
        for (const auto& e : k.at("p(" + x + ")").edges()) es.push_back(e);
        run_phase(cur, k.sub("O(" + x + ")"), closure_of_edges(es), "O(" + x + ")", out);
    }
    for (int u = 1; u <= phi.n; ++u) {
        const std::string l = lit(u, false);
        run_phase(cur, k.sub("D[" + l + "]"), closure_of_edges(k.at("f[" + l + "]").edges()), "D[" + l + "]", out);
        run_phase(cur, k.sub("X[" + l + "]"), k.sub("T[" + l + "]"), "X[" + l + "]", out);
    }
    if (cur.dim() != 1 || !is_tree(cur)) throw Error("internal: the schedule does not end on a tree");
    auto last = is_collapsible_2d_greedy(cur);
    PhaseRecord rec{"tree", out.sequence.size(), 0};
    out.sequence.insert(out.sequence.end(), last.witness.begin(), last.witness.end());
    rec.end = out.sequence.size();
    out.phases.push_back(rec);
    CollapseState st(std::make_shared<FaceGraph>(cur));
    for (const auto& p : last.witness) st.apply(p);
    out.final_vertex = st.alive_facets().front().front();
    if (!conjunction_precedes_false_disks(k, out.removal, out.sequence))
        throw Error("internal: a false disk collapses before the conjunction house");
    return out;
}

struct PhiDecision {
    bool sat = false;
    std::vector<Simplex> removal;
    CollapseSequence witness;
    /// Present when the removal set is admissible.
    std::optional<Assignment> assignment;
    long long tried = 0;
};

struct PhiOptions {
    /// Try every set of χ̃(K_φ) triangles instead of one triangle per sphere.
    bool full_sweep = false;
    int jobs = 1;
    /// Refuses formulas with more variables than this.
    int max_vars = 4;
    long long max_candidates = 2000000;
};

namespace detail {

template <class Next>
inline PhiDecision search_removals(const LabeledComplex& k, std::size_t total, Next&& next, const PhiOptions& opt)
{
    auto g = std::make_shared<const FaceGraph>(k.complex);
    const CollapseState base(g);
    PhiDecision res;
    const std::size_t batch = 512;
    std::vector<std::vector<std::size_t>> sets;
    std::size_t produced = 0;
    while (produced < total) {
        sets.clear();
        while (produced < total && sets.size() < batch) {
            std::vector<Simplex> r = next(produced++);
            std::vector<std::size_t> ids;
            for (const auto& t : r) ids.push_back(g->id(t));
            sets.push_back(std::move(ids));
        }
        const std::size_t hit = parallel_find_first(sets.size(), opt.jobs, [&](std::size_t i) {
            CollapseState st = base;
            for (std::size_t id : sets[i]) st.remove_maximal(id);
            return greedy_collapsible(st);
        });
        if (hit < sets.size()) {
            res.tried += static_cast<long long>(hit) + 1;
            CollapseState st = base;
            for (std::size_t id : sets[hit]) {
                st.remove_maximal(id);
                res.removal.push_back(g->simplex(id));
            }
            greedy_collapsible(st, &res.witness);
            res.sat = true;
            return res;
        }
        res.tried += static_cast<long long>(sets.size());
    }
    return res;
}

}  // namespace detail

/**
 * Decides φ through K_φ: φ is reported satisfiable iff removing some
 * candidate set of χ̃(K_φ) triangles leaves a collapsible complex.
 */
inline PhiDecision decide_phi_via_complex(const Formula& phi, const PhiOptions& opt = {}, const LabeledComplex* prebuilt = nullptr)
{
    if (phi.n > opt.max_vars) throw Error("decide_phi_via_complex: formula exceeds the scale guard");
    std::optional<LabeledComplex> built;
    if (!prebuilt) built = build_K_phi(phi);
    const LabeledComplex& k = prebuilt ? *prebuilt : *built;
    PhiDecision res;
    if (!opt.full_sweep) {
        std::vector<std::vector<Simplex>> tri(phi.n);
        std::size_t total = 1;
        for (int u = 1; u <= phi.n; ++u) {
            tri[u - 1] = sphere_triangles(k, u);
            total *= tri[u - 1].size();
        }
        if (static_cast<long long>(total) > opt.max_candidates) throw Error("decide_phi_via_complex: too many candidates");
        res = detail::search_removals(k, total, [&](std::size_t idx) {
            std::vector<Simplex> r(phi.n);
            for (int u = phi.n; u >= 1; --u) {
                r[u - 1] = tri[u - 1][idx % tri[u - 1].size()];
                idx /= tri[u - 1].size();
            }
            return r;
        }, opt);
    } else {
        const auto& all = k.complex.faces(2);
        const std::size_t r = static_cast<std::size_t>(phi.n);
        double count = 1;
        for (std::size_t i = 0; i < r; ++i) count = count * static_cast<double>(all.size() - i) / static_cast<double>(i + 1);
        if (count > static_cast<double>(opt.max_candidates)) throw Error("decide_phi_via_complex: full sweep too large");
        std::vector<std::size_t> comb(r);
        std::iota(comb.begin(), comb.end(), 0);
        res = detail::search_removals(k, static_cast<std::size_t>(std::llround(count)), [&](std::size_t) {
            std::vector<Simplex> out;
            for (std::size_t c : comb) out.push_back(all[c]);
            for (std::size_t i = r; i-- > 0;)
                if (comb[i] < all.size() - r + i) {
                    ++comb[i];
                    for (std::size_t j = i + 1; j < r; ++j) comb[j] = comb[j - 1] + 1;
                    break;
                }
            return out;
        }, opt);
    }
    if (res.sat) {
        auto reading = assignment_from_removal(k, res.removal);
        if (reading.admissible) {
            if (!satisfies(phi, reading.assignment))
                throw Error("internal: collapsible removal yields an assignment that does not satisfy the formula");
            res.assignment = reading.assignment;
        }
    }
    return res;
}

}  // namespace shellcx
