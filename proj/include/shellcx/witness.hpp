#pragma once

#include "io.hpp"
#include "reduction.hpp"

namespace shellcx {

inline json pairs_to_json(const CollapseSequence& seq)
{
    json a = json::array();
    for (const auto& p : seq) a.push_back(json::array({p.free, p.coface}));
    return a;
}

inline CollapseSequence pairs_from_json(const json& a)
{
    CollapseSequence seq;
    for (const auto& p : a.at("pairs")) {
        if (!p.is_array() || p.size() != 2) throw ParseError(0, "collapse pair must be [free, coface]");
        seq.push_back({make_simplex(p[0].get<Simplex>()), make_simplex(p[1].get<Simplex>())});
    }
    return seq;
}

inline json collapse_witness(const CollapseSequence& seq, const Complex& target)
{
    return json{{"kind", "collapse"}, {"pairs", pairs_to_json(seq)}, {"target_facets", target.facets()}};
}

inline json shelling_witness(const ShellingOrder& order) { return json{{"kind", "shelling"}, {"order", order}}; }

inline json tree_to_json(const DecompositionTree& t)
{
    if (!t) return nullptr;
    if (t->simplex) return json{{"simplex", *t->simplex}};
    return json{{"sigma", t->sigma}, {"link", tree_to_json(t->link)}, {"rest", tree_to_json(t->rest)}};
}

inline DecompositionTree tree_from_json(const json& j)
{
    auto n = std::make_shared<DecompositionNode>();
    if (j.contains("simplex")) {
        n->simplex = make_simplex(j.at("simplex").get<Simplex>());
        return n;
    }
    n->sigma = make_simplex(j.at("sigma").get<Simplex>());
    n->link = tree_from_json(j.at("link"));
    n->rest = tree_from_json(j.at("rest"));
    return n;
}

inline json decomposition_witness(int k, const DecompositionTree& t)
{
    return json{{"kind", "decomposition"}, {"k", k}, {"tree", tree_to_json(t)}};
}

inline json formula_to_json(const Formula& f)
{
    json cs = json::array();
    for (const auto& c : f.clauses) cs.push_back({c[0].dimacs(), c[1].dimacs(), c[2].dimacs()});
    return json{{"n", f.n}, {"clauses", cs}};
}

inline Formula formula_from_json(const json& j)
{
    return make_formula(j.at("n").get<int>(), j.at("clauses").get<std::vector<std::array<int, 3>>>());
}

/// Assignment as DIMACS literals, one per variable.
inline json assignment_to_json(const Assignment& a)
{
    json r = json::array();
    for (std::size_t i = 0; i < a.size(); ++i) r.push_back(a[i] ? static_cast<int>(i + 1) : -static_cast<int>(i + 1));
    return r;
}

inline Assignment assignment_from_json(const json& j, int n)
{
    Assignment a(n, false);
    std::vector<bool> seen(n, false);
    for (int lit : j.get<std::vector<int>>()) {
        const int v = std::abs(lit);
        if (v < 1 || v > n || seen[v - 1]) throw ParseError(0, "assignment literal out of range or repeated");
        seen[v - 1] = true;
        a[v - 1] = lit > 0;
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) throw ParseError(0, "assignment is not total");
    return a;
}

inline json reduction_certificate(const Formula& phi, const std::vector<Simplex>& removal, const CollapseSequence& seq,
                                  Vertex final_vertex, const Assignment& a)
{
    return json{{"kind", "reduction-certificate"},
                {"formula", formula_to_json(phi)},
                {"removal", removal},
                {"pairs", pairs_to_json(seq)},
                {"target_facets", json::array({json::array({final_vertex})})},
                {"assignment", assignment_to_json(a)}};
}

struct WitnessCheck {
    bool ok = false;
    std::string message;
    long long failing_index = -1;
};

inline std::vector<Simplex> target_from_json(const json& w)
{
    std::vector<Simplex> fs;
    for (const auto& f : w.at("target_facets")) fs.push_back(make_simplex(f.get<Simplex>()));
    return fs;
}

inline Complex without_facets(const Complex& k, const std::vector<Simplex>& removal)
{
    std::set<Simplex> r(removal.begin(), removal.end());
    std::vector<Simplex> fs;
    for (const auto& f : k.facets())
        if (!r.count(f)) fs.push_back(f);
    if (r.size() + fs.size() != k.facets().size()) throw Error("removal entries must be facets of the complex");
    return Complex::from_facets(fs);
}

/// Replays any supported witness against the complex it claims to certify.
inline WitnessCheck verify_witness(const LabeledComplex& lc, const json& w)
{
    const std::string kind = w.at("kind").get<std::string>();
    const Complex& k = lc.complex;
    if (kind == "collapse") {
        auto seq = pairs_from_json(w);
        auto r = verify_collapse_sequence(k, seq, Complex::from_facets(target_from_json(w)));
        return {r.ok, r.ok ? "collapse replays to the target" : "collapse fails", r.failing_index};
    }
    if (kind == "shelling") {
        ShellingOrder order;
        for (const auto& f : w.at("order")) order.push_back(make_simplex(f.get<Simplex>()));
        auto r = verify_shelling(k, order);
        return {r.ok, r.ok ? "valid shelling" : "not a shelling", r.failing_index};
    }
    if (kind == "decomposition") {
        const int kk = w.at("k").get<int>();
        const bool ok = verify_decomposition(k, kk, tree_from_json(w.at("tree")));
        return {ok, ok ? "valid decomposition" : "not a valid decomposition", -1};
    }
    if (kind == "reduction-certificate") {
        const Formula phi = formula_from_json(w.at("formula"));
        const LabeledComplex built = build_K_phi(phi);
        if (built.complex != k) return {false, "complex is not K_phi of the certified formula", -1};
        std::vector<Simplex> removal;
        for (const auto& t : w.at("removal")) removal.push_back(make_simplex(t.get<Simplex>()));
        auto reading = assignment_from_removal(built, removal);
        if (!reading.admissible)
            return {false, "removal leaves the sphere of " + var_name(reading.uncovered) + " intact", -1};
        const Assignment a = assignment_from_json(w.at("assignment"), phi.n);
        if (a != reading.assignment) return {false, "assignment does not match the removal set", -1};
        if (!satisfies(phi, a)) return {false, "assignment does not satisfy the formula", -1};
        auto target = target_from_json(w);
        if (target.size() != 1 || target[0].size() != 1) return {false, "target must be a single vertex", -1};
        auto r = verify_collapse_sequence(without_facets(k, removal), pairs_from_json(w), Complex::from_facets(target));
        if (!r.ok) return {false, "collapse fails", r.failing_index};
        return {true, "removal admissible, collapse replays, assignment satisfies the formula", -1};
    }
    throw ParseError(0, "unknown witness kind " + kind);
}

}  // namespace shellcx
