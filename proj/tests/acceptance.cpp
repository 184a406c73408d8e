#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include <shellcx/witness.hpp>

#include "support.hpp"

using namespace shellcx;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

/// The twenty formulas shared by the first two criteria: n and m sweep 1..4.
std::vector<Formula> sweep_formulas()
{
    std::mt19937_64 rng(1001);
    std::vector<Formula> out;
    for (int i = 0; i < 20; ++i) out.push_back(random_formula(1 + i % 4, 1 + (i / 4) % 4, rng));
    return out;
}

Outcome euler_counts_variables()
{
    int bad = 0;
    double worst = 0;
    for (const auto& f : sweep_formulas()) {
        auto t0 = Clock::now();
        auto k = build_K_phi(f);
        const bool ok = k.complex.reduced_euler_characteristic() == f.n;
        worst = std::max(worst, seconds_since(t0));
        bad += !ok;
    }
    std::ostringstream o;
    o << "20 formulas, " << bad << " mismatches, slowest " << worst << " s";
    return {bad == 0 && worst < 1.0, o.str()};
}

Outcome links_connected()
{
    int bad = 0;
    double worst = 0;
    for (const auto& f : sweep_formulas()) {
        auto t0 = Clock::now();
        auto k = build_K_phi(f);
        bad += !vertex_links_connected(k.complex);
        worst = std::max(worst, seconds_since(t0));
    }
    std::ostringstream o;
    o << "20 formulas, " << bad << " with a disconnected link, slowest " << worst << " s";
    return {bad == 0 && worst < 1.0, o.str()};
}

std::vector<Simplex> sorted(std::vector<Simplex> v)
{
    std::sort(v.begin(), v.end());
    return v;
}

Outcome gadget_lemmas()
{
    auto t0 = Clock::now();
    std::vector<std::string> fails;
    for (int sub : {1, 2, 4}) {
        OneHouseSpec s;
        s.subdivisions = sub;
        auto h = build_one_house(s);
        if (sorted(free_faces(h.complex)) != sorted(label_edges(h, "f")))
            fails.push_back("1-house free faces (subdivisions " + std::to_string(sub) + ")");
    }
    OneHouseSpec plan;
    plan.attachments = {{"a", {"x", "m", "a1", "a2"}}, {"b", {"m", "b1"}}, {"c", {"x", "c1", "c2"}}};
    auto h = build_one_house(plan);
    if (sorted(free_faces(h.complex)) != sorted(label_edges(h, "f"))) fails.push_back("1-house free faces with plan");
    const Complex wall = h.sub("L");
    std::set<Vertex> rim;
    for (const auto& e : boundary_edges(wall)) rim.insert(e.begin(), e.end());
    std::mt19937_64 rng(55);
    for (int i = 0; i < 5; ++i) {
        std::set<Vertex> in{h.vertex("x")};
        std::vector<Simplex> edges;
        for (int step = 0; step < 2 + 3 * i; ++step) {
            std::vector<Simplex> cand;
            for (const auto& e : wall.faces(1)) {
                const bool a = in.count(e[0]), b = in.count(e[1]);
                if (a != b && !rim.count(a ? e[1] : e[0])) cand.push_back(e);
            }
            if (cand.empty()) break;
            const auto e = cand[std::uniform_int_distribution<std::size_t>(0, cand.size() - 1)(rng)];
            in.insert(e.begin(), e.end());
            edges.push_back(e);
        }
        auto t = Complex::from_facets(edges);
        auto r = collapses_to(h.complex, t);
        if (!is_tree(t) || !r || !verify_collapse_sequence(h.complex, r.witness, t).ok)
            fails.push_back("1-house subtree " + std::to_string(i));
    }
    auto three = build_three_house();
    std::vector<Simplex> fe;
    for (int i = 1; i <= 3; ++i)
        for (const auto& e : label_edges(three, "f" + std::to_string(i))) fe.push_back(e);
    if (sorted(free_faces(three.complex)) != sorted(fe)) fails.push_back("3-house free faces");
    for (int skip = 1; skip <= 3; ++skip) {
        auto t = three_house_tree(three, skip);
        auto r = collapses_to(three.complex, t);
        if (!r || !verify_collapse_sequence(three.complex, r.witness, t).ok)
            fails.push_back("3-house tree without f" + std::to_string(skip));
    }
    const double el = seconds_since(t0);
    std::string d = "1-house free faces x4, 5 wall subtrees, 3-house free faces, 3 tree variants";
    for (const auto& f : fails) d += "; FAILED " + f;
    return {fails.empty() && el < 10.0, d + "; " + std::to_string(el) + " s"};
}

Complex remove_facets(const Complex& k, const std::vector<Simplex>& r) { return without_facets(k, r); }

Outcome satisfiable_pipeline()
{
    auto t0 = Clock::now();
    std::mt19937_64 rng(404);
    int done = 0, bad = 0;
    while (done < 10) {
        const int n = 1 + done % 3;
        auto f = random_formula(n, 1 + done % 3, rng);
        auto a = sat_oracle(f);
        if (!a) continue;
        auto k = build_K_phi(f);
        auto s = schedule_collapse(f, *a, &k);
        const bool ok = static_cast<int>(s.removal.size()) == n &&
                        verify_collapse_sequence(remove_facets(k.complex, s.removal), s.sequence,
                                                 Complex::from_facets({{s.final_vertex}}))
                            .ok;
        bad += !ok;
        ++done;
    }
    const double el = seconds_since(t0);
    std::ostringstream o;
    o << "10 satisfiable formulas, " << bad << " schedules rejected by replay, " << el << " s";
    return {bad == 0 && el < 30.0, o.str()};
}

Outcome unsatisfiable_pipeline()
{
    auto t0 = Clock::now();
    std::vector<Formula> fs{make_formula(1, {{1, 1, 1}, {-1, -1, -1}})};
    std::mt19937_64 rng(505);
    while (fs.size() < 6) {
        std::uniform_int_distribution<int> nv(1, 2), nm(4, 9);
        auto f = random_formula(nv(rng), nm(rng), rng);
        if (!sat_oracle(f)) fs.push_back(f);
    }
    int bad = 0;
    long long tried = 0;
    PhiOptions opt;
    opt.jobs = jobs();
    for (const auto& f : fs) {
        auto d = decide_phi_via_complex(f, opt);
        tried += d.tried;
        bad += d.sat || d.tried != static_cast<long long>(std::pow(6, f.n));
    }
    PhiOptions sweep = opt;
    sweep.full_sweep = true;
    auto full = decide_phi_via_complex(fs[0], sweep);
    const auto ntri = build_K_phi(fs[0]).complex.faces(2).size();
    const bool sweep_ok = !full.sat && full.tried == static_cast<long long>(ntri);
    const double el = seconds_since(t0);
    std::ostringstream o;
    o << fs.size() << " unsatisfiable formulas, " << tried << " admissible removals all non-collapsible (" << bad
      << " failures); full sweep over " << ntri << " single triangles " << (sweep_ok ? "all fail" : "FOUND A COLLAPSE")
      << "; " << el << " s";
    return {bad == 0 && sweep_ok && el < 300.0, o.str()};
}

Outcome oracle_equivalence()
{
    auto t0 = Clock::now();
    std::vector<Formula> fs;
    for (int n = 1; n <= 2; ++n)
        for (int m = 0; m <= 2; ++m)
            for (auto& f : all_formulas(n, m)) fs.push_back(std::move(f));
    const std::size_t exhaustive = fs.size();
    std::mt19937_64 rng(606);
    for (int i = 0; i < 50; ++i) {
        std::uniform_int_distribution<int> nv(1, 3), nm(1, 3);
        const int n = nv(rng);
        fs.push_back(random_formula(n, nm(rng), rng));
    }
    PhiOptions opt;
    opt.jobs = jobs();
    int bad = 0, sat = 0;
    for (const auto& f : fs) {
        auto d = decide_phi_via_complex(f, opt);
        const bool truth = sat_oracle(f).has_value();
        bad += d.sat != truth || (d.sat && (!d.assignment || !satisfies(f, *d.assignment)));
        sat += truth;
    }
    const double el = seconds_since(t0);
    std::ostringstream o;
    o << exhaustive << " exhaustive + 50 random formulas (" << sat << " satisfiable), " << bad << " disagreements, " << el
      << " s";
    return {bad == 0 && el < 600.0, o.str()};
}

Outcome shellability_facts()
{
    auto t0 = Clock::now();
    std::vector<std::string> fails;
    for (int d = 1; d <= 4; ++d) {
        auto k = Complex::simplex_boundary(d);
        auto r = decide_shellable(k);
        if (!r || !verify_shelling(k, r.order).ok) fails.push_back("boundary of simplex " + std::to_string(d));
    }
    auto b = Complex::simplex_boundary(3);
    auto fs = b.facets();
    std::sort(fs.begin(), fs.end());
    int orders = 0;
    do {
        orders += verify_shelling(b, fs).ok;
    } while (std::next_permutation(fs.begin(), fs.end()));
    if (orders != 24) fails.push_back("only " + std::to_string(orders) + " of 24 orders shell");
    ShellOptions exhaustive;
    exhaustive.prechecks = false;
    auto t = decide_shellable(torus7(), exhaustive);
    if (t.verdict != Verdict::no) fails.push_back("torus");
    const double el = seconds_since(t0);
    std::string d = "boundaries d=1..4 shellable, 24/24 orders of the tetrahedron boundary, torus no after " +
                    std::to_string(t.nodes) + " nodes";
    for (const auto& f : fails) d += "; FAILED " + f;
    return {fails.empty() && el < 120.0, d + "; " + std::to_string(el) + " s"};
}

Outcome decomposability()
{
    auto t0 = Clock::now();
    std::mt19937_64 rng(808);
    int violations = 0, shellable = 0, budget = 0;
    for (int i = 0; i < 200; ++i) {
        std::uniform_int_distribution<int> nf(1, 8), nv(5, 7);
        auto k = Complex::from_facets(testsupport::random_pure(rng, nv(rng), nf(rng), 2));
        auto s = decide_shellable(k);
        std::array<Verdict, 3> dec{};
        for (int kk = 0; kk <= 2; ++kk) {
            auto r = decide_k_decomposable(k, kk);
            dec[kk] = r.verdict;
            if (r && !verify_decomposition(k, kk, r.tree)) ++violations;
        }
        for (auto v : dec) budget += v == Verdict::budget_exceeded;
        budget += s.verdict == Verdict::budget_exceeded;
        violations += (s.verdict == Verdict::yes) != (dec[2] == Verdict::yes);
        for (int kk = 0; kk < 2; ++kk) violations += dec[kk] == Verdict::yes && dec[kk + 1] != Verdict::yes;
        shellable += bool(s);
    }
    const double el = seconds_since(t0);
    std::ostringstream o;
    o << "200 pure 2-complexes (" << shellable << " shellable), " << violations << " violations, " << budget
      << " budget hits, " << el << " s";
    return {violations == 0 && budget == 0 && el < 600.0, o.str()};
}

Outcome join_transfer()
{
    auto t0 = Clock::now();
    std::mt19937_64 rng(909);
    int bad = 0, yes = 0;
    for (int i = 0; i < 50; ++i) {
        std::uniform_int_distribution<int> nf(1, 6);
        auto k = Complex::from_facets(testsupport::random_pure(rng, 6, nf(rng), 1 + i % 2));
        const bool base = bool(decide_shellable(k));
        yes += base;
        for (int l : {0, 1}) bad += bool(decide_shellable(cone(k, l))) != base;
    }
    const double el = seconds_since(t0);
    std::ostringstream o;
    o << "50 complexes (" << yes << " shellable), cones of dimension 0 and 1, " << bad << " mismatches, " << el << " s";
    return {bad == 0 && el < 300.0, o.str()};
}

Outcome sd2_consistency()
{
    auto t0 = Clock::now();
    std::vector<std::vector<Simplex>> cases{
        {{0, 1, 2}},
        {{0, 1, 2}, {1, 2, 3}},
        {{0, 1, 2}, {0, 1, 3}, {0, 1, 4}},
        {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}},
        {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}},
        {{0, 1, 2}, {0, 3, 4}},
        {{0, 1, 2}, {3, 4, 5}},
        {{0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {0, 3, 4}},
        {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}, {0, 1, 4}},
        {{0, 1, 2}, {1, 2, 3}, {2, 3, 4}, {3, 4, 0}, {4, 0, 1}},
    };
    std::mt19937_64 rng(1010);
    while (cases.size() < 20) {
        std::uniform_int_distribution<int> nt(1, 5), nv(4, 6);
        const int v = nv(rng);
        cases.push_back(testsupport::random_triangles(rng, v, std::min(nt(rng), v * (v - 1) * (v - 2) / 6)));
    }
    int bad = 0, yes = 0;
    for (const auto& fs : cases) {
        auto k = Complex::from_facets(fs);
        auto h = hachimori_decide_sd2(k);
        auto s = decide_shellable(barycentric_subdivision(k, 2).complex);
        const bool hs = h.status == HachimoriStatus::shellable;
        bad += s.verdict == Verdict::budget_exceeded || h.status == HachimoriStatus::budget_exceeded ||
               hs != (s.verdict == Verdict::yes);
        yes += hs;
    }
    const double el = seconds_since(t0);
    std::ostringstream o;
    o << cases.size() << " complexes with at most 5 triangles (" << yes << " shellable after two subdivisions), " << bad
      << " disagreements, " << el << " s";
    return {bad == 0 && el < 600.0, o.str()};
}

Outcome greedy_vs_dfs()
{
    auto t0 = Clock::now();
    std::mt19937_64 rng(1111);
    std::uniform_int_distribution<int> nt(1, 12), nv(4, 8);
    int bad = 0, yes = 0, searched = 0;
    for (int i = 0; i < 500; ++i) {
        Complex k;
        do {
            const int v = nv(rng);
            k = Complex::from_facets(testsupport::random_triangles(rng, v, std::min(nt(rng), v * (v - 1) * (v - 2) / 6)));
        } while (i % 2 == 0 && (k.reduced_euler_characteristic() != 0 || !k.is_connected()));
        auto g = is_collapsible_2d_greedy(k);
        auto d = is_collapsible_dfs(k);
        bad += d.verdict == Verdict::budget_exceeded || g.verdict != d.verdict;
        yes += bool(g);
        searched += d.nodes > 0;
    }
    const double el = seconds_since(t0);
    std::ostringstream o;
    o << "500 random 2-complexes (" << yes << " collapsible, " << searched << " needing search), " << bad
      << " disagreements, " << el << " s";
    return {bad == 0 && el < 300.0, o.str()};
}

Outcome linear_size()
{
    std::vector<double> ratios;
    bool bounded = true;
    std::ostringstream o;
    o << "simplices/(n+size):";
    for (int k = 1; k <= 5; ++k) {
        std::vector<std::array<int, 3>> cls;
        for (int u = 1; u <= k; ++u) cls.push_back({u, u, u});
        auto f = make_formula(k, cls);
        const double units = static_cast<double>(f.n + f.size());
        const double r = static_cast<double>(build_K_phi(f).complex.num_simplices()) / units;
        ratios.push_back(r);
        bounded = bounded && r < static_cast<double>(kphi_size_constant);
        o << ' ' << static_cast<long long>(std::llround(r));
    }
    double mean = 0;
    for (double r : ratios) mean += r;
    mean /= static_cast<double>(ratios.size());
    double var = 0;
    for (double r : ratios) var += (r - mean) * (r - mean);
    var /= static_cast<double>(ratios.size());
    const double cv = std::sqrt(var) / mean;
    const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
    o << "; coefficient of variation " << 100 * cv << "%, spread " << 100 * (*hi - *lo) / mean << "%, bound "
      << kphi_size_constant;
    return {bounded && cv < 0.05, o.str()};
}

}  // namespace

int main(int argc, char** argv)
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"reduced Euler characteristic of K_phi equals n", euler_counts_variables},
        {"vertex links of K_phi connected", links_connected},
        {"gadget free faces and collapses", gadget_lemmas},
        {"satisfiable pipeline replays to a vertex", satisfiable_pipeline},
        {"unsatisfiable pipeline never collapses", unsatisfiable_pipeline},
        {"complex decision agrees with SAT oracle", oracle_equivalence},
        {"shellability of simplex boundaries and torus", shellability_facts},
        {"shellable iff 2-decomposable, monotone in k", decomposability},
        {"shellability invariant under cones", join_transfer},
        {"sd2 criterion agrees with direct shellability", sd2_consistency},
        {"greedy and exhaustive collapsibility agree", greedy_vs_dfs},
        {"K_phi size linear in formula size", linear_size},
    };
    std::set<int> only;
    for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (!only.empty() && !only.count(id)) continue;
        auto t0 = Clock::now();
        Outcome r;
        try {
            r = criteria[i].second();
        } catch (const std::exception& e) {
            r = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s %2d  %-48s %7.2fs  %s\n", r.pass ? "PASS" : "FAIL", id, criteria[i].first.c_str(),
                    seconds_since(t0), r.detail.c_str());
        std::fflush(stdout);
        failed += !r.pass;
    }
    return failed == 0 ? 0 : 1;
}
