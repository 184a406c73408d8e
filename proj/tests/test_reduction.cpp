#include <gtest/gtest.h>

#include <shellcx/io.hpp>
#include <shellcx/reduction.hpp>

#include "support.hpp"

using namespace shellcx;

namespace {

const std::string data = SHELLCX_DATA_DIR "/fixtures/";

Formula xxx() { return make_formula(1, {{1, 1, 1}}); }
Formula unsat_pair() { return make_formula(1, {{1, 1, 1}, {-1, -1, -1}}); }
Formula phi_prime() { return make_formula(4, {{1, 2, -3}, {-1, -2, 4}}); }

const LabeledComplex& k_xxx()
{
    static const LabeledComplex k = build_K_phi(xxx());
    return k;
}

const LabeledComplex& k_prime()
{
    static const LabeledComplex k = build_K_phi(phi_prime());
    return k;
}

Complex without(const Complex& k, const std::vector<Simplex>& removal)
{
    std::set<Simplex> r(removal.begin(), removal.end());
    std::vector<Simplex> fs;
    for (const auto& f : k.facets())
        if (!r.count(f)) fs.push_back(f);
    return Complex::from_facets(fs);
}

}  // namespace

TEST(Parse, FixtureFiles)
{
    EXPECT_EQ(parse_cnf(read_file(data + "phi_prime.cnf")), phi_prime());
    EXPECT_EQ(parse_cnf(read_file(data + "xxx.cnf")), xxx());
    EXPECT_EQ(parse_cnf(read_file(data + "unsat_pair.cnf")), unsat_pair());
    EXPECT_THROW(parse_cnf(read_file(data + "bad_clause.cnf")), ParseError);
}

TEST(Build, EulerCharacteristicCountsVariables)
{
    EXPECT_EQ(k_xxx().complex.reduced_euler_characteristic(), 1);
    EXPECT_EQ(k_prime().complex.reduced_euler_characteristic(), 4);
    EXPECT_TRUE(vertex_links_connected(k_xxx().complex));
    EXPECT_TRUE(vertex_links_connected(k_prime().complex));
    EXPECT_TRUE(k_prime().complex.is_pure(2));
    EXPECT_EQ(count_variables(k_prime()), 4);
}

TEST(Build, EulerOnRandomFormulas)
{
    std::mt19937_64 rng(4);
    for (int i = 0; i < 6; ++i) {
        auto f = random_formula(1 + i % 3, 1 + i % 2, rng);
        auto k = build_K_phi(f);
        EXPECT_EQ(k.complex.reduced_euler_characteristic(), f.n);
        EXPECT_TRUE(disconnected_links(k.complex).empty());
    }
}

TEST(Build, LinearSize)
{
    for (int n = 1; n <= 3; ++n) {
        std::vector<std::array<int, 3>> cls;
        for (int u = 1; u <= n; ++u) cls.push_back({u, u, u});
        auto f = make_formula(n, cls);
        EXPECT_LE(build_K_phi(f).complex.num_simplices(), kphi_size_constant * (f.n + f.size()));
    }
}

TEST(Build, LabelsAndSpecialEdges)
{
    const auto& k = k_xxx();
    for (const char* l : {"A", "B(x1)", "O(x1)", "S(x1)", "X[x1]", "X[-x1]", "C(c1)", "D[x1]", "D[-x1]", "s(x1)", "f(x1)",
                          "b(x1)", "p(x1)", "v(x1)", "v_and", "f[x1]", "f[-x1]", "T[x1]", "T[-x1]", "p[x1,c1,1]",
                          "f[x1,c1,3]"})
        EXPECT_TRUE(k.has(l)) << l;
    EXPECT_EQ(k.at("D[x1]").facets.size() + k.at("D[-x1]").facets.size(), 6u);
    EXPECT_EQ(k.path("p(x1)").back(), k.vertex("v_and"));
    EXPECT_EQ(k.path("p(x1)").front(), k.vertex("v(x1)"));
    const Vertex va = k.vertex("v_and");
    auto fx = k.edge("f(x1)");
    EXPECT_TRUE(std::find(fx.begin(), fx.end(), va) != fx.end());
}

TEST(Build, ConstrainOfLiteralHouseIsItsTree)
{
    const auto& k = k_xxx();
    for (const char* l : {"x1", "-x1"}) {
        const std::string lit = l;
        const Complex house = k.sub("X[" + lit + "]");
        const Complex t = k.sub("T[" + lit + "]");
        ASSERT_TRUE(is_tree(t));

        const Complex fe = k.sub("f[" + lit + "]");
        for (const auto& s : constrain_complex(k.complex, house).all_faces())
            if (!s.empty() && !t.contains(s)) EXPECT_TRUE(fe.contains(s)) << lit;

        auto disk = k.at("D[" + lit + "]").facets;
        Complex cur = without(k.complex, {disk.front()});
        std::vector<Simplex> es = k.at("s(x1)").edges();
        es.push_back(k.edge("f[" + lit + "]"));
        const Complex rim = Complex::from_facets(es);
        cur = replace_subcomplex(cur, Complex::from_facets(disk), rim);
        const Complex m = detail::intersect(cur, house);
        EXPECT_TRUE(constrain_complex(cur, m).is_subcomplex_of(t)) << lit;
        auto local = collapses_to(m, t);
        ASSERT_TRUE(local);
        auto seq = glue_local_collapse(cur, m, t, local.witness);
        EXPECT_TRUE(verify_collapse_sequence(cur, seq, replace_subcomplex(cur, m, t)).ok);
    }
}

TEST(Schedule, SingleClause)
{
    auto s = schedule_collapse(xxx(), {true}, &k_xxx());
    ASSERT_EQ(s.removal.size(), 1u);
    auto rest = without(k_xxx().complex, s.removal);
    auto r = verify_collapse_sequence(rest, s.sequence, Complex::from_facets({{s.final_vertex}}));
    EXPECT_TRUE(r.ok) << r.failing_index;
    EXPECT_TRUE(conjunction_precedes_false_disks(k_xxx(), s.removal, s.sequence));
    EXPECT_EQ(s.phases.back().end, s.sequence.size());
    EXPECT_THROW(schedule_collapse(xxx(), {false}, &k_xxx()), Error);
}

TEST(Schedule, PhiPrime)
{
    const Assignment a{true, false, false, false};
    ASSERT_TRUE(satisfies(phi_prime(), a));
    auto s = schedule_collapse(phi_prime(), a, &k_prime());
    ASSERT_EQ(s.removal.size(), 4u);
    auto rest = without(k_prime().complex, s.removal);
    EXPECT_TRUE(verify_collapse_sequence(rest, s.sequence, Complex::from_facets({{s.final_vertex}})).ok);
    auto reading = assignment_from_removal(k_prime(), s.removal);
    ASSERT_TRUE(reading.admissible);
    EXPECT_EQ(reading.assignment, a);
}

TEST(Schedule, DependencyCheckCatchesEarlyFalseDisk)
{
    auto s = schedule_collapse(xxx(), {true}, &k_xxx());
    std::set<Simplex> false_disk(k_xxx().at("D[-x1]").facets.begin(), k_xxx().at("D[-x1]").facets.end());
    auto seq = s.sequence;
    auto it = std::find_if(seq.begin(), seq.end(), [&](const CollapsePair& p) { return false_disk.count(p.coface); });
    ASSERT_NE(it, seq.end());
    CollapsePair moved = *it;
    seq.erase(it);
    seq.insert(seq.begin(), moved);
    EXPECT_FALSE(conjunction_precedes_false_disks(k_xxx(), s.removal, seq));
}

TEST(Reading, Examples)
{
    const auto& k = k_xxx();
    auto pos = assignment_from_removal(k, {k.at("D[x1]").facets[1]});
    ASSERT_TRUE(pos.admissible);
    EXPECT_EQ(pos.assignment, (Assignment{true}));
    auto neg = assignment_from_removal(k, {k.at("D[-x1]").facets[0]});
    ASSERT_TRUE(neg.admissible);
    EXPECT_EQ(neg.assignment, (Assignment{false}));
    EXPECT_THROW(assignment_from_removal(k, {}), Error);

    auto two = build_K_phi(make_formula(2, {{1, 2, 2}}));
    auto both = assignment_from_removal(two, {two.at("D[x1]").facets[0], two.at("D[-x1]").facets[0]});
    EXPECT_FALSE(both.admissible);
    EXPECT_EQ(both.uncovered, 2);
}

TEST(Decide, Examples)
{
    auto a = decide_phi_via_complex(xxx(), {}, &k_xxx());
    ASSERT_TRUE(a.sat);
    ASSERT_TRUE(a.assignment);
    EXPECT_EQ(*a.assignment, (Assignment{true}));

    auto u = decide_phi_via_complex(unsat_pair());
    EXPECT_FALSE(u.sat);
    EXPECT_EQ(u.tried, 6);

    auto p = decide_phi_via_complex(phi_prime(), {}, &k_prime());
    ASSERT_TRUE(p.sat);
    ASSERT_TRUE(p.assignment);
    EXPECT_TRUE(satisfies(phi_prime(), *p.assignment));
    EXPECT_THROW(decide_phi_via_complex(make_formula(5, {{1, 2, 3}}), {}), Error);
}

TEST(Decide, AgreesWithOracleOnSmallFamily)
{
    int sat = 0, total = 0;
    for (const auto& f : all_formulas(1, 2)) {
        auto d = decide_phi_via_complex(f);
        EXPECT_EQ(d.sat, sat_oracle(f).has_value()) << to_dimacs(f);
        if (d.assignment) EXPECT_TRUE(satisfies(f, *d.assignment));
        sat += d.sat;
        ++total;
    }
    EXPECT_GT(sat, 0);
    EXPECT_LT(sat, total);
}

TEST(Decide, FullSweepUnsat)
{
    PhiOptions o;
    o.full_sweep = true;
    auto d = decide_phi_via_complex(unsat_pair(), o);
    EXPECT_FALSE(d.sat);
    EXPECT_EQ(d.tried, static_cast<long long>(build_K_phi(unsat_pair()).complex.faces(2).size()));
}

TEST(Decide, FullSweepSatFindsAdmissibleRemoval)
{
    PhiOptions o;
    o.full_sweep = true;
    auto d = decide_phi_via_complex(xxx(), o, &k_xxx());
    ASSERT_TRUE(d.sat);
    auto rest = without(k_xxx().complex, d.removal);
    CollapseState st(std::make_shared<FaceGraph>(rest));
    for (const auto& p : d.witness) ASSERT_TRUE(st.apply(p));
    EXPECT_EQ(st.current().num_simplices(), 1u);
}

TEST(Subdivision, VerdictSurvivesBarycentricSubdivision)
{
    for (const auto& f : {xxx(), unsat_pair()}) {
        auto k = build_K_phi(f);
        auto sd = barycentric_subdivision(k.complex);
        EXPECT_EQ(sd.complex.reduced_euler_characteristic(), f.n);
        std::set<Simplex> sphere;
        for (const auto& t : sphere_triangles(k, 1)) sphere.insert(t);
        HachimoriOptions o;
        for (const auto& t : sd.complex.faces(2))
            if (sphere.count(sd.carrier_of(t))) o.pool.push_back(t);
        EXPECT_EQ(o.pool.size(), 36u);
        auto h = hachimori_decide_sd2(sd.complex, o);
        ASSERT_NE(h.status, HachimoriStatus::budget_exceeded);
        EXPECT_EQ(h.status == HachimoriStatus::shellable, sat_oracle(f).has_value()) << to_dimacs(f);
    }
}
