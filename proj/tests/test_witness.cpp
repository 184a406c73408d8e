#include <gtest/gtest.h>

#include <shellcx/witness.hpp>

using namespace shellcx;

namespace {

LabeledComplex plain(const Complex& k)
{
    LabeledComplex lc;
    lc.complex = k;
    return lc;
}

json reparse(const json& j) { return json::parse(j.dump()); }

}  // namespace

TEST(Witness, ShellingOfBoundary)
{
    auto k = Complex::simplex_boundary(3);
    auto r = decide_shellable(k);
    ASSERT_TRUE(r);
    auto c = verify_witness(plain(k), reparse(shelling_witness(r.order)));
    EXPECT_TRUE(c.ok);
    auto order = r.order;
    auto t = torus7();
    EXPECT_THROW(verify_witness(plain(t), shelling_witness(order)), Error);
}

TEST(Witness, BadShellingReportsIndex)
{
    auto k = Complex::from_facets({{1, 2, 3}, {4, 5, 6}});
    auto c = verify_witness(plain(k), shelling_witness({{1, 2, 3}, {4, 5, 6}}));
    EXPECT_FALSE(c.ok);
    EXPECT_EQ(c.failing_index, 1);
}

TEST(Witness, CollapseRoundTripAndTamper)
{
    auto k = modified_dunce_hat();
    auto r = is_collapsible_2d_greedy(k);
    ASSERT_TRUE(r);
    CollapseState st(std::make_shared<FaceGraph>(k));
    for (const auto& p : r.witness) st.apply(p);
    const Complex target = st.current();
    auto w = reparse(collapse_witness(r.witness, target));
    EXPECT_EQ(pairs_from_json(w), r.witness);
    EXPECT_TRUE(verify_witness(plain(k), w).ok);

    auto bad = w;
    bad["pairs"].erase(2);
    auto c = verify_witness(plain(k), bad);
    EXPECT_FALSE(c.ok);
    EXPECT_GE(c.failing_index, 2);
}

TEST(Witness, DecompositionRoundTrip)
{
    auto k = Complex::simplex_boundary(3);
    auto r = decide_k_decomposable(k, 0);
    ASSERT_TRUE(r);
    auto w = reparse(decomposition_witness(0, r.tree));
    EXPECT_EQ(tree_to_json(tree_from_json(w.at("tree"))), w.at("tree"));
    EXPECT_TRUE(verify_witness(plain(k), w).ok);
    EXPECT_FALSE(verify_witness(plain(torus7()), w).ok);
}

TEST(Witness, FormulaAndAssignmentJson)
{
    auto f = make_formula(4, {{1, 2, -3}, {-1, -2, 4}});
    EXPECT_EQ(formula_from_json(reparse(formula_to_json(f))), f);
    Assignment a{true, false, false, true};
    EXPECT_EQ(assignment_to_json(a), json::parse("[1,-2,-3,4]"));
    EXPECT_EQ(assignment_from_json(assignment_to_json(a), 4), a);
    EXPECT_THROW(assignment_from_json(json::parse("[1,-1]"), 2), ParseError);
    EXPECT_THROW(assignment_from_json(json::parse("[1]"), 2), ParseError);
    EXPECT_THROW(assignment_from_json(json::parse("[3,1]"), 2), ParseError);
}

TEST(Witness, ReductionCertificate)
{
    auto phi = make_formula(1, {{1, 1, 1}});
    auto k = build_K_phi(phi);
    auto s = schedule_collapse(phi, {true}, &k);
    auto w = reparse(reduction_certificate(phi, s.removal, s.sequence, s.final_vertex, {true}));
    auto c = verify_witness(k, w);
    EXPECT_TRUE(c.ok) << c.message;

    auto wrong_assignment = w;
    wrong_assignment["assignment"] = json::parse("[-1]");
    EXPECT_FALSE(verify_witness(k, wrong_assignment).ok);

    auto cut = w;
    cut["pairs"].erase(cut["pairs"].size() / 2);
    auto cc = verify_witness(k, cut);
    EXPECT_FALSE(cc.ok);
    EXPECT_GE(cc.failing_index, 0);

    auto other = build_K_phi(make_formula(1, {{-1, -1, -1}}));
    EXPECT_FALSE(verify_witness(other, w).ok);
}

TEST(Witness, UnknownKind)
{
    EXPECT_THROW(verify_witness(plain(Complex::simplex({1})), json{{"kind", "nope"}}), ParseError);
}
