#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "hso/einstein.hpp"

using namespace hso;

namespace {

SpaceDescriptor grass(int k, int n) { return catalog(Family::Grassmannian, k, n); }
SpaceDescriptor orgrass(int n) { return catalog(Family::OrientedGrassmannian, n); }
SpaceDescriptor soq(int n) { return catalog(Family::SOquotient, n); }
SpaceDescriptor spq(int n) { return catalog(Family::SpQuotient, n); }

}  // namespace

TEST_CASE("bracket norm table") {
    CHECK(norm_table().size() == 8);
    CHECK(norm_table_value(BetaRelation::diff_fiber_longest) == Rational(2));
    CHECK(norm_table_value(BetaRelation::diff_fiber_shortest) == Rational(2));
    CHECK(norm_table_value(BetaRelation::opposite_fiber_longest_pairsum) == Rational(8));
    CHECK(norm_table_value(BetaRelation::opposite_fiber_shortest) == Rational(8));
    CHECK(norm_table_value(BetaRelation::same_fiber_other_longest) == Rational(8));
    CHECK(norm_table_value(BetaRelation::same_fiber_partner) == Rational(8));
    CHECK(norm_table_value(BetaRelation::e1_fiber_longest) == Rational(4));
    CHECK(norm_table_value(BetaRelation::cross_length_C2) == Rational(0));
}

TEST_CASE("polar fiber basis layout") {
    // fibers over e_1 +- e_l for l = 2..rank, plus e_1 for kind BC; each
    // fiber contributes its multiplicity in basis vectors
    auto count = [](const SpaceDescriptor& s) {
        auto basis = polar_fiber_basis(s);
        std::map<std::vector<int>, int> per_root;
        for (const auto& v : basis) ++per_root[v.root.coeffs()];
        return std::pair(basis.size(), per_root);
    };

    auto [n_sp3, roots_sp3] = count(spq(3));
    CHECK(n_sp3 == 4);
    CHECK(roots_sp3.size() == 4);
    for (const auto& [c, m] : roots_sp3) CHECK(m == 1);

    auto [n_g25, roots_g25] = count(grass(2, 5));
    CHECK(n_g25 == 6);  // two pair fibers of two plus the short fiber of two
    CHECK(roots_g25.at(std::vector<int>{1, 0}) == 2);

    auto [n_eiii, roots_eiii] = count(catalog(Family::EIII));
    CHECK(n_eiii == 20);
    CHECK(roots_eiii.at(std::vector<int>{1, 1}) == 6);
    CHECK(roots_eiii.at(std::vector<int>{1, 0}) == 8);

    CHECK(polar_fiber_basis(catalog(Family::EVII)).size() == 32);  // 4 fibers of 8

    // the reference vector heads the list and sits over e_1 + e_2
    auto basis = polar_fiber_basis(grass(2, 4));
    CHECK(basis.front().root.coeffs() == std::vector<int>{1, 1});
    CHECK(basis.front().member == 0);
    CHECK(basis.front().longest);

    CHECK_THROWS_AS(polar_fiber_basis(grass(1, 4)), std::invalid_argument);
}

TEST_CASE("relation of each basis vector to the reference") {
    using R = BetaRelation;

    // all fibers involution-fixed: the symplectic family
    auto sp3 = polar_fiber_basis(spq(3));
    const auto& ref_sp = sp3.front();
    CHECK_FALSE(ref_sp.longest);
    CHECK_FALSE(classify_relation(ref_sp, sp3[0]).has_value());
    CHECK(classify_relation(ref_sp, sp3[1]) == R::opposite_fiber_shortest);
    CHECK(classify_relation(ref_sp, sp3[2]) == R::diff_fiber_shortest);
    CHECK(classify_relation(ref_sp, sp3[3]) == R::diff_fiber_shortest);

    // swapped pairs: the balanced Grassmannian
    auto g24 = polar_fiber_basis(grass(2, 4));
    const auto& ref_g = g24.front();
    CHECK(classify_relation(ref_g, g24[1]) == R::same_fiber_partner);
    CHECK(classify_relation(ref_g, g24[2]) == R::opposite_fiber_longest_pairsum);
    CHECK_FALSE(classify_relation(ref_g, g24[3]).has_value());  // counted with member 0

    // mixed fiber of the odd oriented family: a pair plus one fixed root
    auto og7 = polar_fiber_basis(orgrass(7));
    const auto& ref_o = og7.front();
    CHECK(classify_relation(ref_o, og7[1]) == R::same_fiber_partner);
    CHECK(classify_relation(ref_o, og7[2]) == R::same_fiber_other_longest);
    CHECK(classify_relation(ref_o, og7[3]) == R::opposite_fiber_longest_pairsum);
    CHECK_FALSE(classify_relation(ref_o, og7[4]).has_value());
    CHECK(classify_relation(ref_o, og7[5]) == R::cross_length_C2);

    // short fiber and a second pair fiber: the odd so-quotient at rank 2
    auto so5 = polar_fiber_basis(soq(5));
    const auto& ref_s = so5.front();
    int n_short = 0, n_pairsum = 0, n_null = 0, n_same = 0;
    for (const auto& v : so5) {
        auto rel = classify_relation(ref_s, v);
        if (!rel) { ++n_null; continue; }
        if (*rel == R::e1_fiber_longest) ++n_short;
        if (*rel == R::opposite_fiber_longest_pairsum) ++n_pairsum;
        if (*rel == R::same_fiber_partner || *rel == R::same_fiber_other_longest)
            ++n_same;
    }
    CHECK(n_short == 4);
    CHECK(n_pairsum == 1);  // only the aligned pair, counted once
    CHECK(n_same == 3);
    CHECK(n_null == 4);  // the reference, the unaligned pair, and pair members 1

    // distinct fibers at rank >= 3 with swapped pairs
    auto g36 = polar_fiber_basis(grass(3, 6));
    const auto& ref_36 = g36.front();
    int n_diff = 0;
    for (const auto& v : g36)
        if (classify_relation(ref_36, v) == R::diff_fiber_longest) ++n_diff;
    CHECK(n_diff == 4);  // both vectors of e_1 + e_3 and of e_1 - e_3
}

TEST_CASE("diagonal ricci values") {
    CHECK(ricci_diagonal(grass(2, 4)) == Rational(8));
    CHECK(ricci_diagonal(grass(4, 8)) == Rational(16));
    CHECK(ricci_diagonal(orgrass(7)) == Rational(12));
    CHECK(ricci_diagonal(orgrass(10)) == Rational(24));
    CHECK(ricci_diagonal(soq(4)) == Rational(16));
    CHECK(ricci_diagonal(soq(5)) == Rational(20));
    CHECK(ricci_diagonal(spq(2)) == Rational(4));
    CHECK(ricci_diagonal(spq(5)) == Rational(10));
    CHECK(ricci_diagonal(catalog(Family::EIII)) == Rational(32));
    CHECK(ricci_diagonal(catalog(Family::EVII)) == Rational(48));

    // rank-one projective spaces take the value forced by their polar
    CHECK(ricci_diagonal(grass(1, 4)) == Rational(12));
    CHECK(ricci_diagonal(grass(1, 6)) == Rational(20));
    CHECK(ricci_diagonal(soq(3)) == Rational(12));
}

TEST_CASE("diagonal ricci closed form from the multiplicities") {
    // the fiber sum collapses to 2 rank m(e+-e) + m(e) at rank >= 2
    for (const auto& s : spaces_up_to_rank(4)) {
        if (s.rank < 2) continue;
        int mee = s.mult.at(RootClass::PairEE);
        int me = s.mult.count(RootClass::ShortE) ? s.mult.at(RootClass::ShortE) : 0;
        CHECK(ricci_diagonal(s) == Rational(2 * s.rank * mee + me));
    }
}

TEST_CASE("einstein constant scales as (d+1)/(2d)") {
    CHECK(einstein_constant(spq(2), Rational(1)) == Rational(4));
    CHECK(einstein_constant(spq(2), Rational(1, 3)) == Rational(8));
    CHECK(einstein_constant(grass(2, 4), Rational(2)) == Rational(6));
    CHECK(einstein_constant(catalog(Family::EIII), Rational(8, 3)) == Rational(22));
    for (auto d : {Rational(1, 2), Rational(1), Rational(3), Rational(7, 3)})
        CHECK(einstein_constant(soq(4), d) * Rational(2) * d / (d + Rational(1)) ==
              Rational(16));
    CHECK_THROWS_AS(einstein_constant(spq(2), Rational(0)), std::domain_error);
}

TEST_CASE("sasaki-einstein solutions per family") {
    for (int n = 2; n <= 8; ++n) {
        auto d = solve_sasaki_einstein(grass(n, 2 * n));
        REQUIRE(d.has_value());
        CHECK(*d == Rational(n, n - 1));
    }
    for (int n = 5; n <= 10; ++n) {
        auto d = solve_sasaki_einstein(orgrass(n));
        REQUIRE(d.has_value());
        CHECK(*d == Rational(n - 4));
    }
    for (int n = 4; n <= 8; ++n) {
        auto d = solve_sasaki_einstein(soq(n));
        REQUIRE(d.has_value());
        CHECK(*d == Rational(n, n - 3));
    }
    CHECK_FALSE(solve_sasaki_einstein(soq(3)).has_value());
    for (int n = 2; n <= 8; ++n) {
        auto d = solve_sasaki_einstein(spq(n));
        REQUIRE(d.has_value());
        CHECK(*d == Rational(1));
    }
    CHECK(solve_sasaki_einstein(catalog(Family::EIII)) == Rational(8, 3));
    CHECK(solve_sasaki_einstein(catalog(Family::EVII)) == Rational(12, 5));
}

TEST_CASE("families without a solution") {
    // projective spaces: the equation degenerates to an identity in tau
    for (int n = 3; n <= 10; ++n)
        CHECK_FALSE(solve_sasaki_einstein(grass(1, n)).has_value());
    // unbalanced Grassmannians: the polar is a product with unequal factors
    for (int n = 3; n <= 8; ++n)
        for (int k = 2; k < n; ++k) {
            if (2 * k == n) continue;
            CHECK_FALSE(solve_sasaki_einstein(grass(k, n)).has_value());
        }
}

TEST_CASE("eta-einstein coefficients") {
    auto [lambda, mu] = eta_einstein_coefficients(Rational(4), 5);
    CHECK(lambda == Rational(2));
    CHECK(mu == Rational(2));
    // at the solving d the transverse constant absorbs everything
    auto [l2, m2] = eta_einstein_coefficients(Rational(12), 11);
    CHECK(l2 == Rational(10));
    CHECK(m2 == Rational(0));
    auto [l3, m3] = eta_einstein_coefficients(Rational(12), 9);
    CHECK(m3 == Rational(-2));
    CHECK_THROWS_AS(eta_einstein_coefficients(Rational(4), 4), std::invalid_argument);
    CHECK_THROWS_AS(eta_einstein_coefficients(Rational(4), 1), std::invalid_argument);
}

TEST_CASE("submersion scale") {
    CHECK(submersion_scale(Rational(1)) == Rational(1, 2));
    CHECK(submersion_scale(Rational(3)) == Rational(1, 4));
    CHECK(submersion_scale(Rational(1, 3)) == Rational(3, 4));
    CHECK_THROWS_AS(submersion_scale(Rational(-1)), std::domain_error);
}

TEST_CASE("solution table rows") {
    auto rows = solution_table();
    auto find = [&](const std::string& space, const std::string& params) {
        for (const auto& r : rows)
            if (r.space == space && r.params == params) return r;
        throw std::logic_error("row not found: " + space);
    };

    CHECK(find("Sp(n)/U(n)", "n=3").d_solution == Rational(1));
    CHECK(find("Sp(n)/U(n)", "n=3").d_symbolic == "1");
    CHECK(find("EIII", "").d_solution == Rational(8, 3));
    CHECK(find("EVII", "").d_solution == Rational(12, 5));
    CHECK(find("G_n(C^2n)", "n=4").d_solution == Rational(4, 3));
    CHECK(find("G~_2(R^n)", "n=9").d_solution == Rational(5));
    CHECK(find("SO(2n)/U(n)", "n=3").d_symbolic == "none");
    CHECK_FALSE(find("SO(2n)/U(n)", "n=3").d_solution.has_value());
    CHECK_FALSE(find("CP^(n-1)", "n=7").d_solution.has_value());
    CHECK_FALSE(find("G_2(C^n)", "n=7").d_solution.has_value());

    // every instantiated row solves consistently with the direct solver
    for (const auto& r : rows)
        CHECK(r.d_solution == solve_sasaki_einstein(r.descriptor));

    auto md = table_markdown(rows);
    CHECK(md.find("| space | params | d (symbolic) | d |") != std::string::npos);
    CHECK(md.find("| EIII |  | 8/3 | 8/3 |") != std::string::npos);
    CHECK(md.find("| Sp(n)/U(n) | n=2 | 1 | 1 |") != std::string::npos);
    CHECK(md.find("| SO(2n)/U(n) | n=3 | none | none |") != std::string::npos);
}
