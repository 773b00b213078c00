#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "hso/orbits.hpp"

using namespace hso;

namespace {

OrbitPoint pt(std::vector<Rational> t) { return OrbitPoint(std::move(t)); }

const Rational r0(0), r14(1, 4), r12(1, 2);

const OrbitPoint& face_sample(const std::vector<FaceDescriptor>& fs,
                              const std::vector<int>& fund, bool with_delta) {
    for (const auto& f : fs)
        if (f.fund == fund && f.with_delta == with_delta) return f.sample;
    throw std::logic_error("face not found");
}

std::multiset<std::vector<int>> coeff_set(const std::vector<RestrictedRoot>& roots) {
    std::multiset<std::vector<int>> out;
    for (const auto& r : roots) out.insert(r.coeffs());
    return out;
}

}  // namespace

TEST_CASE("face enumeration") {
    auto sp2 = catalog(Family::SpQuotient, 2);
    auto fs = faces(sp2);
    CHECK(fs.size() == 8);  // subsets of the fundamental system plus the highest root
    CHECK(faces(catalog(Family::SpQuotient, 3)).size() == 16);
    CHECK(faces(catalog(Family::Grassmannian, 2, 5)).size() == 8);

    // barycenter samples at rank 2
    CHECK(face_sample(fs, {1}, false) == pt({r12, r0}));
    CHECK(face_sample(fs, {1}, true) == pt({r14, r0}));
    CHECK(face_sample(fs, {1, 2}, false) == pt({r12, r14}));
    CHECK(face_sample(fs, {1, 2}, true) == pt({Rational(1, 3), Rational(1, 6)}));
    CHECK(face_sample(fs, {2}, true) == pt({r14, r14}));
    // both subsets without a fundamental root sample the apex
    CHECK(face_sample(fs, {}, false).is_zero());
    CHECK(face_sample(fs, {}, true).is_zero());

    auto fs3 = faces(catalog(Family::SpQuotient, 3));
    CHECK(face_sample(fs3, {1, 3}, false) == pt({r12, r14, r14}));
    CHECK(face_sample(fs3, {2}, true) == pt({r14, r14, r0}));
    CHECK(face_sample(fs3, {1, 2, 3}, true) ==
          pt({Rational(3, 8), r14, Rational(1, 8)}));
}

TEST_CASE("every face sample satisfies the polytope constraints") {
    for (const auto& s : spaces_up_to_rank(4))
        for (const auto& f : faces(s))
            for (const auto& r : positive_roots(s.restricted_kind, s.rank)) {
                Rational v = eval(r, f.sample);
                CHECK(v >= Rational(0));
                CHECK(v <= Rational(1));
            }
}

TEST_CASE("active root partition at spot points") {
    auto sp2 = catalog(Family::SpQuotient, 2);
    auto act = active_roots(sp2, pt({r14, r14}));
    CHECK(coeff_set(act.active) ==
          std::multiset<std::vector<int>>{{1, 1}, {2, 0}, {0, 2}});
    CHECK(coeff_set(act.zero_part) == std::multiset<std::vector<int>>{{1, -1}});
    CHECK(act.pi_part.empty());

    auto g25 = catalog(Family::Grassmannian, 2, 5);
    auto act2 = active_roots(g25, OrbitPoint::vertex(2, 1));
    CHECK(coeff_set(act2.active) ==
          std::multiset<std::vector<int>>{{1, 0}, {1, 1}, {1, -1}});
    CHECK(coeff_set(act2.zero_part) == std::multiset<std::vector<int>>{{0, 1}, {0, 2}});
    CHECK(coeff_set(act2.pi_part) == std::multiset<std::vector<int>>{{2, 0}});

    CHECK_THROWS_AS(active_roots(sp2, pt({r14, r14, r0})), std::invalid_argument);
}

TEST_CASE("the three parts partition the positive system on every face") {
    for (const auto& s : spaces_up_to_rank(4)) {
        std::size_t total = positive_roots(s.restricted_kind, s.rank).size();
        for (const auto& f : faces(s)) {
            auto act = active_roots(s, f.sample);
            CHECK(act.active.size() + act.zero_part.size() + act.pi_part.size() == total);
            for (const auto& r : act.active) {
                Rational v = eval(r, f.sample);
                CHECK(v > Rational(0));
                CHECK(v < Rational(1));
            }
            for (const auto& r : act.zero_part) CHECK(eval(r, f.sample) == Rational(0));
            for (const auto& r : act.pi_part) CHECK(eval(r, f.sample) == Rational(1));
        }
    }
}

TEST_CASE("complex-real split follows the root shape rules") {
    for (const auto& s : spaces_up_to_rank(4)) {
        for (const auto& f : faces(s)) {
            auto act = active_roots(s, f.sample);
            auto split = cr_split(s, f.sample);
            // the split partitions the active set
            auto merged = coeff_set(split.cr_complex);
            for (const auto& r : split.cr_real) merged.insert(r.coeffs());
            CHECK(merged == coeff_set(act.active));
            // long roots are real, short roots are complex, pair roots are
            // complex exactly when the partner is active too
            for (const auto& r : split.cr_real) {
                CHECK(r.cls() != RootClass::ShortE);
                if (r.cls() == RootClass::PairEE) {
                    Rational v = eval(r.partner(), f.sample);
                    CHECK((v == Rational(0) || v == Rational(1)));
                }
            }
            for (const auto& r : split.cr_complex) {
                CHECK(r.cls() != RootClass::Long2e);
                if (r.cls() == RootClass::PairEE) {
                    Rational v = eval(r.partner(), f.sample);
                    CHECK(v > Rational(0));
                    CHECK(v < Rational(1));
                }
            }
        }
    }
}

TEST_CASE("real part described by the coordinate pattern") {
    // 2e_i is real-active iff t_i is strictly inside (0, 1/2); e_a + e_b with
    // a < b is real-active iff t_a = t_b strictly inside; e_a - e_b never is
    for (const auto& s : spaces_up_to_rank(3)) {
        for (const auto& f : faces(s)) {
            const auto& H = f.sample;
            auto split = cr_split(s, H);
            std::multiset<std::vector<int>> expect;
            auto inside = [](const Rational& x) {
                return x > Rational(0) && x < Rational(1, 2);
            };
            for (int i = 1; i <= s.rank; ++i)
                if (inside(H.coord(i)))
                    expect.insert(RestrictedRoot::two_e(i, s.rank).coeffs());
            for (int a = 1; a <= s.rank; ++a)
                for (int b = a + 1; b <= s.rank; ++b)
                    if (H.coord(a) == H.coord(b) && inside(H.coord(a)))
                        expect.insert(RestrictedRoot::sum_e(a, b, s.rank, +1).coeffs());
            CHECK(coeff_set(split.cr_real) == expect);
        }
    }
}

TEST_CASE("orbit type at distinguished points") {
    auto sp2 = catalog(Family::SpQuotient, 2);
    Rational d(1);
    CHECK(classify(sp2, pt({r0, r0}), d).cr_type == CRType::fixed_point);
    CHECK(classify(sp2, OrbitPoint::vertex(2, 1), d).cr_type == CRType::complex_polar);
    // the far vertex of a kind-C system has no active roots at all
    CHECK(classify(sp2, OrbitPoint::vertex(2, 2), d).cr_type == CRType::fixed_point);
    CHECK(classify(sp2, OrbitPoint::vertex(2, 2), d).orbit_dim == 0);
    CHECK(classify(sp2, pt({r14, r14}), d).cr_type == CRType::totally_real_lagrangian);
    CHECK(classify(sp2, pt({r14, r0}), d).cr_type == CRType::proper_CR);
    CHECK(classify(sp2, pt({Rational(1, 3), Rational(1, 6)}), d).cr_type ==
          CRType::proper_CR);

    auto g25 = catalog(Family::Grassmannian, 2, 5);
    CHECK(classify(g25, OrbitPoint::vertex(2, 2), d).cr_type == CRType::complex_polar);
    // short roots stay active on the all-equal segment, so kind BC never
    // reaches the Lagrangian case there
    CHECK(classify(g25, pt({r14, r14}), d).cr_type == CRType::proper_CR);

    auto cp3 = catalog(Family::Grassmannian, 1, 4);
    CHECK(classify(cp3, pt({r12}), d).cr_type == CRType::complex_polar);
    CHECK(classify(cp3, pt({r14}), d).cr_type == CRType::proper_CR);
    CHECK(classify(cp3, pt({r0}), d).cr_type == CRType::fixed_point);
}

TEST_CASE("orbit dimension is the active multiplicity sum") {
    Rational d(1);
    auto g25 = catalog(Family::Grassmannian, 2, 5);
    CHECK(classify(g25, OrbitPoint::vertex(2, 2), d).orbit_dim == 4);
    CHECK(classify(g25, OrbitPoint::vertex(2, 1), d).orbit_dim == 6);
    auto sp2 = catalog(Family::SpQuotient, 2);
    CHECK(classify(sp2, pt({r14, r14}), d).orbit_dim == 3);
    for (const auto& s : spaces_up_to_rank(3))
        for (const auto& f : faces(s)) {
            auto rep = classify(s, f.sample, d);
            int dim = 0;
            for (const auto& r : rep.active) dim += s.multiplicity(r);
            CHECK(rep.orbit_dim == dim);
        }
}

TEST_CASE("hopf everywhere, integrable exactly at the complex polars") {
    Rational d(1);
    for (const auto& s : spaces_up_to_rank(4))
        for (const auto& f : faces(s)) {
            auto rep = classify(s, f.sample, d);
            CHECK(rep.hopf);
            CHECK(rep.complex_dist_integrable == (rep.cr_type == CRType::complex_polar));
        }
}

TEST_CASE("ruled points") {
    Rational d(1);
    auto sp3 = catalog(Family::SpQuotient, 3);
    auto ruled = [&](std::vector<Rational> t) {
        return classify(sp3, pt(std::move(t)), d).ruled;
    };
    CHECK(ruled({r12, r12, r0}));         // a vertex
    CHECK(ruled({r14, r14, r0}));         // half of a vertex
    CHECK(ruled({r14, r14, r14}));
    CHECK(ruled({r12, r14, r14}));        // midpoint of two vertices
    CHECK(ruled({r12, r14, r0}));
    CHECK(ruled({r12, r12, r14}));
    CHECK_FALSE(ruled({r0, r0, r0}));
    CHECK_FALSE(ruled({Rational(1, 3), Rational(1, 6), r0}));
    CHECK_FALSE(ruled({Rational(3, 8), r14, Rational(1, 8)}));
    CHECK_FALSE(ruled({Rational(1, 3), Rational(1, 3), Rational(1, 3)}));
    CHECK_FALSE(ruled({r12, Rational(1, 3), r0}));
    CHECK_FALSE(ruled({r14, Rational(1, 8), r0}));
}

TEST_CASE("segment detection") {
    auto sp3 = catalog(Family::SpQuotient, 3);
    auto c = contact_status(sp3, pt({r12, r14, r0}));
    REQUIRE(c.segment.has_value());
    CHECK(c.segment->i == 1);
    CHECK(c.segment->t == r12);
    CHECK(c.real_rank == 1);

    c = contact_status(sp3, pt({Rational(1, 8), r0, r0}));
    REQUIRE(c.segment.has_value());
    CHECK(c.segment->i == 0);
    CHECK(c.segment->t == r14);

    c = contact_status(sp3, pt({r12, r12, Rational(3, 8)}));
    REQUIRE(c.segment.has_value());
    CHECK(c.segment->i == 2);
    CHECK(c.segment->t == Rational(3, 4));

    // two strict coordinates: not on any segment
    c = contact_status(sp3, pt({r12, r14, r14}));
    CHECK_FALSE(c.segment.has_value());
    CHECK(c.real_rank == 3);
    CHECK_FALSE(contact_status(sp3, pt({r12, r12, r0})).segment.has_value());
    CHECK(contact_status(sp3, pt({r0, r0, r0})).real_rank == 0);
}

TEST_CASE("real rank counts multiplicities") {
    // at (1/4, 1/4) both long roots and the active pair sum are real; the
    // pair sum carries the fiber multiplicity
    CHECK(contact_status(catalog(Family::Grassmannian, 2, 4), pt({r14, r14})).real_rank ==
          4);
    CHECK(contact_status(catalog(Family::SpQuotient, 2), pt({r14, r14})).real_rank == 3);
    CHECK(contact_status(catalog(Family::SOquotient, 4), pt({r14, r14})).real_rank == 6);
}

TEST_CASE("contact exactly on the first and on the kind-C last segment") {
    for (const auto& s : spaces_up_to_rank(4)) {
        std::vector<OrbitPoint> samples;
        for (const auto& f : faces(s)) samples.push_back(f.sample);
        for (int i = 0; i < s.rank; ++i)
            for (auto tt : {Rational(1, 5), Rational(1, 3), Rational(1, 2)}) {
                std::vector<Rational> t(s.rank, Rational(0));
                for (int j = 0; j < i; ++j) t[j] = Rational(1, 2);
                t[i] = tt / Rational(2);
                samples.push_back(pt(t));
            }
        for (const auto& H : samples) {
            auto c = contact_status(s, H);
            CHECK((c.real_rank == 1) == c.segment.has_value());
            bool expect_contact =
                c.segment.has_value() &&
                (c.segment->i == 0 ||
                 (s.restricted_kind == RootKind::C && c.segment->i == s.rank - 1));
            CHECK(c.contact == expect_contact);
            if (c.segment) {
                // segment index and parameter reconstruct the point
                int i = c.segment->i;
                for (int j = 1; j <= i; ++j) CHECK(H.coord(j) == Rational(1, 2));
                CHECK(Rational(2) * H.coord(i + 1) == c.segment->t);
                for (int j = i + 2; j <= s.rank; ++j) CHECK(H.coord(j) == Rational(0));
            }
        }
    }
}

TEST_CASE("exact sasaki parameter table") {
    CHECK(sasaki_parameter_exact(Rational(1, 3), Rational(3)));
    CHECK(sasaki_parameter_exact(Rational(1, 2), Rational(1)));
    CHECK(sasaki_parameter_exact(Rational(2, 3), Rational(1, 3)));
    CHECK_FALSE(sasaki_parameter_exact(Rational(1, 3), Rational(1)));
    CHECK_FALSE(sasaki_parameter_exact(Rational(1, 2), Rational(3)));
    CHECK_FALSE(sasaki_parameter_exact(Rational(2, 3), Rational(3)));
    CHECK_FALSE(sasaki_parameter_exact(Rational(1, 4), Rational(1)));
    CHECK_FALSE(sasaki_parameter_exact(Rational(1, 5), Rational(5)));
}

TEST_CASE("sasaki points found by classification") {
    auto sp2 = catalog(Family::SpQuotient, 2);
    auto rep = classify(sp2, pt({r14, r0}), Rational(1));
    REQUIRE(rep.sasaki_t.has_value());
    CHECK(*rep.sasaki_t == Rational(1, 2));
    CHECK(rep.contact);
    CHECK(rep.ruled);

    rep = classify(sp2, pt({Rational(1, 6), r0}), Rational(3));
    REQUIRE(rep.sasaki_t.has_value());
    CHECK(*rep.sasaki_t == Rational(1, 3));

    // on the last kind-C segment the geodesic parameter runs backwards
    rep = classify(sp2, pt({r12, Rational(1, 3)}), Rational(3));
    REQUIRE(rep.sasaki_t.has_value());
    CHECK(*rep.sasaki_t == Rational(1, 3));
    CHECK_FALSE(classify(sp2, pt({r12, Rational(1, 6)}), Rational(3)).sasaki_t.has_value());

    // wrong d, wrong t, or a non-contact segment all fail
    CHECK_FALSE(classify(sp2, pt({r14, r0}), Rational(3)).sasaki_t.has_value());
    CHECK_FALSE(classify(sp2, pt({Rational(1, 5), r0}), Rational(1)).sasaki_t.has_value());
    auto sp3 = catalog(Family::SpQuotient, 3);
    CHECK_FALSE(
        classify(sp3, pt({r12, r14, r0}), Rational(1)).sasaki_t.has_value());
    // kind BC has no contact on the last segment
    auto g25 = catalog(Family::Grassmannian, 2, 5);
    CHECK_FALSE(classify(g25, pt({r12, r14}), Rational(1)).sasaki_t.has_value());

    CHECK_THROWS_AS(classify(sp2, pt({r14, r0}), Rational(0)), std::domain_error);
    CHECK_THROWS_AS(classify(sp2, pt({r14, r0}), Rational(-1)), std::domain_error);
}

TEST_CASE("float sasaki parameter") {
    CHECK(sasaki_parameter(1.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(sasaki_parameter(3.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(sasaki_parameter(1.0 / 3.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    // defining identity tan^2(t pi / 2) = 1/d, monotone decreasing in d
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    double prev = sasaki_parameter(0.009);
    for (double d = 0.01; d < 50.0; d *= 1.7) {
        double t = sasaki_parameter(d);
        CHECK(t < prev);
        prev = t;
        double tn = std::tan(t * M_PI / 2);
        CHECK(std::abs(tn * tn * d - 1.0) < 1e-10);
    }
    for (int i = 0; i < 200; ++i) {
        double d = std::exp(u(rng));
        CHECK(std::abs(k_constant(d, sasaki_parameter(d)) - 1.0) < 1e-12);
    }
    CHECK_THROWS_AS(sasaki_parameter(0.0), std::domain_error);
    CHECK_THROWS_AS(sasaki_parameter(-2.0), std::domain_error);
}

TEST_CASE("k constant spot values") {
    CHECK(k_constant(1.0, 0.5) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(k_constant(4.0, 0.5) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(k_constant(3.0, 1.0 / 3.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(k_constant(0.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(k_constant(1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(k_constant(1.0, 1.0), std::domain_error);
}

TEST_CASE("face-determined fields are constant along open faces") {
    // two interior points of the same face see the same active set, so the
    // discrete classification fields agree; only the sasaki flag may differ
    Rational d(1);
    for (const auto& s : spaces_up_to_rank(3)) {
        for (const auto& f : faces(s)) {
            if (f.fund.empty()) continue;
            // a second interior point: weight the first listed vertex double
            int count = (int)f.fund.size() + (f.with_delta ? 1 : 0) + 1;
            std::vector<Rational> t(s.rank, Rational(0));
            for (int k : f.fund)
                for (int i = 0; i < k; ++i) t[i] += Rational(1, 2 * count);
            for (int i = 0; i < f.fund.front(); ++i) t[i] += Rational(1, 2 * count);
            OrbitPoint other = pt(t);
            if (other == f.sample) continue;
            auto a = classify(s, f.sample, d);
            auto b = classify(s, other, d);
            CHECK(a.cr_type == b.cr_type);
            CHECK(a.orbit_dim == b.orbit_dim);
            CHECK(a.real_rank == b.real_rank);
            CHECK(a.contact == b.contact);
            CHECK(coeff_set(a.active) == coeff_set(b.active));
            CHECK(coeff_set(a.cr_complex) == coeff_set(b.cr_complex));
        }
    }
}
