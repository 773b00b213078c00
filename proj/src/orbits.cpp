#include "hso/orbits.hpp"

#include <cmath>
#include <stdexcept>

namespace hso {

namespace {

// barycenter of the vertices {Q_i ; i in fund} together with the apex when
// the highest root is in the subset
OrbitPoint face_sample(int n, const std::vector<int>& fund, bool with_delta) {
    if (fund.empty()) return OrbitPoint::vertex(n, 0);
    int count = (int)fund.size() + (with_delta ? 1 : 0);
    std::vector<Rational> t(n, Rational(0));
    for (int k : fund)
        for (int i = 0; i < k; ++i) t[i] += Rational(1, 2 * count);
    return OrbitPoint(std::move(t));
}

bool in_open_unit_half(const Rational& x) {
    return x > Rational(0) && x < Rational(1, 2);
}

}  // namespace

std::string to_string(CRType t) {
    switch (t) {
        case CRType::fixed_point: return "fixed_point";
        case CRType::complex_polar: return "complex_polar";
        case CRType::totally_real_lagrangian: return "totally_real_lagrangian";
        case CRType::proper_CR: return "proper_CR";
    }
    throw std::logic_error("unreachable");
}

std::vector<FaceDescriptor> faces(const SpaceDescriptor& s) {
    int n = s.rank;
    std::vector<FaceDescriptor> out;
    for (unsigned mask = 0; mask < (1u << (n + 1)); ++mask) {
        std::vector<int> fund;
        for (int i = 1; i <= n; ++i)
            if (mask & (1u << (i - 1))) fund.push_back(i);
        bool with_delta = (mask & (1u << n)) != 0;
        out.push_back({fund, with_delta, face_sample(n, fund, with_delta)});
    }
    return out;
}

ActiveRoots active_roots(const SpaceDescriptor& s, const OrbitPoint& H) {
    if (H.n() != s.rank) throw std::invalid_argument("orbit point rank mismatch");
    ActiveRoots out;
    for (auto& r : positive_roots(s.restricted_kind, s.rank)) {
        Rational v = eval(r, H);
        if (v == Rational(0))
            out.zero_part.push_back(std::move(r));
        else if (v == Rational(1))
            out.pi_part.push_back(std::move(r));
        else
            out.active.push_back(std::move(r));
    }
    return out;
}

CRSplit cr_split(const SpaceDescriptor& s, const OrbitPoint& H) {
    CRSplit out;
    for (auto& r : active_roots(s, H).active) {
        bool complex;
        switch (r.cls()) {
            case RootClass::Long2e: complex = false; break;
            case RootClass::ShortE: complex = true; break;
            case RootClass::PairEE: {
                Rational v = eval(r.partner(), H);
                complex = v != Rational(0) && v != Rational(1);
                break;
            }
            default: throw std::logic_error("unreachable");
        }
        (complex ? out.cr_complex : out.cr_real).push_back(std::move(r));
    }
    return out;
}

ContactStatus contact_status(const SpaceDescriptor& s, const OrbitPoint& H) {
    ContactStatus out;
    auto split = cr_split(s, H);
    for (const auto& r : split.cr_real) out.real_rank += s.multiplicity(r);

    // H lies on the open edge C_i(t) = (1-t) Q_i + t Q_{i+1} exactly when one
    // coordinate sits strictly between 0 and 1/2 (coordinates are sorted, so
    // i halves precede it and zeros follow)
    int strict = 0, idx = -1;
    for (int i = 1; i <= H.n(); ++i)
        if (in_open_unit_half(H.coord(i))) { ++strict; idx = i; }
    if (strict == 1) {
        out.segment = SegmentPosition{idx - 1, Rational(2) * H.coord(idx)};
        int i = out.segment->i;
        out.contact = i == 0 || (s.restricted_kind == RootKind::C && i == s.rank - 1);
    }
    return out;
}

OrbitReport classify(const SpaceDescriptor& s, const OrbitPoint& H, const Rational& d) {
    if (!(d > Rational(0))) throw std::domain_error("classify: d must be positive");
    OrbitReport rep;
    auto act = active_roots(s, H);
    auto split = cr_split(s, H);
    rep.active = act.active;
    rep.cr_complex = split.cr_complex;
    rep.cr_real = split.cr_real;
    for (const auto& r : rep.active) rep.orbit_dim += s.multiplicity(r);

    if (rep.active.empty())
        rep.cr_type = CRType::fixed_point;
    else if (rep.cr_real.empty())
        rep.cr_type = CRType::complex_polar;
    else if (rep.cr_complex.empty())
        rep.cr_type = CRType::totally_real_lagrangian;
    else
        rep.cr_type = CRType::proper_CR;

    rep.hopf = true;
    rep.complex_dist_integrable = rep.cr_type == CRType::complex_polar;

    // ruled points: Q_a, (1/2) Q_a, (1/2)(Q_a + Q_b) for 1 <= a < b <= rank
    const int n = s.rank;
    for (int a = 1; a <= n && !rep.ruled; ++a) {
        if (H == OrbitPoint::vertex(n, a)) rep.ruled = true;
        std::vector<Rational> half(n, Rational(0));
        for (int i = 0; i < a; ++i) half[i] = Rational(1, 4);
        if (H == OrbitPoint(half)) rep.ruled = true;
        for (int b = a + 1; b <= n && !rep.ruled; ++b) {
            std::vector<Rational> mixed(n, Rational(0));
            for (int i = 0; i < a; ++i) mixed[i] = Rational(1, 2);
            for (int i = a; i < b; ++i) mixed[i] = Rational(1, 4);
            if (H == OrbitPoint(mixed)) rep.ruled = true;
        }
    }

    auto contact = contact_status(s, H);
    rep.real_rank = contact.real_rank;
    rep.contact = contact.contact;
    if (contact.contact) {
        // the edge at i = n-1 is a mirror of the one at i = 0: its effective
        // parameter is 1 - t
        Rational t_eff = contact.segment->i == 0 ? contact.segment->t
                                                 : Rational(1) - contact.segment->t;
        if (sasaki_parameter_exact(t_eff, d)) rep.sasaki_t = t_eff;
    }
    return rep;
}

double sasaki_parameter(double d) {
    if (!(d > 0)) throw std::domain_error("sasaki parameter: d must be positive");
    return 2.0 / M_PI * std::atan(1.0 / std::sqrt(d));
}

bool sasaki_parameter_exact(const Rational& t, const Rational& d) {
    if (t == Rational(1, 3)) return d == Rational(3);
    if (t == Rational(1, 2)) return d == Rational(1);
    if (t == Rational(2, 3)) return d == Rational(1, 3);
    return false;
}

double k_constant(double d, double t) {
    if (!(d > 0)) throw std::domain_error("k constant: d must be positive");
    if (!(t > 0) || !(t < 1)) throw std::domain_error("k constant: t must be in (0,1)");
    double cot_half = std::cos(t * M_PI / 2) / std::sin(t * M_PI / 2);
    double cot_full = std::cos(t * M_PI) / std::sin(t * M_PI);
    return (1.0 + 2.0 * cot_half * cot_full) / d;
}

}  // namespace hso
