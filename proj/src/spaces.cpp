#include "hso/spaces.hpp"

#include <algorithm>
#include <stdexcept>

namespace hso {

namespace {

std::string grass_name(int k, int n) {
    return "G_" + std::to_string(k) + "(C^" + std::to_string(n) + ")";
}

std::string cp_name(int complex_dim) {
    return "CP^" + std::to_string(complex_dim);
}

// dimensions of the polar factors; closed forms that extend to the
// degenerate small parameters a polar can reach (CP^0 is a point,
// G~_2(R^3) is a 2-sphere)
int cp_dim(int complex_dim) { return 2 * complex_dim; }
int og_dim(int n) { return 2 * (n - 2); }
int g2c_dim(int n) { return 4 * (n - 2); }

}  // namespace

std::string to_string(Family f) {
    switch (f) {
        case Family::Grassmannian: return "grassmannian";
        case Family::OrientedGrassmannian: return "oriented_grassmannian";
        case Family::SOquotient: return "so_quotient";
        case Family::SpQuotient: return "sp_quotient";
        case Family::EIII: return "eiii";
        case Family::EVII: return "evii";
    }
    throw std::logic_error("unreachable");
}

SpaceDescriptor catalog(Family family, int p1, int p2) {
    SpaceDescriptor s;
    s.family = family;
    s.p1 = p1;
    s.p2 = p2;
    switch (family) {
        case Family::Grassmannian: {
            int k = p1, n = p2;
            if (k < 1 || n < 3 || k >= n)
                throw std::invalid_argument("grassmannian requires 1 <= k < n, n >= 3");
            int r = std::min(k, n - k);  // G_k(C^n) and G_{n-k}(C^n) coincide
            s.rank = r;
            s.name = grass_name(k, n);
            if (2 * r == n) {
                s.restricted_kind = RootKind::C;
                s.mult = {{RootClass::Long2e, 1}, {RootClass::PairEE, 2}};
                s.fiber = {{RootClass::Long2e, {0, 1}}, {RootClass::PairEE, {1, 0}}};
            } else {
                s.restricted_kind = RootKind::BC;
                int me = 2 * (n - 2 * r);
                s.mult = {{RootClass::Long2e, 1}, {RootClass::ShortE, me}};
                s.fiber = {{RootClass::Long2e, {0, 1}},
                           {RootClass::ShortE, {me / 2, 0}}};
                if (r >= 2) {
                    s.mult[RootClass::PairEE] = 2;
                    s.fiber[RootClass::PairEE] = {1, 0};
                }
            }
            break;
        }
        case Family::OrientedGrassmannian: {
            int n = p1;
            if (n < 5)
                throw std::invalid_argument("oriented grassmannian requires n >= 5");
            s.rank = 2;
            s.restricted_kind = RootKind::C;
            s.name = "G~_2(R^" + std::to_string(n) + ")";
            int m = n / 2;
            int pairs = m - 2;
            int fixed = n % 2;  // the odd case has one involution-fixed root per pair fiber
            s.mult = {{RootClass::Long2e, 1}, {RootClass::PairEE, 2 * pairs + fixed}};
            s.fiber = {{RootClass::Long2e, {0, 1}}, {RootClass::PairEE, {pairs, fixed}}};
            break;
        }
        case Family::SOquotient: {
            int n = p1;
            if (n < 3) throw std::invalid_argument("so quotient requires n >= 3");
            s.rank = n / 2;
            s.name = "SO(" + std::to_string(2 * n) + ")/U(" + std::to_string(n) + ")";
            s.restricted_kind = n % 2 == 0 ? RootKind::C : RootKind::BC;
            s.mult = {{RootClass::Long2e, 1}};
            s.fiber = {{RootClass::Long2e, {0, 1}}};
            if (s.rank >= 2) {
                s.mult[RootClass::PairEE] = 4;
                s.fiber[RootClass::PairEE] = {2, 0};
            }
            if (s.restricted_kind == RootKind::BC) {
                s.mult[RootClass::ShortE] = 4;
                s.fiber[RootClass::ShortE] = {2, 0};
            }
            break;
        }
        case Family::SpQuotient: {
            int n = p1;
            if (n < 2) throw std::invalid_argument("sp quotient requires n >= 2");
            s.rank = n;
            s.restricted_kind = RootKind::C;
            s.name = "Sp(" + std::to_string(n) + ")/U(" + std::to_string(n) + ")";
            // every root of the full system is fixed by the involution here
            s.mult = {{RootClass::Long2e, 1}, {RootClass::PairEE, 1}};
            s.fiber = {{RootClass::Long2e, {0, 1}}, {RootClass::PairEE, {0, 1}}};
            break;
        }
        case Family::EIII:
            s.rank = 2;
            s.restricted_kind = RootKind::BC;
            s.name = "EIII";
            s.mult = {{RootClass::Long2e, 1},
                      {RootClass::PairEE, 6},
                      {RootClass::ShortE, 8}};
            s.fiber = {{RootClass::Long2e, {0, 1}},
                       {RootClass::PairEE, {3, 0}},
                       {RootClass::ShortE, {4, 0}}};
            break;
        case Family::EVII:
            s.rank = 3;
            s.restricted_kind = RootKind::C;
            s.name = "EVII";
            s.mult = {{RootClass::Long2e, 1}, {RootClass::PairEE, 8}};
            s.fiber = {{RootClass::Long2e, {0, 1}}, {RootClass::PairEE, {4, 0}}};
            break;
    }
    return s;
}

int dimension(const SpaceDescriptor& s) {
    int total = s.rank;
    for (const auto& r : positive_roots(s.restricted_kind, s.rank))
        total += s.mult.at(r.cls());
    return total;
}

PolarDescriptor polar_info(const SpaceDescriptor& s) {
    PolarDescriptor p;
    switch (s.family) {
        case Family::Grassmannian: {
            int k = s.p1, n = s.p2;
            int a = k - 1, b = n - k - 1;  // complex dimensions of the factors
            p.polar_dim = cp_dim(a) + cp_dim(b);
            if (a == 0 || b == 0)
                p.polar_space = cp_name(std::max(a, b));
            else
                p.polar_space = cp_name(a) + " x " + cp_name(b);
            // the two factors carry equal Einstein constants only when they
            // have equal dimension; the one-factor k=1 case is a single CP
            p.polar_einstein = (k == 1 || 2 * k == n);
            break;
        }
        case Family::OrientedGrassmannian:
            p.polar_space = "G~_2(R^" + std::to_string(s.p1 - 2) + ")";
            p.polar_dim = og_dim(s.p1 - 2);
            break;
        case Family::SOquotient:
            p.polar_space = grass_name(2, s.p1);
            p.polar_dim = g2c_dim(s.p1);
            break;
        case Family::SpQuotient:
            p.polar_space = cp_name(s.p1 - 1);
            p.polar_dim = cp_dim(s.p1 - 1);
            break;
        case Family::EIII:
            p.polar_space = "SO(10)/U(5)";
            p.polar_dim = 20;
            break;
        case Family::EVII:
            p.polar_space = "EIII";
            p.polar_dim = 32;
            break;
    }
    return p;
}

std::vector<SpaceDescriptor> spaces_up_to_rank(int max_rank) {
    std::vector<SpaceDescriptor> out;
    auto keep = [&](SpaceDescriptor s) {
        if (s.rank <= max_rank) out.push_back(std::move(s));
    };
    for (int k = 1; k <= max_rank; ++k)
        for (int n = std::max(3, 2 * k); n <= 2 * k + 2; ++n)
            keep(catalog(Family::Grassmannian, k, n));
    for (int n = 5; n <= 10; ++n) keep(catalog(Family::OrientedGrassmannian, n));
    for (int n = 3; n <= 2 * max_rank + 1; ++n) keep(catalog(Family::SOquotient, n));
    for (int n = 2; n <= max_rank; ++n) keep(catalog(Family::SpQuotient, n));
    keep(catalog(Family::EIII));
    keep(catalog(Family::EVII));
    return out;
}

SpaceDescriptor parse_space(const std::string& selector) {
    auto colon = selector.find(':');
    std::string head = selector.substr(0, colon);
    std::string args = colon == std::string::npos ? "" : selector.substr(colon + 1);
    auto parse_int = [&](const std::string& t) {
        std::size_t used = 0;
        int v = std::stoi(t, &used);
        if (used != t.size()) throw std::invalid_argument("bad space selector: " + selector);
        return v;
    };
    try {
        if (head == "grass") {
            auto comma = args.find(',');
            if (comma == std::string::npos)
                throw std::invalid_argument("grass selector needs k,n");
            return catalog(Family::Grassmannian, parse_int(args.substr(0, comma)),
                           parse_int(args.substr(comma + 1)));
        }
        if (head == "cp") return catalog(Family::Grassmannian, 1, parse_int(args));
        if (head == "orgrass") return catalog(Family::OrientedGrassmannian, parse_int(args));
        if (head == "so") return catalog(Family::SOquotient, parse_int(args));
        if (head == "sp") return catalog(Family::SpQuotient, parse_int(args));
        if (head == "eiii" && args.empty()) return catalog(Family::EIII);
        if (head == "evii" && args.empty()) return catalog(Family::EVII);
    } catch (const std::invalid_argument&) {
        throw;
    } catch (const std::exception&) {
        throw std::invalid_argument("bad space selector: " + selector);
    }
    throw std::invalid_argument("unknown space selector: " + selector);
}

}  // namespace hso
