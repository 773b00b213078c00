#include "hso/einstein.hpp"

#include <sstream>
#include <stdexcept>

namespace hso {

const std::vector<NormTableEntry>& norm_table() {
    static const std::vector<NormTableEntry> table = {
        {AlphaClass::longest, BetaRelation::diff_fiber_longest, Rational(2)},
        {AlphaClass::longest, BetaRelation::diff_fiber_shortest, Rational(2)},
        {AlphaClass::longest, BetaRelation::opposite_fiber_longest_pairsum, Rational(8)},
        {AlphaClass::shortest, BetaRelation::opposite_fiber_shortest, Rational(8)},
        {AlphaClass::longest, BetaRelation::same_fiber_other_longest, Rational(8)},
        {AlphaClass::longest, BetaRelation::same_fiber_partner, Rational(8)},
        {AlphaClass::longest, BetaRelation::e1_fiber_longest, Rational(4)},
        {AlphaClass::longest, BetaRelation::cross_length_C2, Rational(0)},
    };
    return table;
}

Rational norm_table_value(BetaRelation rel) {
    for (const auto& e : norm_table())
        if (e.beta_relation == rel) return e.value_in_d;
    throw std::logic_error("relation missing from norm table");
}

std::vector<FiberVector> polar_fiber_basis(const SpaceDescriptor& s) {
    if (s.rank < 2) throw std::invalid_argument("polar fiber basis needs rank >= 2");
    std::vector<FiberVector> out;
    auto emit = [&](const RestrictedRoot& r) {
        const FiberStructure& f = s.fiber.at(r.cls());
        for (int p = 0; p < f.n_longest_pairs; ++p) {
            out.push_back({r, p, 0, true});
            out.push_back({r, p, 1, true});
        }
        for (int q = 0; q < f.n_shortest_fixed; ++q) out.push_back({r, -1, q, false});
    };
    const int n = s.rank;
    for (int l = 2; l <= n; ++l) {
        emit(RestrictedRoot::sum_e(1, l, n, +1));
        emit(RestrictedRoot::sum_e(1, l, n, -1));
    }
    if (s.restricted_kind == RootKind::BC) emit(RestrictedRoot::single_e(1, n));
    return out;
}

std::optional<BetaRelation> classify_relation(const FiberVector& reference,
                                              const FiberVector& v) {
    const auto& ref_root = reference.root;
    if (v.root == ref_root) {
        if (v.pair_index == reference.pair_index && v.member == reference.member)
            return std::nullopt;  // the reference itself
        if (v.pair_index == reference.pair_index && reference.pair_index >= 0)
            return BetaRelation::same_fiber_partner;
        return BetaRelation::same_fiber_other_longest;
    }
    if (v.root.cls() == RootClass::ShortE) return BetaRelation::e1_fiber_longest;
    if (v.root == ref_root.partner()) {
        if (!reference.longest && !v.longest) return BetaRelation::opposite_fiber_shortest;
        if (reference.longest && !v.longest) return BetaRelation::cross_length_C2;
        // only the pair aligned with the reference interacts; everything else
        // in the opposite fiber is orthogonal to it
        if (v.pair_index != reference.pair_index) return std::nullopt;
        return v.member == 0 ? std::optional(BetaRelation::opposite_fiber_longest_pairsum)
                             : std::nullopt;
    }
    return v.longest ? BetaRelation::diff_fiber_longest
                     : BetaRelation::diff_fiber_shortest;
}

Rational ricci_diagonal(const SpaceDescriptor& s) {
    if (s.rank < 2) {
        // rank-one spaces are projective; the polar is a lower projective
        // space whose Einstein constant under tau = ricci (d+1)/(2d) forces
        // this value (and a vanishing denominator in the solver)
        return Rational(2 * polar_info(s).polar_dim + 4);
    }
    auto basis = polar_fiber_basis(s);
    const FiberVector& ref = basis.front();
    Rational sum(0);
    for (const auto& v : basis) {
        auto rel = classify_relation(ref, v);
        if (!rel) continue;
        std::int64_t dot = 0;
        for (int c : v.root.coeffs()) dot += (std::int64_t)c * c;
        sum += Rational(dot) * norm_table_value(*rel) / Rational(4);
    }
    return sum;
}

Rational einstein_constant(const SpaceDescriptor& s, const Rational& d) {
    if (!(d > Rational(0)))
        throw std::domain_error("einstein constant: d must be positive");
    return ricci_diagonal(s) * (d + Rational(1)) / (Rational(2) * d);
}

std::optional<Rational> solve_sasaki_einstein(const SpaceDescriptor& s) {
    if (!polar_info(s).polar_einstein) return std::nullopt;
    Rational ricci = ricci_diagonal(s);
    Rational den = Rational(2 * polar_info(s).polar_dim + 4) - ricci;
    if (!(den > Rational(0))) return std::nullopt;
    Rational d = ricci / den;
    if (!(d > Rational(0))) return std::nullopt;
    return d;
}

std::pair<Rational, Rational> eta_einstein_coefficients(const Rational& tau,
                                                        int sasaki_dim) {
    if (sasaki_dim < 3 || sasaki_dim % 2 == 0)
        throw std::invalid_argument("eta-einstein coefficients need odd dim >= 3");
    Rational two_n(sasaki_dim - 1);
    return {tau - Rational(2), two_n + Rational(2) - tau};
}

Rational submersion_scale(const Rational& d) {
    if (!(d > Rational(0)))
        throw std::domain_error("submersion scale: d must be positive");
    return Rational(1) / (d + Rational(1));
}

std::vector<TableRow> solution_table() {
    std::vector<TableRow> rows;
    auto add = [&](std::string space, std::string params, SpaceDescriptor desc,
                   std::string sym) {
        rows.push_back({std::move(space), std::move(params), desc, std::move(sym),
                        solve_sasaki_einstein(desc)});
    };
    for (int n = 2; n <= 8; ++n)
        add("G_n(C^2n)", "n=" + std::to_string(n),
            catalog(Family::Grassmannian, n, 2 * n), "n/(n-1)");
    for (int n = 5; n <= 10; ++n)
        add("G~_2(R^n)", "n=" + std::to_string(n),
            catalog(Family::OrientedGrassmannian, n), "n-4");
    for (int n = 3; n <= 8; ++n)
        add("SO(2n)/U(n)", "n=" + std::to_string(n), catalog(Family::SOquotient, n),
            n == 3 ? "none" : "n/(n-3)");
    for (int n = 2; n <= 8; ++n)
        add("Sp(n)/U(n)", "n=" + std::to_string(n), catalog(Family::SpQuotient, n), "1");
    add("EIII", "", catalog(Family::EIII), "8/3");
    add("EVII", "", catalog(Family::EVII), "12/5");
    for (int n = 3; n <= 10; ++n)
        add("CP^(n-1)", "n=" + std::to_string(n), catalog(Family::Grassmannian, 1, n),
            "none");
    for (int n = 5; n <= 8; ++n)
        add("G_2(C^n)", "n=" + std::to_string(n), catalog(Family::Grassmannian, 2, n),
            "none");
    return rows;
}

std::string table_markdown(const std::vector<TableRow>& rows) {
    std::ostringstream os;
    os << "| space | params | d (symbolic) | d |\n";
    os << "|-------|--------|--------------|---|\n";
    for (const auto& r : rows) {
        os << "| " << r.space << " | " << r.params << " | " << r.d_symbolic << " | "
           << (r.d_solution ? r.d_solution->str() : "none") << " |\n";
    }
    return os.str();
}

}  // namespace hso
