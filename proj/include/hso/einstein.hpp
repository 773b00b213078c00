#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hso/spaces.hpp"

namespace hso {

// One basis vector of the polar tangent space at the first vertex, labeled by
// its fiber and its position inside the fiber's involution structure.
// pair_index counts the swapped pairs; member is 0/1 inside a pair; fixed
// vectors have pair_index -1 and carry the shorter full-system root length.
struct FiberVector {
    RestrictedRoot root;
    int pair_index = -1;
    int member = 0;
    bool longest = true;
};

enum class AlphaClass { longest, shortest };

// How a polar basis vector sits relative to the reference vector over
// e_1+e_2. The bracket-square of each related pair is a fixed multiple of d;
// combinations not listed here have provably vanishing brackets (the
// orthogonality of the opposite fiber to everything but the distinguished
// pair).
enum class BetaRelation {
    diff_fiber_longest,              // e_1 +- e_l, l >= 3, swapped-pair vector
    diff_fiber_shortest,             // e_1 +- e_l, l >= 3, fixed vector
    opposite_fiber_longest_pairsum,  // distinguished pair over e_1-e_2, summed
    opposite_fiber_shortest,         // fixed-vs-fixed across e_1+-e_2
    same_fiber_other_longest,        // any other vector of the e_1+e_2 fiber
    same_fiber_partner,              // the involution partner of the reference
    e1_fiber_longest,                // any vector of the e_1 fiber
    cross_length_C2,                 // longest vs opposite fixed, rank-2 odd case
};

struct NormTableEntry {
    AlphaClass alpha_class;
    BetaRelation beta_relation;
    Rational value_in_d;  // bracket-square divided by d
};

const std::vector<NormTableEntry>& norm_table();
Rational norm_table_value(BetaRelation rel);

// Basis of the polar tangent space (the complex part of the split at the
// first vertex): fibers over e_1 +- e_l (l = 2..rank) plus e_1 for kind BC.
std::vector<FiberVector> polar_fiber_basis(const SpaceDescriptor& s);

// Relation of v to the reference vector, or nullopt when the bracket
// vanishes identically (non-distinguished opposite-fiber pairs, and the
// reference paired with itself). Pairsum relations are reported on member 0
// and nullopt on member 1 so each pair is counted once.
std::optional<BetaRelation> classify_relation(const FiberVector& reference,
                                              const FiberVector& v);

// r+ on the reference direction: (1/4) * sum over related basis vectors of
// dot(fiber root) * table value. The d factors cancel; requires rank >= 2
// for the reference over e_1+e_2 to exist. Rank-1 spaces take the projective
// value 2*polar_dim + 4 instead (their polar is a projective space and the
// reference fiber is absent).
Rational ricci_diagonal(const SpaceDescriptor& s);

// tau(d) = ricci_diagonal * (d+1) / (2d)
Rational einstein_constant(const SpaceDescriptor& s, const Rational& d);

// Solves tau(d) = polar_dim + 2 linearly over the rationals; none when the
// polar is not Einstein or the equation has no positive solution.
std::optional<Rational> solve_sasaki_einstein(const SpaceDescriptor& s);

// (lambda, mu) with r = lambda g + mu eta (x) eta on a (2N+1)-dimensional
// Sasaki manifold of Einstein-like constant tau: (tau-2, 2N+2-tau)
std::pair<Rational, Rational> eta_einstein_coefficients(const Rational& tau,
                                                        int sasaki_dim);

// 1/(d+1), the ratio between the submersion metric on the polar and the
// induced one
Rational submersion_scale(const Rational& d);

struct TableRow {
    std::string space;       // family display with symbolic parameter
    std::string params;      // instantiation label, e.g. "n=4"
    SpaceDescriptor descriptor;
    std::string d_symbolic;  // closed form in n, or "none"
    std::optional<Rational> d_solution;
};

// The classification table: every family with its symbolic solution and the
// instantiations n = 2..8 (plus the no-solution families).
std::vector<TableRow> solution_table();

std::string table_markdown(const std::vector<TableRow>& rows);

}  // namespace hso
