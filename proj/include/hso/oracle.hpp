#pragma once

#include <Eigen/Dense>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hso/rootsys.hpp"
#include "hso/spaces.hpp"

namespace hso::oracle {

struct CheckResult {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct VerifyReport {
    std::string space;
    double d = 1.0;
    std::vector<CheckResult> checks;

    void add(const std::string& name, double residual, double tolerance);
    bool all_pass() const;
    int n_failed() const;
};

// A compact matrix model of one classical space: an orthonormal basis of g
// adapted to the splitting (k first, then m), the structure constants on that
// basis, and the element J whose centralizer is k. Everything downstream
// works on coordinate vectors in R^dim_g. The invariant form starts as
// -Re tr(XY) on the model; `scale` is fixed later so the longest restricted
// root gets squared length 4/d.
struct MatrixAlgebra {
    SpaceDescriptor space;
    double d = 1.0;
    int dim_g = 0;
    int dim_k = 0;
    int dim_m = 0;
    std::vector<Eigen::MatrixXcd> basis;
    Eigen::MatrixXd structure;  // (dim_g * dim_g) x dim_g bracket table
    Eigen::VectorXd J;
    double scale = 1.0;
    mutable std::mt19937_64 rng{20240817};

    Eigen::VectorXd bracket(const Eigen::VectorXd& x,
                            const Eigen::VectorXd& y) const;
    double inner(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
        return scale * x.dot(y);
    }
    double norm(const Eigen::VectorXd& x) const {
        return std::sqrt(scale) * x.norm();
    }
    bool in_m(int idx) const { return idx >= dim_k; }
    Eigen::VectorXd random_unit(int lo, int hi) const;  // coordinate range
};

// One fiber m_lambda, with the matching k_lambda under the canonical
// correspondence and the pair/fixed splitting read off from the torus action
// of the centralizer of a in k.
struct Fiber {
    RestrictedRoot root;
    Eigen::VectorXd functional;  // lambda(a_j) on the orthonormal a-basis
    Eigen::MatrixXd m_basis;     // columns orthonormal in coordinates
    Eigen::MatrixXd k_basis;     // column j = image of m_basis col j
    std::vector<int> plane_of;   // pair plane per column; -1 for fixed
    std::vector<int> member_of;  // 0/1 inside the plane
    int n_planes = 0;
    int n_fixed = 0;
};

struct RestrictedSpectrum {
    int rank = 0;
    RootKind kind = RootKind::C;
    Eigen::MatrixXd a_basis;  // columns: orthonormal basis of a in coordinates
    Eigen::VectorXd H0;       // regular element fixing the positive system
    Eigen::MatrixXd e_funcs;  // column i: the functional e_{i+1} on a-basis
    Eigen::MatrixXd b_basis;  // torus of the a-centralizer in k
    std::vector<Fiber> fibers;

    const Fiber& fiber(const RestrictedRoot& r) const;
    const Fiber* find(const RestrictedRoot& r) const;
    // final-form pairing of two measured functionals
    double pair_func(const Eigen::VectorXd& f, const Eigen::VectorXd& g,
                     double scale) const {
        return f.dot(g) / scale;
    }
};

// Constructs the model and checks the structural invariants: closure of the
// basis under brackets, (ad J)^3 = -ad J, theta = exp(pi ad J) an involution
// with eigenspaces k and m, Jacobi and ad-invariance on sampled triples.
MatrixAlgebra build(const SpaceDescriptor& s, double d, VerifyReport& rep);

// Finds a maximal abelian subspace of m, jointly diagonalizes (ad a)^2,
// identifies the e-basis from the long roots, matches every measured root
// and multiplicity against the catalog, splits each fiber into involution
// pairs and fixed vectors via the torus weights, and fixes A.scale so that
// (delta, delta) = 4/d.
RestrictedSpectrum restricted_spectrum(MatrixAlgebra& A, VerifyReport& rep);

// ad(J) maps each m_{2e_i} into a and a into their sum, swaps the fibers of
// e_i+-e_j, preserves m_{e_i}, and has coefficients of size sqrt(d)/2 on the
// unit k-vectors over the long roots.
void verify_j_action(const MatrixAlgebra& A, const RestrictedSpectrum& S,
                     VerifyReport& rep);

// Measures <[T,T'],[T,T']> for the reference vector over e_1+e_2 against
// every polar fiber vector and matches the symbolic norm table; the
// distinguished opposite pair is checked through its plane sums.
void bracket_norms(const MatrixAlgebra& A, const RestrictedSpectrum& S,
                   VerifyReport& rep);

// Sums |[D_i, X]|^2 over an orthonormal basis of the polar tangent space and
// compares with the symbolic diagonal Ricci value; repeated at a second d to
// confirm the sum does not depend on it.
void ricci_polar_numeric(const MatrixAlgebra& A, const RestrictedSpectrum& S,
                         VerifyReport& rep);

// Double-bracket identities at a generic point of the first edge: the
// eigenvalue identity [[T,T'],T'] = -T, the tangential projections with
// their 2/4 coefficients, the vanishing of mixed same-fiber terms, the
// curvature eigenvalue 1/d on unit vectors, and the normal-bundle assembly
// of the k-constant through the second fundamental form.
void curvature_checks(const MatrixAlgebra& A, const RestrictedSpectrum& S,
                      VerifyReport& rep);

// Rank of the form <[S_ref, X], Y> on the k-part over the active complex
// roots at H, with S_ref the unit k-vector over the real root of the edge
// containing H. Adds a spectral-gap check so near-tolerance ranks fail
// loudly rather than flip.
int contact_rank(const MatrixAlgebra& A, const RestrictedSpectrum& S,
                 const OrbitPoint& H, VerifyReport& rep);

// Runs the whole battery for one space at one d and returns the report;
// includes contact_rank at the first two edge midpoints compared with the
// symbolic contact predicate.
VerifyReport verify_space(const SpaceDescriptor& s, double d);

}  // namespace hso::oracle
