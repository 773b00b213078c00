#pragma once

#include <compare>
#include <string>
#include <vector>

#include "hso/rational.hpp"

namespace hso {

enum class RootKind { C, BC };

// Which of the three restricted-root shapes a vector has. Long2e is 2e_i,
// PairEE is e_i+-e_j (i<j), ShortE is e_i; BC systems have all three, C
// systems have no ShortE roots.
enum class RootClass { Long2e, PairEE, ShortE };

std::string to_string(RootKind k);
std::string to_string(RootClass c);

// A restricted root as its integer coefficient vector in the e-basis.
// Construction rejects anything that is not +-e_i+-e_j (i<j), +-2e_i or
// +-e_i; the zero vector is never a root.
class RestrictedRoot {
public:
    explicit RestrictedRoot(std::vector<int> coeffs);

    const std::vector<int>& coeffs() const { return coeffs_; }
    int n() const { return (int)coeffs_.size(); }
    RootClass cls() const { return cls_; }

    // index accessors are 1-based to match the e_i naming; support() lists
    // the indices with nonzero coefficient in increasing order
    std::vector<int> support() const;
    int coeff(int i) const { return coeffs_[i - 1]; }

    // e_i+-e_j -> e_i-+e_j; only defined for PairEE roots
    RestrictedRoot partner() const;

    bool operator==(const RestrictedRoot& o) const { return coeffs_ == o.coeffs_; }
    auto operator<=>(const RestrictedRoot& o) const { return coeffs_ <=> o.coeffs_; }

    // compact display form, e.g. "2e1", "e1+e2", "e1-e3", "e2"
    std::string str() const;

    static RestrictedRoot two_e(int i, int n);
    static RestrictedRoot sum_e(int i, int j, int n, int sign_j);
    static RestrictedRoot single_e(int i, int n);

private:
    std::vector<int> coeffs_;
    RootClass cls_;
};

// The positive system: {e_i+-e_j ; i<j} u {2e_i} for kind C, with {e_i}
// added for kind BC. Kind C requires n >= 2.
std::vector<RestrictedRoot> positive_roots(RootKind kind, int n);

// (lambda,mu) = dot(lambda,mu)/d, the inner product under which
// (2e_1, 2e_1) = 4/d and the coroot norm |iA_delta|^2 equals d.
Rational pairing(const RestrictedRoot& lambda, const RestrictedRoot& mu,
                 const Rational& d);

// A point of the parameter polytope Q, stored as the coefficients t_i of pi:
// H corresponds to (t_1 pi, ..., t_n pi) with 1/2 >= t_1 >= ... >= t_n >= 0.
// Construction validates membership.
class OrbitPoint {
public:
    explicit OrbitPoint(std::vector<Rational> t);

    const std::vector<Rational>& t() const { return t_; }
    int n() const { return (int)t_.size(); }
    const Rational& coord(int i) const { return t_[i - 1]; }
    bool is_zero() const;

    bool operator==(const OrbitPoint& o) const { return t_ == o.t_; }

    std::string str() const;

    // Q_k = (pi/2, ..., pi/2, 0, ..., 0) with k halves; k = 0 gives the apex
    static OrbitPoint vertex(int n, int k);

private:
    std::vector<Rational> t_;
};

// lambda(H)/pi as an exact rational; lies in [0,1] for H in Q
Rational eval(const RestrictedRoot& lambda, const OrbitPoint& H);

}  // namespace hso
