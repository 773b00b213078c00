#include "hso/rootsys.hpp"

#include <algorithm>
#include <stdexcept>

namespace hso {

std::string to_string(RootKind k) { return k == RootKind::C ? "C" : "BC"; }

std::string to_string(RootClass c) {
    switch (c) {
        case RootClass::Long2e: return "2e";
        case RootClass::PairEE: return "e+-e";
        case RootClass::ShortE: return "e";
    }
    throw std::logic_error("unreachable");
}

RestrictedRoot::RestrictedRoot(std::vector<int> coeffs) : coeffs_(std::move(coeffs)) {
    int abs_sum = 0, abs_max = 0, nonzero = 0;
    for (int c : coeffs_) {
        abs_sum += std::abs(c);
        abs_max = std::max(abs_max, std::abs(c));
        if (c) ++nonzero;
    }
    if (abs_sum == 2 && abs_max == 2)
        cls_ = RootClass::Long2e;
    else if (abs_sum == 2 && nonzero == 2)
        cls_ = RootClass::PairEE;
    else if (abs_sum == 1)
        cls_ = RootClass::ShortE;
    else
        throw std::invalid_argument("not a restricted-root coefficient vector");
}

std::vector<int> RestrictedRoot::support() const {
    std::vector<int> idx;
    for (int i = 0; i < (int)coeffs_.size(); ++i)
        if (coeffs_[i]) idx.push_back(i + 1);
    return idx;
}

RestrictedRoot RestrictedRoot::partner() const {
    if (cls_ != RootClass::PairEE)
        throw std::logic_error("partner() is only defined for e_i+-e_j roots");
    auto idx = support();
    std::vector<int> v(coeffs_);
    v[idx[1] - 1] = -v[idx[1] - 1];
    return RestrictedRoot(std::move(v));
}

std::string RestrictedRoot::str() const {
    std::string s;
    for (int i = 0; i < (int)coeffs_.size(); ++i) {
        int c = coeffs_[i];
        if (!c) continue;
        if (!s.empty())
            s += c > 0 ? "+" : "-";
        else if (c < 0)
            s += "-";
        if (std::abs(c) == 2) s += "2";
        s += "e" + std::to_string(i + 1);
    }
    return s;
}

RestrictedRoot RestrictedRoot::two_e(int i, int n) {
    std::vector<int> v(n, 0);
    v.at(i - 1) = 2;
    return RestrictedRoot(std::move(v));
}

RestrictedRoot RestrictedRoot::sum_e(int i, int j, int n, int sign_j) {
    std::vector<int> v(n, 0);
    v.at(i - 1) = 1;
    v.at(j - 1) = sign_j;
    return RestrictedRoot(std::move(v));
}

RestrictedRoot RestrictedRoot::single_e(int i, int n) {
    std::vector<int> v(n, 0);
    v.at(i - 1) = 1;
    return RestrictedRoot(std::move(v));
}

std::vector<RestrictedRoot> positive_roots(RootKind kind, int n) {
    if (n < 1 || (kind == RootKind::C && n < 2))
        throw std::invalid_argument("positive_roots: rank out of range for kind");
    std::vector<RestrictedRoot> roots;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            roots.push_back(RestrictedRoot::sum_e(i, j, n, +1));
            roots.push_back(RestrictedRoot::sum_e(i, j, n, -1));
        }
    for (int i = 1; i <= n; ++i) roots.push_back(RestrictedRoot::two_e(i, n));
    if (kind == RootKind::BC)
        for (int i = 1; i <= n; ++i) roots.push_back(RestrictedRoot::single_e(i, n));
    return roots;
}

Rational pairing(const RestrictedRoot& lambda, const RestrictedRoot& mu,
                 const Rational& d) {
    if (lambda.n() != mu.n())
        throw std::invalid_argument("pairing: mismatched rank");
    if (!(d > Rational(0))) throw std::domain_error("pairing: d must be positive");
    std::int64_t dot = 0;
    for (int i = 0; i < lambda.n(); ++i)
        dot += (std::int64_t)lambda.coeffs()[i] * mu.coeffs()[i];
    return Rational(dot) / d;
}

OrbitPoint::OrbitPoint(std::vector<Rational> t) : t_(std::move(t)) {
    if (t_.empty()) throw std::invalid_argument("orbit point: empty coordinates");
    const Rational half(1, 2), zero(0);
    if (t_.front() > half || t_.back() < zero)
        throw std::invalid_argument("orbit point outside Q");
    for (std::size_t i = 0; i + 1 < t_.size(); ++i)
        if (t_[i] < t_[i + 1])
            throw std::invalid_argument("orbit point outside Q");
}

bool OrbitPoint::is_zero() const {
    return t_.front() == Rational(0);
}

std::string OrbitPoint::str() const {
    std::string s;
    for (const auto& x : t_) {
        if (!s.empty()) s += ",";
        s += x.str();
    }
    return s;
}

OrbitPoint OrbitPoint::vertex(int n, int k) {
    if (k < 0 || k > n) throw std::invalid_argument("vertex index out of range");
    std::vector<Rational> t(n, Rational(0));
    for (int i = 0; i < k; ++i) t[i] = Rational(1, 2);
    return OrbitPoint(std::move(t));
}

Rational eval(const RestrictedRoot& lambda, const OrbitPoint& H) {
    if (lambda.n() != H.n()) throw std::invalid_argument("eval: mismatched rank");
    Rational v(0);
    for (int i = 0; i < lambda.n(); ++i)
        v += Rational(lambda.coeffs()[i]) * H.t()[i];
    return v;
}

}  // namespace hso
