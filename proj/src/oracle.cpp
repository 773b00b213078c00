#include "hso/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "hso/einstein.hpp"
#include "hso/orbits.hpp"

namespace hso::oracle {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;

void VerifyReport::add(const std::string& name, double residual,
                       double tolerance) {
    bool ok = std::isfinite(residual) && residual <= tolerance;
    checks.push_back({name, residual, tolerance, ok});
}

bool VerifyReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckResult& c) { return c.pass; });
}

int VerifyReport::n_failed() const {
    return (int)std::count_if(checks.begin(), checks.end(),
                              [](const CheckResult& c) { return !c.pass; });
}

namespace {

const std::complex<double> I{0.0, 1.0};

double inner0(const MatrixXcd& X, const MatrixXcd& Y) {
    return -(X * Y).trace().real();
}

MatrixXcd unit(int N, int a, int b) {
    MatrixXcd E = MatrixXcd::Zero(N, N);
    E(a, b) = 1.0;
    return E;
}

struct Model {
    std::vector<MatrixXcd> basis;
    MatrixXcd J;
};

Model model_su(int n, int k) {
    Model mod;
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            mod.basis.push_back(unit(n, a, b) - unit(n, b, a));
            mod.basis.push_back(I * (unit(n, a, b) + unit(n, b, a)));
        }
    }
    for (int a = 0; a + 1 < n; ++a)
        mod.basis.push_back(I * (unit(n, a, a) - unit(n, a + 1, a + 1)));
    mod.J = MatrixXcd::Zero(n, n);
    for (int a = 0; a < n; ++a)
        mod.J(a, a) = a < k ? I * ((double)(n - k) / n) : -I * ((double)k / n);
    return mod;
}

Model model_so(int n, bool complex_structure_block) {
    Model mod;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            mod.basis.push_back(unit(n, a, b) - unit(n, b, a));
    mod.J = MatrixXcd::Zero(n, n);
    if (complex_structure_block) {
        // one rotation plane: the isotropy splits off SO(2)
        mod.J(0, 1) = 1.0;
        mod.J(1, 0) = -1.0;
    } else {
        // half-speed block rotations: the isotropy is U(n/2)
        for (int a = 0; a + 1 < n; a += 2) {
            mod.J(a, a + 1) = 0.5;
            mod.J(a + 1, a) = -0.5;
        }
    }
    return mod;
}

Model model_sp(int n) {
    const int N = 2 * n;
    Model mod;
    auto embed_a = [&](const MatrixXcd& A) {
        MatrixXcd X = MatrixXcd::Zero(N, N);
        X.topLeftCorner(n, n) = A;
        X.bottomRightCorner(n, n) = A.conjugate();
        return X;
    };
    auto embed_b = [&](const MatrixXcd& B) {
        MatrixXcd X = MatrixXcd::Zero(N, N);
        X.topRightCorner(n, n) = B;
        X.bottomLeftCorner(n, n) = -B.conjugate();
        return X;
    };
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            mod.basis.push_back(embed_a(unit(n, a, b) - unit(n, b, a)));
            mod.basis.push_back(embed_a(I * (unit(n, a, b) + unit(n, b, a))));
        }
    }
    for (int a = 0; a < n; ++a) mod.basis.push_back(embed_a(I * unit(n, a, a)));
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            mod.basis.push_back(embed_b(unit(n, a, b) + unit(n, b, a)));
            mod.basis.push_back(embed_b(I * (unit(n, a, b) + unit(n, b, a))));
        }
    }
    for (int a = 0; a < n; ++a) {
        mod.basis.push_back(embed_b(unit(n, a, a)));
        mod.basis.push_back(embed_b(I * unit(n, a, a)));
    }
    MatrixXcd Jm = MatrixXcd::Zero(N, N);
    for (int a = 0; a < n; ++a) {
        Jm(a, a) = 0.5 * I;
        Jm(n + a, n + a) = -0.5 * I;
    }
    mod.J = Jm;
    return mod;
}

Model make_model(const SpaceDescriptor& s) {
    switch (s.family) {
        case Family::Grassmannian:
            return model_su(s.p2, s.p1);
        case Family::OrientedGrassmannian:
            return model_so(s.p1, true);
        case Family::SOquotient:
            return model_so(2 * s.p1, false);
        case Family::SpQuotient:
            return model_sp(s.p1);
        default:
            throw std::invalid_argument(
                "matrix model: classical families only");
    }
}

void orthonormalize(std::vector<MatrixXcd>& basis) {
    for (size_t i = 0; i < basis.size(); ++i) {
        for (size_t j = 0; j < i; ++j)
            basis[i] -= inner0(basis[i], basis[j]) * basis[j];
        double nrm = std::sqrt(inner0(basis[i], basis[i]));
        if (nrm < 1e-8)
            throw std::runtime_error("model basis is linearly dependent");
        basis[i] /= nrm;
    }
}

// row (i * G + j) holds the coordinates of [B_i, B_j]
MatrixXd structure_table(const std::vector<MatrixXcd>& basis,
                         double* closure_residual) {
    const int G = (int)basis.size();
    MatrixXd table(G * G, G);
    double worst = 0.0;
    for (int i = 0; i < G; ++i) {
        for (int j = 0; j < G; ++j) {
            MatrixXcd comm = basis[i] * basis[j] - basis[j] * basis[i];
            MatrixXcd rem = comm;
            for (int k = 0; k < G; ++k) {
                double c = inner0(comm, basis[k]);
                table(i * G + j, k) = c;
                rem -= c * basis[k];
            }
            worst = std::max(worst, std::sqrt(inner0(rem, rem)));
        }
    }
    if (closure_residual) *closure_residual = worst;
    return table;
}

MatrixXd ad_matrix(const MatrixAlgebra& A, const VectorXd& x) {
    MatrixXd M = MatrixXd::Zero(A.dim_g, A.dim_g);
    for (int i = 0; i < A.dim_g; ++i) {
        if (x[i] == 0.0) continue;
        M.noalias() +=
            x[i] * A.structure.middleRows(i * A.dim_g, A.dim_g).transpose();
    }
    return M;
}

// orthonormal basis of the (near-)null space of M, as columns
MatrixXd null_space(const MatrixXd& M, double rel_tol) {
    Eigen::JacobiSVD<MatrixXd> svd(M, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    double top = sv.size() ? sv(0) : 0.0;
    int null_dim = 0;
    for (int i = (int)sv.size() - 1; i >= 0; --i) {
        if (sv(i) <= rel_tol * std::max(top, 1.0))
            ++null_dim;
        else
            break;
    }
    return svd.matrixV().rightCols(null_dim);
}

VectorXd embed_m(const MatrixAlgebra& A, const VectorXd& m_part) {
    VectorXd v = VectorXd::Zero(A.dim_g);
    v.tail(A.dim_m) = m_part;
    return v;
}

}  // namespace

VectorXd MatrixAlgebra::bracket(const VectorXd& x, const VectorXd& y) const {
    VectorXd r = VectorXd::Zero(dim_g);
    for (int i = 0; i < dim_g; ++i) {
        if (x[i] == 0.0) continue;
        r.noalias() +=
            x[i] * (structure.middleRows(i * dim_g, dim_g).transpose() * y);
    }
    return r;
}

VectorXd MatrixAlgebra::random_unit(int lo, int hi) const {
    std::normal_distribution<double> gauss(0.0, 1.0);
    VectorXd v = VectorXd::Zero(dim_g);
    for (int i = lo; i < hi; ++i) v[i] = gauss(rng);
    return v / v.norm();
}

MatrixAlgebra build(const SpaceDescriptor& s, double d, VerifyReport& rep) {
    if (d <= 0.0) throw std::invalid_argument("d must be positive");
    MatrixAlgebra A;
    A.space = s;
    A.d = d;

    Model mod = make_model(s);
    orthonormalize(mod.basis);
    const int G = (int)mod.basis.size();
    A.dim_g = G;

    double closure = 0.0;
    MatrixXd table0 = structure_table(mod.basis, &closure);
    rep.add("bracket_closure", closure, 1e-10);

    // J expands over the basis exactly when it lies in the algebra
    VectorXd j0(G);
    MatrixXcd jrem = mod.J;
    for (int k = 0; k < G; ++k) {
        j0[k] = inner0(mod.J, mod.basis[k]);
        jrem -= j0[k] * mod.basis[k];
    }
    rep.add("j_in_span", std::sqrt(inner0(jrem, jrem)), 1e-12);

    A.basis = mod.basis;
    A.structure = table0;
    MatrixXd adj = ad_matrix(A, j0);
    MatrixXd adj2 = adj * adj;
    rep.add("adj_cubic_identity", (adj2 * adj + adj).cwiseAbs().maxCoeff(),
            1e-12);

    // theta = exp(pi ad J) collapses to 1 + 2 (ad J)^2 under the cubic
    // identity; its eigenspaces give the splitting
    MatrixXd theta = MatrixXd::Identity(G, G) + 2.0 * adj2;
    rep.add("involution_squares_to_identity",
            (theta * theta - MatrixXd::Identity(G, G)).cwiseAbs().maxCoeff(),
            1e-12);

    Eigen::SelfAdjointEigenSolver<MatrixXd> es(adj2);
    double eig_dev = 0.0;
    int dim_k = 0, dim_m = 0;
    for (int i = 0; i < G; ++i) {
        double mu = es.eigenvalues()(i);
        if (std::abs(mu) < std::abs(mu + 1.0)) {
            eig_dev = std::max(eig_dev, std::abs(mu));
            ++dim_k;
        } else {
            eig_dev = std::max(eig_dev, std::abs(mu + 1.0));
            ++dim_m;
        }
    }
    rep.add("involution_eigensplit", eig_dev, 1e-10);
    A.dim_k = dim_k;
    A.dim_m = dim_m;
    rep.add("split_dimensions", std::abs(dim_m - dimension(s)), 0.5);

    // adapt the basis: k first, then m (eigenvalues ascend, so -1 comes
    // first; reorder accordingly)
    MatrixXd Q(G, G);
    int ik = 0, im = 0;
    for (int i = 0; i < G; ++i) {
        double mu = es.eigenvalues()(i);
        if (std::abs(mu) < std::abs(mu + 1.0))
            Q.col(ik++) = es.eigenvectors().col(i);
        else
            Q.col(dim_k + im++) = es.eigenvectors().col(i);
    }
    std::vector<MatrixXcd> adapted(G, MatrixXcd::Zero(mod.J.rows(), mod.J.cols()));
    for (int i = 0; i < G; ++i)
        for (int j = 0; j < G; ++j)
            if (Q(j, i) != 0.0) adapted[i] += Q(j, i) * mod.basis[j];
    A.basis = adapted;
    A.structure = structure_table(adapted, nullptr);
    A.J = Q.transpose() * j0;

    // sampled identities in the adapted frame
    double jac = 0.0, adinv = 0.0, split = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        VectorXd x = A.random_unit(0, G);
        VectorXd y = A.random_unit(0, G);
        VectorXd z = A.random_unit(0, G);
        VectorXd r = A.bracket(x, A.bracket(y, z)) +
                     A.bracket(y, A.bracket(z, x)) +
                     A.bracket(z, A.bracket(x, y));
        jac = std::max(jac, r.norm());
        adinv = std::max(adinv,
                         std::abs(A.bracket(x, y).dot(z) + y.dot(A.bracket(x, z))));
    }
    for (int trial = 0; trial < 50; ++trial) {
        VectorXd xk = A.random_unit(0, dim_k);
        VectorXd yk = A.random_unit(0, dim_k);
        VectorXd xm = A.random_unit(dim_k, G);
        VectorXd ym = A.random_unit(dim_k, G);
        split = std::max(split, A.bracket(xk, yk).tail(dim_m).norm());
        split = std::max(split, A.bracket(xk, xm).head(dim_k).norm());
        split = std::max(split, A.bracket(xm, ym).tail(dim_m).norm());
    }
    rep.add("jacobi_sampled", jac, 1e-10);
    rep.add("ad_invariance_sampled", adinv, 1e-10);
    rep.add("split_brackets", split, 1e-10);
    return A;
}

const Fiber& RestrictedSpectrum::fiber(const RestrictedRoot& r) const {
    const Fiber* f = find(r);
    if (!f) throw std::invalid_argument("no fiber over " + r.str());
    return *f;
}

const Fiber* RestrictedSpectrum::find(const RestrictedRoot& r) const {
    for (const auto& f : fibers)
        if (f.root.coeffs() == r.coeffs()) return &f;
    return nullptr;
}

namespace {

// groups sorted eigenvalues into clusters with relative gap 1e-6
std::vector<std::pair<double, std::vector<int>>> cluster_eigenvalues(
    const VectorXd& vals, const std::vector<int>& idx, double scale_hint) {
    std::vector<std::pair<double, std::vector<int>>> out;
    for (int i : idx) {
        if (!out.empty() &&
            std::abs(vals(i) - out.back().first) <= 1e-6 * scale_hint) {
            out.back().second.push_back(i);
        } else {
            out.push_back({vals(i), {i}});
        }
        // running mean keeps the cluster center honest
        auto& c = out.back();
        double sum = 0.0;
        for (int j : c.second) sum += vals(j);
        c.first = sum / (double)c.second.size();
    }
    return out;
}

struct TorusSearch {
    MatrixXd a_basis;  // G x rank
    double commute = 0.0;
};

TorusSearch find_torus(const MatrixAlgebra& A, int rank) {
    for (int attempt = 0; attempt < 8; ++attempt) {
        VectorXd x = A.random_unit(A.dim_k, A.dim_g);
        MatrixXd adx = ad_matrix(A, x);
        MatrixXd adx_m = adx.rightCols(A.dim_m);
        MatrixXd null_m = null_space(adx_m, 1e-8);
        if ((int)null_m.cols() != rank) continue;
        TorusSearch t;
        t.a_basis = MatrixXd::Zero(A.dim_g, rank);
        t.a_basis.bottomRows(A.dim_m) = null_m;
        for (int i = 0; i < rank; ++i)
            for (int j = i + 1; j < rank; ++j)
                t.commute = std::max(
                    t.commute,
                    A.bracket(t.a_basis.col(i), t.a_basis.col(j)).norm());
        if (t.commute > 1e-10) continue;
        return t;
    }
    throw std::runtime_error("maximal abelian subspace search failed");
}

}  // namespace

RestrictedSpectrum restricted_spectrum(MatrixAlgebra& A, VerifyReport& rep) {
    const SpaceDescriptor& s = A.space;
    const int G = A.dim_g;
    RestrictedSpectrum S;
    S.rank = s.rank;
    S.kind = s.restricted_kind;

    TorusSearch torus = find_torus(A, s.rank);
    S.a_basis = torus.a_basis;
    rep.add("torus_commutes", torus.commute, 1e-10);

    // eigenvalues of (ad H0)^2 on m, for a generic H0 in the subspace
    MatrixXd adH0sq;
    Eigen::SelfAdjointEigenSolver<MatrixXd> es;
    std::vector<std::pair<double, std::vector<int>>> clusters;
    bool separated = false;
    for (int attempt = 0; attempt < 8 && !separated; ++attempt) {
        VectorXd w(s.rank);
        std::normal_distribution<double> gauss(0.0, 1.0);
        for (int j = 0; j < s.rank; ++j) w[j] = gauss(A.rng);
        S.H0 = S.a_basis * w;
        MatrixXd adh = ad_matrix(A, S.H0);
        adH0sq = (adh * adh).bottomRightCorner(A.dim_m, A.dim_m);
        adH0sq = 0.5 * (adH0sq + adH0sq.transpose());
        es.compute(adH0sq);
        double top = std::abs(es.eigenvalues().minCoeff());
        std::vector<int> idx(A.dim_m);
        std::iota(idx.begin(), idx.end(), 0);
        clusters = cluster_eigenvalues(es.eigenvalues(), idx, top);
        separated = true;
        for (size_t c = 0; c + 1 < clusters.size(); ++c) {
            if (std::abs(clusters[c].first - clusters[c + 1].first) <
                1e-4 * top)
                separated = false;
        }
    }
    if (!separated) throw std::runtime_error("eigenvalue clustering is ambiguous");

    // the zero cluster must be the subspace itself
    const auto& zero_cluster = clusters.back();
    double top = std::abs(es.eigenvalues().minCoeff());
    rep.add("zero_cluster_dimension",
            std::abs((int)zero_cluster.second.size() - s.rank), 0.5);
    MatrixXd zc(A.dim_g, (int)zero_cluster.second.size());
    for (size_t q = 0; q < zero_cluster.second.size(); ++q)
        zc.col(q) = embed_m(A, es.eigenvectors().col(zero_cluster.second[q]));
    double zdist =
        (zc - S.a_basis * (S.a_basis.transpose() * zc)).cwiseAbs().maxCoeff();
    rep.add("zero_cluster_is_torus", zdist, 1e-7);

    // one functional per nonzero cluster, sign fixed by lambda(H0) > 0
    double root_consistency = 0.0;
    std::vector<Fiber> fibers;
    for (size_t c = 0; c + 1 < clusters.size(); ++c) {
        double mu = clusters[c].first;
        double sv = std::sqrt(-mu);
        const auto& members = clusters[c].second;
        Fiber f{RestrictedRoot::two_e(1, s.rank),
                VectorXd(), MatrixXd(), MatrixXd(), {}, {}, 0, 0};
        f.m_basis = MatrixXd(G, (int)members.size());
        for (size_t q = 0; q < members.size(); ++q)
            f.m_basis.col((int)q) = embed_m(A, es.eigenvectors().col(members[q]));
        f.functional = VectorXd(s.rank);
        VectorXd v0 = f.m_basis.col(0);
        VectorXd w0 = A.bracket(S.H0, v0) / sv;
        for (int j = 0; j < s.rank; ++j)
            f.functional[j] = A.bracket(S.a_basis.col(j), v0).dot(w0);
        // every basis vector of the cluster must realize the same functional
        for (int q = 0; q < (int)members.size(); ++q) {
            VectorXd v = f.m_basis.col(q);
            VectorXd w = A.bracket(S.H0, v) / sv;
            for (int j = 0; j < s.rank; ++j) {
                VectorXd r =
                    A.bracket(S.a_basis.col(j), v) - f.functional[j] * w;
                root_consistency = std::max(root_consistency, r.norm() / sv);
            }
        }
        fibers.push_back(std::move(f));
    }
    rep.add("root_space_consistency", root_consistency, 1e-7);

    // the longest functionals give the e-frame
    double max_norm2 = 0.0;
    for (const auto& f : fibers)
        max_norm2 = std::max(max_norm2, f.functional.squaredNorm());
    std::vector<int> long_idx;
    for (size_t i = 0; i < fibers.size(); ++i)
        if (fibers[i].functional.squaredNorm() >= max_norm2 * (1.0 - 1e-6))
            long_idx.push_back((int)i);
    rep.add("long_root_count", std::abs((int)long_idx.size() - s.rank), 0.5);
    if ((int)long_idx.size() != s.rank)
        throw std::runtime_error("long restricted roots do not span the torus");
    double long_dev = 0.0, long_ortho = 0.0;
    for (int i : long_idx) {
        long_dev = std::max(long_dev,
                            std::abs(fibers[i].functional.squaredNorm() -
                                     max_norm2) /
                                max_norm2);
        for (int j : long_idx)
            if (i != j)
                long_ortho = std::max(
                    long_ortho, std::abs(fibers[i].functional.dot(
                                    fibers[j].functional)) /
                                    max_norm2);
    }
    rep.add("long_root_norms_equal", long_dev, 1e-8);
    rep.add("long_roots_orthogonal", long_ortho, 1e-8);

    // order by value on H0; every measured root then comes out positive
    VectorXd h0w = S.a_basis.transpose() * S.H0;
    std::sort(long_idx.begin(), long_idx.end(), [&](int a, int b) {
        return fibers[a].functional.dot(h0w) > fibers[b].functional.dot(h0w);
    });
    S.e_funcs = MatrixXd(s.rank, s.rank);
    for (int i = 0; i < s.rank; ++i)
        S.e_funcs.col(i) = fibers[long_idx[i]].functional / 2.0;

    // integer coefficients in the e-frame
    double pattern_residual = 0.0;
    bool patterns_ok = true;
    for (auto& f : fibers) {
        std::vector<int> coeffs(s.rank);
        VectorXd recon = VectorXd::Zero(s.rank);
        for (int i = 0; i < s.rank; ++i) {
            double ci = f.functional.dot(S.e_funcs.col(i)) /
                        S.e_funcs.col(i).squaredNorm();
            coeffs[i] = (int)std::lround(ci);
            recon += (double)coeffs[i] * S.e_funcs.col(i);
        }
        pattern_residual =
            std::max(pattern_residual, (f.functional - recon).norm() /
                                           f.functional.norm());
        try {
            f.root = RestrictedRoot(coeffs);
        } catch (const std::exception&) {
            patterns_ok = false;
        }
    }
    rep.add("root_patterns_integral", pattern_residual, 1e-6);
    rep.add("root_patterns_legal", patterns_ok ? 0.0 : 1.0, 0.5);

    // measured positive system and multiplicities against the catalog
    bool multiset_ok = patterns_ok;
    if (patterns_ok) {
        auto expected = positive_roots(s.restricted_kind, s.rank);
        std::map<std::vector<int>, int> want, got;
        for (const auto& r : expected) want[r.coeffs()] = s.multiplicity(r);
        for (const auto& f : fibers) got[f.root.coeffs()] = (int)f.m_basis.cols();
        multiset_ok = want == got;
    }
    rep.add("multiplicities_match", multiset_ok ? 0.0 : 1.0, 0.5);
    if (!multiset_ok)
        throw std::runtime_error("measured root system does not match catalog");

    // normalization: the longest root gets squared length 4/d
    double delta_norm2 = 0.0;
    for (const auto& f : fibers)
        if (f.root.cls() == RootClass::Long2e && f.root.support()[0] == 1)
            delta_norm2 = f.functional.squaredNorm();
    A.scale = A.d * delta_norm2 / 4.0;

    // canonical k-side images
    VectorXd h0a = S.a_basis.transpose() * S.H0;
    for (auto& f : fibers) {
        double lam = f.functional.dot(h0a);
        f.k_basis = MatrixXd(G, f.m_basis.cols());
        for (int q = 0; q < f.m_basis.cols(); ++q)
            f.k_basis.col(q) = A.bracket(S.H0, f.m_basis.col(q)) / lam;
    }

    // torus of the centralizer of a in k, for the pair/fixed splitting
    MatrixXd stack(s.rank * G, A.dim_k);
    for (int j = 0; j < s.rank; ++j)
        stack.middleRows(j * G, G) =
            ad_matrix(A, S.a_basis.col(j)).leftCols(A.dim_k);
    MatrixXd k0 = null_space(stack, 1e-8);  // k-coordinates
    MatrixXd k0_full = MatrixXd::Zero(G, k0.cols());
    k0_full.topRows(A.dim_k) = k0;
    if (k0.cols() == 0) {
        S.b_basis = MatrixXd::Zero(G, 0);
    } else {
        double commute = 1.0;
        for (int attempt = 0; attempt < 8; ++attempt) {
            VectorXd zc2(k0.cols());
            std::normal_distribution<double> gauss(0.0, 1.0);
            for (int i = 0; i < k0.cols(); ++i) zc2[i] = gauss(A.rng);
            VectorXd z = k0_full * zc2.normalized();
            MatrixXd adz = ad_matrix(A, z);
            MatrixXd b_in_k0 = null_space(adz * k0_full, 1e-8);
            S.b_basis = k0_full * b_in_k0;
            commute = 0.0;
            for (int i = 0; i < S.b_basis.cols(); ++i)
                for (int j = i + 1; j < S.b_basis.cols(); ++j)
                    commute = std::max(commute,
                                       A.bracket(S.b_basis.col(i),
                                                 S.b_basis.col(j))
                                           .norm());
            if (commute <= 1e-10) break;
        }
        rep.add("centralizer_torus_commutes", commute, 1e-10);
    }

    // split each fiber into rotation planes and fixed vectors
    double invariance = 0.0;
    bool split_ok = true;
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (auto& f : fibers) {
        const int mult = (int)f.m_basis.cols();
        MatrixXd B = MatrixXd::Zero(mult, mult);
        for (int l = 0; l < S.b_basis.cols(); ++l) {
            MatrixXd img(G, mult);
            for (int q = 0; q < mult; ++q)
                img.col(q) = A.bracket(S.b_basis.col(l), f.m_basis.col(q));
            MatrixXd in_fiber = f.m_basis.transpose() * img;
            invariance = std::max(
                invariance,
                (img - f.m_basis * in_fiber).cwiseAbs().maxCoeff());
            B += gauss(A.rng) * in_fiber;
        }
        f.plane_of.assign(mult, -1);
        f.member_of.assign(mult, 0);
        f.n_planes = 0;
        f.n_fixed = 0;
        if (S.b_basis.cols() == 0 || B.cwiseAbs().maxCoeff() < 1e-8) {
            f.n_fixed = mult;
        } else {
            Eigen::RealSchur<MatrixXd> schur(B);
            const MatrixXd& T = schur.matrixT();
            const MatrixXd& U = schur.matrixU();
            double bscale = B.cwiseAbs().maxCoeff();
            MatrixXd frame(G, mult);
            std::vector<int> plane_of, member_of;
            int col = 0, k = 0;
            // planes first, fixed vectors afterwards
            std::vector<VectorXd> fixed_cols;
            while (k < mult) {
                bool block = k + 1 < mult &&
                             std::abs(T(k + 1, k)) > 1e-6 * bscale;
                if (block) {
                    frame.col(col) = f.m_basis * U.col(k);
                    frame.col(col + 1) = f.m_basis * U.col(k + 1);
                    plane_of.push_back(f.n_planes);
                    member_of.push_back(0);
                    plane_of.push_back(f.n_planes);
                    member_of.push_back(1);
                    ++f.n_planes;
                    col += 2;
                    k += 2;
                } else {
                    fixed_cols.push_back(f.m_basis * U.col(k));
                    ++k;
                }
            }
            for (const auto& fc : fixed_cols) {
                frame.col(col++) = fc;
                plane_of.push_back(-1);
                member_of.push_back(0);
                ++f.n_fixed;
            }
            f.m_basis = frame;
            f.plane_of = plane_of;
            f.member_of = member_of;
            double lam = f.functional.dot(h0a);
            for (int q = 0; q < mult; ++q)
                f.k_basis.col(q) = A.bracket(S.H0, f.m_basis.col(q)) / lam;
        }
        FiberStructure expected;
        if (f.root.cls() == RootClass::Long2e) {
            expected = {0, 1};
        } else {
            expected = s.fiber.at(f.root.cls());
        }
        if (f.n_planes != expected.n_longest_pairs ||
            f.n_fixed != expected.n_shortest_fixed)
            split_ok = false;
    }
    rep.add("fiber_invariant_under_torus", invariance, 1e-8);
    rep.add("fiber_split_matches_catalog", split_ok ? 0.0 : 1.0, 0.5);

    S.fibers = std::move(fibers);
    return S;
}

namespace {

MatrixXd fiber_projector(const Fiber& f) {
    return f.m_basis * f.m_basis.transpose();
}

// scaling that gives a column the squared length 4/(lambda,lambda) in the
// final form; the base columns are unit
double t_scale(const Fiber& f) { return 2.0 / f.functional.norm(); }

FiberVector label_of(const Fiber& f, int col) {
    return FiberVector{f.root, f.plane_of[col], f.member_of[col],
                       f.plane_of[col] >= 0};
}

std::vector<const Fiber*> polar_fibers(const RestrictedSpectrum& S,
                                       const SpaceDescriptor& s) {
    std::vector<const Fiber*> out;
    for (int l = 2; l <= s.rank; ++l) {
        out.push_back(&S.fiber(RestrictedRoot::sum_e(1, l, s.rank, +1)));
        out.push_back(&S.fiber(RestrictedRoot::sum_e(1, l, s.rank, -1)));
    }
    if (s.restricted_kind == RootKind::BC)
        out.push_back(&S.fiber(RestrictedRoot::single_e(1, s.rank)));
    return out;
}

}  // namespace

void verify_j_action(const MatrixAlgebra& A, const RestrictedSpectrum& S,
                     VerifyReport& rep) {
    const SpaceDescriptor& s = A.space;
    MatrixXd adj = ad_matrix(A, A.J);
    MatrixXd Pa = S.a_basis * S.a_basis.transpose();

    double long_to_a = 0.0, coeff_dev = 0.0;
    MatrixXd Plong = MatrixXd::Zero(A.dim_g, A.dim_g);
    for (int i = 1; i <= s.rank; ++i) {
        const Fiber& f = S.fiber(RestrictedRoot::two_e(i, s.rank));
        VectorXd img = adj * f.m_basis.col(0);
        long_to_a = std::max(long_to_a, (img - Pa * img).norm());
        Plong += fiber_projector(f);
        double ai = std::sqrt(A.scale) * A.J.dot(f.k_basis.col(0));
        coeff_dev = std::max(coeff_dev,
                             std::abs(std::abs(ai) - std::sqrt(A.d) / 2.0));
    }
    rep.add("j_maps_long_fibers_to_torus", long_to_a, 1e-9);
    rep.add("j_long_coefficients", coeff_dev, 1e-9);

    double a_to_long = 0.0;
    for (int j = 0; j < s.rank; ++j) {
        VectorXd img = adj * S.a_basis.col(j);
        a_to_long = std::max(a_to_long, (img - Plong * img).norm());
    }
    rep.add("j_maps_torus_to_long_fibers", a_to_long, 1e-9);

    double swap_dev = 0.0, keep_dev = 0.0;
    for (const auto& f : S.fibers) {
        if (f.root.cls() == RootClass::PairEE) {
            const Fiber& partner = S.fiber(f.root.partner());
            MatrixXd Pp = fiber_projector(partner);
            for (int q = 0; q < f.m_basis.cols(); ++q) {
                VectorXd img = adj * f.m_basis.col(q);
                swap_dev = std::max(swap_dev, (img - Pp * img).norm());
            }
        } else if (f.root.cls() == RootClass::ShortE) {
            MatrixXd Pf = fiber_projector(f);
            for (int q = 0; q < f.m_basis.cols(); ++q) {
                VectorXd img = adj * f.m_basis.col(q);
                keep_dev = std::max(keep_dev, (img - Pf * img).norm());
            }
        }
    }
    rep.add("j_swaps_mixed_fibers", swap_dev, 1e-9);
    if (s.restricted_kind == RootKind::BC)
        rep.add("j_preserves_short_fibers", keep_dev, 1e-9);
}

void bracket_norms(const MatrixAlgebra& A, const RestrictedSpectrum& S,
                   VerifyReport& rep) {
    const SpaceDescriptor& s = A.space;
    if (s.rank < 2)
        throw std::invalid_argument("bracket norms need rank >= 2");
    const double d = A.d;
    const double tol = 1e-9 * std::max(d, 1.0);

    const Fiber& ref_fiber =
        S.fiber(RestrictedRoot::sum_e(1, 2, s.rank, +1));
    const Fiber& opp_fiber =
        S.fiber(RestrictedRoot::sum_e(1, 2, s.rank, -1));
    FiberVector ref = label_of(ref_fiber, 0);
    VectorXd T_ref = t_scale(ref_fiber) * ref_fiber.m_basis.col(0);

    auto measure = [&](const Fiber& f, int col) {
        VectorXd br = A.bracket(T_ref, t_scale(f) * f.m_basis.col(col));
        return A.scale * br.squaredNorm();
    };

    double same_dev = 0.0, diff_dev = 0.0, e1_dev = 0.0, zero_dev = 0.0;
    bool has_diff = false, has_e1 = false;
    for (const Fiber* fp : polar_fibers(S, s)) {
        const Fiber& f = *fp;
        bool is_ref = &f == &ref_fiber;
        bool is_opp = &f == &opp_fiber;
        if (is_opp && ref.longest) continue;  // handled through plane sums
        for (int q = 0; q < f.m_basis.cols(); ++q) {
            if (is_ref && q == 0) continue;
            auto rel = classify_relation(ref, label_of(f, q));
            double val = measure(f, q);
            if (!rel) {
                zero_dev = std::max(zero_dev, val);
                continue;
            }
            double want = d * norm_table_value(*rel).to_double();
            double dev = std::abs(val - want);
            switch (*rel) {
                case BetaRelation::same_fiber_partner:
                case BetaRelation::same_fiber_other_longest:
                    same_dev = std::max(same_dev, dev);
                    break;
                case BetaRelation::diff_fiber_longest:
                case BetaRelation::diff_fiber_shortest:
                    has_diff = true;
                    diff_dev = std::max(diff_dev, dev);
                    break;
                case BetaRelation::e1_fiber_longest:
                    has_e1 = true;
                    e1_dev = std::max(e1_dev, dev);
                    break;
                case BetaRelation::opposite_fiber_shortest:
                    same_dev = std::max(same_dev, dev);
                    break;
                case BetaRelation::cross_length_C2:
                    zero_dev = std::max(zero_dev, val);
                    break;
                case BetaRelation::opposite_fiber_longest_pairsum:
                    break;  // covered below
            }
        }
    }
    rep.add("bracket_norm_same_fiber", same_dev, tol);
    if (has_diff) rep.add("bracket_norm_diff_fiber", diff_dev, tol);
    if (has_e1) rep.add("bracket_norm_e1_fiber", e1_dev, tol);

    // the opposite fiber concentrates its whole bracket mass on one plane
    if (ref.longest) {
        std::vector<double> plane_sums(opp_fiber.n_planes, 0.0);
        double total = 0.0;
        for (int q = 0; q < opp_fiber.m_basis.cols(); ++q) {
            double val = measure(opp_fiber, q);
            if (opp_fiber.plane_of[q] >= 0) {
                plane_sums[opp_fiber.plane_of[q]] += val;
                total += val;
            } else {
                zero_dev = std::max(zero_dev, val);  // shorter fixed vectors
            }
        }
        rep.add("bracket_norm_opposite_total", std::abs(total - 8.0 * d), tol);
        std::sort(plane_sums.begin(), plane_sums.end());
        double localized = std::abs(plane_sums.back() - 8.0 * d);
        for (size_t p = 0; p + 1 < plane_sums.size(); ++p)
            localized = std::max(localized, plane_sums[p]);
        rep.add("bracket_norm_opposite_localized", localized, tol);
    }
    rep.add("bracket_norm_vanishing", zero_dev, tol);
}

void ricci_polar_numeric(const MatrixAlgebra& A, const RestrictedSpectrum& S,
                         VerifyReport& rep) {
    const SpaceDescriptor& s = A.space;
    const Fiber& ref_fiber =
        S.fiber(RestrictedRoot::sum_e(1, 2, s.rank, +1));
    VectorXd X = t_scale(ref_fiber) * ref_fiber.m_basis.col(0);
    double sum = 0.0;
    for (const Fiber* fp : polar_fibers(S, s)) {
        for (int q = 0; q < fp->m_basis.cols(); ++q) {
            VectorXd D = fp->m_basis.col(q) / std::sqrt(A.scale);
            VectorXd br = A.bracket(D, X);
            sum += A.scale * br.squaredNorm();
        }
    }
    double want = ricci_diagonal(s).to_double();
    rep.add("ricci_polar_matches_symbolic", std::abs(sum - want), 1e-8);
}

void curvature_checks(const MatrixAlgebra& A, const RestrictedSpectrum& S,
                      VerifyReport& rep) {
    const SpaceDescriptor& s = A.space;
    const double d = A.d;
    const Fiber& long_fiber = S.fiber(RestrictedRoot::two_e(1, s.rank));
    VectorXd T_long = t_scale(long_fiber) * long_fiber.m_basis.col(0);
    double T_long_norm = A.norm(T_long);  // sqrt(d)

    auto polar = polar_fibers(S, s);
    // tangent projector of the orbit through a generic first-edge point:
    // the active fibers there are the polar ones plus the long root 2e_1
    int act_cols = (int)long_fiber.m_basis.cols();
    for (const Fiber* fp : polar) act_cols += (int)fp->m_basis.cols();
    MatrixXd V(A.dim_g, act_cols);
    int vc = 0;
    for (const Fiber* fp : polar)
        for (int q = 0; q < fp->m_basis.cols(); ++q)
            V.col(vc++) = fp->m_basis.col(q);
    V.col(vc++) = long_fiber.m_basis.col(0);
    auto project = [&](const VectorXd& x) -> VectorXd {
        return V * (V.transpose() * x);
    };

    double eigvec_dev = 0.0, coeff_dev = 0.0, mixed_dev = 0.0;
    double unit_eig_dev = 0.0, tangential_dev = 0.0;
    for (const Fiber* fp : polar) {
        const Fiber& f = *fp;
        double kappa = f.root.cls() == RootClass::ShortE ? 4.0 : 2.0;
        for (int q = 0; q < f.m_basis.cols(); ++q) {
            VectorXd T_v = t_scale(f) * f.m_basis.col(q);
            VectorXd db = A.bracket(A.bracket(T_v, T_long), T_long);
            eigvec_dev = std::max(eigvec_dev,
                                  A.norm(db + T_v) / A.norm(T_v));
            VectorXd db2 = project(A.bracket(A.bracket(T_v, T_long), T_v));
            coeff_dev = std::max(
                coeff_dev,
                A.norm(db2 - kappa * T_long) / (kappa * T_long_norm));
            for (int r = 0; r < f.m_basis.cols(); ++r) {
                if (r == q) continue;
                VectorXd T_w = t_scale(f) * f.m_basis.col(r);
                VectorXd mx = project(A.bracket(A.bracket(T_v, T_long), T_w));
                mixed_dev = std::max(mixed_dev,
                                     A.norm(mx) / (2.0 * T_long_norm));
            }
            // unit-vector forms of the same identities carry the curvature
            // eigenvalue 1/d
            VectorXd U_v = f.m_basis.col(q) / std::sqrt(A.scale);
            VectorXd U_long = long_fiber.m_basis.col(0) / std::sqrt(A.scale);
            VectorXd ce = A.bracket(A.bracket(U_v, U_long), U_long);
            unit_eig_dev = std::max(unit_eig_dev,
                                    d * A.norm(ce + U_v / d));
            VectorXd ct = project(A.bracket(A.bracket(U_v, U_long), U_v));
            tangential_dev = std::max(tangential_dev,
                                      d * A.norm(ct - U_long / d));
        }
    }
    rep.add("double_bracket_eigenvector", eigvec_dev, 1e-8);
    rep.add("double_bracket_tangential_coeff", coeff_dev, 1e-8);
    rep.add("double_bracket_mixed_vanishes", mixed_dev, 1e-8);
    rep.add("curvature_unit_eigenvalue", unit_eig_dev, 1e-8);
    rep.add("curvature_tangential_value", tangential_dev, 1e-8);

    // second fundamental form data assembled through the canonical k-images:
    // [T, S] over one fiber represents the root functional
    VectorXd h0a = S.a_basis.transpose() * S.H0;
    MatrixXd Pa = S.a_basis * S.a_basis.transpose();
    auto rep_vector = [&](const Fiber& f, int col) -> VectorXd {
        double lam = f.functional.dot(h0a);
        VectorXd Tb = f.m_basis.col(col) / std::sqrt(A.scale);
        VectorXd Sb = A.bracket(S.H0, f.m_basis.col(col)) /
                      (lam * std::sqrt(A.scale));
        return A.bracket(Tb, Sb);
    };
    VectorXd v_long = rep_vector(long_fiber, 0);
    const Fiber& beta_fiber = S.fiber(RestrictedRoot::sum_e(1, 2, s.rank, +1));
    VectorXd v_beta = rep_vector(beta_fiber, 0);
    double in_a = std::max((v_long - Pa * v_long).norm(),
                           (v_beta - Pa * v_beta).norm());
    rep.add("fundamental_form_in_torus", in_a, 1e-8);
    rep.add("fundamental_form_long_norm",
            std::abs(A.inner(v_long, v_long) - 4.0 / d) * d, 1e-8);
    double g_cross = A.inner(v_beta, v_long);
    rep.add("fundamental_form_cross_pairing",
            std::abs(g_cross - 2.0 / d) * d, 1e-8);

    // mixed second-fundamental terms vanish: those brackets stay tangential
    double lam_long = long_fiber.functional.dot(h0a);
    VectorXd S_long = A.bracket(S.H0, long_fiber.m_basis.col(0)) /
                      (lam_long * std::sqrt(A.scale));
    double lam_beta = beta_fiber.functional.dot(h0a);
    VectorXd S_beta = A.bracket(S.H0, beta_fiber.m_basis.col(0)) /
                      (lam_beta * std::sqrt(A.scale));
    VectorXd Tb_beta = beta_fiber.m_basis.col(0) / std::sqrt(A.scale);
    VectorXd Tb_long = long_fiber.m_basis.col(0) / std::sqrt(A.scale);
    VectorXd cross1 = A.bracket(Tb_beta, S_long);
    VectorXd cross2 = A.bracket(Tb_long, S_beta);
    double cross_dev =
        std::max((cross1 - project(cross1)).norm() /
                     std::max(1.0, cross1.norm()),
                 (cross2 - project(cross2)).norm() /
                     std::max(1.0, cross2.norm()));
    rep.add("fundamental_form_cross_vanishes", cross_dev, 1e-8);

    // Gauss assembly of the k-constant from the measured pairing
    auto k_gauss = [&](double t) {
        double cot_half = std::cos(t * M_PI / 2.0) / std::sin(t * M_PI / 2.0);
        double cot_full = std::cos(t * M_PI) / std::sin(t * M_PI);
        return 1.0 / d + cot_half * cot_full * g_cross;
    };
    double t_star = sasaki_parameter(d);
    rep.add("k_constant_at_parameter", std::abs(k_gauss(t_star) - 1.0), 1e-8);
    rep.add("k_constant_generic_t",
            std::abs(k_gauss(0.3) - k_constant(d, 0.3)), 1e-8);
}

int contact_rank(const MatrixAlgebra& A, const RestrictedSpectrum& S,
                 const OrbitPoint& H, VerifyReport& rep) {
    const SpaceDescriptor& s = A.space;
    ContactStatus cs = contact_status(s, H);
    if (!cs.segment)
        throw std::invalid_argument("contact rank needs an edge point");
    int edge = cs.segment->i;

    CRSplit split = cr_split(s, H);
    std::vector<const Fiber*> complex_fibers;
    int dim_v = 0;
    for (const auto& r : split.cr_complex) {
        const Fiber& f = S.fiber(r);
        complex_fibers.push_back(&f);
        dim_v += (int)f.m_basis.cols();
    }
    const Fiber& real_fiber = S.fiber(RestrictedRoot::two_e(edge + 1, s.rank));
    VectorXd s_ref = real_fiber.k_basis.col(0);

    MatrixXd U(A.dim_g, dim_v);
    int uc = 0;
    for (const Fiber* fp : complex_fibers)
        for (int q = 0; q < fp->k_basis.cols(); ++q)
            U.col(uc++) = fp->k_basis.col(q);

    MatrixXd F(dim_v, dim_v);
    for (int a = 0; a < dim_v; ++a) {
        VectorXd img = A.bracket(s_ref, U.col(a));
        F.col(a) = U.transpose() * img;
    }
    Eigen::JacobiSVD<MatrixXd> svd(F);
    const auto& sv = svd.singularValues();
    double top = sv(0);
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > 1e-8 * std::max(top, 1.0)) ++rank;
    // a decision this close to the threshold would be meaningless
    double gap = 0.0;
    if (rank < dim_v && rank > 0)
        gap = sv(rank) / sv(rank - 1) > 1e-4 ? 1.0 : 0.0;
    rep.add("contact_rank_gap", gap, 0.5);
    return rank;
}

VerifyReport verify_space(const SpaceDescriptor& s, double d) {
    VerifyReport rep;
    rep.space = s.name;
    rep.d = d;
    try {
        MatrixAlgebra A = build(s, d, rep);
        RestrictedSpectrum S = restricted_spectrum(A, rep);
        verify_j_action(A, S, rep);
        bracket_norms(A, S, rep);
        ricci_polar_numeric(A, S, rep);
        curvature_checks(A, S, rep);

        // both edge classes, compared with the symbolic contact predicate
        for (int edge = 0; edge < std::min(2, s.rank); ++edge) {
            std::vector<Rational> t(s.rank, Rational(0));
            for (int i = 0; i < edge; ++i) t[i] = Rational(1, 2);
            t[edge] = Rational(1, 6);
            OrbitPoint H{t};
            ContactStatus cs = contact_status(s, H);
            CRSplit split = cr_split(s, H);
            int dim_v = 0;
            for (const auto& r : split.cr_complex)
                dim_v += s.multiplicity(r);
            int rank = contact_rank(A, S, H, rep);
            bool full = rank == dim_v;
            rep.add("contact_rank_matches_symbolic_edge" +
                        std::to_string(edge),
                    full == cs.contact ? 0.0 : 1.0, 0.5);
        }
    } catch (const std::exception& e) {
        rep.add(std::string("exception: ") + e.what(), 1.0, 0.0);
    }
    return rep;
}

}  // namespace hso::oracle
