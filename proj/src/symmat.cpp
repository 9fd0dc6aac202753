#include "netmosaic/symmat.hpp"

#include "netmosaic/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace netmosaic {

SymMatrix::SymMatrix(Index n) {
    if (n < 2) throw InvalidInput("SymMatrix: dimension must be at least 2, got " + std::to_string(n));
    m_ = Eigen::MatrixXd::Zero(n, n);
}

SymMatrix SymMatrix::from_dense(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols()) throw InvalidInput("SymMatrix: matrix is not square");
    if (m.rows() < 2) throw InvalidInput("SymMatrix: dimension must be at least 2");
    for (Index j = 0; j < m.cols(); ++j) {
        for (Index i = j + 1; i < m.rows(); ++i) {
            if (m(i, j) != m(j, i)) {
                std::ostringstream os;
                os << "SymMatrix: entries (" << i << "," << j << ") and (" << j << "," << i << ") differ";
                throw InvalidInput(os.str());
            }
        }
    }
    return SymMatrix(Eigen::MatrixXd(m));
}

SymMatrix SymMatrix::symmetrized(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols()) throw InvalidInput("SymMatrix: matrix is not square");
    if (m.rows() < 2) throw InvalidInput("SymMatrix: dimension must be at least 2");
    Eigen::MatrixXd s = 0.5 * (m + m.transpose());
    return SymMatrix(std::move(s));
}

SymMatrix SymMatrix::constant_offdiag(Index n, double c) {
    SymMatrix out(n);
    out.m_.setConstant(c);
    out.m_.diagonal().setZero();
    return out;
}

double SymMatrix::max_abs_offdiag() const {
    double best = 0.0;
    const Index n = m_.rows();
    for (Index j = 0; j < n; ++j)
        for (Index i = j + 1; i < n; ++i) best = std::max(best, std::abs(m_(i, j)));
    return best;
}

double SymMatrix::max_abs_diff(const SymMatrix& other) const {
    if (other.n() != n()) throw InvalidInput("SymMatrix: dimension mismatch");
    return (m_ - other.m_).cwiseAbs().maxCoeff();
}

SymMatrix SymMatrix::permuted(const std::vector<int>& perm) const {
    const Index n = m_.rows();
    if (static_cast<Index>(perm.size()) != n) throw InvalidInput("SymMatrix::permuted: permutation size mismatch");
    Eigen::MatrixXd out(n, n);
    for (Index j = 0; j < n; ++j)
        for (Index i = 0; i < n; ++i) out(i, j) = m_(perm[i], perm[j]);
    return SymMatrix(std::move(out));
}

SymMatrix& SymMatrix::operator+=(const SymMatrix& o) {
    if (o.n() != n()) throw InvalidInput("SymMatrix: dimension mismatch");
    m_ += o.m_;
    return *this;
}

SymMatrix& SymMatrix::operator-=(const SymMatrix& o) {
    if (o.n() != n()) throw InvalidInput("SymMatrix: dimension mismatch");
    m_ -= o.m_;
    return *this;
}

SymMatrix SpectralDecomp::reconstruct(Index k) const {
    const Index n = values.size();
    if (k < 1 || k > n) {
        throw InvalidInput("rank " + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
    }
    const auto vk = vectors.leftCols(k);
    Eigen::MatrixXd r = vk * values.head(k).asDiagonal() * vk.transpose();
    return SymMatrix::symmetrized(r);
}

namespace {

void require_finite(const SymMatrix& m, const char* who) {
    if (!m.all_finite()) throw InvalidInput(std::string(who) + ": matrix has non-finite entries");
}

}  // namespace

SpectralDecomp eigh_sym(const SymMatrix& m) {
    require_finite(m, "eigh_sym");
    const Index n = m.n();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.dense(), Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success) {
        std::ostringstream os;
        os << "eigh_sym: tridiagonal QR did not converge (n=" << n << ", Frobenius norm=" << m.dense().norm()
           << ", iteration limit=" << Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>::m_maxIterations * n << ")";
        throw NumericalError(os.str());
    }
    const Eigen::VectorXd& lam = es.eigenvalues();  // ascending

    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Index a, Index b) { return std::abs(lam(a)) > std::abs(lam(b)); });

    // Runs of magnitudes that agree up to rounding are ordered by signed value.
    const double scale = lam.cwiseAbs().maxCoeff();
    const double tol = 64.0 * std::numeric_limits<double>::epsilon() * std::max(scale, 1e-300);
    for (std::size_t lo = 0; lo < order.size();) {
        std::size_t hi = lo + 1;
        while (hi < order.size() &&
               std::abs(lam(order[hi - 1])) - std::abs(lam(order[hi])) <= tol)
            ++hi;
        std::stable_sort(order.begin() + static_cast<std::ptrdiff_t>(lo),
                         order.begin() + static_cast<std::ptrdiff_t>(hi),
                         [&](Index a, Index b) { return lam(a) > lam(b); });
        lo = hi;
    }

    SpectralDecomp out;
    out.values.resize(n);
    out.vectors.resize(n, n);
    for (Index k = 0; k < n; ++k) {
        const Index src = order[static_cast<std::size_t>(k)];
        out.values(k) = lam(src);
        Eigen::VectorXd v = es.eigenvectors().col(src);
        Index arg = 0;
        double best = -1.0;
        for (Index i = 0; i < n; ++i) {
            if (std::abs(v(i)) > best) {
                best = std::abs(v(i));
                arg = i;
            }
        }
        if (v(arg) < 0) v = -v;
        out.vectors.col(k) = v;
    }
    return out;
}

SymMatrix ed_truncate(const SymMatrix& m, Index k) {
    if (k < 1 || k > m.n()) {
        throw InvalidInput("ed_truncate: rank " + std::to_string(k) + " outside [1, " + std::to_string(m.n()) + "]");
    }
    return eigh_sym(m).reconstruct(k);
}

double spectral_norm(const SymMatrix& m) {
    require_finite(m, "spectral_norm");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.dense(), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
        std::ostringstream os;
        os << "spectral_norm: eigenvalue iteration did not converge (n=" << m.n()
           << ", Frobenius norm=" << m.dense().norm() << ")";
        throw NumericalError(os.str());
    }
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

std::vector<double> eigenvector_centrality(const SymMatrix& m) {
    if ((m.dense().array() < 0.0).any()) throw InvalidInput("eigenvector_centrality: matrix has negative entries");
    if ((m.dense().array() == 0.0).all()) throw DegenerateInput("eigenvector_centrality: matrix is all zero");
    // For a nonnegative matrix the Perron root has the largest magnitude, and
    // the tie rule in eigh_sym prefers it over a bipartite -lambda partner.
    const SpectralDecomp d = eigh_sym(m);
    Eigen::VectorXd v = d.vectors.col(0).cwiseAbs();
    v /= v.maxCoeff();
    return {v.data(), v.data() + v.size()};
}

}  // namespace netmosaic
