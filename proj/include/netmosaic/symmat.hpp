#pragma once

#include <Eigen/Dense>

#include <vector>

namespace netmosaic {

using Index = Eigen::Index;

/// Dense real symmetric matrix. Symmetry is maintained by every mutator, so
/// `(i, j)` and `(j, i)` always agree.
class SymMatrix {
public:
    /// n x n zero matrix; n must be at least 2.
    explicit SymMatrix(Index n);

    /// Wraps `m`, which must be square, finite-sized and exactly symmetric.
    static SymMatrix from_dense(const Eigen::MatrixXd& m);
    /// Wraps `(m + m^T) / 2`.
    static SymMatrix symmetrized(const Eigen::MatrixXd& m);
    /// c * 11^T with zero diagonal.
    static SymMatrix constant_offdiag(Index n, double c);

    Index n() const { return m_.rows(); }
    double operator()(Index i, Index j) const { return m_(i, j); }
    void set(Index i, Index j, double v) {
        m_(i, j) = v;
        m_(j, i) = v;
    }
    void add(Index i, Index j, double v) {
        m_(i, j) += v;
        if (i != j) m_(j, i) += v;
    }
    void zero_diagonal() { m_.diagonal().setZero(); }

    const Eigen::MatrixXd& dense() const { return m_; }

    /// Largest |m_ij| over i != j.
    double max_abs_offdiag() const;
    /// Largest |m_ij - other_ij| over all entries.
    double max_abs_diff(const SymMatrix& other) const;
    bool all_finite() const { return m_.allFinite(); }

    /// P m P^T where row i of the result is row perm[i] of m.
    SymMatrix permuted(const std::vector<int>& perm) const;

    SymMatrix& operator+=(const SymMatrix& o);
    SymMatrix& operator-=(const SymMatrix& o);
    SymMatrix& operator*=(double s) {
        m_ *= s;
        return *this;
    }

    friend SymMatrix operator+(SymMatrix a, const SymMatrix& b) { return a += b; }
    friend SymMatrix operator-(SymMatrix a, const SymMatrix& b) { return a -= b; }
    friend SymMatrix operator*(SymMatrix a, double s) { return a *= s; }
    friend SymMatrix operator*(double s, SymMatrix a) { return a *= s; }

private:
    explicit SymMatrix(Eigen::MatrixXd m) : m_(std::move(m)) {}
    Eigen::MatrixXd m_;
};

/// Eigenpairs ordered by descending |eigenvalue|. Column k of `vectors`
/// pairs with `values[k]`.
struct SpectralDecomp {
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;

    /// sum_{j<k} values[j] v_j v_j^T
    SymMatrix reconstruct(Index k) const;
};

// Ordering is by |lambda| descending; near-equal magnitudes (within a few ulps
// of the spectral radius) are ordered by signed value, largest first. Each
// eigenvector is signed so that its largest-magnitude entry (first such index
// on ties) is nonnegative.
SpectralDecomp eigh_sym(const SymMatrix& m);

/// Rank-k spectral truncation keeping the k eigenpairs of largest |lambda|.
/// The diagonal of the result is not re-zeroed.
SymMatrix ed_truncate(const SymMatrix& m, Index k);

/// Largest |lambda|, i.e. the operator 2-norm. Eigenvalues only.
double spectral_norm(const SymMatrix& m);

/// Leading eigenvector of a nonnegative matrix, made nonnegative and scaled
/// so its largest entry is 1.
std::vector<double> eigenvector_centrality(const SymMatrix& m);

}  // namespace netmosaic
