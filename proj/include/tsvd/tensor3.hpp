#ifndef TSVD_TENSOR3_HPP
#define TSVD_TENSOR3_HPP

//
// Dense third-order real tensors, frontal-slice access, block-circulant
// assembly, fold/unfold and the tensor transpose.
//

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace tsvd {

struct ShapeMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NotCirculant : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NotConjugateSymmetric : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NotOrthogonal : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NotFDiagonal : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct WrongP : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct RankOutOfRange : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct IndexOutOfRange : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct DuplicatePair : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NegativeWeight : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Matrix = Eigen::MatrixXd;
using CMatrix = Eigen::MatrixXcd;

/// Dense m x n x p real tensor.  Entries are stored slice-major (frontal
/// slice index outermost) and row-major within a slice, so unfold() is a
/// contiguous copy.  Indices are 0-based in code; file formats and printed
/// diagnostics use 1-based indices.
class Tensor3 {
public:
    Tensor3(int m, int n, int p)
        : m_(m), n_(n), p_(p)
    {
        if (m < 1 || n < 1)
            throw ShapeMismatch("Tensor3: dimensions must be positive, got " +
                                shape_str(m, n, p));
        if (p < 2)
            throw ShapeMismatch("Tensor3: third-mode length must be at least 2, got " +
                                shape_str(m, n, p));
        data_.assign(static_cast<size_t>(m) * n * p, 0.0);
    }

    int rows() const { return m_; }
    int cols() const { return n_; }
    int depth() const { return p_; }

    double operator()(int i, int j, int k) const
    {
        return data_[index(i, j, k)];
    }
    double& operator()(int i, int j, int k)
    {
        return data_[index(i, j, k)];
    }

    std::span<const double> data() const { return data_; }
    std::span<double> data() { return data_; }

    /// Frontal slice A(:,:,k) as an m x n matrix.
    Matrix slice(int k) const
    {
        Matrix s(m_, n_);
        const double* base = data_.data() + static_cast<size_t>(k) * m_ * n_;
        for (int i = 0; i < m_; ++i)
            for (int j = 0; j < n_; ++j)
                s(i, j) = base[static_cast<size_t>(i) * n_ + j];
        return s;
    }

    void set_slice(int k, const Matrix& s)
    {
        if (s.rows() != m_ || s.cols() != n_)
            throw ShapeMismatch("set_slice: slice shape mismatch");
        double* base = data_.data() + static_cast<size_t>(k) * m_ * n_;
        for (int i = 0; i < m_; ++i)
            for (int j = 0; j < n_; ++j)
                base[static_cast<size_t>(i) * n_ + j] = s(i, j);
    }

    bool same_shape(const Tensor3& o) const
    {
        return m_ == o.m_ && n_ == o.n_ && p_ == o.p_;
    }

    bool all_finite() const
    {
        return std::all_of(data_.begin(), data_.end(),
                           [](double v) { return std::isfinite(v); });
    }

    static std::string shape_str(int m, int n, int p)
    {
        return std::to_string(m) + "x" + std::to_string(n) + "x" + std::to_string(p);
    }

private:
    size_t index(int i, int j, int k) const
    {
        return (static_cast<size_t>(k) * m_ + i) * n_ + j;
    }

    int m_, n_, p_;
    std::vector<double> data_;
};

inline Tensor3 operator-(const Tensor3& a, const Tensor3& b)
{
    if (!a.same_shape(b))
        throw ShapeMismatch("operator-: shape mismatch");
    Tensor3 r(a.rows(), a.cols(), a.depth());
    auto ra = a.data();
    auto rb = b.data();
    auto rr = r.data();
    for (size_t i = 0; i < rr.size(); ++i)
        rr[i] = ra[i] - rb[i];
    return r;
}

inline double frobenius_norm(const Tensor3& t)
{
    double s = 0.0;
    for (double v : t.data())
        s += v * v;
    return std::sqrt(s);
}

/// Stack the frontal slices vertically into an mp x n matrix.
inline Matrix unfold(const Tensor3& t)
{
    const int m = t.rows(), n = t.cols(), p = t.depth();
    Matrix u(m * p, n);
    for (int k = 0; k < p; ++k)
        u.middleRows(k * m, m) = t.slice(k);
    return u;
}

inline Tensor3 fold(const Matrix& u, int m, int n, int p)
{
    if (u.rows() != static_cast<Eigen::Index>(m) * p || u.cols() != n)
        throw ShapeMismatch("fold: expected " + std::to_string(m * p) + "x" +
                            std::to_string(n) + " matrix, got " +
                            std::to_string(u.rows()) + "x" + std::to_string(u.cols()));
    Tensor3 t(m, n, p);
    for (int k = 0; k < p; ++k)
        t.set_slice(k, u.middleRows(k * m, m));
    return t;
}

/// The mp x np block-circulant matrix: block (r,c) is the frontal slice
/// with index (r - c) mod p.
inline Matrix bcirc(const Tensor3& t)
{
    const int m = t.rows(), n = t.cols(), p = t.depth();
    Matrix b(m * p, n * p);
    for (int c = 0; c < p; ++c)
        for (int r = 0; r < p; ++r)
            b.block(r * m, c * n, m, n) = t.slice(((r - c) % p + p) % p);
    return b;
}

/// Inverse of bcirc: reads the first block column back into a tensor.
/// Rejects matrices whose block pattern is not circulant within
/// tau = 1e-12 * max(1, max |entry|).
inline Tensor3 bcirc_inv(const Matrix& b, int m, int n, int p)
{
    if (p < 2 || m < 1 || n < 1)
        throw ShapeMismatch("bcirc_inv: invalid target shape " + Tensor3::shape_str(m, n, p));
    if (b.rows() != static_cast<Eigen::Index>(m) * p || b.cols() != static_cast<Eigen::Index>(n) * p)
        throw ShapeMismatch("bcirc_inv: expected " + std::to_string(m * p) + "x" +
                            std::to_string(n * p) + " matrix, got " +
                            std::to_string(b.rows()) + "x" + std::to_string(b.cols()));

    const double tau = 1e-12 * std::max(1.0, b.cwiseAbs().maxCoeff());
    for (int c = 1; c < p; ++c) {
        for (int r = 0; r < p; ++r) {
            const int k = ((r - c) % p + p) % p;
            const double resid =
                (b.block(r * m, c * n, m, n) - b.block(k * m, 0, m, n)).cwiseAbs().maxCoeff();
            if (resid > tau)
                throw NotCirculant("bcirc_inv: block (" + std::to_string(r + 1) + "," +
                                   std::to_string(c + 1) + ") deviates from the circulant "
                                   "pattern by " + std::to_string(resid));
        }
    }

    Tensor3 t(m, n, p);
    for (int k = 0; k < p; ++k)
        t.set_slice(k, b.block(k * m, 0, m, n));
    return t;
}

/// Tensor transpose: slice 1 transposed, slices 2..p transposed and
/// reversed along the third mode.  Equals bcirc_inv(bcirc(t)^T).
inline Tensor3 transpose(const Tensor3& t)
{
    const int m = t.rows(), n = t.cols(), p = t.depth();
    Tensor3 r(n, m, p);
    r.set_slice(0, t.slice(0).transpose());
    for (int k = 1; k < p; ++k)
        r.set_slice(k, t.slice(p - k).transpose());
    return r;
}

/// Identity tensor: slice 1 is I_n, the rest are zero.
inline Tensor3 identity_tensor(int n, int p)
{
    Tensor3 t(n, n, p);
    t.set_slice(0, Matrix::Identity(n, n));
    return t;
}

/// F-diagonal m x n x p tensor: every frontal slice is diagonal.  Only the
/// min(m,n) diagonal tubes are stored.
class FDiagonal3 {
public:
    FDiagonal3(int m, int n, int p)
        : m_(m), n_(n), p_(p), d_(Matrix::Zero(std::min(m, n), p))
    {
        Tensor3 shape_check(m, n, p);  // validates m,n,p
        (void)shape_check;
    }

    /// Interpret a dense tensor as f-diagonal.  Off-diagonal entries must be
    /// at most tol in magnitude.
    static FDiagonal3 from_tensor(const Tensor3& t, double tol = 0.0)
    {
        FDiagonal3 f(t.rows(), t.cols(), t.depth());
        for (int k = 0; k < t.depth(); ++k) {
            for (int i = 0; i < t.rows(); ++i) {
                for (int j = 0; j < t.cols(); ++j) {
                    if (i == j)
                        continue;
                    if (std::abs(t(i, j, k)) > tol)
                        throw NotFDiagonal("off-diagonal entry at (i=" + std::to_string(i + 1) +
                                           ",j=" + std::to_string(j + 1) + ",k=" +
                                           std::to_string(k + 1) + ") has magnitude " +
                                           std::to_string(std::abs(t(i, j, k))));
                }
            }
        }
        for (int k = 0; k < t.depth(); ++k)
            for (int i = 0; i < f.min_mn(); ++i)
                f.diag(i, k) = t(i, i, k);
        return f;
    }

    int rows() const { return m_; }
    int cols() const { return n_; }
    int depth() const { return p_; }
    int min_mn() const { return static_cast<int>(d_.rows()); }

    double diag(int i, int k) const { return d_(i, k); }
    double& diag(int i, int k) { return d_(i, k); }

    /// The length-p tube S(i,i,:).
    Eigen::VectorXd tube(int i) const { return d_.row(i).transpose(); }

    Tensor3 to_tensor() const
    {
        Tensor3 t(m_, n_, p_);
        for (int k = 0; k < p_; ++k)
            for (int i = 0; i < min_mn(); ++i)
                t(i, i, k) = d_(i, k);
        return t;
    }

    bool same_shape(const FDiagonal3& o) const
    {
        return m_ == o.m_ && n_ == o.n_ && p_ == o.p_;
    }

    double norm() const { return d_.norm(); }

private:
    int m_, n_, p_;
    Matrix d_;  // min(m,n) x p
};

}  // namespace tsvd

#endif
