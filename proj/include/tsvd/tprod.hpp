#ifndef TSVD_TPROD_HPP
#define TSVD_TPROD_HPP

//
// The t-product A * B = fold(bcirc(A) unfold(B)) and orthogonality
// utilities.  The default path multiplies the spectral blocks per slice;
// the unfolded path evaluates the defining formula and serves as an
// independent oracle.
//

#include "dft.hpp"
#include "tensor3.hpp"

namespace tsvd {

enum class TprodPath { Spectral, Unfolded };

inline Tensor3 tprod(const Tensor3& a, const Tensor3& b,
                     TprodPath path = TprodPath::Spectral)
{
    if (a.cols() != b.rows() || a.depth() != b.depth())
        throw ShapeMismatch("tprod: " + Tensor3::shape_str(a.rows(), a.cols(), a.depth()) +
                            " * " + Tensor3::shape_str(b.rows(), b.cols(), b.depth()));

    if (path == TprodPath::Unfolded)
        return fold(bcirc(a) * unfold(b), a.rows(), b.cols(), a.depth());

    SpectralBlocks sa = dft_mode3(a);
    SpectralBlocks sb = dft_mode3(b);
    SpectralBlocks sc;
    sc.m = a.rows();
    sc.n = b.cols();
    sc.p = a.depth();
    sc.blocks.reserve(sc.p);
    for (int k = 0; k < sc.p; ++k)
        sc.blocks.push_back(sa.blocks[k] * sb.blocks[k]);
    return idft_mode3(sc);
}

inline double default_orthogonality_tol(const Tensor3& u)
{
    return 1e-9 * std::sqrt(static_cast<double>(u.rows()) * u.depth()) *
           std::max(1.0, frobenius_norm(u));
}

inline bool is_orthogonal(const Tensor3& u, double tol = -1.0)
{
    if (u.rows() != u.cols())
        throw ShapeMismatch("is_orthogonal: tensor must be square in the first two modes");
    if (tol < 0.0)
        tol = default_orthogonality_tol(u);
    const Tensor3 id = identity_tensor(u.rows(), u.depth());
    const Tensor3 ut = transpose(u);
    return frobenius_norm(tprod(u, ut) - id) <= tol &&
           frobenius_norm(tprod(ut, u) - id) <= tol;
}

/// U * A * V^T for orthogonal U, V.
inline Tensor3 orthogonal_conjugate(const Tensor3& a, const Tensor3& u, const Tensor3& v)
{
    if (u.rows() != a.rows() || v.rows() != a.cols() ||
        u.depth() != a.depth() || v.depth() != a.depth())
        throw ShapeMismatch("orthogonal_conjugate: incompatible factor shapes");
    if (!is_orthogonal(u))
        throw NotOrthogonal("orthogonal_conjugate: left factor fails the orthogonality check");
    if (!is_orthogonal(v))
        throw NotOrthogonal("orthogonal_conjugate: right factor fails the orthogonality check");
    return tprod(tprod(u, a), transpose(v));
}

}  // namespace tsvd

#endif
