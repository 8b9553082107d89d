#ifndef TSVD_TESTS_SUPPORT_HPP
#define TSVD_TESTS_SUPPORT_HPP

//
// Test-only oracles and fixtures.  The oracles here go through the dense
// Kronecker-product route (explicit DFT matrices against bcirc) and stay
// independent of the per-tube transform paths in the library.
//

#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "tsvd/dft.hpp"
#include "tsvd/sdiag.hpp"
#include "tsvd/tensor3.hpp"
#include "tsvd/tsvd.hpp"

namespace tsupport {

using tsvd::CMatrix;
using tsvd::Complex;
using tsvd::FDiagonal3;
using tsvd::Matrix;
using tsvd::Tensor3;

// F_p(k,l) = omega^{kl}, 0-based.
inline CMatrix fourier_matrix(int p)
{
    CMatrix f(p, p);
    for (int k = 0; k < p; ++k)
        for (int l = 0; l < p; ++l)
            f(k, l) = tsvd::unit_root_power(p, static_cast<long long>(k) * l);
    return f;
}

inline CMatrix kron_identity(const CMatrix& f, int dim)
{
    const int p = static_cast<int>(f.rows());
    CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(p) * dim,
                                static_cast<Eigen::Index>(p) * dim);
    for (int r = 0; r < p; ++r)
        for (int c = 0; c < p; ++c)
            out.block(static_cast<Eigen::Index>(r) * dim, static_cast<Eigen::Index>(c) * dim,
                      dim, dim) = f(r, c) * CMatrix::Identity(dim, dim);
    return out;
}

struct DenseSpectrum {
    std::vector<CMatrix> blocks;
    double off_block_residual = 0.0;
};

// (F_p (x) I_m) bcirc(t) (F_p^{-1} (x) I_n), diagonal blocks extracted.
inline DenseSpectrum oracle_spectrum(const Tensor3& t)
{
    const int m = t.rows(), n = t.cols(), p = t.depth();
    const CMatrix f = fourier_matrix(p);
    const CMatrix finv = f.conjugate() / static_cast<double>(p);
    const CMatrix big =
        kron_identity(f, m) * tsvd::bcirc(t).cast<Complex>() * kron_identity(finv, n);

    DenseSpectrum out;
    double off = 0.0;
    for (int rb = 0; rb < p; ++rb)
        for (int cb = 0; cb < p; ++cb) {
            const CMatrix blk = big.block(static_cast<Eigen::Index>(rb) * m,
                                          static_cast<Eigen::Index>(cb) * n, m, n);
            if (rb == cb)
                out.blocks.push_back(blk);
            else
                off = std::max(off, blk.cwiseAbs().maxCoeff());
        }
    out.off_block_residual = off;
    return out;
}

// Sorted-spectrum mapping G through the dense route: per-block SVD of the
// dense spectrum, then bcirc^{-1}((F^{-1} (x) I) D (F (x) I)).
inline Tensor3 oracle_gmap(const Tensor3& t)
{
    const int m = t.rows(), n = t.cols(), p = t.depth();
    const DenseSpectrum spec = oracle_spectrum(t);

    CMatrix dbig = CMatrix::Zero(static_cast<Eigen::Index>(m) * p,
                                 static_cast<Eigen::Index>(n) * p);
    for (int k = 0; k < p; ++k) {
        Eigen::JacobiSVD<CMatrix> svd(spec.blocks[k]);
        const auto sv = svd.singularValues();
        for (int i = 0; i < sv.size(); ++i)
            dbig(static_cast<Eigen::Index>(k) * m + i, static_cast<Eigen::Index>(k) * n + i) =
                sv(i);
    }

    const CMatrix f = fourier_matrix(p);
    const CMatrix finv = f.conjugate() / static_cast<double>(p);
    const CMatrix sbig = kron_identity(finv, m) * dbig * kron_identity(f, n);
    return tsvd::bcirc_inv(sbig.real(), m, n, p);
}

// The 3x3x3 fixture that passes all four necessary conditions but is not
// s-diagonal: slice-1 diagonal (12, 8, 5), tube 1 carries 5 on slices 2, 3.
inline FDiagonal3 counterexample_fixture()
{
    FDiagonal3 s(3, 3, 3);
    s.diag(0, 0) = 12.0;
    s.diag(1, 0) = 8.0;
    s.diag(2, 0) = 5.0;
    s.diag(0, 1) = 5.0;
    s.diag(0, 2) = 5.0;
    return s;
}

// Random f-diagonal with entries uniform in [-1, 1]; optionally
// symmetrized along the third mode.
inline FDiagonal3 random_fdiagonal(int m, int n, int p, unsigned long long seed,
                                   bool symmetrize)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    FDiagonal3 s(m, n, p);
    for (int i = 0; i < s.min_mn(); ++i)
        for (int k = 0; k < p; ++k)
            s.diag(i, k) = uni(rng);
    if (symmetrize)
        for (int i = 0; i < s.min_mn(); ++i)
            for (int k = 1; k <= (p - 1) / 2; ++k)
                s.diag(i, p - k) = s.diag(i, k);
    return s;
}

// Distance of the classification instance to its nearest decision
// threshold.  0 means the case sits in the ambiguous band and should be
// excluded from cross-checker equivalence assertions.
inline double sdiag_margin(const FDiagonal3& s, double tol = 1e-10)
{
    const double te = tol * std::max(1.0, s.norm());
    const int p = s.depth();
    const int mn = s.min_mn();
    double margin = std::numeric_limits<double>::infinity();

    // symmetry deviations: clearly zero or clearly nonzero, else ambiguous.
    // A clear violation decides the verdict for every checker, so the case
    // is kept regardless of the spectral margins below.
    double clear_violation = 0.0;
    for (int i = 0; i < mn; ++i)
        for (int k = 1; k <= (p - 1) / 2; ++k) {
            const double dev = std::abs(s.diag(i, k) - s.diag(i, p - k));
            if (dev > te / 10.0 && dev < 10.0 * te)
                return 0.0;
            if (dev >= 10.0 * te)
                clear_violation = std::max(clear_violation, dev);
        }
    if (clear_violation > 0.0)
        return clear_violation;

    const CMatrix delta = tsvd::detail::sdiag_delta(s);
    for (int i = 0; i < mn; ++i)
        for (int k = 0; k < p; ++k) {
            margin = std::min(margin, std::abs(delta(i, k).real()));
            const double next = (i + 1 < mn) ? delta(i + 1, k).real() : 0.0;
            margin = std::min(margin, std::abs(delta(i, k).real() - next));
        }
    return margin;
}

}  // namespace tsupport

#endif
