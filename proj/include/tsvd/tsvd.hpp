#ifndef TSVD_TSVD_HPP
#define TSVD_TSVD_HPP

//
// The sorted-spectrum mapping G (mode-3 DFT, per-slice SVD, inverse DFT),
// the ST-SVD factorization A = U * S * V^T, T-singular values, tubal rank
// and truncated low-tubal-rank approximation.
//

#include <limits>
#include <utility>
#include <vector>

#include "dft.hpp"
#include "tensor3.hpp"
#include "tprod.hpp"

namespace tsvd {

namespace detail {

// Per-slice SVDs of the spectral blocks, economized over conjugate pairs:
// slices k = 1..ceil((p+1)/2) are decomposed, the mirrored slices reuse the
// same singular values with conjugated unitary factors.  Slices 1 and
// p/2+1 (p even) are real, so their factors are computed by a real SVD and
// U, V come out exactly real after the inverse transform.
struct SliceSvds {
    Matrix d;                    // min(m,n) x p singular values, nonincreasing per column
    std::vector<CMatrix> phi;    // p unitary m x m factors
    std::vector<CMatrix> psi;    // p unitary n x n factors
};

inline SliceSvds slice_svds(const SpectralBlocks& s, bool want_factors)
{
    const int m = s.m, n = s.n, p = s.p;
    const int mn = std::min(m, n);
    const int half = p / 2 + 1;

    SliceSvds out;
    out.d = Matrix::Zero(mn, p);
    if (want_factors) {
        out.phi.assign(p, CMatrix());
        out.psi.assign(p, CMatrix());
    }

    for (int k = 0; k < half; ++k) {
        const bool self_conjugate = (k == 0) || (p % 2 == 0 && k == p / 2);
        if (self_conjugate) {
            Eigen::JacobiSVD<Matrix> svd(s.blocks[k].real(),
                                         Eigen::ComputeFullU | Eigen::ComputeFullV);
            out.d.col(k) = svd.singularValues();
            if (want_factors) {
                out.phi[k] = svd.matrixU().cast<Complex>();
                out.psi[k] = svd.matrixV().cast<Complex>();
            }
        } else {
            Eigen::JacobiSVD<CMatrix> svd(s.blocks[k],
                                          Eigen::ComputeFullU | Eigen::ComputeFullV);
            out.d.col(k) = svd.singularValues();
            if (want_factors) {
                out.phi[k] = svd.matrixU();
                out.psi[k] = svd.matrixV();
            }
        }
        const int mirror = (k == 0) ? 0 : p - k;
        if (mirror != k) {
            out.d.col(mirror) = out.d.col(k);
            if (want_factors) {
                out.phi[mirror] = out.phi[k].conjugate();
                out.psi[mirror] = out.psi[k].conjugate();
            }
        }
    }
    return out;
}

// Inverse mode-3 DFT of the tube d(0..p-1), fixed summation order.
inline double idft_tube_entry(const Matrix& d, int i, int k, int p)
{
    Complex acc(0.0, 0.0);
    for (int l = 0; l < p; ++l)
        acc += std::conj(unit_root_power(p, static_cast<long long>(k) * l)) * d(i, l);
    return acc.real() / p;
}

inline FDiagonal3 assemble_fdiagonal(const Matrix& d, int m, int n, int p)
{
    FDiagonal3 f(m, n, p);
    const int mn = std::min(m, n);
    // d is symmetric across conjugate slices, so the tubes are real; the
    // imaginary residue of the summation is at roundoff level and dropped.
    // Real residues below the summation roundoff floor are snapped to zero,
    // so e.g. the identity tensor is a bit-exact fixed point.
    const double floor =
        4.0 * p * std::numeric_limits<double>::epsilon() * (mn > 0 ? d.maxCoeff() : 0.0);
    for (int i = 0; i < mn; ++i)
        for (int k = 0; k < p; ++k) {
            const double v = idft_tube_entry(d, i, k, p);
            f.diag(i, k) = (std::abs(v) <= floor) ? 0.0 : v;
        }
    return f;
}

}  // namespace detail

/// The mapping G: the canonical f-diagonal representative of
/// the orthogonal-equivalence class of a.
inline FDiagonal3 gmap(const Tensor3& a)
{
    const auto svds = detail::slice_svds(dft_mode3(a), /*want_factors=*/false);
    return detail::assemble_fdiagonal(svds.d, a.rows(), a.cols(), a.depth());
}

struct StSvdFactors {
    Tensor3 u;      // m x m x p, orthogonal
    FDiagonal3 s;   // m x n x p, s-diagonal
    Tensor3 v;      // n x n x p, orthogonal
};

/// ST-SVD factorization a = u * s * v^T with s = gmap(a).
inline StSvdFactors st_svd(const Tensor3& a)
{
    const int m = a.rows(), n = a.cols(), p = a.depth();
    const auto svds = detail::slice_svds(dft_mode3(a), /*want_factors=*/true);

    SpectralBlocks phi{m, m, p, svds.phi};
    SpectralBlocks psi{n, n, p, svds.psi};
    return StSvdFactors{idft_mode3(phi),
                        detail::assemble_fdiagonal(svds.d, m, n, p),
                        idft_mode3(psi)};
}

struct TubalSpectrum {
    std::vector<double> sigmas;  // nonincreasing
    int tubal_rank = 0;
};

/// sigma_i = sqrt(sum_k S(i,i,k)^2) for S = gmap(a); tubal rank counts
/// sigmas above 1e-10 * sigma_1.
inline TubalSpectrum t_singular_values(const Tensor3& a)
{
    const FDiagonal3 s = gmap(a);
    TubalSpectrum spec;
    spec.sigmas.reserve(s.min_mn());
    for (int i = 0; i < s.min_mn(); ++i)
        spec.sigmas.push_back(s.tube(i).norm());
    const double tau = spec.sigmas.empty() ? 0.0 : 1e-10 * spec.sigmas.front();
    for (double v : spec.sigmas)
        if (v > tau)
            ++spec.tubal_rank;
    return spec;
}

/// Best tubal-rank-r approximation: zero the trailing tubes of S and
/// recompose.  The squared error is the tail energy sum_{i>r} sigma_i^2.
inline Tensor3 truncate(const Tensor3& a, int r)
{
    const int mn = std::min(a.rows(), a.cols());
    if (r < 0 || r > mn)
        throw RankOutOfRange("truncate: rank " + std::to_string(r) +
                             " outside [0, " + std::to_string(mn) + "]");
    StSvdFactors f = st_svd(a);
    for (int i = r; i < f.s.min_mn(); ++i)
        for (int k = 0; k < a.depth(); ++k)
            f.s.diag(i, k) = 0.0;
    return tprod(tprod(f.u, f.s.to_tensor()), transpose(f.v));
}

/// Proposition-style extremal inequality: the leading s squared T-singular
/// values dominate the energy of any s distinct tubes a(i_l, j_l, :).
/// Pairs are 0-based.
inline bool extremal_bound_check(const Tensor3& a,
                                 const std::vector<std::pair<int, int>>& pairs)
{
    const int mn = std::min(a.rows(), a.cols());
    if (static_cast<int>(pairs.size()) > mn)
        throw IndexOutOfRange("extremal_bound_check: more pairs than min(m,n)");
    for (size_t l = 0; l < pairs.size(); ++l) {
        const auto [i, j] = pairs[l];
        if (i < 0 || i >= a.rows() || j < 0 || j >= a.cols())
            throw IndexOutOfRange("extremal_bound_check: pair (" + std::to_string(i + 1) +
                                  "," + std::to_string(j + 1) + ") out of bounds");
        for (size_t l2 = 0; l2 < l; ++l2)
            if (pairs[l2] == pairs[l])
                throw DuplicatePair("extremal_bound_check: repeated pair (" +
                                    std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
    }

    const TubalSpectrum spec = t_singular_values(a);
    double lhs = 0.0;
    for (size_t l = 0; l < pairs.size(); ++l)
        lhs += spec.sigmas[l] * spec.sigmas[l];
    double rhs = 0.0;
    for (const auto& [i, j] : pairs)
        for (int k = 0; k < a.depth(); ++k)
            rhs += a(i, j, k) * a(i, j, k);

    const double fn = frobenius_norm(a);
    const double slack = 1e-10 * fn * fn;
    return lhs >= rhs - slack;
}

}  // namespace tsvd

#endif
