#ifndef TSVD_DFT_HPP
#define TSVD_DFT_HPP

//
// Mode-3 discrete Fourier transform of a third-order tensor and its
// inverse.  The forward kernel is omega^{(l-1)(k-1)} with
// omega = exp(2*pi*i/p), matching the block-diagonalization
// (F_p (x) I_m) bcirc(A) (F_p^{-1} (x) I_n).
//

#include <complex>
#include <numbers>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "tensor3.hpp"

namespace tsvd {

using Complex = std::complex<double>;

/// omega^q for omega = exp(2*pi*i/p), evaluated as exp(2*pi*i*(q mod p)/p)
/// so large exponents do not drift.
inline Complex unit_root_power(int p, long long q)
{
    long long r = q % p;
    if (r < 0)
        r += p;
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(r) / p;
    return {std::cos(theta), std::sin(theta)};
}

/// The p complex m x n matrices Delta^(1..p) of a tensor's mode-3 spectrum.
struct SpectralBlocks {
    int m = 0, n = 0, p = 0;
    std::vector<CMatrix> blocks;

    /// Frobenius norm of the originating tensor, via Parseval.
    double tensor_norm() const
    {
        double s = 0.0;
        for (const auto& b : blocks)
            s += b.squaredNorm();
        return std::sqrt(s / p);
    }

    /// Max deviation from the conjugate symmetry Delta^(k) = conj(Delta^(p-k+2)).
    double symmetry_residual() const
    {
        double r = 0.0;
        for (int k = 1; k < p; ++k) {
            const int mk = p - k;
            if (mk < k)
                break;
            r = std::max(r, (blocks[k] - blocks[mk].conjugate()).cwiseAbs().maxCoeff());
        }
        return r;
    }
};

inline double spectral_tolerance(double norm)
{
    return 1e-10 * std::max(1.0, norm);
}

namespace detail {

// Threshold above which the per-tube transform switches from direct
// summation to an FFT.
constexpr int kFftThreshold = 8;

}  // namespace detail

/// Delta^(k) = sum_l omega^{(l-1)(k-1)} A^(l), k = 1..p.
inline SpectralBlocks dft_mode3(const Tensor3& t)
{
    const int m = t.rows(), n = t.cols(), p = t.depth();
    SpectralBlocks s;
    s.m = m;
    s.n = n;
    s.p = p;
    s.blocks.assign(p, CMatrix::Zero(m, n));

    if (p <= detail::kFftThreshold) {
        for (int k = 0; k < p; ++k) {
            CMatrix acc = CMatrix::Zero(m, n);
            for (int l = 0; l < p; ++l)
                acc += unit_root_power(p, static_cast<long long>(l) * k) * t.slice(l);
            s.blocks[k] = acc;
        }
        return s;
    }

    // Our kernel uses exp(+i...); for real input that is the conjugate of
    // the usual exp(-i...) transform.
    Eigen::FFT<double> fft;
    std::vector<double> tube(p);
    std::vector<Complex> spec(p);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int l = 0; l < p; ++l)
                tube[l] = t(i, j, l);
            fft.fwd(spec, tube);
            for (int k = 0; k < p; ++k)
                s.blocks[k](i, j) = std::conj(spec[k]);
        }
    }
    return s;
}

/// A^(k) = (1/p) sum_l conj(omega)^{(k-1)(l-1)} Delta^(l).  The blocks must
/// satisfy conjugate symmetry (i.e. come from a real tensor); the residual
/// imaginary part is checked and discarded.
inline Tensor3 idft_mode3(const SpectralBlocks& s)
{
    const int m = s.m, n = s.n, p = s.p;
    const double tol = spectral_tolerance(s.tensor_norm());
    const double sym = s.symmetry_residual();
    if (sym > tol)
        throw NotConjugateSymmetric("idft_mode3: conjugate-symmetry residual " +
                                    std::to_string(sym) + " exceeds tolerance " +
                                    std::to_string(tol));

    Tensor3 t(m, n, p);
    if (p <= detail::kFftThreshold) {
        for (int k = 0; k < p; ++k) {
            CMatrix acc = CMatrix::Zero(m, n);
            for (int l = 0; l < p; ++l)
                acc += std::conj(unit_root_power(p, static_cast<long long>(k) * l)) * s.blocks[l];
            t.set_slice(k, (acc / static_cast<double>(p)).real());
        }
        return t;
    }

    // conj(omega)^{(k-1)(l-1)} is exactly the exp(-i...) kernel of fft.fwd.
    Eigen::FFT<double> fft;
    std::vector<Complex> tube(p), out(p);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int l = 0; l < p; ++l)
                tube[l] = s.blocks[l](i, j);
            fft.fwd(out, tube);
            for (int k = 0; k < p; ++k)
                t(i, j, k) = out[k].real() / p;
        }
    }
    return t;
}

struct RealSpectrumCheck {
    bool real_diagonal = false;
    double max_residual = 0.0;  // largest imaginary part or off-diagonal modulus
};

/// True iff every block is real and diagonal within tolerance, the shape a
/// spectrum takes for f-diagonal tensors with third-mode symmetry.
inline RealSpectrumCheck check_real_spectrum(const SpectralBlocks& s)
{
    const double tol = spectral_tolerance(s.tensor_norm());
    double worst = 0.0;
    for (const auto& b : s.blocks) {
        for (int i = 0; i < b.rows(); ++i) {
            for (int j = 0; j < b.cols(); ++j) {
                const double dev = (i == j) ? std::abs(b(i, j).imag()) : std::abs(b(i, j));
                worst = std::max(worst, dev);
            }
        }
    }
    return {worst <= tol, worst};
}

}  // namespace tsvd

#endif
