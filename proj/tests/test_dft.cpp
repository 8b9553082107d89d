#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "support.hpp"
#include "tsvd/dft.hpp"
#include "tsvd/random.hpp"

using namespace tsvd;

TEST_CASE("unit root")
{
    for (int p : {2, 3, 4, 7, 16}) {
        const Complex w = unit_root_power(p, 1);
        CHECK(std::abs(std::abs(w) - 1.0) <= 1e-15);
        CHECK(std::abs(unit_root_power(p, p) - Complex(1.0, 0.0)) <= p * 1e-15);
        // argument reduction keeps large exponents on the circle
        CHECK(std::abs(unit_root_power(p, 1000000LL * p + 1) - w) <= 1e-12);
    }
}

TEST_CASE("spectrum of the identity tensor is constant identity")
{
    for (int p : {2, 5, 12}) {
        const SpectralBlocks s = dft_mode3(identity_tensor(3, p));
        REQUIRE(static_cast<int>(s.blocks.size()) == p);
        for (const auto& b : s.blocks)
            CHECK((b - CMatrix::Identity(3, 3)).cwiseAbs().maxCoeff() <= 1e-14);
    }
}

TEST_CASE("spectrum of the 3x3x3 counterexample fixture")
{
    const Tensor3 t = tsupport::counterexample_fixture().to_tensor();
    const SpectralBlocks s = dft_mode3(t);

    CMatrix d1 = CMatrix::Zero(3, 3), d2 = CMatrix::Zero(3, 3);
    d1.diagonal() << 22.0, 8.0, 5.0;
    d2.diagonal() << 7.0, 8.0, 5.0;  // 12 + 5w + 5w^2 = 12 - 5
    CHECK((s.blocks[0] - d1).cwiseAbs().maxCoeff() <= 1e-13);
    CHECK((s.blocks[1] - d2).cwiseAbs().maxCoeff() <= 1e-13);
    CHECK((s.blocks[2] - d2).cwiseAbs().maxCoeff() <= 1e-13);
}

TEST_CASE("spectrum matches the dense Kronecker oracle")
{
    const Tensor3 t = random_tensor(3, 2, 5, 31);
    const SpectralBlocks s = dft_mode3(t);
    const tsupport::DenseSpectrum oracle = tsupport::oracle_spectrum(t);
    const double scale = frobenius_norm(t);
    for (int k = 0; k < 5; ++k)
        CHECK((s.blocks[k] - oracle.blocks[k]).cwiseAbs().maxCoeff() <= 1e-12 * scale);
}

TEST_CASE("block-diagonalization: off-block residual of the dense conjugation")
{
    std::mt19937_64 rng(37);
    std::uniform_int_distribution<int> dim(1, 4), depth(2, 6);
    for (int c = 0; c < 20; ++c) {
        const Tensor3 t = random_tensor(dim(rng), dim(rng), depth(rng), 4000 + c);
        CHECK(tsupport::oracle_spectrum(t).off_block_residual <=
              1e-11 * std::max(1.0, frobenius_norm(t)));
    }
}

TEST_CASE("inverse transform")
{
    SpectralBlocks s;
    s.m = s.n = 3;
    s.p = 4;
    s.blocks.assign(4, CMatrix::Identity(3, 3));
    CHECK(frobenius_norm(idft_mode3(s) - identity_tensor(3, 4)) <= 1e-14);

    const Tensor3 t = random_tensor(4, 4, 6, 41);
    CHECK(frobenius_norm(idft_mode3(dft_mode3(t)) - t) <=
          1e-12 * std::max(1.0, frobenius_norm(t)));
}

TEST_CASE("inverse transform rejects non-symmetric spectra")
{
    SpectralBlocks s;
    s.m = s.n = 1;
    s.p = 3;
    s.blocks = {CMatrix::Zero(1, 1), CMatrix::Zero(1, 1), CMatrix::Zero(1, 1)};
    s.blocks[1](0, 0) = Complex(0.0, 1.0);  // conj of block 3 would need -i
    CHECK_THROWS_AS(idft_mode3(s), NotConjugateSymmetric);
}

TEST_CASE("round trip and Parseval, 200 seeded shapes up to 8x8x16")
{
    std::mt19937_64 rng(43);
    std::uniform_int_distribution<int> dim(1, 8), depth(2, 16);
    for (int c = 0; c < 200; ++c) {
        const Tensor3 t = random_tensor(dim(rng), dim(rng), depth(rng), 5000 + c);
        const double scale = std::max(1.0, frobenius_norm(t));
        const SpectralBlocks s = dft_mode3(t);

        CHECK(frobenius_norm(idft_mode3(s) - t) <= 1e-12 * scale);
        CHECK(s.symmetry_residual() <= spectral_tolerance(scale));

        double spatial = 0.0, spectral = 0.0;
        for (int k = 0; k < t.depth(); ++k)
            spatial += t.slice(k).squaredNorm();
        for (const auto& b : s.blocks)
            spectral += b.squaredNorm();
        CHECK(spatial == Catch::Approx(spectral / t.depth()).epsilon(1e-12));
    }
}

TEST_CASE("check_real_spectrum")
{
    // counterexample fixture: symmetric tubes, spectrum real diagonal
    const auto cex = tsupport::counterexample_fixture();
    CHECK(check_real_spectrum(dft_mode3(cex.to_tensor())).real_diagonal);

    // broken symmetry: S(1,1,2)=1, S(1,1,3)=0, p=3
    FDiagonal3 bad(1, 1, 3);
    bad.diag(0, 1) = 1.0;
    const auto res = check_real_spectrum(dft_mode3(bad.to_tensor()));
    CHECK_FALSE(res.real_diagonal);
    CHECK(res.max_residual > 0.5);  // imag part of w is sqrt(3)/2

    // generic dense tensor: off-diagonal spectral entries
    CHECK_FALSE(check_real_spectrum(dft_mode3(random_tensor(3, 3, 4, 47))).real_diagonal);
}
