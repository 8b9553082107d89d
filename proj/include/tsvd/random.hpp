#ifndef TSVD_RANDOM_HPP
#define TSVD_RANDOM_HPP

//
// Seeded generators for tensors and orthogonal tensors.  Deterministic per
// seed: the same seed always produces the same tensor.
//

#include <random>

#include "tensor3.hpp"
#include "tsvd.hpp"

namespace tsvd {

/// m x n x p tensor with iid standard-normal entries.
inline Tensor3 random_tensor(int m, int n, int p, unsigned long long seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Tensor3 t(m, n, p);
    for (double& v : t.data())
        v = gauss(rng);
    return t;
}

/// Random orthogonal tensor: the U factor of the ST-SVD of a seeded
/// standard-normal m x m x p tensor.
inline Tensor3 random_orthogonal(int m, int p, unsigned long long seed)
{
    return st_svd(random_tensor(m, m, p, seed)).u;
}

}  // namespace tsvd

#endif
