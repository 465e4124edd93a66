#pragma once

#include "magbloch/complex_matrix.hpp"

#include <vector>

namespace magbloch {

enum class EigenBackend { automatic, lapack, jacobi };

bool lapack_available();
void set_eigen_backend(EigenBackend b);
EigenBackend eigen_backend();

struct EigenPairs {
    std::vector<double> values; // ascending
    CMatrix vectors;            // column k belongs to values[k]
};

// Hermitian eigenproblem; only the upper triangle is trusted.
std::vector<double> eigvalsh(const CMatrix& a);
EigenPairs eigh(const CMatrix& a);

// Cyclic complex Jacobi; the reference solver used when LAPACK is absent.
EigenPairs jacobi_eigh(const CMatrix& a, bool want_vectors, double tol = 1e-15, int max_sweeps = 100);

} // namespace magbloch
