#pragma once
// Shared helpers for the test binaries. The 4x4 determinant here is an
// independent oracle (cofactor expansion) and must stay decoupled from the
// library's determinant formula.

#include <array>
#include <complex>
#include <random>

namespace testutil {

using cplx = std::complex<double>;

inline double rel_err(cplx got, cplx want) {
    const double scale = std::max(std::abs(want), 1e-300);
    return std::abs(got - want) / scale;
}

inline cplx det3(cplx a11, cplx a12, cplx a13, cplx a21, cplx a22, cplx a23,
                 cplx a31, cplx a32, cplx a33) {
    return a11 * (a22 * a33 - a23 * a32) - a12 * (a21 * a33 - a23 * a31) +
           a13 * (a21 * a32 - a22 * a31);
}

inline cplx det4(const std::array<std::array<cplx, 4>, 4>& m) {
    cplx det{0.0, 0.0};
    double sign = 1.0;
    for (int col = 0; col < 4; ++col) {
        std::array<cplx, 9> minor{};
        int idx = 0;
        for (int r = 1; r < 4; ++r) {
            for (int c = 0; c < 4; ++c) {
                if (c == col) continue;
                minor[idx++] = m[r][c];
            }
        }
        det += sign * m[0][col] *
               det3(minor[0], minor[1], minor[2], minor[3], minor[4], minor[5],
                    minor[6], minor[7], minor[8]);
        sign = -sign;
    }
    return det;
}

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(std::uint64_t seed) : gen(seed) {}

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>{lo, hi}(gen);
    }
    int uniform_int(int lo, int hi) {
        return std::uniform_int_distribution<int>{lo, hi}(gen);
    }
};

}  // namespace testutil
