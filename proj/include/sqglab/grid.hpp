#pragma once

#include <cmath>
#include <stdexcept>

namespace sqg {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// Uniform N x N grid on [0, 2pi)^2. dealias_fraction is the retained
// fraction of the spectrum for pointwise products (2/3 rule by default).
struct GridSpec {
    int N = 64;
    double dealias_fraction = 2.0 / 3.0;

    GridSpec() = default;
    explicit GridSpec(int n, double dealias = 2.0 / 3.0)
        : N(n), dealias_fraction(dealias) {
        if (n < 4 || n % 2 != 0)
            throw std::invalid_argument("GridSpec: N must be even and >= 4");
        if (dealias <= 0.0 || dealias > 1.0)
            throw std::invalid_argument("GridSpec: dealias_fraction outside (0,1]");
    }

    double dx() const { return kTwoPi / N; }
    double x(int i) const { return i * dx(); }
    // Signed wavenumber of row/column index in the full c2c layout.
    int wavenumber(int i) const { return i <= N / 2 ? i : i - N; }
    int max_wavenumber() const { return N / 2 - 1; }
    // Product truncation radius (max-norm) for the 2/3-type rule.
    int dealias_cut() const {
        return static_cast<int>(std::floor((N - 1) * dealias_fraction / 2.0));
    }
    bool operator==(const GridSpec& o) const {
        return N == o.N && dealias_fraction == o.dealias_fraction;
    }
};

}  // namespace sqg
