// Smooth cutoff building blocks: a C^6 polynomial step, a compactly
// supported polynomial mollifier with closed-form CDF, the quadratic
// partition-of-unity time cutoff, and a C^4 unit time bump.
#pragma once

#include <cmath>

namespace sqg {

// Ascending C^6 step: 0 for x <= 0, 1 for x >= 1, S(x) + S(1-x) = 1.
inline double smooth_step6(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double c[] = {1716.0, -9009.0, 20020.0, -24024.0, 16380.0, -6006.0, 924.0};
    double x7 = x * x * x;
    x7 *= x7 * x;  // x^7
    double p = 0.0, xp = 1.0;
    for (int i = 0; i < 7; ++i) {
        p += c[i] * xp;
        xp *= x;
    }
    return x7 * p;
}

// Normalized even mollifier rho(s) = c (1 - s^2)^6 on [-1, 1].
// c = 13! / (2^13 (6!)^2) makes the mass exactly 1.
inline constexpr double kMollifierNorm = 1.46630859375;

inline double mollifier(double s) {
    if (std::abs(s) >= 1.0) return 0.0;
    double u = 1.0 - s * s;
    double u2 = u * u;
    return kMollifierNorm * u2 * u2 * u2;
}

inline double mollifier_deriv(double s) {
    if (std::abs(s) >= 1.0) return 0.0;
    double u = 1.0 - s * s;
    double u2 = u * u;
    return kMollifierNorm * 6.0 * u2 * u * (-2.0 * s);
}

// CDF of the mollifier: exact antiderivative of c (1-s^2)^6.
inline double mollifier_cdf(double x) {
    if (x <= -1.0) return 0.0;
    if (x >= 1.0) return 1.0;
    // int (1-s^2)^6 ds = s - 2 s^3 + 3 s^5 - 20/7 s^7 + 5/3 s^9 - 6/11 s^11 + 1/13 s^13
    auto G = [](double s) {
        double s2 = s * s;
        return s * (1.0 + s2 * (-2.0 + s2 * (3.0 + s2 * (-20.0 / 7.0 +
                    s2 * (5.0 / 3.0 + s2 * (-6.0 / 11.0 + s2 * (1.0 / 13.0)))))));
    };
    return kMollifierNorm * (G(x) - G(-1.0));
}

// Unit time cutoff: plateau 1 on |u| <= 1/3, support |u| <= 2/3, and
// sum_k chi^2(u - k) = 1 exactly.
inline double time_cutoff_unit(double u) {
    u = std::abs(u);
    if (u <= 1.0 / 3.0) return 1.0;
    if (u >= 2.0 / 3.0) return 0.0;
    return std::cos(1.5707963267948966 * smooth_step6(3.0 * u - 1.0));
}

// C^4 polynomial bump on [0, 1], peak value 1 at s = 1/2.
inline double poly_bump01(double s) {
    if (s <= 0.0 || s >= 1.0) return 0.0;
    double p = s * (1.0 - s);
    double p2 = p * p;
    return 1024.0 * p2 * p2 * p;
}

}  // namespace sqg
