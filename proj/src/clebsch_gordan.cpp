#include "shellvqe/clebsch_gordan.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace shellvqe {

namespace {
// Factorials of half the doubled arguments never exceed ~40! for shell-model
// j values; long double keeps the alternating Racah sum accurate.
long double factorial(int n) {
    static std::vector<long double> cache{1.0L};
    if (n < 0) throw std::domain_error("factorial of negative integer");
    while (static_cast<int>(cache.size()) <= n)
        cache.push_back(cache.back() * static_cast<long double>(cache.size()));
    return cache[n];
}
}  // namespace

double clebsch_gordan(int j1_2, int m1_2, int j2_2, int m2_2, int J2, int M2) {
    if (j1_2 < 0 || j2_2 < 0 || J2 < 0) throw std::domain_error("negative angular momentum");
    if (((j1_2 ^ m1_2) | (j2_2 ^ m2_2) | (J2 ^ M2)) & 1)
        throw std::domain_error("2j and 2m must have equal parity");
    if ((j1_2 + j2_2 + J2) & 1) throw std::domain_error("j1+j2+J must be an integer");
    if (std::abs(m1_2) > j1_2 || std::abs(m2_2) > j2_2 || std::abs(M2) > J2) return 0.0;
    if (m1_2 + m2_2 != M2) return 0.0;
    if (J2 < std::abs(j1_2 - j2_2) || J2 > j1_2 + j2_2) return 0.0;

    // Racah's closed form; every factorial argument below is an integer.
    auto f = [](int doubled) { return factorial(doubled / 2); };
    long double delta = f(j1_2 + j2_2 - J2) * f(j1_2 - j2_2 + J2) * f(-j1_2 + j2_2 + J2) /
                        f(j1_2 + j2_2 + J2 + 2);
    long double pre = std::sqrt(static_cast<long double>(J2 + 1) * delta *
                                f(j1_2 + m1_2) * f(j1_2 - m1_2) * f(j2_2 + m2_2) *
                                f(j2_2 - m2_2) * f(J2 + M2) * f(J2 - M2));

    int kmin = std::max({0, j2_2 - J2 - m1_2, j1_2 - J2 + m2_2}) / 2;
    int kmax = std::min({j1_2 + j2_2 - J2, j1_2 - m1_2, j2_2 + m2_2}) / 2;
    long double sum = 0.0L;
    for (int k = kmin; k <= kmax; ++k) {
        long double den = factorial(k) * f(j1_2 + j2_2 - J2 - 2 * k) * f(j1_2 - m1_2 - 2 * k) *
                          f(j2_2 + m2_2 - 2 * k) * f(J2 - j2_2 + m1_2 + 2 * k) *
                          f(J2 - j1_2 - m2_2 + 2 * k);
        sum += (k & 1 ? -1.0L : 1.0L) / den;
    }
    return static_cast<double>(pre * sum);
}

}  // namespace shellvqe
