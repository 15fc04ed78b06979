#ifndef SEGRE_TESTS_HELPERS_HPP
#define SEGRE_TESTS_HELPERS_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "segre/matrix.hpp"
#include "segre/rational.hpp"

namespace th {

// Small signed integers keep rank patterns generic without entry blowup.
inline long rnd_int(std::mt19937_64& g, long lo = -9, long hi = 9) {
    return lo + static_cast<long>(g() % static_cast<unsigned long>(hi - lo + 1));
}

inline segre::Rational rnd_rational(std::mt19937_64& g) {
    long num = rnd_int(g);
    long den = rnd_int(g, 1, 9);
    return segre::Rational(num, den);
}

inline segre::Matrix rnd_matrix(std::mt19937_64& g, std::size_t r, std::size_t c,
                                bool fractions = false) {
    segre::Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            m(i, j) = fractions ? rnd_rational(g) : segre::Rational(rnd_int(g));
    return m;
}

// Unit lower * unit upper * nonzero diagonal: invertible by construction.
inline segre::Matrix rnd_invertible(std::mt19937_64& g, std::size_t n) {
    segre::Matrix l = segre::Matrix::identity(n);
    segre::Matrix u = segre::Matrix::identity(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) {
            l(i, j) = segre::Rational(rnd_int(g, -3, 3));
            u(j, i) = segre::Rational(rnd_int(g, -3, 3));
        }
    segre::Matrix d(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        long x = rnd_int(g, 1, 5);
        d(i, i) = segre::Rational(g() % 2 ? x : -x);
    }
    return l * d * u;
}

inline std::vector<segre::Rational> rnd_vector(std::mt19937_64& g, std::size_t n) {
    std::vector<segre::Rational> v(n);
    for (auto& x : v) x = segre::Rational(rnd_int(g));
    return v;
}

} // namespace th

#endif
