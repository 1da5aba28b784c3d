#pragma once

#include <cstdint>

#include "naq/lambda_series.hpp"
#include "naq/polynomial.hpp"

namespace naq {

/// Deterministic splitmix64 generator. Used instead of <random> so that
/// seeded runs reproduce byte-identically across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : s_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, n); n must be positive.
    std::uint64_t below(std::uint64_t n) { return next() % n; }

    /// Uniform in [lo, hi] inclusive.
    long long int_range(long long lo, long long hi) {
        return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

private:
    std::uint64_t s_;
};

/// Small nonzero rational with numerator in [-9, 9] and denominator in [1, 4].
inline Rational random_rational(Rng& rng) {
    long long num = rng.int_range(-9, 9);
    if (num == 0) num = 1;
    return Rational(num, rng.int_range(1, 4));
}

inline MultiIndex random_exponent(Rng& rng, int dim, int max_order) {
    MultiIndex m(dim);
    int total = static_cast<int>(rng.below(static_cast<std::uint64_t>(max_order) + 1));
    for (int t = 0; t < total; ++t) ++m[static_cast<int>(rng.below(static_cast<std::uint64_t>(dim)))];
    return m;
}

/// Sparse random polynomial with up to max_terms terms of total degree
/// <= max_degree. May be zero only if unlucky cancellation occurs.
inline Polynomial random_polynomial(Rng& rng, int dim, int max_degree, int max_terms = 3) {
    Polynomial p(dim);
    int terms = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_terms)));
    for (int t = 0; t < terms; ++t)
        p += Polynomial::monomial(dim, random_exponent(rng, dim, max_degree), random_rational(rng));
    return p;
}

inline Polynomial random_nonzero_polynomial(Rng& rng, int dim, int max_degree, int max_terms = 3) {
    for (;;) {
        Polynomial p = random_polynomial(rng, dim, max_degree, max_terms);
        if (!p.is_zero()) return p;
    }
}

/// Random truncated series; lowest nonzero lambda order is chosen uniformly
/// in [0, K].
inline LambdaSeries random_series(Rng& rng, int dim, int truncation_order, int max_degree) {
    LambdaSeries s(dim, truncation_order);
    int lowest = static_cast<int>(rng.below(static_cast<std::uint64_t>(truncation_order) + 1));
    s.set_coefficient(lowest, random_nonzero_polynomial(rng, dim, max_degree));
    for (int r = lowest + 1; r <= truncation_order; ++r)
        if (rng.below(2) == 0)
            s.set_coefficient(r, random_polynomial(rng, dim, max_degree));
    return s;
}

} // namespace naq
