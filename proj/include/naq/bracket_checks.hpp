#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "naq/bivector.hpp"
#include "naq/sweep.hpp"

namespace naq {

namespace detail {

/// Deterministic search for a rational point where a nonzero polynomial
/// does not vanish. Scans integer points shell by shell in the max norm
/// with coordinate values ordered 0, 1, -1, 2, -2, ...; a nonzero
/// polynomial of degree d cannot vanish on the grid {0..d}^n, so the scan
/// terminates.
inline std::vector<Rational> nonvanishing_point(const Polynomial& p) {
    int n = p.dim();
    auto value = [](std::size_t idx) -> long long {
        if (idx == 0) return 0;
        long long m = static_cast<long long>((idx + 1) / 2);
        return idx % 2 == 1 ? m : -m;
    };
    for (int shell = 0;; ++shell) {
        std::size_t per_axis = 2 * static_cast<std::size_t>(shell) + 1;
        std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
        for (;;) {
            bool on_shell = shell == 0;
            for (std::size_t v : idx)
                if (v >= 1 && v >= per_axis - 2) on_shell = true;
            if (on_shell) {
                std::vector<Rational> pt;
                pt.reserve(static_cast<std::size_t>(n));
                for (std::size_t v : idx) pt.emplace_back(value(v));
                if (!p.eval(pt).is_zero()) return pt;
            }
            int axis = n - 1;
            while (axis >= 0 && idx[static_cast<std::size_t>(axis)] + 1 == per_axis) {
                idx[static_cast<std::size_t>(axis)] = 0;
                --axis;
            }
            if (axis < 0) break;
            ++idx[static_cast<std::size_t>(axis)];
        }
    }
}

/// Jacobiator {f,g,h} contracted from a precomputed tensor; visits only
/// the nonzero independent entries, which keeps bracket-identity sweeps
/// cheap for Jacobi bivectors (empty tensor) and sparse ones.
inline Polynomial jac3(const JacobiatorTensor& t, const Polynomial& f, const Polynomial& g,
                       const Polynomial& h) {
    int n = t.dim();
    Polynomial r(n);
    static const int perm[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
    for (const auto& [s, j] : t.independent_entries()) {
        std::array<std::array<Polynomial, 3>, 3> d{{
            {f.partial(s[0]), f.partial(s[1]), f.partial(s[2])},
            {g.partial(s[0]), g.partial(s[1]), g.partial(s[2])},
            {h.partial(s[0]), h.partial(s[1]), h.partial(s[2])},
        }};
        Polynomial det(n);
        for (int pi = 0; pi < 6; ++pi) {
            // argument perm[pi][a] differentiates along axis s[a]
            const Polynomial& a = d[static_cast<std::size_t>(perm[pi][0])][0];
            const Polynomial& b = d[static_cast<std::size_t>(perm[pi][1])][1];
            const Polynomial& c = d[static_cast<std::size_t>(perm[pi][2])][2];
            if (a.is_zero() || b.is_zero() || c.is_zero()) continue;
            Polynomial prod = a * b * c;
            if (pi < 3)
                det += prod;
            else
                det -= prod;
        }
        if (!det.is_zero()) r += j * det;
    }
    return r;
}

} // namespace detail

struct JacobiWitness {
    std::array<int, 3> indices; // 0-based axes (i, j, k)
    std::vector<Rational> point;
    Rational value;
};

struct JacobiVerdict {
    bool holds = true;
    std::optional<JacobiWitness> witness;
};

/// Jacobi identity: holds iff every component of the Jacobiator tensor is
/// the zero polynomial; on failure reports the first nonzero component and
/// a rational point where it does not vanish.
inline JacobiVerdict jacobi_check(const Bivector& p) {
    JacobiatorTensor t = jacobiator_tensor(p);
    for (const auto& [idx, poly] : t.independent_entries()) {
        std::vector<Rational> pt = detail::nonvanishing_point(poly);
        return {false, JacobiWitness{idx, pt, poly.eval(pt)}};
    }
    return {};
}

enum class BracketStatus { holds_on_certificate, fails };

struct BracketWitness {
    std::vector<Polynomial> arguments; // role order; see the check's doc
    Polynomial defect;
};

struct BracketVerdict {
    BracketStatus status = BracketStatus::holds_on_certificate;
    int certificate_degree = 0;
    std::optional<BracketWitness> witness;

    bool holds() const { return status == BracketStatus::holds_on_certificate; }
};

/// Certificate bound for the Malcev identity: the deepest argument path
/// crosses three bracket nodes (Jacobiator = two, one more nesting).
inline int malcev_certificate_bound() { return 3; }

/// Certificate bound for the Shestakov identities: arguments sit under a
/// Jacobiator (two bracket nodes); the pointwise product adds nothing.
inline int shestakov_certificate_bound() { return 2; }

/// Malcev identity {h,f,{h,g}} = {{h,f,g},h} on the monomial certificate.
///
/// Phase 1 sweeps monomial triples (h, f, g) of the diagonal form. Because
/// h appears twice, the diagonal alone is not a complete certificate, so a
/// clean phase 1 is followed by the h-polarized form on monomial pairs
/// h1 != h2; a cross violation is reported as the honest diagonal witness
/// (f, g, h1 + h2). Witness arguments are ordered (f, g, h).
inline BracketVerdict malcev_check(const Bivector& p, int degree_bound, int threads = 0) {
    if (degree_bound < malcev_certificate_bound())
        throw Error("degree bound below the Malcev certificate bound");
    int n = p.dim();
    JacobiatorTensor t = jacobiator_tensor(p);

    auto diag_defect = [&](const Polynomial& h, const Polynomial& f, const Polynomial& g) {
        return detail::jac3(t, h, f, p.bracket(h, g)) - p.bracket(detail::jac3(t, h, f, g), h);
    };

    std::vector<MultiIndex> exps = enumerate_multi_indices(n, degree_bound);
    std::vector<Polynomial> mono;
    mono.reserve(exps.size());
    for (const auto& m : exps) mono.push_back(Polynomial::monomial(n, m, 1));
    std::size_t count = mono.size();

    BracketVerdict v;
    v.certificate_degree = degree_bound;

    // phase 1: diagonal triples (h, f, g)
    {
        std::array<std::size_t, 3> sizes{count, count, count};
        auto make_pred = [&]() {
            return std::function<bool(std::span<const std::size_t>)>(
                [&](std::span<const std::size_t> tup) {
                    return !diag_defect(mono[tup[0]], mono[tup[1]], mono[tup[2]]).is_zero();
                });
        };
        auto hit = sweep_first_violation(sizes, make_pred, threads);
        if (hit) {
            const Polynomial &h = mono[(*hit)[0]], &f = mono[(*hit)[1]], &g = mono[(*hit)[2]];
            v.status = BracketStatus::fails;
            v.witness = BracketWitness{{f, g, h}, diag_defect(h, f, g)};
            return v;
        }
    }

    // phase 2: polarized in h over pairs h1 < h2
    {
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (std::size_t a = 0; a < count; ++a)
            for (std::size_t b = a + 1; b < count; ++b) pairs.emplace_back(a, b);
        std::array<std::size_t, 3> sizes{pairs.size(), count, count};
        auto cross_defect = [&](const Polynomial& h1, const Polynomial& h2, const Polynomial& f,
                                const Polynomial& g) {
            return detail::jac3(t, h1, f, p.bracket(h2, g)) +
                   detail::jac3(t, h2, f, p.bracket(h1, g)) -
                   p.bracket(detail::jac3(t, h1, f, g), h2) -
                   p.bracket(detail::jac3(t, h2, f, g), h1);
        };
        auto make_pred = [&]() {
            return std::function<bool(std::span<const std::size_t>)>(
                [&](std::span<const std::size_t> tup) {
                    const auto& [a, b] = pairs[tup[0]];
                    return !cross_defect(mono[a], mono[b], mono[tup[1]], mono[tup[2]]).is_zero();
                });
        };
        auto hit = sweep_first_violation(sizes, make_pred, threads);
        if (hit) {
            const auto& [a, b] = pairs[(*hit)[0]];
            Polynomial h = mono[a] + mono[b];
            const Polynomial &f = mono[(*hit)[1]], &g = mono[(*hit)[2]];
            v.status = BracketStatus::fails;
            v.witness = BracketWitness{{f, g, h}, diag_defect(h, f, g)};
            return v;
        }
    }
    return v;
}

struct ShestakovVerdict {
    BracketVerdict eq11; // {f,g,h} . {f,g} = 0, witness order (f, g, h)
    BracketVerdict eq12; // partial linearization, witness order (f, g, h, d)

    bool holds() const { return eq11.holds() && eq12.holds(); }
};

/// Shestakov identity {f,g,h} . {f,g} = 0 on monomial triples, together
/// with its partial linearization {f,g,h} . {f,d} + {f,d,h} . {f,g} = 0 on
/// monomial quadruples.
inline ShestakovVerdict shestakov_check(const Bivector& p, int degree_bound, int threads = 0) {
    if (degree_bound < shestakov_certificate_bound())
        throw Error("degree bound below the Shestakov certificate bound");
    int n = p.dim();
    JacobiatorTensor t = jacobiator_tensor(p);

    std::vector<MultiIndex> exps = enumerate_multi_indices(n, degree_bound);
    std::vector<Polynomial> mono;
    mono.reserve(exps.size());
    for (const auto& m : exps) mono.push_back(Polynomial::monomial(n, m, 1));
    std::size_t count = mono.size();

    ShestakovVerdict out;
    out.eq11.certificate_degree = degree_bound;
    out.eq12.certificate_degree = degree_bound;

    auto defect11 = [&](const Polynomial& f, const Polynomial& g, const Polynomial& h) {
        Polynomial jac = detail::jac3(t, f, g, h);
        if (jac.is_zero()) return jac;
        return jac * p.bracket(f, g);
    };
    {
        std::array<std::size_t, 3> sizes{count, count, count};
        auto make_pred = [&]() {
            return std::function<bool(std::span<const std::size_t>)>(
                [&](std::span<const std::size_t> tup) {
                    return !defect11(mono[tup[0]], mono[tup[1]], mono[tup[2]]).is_zero();
                });
        };
        auto hit = sweep_first_violation(sizes, make_pred, threads);
        if (hit) {
            const Polynomial &f = mono[(*hit)[0]], &g = mono[(*hit)[1]], &h = mono[(*hit)[2]];
            out.eq11.status = BracketStatus::fails;
            out.eq11.witness = BracketWitness{{f, g, h}, defect11(f, g, h)};
        }
    }

    auto defect12 = [&](const Polynomial& f, const Polynomial& g, const Polynomial& h,
                        const Polynomial& d) {
        return detail::jac3(t, f, g, h) * p.bracket(f, d) +
               detail::jac3(t, f, d, h) * p.bracket(f, g);
    };
    {
        std::array<std::size_t, 4> sizes{count, count, count, count};
        auto make_pred = [&]() {
            return std::function<bool(std::span<const std::size_t>)>(
                [&](std::span<const std::size_t> tup) {
                    return !defect12(mono[tup[0]], mono[tup[1]], mono[tup[2]], mono[tup[3]])
                                .is_zero();
                });
        };
        auto hit = sweep_first_violation(sizes, make_pred, threads);
        if (hit) {
            const Polynomial &f = mono[(*hit)[0]], &g = mono[(*hit)[1]], &h = mono[(*hit)[2]],
                             &d = mono[(*hit)[3]];
            out.eq12.status = BracketStatus::fails;
            out.eq12.witness = BracketWitness{{f, g, h, d}, defect12(f, g, h, d)};
        }
    }
    return out;
}

} // namespace naq
