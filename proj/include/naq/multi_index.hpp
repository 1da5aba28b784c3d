#pragma once

#include <boost/container/small_vector.hpp>

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <vector>

#include "naq/error.hpp"

namespace naq {

/// Derivative multi-index: a fixed-length vector of non-negative exponents
/// whose length is the ambient dimension.
class MultiIndex {
public:
    explicit MultiIndex(int dim) : e_(static_cast<std::size_t>(dim), 0u) {
        if (dim < 1) throw Error("multi-index dimension must be >= 1");
    }
    MultiIndex(std::initializer_list<std::uint32_t> e) : e_(e) {
        if (e_.empty()) throw Error("multi-index dimension must be >= 1");
    }

    static MultiIndex unit(int dim, int axis) {
        MultiIndex m(dim);
        if (axis < 0 || axis >= dim) throw Error("axis out of range");
        m.e_[static_cast<std::size_t>(axis)] = 1;
        return m;
    }

    int dim() const { return static_cast<int>(e_.size()); }

    std::uint32_t operator[](int i) const { return e_[static_cast<std::size_t>(i)]; }
    std::uint32_t& operator[](int i) { return e_[static_cast<std::size_t>(i)]; }

    /// Total order |alpha|.
    int order() const {
        return static_cast<int>(std::accumulate(e_.begin(), e_.end(), 0u));
    }

    bool is_zero() const {
        return std::all_of(e_.begin(), e_.end(), [](std::uint32_t v) { return v == 0; });
    }

    /// True when every exponent dominates the other's (alpha >= beta componentwise).
    bool dominates(const MultiIndex& o) const {
        for (int i = 0; i < dim(); ++i)
            if (e_[static_cast<std::size_t>(i)] < o[i]) return false;
        return true;
    }

    friend MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
        MultiIndex r = a;
        for (int i = 0; i < a.dim(); ++i) r[i] += b[i];
        return r;
    }

    /// Componentwise difference; caller must ensure a dominates b.
    friend MultiIndex operator-(const MultiIndex& a, const MultiIndex& b) {
        MultiIndex r = a;
        for (int i = 0; i < a.dim(); ++i) r[i] -= b[i];
        return r;
    }

    friend bool operator==(const MultiIndex& a, const MultiIndex& b) { return a.e_ == b.e_; }
    friend bool operator!=(const MultiIndex& a, const MultiIndex& b) { return a.e_ != b.e_; }

    auto begin() const { return e_.begin(); }
    auto end() const { return e_.end(); }

private:
    boost::container::small_vector<std::uint32_t, 8> e_;
};

/// Graded order on multi-indices: total order ascending; within one order,
/// x1-major (so x1 precedes x2, x1^2 precedes x1*x2 precedes x2^2).
struct GrlexLess {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const {
        int da = a.order(), db = b.order();
        if (da != db) return da < db;
        return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
    }
};

/// All multi-indices of the given dimension with |alpha| <= max_order,
/// listed in ascending graded order.
inline std::vector<MultiIndex> enumerate_multi_indices(int dim, int max_order) {
    std::vector<MultiIndex> out;
    MultiIndex cur(dim);
    auto rec = [&](auto&& self, int axis, int remaining) -> void {
        if (axis == dim - 1) {
            cur[axis] = static_cast<std::uint32_t>(remaining);
            out.push_back(cur);
            return;
        }
        for (int v = remaining; v >= 0; --v) {
            cur[axis] = static_cast<std::uint32_t>(v);
            self(self, axis + 1, remaining - v);
        }
    };
    for (int d = 0; d <= max_order; ++d) rec(rec, 0, d);
    return out;
}

} // namespace naq
