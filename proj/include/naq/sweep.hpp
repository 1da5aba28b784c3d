#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <optional>
#include <span>
#include <thread>
#include <vector>

#include "naq/error.hpp"

namespace naq {

/// Worker count for certificate sweeps: an explicit request, else the
/// NAQ_THREADS environment variable, else (and for NAQ_THREADS=0) the
/// hardware concurrency.
inline int sweep_thread_count(int requested = 0) {
    int n = requested;
    if (n <= 0) {
        if (const char* env = std::getenv("NAQ_THREADS")) n = std::atoi(env);
    }
    if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
    if (n <= 0) n = 1;
    return n;
}

namespace detail {

inline void decode_tuple(std::uint64_t flat, std::span<const std::size_t> sizes,
                         std::span<std::size_t> out) {
    for (std::size_t i = sizes.size(); i-- > 0;) {
        out[i] = static_cast<std::size_t>(flat % sizes[i]);
        flat /= sizes[i];
    }
}

} // namespace detail

/// Scans the odometer over per-slot index spaces (last slot fastest) and
/// returns the first tuple on which the predicate reports a violation.
///
/// The result is the schedule-independent minimum: workers claim
/// fixed-size blocks in order and stop claiming past the best violation
/// found, so the returned tuple is the same as a serial scan would give.
///
/// `make_pred` builds one predicate per worker; predicates may keep
/// per-worker caches.
inline std::optional<std::vector<std::size_t>> sweep_first_violation(
    std::span<const std::size_t> sizes,
    const std::function<std::function<bool(std::span<const std::size_t>)>()>& make_pred,
    int threads = 0) {
    std::uint64_t total = 1;
    for (std::size_t s : sizes) {
        if (s == 0) return std::nullopt;
        total *= s;
    }

    int workers = sweep_thread_count(threads);
    constexpr std::uint64_t kBlock = 256;

    std::atomic<std::uint64_t> next_block{0};
    std::atomic<std::uint64_t> best{UINT64_MAX};

    auto run = [&](std::function<bool(std::span<const std::size_t>)> pred) {
        std::vector<std::size_t> tuple(sizes.size());
        for (;;) {
            std::uint64_t block = next_block.fetch_add(1);
            std::uint64_t lo = block * kBlock;
            if (lo >= total || lo > best.load()) return;
            std::uint64_t hi = std::min(total, lo + kBlock);
            for (std::uint64_t i = lo; i < hi; ++i) {
                detail::decode_tuple(i, sizes, tuple);
                if (pred(tuple)) {
                    std::uint64_t cur = best.load();
                    while (i < cur && !best.compare_exchange_weak(cur, i)) {}
                    return;
                }
            }
        }
    };

    if (workers == 1 || total <= kBlock) {
        run(make_pred());
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back([&] { run(make_pred()); });
        for (auto& t : pool) t.join();
    }

    std::uint64_t found = best.load();
    if (found == UINT64_MAX) return std::nullopt;
    std::vector<std::size_t> tuple(sizes.size());
    detail::decode_tuple(found, sizes, tuple);
    return tuple;
}

} // namespace naq
