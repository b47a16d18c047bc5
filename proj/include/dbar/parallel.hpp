#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

namespace dbar {

/// Calls fn(i) for i in [0, n) on up to `threads` workers. Work is handed out
/// in chunks through an atomic counter; fn must only write to slot i, so the
/// result never depends on the schedule. The first exception is rethrown.
template <class Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn, std::size_t chunk = 64) {
    const auto workers = static_cast<std::size_t>(std::max(1, threads));
    if (workers == 1 || n <= chunk) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto body = [&] {
        try {
            for (;;) {
                const std::size_t begin = next.fetch_add(chunk);
                if (begin >= n) return;
                const std::size_t end = std::min(n, begin + chunk);
                for (std::size_t i = begin; i < end; ++i) fn(i);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!error) error = std::current_exception();
            next.store(n);
        }
    };
    std::vector<std::thread> pool;
    const std::size_t spawn = std::min(workers, (n + chunk - 1) / chunk);
    for (std::size_t t = 1; t < spawn; ++t) pool.emplace_back(body);
    body();
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

/// Pairwise (cascade) summation in a fixed order.
template <class T>
T pairwise_sum(std::span<const T> v) {
    if (v.empty()) return T{};
    if (v.size() <= 8) {
        T acc = v[0];
        for (std::size_t i = 1; i < v.size(); ++i) acc += v[i];
        return acc;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

template <class T>
T pairwise_sum(const std::vector<T>& v) {
    return pairwise_sum(std::span<const T>(v));
}

/// Σ_{i<n} term(i) with a result independent of the thread count: fixed
/// blocks are summed in parallel, then the block sums are combined pairwise.
template <class T, class Fn>
T deterministic_sum(std::size_t n, int threads, Fn&& term, std::size_t block = 4096) {
    const std::size_t blocks = (n + block - 1) / block;
    std::vector<T> partial(blocks, T{});
    parallel_for(blocks, threads, [&](std::size_t b) {
        std::vector<T> local;
        const std::size_t begin = b * block;
        const std::size_t end = std::min(n, begin + block);
        local.reserve(end - begin);
        for (std::size_t i = begin; i < end; ++i) local.push_back(term(i));
        partial[b] = pairwise_sum(local);
    }, 1);
    return pairwise_sum(partial);
}

/// max that propagates NaN.
inline double nan_max(double a, double b) {
    if (std::isnan(a) || std::isnan(b)) return std::nan("");
    return std::max(a, b);
}

/// max_{i<n} value(i), thread-count independent; NaN if any value is NaN.
template <class Fn>
double deterministic_max(std::size_t n, int threads, Fn&& value, std::size_t block = 4096) {
    const std::size_t blocks = (n + block - 1) / block;
    std::vector<double> partial(blocks, 0.0);
    parallel_for(blocks, threads, [&](std::size_t b) {
        double m = 0.0;
        const std::size_t end = std::min(n, (b + 1) * block);
        for (std::size_t i = b * block; i < end; ++i) m = nan_max(m, value(i));
        partial[b] = m;
    }, 1);
    double m = 0.0;
    for (double p : partial) m = nan_max(m, p);
    return m;
}

}  // namespace dbar
