#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

#include "eventpovm/kinematics.hpp"

namespace eventpovm {

// Neumaier-compensated accumulator.
struct CompensatedSum {
    Real sum = 0;
    Real comp = 0;

    void add(Real x) {
        const Real t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    Real value() const { return sum + comp; }
};

constexpr std::int64_t kReductionBlock = 8192;

namespace detail {

template <class Run>
void run_blocks(std::int64_t nblocks, int threads, Run&& run) {
    const int t = std::max(1, threads);
    if (t == 1 || nblocks <= 1) {
        run(std::int64_t{0}, nblocks);
        return;
    }
    std::vector<std::thread> pool;
    const std::int64_t chunk = (nblocks + t - 1) / t;
    for (int w = 0; w < t; ++w) {
        const std::int64_t b0 = w * chunk;
        const std::int64_t b1 = std::min(nblocks, b0 + chunk);
        if (b0 >= b1) break;
        pool.emplace_back([&run, b0, b1] { run(b0, b1); });
    }
    for (auto& th : pool) th.join();
}

}  // namespace detail

// Sum of term(i) over i in [0, n). The reduction tree is fixed: terms are
// Neumaier-accumulated per block of kReductionBlock consecutive indices and
// the block partials are combined in index order, so the result is bitwise
// independent of the thread count.
template <class F>
Real deterministic_sum(std::int64_t n, int threads, F&& term) {
    if (n <= 0) return 0;
    const std::int64_t nblocks = (n + kReductionBlock - 1) / kReductionBlock;
    std::vector<Real> partial(static_cast<std::size_t>(nblocks));
    detail::run_blocks(nblocks, threads, [&](std::int64_t b0, std::int64_t b1) {
        for (std::int64_t b = b0; b < b1; ++b) {
            CompensatedSum acc;
            const std::int64_t lo = b * kReductionBlock;
            const std::int64_t hi = std::min(n, lo + kReductionBlock);
            for (std::int64_t i = lo; i < hi; ++i) acc.add(term(i));
            partial[static_cast<std::size_t>(b)] = acc.value();
        }
    });
    CompensatedSum total;
    for (std::int64_t b = 0; b < nblocks; ++b)
        total.add(partial[static_cast<std::size_t>(b)]);
    return total.value();
}

template <class F>
Complex deterministic_sum_complex(std::int64_t n, int threads, F&& term) {
    if (n <= 0) return Complex(0, 0);
    const std::int64_t nblocks = (n + kReductionBlock - 1) / kReductionBlock;
    std::vector<Complex> partial(static_cast<std::size_t>(nblocks));
    detail::run_blocks(nblocks, threads, [&](std::int64_t b0, std::int64_t b1) {
        for (std::int64_t b = b0; b < b1; ++b) {
            CompensatedSum re, im;
            const std::int64_t lo = b * kReductionBlock;
            const std::int64_t hi = std::min(n, lo + kReductionBlock);
            for (std::int64_t i = lo; i < hi; ++i) {
                const Complex v = term(i);
                re.add(v.real());
                im.add(v.imag());
            }
            partial[static_cast<std::size_t>(b)] = Complex(re.value(), im.value());
        }
    });
    CompensatedSum re, im;
    for (std::int64_t b = 0; b < nblocks; ++b) {
        re.add(partial[static_cast<std::size_t>(b)].real());
        im.add(partial[static_cast<std::size_t>(b)].imag());
    }
    return Complex(re.value(), im.value());
}

// Runs body(i) for i in [0, n) with disjoint writes; no reduction involved.
template <class F>
void parallel_for(std::int64_t n, int threads, F&& body) {
    if (n <= 0) return;
    detail::run_blocks((n + kReductionBlock - 1) / kReductionBlock, threads,
                       [&](std::int64_t b0, std::int64_t b1) {
                           const std::int64_t lo = b0 * kReductionBlock;
                           const std::int64_t hi = std::min(n, b1 * kReductionBlock);
                           for (std::int64_t i = lo; i < hi; ++i) body(i);
                       });
}

}  // namespace eventpovm
