#pragma once

#include <algorithm>
#include <mutex>
#include <vector>

#include "w2/rational.hpp"

namespace w2 {

// Moebius function by trial factorization; arguments here stay tiny.
inline int moebius(long n) {
    if (n < 1) throw usage_error("moebius requires a positive argument");
    int mu = 1;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            mu = -mu;
        }
    }
    if (n > 1) mu = -mu;
    return mu;
}

inline std::vector<long> divisors(long n) {
    if (n < 1) throw usage_error("divisors of a non-positive number");
    std::vector<long> ds;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            ds.push_back(d);
            if (d != n / d) ds.push_back(n / d);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

// Bernoulli numbers in the B_1 = -1/2 convention, so that the digamma
// asymptotic series psi_0(z) ~ -1/(2z) - ... comes out with the classical
// signs. Computed by sum_{k<=n} binom(n+1,k) B_k = 0 and memoized; the memo
// is mutex-guarded because series blocks may be evaluated in parallel.
inline Rat bernoulli(unsigned long j) {
    static std::vector<Rat> cache{Rat(1)};
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    while (cache.size() <= j) {
        unsigned long n = cache.size();
        Rat acc = 0;
        for (unsigned long k = 0; k < n; ++k)
            acc += binomial(Int(static_cast<long>(n + 1)), k) * cache[k];
        cache.push_back(-acc / Rat(Int(static_cast<long>(n + 1))));
    }
    return cache[j];
}

}  // namespace w2
