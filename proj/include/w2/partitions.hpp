#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "w2/rational.hpp"
#include "w2/sympoly.hpp"

namespace w2 {

// Weakly decreasing list of positive parts; the empty partition is allowed.
using Partition = std::vector<int>;

inline int partition_size(const Partition& p) { return std::accumulate(p.begin(), p.end(), 0); }

inline void check_partition(const Partition& p) {
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] < 1 || (i > 0 && p[i] > p[i - 1]))
            throw usage_error("parts must be positive and weakly decreasing");
    }
}

inline std::vector<Partition> partitions_of(int n) {
    if (n < 0) throw usage_error("partitions of a negative number");
    std::vector<Partition> out;
    Partition cur;
    std::function<void(int, int)> rec = [&](int rest, int max_part) {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        for (int part = std::min(rest, max_part); part >= 1; --part) {
            cur.push_back(part);
            rec(rest - part, part);
            cur.pop_back();
        }
    };
    rec(n, n);
    return out;
}

// Multi-index (i_1, i_2, ...) with i_k the number of k-cycles.
struct CycleType {
    std::vector<int> counts;  // counts[k-1] = i_k

    int size() const {
        int n = 0;
        for (std::size_t k = 0; k < counts.size(); ++k) n += static_cast<int>(k + 1) * counts[k];
        return n;
    }

    static CycleType from_partition(const Partition& p) {
        CycleType ct;
        for (int part : p) {
            if (static_cast<std::size_t>(part) > ct.counts.size()) ct.counts.resize(part, 0);
            ++ct.counts[part - 1];
        }
        return ct;
    }

    Partition to_partition() const {
        Partition p;
        for (int k = static_cast<int>(counts.size()); k >= 1; --k)
            for (int i = 0; i < counts[k - 1]; ++i) p.push_back(k);
        return p;
    }

    PMono monomial() const {
        PMono m;
        for (std::size_t k = 0; k < counts.size(); ++k)
            if (counts[k]) m.set(static_cast<int>(k + 1), counts[k]);
        return m;
    }
};

inline CycleType cycle_type_of(const std::vector<int>& perm) {
    std::vector<bool> seen(perm.size(), false);
    CycleType ct;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (std::size_t j = i; !seen[j]; j = perm[j]) {
            seen[j] = true;
            ++len;
        }
        if (static_cast<std::size_t>(len) > ct.counts.size()) ct.counts.resize(len, 0);
        ++ct.counts[len - 1];
    }
    return ct;
}

inline int permutation_sign(const std::vector<int>& perm) {
    std::vector<bool> seen(perm.size(), false);
    int sign = 1;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (std::size_t j = i; !seen[j]; j = perm[j]) {
            seen[j] = true;
            ++len;
        }
        if (len % 2 == 0) sign = -sign;
    }
    return sign;
}

// z_i = prod_k k^{i_k} i_k!, the centralizer order of a permutation of the
// given cycle type; also the normalizer in the power-sum inner product.
inline Int z_factor(const CycleType& ct) {
    Int z = 1;
    for (std::size_t k = 0; k < ct.counts.size(); ++k) {
        for (int i = 0; i < ct.counts[k]; ++i) z *= static_cast<long>(k + 1);
        z *= factorial(static_cast<unsigned long>(ct.counts[k]));
    }
    return z;
}

inline Int z_factor(const PMono& m) {
    Int z = 1;
    for (const auto& [d, e] : m.factors()) {
        for (int i = 0; i < e; ++i) z *= d;
        z *= factorial(static_cast<unsigned long>(e));
    }
    return z;
}

namespace detail {

using CharCache = std::map<std::pair<Partition, Partition>, Int>;

// Murnaghan-Nakayama via beta-sets: beta_i = lambda_i + (k-1-i). Removing a
// border strip of size s moves one bead from beta_i to beta_i - s; the strip
// height is the number of beads jumped over, contributing its sign.
inline Int mn_character(const Partition& lambda, const Partition& mu, CharCache& cache) {
    if (mu.empty()) return lambda.empty() ? 1 : 0;
    auto key = std::make_pair(lambda, mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;

    int strip = mu[0];
    Partition mu_rest(mu.begin() + 1, mu.end());
    int k = static_cast<int>(lambda.size());
    std::vector<int> beta(k);
    for (int i = 0; i < k; ++i) beta[i] = lambda[i] + (k - 1 - i);

    Int total = 0;
    for (int i = 0; i < k; ++i) {
        int target = beta[i] - strip;
        if (target < 0) continue;
        bool occupied = false;
        int height = 0;
        for (int j = 0; j < k; ++j) {
            if (j == i) continue;
            if (beta[j] == target) occupied = true;
            if (beta[j] > target && beta[j] < beta[i]) ++height;
        }
        if (occupied) continue;
        std::vector<int> nb = beta;
        nb[i] = target;
        std::sort(nb.begin(), nb.end(), std::greater<int>());
        Partition next;
        for (int j = 0; j < k; ++j) {
            int part = nb[j] - (k - 1 - j);
            if (part < 0) throw internal_error("beta-set bookkeeping failure");
            if (part > 0) next.push_back(part);
        }
        Int sub = mn_character(next, mu_rest, cache);
        total += (height % 2 == 0 ? sub : -sub);
    }
    cache.emplace(std::move(key), total);
    return total;
}

}  // namespace detail

// chi^lambda evaluated on the class of cycle type mu, with memoization.
// The memo is built under one lock so parallel callers share it safely.
inline Int character(const Partition& lambda, const Partition& mu) {
    if (partition_size(lambda) != partition_size(mu))
        throw usage_error("character of mismatched sizes");
    static detail::CharCache cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    return detail::mn_character(lambda, mu, cache);
}

inline Int dimension(const Partition& lambda) {
    return character(lambda, Partition(partition_size(lambda), 1));
}

inline std::string partition_to_string(const Partition& p) {
    std::ostringstream os;
    for (int part : p) os << part;
    return os.str();
}

}  // namespace w2
