#pragma once

#include <compare>
#include <initializer_list>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "w2/rational.hpp"

namespace w2 {

constexpr int kNoWeightCap = std::numeric_limits<int>::max();

// Monomial p_1^{e_1} p_2^{e_2} ... in the power sums, stored sparsely as
// (variable, exponent) pairs sorted by variable. The weight of p_d is d.
class PMono {
public:
    PMono() = default;
    PMono(std::initializer_list<std::pair<int, int>> factors) {
        for (const auto& [d, e] : factors) set(d, e);
    }

    static PMono var(int d, int e = 1) {
        PMono m;
        m.set(d, e);
        return m;
    }

    void set(int d, int e) {
        if (d < 1) throw usage_error("power sum index must be >= 1");
        if (e < 0) throw usage_error("negative exponent in PMono");
        for (auto it = f_.begin(); it != f_.end(); ++it) {
            if (it->first == d) {
                if (e == 0) f_.erase(it);
                else it->second = e;
                return;
            }
            if (it->first > d) {
                if (e != 0) f_.insert(it, {d, e});
                return;
            }
        }
        if (e != 0) f_.push_back({d, e});
    }

    int exponent(int d) const {
        for (const auto& [v, e] : f_)
            if (v == d) return e;
        return 0;
    }

    // Symmetric-function degree: sum of d * e_d.
    int weight() const {
        int w = 0;
        for (const auto& [d, e] : f_) w += d * e;
        return w;
    }

    // Number of variable factors counted with multiplicity (length of the
    // corresponding partition); governs signs under p -> -p.
    int factor_count() const {
        int c = 0;
        for (const auto& [d, e] : f_) c += e;
        return c;
    }

    bool empty() const { return f_.empty(); }
    const std::vector<std::pair<int, int>>& factors() const { return f_; }

    PMono operator*(const PMono& o) const {
        PMono r;
        auto a = f_.begin(), b = o.f_.begin();
        while (a != f_.end() || b != o.f_.end()) {
            if (b == o.f_.end() || (a != f_.end() && a->first < b->first)) r.f_.push_back(*a++);
            else if (a == f_.end() || a->first > b->first) r.f_.push_back(*b++);
            else {
                r.f_.push_back({a->first, a->second + b->second});
                ++a, ++b;
            }
        }
        return r;
    }

    auto operator<=>(const PMono&) const = default;

    std::string to_string() const {
        if (f_.empty()) return "1";
        std::ostringstream os;
        bool first = true;
        for (const auto& [d, e] : f_) {
            if (!first) os << "*";
            first = false;
            os << "p" << d;
            if (e != 1) os << "^" << e;
        }
        return os.str();
    }

private:
    std::vector<std::pair<int, int>> f_;
};

// Sparse polynomial in the power sums with exact rational coefficients,
// truncated by weight: no stored term has weight > weight_cap, and every
// write re-truncates.
class SymPoly {
public:
    explicit SymPoly(int weight_cap = kNoWeightCap) : cap_(weight_cap) {}

    static SymPoly constant(const Rat& c, int cap = kNoWeightCap) {
        SymPoly f(cap);
        f.add_term(PMono{}, c);
        return f;
    }
    static SymPoly p(int d, int cap = kNoWeightCap) {
        SymPoly f(cap);
        f.add_term(PMono::var(d), 1);
        return f;
    }

    int weight_cap() const { return cap_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<PMono, Rat>& terms() const { return terms_; }

    Rat coeff(const PMono& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rat(0) : it->second;
    }
    Rat constant_part() const { return coeff(PMono{}); }

    void add_term(const PMono& m, const Rat& c) {
        if (c == 0 || m.weight() > cap_) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    SymPoly& operator+=(const SymPoly& o) {
        lower_cap(o.cap_);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    SymPoly& operator-=(const SymPoly& o) {
        lower_cap(o.cap_);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    SymPoly operator+(const SymPoly& o) const {
        SymPoly r = *this;
        r += o;
        return r;
    }
    SymPoly operator-(const SymPoly& o) const {
        SymPoly r = *this;
        r -= o;
        return r;
    }
    SymPoly operator-() const {
        SymPoly r(cap_);
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }
    SymPoly operator*(const SymPoly& o) const {
        SymPoly r(std::min(cap_, o.cap_));
        for (const auto& [ma, ca] : terms_) {
            if (ma.weight() > r.cap_) continue;
            for (const auto& [mb, cb] : o.terms_) {
                if (ma.weight() + mb.weight() > r.cap_) continue;
                r.add_term(ma * mb, ca * cb);
            }
        }
        return r;
    }
    SymPoly& operator*=(const SymPoly& o) { return *this = *this * o; }
    SymPoly& operator*=(const Rat& c) {
        if (c == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, v] : terms_) v *= c;
        return *this;
    }
    SymPoly operator*(const Rat& c) const {
        SymPoly r = *this;
        r *= c;
        return r;
    }

    bool operator==(const SymPoly& o) const { return terms_ == o.terms_; }

    SymPoly truncated(int cap) const {
        SymPoly r(std::min(cap, cap_));
        for (const auto& [m, c] : terms_)
            if (m.weight() <= cap) r.terms_.emplace(m, c);
        return r;
    }

    // Terms of exactly the given weight.
    SymPoly weight_part(int w) const {
        SymPoly r(cap_);
        for (const auto& [m, c] : terms_)
            if (m.weight() == w) r.terms_.emplace(m, c);
        return r;
    }

    int max_weight() const {
        int w = 0;
        for (const auto& [m, c] : terms_) w = std::max(w, m.weight());
        return w;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            os << rat_to_string(c);
            if (!m.empty()) os << "*" << m.to_string();
        }
        return os.str();
    }

private:
    void lower_cap(int cap) {
        if (cap >= cap_) return;
        cap_ = cap;
        for (auto it = terms_.begin(); it != terms_.end();)
            it = it->first.weight() > cap_ ? terms_.erase(it) : std::next(it);
    }

    int cap_;
    std::map<PMono, Rat> terms_;
};

}  // namespace w2
