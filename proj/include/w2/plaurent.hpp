#pragma once

#include <compare>
#include <initializer_list>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "w2/rational.hpp"
#include "w2/sympoly.hpp"

namespace w2 {

// Monomial prod P_d^{e_d} in the inhomogeneous power sums P_d = 1 + p_d,
// with integer exponents of either sign. P_d has degree d, so the degree of
// a monomial may be negative.
class LMono {
public:
    LMono() = default;
    LMono(std::initializer_list<std::pair<int, int>> factors) {
        for (const auto& [d, e] : factors) set(d, e);
    }

    static LMono var(int d, int e) {
        LMono m;
        m.set(d, e);
        return m;
    }

    void set(int d, int e) {
        if (d < 1) throw usage_error("P index must be >= 1");
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

    int degree() const {
        int deg = 0;
        for (const auto& [d, e] : f_) deg += d * e;
        return deg;
    }

    bool empty() const { return f_.empty(); }
    const std::vector<std::pair<int, int>>& factors() const { return f_; }

    LMono operator*(const LMono& o) const {
        LMono r;
        auto a = f_.begin(), b = o.f_.begin();
        while (a != f_.end() || b != o.f_.end()) {
            if (b == o.f_.end() || (a != f_.end() && a->first < b->first)) r.f_.push_back(*a++);
            else if (a == f_.end() || a->first > b->first) r.f_.push_back(*b++);
            else {
                int e = a->second + b->second;
                if (e != 0) r.f_.push_back({a->first, e});
                ++a, ++b;
            }
        }
        return r;
    }

    LMono inverse() const {
        LMono r = *this;
        for (auto& [d, e] : r.f_) e = -e;
        return r;
    }

    auto operator<=>(const LMono&) const = default;

    // "P1^2*P2^-1" style rendering.
    std::string to_string() const {
        if (f_.empty()) return "1";
        std::ostringstream os;
        bool first = true;
        for (const auto& [d, e] : f_) {
            if (!first) os << "*";
            first = false;
            os << "P" << d;
            if (e != 1) os << "^" << e;
        }
        return os.str();
    }

private:
    std::vector<std::pair<int, int>> f_;
};

// Exact Laurent polynomial in the P_d's. Never truncated: the finitely many
// monomials are carried exactly, expansion into p-variables happens only on
// demand.
class PLaurent {
public:
    PLaurent() = default;

    static PLaurent constant(const Rat& c) {
        PLaurent f;
        f.add_term(LMono{}, c);
        return f;
    }
    static PLaurent monomial(const LMono& m, const Rat& c = Rat(1)) {
        PLaurent f;
        f.add_term(m, c);
        return f;
    }

    bool is_zero() const { return terms_.empty(); }
    const std::map<LMono, Rat>& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    Rat coeff(const LMono& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rat(0) : it->second;
    }

    void add_term(const LMono& m, const Rat& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    PLaurent& operator+=(const PLaurent& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    PLaurent& operator-=(const PLaurent& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    PLaurent operator+(const PLaurent& o) const {
        PLaurent r = *this;
        r += o;
        return r;
    }
    PLaurent operator-(const PLaurent& o) const {
        PLaurent r = *this;
        r -= o;
        return r;
    }
    PLaurent operator-() const {
        PLaurent r;
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }
    PLaurent operator*(const PLaurent& o) const {
        PLaurent r;
        for (const auto& [ma, ca] : terms_)
            for (const auto& [mb, cb] : o.terms_) r.add_term(ma * mb, ca * cb);
        return r;
    }
    PLaurent& operator*=(const PLaurent& o) { return *this = *this * o; }
    PLaurent& operator*=(const Rat& c) {
        if (c == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, v] : terms_) v *= c;
        return *this;
    }
    PLaurent operator*(const Rat& c) const {
        PLaurent r = *this;
        r *= c;
        return r;
    }

    bool operator==(const PLaurent& o) const { return terms_ == o.terms_; }

    // Evaluate with every P_d set to the same rational value (P_d = 1 gives
    // the n = 0 specialization).
    Rat eval_all(const Rat& v) const {
        Rat acc = 0;
        for (const auto& [m, c] : terms_) {
            Rat t = c;
            for (const auto& [d, e] : m.factors()) {
                if (e >= 0)
                    for (int i = 0; i < e; ++i) t *= v;
                else {
                    if (v == 0) throw usage_error("evaluating P^negative at 0");
                    for (int i = 0; i < -e; ++i) t /= v;
                }
            }
            acc += t;
        }
        return acc;
    }

    // Expansion into p-variables at the given weight cap: each P_d^e becomes
    // sum_j binom(e, j) p_d^j, with integer (possibly negative) e.
    SymPoly expand(int weight_cap) const {
        SymPoly acc(weight_cap);
        for (const auto& [m, c] : terms_) {
            SymPoly t = SymPoly::constant(c, weight_cap);
            for (const auto& [d, e] : m.factors()) {
                SymPoly fac(weight_cap);
                for (int j = 0; j * d <= weight_cap; ++j) {
                    if (e >= 0 && j > e) break;
                    fac.add_term(PMono::var(d, j), binomial(Int(e), static_cast<unsigned long>(j)));
                }
                t *= fac;
            }
            acc += t;
        }
        return acc;
    }

private:
    std::map<LMono, Rat> terms_;
};

}  // namespace w2
