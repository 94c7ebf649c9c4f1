#pragma once

#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>

#include "w2/plaurent.hpp"
#include "w2/rational.hpp"
#include "w2/sympoly.hpp"

namespace w2 {

// Grading variable of a series. Mixing tags in arithmetic is a usage error.
enum class Var { hbar, u, x };

inline const char* var_name(Var v) {
    switch (v) {
        case Var::hbar: return "h";
        case Var::u: return "u";
        case Var::x: return "x";
    }
    return "?";
}

template <class C>
struct coeff_ops;

template <>
struct coeff_ops<Rat> {
    static Rat make(const Rat& r, int) { return r; }
    static bool is_zero(const Rat& c) { return c == 0; }
    static Rat mul(const Rat& a, const Rat& b, int) { return a * b; }
    static Rat truncated(const Rat& c, int) { return c; }
    static Rat constant_part(const Rat& c) { return c; }
};

template <>
struct coeff_ops<SymPoly> {
    static SymPoly make(const Rat& r, int cap) { return SymPoly::constant(r, cap); }
    static bool is_zero(const SymPoly& c) { return c.is_zero(); }
    static SymPoly mul(const SymPoly& a, const SymPoly& b, int cap) {
        return (a * b).truncated(cap);
    }
    static SymPoly truncated(const SymPoly& c, int cap) { return c.truncated(cap); }
    static Rat constant_part(const SymPoly& c) { return c.constant_part(); }
};

template <>
struct coeff_ops<PLaurent> {
    static PLaurent make(const Rat& r, int) { return PLaurent::constant(r); }
    static bool is_zero(const PLaurent& c) { return c.is_zero(); }
    static PLaurent mul(const PLaurent& a, const PLaurent& b, int) { return a * b; }
    static PLaurent truncated(const PLaurent& c, int) { return c; }
    static Rat constant_part(const PLaurent& c) { return c.coeff(LMono{}); }
};

// Truncated series over a coefficient ring C, graded by an integer exponent t
// of the grading variable (Laurent exponents allowed) and a nilpotent marker
// w with w^3 = 0 (exponent k <= 2, enforced structurally).
//
// Representation contract: the stored terms equal the true series for every
// t <= ceiling() (and coefficient weight <= weight_cap()); nothing is claimed
// about larger t. In particular an absent key at t <= ceiling() means the
// true coefficient there is zero, so min-stored-t is a hard valuation bound.
// Multiplication propagates ceilings honestly:
//     ceil(a*b) = min(ceil(a) + val(b), ceil(b) + val(a)),
// which is what makes Laurent-window arithmetic auditable: a computation that
// dipped too low simply ends with a ceiling too small for the caller, and the
// final bound check fails loudly instead of silently dropping terms.
template <class C>
class GradedSeries {
public:
    using Ops = coeff_ops<C>;
    using Key = std::pair<int, int>;  // (t, k)

    GradedSeries(Var tag, int ceiling, int weight_cap = kNoWeightCap)
        : tag_(tag), ceil_(ceiling), wcap_(weight_cap) {}

    static GradedSeries zero(Var tag, int ceiling, int wcap = kNoWeightCap) {
        return GradedSeries(tag, ceiling, wcap);
    }
    static GradedSeries one(Var tag, int ceiling, int wcap = kNoWeightCap) {
        GradedSeries s(tag, ceiling, wcap);
        s.add_term(0, 0, Ops::make(Rat(1), wcap));
        return s;
    }
    static GradedSeries constant(const Rat& r, Var tag, int ceiling, int wcap = kNoWeightCap) {
        GradedSeries s(tag, ceiling, wcap);
        s.add_term(0, 0, Ops::make(r, wcap));
        return s;
    }
    // c * t^e * w^k
    static GradedSeries term(const C& c, int e, int k, Var tag, int ceiling,
                             int wcap = kNoWeightCap) {
        GradedSeries s(tag, ceiling, wcap);
        s.add_term(e, k, Ops::truncated(c, wcap));
        return s;
    }

    Var tag() const { return tag_; }
    int ceiling() const { return ceil_; }
    int weight_cap() const { return wcap_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Key, C>& terms() const { return terms_; }

    // Hard lower bound on exponents of the true series (valuation floor).
    int valuation_floor() const {
        return terms_.empty() ? ceil_ + 1 : terms_.begin()->first.first;
    }

    C at(int t, int k) const {
        auto it = terms_.find({t, k});
        return it == terms_.end() ? Ops::make(Rat(0), wcap_) : it->second;
    }

    void add_term(int t, int k, const C& c) {
        if (k < 0) throw internal_error("negative w exponent");
        if (k > 2) return;  // w^3 = 0
        if (t > ceil_) return;
        C cc = Ops::truncated(c, wcap_);
        if (Ops::is_zero(cc)) return;
        auto [it, inserted] = terms_.try_emplace(Key{t, k}, cc);
        if (!inserted) {
            it->second += cc;
            if (Ops::is_zero(it->second)) terms_.erase(it);
        }
    }

    GradedSeries& operator+=(const GradedSeries& o) {
        check_tag(o);
        restrict_to(std::min(ceil_, o.ceil_), std::min(wcap_, o.wcap_));
        for (const auto& [key, c] : o.terms_) add_term(key.first, key.second, c);
        return *this;
    }
    GradedSeries& operator-=(const GradedSeries& o) { return *this += o.negated(); }
    GradedSeries operator+(const GradedSeries& o) const {
        GradedSeries r = *this;
        r += o;
        return r;
    }
    GradedSeries operator-(const GradedSeries& o) const {
        GradedSeries r = *this;
        r -= o;
        return r;
    }
    GradedSeries negated() const {
        GradedSeries r(tag_, ceil_, wcap_);
        for (const auto& [key, c] : terms_) r.terms_.emplace(key, -c);
        return r;
    }
    GradedSeries operator-() const { return negated(); }

    GradedSeries operator*(const GradedSeries& o) const {
        check_tag(o);
        int va = valuation_floor(), vb = o.valuation_floor();
        int ceiling = std::min(ceil_ + vb, o.ceil_ + va);
        GradedSeries r(tag_, ceiling, std::min(wcap_, o.wcap_));
        for (const auto& [ka, ca] : terms_) {
            if (ka.first + vb > ceiling) continue;
            for (const auto& [kb, cb] : o.terms_) {
                int t = ka.first + kb.first, k = ka.second + kb.second;
                if (t > ceiling || k > 2) continue;
                r.add_term(t, k, Ops::mul(ca, cb, r.wcap_));
            }
        }
        return r;
    }
    GradedSeries& operator*=(const GradedSeries& o) { return *this = *this * o; }

    GradedSeries scaled(const Rat& c) const {
        GradedSeries r(tag_, ceil_, wcap_);
        if (c == 0) return r;
        for (const auto& [key, v] : terms_) r.terms_.emplace(key, v * c);
        return r;
    }

    // Multiply by t^e * w^k. Shifting by e moves the exactness window too.
    GradedSeries shifted(int e, int k = 0) const {
        GradedSeries r(tag_, ceil_ + e, wcap_);
        for (const auto& [key, v] : terms_) {
            if (key.second + k > 2) continue;
            r.terms_.emplace(Key{key.first + e, key.second + k}, v);
        }
        return r;
    }

    // Tighten the window. Never widens (that would fabricate exactness).
    GradedSeries truncated(int ceiling, int wcap = kNoWeightCap) const {
        GradedSeries r(tag_, std::min(ceiling, ceil_), std::min(wcap, wcap_));
        for (const auto& [key, v] : terms_) {
            if (key.first > r.ceil_) continue;
            C cc = Ops::truncated(v, r.wcap_);
            if (!Ops::is_zero(cc)) r.terms_.emplace(key, cc);
        }
        return r;
    }

    GradedSeries retagged(Var tag) const {
        GradedSeries r = *this;
        r.tag_ = tag;
        return r;
    }

    // Coefficient of w^k, as a series in the grading variable alone.
    GradedSeries w_coefficient(int k) const {
        GradedSeries r(tag_, ceil_, wcap_);
        for (const auto& [key, v] : terms_)
            if (key.second == k) r.terms_.emplace(Key{key.first, 0}, v);
        return r;
    }

    bool has_terms_below(int t_min) const {
        return !terms_.empty() && terms_.begin()->first.first < t_min;
    }

    // exp(x) = sum x^m / m! for x with zero scalar term.
    GradedSeries exp1() const {
        require_no_scalar_term("exp1");
        GradedSeries acc = one(tag_, ceil_, wcap_);
        GradedSeries xp = *this;
        Rat mfac = 1;
        for (long m = 1; !xp.is_zero(); ++m) {
            if (m > iteration_cap()) throw internal_error("exp1 did not terminate");
            mfac *= m;
            acc += xp.scaled(Rat(1) / mfac);
            xp = (xp * *this).truncated(ceil_, wcap_);
        }
        return acc;
    }

    // log(1+x) = -sum (-x)^j / j for x with zero scalar term.
    GradedSeries log1p() const {
        require_no_scalar_term("log1p");
        GradedSeries acc = zero(tag_, ceil_, wcap_);
        GradedSeries xp = *this;
        for (long j = 1; !xp.is_zero(); ++j) {
            if (j > iteration_cap()) throw internal_error("log1p did not terminate");
            acc += xp.scaled(Rat(j % 2 == 1 ? 1 : -1) / Rat(j));
            xp = (xp * *this).truncated(ceil_, wcap_);
        }
        return acc;
    }

    // Inverse of a series whose scalar term is a nonzero rational.
    GradedSeries inverse() const {
        Rat s = Ops::constant_part(at(0, 0));
        if (s == 0 || valuation_floor() < 0)
            throw usage_error("inverse requires a unit scalar term and valuation >= 0");
        GradedSeries d = (*this - constant(s, tag_, ceil_, wcap_)).scaled(Rat(1) / s);
        GradedSeries acc = one(tag_, ceil_, wcap_);
        GradedSeries xp = d;
        for (long m = 1; !xp.is_zero(); ++m) {
            if (m > iteration_cap()) throw internal_error("inverse did not terminate");
            acc += xp.scaled(Rat(m % 2 == 1 ? -1 : 1));
            xp = (xp * d).truncated(ceil_, wcap_);
        }
        return acc.scaled(Rat(1) / s);
    }

    GradedSeries pow(int e) const {
        if (e < 0) return inverse().pow(-e);
        GradedSeries acc = one(tag_, ceil_, wcap_);
        for (int i = 0; i < e; ++i) acc = acc * *this;
        return acc;
    }

    bool same_content(const GradedSeries& o) const { return terms_ == o.terms_; }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [key, c] : terms_) {
            if (!first) os << "  +  ";
            first = false;
            os << "(" << coeff_to_string(c) << ")";
            if (key.first != 0) os << "*" << var_name(tag_) << "^" << key.first;
            if (key.second != 0) os << "*w^" << key.second;
        }
        return os.str();
    }

private:
    void check_tag(const GradedSeries& o) const {
        if (tag_ != o.tag_)
            throw usage_error(std::string("mismatched grading tags: ") + var_name(tag_) +
                              " vs " + var_name(o.tag_));
    }
    void restrict_to(int ceiling, int wcap) {
        if (ceiling >= ceil_ && wcap >= wcap_) return;  // never widen
        *this = truncated(ceiling, wcap);
    }
    void require_no_scalar_term(const char* who) const {
        if (valuation_floor() < 0)
            throw usage_error(std::string(who) + " requires valuation >= 0");
        if (Ops::constant_part(at(0, 0)) != 0)
            throw usage_error(std::string(who) + " requires zero constant term");
    }
    long iteration_cap() const {
        long w = wcap_ == kNoWeightCap ? 128 : wcap_;
        return static_cast<long>(ceil_) + w + 8;
    }
    static std::string coeff_to_string(const Rat& c) { return rat_to_string(c); }
    static std::string coeff_to_string(const SymPoly& c) { return c.to_string(); }
    static std::string coeff_to_string(const PLaurent& c) {
        std::ostringstream os;
        bool first = true;
        for (const auto& [m, r] : c.terms()) {
            if (!first) os << " + ";
            first = false;
            os << rat_to_string(r) << "*" << m.to_string();
        }
        return first ? "0" : os.str();
    }

    Var tag_;
    int ceil_;
    int wcap_;
    std::map<Key, C> terms_;
};

using MSeries = GradedSeries<SymPoly>;
using ScalarSeries = GradedSeries<Rat>;
using LaurentSeries = GradedSeries<PLaurent>;

// p_d as a grading-variable-free series term.
inline MSeries p_series(int d, Var tag, int ceiling, int wcap) {
    return MSeries::term(SymPoly::p(d, wcap), 0, 0, tag, ceiling, wcap);
}

// Per-variable monomial substitution p_d -> scalar_d * t^{shift_d} * p_{target_d},
// applied multiplicatively over monomials. Weight caps are respected through
// the rewritten variables; the exactness ceiling drops by the worst possible
// downward t-shift a monomial of admissible weight can realize.
struct MonomialRule {
    // Returns (target variable, t-shift, scalar) for p_d.
    std::function<std::tuple<int, int, Rat>(int)> map;
};

inline MSeries substitute_monomial(const MSeries& x, const MonomialRule& rule,
                                   std::optional<int> min_t = std::nullopt) {
    int wcap = x.weight_cap();
    if (wcap == kNoWeightCap) throw usage_error("monomial substitution needs a finite weight cap");
    int worst = 0;
    for (int d = 1; d <= wcap; ++d) {
        auto [target, shift, scalar] = rule.map(d);
        (void)target;
        (void)scalar;
        if (shift < 0) worst = std::min(worst, shift * (wcap / d));
    }
    MSeries r(x.tag(), x.ceiling() + worst, wcap);
    for (const auto& [key, poly] : x.terms()) {
        for (const auto& [mono, c] : poly.terms()) {
            PMono target_mono;
            int t = key.first;
            Rat scale = c;
            for (const auto& [d, e] : mono.factors()) {
                auto [target, shift, scalar] = rule.map(d);
                target_mono = target_mono * PMono::var(target, e);
                t += shift * e;
                for (int i = 0; i < e; ++i) scale *= scalar;
            }
            if (scale == 0) continue;
            if (min_t && t < *min_t && scale != 0)
                throw usage_error("substitution produced exponent below declared floor");
            SymPoly term(wcap);
            term.add_term(target_mono, scale);
            r.add_term(t, key.second, term);
        }
    }
    return r;
}

// Simultaneous substitution p_d -> replacement series. Replacements must be
// genuine power series in the grading variable (valuation >= 0).
inline MSeries substitute_series(const MSeries& x,
                                 const std::function<MSeries(int)>& rule) {
    int wcap = x.weight_cap();
    if (wcap == kNoWeightCap) throw usage_error("series substitution needs a finite weight cap");
    std::map<int, MSeries> repl;
    std::map<std::pair<int, int>, MSeries> powers;
    auto repl_of = [&](int d) -> const MSeries& {
        auto it = repl.find(d);
        if (it == repl.end()) {
            MSeries r = rule(d);
            if (r.valuation_floor() < 0)
                throw usage_error("substitution replacement has negative valuation");
            it = repl.emplace(d, r.truncated(x.ceiling(), wcap)).first;
        }
        return it->second;
    };
    std::function<const MSeries&(int, int)> power_of = [&](int d, int e) -> const MSeries& {
        auto it = powers.find({d, e});
        if (it == powers.end()) {
            MSeries p = e == 1 ? repl_of(d) : power_of(d, e - 1) * repl_of(d);
            it = powers.emplace(std::pair<int, int>{d, e}, std::move(p)).first;
        }
        return it->second;
    };
    MSeries acc(x.tag(), x.ceiling(), wcap);
    for (const auto& [key, poly] : x.terms()) {
        for (const auto& [mono, c] : poly.terms()) {
            MSeries term = MSeries::constant(c, x.tag(), x.ceiling(), wcap).shifted(key.first, key.second);
            for (const auto& [d, e] : mono.factors()) term *= power_of(d, e);
            acc += term;
        }
    }
    return acc;
}

// t -> n*t (used by plethysm in the presence of a grading variable). Odd
// residues modulo n are exactly zero in the image, so the window extends.
template <class C>
GradedSeries<C> grading_power(const GradedSeries<C>& x, int n) {
    if (n < 1) throw usage_error("grading_power needs n >= 1");
    GradedSeries<C> r(x.tag(), x.ceiling() * n + (n - 1), x.weight_cap());
    for (const auto& [key, c] : x.terms()) r.add_term(key.first * n, key.second, c);
    return r;
}

// First cell where two series differ within the common exactness window;
// used by oracle comparisons to report precise mismatches.
inline std::optional<std::string> first_difference(const MSeries& a, const MSeries& b) {
    int hi = std::min(a.ceiling(), b.ceiling());
    int wcap = std::min(a.weight_cap(), b.weight_cap());
    for (int t = std::min(a.valuation_floor(), b.valuation_floor()); t <= hi; ++t) {
        for (int k = 0; k <= 2; ++k) {
            SymPoly da = a.at(t, k).truncated(wcap);
            SymPoly db = b.at(t, k).truncated(wcap);
            if (da == db) continue;
            SymPoly diff = da - db;
            const auto& [mono, c] = *diff.terms().begin();
            std::ostringstream os;
            os << "differs at t=" << t << (k ? " w^" + std::to_string(k) : "")
               << " monomial " << mono.to_string() << ": " << rat_to_string(da.coeff(mono))
               << " vs " << rat_to_string(db.coeff(mono));
            return os.str();
        }
    }
    return std::nullopt;
}

}  // namespace w2
