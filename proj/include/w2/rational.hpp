#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace w2 {

// Arbitrary-precision exact scalars. All arithmetic in this library is exact;
// there is no floating point anywhere except explicitly labeled CLI plot columns.
using Int = mpz_class;
using Rat = mpq_class;

struct usage_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw usage_error("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat rat(const Int& num, const Int& den) {
    if (den == 0) throw usage_error("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

inline Int to_int(const Rat& r) {
    if (!is_integer(r)) throw internal_error("expected integral rational, got " + r.get_str());
    return r.get_num();
}

// Stored in lowest terms with positive denominator?  mpq arithmetic maintains
// this; the audit exists so that any future raw mpq manipulation gets caught.
inline bool is_canonical(const Rat& r) {
    if (r.get_den() <= 0) return false;
    Int g;
    mpz_gcd(g.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return g == 1;
}

// "num" or "num/den", always exact.
inline std::string rat_to_string(const Rat& r) {
    return is_integer(r) ? r.get_num().get_str() : r.get_str();
}

inline Rat rat_from_string(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0) throw usage_error("cannot parse rational: " + s);
    r.canonicalize();
    return r;
}

// binom(e, j) for arbitrary integer e (negative allowed), via the falling
// factorial e(e-1)...(e-j+1)/j!.
inline Int factorial(unsigned long n) {
    Int f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

inline Rat binomial(const Int& e, unsigned long j) {
    Int num = 1;
    for (unsigned long m = 0; m < j; ++m) num *= e - static_cast<long>(m);
    return rat(num, factorial(j));
}

inline int sign_of(const Rat& r) { return sgn(r); }

// log(1+|x|) rendered as a decimal for plotting; the one non-exact output of
// the project. Exact-range-safe for |x| far beyond double.
inline double log1p_abs(const Int& x) {
    Int a = abs(x);
    if (a == 0) return 0.0;
    a += 1;
    signed long exp2;
    double m = mpz_get_d_2exp(&exp2, a.get_mpz_t());
    return std::log(m) + static_cast<double>(exp2) * 0.6931471805599453;
}

}  // namespace w2
