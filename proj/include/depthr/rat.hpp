#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace depthr {

using Rat = mpq_class;
using Int = mpz_class;

// Largest integer <= x.
inline Int floor_int(const Rat& x) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

inline Int ceil_int(const Rat& x) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

inline long floor_long(const Rat& x) { return floor_int(x).get_si(); }
inline long ceil_long(const Rat& x) { return ceil_int(x).get_si(); }

inline bool is_integer(const Rat& x) { return x.get_den() == 1; }

// Largest element of (1/m)Z that is <= x (resp. smallest >= x).
inline Rat floor_to_grid(const Rat& x, long m) {
    return Rat(floor_int(x * m)) / m;
}
inline Rat ceil_to_grid(const Rat& x, long m) {
    return Rat(ceil_int(x * m)) / m;
}

inline bool in_grid(const Rat& x, long m) { return is_integer(x * m); }

// "p/q" or "p" rendering used by every serialized rational.
inline std::string rat_str(const Rat& x) {
    std::ostringstream os;
    os << x.get_num();
    if (x.get_den() != 1) os << "/" << x.get_den();
    return os.str();
}

inline Rat parse_rat(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    r.canonicalize();
    return r;
}

using RatVec = std::vector<Rat>;

inline RatVec operator+(const RatVec& a, const RatVec& b) {
    RatVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}
inline RatVec operator-(const RatVec& a, const RatVec& b) {
    RatVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}
inline RatVec operator*(const Rat& c, const RatVec& v) {
    RatVec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
    return r;
}

inline Rat dot(const std::vector<long>& a, const RatVec& x) {
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * x[i];
    return s;
}

inline Rat dot(const RatVec& a, const RatVec& x) {
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * x[i];
    return s;
}

inline bool is_zero(const RatVec& v) {
    for (const auto& c : v)
        if (c != 0) return false;
    return true;
}

// p-adic valuation of a nonzero rational; huge sentinel for 0.
inline long padic_val(const Rat& x, long p) {
    if (x == 0) return LONG_MAX / 2;
    long v = 0;
    Int n = x.get_num(), d = x.get_den();
    Int pz(p), r;
    while (mpz_divisible_p(n.get_mpz_t(), pz.get_mpz_t())) {
        mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), pz.get_mpz_t());
        ++v;
    }
    while (mpz_divisible_p(d.get_mpz_t(), pz.get_mpz_t())) {
        mpz_divexact(d.get_mpz_t(), d.get_mpz_t(), pz.get_mpz_t());
        --v;
    }
    return v;
}

inline Int pow_int(long base, long e) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(e));
    return r;
}

// p^e for possibly negative e.
inline Rat pow_rat(long p, long e) {
    if (e >= 0) return Rat(pow_int(p, e));
    return Rat(1) / Rat(pow_int(p, -e));
}

}  // namespace depthr
