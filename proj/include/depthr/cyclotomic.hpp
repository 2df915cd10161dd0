#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "depthr/rat.hpp"

namespace depthr {

namespace detail {

// Coefficients of the N-th cyclotomic polynomial, computed once per N by
// dividing x^N - 1 by all Phi_d, d | N, d < N. Integer coefficients.
inline const std::vector<Int>& cyclotomic_poly(long N) {
    static std::map<long, std::vector<Int>> cache;
    auto it = cache.find(N);
    if (it != cache.end()) return it->second;
    // x^N - 1
    std::vector<Int> num(static_cast<size_t>(N) + 1, Int(0));
    num[0] = -1;
    num[static_cast<size_t>(N)] = 1;
    for (long d = 1; d < N; ++d) {
        if (N % d != 0) continue;
        const std::vector<Int>& phi_d = cyclotomic_poly(d);
        // exact polynomial division num /= phi_d
        std::vector<Int> quot(num.size() - phi_d.size() + 1, Int(0));
        std::vector<Int> rem = num;
        for (long k = static_cast<long>(quot.size()) - 1; k >= 0; --k) {
            Int c = rem[static_cast<size_t>(k) + phi_d.size() - 1];  // phi_d monic
            quot[static_cast<size_t>(k)] = c;
            if (c != 0)
                for (size_t j = 0; j < phi_d.size(); ++j)
                    rem[static_cast<size_t>(k) + j] -= c * phi_d[j];
        }
        num = quot;
    }
    return cache.emplace(N, std::move(num)).first->second;
}

}  // namespace detail

// An element of the cyclotomic field Q(zeta_N), stored as a rational
// coefficient vector in the power basis 1, z, ..., z^{phi(N)-1} modulo
// Phi_N. Mixed-conductor arithmetic lifts both operands to the lcm.
class Cyc {
public:
    Cyc() : n_(1), c_(1, Rat(0)) {}
    /*implicit*/ Cyc(const Rat& r) : n_(1), c_(1, r) {}
    /*implicit*/ Cyc(long r) : n_(1), c_(1, Rat(r)) {}
    /*implicit*/ Cyc(const Int& r) : n_(1), c_(1, Rat(r)) {}

    static Cyc zeta(long N, long power = 1) {
        Cyc z;
        z.n_ = N;
        z.c_.assign(deg(N), Rat(0));
        z.add_power_term(power, Rat(1));
        return z;
    }

    long conductor() const { return n_; }
    const std::vector<Rat>& coeffs() const { return c_; }

    bool is_zero() const {
        for (const auto& x : c_)
            if (x != 0) return false;
        return true;
    }
    bool is_rational() const {
        for (size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }
    Rat rational_part() const {
        if (!is_rational()) throw std::domain_error("Cyc: not rational");
        return c_[0];
    }

    friend Cyc operator+(const Cyc& a, const Cyc& b) {
        auto [x, y] = lift_pair(a, b);
        for (size_t i = 0; i < x.c_.size(); ++i) x.c_[i] += y.c_[i];
        return x;
    }
    friend Cyc operator-(const Cyc& a, const Cyc& b) {
        auto [x, y] = lift_pair(a, b);
        for (size_t i = 0; i < x.c_.size(); ++i) x.c_[i] -= y.c_[i];
        return x;
    }
    Cyc operator-() const {
        Cyc r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    friend Cyc operator*(const Cyc& a, const Cyc& b) {
        auto [x, y] = lift_pair(a, b);
        long N = x.n_;
        size_t d = deg(N);
        std::vector<Rat> prod(2 * d, Rat(0));
        for (size_t i = 0; i < d; ++i) {
            if (x.c_[i] == 0) continue;
            for (size_t j = 0; j < d; ++j) {
                if (y.c_[j] == 0) continue;
                prod[i + j] += x.c_[i] * y.c_[j];
            }
        }
        reduce_mod_phi(prod, N);
        Cyc r;
        r.n_ = N;
        r.c_.assign(prod.begin(), prod.begin() + static_cast<long>(d));
        return r;
    }
    Cyc& operator+=(const Cyc& o) { return *this = *this + o; }
    Cyc& operator-=(const Cyc& o) { return *this = *this - o; }
    Cyc& operator*=(const Cyc& o) { return *this = *this * o; }

    // Division by a nonzero rational; general inverses are not needed.
    Cyc operator/(const Rat& r) const {
        if (r == 0) throw std::domain_error("Cyc: division by zero");
        Cyc x = *this;
        for (auto& v : x.c_) v /= r;
        return x;
    }

    friend bool operator==(const Cyc& a, const Cyc& b) { return (a - b).is_zero(); }
    friend bool operator!=(const Cyc& a, const Cyc& b) { return !(a == b); }

    // Galois map zeta -> zeta^k, gcd(k, N) = 1. k = -1 is complex conjugation.
    Cyc galois(long k) const {
        long kk = ((k % n_) + n_) % n_;
        if (std::gcd(kk, n_) != 1) throw std::invalid_argument("Cyc: galois exponent not coprime");
        Cyc r;
        r.n_ = n_;
        r.c_.assign(deg(n_), Rat(0));
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            r.add_power_term(static_cast<long>(i) * kk, c_[i]);
        }
        return r;
    }
    Cyc conj() const { return galois(-1); }

    std::string str() const {
        std::ostringstream os;
        os << "cyc(" << n_ << ";";
        for (size_t i = 0; i < c_.size(); ++i) {
            if (i) os << ",";
            os << rat_str(c_[i]);
        }
        os << ")";
        return os.str();
    }

private:
    long n_;
    std::vector<Rat> c_;

    static size_t deg(long N) {
        return detail::cyclotomic_poly(N).size() - 1;
    }

    // this += q * zeta^power (power arbitrary, reduced mod Phi_N).
    void add_power_term(long power, const Rat& q) {
        long pw = ((power % n_) + n_) % n_;
        size_t d = deg(n_);
        if (static_cast<size_t>(pw) < d) {
            c_[static_cast<size_t>(pw)] += q;
            return;
        }
        std::vector<Rat> tmp(static_cast<size_t>(pw) + 1, Rat(0));
        tmp[static_cast<size_t>(pw)] = q;
        reduce_mod_phi(tmp, n_);
        for (size_t i = 0; i < d; ++i) c_[i] += tmp[i];
    }

    static void reduce_mod_phi(std::vector<Rat>& v, long N) {
        const std::vector<Int>& phi = detail::cyclotomic_poly(N);
        size_t d = phi.size() - 1;
        for (long k = static_cast<long>(v.size()) - 1; k >= static_cast<long>(d); --k) {
            Rat c = v[static_cast<size_t>(k)];
            if (c == 0) continue;
            v[static_cast<size_t>(k)] = 0;
            for (size_t j = 0; j < d; ++j)
                v[static_cast<size_t>(k) - d + j] -= c * Rat(phi[j]);
        }
        v.resize(std::max(v.size(), d));
    }

    // Lift to Q(zeta_M): zeta_N -> zeta_M^{M/N}.
    Cyc lift(long M) const {
        if (M == n_) return *this;
        if (M % n_ != 0) throw std::logic_error("Cyc: bad lift");
        Cyc r;
        r.n_ = M;
        r.c_.assign(deg(M), Rat(0));
        long step = M / n_;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            r.add_power_term(static_cast<long>(i) * step, c_[i]);
        }
        return r;
    }

    static std::pair<Cyc, Cyc> lift_pair(const Cyc& a, const Cyc& b) {
        long M = std::lcm(a.n_, b.n_);
        return {a.lift(M), b.lift(M)};
    }
};

inline Cyc operator*(const Rat& r, const Cyc& c) { return Cyc(r) * c; }

// zeta_p^k for the fixed additive character value.
inline Cyc zeta_p_power(long p, long k) { return Cyc::zeta(p, k); }

// The exact positive square root of q = p^f under zeta_N = e^{2 pi i / N}:
// built from the quadratic Gauss sum g = sum_x zeta_p^{x^2}, which equals
// sqrt(p) for p = 1 (4) and i*sqrt(p) for p = 3 (4); the latter case divides
// by i = zeta_4 inside Q(zeta_{4p}).
inline Cyc sqrt_q(long p, long f = 1) {
    Cyc g(0);
    for (long x = 0; x < p; ++x) g += Cyc::zeta(p, (x * x) % p);
    Cyc sp;
    if (p % 4 == 1) {
        sp = g;
    } else {
        sp = Cyc::zeta(4, 3) * g;  // -i * (i sqrt p)
    }
    if (f % 2 == 0) return Cyc(Rat(pow_int(p, f / 2)));
    return Rat(pow_int(p, (f - 1) / 2)) * sp;
}

// q^{k/2} as an exact cyclotomic scalar (k may be negative).
inline Cyc q_half_power(long p, long f, long k) {
    long q_whole = k / 2, rem = k % 2;  // k = 2*q_whole + rem, rem in {-1,0,1}
    Cyc r(pow_rat(p, q_whole * f));
    if (rem == 1) r = r * sqrt_q(p, f);
    if (rem == -1) r = r * (sqrt_q(p, f) / Rat(pow_int(p, f)));
    return r;
}

}  // namespace depthr
