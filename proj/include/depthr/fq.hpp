#pragma once

#include <algorithm>
#include <cassert>
#include <map>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "depthr/cyclotomic.hpp"
#include "depthr/rat.hpp"

namespace depthr {

// Arithmetic in F_{q^d}, q = p^f, realized over the prime field: level d is
// F_p[x]/(g_{fd}) with g_n the least irreducible monic polynomial of degree n
// (coefficient vectors read as base-p digits, constant term least
// significant). All levels of one tower share the prime p.
class FieldTower;

class Fq {
public:
    Fq() : tower_(nullptr), level_(1) {}
    Fq(const FieldTower* t, long level, std::vector<long> coeffs)
        : tower_(t), level_(level), c_(std::move(coeffs)) {}

    const FieldTower* tower() const { return tower_; }
    long level() const { return level_; }
    const std::vector<long>& coeffs() const { return c_; }

    bool is_zero() const {
        return std::all_of(c_.begin(), c_.end(), [](long x) { return x == 0; });
    }

    friend Fq operator+(const Fq& a, const Fq& b);
    friend Fq operator-(const Fq& a, const Fq& b);
    friend Fq operator*(const Fq& a, const Fq& b);
    Fq operator-() const;
    friend bool operator==(const Fq& a, const Fq& b) { return a.level_ == b.level_ && a.c_ == b.c_; }
    friend bool operator!=(const Fq& a, const Fq& b) { return !(a == b); }
    friend bool operator<(const Fq& a, const Fq& b) {
        if (a.level_ != b.level_) return a.level_ < b.level_;
        return a.c_ < b.c_;
    }

    Fq inv() const;
    Fq pow(const Int& e) const;

    // Canonical index in 0..q^d-1 (digits base p).
    long index() const;

private:
    const FieldTower* tower_;
    long level_;
    std::vector<long> c_;  // length f*d*... = deg over F_p
};

class FieldTower {
public:
    FieldTower(long p, long f, long max_level) : p_(p), f_(f) {
        if (p < 3 || !is_prime(p)) throw std::invalid_argument("FieldTower: p must be an odd prime");
        for (long d = 1; d <= max_level; ++d) defining_poly(d);
        build_generator_chain(max_level);
    }

    long p() const { return p_; }
    long f() const { return f_; }
    long q() const { long r = 1; for (long i = 0; i < f_; ++i) r *= p_; return r; }
    long card(long level) const { long r = 1, n = q(); for (long i = 0; i < level; ++i) r *= n; return r; }

    // Least monic irreducible polynomial over F_p of degree f*level
    // (constant-first digit order); fixed once per (p, degree).
    const std::vector<long>& defining_poly(long level) const {
        long n = f_ * level;
        auto it = polys_.find(n);
        if (it != polys_.end()) return it->second;
        std::vector<long> g(static_cast<size_t>(n) + 1, 0);
        g[static_cast<size_t>(n)] = 1;
        for (Int code = 0;; ++code) {
            Int c = code;
            for (long i = 0; i < n; ++i) {
                g[static_cast<size_t>(i)] = mpz_fdiv_ui(c.get_mpz_t(), static_cast<unsigned long>(p_));
                c /= p_;
            }
            if (c != 0) throw std::runtime_error("FieldTower: no irreducible found");
            if (poly_irreducible(g)) break;
        }
        return polys_.emplace(n, g).first->second;
    }

    Fq zero(long level = 1) const { return Fq(this, level, std::vector<long>(static_cast<size_t>(f_ * level), 0)); }
    Fq one(long level = 1) const {
        auto c = std::vector<long>(static_cast<size_t>(f_ * level), 0);
        c[0] = 1;
        return Fq(this, level, c);
    }
    Fq from_int(long x, long level = 1) const {
        auto c = std::vector<long>(static_cast<size_t>(f_ * level), 0);
        c[0] = ((x % p_) + p_) % p_;
        return Fq(this, level, c);
    }
    Fq from_index(long idx, long level = 1) const {
        std::vector<long> c(static_cast<size_t>(f_ * level));
        for (auto& d : c) {
            d = idx % p_;
            idx /= p_;
        }
        return Fq(this, level, c);
    }

    // All q^level elements, index order.
    std::vector<Fq> elements(long level = 1) const {
        std::vector<Fq> out;
        long n = card(level);
        out.reserve(static_cast<size_t>(n));
        for (long i = 0; i < n; ++i) out.push_back(from_index(i, level));
        return out;
    }

    // Embedding F_{q^a} -> F_{q^b} for a | b, linear extension of a fixed
    // root of the level-a defining polynomial.
    Fq embed(const Fq& x, long to_level) const {
        long a = x.level();
        if (to_level == a) return x;
        if (to_level % a != 0) throw std::invalid_argument("FieldTower: embed needs a | b");
        const Fq& root = embedding_root(a, to_level);
        Fq acc = zero(to_level), pw = one(to_level);
        for (size_t i = 0; i < x.coeffs().size(); ++i) {
            acc = acc + from_int(x.coeffs()[i], to_level) * pw;
            if (i + 1 < x.coeffs().size()) pw = pw * root;
        }
        return acc;
    }

    // Frobenius x -> x^q.
    Fq frobenius(const Fq& x) const { return x.pow(Int(q())); }

    // Galois trace F_{q^d} -> F_{q^{d'}} for d' | d; the result is returned
    // at the lower level by matching against the embedded image.
    Fq trace(const Fq& x, long to_level) const {
        long d = x.level();
        if (d % to_level != 0) throw std::invalid_argument("trace: levels not nested");
        long steps = d / to_level;
        long qq = 1;
        for (long i = 0; i < to_level; ++i) qq *= q();
        Fq s = zero(d), t = x;
        for (long i = 0; i < steps; ++i) {
            s = s + t;
            t = t.pow(Int(qq));
        }
        return descend(s, to_level);
    }

    // Absolute trace to F_p, as an integer 0..p-1.
    long abs_trace(const Fq& x) const {
        long n = f_ * x.level();
        Fq s = zero(x.level()), t = x;
        for (long i = 0; i < n; ++i) {
            s = s + t;
            t = t.pow(Int(p_));
        }
        for (size_t i = 1; i < s.coeffs().size(); ++i)
            if (s.coeffs()[i] != 0) throw std::logic_error("abs_trace: not in prime field");
        return s.coeffs()[0];
    }

    // Fixed additive character: psi(x) = zeta_p^{Tr(x)}.
    Cyc additive_character(const Fq& x) const { return Cyc::zeta(p_, abs_trace(x)); }

    // Norm-compatible generator of F_{q^d}^x.
    const Fq& generator(long level) const {
        auto it = gens_.find(level);
        if (it == gens_.end()) throw std::invalid_argument("FieldTower: level beyond max_level");
        return it->second;
    }

    // The fixed isomorphism onto the prime-to-p part of Q/Z: the level-d
    // generator maps to 1/(q^d - 1). Returns the reduced fraction in [0,1).
    Rat multiplicative_iso(const Fq& x) const {
        if (x.is_zero()) throw std::invalid_argument("multiplicative_iso: zero input");
        long d = x.level();
        long ord = card(d) - 1;
        long k = dlog(x);
        Rat r(k, ord);
        r.canonicalize();
        return r;
    }

    // Discrete log base the fixed generator.
    long dlog(const Fq& x) const {
        if (x.is_zero()) throw std::invalid_argument("dlog: zero");
        const Fq& g = generator(x.level());
        Fq t = one(x.level());
        long ord = card(x.level()) - 1;
        for (long k = 0; k < ord; ++k) {
            if (t == x) return k;
            t = t * g;
        }
        throw std::logic_error("dlog: generator is not primitive");
    }

    static bool is_prime(long n) {
        if (n < 2) return false;
        for (long d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

private:
    long p_, f_;
    mutable std::map<long, std::vector<long>> polys_;           // degree over F_p -> poly
    mutable std::map<std::pair<long, long>, Fq> roots_;         // (a,b) -> root of g_a in level b
    std::map<long, Fq> gens_;

    friend class Fq;

    // ---- polynomial arithmetic over F_p (dense, constant-first) ----
    std::vector<long> pmul(const std::vector<long>& a, const std::vector<long>& b) const {
        std::vector<long> r(a.size() + b.size() - 1, 0);
        for (size_t i = 0; i < a.size(); ++i) {
            if (!a[i]) continue;
            for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p_;
        }
        return r;
    }
    std::vector<long> pmod(std::vector<long> a, const std::vector<long>& m) const {
        long dm = static_cast<long>(m.size()) - 1;
        long inv_lead = mod_inverse(m.back());
        for (long k = static_cast<long>(a.size()) - 1; k >= dm; --k) {
            long c = (a[static_cast<size_t>(k)] * inv_lead) % p_;
            if (!c) continue;
            for (long j = 0; j <= dm; ++j) {
                long& t = a[static_cast<size_t>(k - dm + j)];
                t = ((t - c * m[static_cast<size_t>(j)]) % p_ + p_) % p_;
            }
        }
        a.resize(static_cast<size_t>(dm));
        return a;
    }
    static void ptrim(std::vector<long>& a) {
        while (a.size() > 1 && a.back() == 0) a.pop_back();
    }
    std::vector<long> pgcd(std::vector<long> a, std::vector<long> b) const {
        ptrim(a);
        ptrim(b);
        while (!(b.size() == 1 && b[0] == 0)) {
            auto r = pmod(a, b);
            ptrim(r);
            a = std::move(b);
            b = std::move(r);
        }
        long lead = a.back();
        if (lead != 1) {
            long il = mod_inverse(lead);
            for (auto& c : a) c = (c * il) % p_;
        }
        return a;
    }
    // x^(p^e) mod m by repeated squaring.
    std::vector<long> pow_x_pe(long e, const std::vector<long>& m) const {
        std::vector<long> x = {0, 1};
        x = pmod(x, m);
        Int exp = pow_int(p_, e);
        std::vector<long> base = x, acc = {1};
        acc.resize(m.size() - 1, 0);
        Int k = exp;
        while (k > 0) {
            if (mpz_odd_p(k.get_mpz_t())) acc = pmod(pmul(acc, base), m);
            base = pmod(pmul(base, base), m);
            k /= 2;
        }
        return acc;
    }
    bool poly_irreducible(const std::vector<long>& g) const {
        long n = static_cast<long>(g.size()) - 1;
        if (g.back() != 1) return false;
        // x^{p^n} == x mod g
        std::vector<long> xq = pow_x_pe(n, g);
        std::vector<long> x = pmod(std::vector<long>{0, 1}, g);
        if (xq != x) return false;
        // gcd(x^{p^{n/l}} - x, g) == 1 for prime l | n
        for (long l = 2; l <= n; ++l) {
            if (n % l != 0) continue;
            bool lp = true;
            for (long d = 2; d * d <= l; ++d)
                if (l % d == 0) lp = false;
            if (!lp) continue;
            std::vector<long> y = pow_x_pe(n / l, g);
            std::vector<long> diff(std::max(y.size(), x.size()), 0);
            for (size_t i = 0; i < y.size(); ++i) diff[i] = y[i];
            for (size_t i = 0; i < x.size(); ++i) diff[i] = ((diff[i] - x[i]) % p_ + p_) % p_;
            auto gg = pgcd(g, diff);
            if (!(gg.size() == 1 && gg[0] == 1)) return false;
        }
        return true;
    }
    long mod_inverse(long a) const {
        long t = 0, nt = 1, r = p_, nr = ((a % p_) + p_) % p_;
        while (nr != 0) {
            long qq = r / nr;
            long tmp = t - qq * nt;
            t = nt;
            nt = tmp;
            tmp = r - qq * nr;
            r = nr;
            nr = tmp;
        }
        return ((t % p_) + p_) % p_;
    }

    const Fq& embedding_root(long a, long b) const {
        auto key = std::make_pair(a, b);
        auto it = roots_.find(key);
        if (it != roots_.end()) return it->second;
        const std::vector<long>& ga = defining_poly(a);
        long n = card(b);
        for (long i = 0; i < n; ++i) {
            Fq x = from_index(i, b);
            Fq acc = zero(b), pw = one(b);
            for (size_t j = 0; j < ga.size(); ++j) {
                acc = acc + from_int(ga[j], b) * pw;
                pw = pw * x;
            }
            if (acc.is_zero()) return roots_.emplace(key, x).first->second;
        }
        throw std::logic_error("FieldTower: embedding root not found");
    }

    // Inverse of embed on its image.
    Fq descend(const Fq& y, long to_level) const {
        long n = card(to_level);
        for (long i = 0; i < n; ++i) {
            Fq x = from_index(i, to_level);
            if (embed(x, y.level()) == y) return x;
        }
        throw std::logic_error("FieldTower: element not in subfield");
    }

    bool is_primitive(const Fq& x, long level) const {
        long ord = card(level) - 1;
        for (long d = 2; d <= ord; ++d) {
            if (ord % d != 0) continue;
            bool dp = true;
            for (long e = 2; e * e <= d; ++e)
                if (d % e == 0) dp = false;
            if (!dp) continue;
            if (x.pow(Int(ord / d)) == one(level)) return false;
        }
        return !x.is_zero();
    }

    void build_generator_chain(long max_level) {
        for (long d = 1; d <= max_level; ++d) {
            long n = card(d);
            bool found = false;
            for (long i = 1; i < n && !found; ++i) {
                Fq cand = from_index(i, d);
                if (!is_primitive(cand, d)) continue;
                bool ok = true;
                for (long a = 1; a < d; ++a) {
                    if (d % a != 0) continue;
                    // norm to level a must hit the fixed level-a generator
                    long e = (n - 1) / (card(a) - 1);
                    Fq nm = cand.pow(Int(e));
                    if (nm != embed(gens_.at(a), d)) ok = false;
                }
                if (ok) {
                    gens_.emplace(d, cand);
                    found = true;
                }
            }
            if (!found) throw std::logic_error("FieldTower: no norm-compatible generator");
        }
    }
};

inline Fq operator+(const Fq& a, const Fq& b) {
    assert(a.tower_ == b.tower_ && a.level_ == b.level_);
    std::vector<long> c(a.c_.size());
    long p = a.tower_->p();
    for (size_t i = 0; i < c.size(); ++i) c[i] = (a.c_[i] + b.c_[i]) % p;
    return Fq(a.tower_, a.level_, c);
}
inline Fq operator-(const Fq& a, const Fq& b) {
    assert(a.tower_ == b.tower_ && a.level_ == b.level_);
    std::vector<long> c(a.c_.size());
    long p = a.tower_->p();
    for (size_t i = 0; i < c.size(); ++i) c[i] = ((a.c_[i] - b.c_[i]) % p + p) % p;
    return Fq(a.tower_, a.level_, c);
}
inline Fq Fq::operator-() const {
    std::vector<long> c(c_.size());
    long p = tower_->p();
    for (size_t i = 0; i < c.size(); ++i) c[i] = (p - c_[i]) % p;
    return Fq(tower_, level_, c);
}
inline Fq operator*(const Fq& a, const Fq& b) {
    assert(a.tower_ == b.tower_ && a.level_ == b.level_);
    const FieldTower* t = a.tower_;
    auto prod = t->pmul(a.c_, b.c_);
    auto red = t->pmod(prod, t->defining_poly(a.level_));
    red.resize(a.c_.size(), 0);
    return Fq(t, a.level_, red);
}
inline Fq Fq::pow(const Int& e) const {
    if (e == 0) return tower_->one(level_);
    if (e < 0) return inv().pow(-e);
    Fq base = *this, acc = tower_->one(level_);
    Int k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) acc = acc * base;
        base = base * base;
        k /= 2;
    }
    return acc;
}
inline Fq Fq::inv() const {
    if (is_zero()) throw std::domain_error("Fq: inverse of zero");
    long ord = tower_->card(level_) - 1;
    return pow(Int(ord - 1));
}
inline long Fq::index() const {
    long idx = 0, p = tower_->p();
    for (size_t i = c_.size(); i-- > 0;) idx = idx * p + c_[i];
    return idx;
}

}  // namespace depthr
