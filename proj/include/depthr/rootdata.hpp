#pragma once

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "depthr/rat.hpp"

namespace depthr {

enum class Preset { A1, A2, C2, GL2 };

inline std::string preset_name(Preset p) {
    switch (p) {
        case Preset::A1: return "A1";
        case Preset::A2: return "A2";
        case Preset::C2: return "C2";
        case Preset::GL2: return "GL2";
    }
    return "?";
}

inline Preset parse_preset(const std::string& s) {
    if (s == "A1" || s == "SL2") return Preset::A1;
    if (s == "A2" || s == "SL3") return Preset::A2;
    if (s == "C2" || s == "Sp4") return Preset::C2;
    if (s == "GL2") return Preset::GL2;
    throw std::invalid_argument("unknown preset: " + s);
}

using IVec = std::vector<long>;
using IMat = std::vector<IVec>;  // row-major square

inline IVec mat_apply(const IMat& m, const IVec& v) {
    IVec r(m.size(), 0);
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j) r[i] += m[i][j] * v[j];
    return r;
}
inline IMat mat_mul(const IMat& a, const IMat& b) {
    size_t n = a.size();
    IMat r(n, IVec(n, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k)
            if (a[i][k])
                for (size_t j = 0; j < n; ++j) r[i][j] += a[i][k] * b[k][j];
    return r;
}

inline long idot(const IVec& a, const IVec& b) {
    long s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Root data for the supported split presets. Roots and coroots live in a
// common ambient lattice with the standard dot-product pairing (type A and
// GL2 use e_i - e_j coordinates, C2 uses +-e_i +- e_j and +-2e_i), so every
// Weyl element is one orthogonal integer matrix acting on both sides.
// Apartment points are written in fundamental-coweight coordinates: the
// value of the s-th simple root at x is x[s].
struct RootDatum {
    Preset preset;
    long amb = 0;         // ambient lattice dimension
    long torus_rank = 0;  // rank of the maximal torus (torus slots in quotients)
    long ss_rank = 0;     // semisimple rank = apartment dimension
    bool sl_constraint = false;

    std::vector<IVec> roots;    // character-lattice vectors
    std::vector<IVec> coroots;  // cocharacter-lattice vectors, aligned with roots
    std::vector<size_t> simple; // indices into roots
    std::vector<RatVec> apartment_basis;  // b_j in ambient cochar coords, <alpha_sj, b_j> = delta

    std::vector<IMat> weyl;  // ambient matrices, weyl[0] = identity

    long pairing(size_t root_idx, size_t coroot_idx) const {
        return idot(roots[root_idx], coroots[coroot_idx]);
    }

    // value of root #k at apartment point x (fundamental-coweight coords)
    Rat root_value(size_t k, const RatVec& x) const {
        Rat s = 0;
        for (long j = 0; j < ss_rank; ++j) s += apartment_gradient(k)[static_cast<size_t>(j)] * x[static_cast<size_t>(j)];
        return s;
    }

    // integer gradient of root #k in apartment coordinates
    const IVec& apartment_gradient(size_t k) const { return grads_[k]; }

    long root_index(const IVec& r) const {
        for (size_t k = 0; k < roots.size(); ++k)
            if (roots[k] == r) return static_cast<long>(k);
        return -1;
    }
    long negative_of(size_t k) const {
        IVec neg = roots[k];
        for (auto& c : neg) c = -c;
        return root_index(neg);
    }

    // apartment coordinates of an ambient cocharacter-space vector
    RatVec apartment_coords(const RatVec& ambient) const {
        RatVec x(static_cast<size_t>(ss_rank));
        for (size_t s = 0; s < simple.size(); ++s) {
            Rat v = 0;
            const IVec& a = roots[simple[s]];
            for (size_t i = 0; i < a.size(); ++i) v += a[i] * ambient[i];
            x[s] = v;
        }
        return x;
    }
    RatVec ambient_of_apartment(const RatVec& x) const {
        RatVec v(static_cast<size_t>(amb), Rat(0));
        for (size_t j = 0; j < apartment_basis.size(); ++j)
            for (size_t i = 0; i < v.size(); ++i) v[i] += x[j] * apartment_basis[j][i];
        return v;
    }

    std::vector<IVec> grads_;
};

inline RootDatum build_root_datum(Preset preset) {
    RootDatum d;
    d.preset = preset;
    auto e = [&](long i, long sign, long n) {
        IVec v(static_cast<size_t>(n), 0);
        v[static_cast<size_t>(i)] = sign;
        return v;
    };
    auto eij = [&](long i, long j, long n) {
        IVec v(static_cast<size_t>(n), 0);
        v[static_cast<size_t>(i)] = 1;
        v[static_cast<size_t>(j)] = -1;
        return v;
    };
    switch (preset) {
        case Preset::A1:
            d.amb = 2;
            d.torus_rank = 1;
            d.ss_rank = 1;
            d.sl_constraint = true;
            d.roots = {eij(0, 1, 2), eij(1, 0, 2)};
            d.coroots = d.roots;
            d.simple = {0};
            d.apartment_basis = {{Rat(1, 2), Rat(-1, 2)}};
            break;
        case Preset::GL2:
            d.amb = 2;
            d.torus_rank = 2;
            d.ss_rank = 1;
            d.sl_constraint = false;
            d.roots = {eij(0, 1, 2), eij(1, 0, 2)};
            d.coroots = d.roots;
            d.simple = {0};
            d.apartment_basis = {{Rat(1, 2), Rat(-1, 2)}};
            break;
        case Preset::A2: {
            d.amb = 3;
            d.torus_rank = 2;
            d.ss_rank = 2;
            d.sl_constraint = true;
            for (long i = 0; i < 3; ++i)
                for (long j = 0; j < 3; ++j)
                    if (i != j) d.roots.push_back(eij(i, j, 3));
            d.coroots = d.roots;
            d.simple = {static_cast<size_t>(d.root_index(eij(0, 1, 3))),
                        static_cast<size_t>(d.root_index(eij(1, 2, 3)))};
            d.apartment_basis = {{Rat(2, 3), Rat(-1, 3), Rat(-1, 3)},
                                 {Rat(1, 3), Rat(1, 3), Rat(-2, 3)}};
            break;
        }
        case Preset::C2: {
            d.amb = 2;
            d.torus_rank = 2;
            d.ss_rank = 2;
            d.sl_constraint = false;
            // short: +-e1 +- e2; long: +-2e_i
            for (long s1 : {1L, -1L})
                for (long s2 : {1L, -1L}) {
                    IVec v = {s1, s2};
                    d.roots.push_back(v);
                    d.coroots.push_back(v);
                }
            for (long i = 0; i < 2; ++i)
                for (long s : {1L, -1L}) {
                    d.roots.push_back(e(i, 2 * s, 2));
                    d.coroots.push_back(e(i, s, 2));
                }
            d.simple = {static_cast<size_t>(d.root_index(IVec{1, -1})),
                        static_cast<size_t>(d.root_index(IVec{0, 2}))};
            d.apartment_basis = {{Rat(1), Rat(0)}, {Rat(1, 2), Rat(1, 2)}};
            break;
        }
    }
    // Weyl group: close simple reflections under composition.
    auto reflection = [&](size_t k) {
        IMat m(static_cast<size_t>(d.amb), IVec(static_cast<size_t>(d.amb), 0));
        for (long i = 0; i < d.amb; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
        // v -> v - <v, alpha^vee> alpha on characters; identical matrix on both sides
        IMat r = m;
        for (long j = 0; j < d.amb; ++j) {
            IVec ej(static_cast<size_t>(d.amb), 0);
            ej[static_cast<size_t>(j)] = 1;
            long c = idot(ej, d.coroots[k]);
            for (long i = 0; i < d.amb; ++i)
                r[static_cast<size_t>(i)][static_cast<size_t>(j)] -= c * d.roots[k][static_cast<size_t>(i)];
        }
        return r;
    };
    IMat id(static_cast<size_t>(d.amb), IVec(static_cast<size_t>(d.amb), 0));
    for (long i = 0; i < d.amb; ++i) id[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
    std::vector<IMat> gens;
    for (size_t s : d.simple) gens.push_back(reflection(s));
    std::set<IMat> seen = {id};
    std::vector<IMat> queue = {id};
    d.weyl = {id};
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        for (const auto& g : gens) {
            IMat w = mat_mul(g, queue[qi]);
            if (seen.insert(w).second) {
                queue.push_back(w);
                d.weyl.push_back(w);
            }
        }
    }
    // Apartment gradients of all roots.
    d.grads_.resize(d.roots.size());
    for (size_t k = 0; k < d.roots.size(); ++k) {
        IVec g(static_cast<size_t>(d.ss_rank), 0);
        for (long j = 0; j < d.ss_rank; ++j) {
            Rat v = 0;
            for (long i = 0; i < d.amb; ++i)
                v += d.roots[k][static_cast<size_t>(i)] * d.apartment_basis[static_cast<size_t>(j)][static_cast<size_t>(i)];
            if (!is_integer(v)) throw std::logic_error("non-integral apartment gradient");
            g[static_cast<size_t>(j)] = static_cast<long>(v.get_num().get_si());
        }
        d.grads_[k] = g;
    }
    return d;
}

// Orbit of a rational cocharacter-space vector (apartment coordinates are
// accepted and returned; internally the ambient action is used).
inline std::set<RatVec> weyl_orbit(const RootDatum& d, const RatVec& x_apartment) {
    std::set<RatVec> orbit;
    RatVec amb = d.ambient_of_apartment(x_apartment);
    for (const auto& w : d.weyl) {
        RatVec img(amb.size(), Rat(0));
        for (size_t i = 0; i < img.size(); ++i)
            for (size_t j = 0; j < amb.size(); ++j) img[i] += w[i][j] * amb[j];
        orbit.insert(d.apartment_coords(img));
    }
    return orbit;
}

}  // namespace depthr
