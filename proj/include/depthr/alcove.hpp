#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "depthr/rat.hpp"
#include "depthr/rootdata.hpp"

namespace depthr {

// Affine function alpha + c on the apartment; gradient_root = -1 encodes
// zero gradient (torus directions in jump bookkeeping).
struct AffineFunction {
    long gradient_root = -1;
    Rat c;

    Rat eval(const RootDatum& d, const RatVec& x) const {
        Rat v = c;
        if (gradient_root >= 0) v += d.root_value(static_cast<size_t>(gradient_root), x);
        return v;
    }
};

struct RefinedFacet {
    long m = 1;
    long dim = 0;
    RatVec barycenter;
    std::vector<RatVec> closure_vertices;
};

struct Region {
    // list of (apartment gradient, constant): region = {x : g.x + c >= 0}
    std::vector<std::pair<IVec, Rat>> ineqs;

    bool contains(const RatVec& x) const {
        for (const auto& [g, c] : ineqs) {
            Rat v = c;
            for (size_t j = 0; j < g.size(); ++j) v += g[j] * x[j];
            if (v < 0) return false;
        }
        return true;
    }

    static Region closed_alcove(const RootDatum& d) {
        Region r;
        for (size_t s : d.simple) r.ineqs.push_back({d.apartment_gradient(s), Rat(0)});
        // highest root <= 1
        IVec theta(static_cast<size_t>(d.ss_rank), 0);
        for (size_t k = 0; k < d.roots.size(); ++k) {
            const IVec& g = d.apartment_gradient(k);
            bool ge = true;
            for (size_t j = 0; j < g.size(); ++j)
                if (g[j] < theta[j]) ge = false;
            if (ge) theta = g;
        }
        IVec neg = theta;
        for (auto& t : neg) t = -t;
        r.ineqs.push_back({neg, Rat(1)});
        return r;
    }

    // |alpha(x)| <= radius for every root; radius integral keeps the
    // boundary on walls of every Psi_m.
    static Region ball(const RootDatum& d, long radius) {
        Region r;
        std::set<IVec> seen;
        for (size_t k = 0; k < d.roots.size(); ++k) {
            IVec g = d.apartment_gradient(k);
            if (!seen.insert(g).second) continue;
            IVec neg = g;
            for (auto& t : neg) t = -t;
            r.ineqs.push_back({neg, Rat(radius)});
            r.ineqs.push_back({g, Rat(radius)});
        }
        return r;
    }
};

// The m-refined polysimplicial structure on a wall-bounded convex region of
// the standard apartment (rank <= 2). Facets are keyed by barycenter; the
// sign profile against the wall list is reconstructed on demand.
class FacetComplex {
public:
    struct Wall {
        size_t root;  // positive representative
        Rat c;        // wall: alpha(x) + c = 0
    };

    FacetComplex(const RootDatum& d, long m, Region region, long budget = 200000)
        : d_(&d), m_(m), region_(std::move(region)) {
        if (m < 1) throw std::invalid_argument("FacetComplex: m >= 1 required");
        if (d.ss_rank == 1)
            enumerate_rank1(budget);
        else if (d.ss_rank == 2)
            enumerate_rank2(budget);
        else
            throw std::invalid_argument("FacetComplex: rank <= 2 only");
        for (size_t i = 0; i < facets_.size(); ++i) {
            index_[facets_[i].barycenter] = i;
            profiles_.push_back(profile(facets_[i].barycenter));
        }
    }

    const RootDatum& datum() const { return *d_; }
    long m() const { return m_; }
    const Region& region() const { return region_; }
    const std::vector<RefinedFacet>& facets() const { return facets_; }
    const std::vector<Wall>& walls() const { return walls_; }

    size_t size() const { return facets_.size(); }
    const RefinedFacet& facet(size_t i) const { return facets_[i]; }

    std::optional<size_t> index_of(const RatVec& barycenter) const {
        auto it = index_.find(barycenter);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    // Facet whose (open) facet contains the point.
    std::optional<size_t> facet_containing(const RatVec& x) const {
        if (!region_.contains(x)) return std::nullopt;
        auto px = profile(x);
        for (size_t i = 0; i < facets_.size(); ++i)
            if (profiles_[i] == px) return i;
        return std::nullopt;
    }

    std::vector<int> profile(const RatVec& x) const {
        std::vector<int> p(walls_.size());
        for (size_t w = 0; w < walls_.size(); ++w) {
            Rat v = d_->root_value(walls_[w].root, x) + walls_[w].c;
            p[w] = v > 0 ? 1 : (v < 0 ? -1 : 0);
        }
        return p;
    }

    // sigma lies in the closure of tau
    bool face_relation(size_t sigma, size_t tau) const {
        const auto& ps = profiles_[sigma];
        const auto& pt = profiles_[tau];
        for (size_t w = 0; w < ps.size(); ++w) {
            if (pt[w] == 0 && ps[w] != 0) return false;
            if (pt[w] != 0 && ps[w] != 0 && ps[w] != pt[w]) return false;
        }
        return true;
    }

    // Phi_sigma: roots constant on sigma with value in (1/m)Z.
    std::vector<size_t> phi_sigma(size_t sigma) const {
        std::vector<size_t> out;
        const RefinedFacet& f = facets_[sigma];
        for (size_t k = 0; k < d_->roots.size(); ++k) {
            Rat v0 = d_->root_value(k, f.closure_vertices[0]);
            bool constant = true;
            for (const auto& v : f.closure_vertices)
                if (d_->root_value(k, v) != v0) constant = false;
            if (constant && in_grid(v0, m_)) out.push_back(k);
        }
        return out;
    }

    // Smallest psi = alpha + c, c in (1/m)Z, with psi >= r (resp. > r) on
    // the open facet. gradient_root = -1 gives the torus jump 0 + c.
    AffineFunction psi_min(long gradient_root, size_t sigma, const Rat& r, bool strict) const {
        const RefinedFacet& f = facets_[sigma];
        Rat inf;
        bool constant = true;
        if (gradient_root < 0) {
            inf = 0;
        } else {
            inf = d_->root_value(static_cast<size_t>(gradient_root), f.closure_vertices[0]);
            for (const auto& v : f.closure_vertices) {
                Rat val = d_->root_value(static_cast<size_t>(gradient_root), v);
                if (val != inf) constant = false;
                inf = std::min(inf, val);
            }
        }
        // infimum not attained on the open facet when non-constant, so the
        // strict and non-strict minima coincide there
        Rat c;
        if (!strict || !constant)
            c = ceil_to_grid(r - inf, m_);
        else
            c = floor_to_grid(r - inf, m_) + Rat(1, m_);
        return AffineFunction{gradient_root, c};
    }

    // sigma-opposite pairs (tau, tau') among cofaces inside the region.
    std::vector<std::pair<size_t, size_t>> opposite_facets(size_t sigma) const {
        std::vector<std::pair<size_t, size_t>> out;
        std::vector<size_t> cofaces;
        for (size_t t = 0; t < facets_.size(); ++t)
            if (t != sigma && face_relation(sigma, t) && facets_[t].dim > facets_[sigma].dim)
                cofaces.push_back(t);
        for (size_t a = 0; a < cofaces.size(); ++a)
            for (size_t b = 0; b < cofaces.size(); ++b) {
                if (a == b) continue;
                size_t ta = cofaces[a], tb = cofaces[b];
                if (facets_[ta].dim != facets_[tb].dim) continue;
                if (!affine_span_equal(ta, tb)) continue;
                RatVec refl = reflect_across(sigma, facets_[ta].barycenter);
                if (refl == facets_[tb].barycenter) out.push_back({ta, tb});
            }
        return out;
    }

    // Simple affine roots relative to a top-dimensional facet: the psi
    // vanishing on a codimension-1 face and positive on sigma.
    std::vector<AffineFunction> delta_of_chamber(size_t sigma) const {
        const RefinedFacet& f = facets_[sigma];
        if (f.dim != d_->ss_rank) throw std::invalid_argument("delta_of_chamber: not a chamber");
        std::vector<AffineFunction> out;
        for (size_t t = 0; t < facets_.size(); ++t) {
            if (facets_[t].dim != f.dim - 1 || !face_relation(t, sigma)) continue;
            // the wall through t, oriented positive on sigma
            for (size_t k = 0; k < d_->roots.size(); ++k) {
                Rat v0 = d_->root_value(k, facets_[t].closure_vertices[0]);
                bool onwall = true;
                for (const auto& v : facets_[t].closure_vertices)
                    if (d_->root_value(k, v) != v0) onwall = false;
                if (!onwall || !in_grid(v0, m_)) continue;
                AffineFunction psi{static_cast<long>(k), -v0};
                Rat at_s = psi.eval(*d_, f.barycenter);
                if (at_s > 0) {
                    bool dup = false;
                    for (const auto& q : out)
                        if (q.gradient_root == psi.gradient_root && q.c == psi.c) dup = true;
                    if (!dup) out.push_back(psi);
                }
            }
        }
        return out;
    }

    // sigma in Gamma_s(sigma', x): every psi in Psi_m with psi <= 0 on
    // sigma' and psi(x) <= s also has psi <= 0 on sigma. Only the largest
    // admissible constant per gradient matters.
    bool in_gamma(size_t sigma, size_t sigma_prime, const RatVec& x, const Rat& s) const {
        for (size_t k = 0; k < d_->roots.size(); ++k) {
            Rat sup_sp = sup_root(k, sigma_prime);
            Rat gx = d_->root_value(k, x);
            Rat cstar = floor_to_grid(std::min(-sup_sp, s - gx), m_);
            if (sup_root(k, sigma) + cstar > 0) return false;
        }
        return true;
    }

    // Unique minimal face sigma' of sigma with sigma in Gamma_s(sigma', x).
    size_t m_map(const RatVec& x, const Rat& s, size_t sigma) const {
        std::optional<size_t> best;
        for (size_t t = 0; t < facets_.size(); ++t) {
            if (!face_relation(t, sigma)) continue;
            if (!in_gamma(sigma, t, x, s)) continue;
            if (!best || facets_[t].dim < facets_[*best].dim)
                best = t;
        }
        if (!best) throw std::logic_error("m_map: no face admissible (sigma itself should be)");
        // minimal face is unique: check no incomparable admissible face of the same dim
        for (size_t t = 0; t < facets_.size(); ++t)
            if (t != *best && face_relation(t, sigma) && in_gamma(sigma, t, x, s) &&
                facets_[t].dim == facets_[*best].dim)
                throw std::logic_error("m_map: minimal face not unique");
        return *best;
    }

    // All chambers sigma with every simple affine root relative to sigma
    // taking value <= s at x. Throws if the scan radius cannot certify
    // completeness (rank 1: condition is monotone in distance from x).
    std::vector<size_t> upsilon(const RatVec& x, const Rat& s) const {
        if (d_->ss_rank == 1) {
            Rat lo = x[0], hi = x[0];
            for (const auto& f : facets_)
                for (const auto& v : f.closure_vertices) {
                    lo = std::min(lo, v[0]);
                    hi = std::max(hi, v[0]);
                }
            if (x[0] - lo < s + Rat(2, m_) || hi - x[0] < s + Rat(2, m_))
                throw std::runtime_error("upsilon: scan radius cannot certify closure");
        }
        std::vector<size_t> out;
        for (size_t i = 0; i < facets_.size(); ++i) {
            if (facets_[i].dim != d_->ss_rank) continue;
            bool ok = true;
            for (const auto& psi : delta_of_chamber(i))
                if (psi.eval(*d_, x) > s) ok = false;
            if (ok) out.push_back(i);
        }
        return out;
    }

    // Convex subcomplex Gamma_s(sigma', x) within this complex.
    std::vector<size_t> gamma_region(size_t sigma_prime, const RatVec& x, const Rat& s) const {
        std::vector<size_t> out;
        for (size_t i = 0; i < facets_.size(); ++i)
            if (in_gamma(i, sigma_prime, x, s)) out.push_back(i);
        return out;
    }

    Rat sup_root(size_t k, size_t sigma) const {
        const RefinedFacet& f = facets_[sigma];
        Rat sup = d_->root_value(k, f.closure_vertices[0]);
        for (const auto& v : f.closure_vertices) sup = std::max(sup, d_->root_value(k, v));
        return sup;
    }
    Rat inf_root(size_t k, size_t sigma) const {
        const RefinedFacet& f = facets_[sigma];
        Rat inf = d_->root_value(k, f.closure_vertices[0]);
        for (const auto& v : f.closure_vertices) inf = std::min(inf, d_->root_value(k, v));
        return inf;
    }

    bool affine_span_equal(size_t a, size_t b) const {
        const auto& va = facets_[a].closure_vertices;
        const auto& vb = facets_[b].closure_vertices;
        return span_contains_all(va, vb) && span_contains_all(vb, va);
    }

    // reflect point across the affine span of sigma, orthogonally for the
    // W-invariant product (standard dot in ambient coordinates)
    RatVec reflect_across(size_t sigma, const RatVec& x) const {
        const auto& verts = facets_[sigma].closure_vertices;
        RatVec v0 = d_->ambient_of_apartment(verts[0]);
        std::vector<RatVec> dirs;
        for (size_t i = 1; i < verts.size(); ++i) {
            RatVec u = d_->ambient_of_apartment(verts[i]) - v0;
            if (!is_zero(u)) dirs.push_back(u);
        }
        RatVec xa = d_->ambient_of_apartment(x);
        RatVec w = xa - v0;
        RatVec proj = project_onto_span(dirs, w);
        // R(x) = v0 + 2 proj - w + v0 ... = 2(v0 + proj) - xa
        RatVec r(xa.size());
        for (size_t i = 0; i < r.size(); ++i) r[i] = 2 * (v0[i] + proj[i]) - xa[i];
        return d_->apartment_coords(r);
    }

private:
    const RootDatum* d_;
    long m_;
    Region region_;
    std::vector<Wall> walls_;
    std::vector<RefinedFacet> facets_;
    std::vector<std::vector<int>> profiles_;
    std::map<RatVec, size_t> index_;

    static bool span_contains_all(const std::vector<RatVec>& span_pts, const std::vector<RatVec>& pts) {
        // affine span of span_pts contains every point of pts (rank <= 2)
        if (span_pts.empty()) return false;
        std::vector<RatVec> dirs;
        for (size_t i = 1; i < span_pts.size(); ++i) dirs.push_back(span_pts[i] - span_pts[0]);
        for (const auto& p : pts) {
            RatVec w = p - span_pts[0];
            RatVec proj = project_onto_span(dirs, w);
            if (!(proj == w)) return false;
        }
        return true;
    }

    static RatVec project_onto_span(const std::vector<RatVec>& dirs, const RatVec& w) {
        // Gram solve, dimension <= 2; degenerate directions tolerated
        std::vector<RatVec> basis;
        for (const auto& u : dirs) {
            RatVec r = u - project_onto_span(basis, u);
            if (!is_zero(r)) basis.push_back(r);
            if (basis.size() == 2) break;
        }
        RatVec proj(w.size(), Rat(0));
        for (const auto& b : basis) {
            Rat num = dot(b, w), den = dot(b, b);
            for (size_t i = 0; i < w.size(); ++i) proj[i] += (num / den) * b[i];
        }
        return proj;
    }

    void add_wall(size_t root, const Rat& c) {
        for (const auto& w : walls_)
            if (w.root == root && w.c == c) return;
        walls_.push_back({root, c});
    }

    // one root per wall direction; presets only ever pair alpha with -alpha
    std::vector<size_t> positive_reps() const {
        std::vector<size_t> reps;
        for (size_t k = 0; k < d_->roots.size(); ++k) {
            const IVec& g = d_->apartment_gradient(k);
            bool has_prior = false;
            for (size_t j : reps) {
                const IVec& h = d_->apartment_gradient(j);
                bool prop = (d_->ss_rank == 1) ? (h[0] != 0 && g[0] != 0)
                                               : (h[0] * g[1] == h[1] * g[0]);
                if (prop) {
                    IVec neg = g;
                    for (auto& t : neg) t = -t;
                    if (h != g && h != neg)
                        throw std::logic_error("proportional non-opposite root gradients");
                    has_prior = true;
                }
            }
            if (!has_prior) reps.push_back(k);
        }
        return reps;
    }

    void build_walls() {
        // region corner values bound the constants
        std::vector<RatVec> corners = region_corners();
        for (size_t k : positive_reps()) {
            Rat lo = d_->root_value(k, corners[0]), hi = lo;
            for (const auto& v : corners) {
                Rat val = d_->root_value(k, v);
                lo = std::min(lo, val);
                hi = std::max(hi, val);
            }
            for (Rat c = -floor_to_grid(hi, m_); c <= -ceil_to_grid(lo, m_) + Rat(0); c += Rat(1, m_))
                add_wall(k, c);
        }
    }

    std::vector<RatVec> region_corners() const {
        // intersections of boundary line pairs satisfying all inequalities
        std::vector<RatVec> out;
        const auto& iq = region_.ineqs;
        if (d_->ss_rank == 1) {
            for (const auto& [g, c] : iq) {
                if (g[0] == 0) continue;
                RatVec x = {-c / g[0]};
                if (region_.contains(x)) out.push_back(x);
            }
        } else {
            for (size_t a = 0; a < iq.size(); ++a)
                for (size_t b = a + 1; b < iq.size(); ++b) {
                    auto pt = line_intersect(iq[a].first, iq[a].second, iq[b].first, iq[b].second);
                    if (pt && region_.contains(*pt)) out.push_back(*pt);
                }
        }
        if (out.empty()) throw std::logic_error("region has no corners");
        return out;
    }

    static std::optional<RatVec> line_intersect(const IVec& g1, const Rat& c1, const IVec& g2, const Rat& c2) {
        Rat det = Rat(g1[0]) * g2[1] - Rat(g1[1]) * g2[0];
        if (det == 0) return std::nullopt;
        // g1.x = -c1, g2.x = -c2
        RatVec x(2);
        x[0] = (-c1 * g2[1] + c2 * Rat(g1[1])) / det;
        x[1] = (-c2 * Rat(g1[0]) + c1 * Rat(g2[0])) / det;
        return x;
    }

    void enumerate_rank1(long budget) {
        build_walls();
        // wall points
        std::set<Rat> pts;
        for (const auto& w : walls_) {
            long g = d_->apartment_gradient(w.root)[0];
            Rat x = -w.c / g;
            if (region_.contains(RatVec{x})) pts.insert(x);
        }
        if (static_cast<long>(pts.size()) > budget) throw std::runtime_error("facet enumeration budget exceeded");
        std::vector<Rat> sorted(pts.begin(), pts.end());
        for (const auto& x : sorted)
            facets_.push_back(RefinedFacet{m_, 0, RatVec{x}, {RatVec{x}}});
        for (size_t i = 0; i + 1 < sorted.size(); ++i) {
            Rat mid = (sorted[i] + sorted[i + 1]) / 2;
            facets_.push_back(RefinedFacet{m_, 1, RatVec{mid}, {RatVec{sorted[i]}, RatVec{sorted[i + 1]}}});
        }
    }

    void enumerate_rank2(long budget) {
        build_walls();
        // 0-cells: pairwise wall intersections inside the region
        std::set<RatVec> verts;
        for (size_t a = 0; a < walls_.size(); ++a)
            for (size_t b = a + 1; b < walls_.size(); ++b) {
                auto pt = line_intersect(d_->apartment_gradient(walls_[a].root), walls_[a].c,
                                         d_->apartment_gradient(walls_[b].root), walls_[b].c);
                if (pt && region_.contains(*pt)) verts.insert(*pt);
            }
        for (const auto& v : verts) facets_.push_back(RefinedFacet{m_, 0, v, {v}});

        // 1-cells: consecutive 0-cells along each wall
        for (const auto& w : walls_) {
            const IVec& g = d_->apartment_gradient(w.root);
            RatVec dir = {Rat(-g[1]), Rat(g[0])};
            std::vector<std::pair<Rat, RatVec>> online;
            for (const auto& v : verts) {
                Rat val = d_->root_value(w.root, v) + w.c;
                if (val == 0) online.push_back({dot(dir, v), v});
            }
            std::sort(online.begin(), online.end(),
                      [](const auto& x, const auto& y) { return x.first < y.first; });
            for (size_t i = 0; i + 1 < online.size(); ++i) {
                RatVec mid(2);
                mid[0] = (online[i].second[0] + online[i + 1].second[0]) / 2;
                mid[1] = (online[i].second[1] + online[i + 1].second[1]) / 2;
                if (!region_.contains(mid)) continue;
                facets_.push_back(RefinedFacet{m_, 1, mid, {online[i].second, online[i + 1].second}});
            }
        }

        // 2-cells: probe on both sides of each 1-cell, group by profile
        size_t n1_end = facets_.size();
        std::map<std::vector<int>, std::vector<RatVec>> cells;
        Rat eps = Rat(1, 16 * m_);
        for (size_t i = 0; i < n1_end; ++i) {
            if (facets_[i].dim != 1) continue;
            // wall normal through this 1-cell in ambient-orthogonal coords:
            // use the gradient of its wall root
            for (const auto& w : walls_) {
                Rat val = d_->root_value(w.root, facets_[i].barycenter) + w.c;
                if (val != 0) continue;
                const IVec& g = d_->apartment_gradient(w.root);
                for (int s : {1, -1}) {
                    RatVec cand = facets_[i].barycenter;
                    cand[0] += s * eps * g[0];
                    cand[1] += s * eps * g[1];
                    if (!region_.contains(cand)) continue;
                    auto pr = profile(cand);
                    bool onwall = std::any_of(pr.begin(), pr.end(), [](int t) { return t == 0; });
                    if (onwall) continue;
                    cells[pr].push_back(cand);
                }
                break;
            }
        }
        for (const auto& [pr, pts] : cells) {
            // closure vertices: 0-cells weakly compatible with the profile
            std::vector<RatVec> cv;
            for (const auto& v : verts) {
                auto pv = profile(v);
                bool ok = true;
                for (size_t w = 0; w < pv.size(); ++w)
                    if (pv[w] != 0 && pv[w] != pr[w]) ok = false;
                if (ok) cv.push_back(v);
            }
            if (cv.empty()) throw std::logic_error("2-cell without closure vertices");
            RatVec bary(2, Rat(0));
            for (const auto& v : cv) {
                bary[0] += v[0];
                bary[1] += v[1];
            }
            bary[0] /= static_cast<long>(cv.size());
            bary[1] /= static_cast<long>(cv.size());
            facets_.push_back(RefinedFacet{m_, 2, bary, cv});
        }
        if (static_cast<long>(facets_.size()) > budget)
            throw std::runtime_error("facet enumeration budget exceeded");
    }
};

inline std::vector<RefinedFacet> enumerate_refined_facets(const RootDatum& d, long m, const Region& region) {
    return FacetComplex(d, m, region).facets();
}

}  // namespace depthr
