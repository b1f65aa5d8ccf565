#pragma once

// Dimension bookkeeping for the loci
//   W^r_d(S, L) = { V in Gr(r+1, H^0(L)) : deg(phi_V) <= d }
// on a polarized K3 surface with Picard rank one.
//
// A stratum is described by a source bundle (L itself, or a rank-2 bundle E
// with c1 = L), a fat-point plan imposed on its sections and the
// Grassmannian of (r+1)-dimensional subspaces of what survives.  Its
// dimension is
//   moduli_dim(v) + 2 * #points + dim Gr(r+1, h0 - cost).
// With an empty plan this is relative_grassmannian_dim(v, r).

#include "irrk3/bound_engine.hpp"
#include "irrk3/core_arith.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace irrk3 {

struct BrillNoetherQuery {
    Integer genus;
    Integer r;
    Integer d;

    BrillNoetherQuery(Integer g, Integer r_, Integer d_) : genus(std::move(g)), r(std::move(r_)), d(std::move(d_)) {
        if (genus < 2) throw DomainError("genus must be >= 2");
        if (r < 2) throw DomainError("W^r_d needs r >= 2");
        if (d < 1) throw DomainError("W^r_d needs d >= 1");
        if (r + 1 > genus + 1) throw DomainError("Gr(r+1, H^0(L)) is empty for r=" + r.str());
    }
};

enum class Construction { fat_point_family, grassmannian_bundle_over_moduli };

constexpr std::string_view to_string(Construction c) {
    return c == Construction::fat_point_family ? "fat_point_family" : "grassmannian_bundle_over_moduli";
}

struct ComponentReport {
    std::string description;
    Integer dimension;
    Construction construction;
    // Stratum data the dimension was computed from.
    MukaiVector source;
    MultiplicityPlan plan;
    Integer map_degree;
};

/// dim M(v) = v^2 + 2; v^2 < -2 means no stable object.
inline Integer moduli_dim(const MukaiVector& v) {
    const Integer sq = mukai_square(v);
    if (sq < -2) throw DomainError("Mukai square " + sq.str() + " < -2: moduli space is empty");
    return sq + 2;
}

inline Integer grassmannian_dim(const Integer& k, const Integer& n) {
    if (k < 0 || k > n) throw DomainError("Gr(" + k.str() + ", " + n.str() + ") is empty");
    return k * (n - k);
}

/// Dimension of the relative Grassmannian of (r+1)-planes in H^0(E) over M(v).
inline Integer relative_grassmannian_dim(const MukaiVector& v, const Integer& r) {
    const Integer h0 = v.rank + v.s;
    if (h0 < r + 1)
        throw DomainError("h0 = " + h0.str() + " < r+1 = " + Integer(r + 1).str() + ": empty stratum");
    return moduli_dim(v) + grassmannian_dim(r + 1, h0);
}

/// Conditions a point of multiplicity m imposes on sections of a rank-`rank` bundle.
inline Integer point_conditions(const Integer& rank, const Integer& m) { return rank * m * (m + 1) / 2; }

/// Every stratum of the model whose map degree is <= d.  Sources are L
/// (rank 1, degree L^2) and rank-2 bundles with c2 in [minimal_c2(g), g].
inline std::vector<ComponentReport> brill_noether_strata(const BrillNoetherQuery& q) {
    const Integer& g = q.genus;
    std::vector<ComponentReport> out;

    struct Source {
        MukaiVector v;
        Integer c_top;  // degree of the map before any base points
    };
    std::vector<Source> sources;
    sources.push_back({k3_mukai_vector(g, 1, 0), 2 * g - 2});
    for (Integer c2 = minimal_c2(g); c2 <= g; ++c2) sources.push_back({k3_mukai_vector(g, 2, c2), c2});

    for (const auto& src : sources) {
        if (mukai_square(src.v) < -2) continue;
        const Integer h0 = src.v.rank + src.v.s;
        const Integer budget = h0 - (q.r + 1);
        if (budget < 0) continue;

        // Enumerate non-increasing plans within budget.
        std::vector<Integer> plan;
        auto visit = [&](auto&& self, Integer remaining, Integer cap) -> void {
            MultiplicityPlan p{plan};
            const Integer degree = src.c_top - degree_drop(p);
            if (degree >= 0 && degree <= q.d) {
                const Integer dim = moduli_dim(src.v) + 2 * Integer(p.points()) +
                                    grassmannian_dim(q.r + 1, h0 - (budget - remaining));
                const Construction kind =
                    p.empty() ? Construction::grassmannian_bundle_over_moduli : Construction::fat_point_family;
                if (p.empty()) {
                    // Same number through the relative Grassmannian.
                    if (dim != relative_grassmannian_dim(src.v, q.r))
                        throw std::logic_error("stratum dimension mismatch");
                }
                std::string text = "rank " + src.v.rank.str() + " source, c_top " + src.c_top.str() +
                                   ", h0 " + h0.str();
                out.push_back({std::move(text), dim, kind, src.v, p, degree});
            }
            for (Integer m = 1; m <= cap; ++m) {
                const Integer cost = point_conditions(src.v.rank, m);
                if (cost > remaining) break;
                plan.push_back(m);
                self(self, remaining - cost, m);
                plan.pop_back();
            }
        };
        visit(visit, budget, budget);
    }
    return out;
}

struct LocusReport {
    Integer r;
    Integer d;
    std::vector<ComponentReport> components;
    bool empty() const { return components.empty(); }
};

struct CaseStudy {
    Integer genus;
    std::vector<LocusReport> loci;
    Integer sharp_irr;  // recorded value of irr_L(S)
    std::vector<std::string> notes;
};

/// W^2_3 and W^2_4 for genus 5, W^2_3 for genus 6.
inline CaseStudy case_study(const Integer& g) {
    if (g != 5 && g != 6) throw DomainError("case study data exists only for genus 5 and 6, got " + g.str());
    CaseStudy cs{g, {}, g == 5 ? 4 : 3, {}};
    const std::vector<int> degrees = g == 5 ? std::vector<int>{3, 4} : std::vector<int>{3};
    for (int d : degrees) cs.loci.push_back({2, d, brill_noether_strata(BrillNoetherQuery(g, 2, d))});

    if (g == 5) {
        for (auto& c : cs.loci.back().components) {
            if (c.construction == Construction::fat_point_family)
                c.description = "P -> H^0(L (x) I_P^2), birational to S";
            else
                c.description =
                    "Gr(3,4)-bundle over M(2,L,4); the base is described both as S and as a Fourier-Mukai "
                    "partner of S, the dimension is the same either way";
        }
        cs.notes.push_back("the two components of W^2_4 are taken to exhaust the locus");
    } else {
        for (auto& c : cs.loci.back().components) c.description = "P -> H^0(E (x) m_P)^v, W^2_3(S,L) = S";
    }
    cs.notes.push_back("irr_L(S) = " + cs.sharp_irr.str() + " is a recorded constant, not computed");
    return cs;
}

}  // namespace irrk3
