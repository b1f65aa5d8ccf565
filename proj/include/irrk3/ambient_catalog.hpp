#pragma once

// deg(phi_V) = c_n(E) - deg Z(V^v) for a rank-n bundle E on an n-dimensional
// variety whose determinant map wedge^n V^v -> V is an isomorphism, together
// with the recorded higher-dimensional estimates obtained from it.

#include "irrk3/core_arith.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace irrk3 {

inline Integer general_degree_bound(const Integer& top_chern, const Integer& fixed_drop) {
    if (fixed_drop < 0) throw DomainError("fixed part degree must be >= 0");
    if (fixed_drop > top_chern)
        throw DomainError("fixed part " + fixed_drop.str() + " exceeds top Chern class " + top_chern.str());
    return top_chern - fixed_drop;
}

enum class SurfaceKind { k3, abelian };

/// Invariants of the surface bundle from which an entry's h0 can be re-derived.
struct SurfaceBundleData {
    SurfaceKind surface;
    Integer rank;
    Integer c1sq;
    Integer c2;
};

struct ProjectionDatum {
    std::string name;
    std::string variety;
    int ambient_dim = 0;
    std::optional<Integer> top_chern;  // nullopt = not stated
    std::optional<Integer> h0;
    Integer fixed_drop = 0;
    Integer claimed_bound;
    std::optional<SurfaceBundleData> source_bundle;
    std::string provenance;
};

inline std::vector<ProjectionDatum> catalog() {
    std::vector<ProjectionDatum> c;
    c.push_back({"GM3", "general Gushel-Mukai threefold (Fano threefold of genus 6, index 1)", 3, std::nullopt,
                 std::nullopt, 0, 3, std::nullopt,
                 "degree-3 net lifted from a genus-6 K3 hyperplane section; one non-lci base point drops the "
                 "degree by one (Hilbert-Samuel multiplicity exceeds the local length)"});
    c.push_back({"AB2-(1,6)", "general (1,6) abelian surface", 2, Integer(3), Integer(3), 0, 3,
                 SurfaceBundleData{SurfaceKind::abelian, 2, 12, 3},
                 "rank-2 bundle with c1 = L, c2 = 3, h0 = 3; the bound is sharp"});
    c.push_back({"Hilb2-g6", "Hilb^2 of a general K3 surface of genus 6", 4, Integer(6), Integer(5), 0, 6,
                 SurfaceBundleData{SurfaceKind::k3, 2, 10, 4},
                 "tautological rank-4 bundle of the minimal genus-6 bundle, c4 = 6, H^0 unchanged"});
    c.push_back({"AB3-(1,3,12)", "general abelian threefold of type (1,3,12) or (1,6,6)", 3, std::nullopt,
                 std::nullopt, 0, 8, std::nullopt, "semi-homogeneous bundle; rank and Chern data not stated"});
    c.push_back({"Hilb3-g10", "Hilb^3 of a general K3 surface of genus 10", 6, std::nullopt, std::nullopt, 0, 20,
                 std::nullopt, "tautological rank-6 bundle; top Chern class and fixed part not stated"});
    return c;
}

enum class CatalogStatus { validated, recorded_not_derivable };

constexpr std::string_view to_string(CatalogStatus s) {
    return s == CatalogStatus::validated ? "validated" : "recorded, not derivable";
}

struct CatalogCheck {
    std::string name;
    CatalogStatus status;
    std::optional<Integer> derived_bound;
    std::optional<Integer> derived_h0;
};

/// Raised when a recorded bound disagrees with the one re-derived from its invariants.
class CatalogMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline Integer source_euler_char(const SurfaceBundleData& b) {
    return b.surface == SurfaceKind::k3 ? euler_char_k3(b.rank, b.c1sq, b.c2)
                                        : euler_char_abelian_surface(b.rank, b.c1sq, b.c2);
}

inline std::vector<CatalogCheck> validate_catalog(std::span<const ProjectionDatum> entries) {
    std::vector<CatalogCheck> out;
    for (const auto& e : entries) {
        if (!e.top_chern) {
            out.push_back({e.name, CatalogStatus::recorded_not_derivable, std::nullopt, std::nullopt});
            continue;
        }
        const Integer derived = general_degree_bound(*e.top_chern, e.fixed_drop);
        if (derived != e.claimed_bound)
            throw CatalogMismatch(e.name + ": derived bound " + derived.str() + " != claimed " +
                                  e.claimed_bound.str());
        std::optional<Integer> h0;
        if (e.source_bundle) {
            h0 = source_euler_char(*e.source_bundle);
            if (e.h0 && *h0 != *e.h0)
                throw CatalogMismatch(e.name + ": h0 from Riemann-Roch " + h0->str() + " != recorded " +
                                      e.h0->str());
        }
        if (e.h0 && *e.h0 < e.ambient_dim + 1)
            throw CatalogMismatch(e.name + ": h0 " + e.h0->str() + " too small for a map to P^" +
                                  std::to_string(e.ambient_dim));
        out.push_back({e.name, CatalogStatus::validated, derived, h0});
    }
    return out;
}

inline std::vector<CatalogCheck> validate_catalog() {
    const auto c = catalog();
    return validate_catalog(c);
}

}  // namespace irrk3
