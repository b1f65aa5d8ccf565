#pragma once

// Exact invariant arithmetic for polarized K3 surfaces and the rank-2 bundles
// whose sections define projections S --> P^2.
//
// The Riemann-Roch formulas below are standard background:
//   K3 surface:      chi(E) = 2 rank + c1^2/2 - c2
//   abelian surface: chi(E) = c1^2/2 - c2

#include "irrk3/integer.hpp"

#include <algorithm>

namespace irrk3 {

struct PolarizedK3 {
    Integer genus;
    Integer l_selfint;

    explicit PolarizedK3(Integer g) : genus(std::move(g)), l_selfint(2 * genus - 2) {
        if (genus < 2) throw DomainError("K3 genus must be >= 2, got " + genus.str());
    }
};

struct MukaiVector {
    Integer rank;
    Integer c1sq;
    Integer s;  // chi - rank

    friend bool operator==(const MukaiVector&, const MukaiVector&) = default;
};

/// Mukai self-pairing v^2 = c1^2 - 2 rank s.
inline Integer mukai_square(const MukaiVector& v) { return v.c1sq - 2 * v.rank * v.s; }

struct BundleInvariants {
    Integer rank;
    Integer c2;
    Integer chi;
    Integer h0_expected;  // max(chi, 0), assuming h^1 = h^2 = 0
};

/// g = 2 + 2n(n+1) + k with 0 <= k < 4n + 4.
struct GenusDecomposition {
    Integer n;
    Integer k;

    Integer genus() const { return 2 + 2 * n * (n + 1) + k; }
    friend bool operator==(const GenusDecomposition&, const GenusDecomposition&) = default;
};

inline GenusDecomposition decompose_genus(const Integer& g) {
    if (g < 2) throw DomainError("genus must be >= 2, got " + g.str());
    // (2n+1)^2 <= 2(g-2) + 1 is equivalent to 2 + 2n(n+1) <= g.
    Integer n = (isqrt(2 * g - 3) - 1) / 2;
    return {n, g - 2 - 2 * n * (n + 1)};
}

inline Integer euler_char_k3(const Integer& rank, const Integer& c1sq, const Integer& c2) {
    if (!is_even(c1sq)) throw DomainError("c1^2 must be even on a K3 surface, got " + c1sq.str());
    return 2 * rank + c1sq / 2 - c2;
}

inline Integer euler_char_abelian_surface(const Integer& rank, const Integer& c1sq, const Integer& c2) {
    (void)rank;
    if (!is_even(c1sq)) throw DomainError("c1^2 must be even on an abelian surface, got " + c1sq.str());
    return c1sq / 2 - c2;
}

inline BundleInvariants bundle_invariants_k3(const PolarizedK3& s, const Integer& rank, const Integer& c2) {
    Integer chi = euler_char_k3(rank, s.l_selfint, c2);
    return {rank, c2, chi, std::max(chi, Integer{0})};
}

/// Mukai vector (rank, L^2, chi - rank) of a bundle with c1 = L on a K3 of genus g.
inline MukaiVector k3_mukai_vector(const Integer& g, const Integer& rank, const Integer& c2) {
    Integer c1sq = 2 * g - 2;
    return {rank, c1sq, euler_char_k3(rank, c1sq, c2) - rank};
}

/// Smallest c2 of a rank-2 bundle with c1 = L whose Mukai square is >= -2.
inline Integer minimal_c2(const Integer& g) {
    if (g < 2) throw DomainError("genus must be >= 2, got " + g.str());
    return ceil_div(g + 2, 2);
}

/// Polarized degree of irrationality of a general curve of genus g w.r.t. a
/// general line bundle of degree d >= g+1.
inline Integer curve_irr(const Integer& g, const Integer& d) {
    if (g < 0) throw DomainError("curve genus must be >= 0");
    if (d <= g) throw DomainError("curve formula needs d >= g+1, got d=" + d.str() + " g=" + g.str());
    return std::max(Integer(2 * g + 2 - d), floor_div(g + 3, 2));
}

}  // namespace irrk3
