#pragma once

// Dense univariate polynomials over a prime field, coefficients low degree first.

#include "irrk3/prime_field.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

namespace irrk3::ff {

struct UPoly {
    std::vector<Elem> c;

    UPoly() = default;
    explicit UPoly(std::vector<Elem> coeffs) : c(std::move(coeffs)) { trim(); }

    static UPoly constant(Elem a) { return UPoly({a}); }
    static UPoly x() { return UPoly({0, 1}); }
    /// x - r
    static UPoly linear_root(const PrimeField& F, Elem r) { return UPoly({F.neg(r), 1}); }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c.size()) - 1; }
    Elem lead() const { return c.empty() ? 0 : c.back(); }
    Elem coeff(std::size_t i) const { return i < c.size() ? c[i] : 0; }

    friend bool operator==(const UPoly&, const UPoly&) = default;
};

inline UPoly add(const PrimeField& F, const UPoly& a, const UPoly& b) {
    std::vector<Elem> r(std::max(a.c.size(), b.c.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.add(a.coeff(i), b.coeff(i));
    return UPoly(std::move(r));
}

inline UPoly sub(const PrimeField& F, const UPoly& a, const UPoly& b) {
    std::vector<Elem> r(std::max(a.c.size(), b.c.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.sub(a.coeff(i), b.coeff(i));
    return UPoly(std::move(r));
}

inline UPoly mul(const PrimeField& F, const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Elem> r(a.c.size() + b.c.size() - 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a.c[i], b.c[j]));
    }
    return UPoly(std::move(r));
}

inline UPoly scale(const PrimeField& F, const UPoly& a, Elem s) {
    std::vector<Elem> r(a.c);
    for (auto& x : r) x = F.mul(x, s);
    return UPoly(std::move(r));
}

/// (quotient, remainder)
inline std::pair<UPoly, UPoly> divmod(const PrimeField& F, const UPoly& a, const UPoly& b) {
    if (b.is_zero()) throw std::invalid_argument("polynomial division by zero");
    if (a.degree() < b.degree()) return {UPoly{}, a};
    std::vector<Elem> rem(a.c);
    std::vector<Elem> quo(a.c.size() - b.c.size() + 1, 0);
    const Elem inv_lead = F.inv(b.lead());
    for (std::size_t i = quo.size(); i-- > 0;) {
        const Elem f = F.mul(rem[i + b.c.size() - 1], inv_lead);
        quo[i] = f;
        if (f == 0) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j) rem[i + j] = F.sub(rem[i + j], F.mul(f, b.c[j]));
    }
    return {UPoly(std::move(quo)), UPoly(std::move(rem))};
}

inline UPoly mod(const PrimeField& F, const UPoly& a, const UPoly& b) { return divmod(F, a, b).second; }

inline UPoly monic(const PrimeField& F, const UPoly& a) {
    return a.is_zero() ? a : scale(F, a, F.inv(a.lead()));
}

/// Monic gcd; gcd(0, 0) = 0.
inline UPoly gcd(const PrimeField& F, UPoly a, UPoly b) {
    while (!b.is_zero()) {
        UPoly r = mod(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(F, a);
}

inline Elem eval(const PrimeField& F, const UPoly& a, Elem x) {
    Elem r = 0;
    for (std::size_t i = a.c.size(); i-- > 0;) r = F.add(F.mul(r, x), a.c[i]);
    return r;
}

/// base^e mod m
inline UPoly powmod(const PrimeField& F, UPoly base, std::uint64_t e, const UPoly& m) {
    UPoly r = mod(F, UPoly::constant(1), m);
    base = mod(F, base, m);
    for (; e; e >>= 1) {
        if (e & 1) r = mod(F, mul(F, r, base), m);
        base = mod(F, mul(F, base, base), m);
    }
    return r;
}

/// Number of times (x - r) divides a; a must be nonzero.
inline int root_multiplicity(const PrimeField& F, UPoly a, Elem r) {
    if (a.is_zero()) throw std::invalid_argument("root multiplicity of the zero polynomial");
    const UPoly lin = UPoly::linear_root(F, r);
    int m = 0;
    for (;;) {
        auto [q, rem] = divmod(F, a, lin);
        if (!rem.is_zero()) return m;
        a = std::move(q);
        ++m;
    }
}

/// Distinct roots in the prime field, sorted ascending.
inline std::vector<Elem> rational_roots(const PrimeField& F, const UPoly& a, std::mt19937_64& rng) {
    if (a.is_zero()) throw std::invalid_argument("roots of the zero polynomial");
    if (a.degree() <= 0) return {};
    // Product of the distinct linear factors.
    const UPoly xq = powmod(F, UPoly::x(), F.size(), a);
    UPoly split = gcd(F, a, sub(F, xq, UPoly::x()));
    std::vector<Elem> roots;
    std::vector<UPoly> work{split};
    while (!work.empty()) {
        UPoly f = std::move(work.back());
        work.pop_back();
        if (f.degree() <= 0) continue;
        if (f.degree() == 1) {
            roots.push_back(F.neg(F.div(f.c[0], f.c[1])));
            continue;
        }
        if (F.size() == 2) {
            for (Elem r : {Elem{0}, Elem{1}})
                if (eval(F, f, r) == 0) roots.push_back(r);
            continue;
        }
        // Equal-degree splitting with (x + delta)^((q-1)/2) - 1.
        for (;;) {
            const UPoly shifted({F.random(rng), 1});
            UPoly h = sub(F, powmod(F, shifted, (F.size() - 1) / 2, f), UPoly::constant(1));
            UPoly d = gcd(F, f, h);
            if (d.degree() > 0 && d.degree() < f.degree()) {
                work.push_back(divmod(F, f, d).first);
                work.push_back(std::move(d));
                break;
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

/// Unique polynomial of degree < xs.size() through the given values (Newton form).
inline UPoly interpolate(const PrimeField& F, const std::vector<Elem>& xs, const std::vector<Elem>& ys) {
    if (xs.size() != ys.size()) throw std::invalid_argument("interpolation sizes differ");
    const std::size_t n = xs.size();
    std::vector<Elem> dd(ys);
    for (std::size_t level = 1; level < n; ++level)
        for (std::size_t i = n - 1; i >= level; --i)
            dd[i] = F.div(F.sub(dd[i], dd[i - 1]), F.sub(xs[i], xs[i - level]));
    UPoly result;
    for (std::size_t i = n; i-- > 0;) {
        result = mul(F, result, UPoly::linear_root(F, xs[i]));
        result = add(F, result, UPoly::constant(dd[i]));
    }
    return result;
}

}  // namespace irrk3::ff
