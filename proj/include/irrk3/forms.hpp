#pragma once

// Homogeneous forms in three variables (x, y, z) over a prime field, plus the
// small dense linear algebra the fiber experiments need.

#include "irrk3/prime_field.hpp"
#include "irrk3/univariate.hpp"

#include <array>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace irrk3::ff {

using Exponent = std::array<int, 3>;

inline std::size_t monomial_count(int degree) {
    return degree < 0 ? 0 : static_cast<std::size_t>((degree + 1) * (degree + 2) / 2);
}

/// Position of x^i y^j z^(d-i-j): i descending, then j descending.
inline std::size_t monomial_index(int degree, int i, int j) {
    const int t = degree - i;
    return static_cast<std::size_t>(t * (t + 1) / 2 + (degree - i - j));
}

inline std::vector<Exponent> monomials(int degree) {
    std::vector<Exponent> out;
    out.reserve(monomial_count(degree));
    for (int i = degree; i >= 0; --i)
        for (int j = degree - i; j >= 0; --j) out.push_back({i, j, degree - i - j});
    return out;
}

struct Form {
    int degree = 0;
    std::vector<Elem> coeffs{0};  // indexed by monomial_index

    Form() = default;
    explicit Form(int d) : degree(d), coeffs(monomial_count(d), 0) {
        if (d < 0) throw std::invalid_argument("negative form degree");
    }
    Form(int d, std::vector<Elem> c) : degree(d), coeffs(std::move(c)) {
        if (coeffs.size() != monomial_count(d)) throw std::invalid_argument("coefficient count does not match degree");
    }

    Elem& at(int i, int j) { return coeffs[monomial_index(degree, i, j)]; }
    Elem at(int i, int j) const { return coeffs[monomial_index(degree, i, j)]; }
    bool is_zero() const {
        for (Elem c : coeffs)
            if (c) return false;
        return true;
    }

    friend bool operator==(const Form&, const Form&) = default;
};

inline Form add(const PrimeField& F, const Form& a, const Form& b) {
    if (a.degree != b.degree) throw std::invalid_argument("adding forms of different degree");
    Form r(a.degree);
    for (std::size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] = F.add(a.coeffs[i], b.coeffs[i]);
    return r;
}

inline Form sub(const PrimeField& F, const Form& a, const Form& b) {
    if (a.degree != b.degree) throw std::invalid_argument("subtracting forms of different degree");
    Form r(a.degree);
    for (std::size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] = F.sub(a.coeffs[i], b.coeffs[i]);
    return r;
}

inline Form scale(const PrimeField& F, const Form& a, Elem s) {
    Form r(a);
    for (auto& c : r.coeffs) c = F.mul(c, s);
    return r;
}

inline Form mul(const PrimeField& F, const Form& a, const Form& b) {
    Form r(a.degree + b.degree);
    const auto ma = monomials(a.degree);
    const auto mb = monomials(b.degree);
    for (std::size_t s = 0; s < ma.size(); ++s) {
        if (a.coeffs[s] == 0) continue;
        for (std::size_t t = 0; t < mb.size(); ++t) {
            if (b.coeffs[t] == 0) continue;
            Elem& dst = r.at(ma[s][0] + mb[t][0], ma[s][1] + mb[t][1]);
            dst = F.add(dst, F.mul(a.coeffs[s], b.coeffs[t]));
        }
    }
    return r;
}

inline Elem eval(const PrimeField& F, const Form& f, const Point& p) {
    Elem r = 0;
    const auto ms = monomials(f.degree);
    for (std::size_t s = 0; s < ms.size(); ++s) {
        if (f.coeffs[s] == 0) continue;
        Elem term = f.coeffs[s];
        for (int v = 0; v < 3; ++v) term = F.mul(term, F.pow(p[v], static_cast<std::uint64_t>(ms[s][v])));
        r = F.add(r, term);
    }
    return r;
}

inline std::uint64_t binomial_u64(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return r;
}

/// Coefficient vector (over the monomials of f's degree) of the linear
/// functional f -> (Hasse derivative D^order f)(p).
inline std::vector<Elem> hasse_functional(const PrimeField& F, int degree, const Exponent& order, const Point& p) {
    const auto ms = monomials(degree);
    std::vector<Elem> row(ms.size(), 0);
    for (std::size_t s = 0; s < ms.size(); ++s) {
        Elem term = 1;
        for (int v = 0; v < 3; ++v) {
            const int e = ms[s][v];
            if (e < order[v]) {
                term = 0;
                break;
            }
            term = F.mul(term, F.from_int(static_cast<std::int64_t>(binomial_u64(e, order[v]) % F.size())));
            term = F.mul(term, F.pow(p[v], static_cast<std::uint64_t>(e - order[v])));
        }
        row[s] = term;
    }
    return row;
}

/// Linear conditions on forms of the given degree expressing vanishing to
/// order >= m at p: all Hasse derivatives of order m-1 vanish (Euler's
/// identity supplies the lower orders when the characteristic exceeds the
/// degree).  If m exceeds the degree only the zero form qualifies.
inline std::vector<std::vector<Elem>> vanishing_conditions(const PrimeField& F, int degree, int m, const Point& p) {
    std::vector<std::vector<Elem>> rows;
    if (m <= 0) return rows;
    if (m - 1 > degree) {
        for (std::size_t s = 0; s < monomial_count(degree); ++s) {
            std::vector<Elem> row(monomial_count(degree), 0);
            row[s] = 1;
            rows.push_back(std::move(row));
        }
        return rows;
    }
    for (const auto& order : monomials(m - 1)) rows.push_back(hasse_functional(F, degree, order, p));
    return rows;
}

using Matrix3 = std::array<std::array<Elem, 3>, 3>;

inline Matrix3 matmul(const PrimeField& F, const Matrix3& a, const Matrix3& b) {
    Matrix3 r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) r[i][j] = F.add(r[i][j], F.mul(a[i][k], b[k][j]));
    return r;
}

inline Point apply(const PrimeField& F, const Matrix3& m, const Point& p) {
    Point r{};
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) r[i] = F.add(r[i], F.mul(m[i][k], p[k]));
    return r;
}

inline Elem det3(const PrimeField& F, const Matrix3& m) {
    auto minor = [&](int a, int b, int c, int d) { return F.sub(F.mul(m[1][a], m[2][b]), F.mul(m[1][c], m[2][d])); };
    Elem r = F.mul(m[0][0], minor(1, 2, 2, 1));
    r = F.sub(r, F.mul(m[0][1], minor(0, 2, 2, 0)));
    return F.add(r, F.mul(m[0][2], minor(0, 1, 1, 0)));
}

inline Matrix3 inverse3(const PrimeField& F, const Matrix3& m) {
    const Elem d = det3(F, m);
    if (d == 0) throw DomainError("singular coordinate change");
    const Elem inv = F.inv(d);
    Matrix3 r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const int r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
            r[i][j] = F.mul(inv, F.sub(F.mul(m[r0][c0], m[r1][c1]), F.mul(m[r0][c1], m[r1][c0])));
        }
    return r;
}

/// The form x -> f(m x).
inline Form compose_linear(const PrimeField& F, const Form& f, const Matrix3& m) {
    std::array<Form, 3> lin;
    for (int v = 0; v < 3; ++v) {
        lin[v] = Form(1);
        lin[v].at(1, 0) = m[v][0];
        lin[v].at(0, 1) = m[v][1];
        lin[v].at(0, 0) = m[v][2];
    }
    std::array<std::vector<Form>, 3> powers;
    for (int v = 0; v < 3; ++v) {
        Form one(0);
        one.coeffs[0] = 1;
        powers[v].push_back(one);
        for (int e = 1; e <= f.degree; ++e) powers[v].push_back(mul(F, powers[v].back(), lin[v]));
    }
    Form r(f.degree);
    const auto ms = monomials(f.degree);
    for (std::size_t s = 0; s < ms.size(); ++s) {
        if (f.coeffs[s] == 0) continue;
        Form term = mul(F, mul(F, powers[0][ms[s][0]], powers[1][ms[s][1]]), powers[2][ms[s][2]]);
        r = add(F, r, scale(F, term, f.coeffs[s]));
    }
    return r;
}

/// f(u, y, 1) as a polynomial in y for fixed u.
inline UPoly restrict_to_vertical_line(const PrimeField& F, const Form& f, Elem u) {
    std::vector<Elem> c(static_cast<std::size_t>(f.degree + 1), 0);
    const auto ms = monomials(f.degree);
    for (std::size_t s = 0; s < ms.size(); ++s) {
        if (f.coeffs[s] == 0) continue;
        c[static_cast<std::size_t>(ms[s][1])] =
            F.add(c[static_cast<std::size_t>(ms[s][1])], F.mul(f.coeffs[s], F.pow(u, static_cast<std::uint64_t>(ms[s][0]))));
    }
    return UPoly(std::move(c));
}

/// Normalizes a nonzero point so that its last nonzero coordinate is 1.
inline Point normalize(const PrimeField& F, Point p) {
    for (int v = 2; v >= 0; --v) {
        if (p[v] != 0) {
            const Elem inv = F.inv(p[v]);
            for (auto& c : p) c = F.mul(c, inv);
            return p;
        }
    }
    throw DomainError("the zero vector is not a projective point");
}

// ---------------------------------------------------------------------------
// Dense linear algebra

using DenseMatrix = std::vector<std::vector<Elem>>;

/// In-place reduced row echelon form; returns pivot columns.
inline std::vector<std::size_t> row_reduce(const PrimeField& F, DenseMatrix& a) {
    std::vector<std::size_t> pivots;
    if (a.empty()) return pivots;
    const std::size_t cols = a[0].size();
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < a.size(); ++col) {
        std::size_t piv = row;
        while (piv < a.size() && a[piv][col] == 0) ++piv;
        if (piv == a.size()) continue;
        std::swap(a[piv], a[row]);
        const Elem inv = F.inv(a[row][col]);
        for (auto& x : a[row]) x = F.mul(x, inv);
        for (std::size_t r = 0; r < a.size(); ++r) {
            if (r == row || a[r][col] == 0) continue;
            const Elem f = a[r][col];
            for (std::size_t c = col; c < cols; ++c) a[r][c] = F.sub(a[r][c], F.mul(f, a[row][c]));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

inline std::size_t rank(const PrimeField& F, DenseMatrix a) { return row_reduce(F, a).size(); }

/// Basis of { v : a v = 0 } for a matrix with the given column count.
inline std::vector<std::vector<Elem>> nullspace(const PrimeField& F, DenseMatrix a, std::size_t cols) {
    const auto pivots = row_reduce(F, a);
    std::vector<bool> is_pivot(cols, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::vector<Elem>> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Elem> v(cols, 0);
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = F.neg(a[r][free]);
        basis.push_back(std::move(v));
    }
    return basis;
}

inline Elem determinant(const PrimeField& F, DenseMatrix a) {
    const std::size_t n = a.size();
    Elem det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != col) {
            std::swap(a[piv], a[col]);
            det = F.neg(det);
        }
        det = F.mul(det, a[col][col]);
        const Elem inv = F.inv(a[col][col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            if (a[r][col] == 0) continue;
            const Elem f = F.mul(a[r][col], inv);
            for (std::size_t c = col; c < n; ++c) a[r][c] = F.sub(a[r][c], F.mul(f, a[col][c]));
        }
    }
    return det;
}

/// Sylvester resultant of two polynomials with formal degrees m and n.
inline Elem sylvester_resultant(const PrimeField& F, const UPoly& f, int m, const UPoly& g, int n) {
    const int size = m + n;
    if (size == 0) return 1;
    DenseMatrix s(static_cast<std::size_t>(size), std::vector<Elem>(static_cast<std::size_t>(size), 0));
    for (int r = 0; r < n; ++r)
        for (int i = 0; i <= m; ++i) s[r][r + i] = f.coeff(static_cast<std::size_t>(m - i));
    for (int r = 0; r < m; ++r)
        for (int i = 0; i <= n; ++i) s[n + r][r + i] = g.coeff(static_cast<std::size_t>(n - i));
    return determinant(F, std::move(s));
}

}  // namespace irrk3::ff
