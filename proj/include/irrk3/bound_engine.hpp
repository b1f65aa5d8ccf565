#pragma once

// Upper bounds for the polarized degree of irrationality of a K3 surface of
// genus g, obtained from a rank-2 bundle E with c1(E) = L by imposing fat
// points on a net of sections of E.
//
// Model (expected dimension, general position):
//   a point of multiplicity m costs m(m+1) linear conditions on H^0(E)
//   and lowers the degree of the induced map by m^2;
//   a net must survive, so cost <= h0(E) - 3 = g - c2.

#include "irrk3/core_arith.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <ostream>
#include <string_view>
#include <utility>
#include <vector>

namespace irrk3 {

/// Vanishing orders imposed at distinct general points, largest first.
struct MultiplicityPlan {
    std::vector<Integer> mults;

    std::size_t points() const { return mults.size(); }
    bool empty() const { return mults.empty(); }
    friend bool operator==(const MultiplicityPlan&, const MultiplicityPlan&) = default;
    friend auto operator<=>(const MultiplicityPlan& a, const MultiplicityPlan& b) {
        return std::lexicographical_compare_three_way(a.mults.begin(), a.mults.end(), b.mults.begin(),
                                                      b.mults.end(), [](const Integer& x, const Integer& y) {
                                                          return x < y   ? std::strong_ordering::less
                                                                 : y < x ? std::strong_ordering::greater
                                                                         : std::strong_ordering::equal;
                                                      });
    }
};

inline std::ostream& operator<<(std::ostream& os, const MultiplicityPlan& p) {
    os << '[';
    for (std::size_t i = 0; i < p.mults.size(); ++i) os << (i ? "," : "") << p.mults[i];
    return os << ']';
}

/// Linear conditions imposed on sections of a rank-2 bundle.
inline Integer condition_cost(const MultiplicityPlan& plan) {
    Integer c = 0;
    for (const auto& m : plan.mults) c += m * (m + 1);
    return c;
}

inline Integer degree_drop(const MultiplicityPlan& plan) {
    Integer d = 0;
    for (const auto& m : plan.mults) d += m * m;
    return d;
}

inline Integer degree_bound(const Integer& c2, const MultiplicityPlan& plan) {
    for (const auto& m : plan.mults)
        if (m < 1) throw DomainError("plan multiplicities must be >= 1");
    Integer d = c2 - degree_drop(plan);
    if (d < 0) throw DomainError("plan drops the degree below zero (c2=" + c2.str() + ")");
    return d;
}

/// 2 + n + ceil(k/2) - floor(k/4) for (n, k) = decompose_genus(g).
inline Integer paper_bound(const Integer& g) {
    const auto [n, k] = decompose_genus(g);
    return 2 + n + ceil_div(k, 2) - floor_div(k, 4);
}

enum class BoundSource { paper_formula, optimizer };

constexpr std::string_view to_string(BoundSource s) {
    return s == BoundSource::paper_formula ? "paper_formula" : "optimizer";
}

struct BoundCertificate {
    Integer genus;
    Integer c2;
    MultiplicityPlan plan;
    Integer predicted_degree;
    Integer h0;
    Integer slack;  // (h0 - 3) - condition_cost
    BoundSource source = BoundSource::optimizer;
    bool heuristic = false;

    /// Checks slack >= 0, h0 - cost >= 3 and the degree identity.
    bool consistent() const {
        const Integer cost = condition_cost(plan);
        return slack >= 0 && h0 - cost >= 3 && slack == h0 - 3 - cost &&
               predicted_degree == c2 - degree_drop(plan) && predicted_degree >= 0 &&
               h0 == euler_char_k3(2, 2 * genus - 2, c2);
    }
};

inline BoundCertificate make_certificate(const Integer& g, const Integer& c2, MultiplicityPlan plan,
                                         BoundSource source, bool heuristic = false) {
    const Integer h0 = bundle_invariants_k3(PolarizedK3(g), 2, c2).h0_expected;
    const Integer cost = condition_cost(plan);
    if (h0 - cost < 3)
        throw DomainError("plan leaves no net of sections (h0=" + h0.str() + ", cost=" + cost.str() + ")");
    Integer degree = degree_bound(c2, plan);
    return {g, c2, std::move(plan), std::move(degree), h0, h0 - 3 - cost, source, heuristic};
}

/// The construction behind the closed form: minimal bundle, one point of
/// order n and floor(k/4) simple points.
/// Largest number of points a materialized certificate plan may hold.
inline constexpr std::int64_t kMaxPlanPoints = 1'000'000;

inline BoundCertificate paper_certificate(const Integer& g) {
    const auto [n, k] = decompose_genus(g);
    if (floor_div(k, 4) > kMaxPlanPoints)
        throw DomainError("closed-form plan for genus " + g.str() + " has " + floor_div(k, 4).str() +
                          " simple points, more than can be listed");
    MultiplicityPlan plan;
    if (n > 0) plan.mults.push_back(n);
    for (Integer i = 0; i < floor_div(k, 4); ++i) plan.mults.emplace_back(1);
    return make_certificate(g, minimal_c2(g), std::move(plan), BoundSource::paper_formula);
}

/// Width of the c2 window searched above the minimal value.
inline constexpr int kC2SearchWindow = 8;

/// Largest genus accepted by the exhaustive search (its tables grow like g^1.5).
inline constexpr std::int64_t kExhaustiveGenusLimit = 20000;

namespace detail {

/// Lexicographic objective for a fixed c2: maximal drop, then fewest points.
struct PlanScore {
    std::int64_t drop = 0;
    std::int64_t points = 0;

    friend bool operator==(const PlanScore&, const PlanScore&) = default;
    bool better_than(const PlanScore& o) const {
        return drop != o.drop ? drop > o.drop : points < o.points;
    }
    PlanScore plus(std::int64_t m) const { return {drop + m * m, points + 1}; }
};

inline std::int64_t point_cost(std::int64_t m) { return m * (m + 1); }

/// best[m][b]: optimal score over plans with parts <= m and cost <= b.
/// Dominance over this table covers the complete plan space.
class PlanTable {
public:
    explicit PlanTable(std::int64_t budget) : budget_(std::max<std::int64_t>(budget, 0)) {
        max_mult_ = 0;
        while (point_cost(max_mult_ + 1) <= budget_) ++max_mult_;
        best_.assign(static_cast<std::size_t>(max_mult_ + 1),
                     std::vector<PlanScore>(static_cast<std::size_t>(budget_ + 1)));
        for (std::int64_t m = 1; m <= max_mult_; ++m) {
            auto& row = best_[static_cast<std::size_t>(m)];
            const auto& prev = best_[static_cast<std::size_t>(m - 1)];
            const std::int64_t c = point_cost(m);
            for (std::int64_t b = 0; b <= budget_; ++b) {
                PlanScore s = prev[static_cast<std::size_t>(b)];
                if (b >= c) {
                    PlanScore with = row[static_cast<std::size_t>(b - c)].plus(m);
                    if (with.better_than(s)) s = with;
                }
                row[static_cast<std::size_t>(b)] = s;
            }
        }
    }

    PlanScore score(std::int64_t budget) const { return at(max_mult_, std::min(budget, budget_)); }

    /// Lexicographically smallest non-increasing plan reaching score(budget).
    std::vector<std::int64_t> plan(std::int64_t budget) const {
        budget = std::min(budget, budget_);
        std::vector<std::int64_t> out;
        PlanScore target = score(budget);
        std::int64_t cap = max_mult_;
        while (target.points > 0) {
            bool found = false;
            for (std::int64_t m = 1; m <= cap; ++m) {
                const std::int64_t c = point_cost(m);
                if (c > budget) break;
                if (at(m, budget - c).plus(m) == target) {
                    out.push_back(m);
                    budget -= c;
                    target = at(m, budget);
                    cap = m;
                    found = true;
                    break;
                }
            }
            if (!found) throw std::logic_error("plan table reconstruction failed");
        }
        return out;
    }

private:
    const PlanScore& at(std::int64_t m, std::int64_t b) const {
        return best_[static_cast<std::size_t>(m)][static_cast<std::size_t>(b)];
    }

    std::int64_t budget_;
    std::int64_t max_mult_;
    std::vector<std::vector<PlanScore>> best_;
};

/// Largest m with m(m+1) <= budget.
inline Integer largest_affordable(const Integer& budget) {
    if (budget < 2) return 0;
    Integer m = (isqrt(4 * budget + 1) - 1) / 2;
    return m;
}

inline MultiplicityPlan greedy_plan(Integer budget) {
    MultiplicityPlan plan;
    for (Integer m = largest_affordable(budget); m >= 1; m = largest_affordable(budget)) {
        plan.mults.push_back(m);
        budget -= m * (m + 1);
    }
    return plan;
}

/// Ordering used to pick among candidate certificates: lower degree, fewer
/// points, smaller c2, lexicographically smaller plan.
inline bool preferred(const BoundCertificate& a, const BoundCertificate& b) {
    if (a.predicted_degree != b.predicted_degree) return a.predicted_degree < b.predicted_degree;
    if (a.plan.points() != b.plan.points()) return a.plan.points() < b.plan.points();
    if (a.c2 != b.c2) return a.c2 < b.c2;
    return a.plan < b.plan;
}

}  // namespace detail

/// Minimizes the predicted degree over c2 in [minimal_c2, minimal_c2 + 8]
/// (and c2 <= g so that h0 >= 3) and over all feasible plans.
inline BoundCertificate optimize_bound(const Integer& g, bool exhaustive) {
    const Integer c2_min = minimal_c2(g);
    const Integer c2_max = std::min(Integer(c2_min + kC2SearchWindow), g);

    std::optional<detail::PlanTable> table;
    if (exhaustive) {
        if (g > kExhaustiveGenusLimit)
            throw DomainError("exhaustive search supports g <= " + std::to_string(kExhaustiveGenusLimit));
        table.emplace(to_int64(g - c2_min));
    }

    std::optional<BoundCertificate> best;
    for (Integer c2 = c2_min; c2 <= c2_max; ++c2) {
        const Integer budget = g - c2;  // h0 - 3
        MultiplicityPlan plan;
        if (table) {
            for (auto m : table->plan(to_int64(budget))) plan.mults.emplace_back(m);
        } else {
            plan = detail::greedy_plan(budget);
        }
        auto cert = make_certificate(g, c2, std::move(plan), BoundSource::optimizer, !exhaustive);
        if (!best || detail::preferred(cert, *best)) best = std::move(cert);
    }
    return *best;
}

inline constexpr std::array<int, 13> kTabulatedGenera{6, 8, 10, 12, 14, 16, 18, 20, 22, 24, 26, 42, 62};

struct TableRow {
    Integer genus;
    Integer bound;
    friend bool operator==(const TableRow&, const TableRow&) = default;
};

inline std::vector<TableRow> reproduce_table() {
    std::vector<TableRow> rows;
    for (int g : kTabulatedGenera) rows.push_back({g, paper_bound(g)});
    return rows;
}

}  // namespace irrk3
