#pragma once

// Exact check of deg(phi_V) = c_2(E) - deg Z(V^v) on the projective plane.
//
// E = O(a) + O(b) on P^2 over GF(q).  A net V^v = <s0, s1, s2> of sections,
// s_i = (p_i, q_i), induces the map
//     x -> p(x) x q(x) = (w12, -w02, w01),   w_ij = p_i q_j - p_j q_i,
// whose fiber over [alpha:beta:gamma] is the zero locus of
// sigma = alpha s0 + beta s1 + gamma s2 away from the common zeros of the net.
// The zero scheme of sigma has length ab; the fiber degree is ab minus the
// local intersection multiplicities of (P_sigma, Q_sigma) at the base points.
// Those multiplicities are read off as root multiplicities of a univariate
// resultant after a random change of coordinates.

#include "irrk3/bound_engine.hpp"
#include "irrk3/forms.hpp"
#include "irrk3/prime_field.hpp"
#include "irrk3/univariate.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace irrk3::ff {

struct SplitBundle {
    int a = 1;
    int b = 1;

    SplitBundle() = default;
    SplitBundle(int a_, int b_) : a(a_), b(b_) {
        if (a < 1 || b < 1) throw DomainError("split bundle degrees must be >= 1");
    }
    std::int64_t c2() const { return static_cast<std::int64_t>(a) * b; }
    std::int64_t h0() const {
        return static_cast<std::int64_t>(monomial_count(a) + monomial_count(b));
    }
    int det_degree() const { return a + b; }
    friend bool operator==(const SplitBundle&, const SplitBundle&) = default;
};

struct BasePoint {
    Point point;
    int multiplicity = 1;
    friend bool operator==(const BasePoint&, const BasePoint&) = default;
};

using BasePlan = std::vector<BasePoint>;

inline MultiplicityPlan multiplicity_plan(const BasePlan& plan) {
    MultiplicityPlan p;
    for (const auto& bp : plan) p.mults.emplace_back(bp.multiplicity);
    return p;
}

inline std::int64_t predicted_degree(const SplitBundle& e, const BasePlan& plan) {
    std::int64_t drop = 0;
    for (const auto& bp : plan) drop += static_cast<std::int64_t>(bp.multiplicity) * bp.multiplicity;
    return e.c2() - drop;
}

struct Section {
    Form p;  // degree a
    Form q;  // degree b
    friend bool operator==(const Section&, const Section&) = default;
};

struct SectionTriple {
    std::array<Section, 3> s;
    friend bool operator==(const SectionTriple&, const SectionTriple&) = default;
};

/// Raised when no admissible triple is found within the retry budget.
class SamplingFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr int kSampleRetries = 16;
inline constexpr int kCoordinateRetries = 8;
inline constexpr int kTripleResamples = 4;

inline std::vector<Elem> coefficient_vector(const Section& s) {
    std::vector<Elem> v(s.p.coeffs);
    v.insert(v.end(), s.q.coeffs.begin(), s.q.coeffs.end());
    return v;
}

inline Section section_from_vector(const SplitBundle& e, const std::vector<Elem>& v) {
    const auto na = monomial_count(e.a);
    return {Form(e.a, std::vector<Elem>(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(na))),
            Form(e.b, std::vector<Elem>(v.begin() + static_cast<std::ptrdiff_t>(na), v.end()))};
}

inline Section combine(const PrimeField& F, const SectionTriple& t, const Point& coeffs) {
    Section r{Form(t.s[0].p.degree), Form(t.s[0].q.degree)};
    for (int i = 0; i < 3; ++i) {
        r.p = add(F, r.p, scale(F, t.s[i].p, coeffs[i]));
        r.q = add(F, r.q, scale(F, t.s[i].q, coeffs[i]));
    }
    return r;
}

/// (w12, -w02, w01)
inline std::array<Form, 3> wedge_map(const PrimeField& F, const SectionTriple& t) {
    auto w = [&](int i, int j) { return sub(F, mul(F, t.s[i].p, t.s[j].q), mul(F, t.s[j].p, t.s[i].q)); };
    const Form w02 = w(0, 2);
    return {w(1, 2), scale(F, w02, F.neg(1)), w(0, 1)};
}

inline bool sections_independent(const PrimeField& F, const SectionTriple& t) {
    return rank(F, {coefficient_vector(t.s[0]), coefficient_vector(t.s[1]), coefficient_vector(t.s[2])}) == 3;
}

inline bool wedges_independent(const PrimeField& F, const SectionTriple& t) {
    const auto w = wedge_map(F, t);
    return rank(F, {w[0].coeffs, w[1].coeffs, w[2].coeffs}) == 3;
}

/// Jet conditions of the plan on coefficient vectors of H^0(O(a) + O(b)).
inline DenseMatrix jet_condition_matrix(const PrimeField& F, const SplitBundle& e, const BasePlan& plan) {
    const std::size_t na = monomial_count(e.a), nb = monomial_count(e.b);
    DenseMatrix rows;
    for (const auto& bp : plan) {
        for (auto& r : vanishing_conditions(F, e.a, bp.multiplicity, bp.point)) {
            r.resize(na + nb, 0);
            rows.push_back(std::move(r));
        }
        for (auto& r : vanishing_conditions(F, e.b, bp.multiplicity, bp.point)) {
            std::vector<Elem> row(na, 0);
            row.insert(row.end(), r.begin(), r.end());
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

inline void check_base_plan(const PrimeField& F, const BasePlan& plan) {
    std::set<Point> seen;
    for (const auto& bp : plan) {
        if (bp.multiplicity < 1) throw DomainError("base point multiplicity must be >= 1");
        for (Elem c : bp.point)
            if (c >= F.size()) throw DomainError("base point coordinate outside the field");
        if (!seen.insert(normalize(F, bp.point)).second) throw DomainError("base points must be distinct");
    }
}

/// Basis of the sections satisfying the plan's jet conditions.
inline std::vector<std::vector<Elem>> conditioned_sections(const PrimeField& F, const SplitBundle& e,
                                                           const BasePlan& plan) {
    return nullspace(F, jet_condition_matrix(F, e, plan), static_cast<std::size_t>(e.h0()));
}

/// Three independent sections, uniform in the solution space of the jet
/// conditions, with independent wedges.
inline SectionTriple sample_sections(const SplitBundle& e, const BasePlan& plan, const PrimeField& F,
                                     std::mt19937_64& rng) {
    check_base_plan(F, plan);
    const Integer cost = condition_cost(multiplicity_plan(plan));
    if (Integer(e.h0()) - cost < 3)
        throw DomainError("infeasible plan: " + cost.str() + " conditions on " + std::to_string(e.h0()) +
                          " sections leave no net");
    const auto basis = conditioned_sections(F, e, plan);
    if (basis.size() < 3) throw DomainError("jet conditions leave fewer than three sections");
    const std::size_t n = static_cast<std::size_t>(e.h0());
    for (int attempt = 0; attempt < kSampleRetries; ++attempt) {
        SectionTriple t;
        for (auto& sec : t.s) {
            std::vector<Elem> v(n, 0);
            for (const auto& b : basis) {
                const Elem r = F.random(rng);
                for (std::size_t i = 0; i < n; ++i) v[i] = F.add(v[i], F.mul(r, b[i]));
            }
            sec = section_from_vector(e, v);
        }
        if (sections_independent(F, t) && wedges_independent(F, t)) return t;
    }
    throw SamplingFailure("no triple with independent sections and wedges after " +
                          std::to_string(kSampleRetries) + " attempts");
}

enum class MeasureStatus { ok, degenerate };

struct FiberMeasurement {
    MeasureStatus status = MeasureStatus::degenerate;
    std::int64_t degree = 0;
    std::vector<int> local_multiplicities;  // one per base point
    int coordinate_attempts = 0;
    int rational_fiber_points = 0;  // rational points outside the base locus, each checked by evaluation
    int unannounced_base_points = 0;  // rational common zeros of the whole net missing from the plan
    std::string reason;
};

namespace detail {

inline Matrix3 random_invertible(const PrimeField& F, std::mt19937_64& rng) {
    for (;;) {
        Matrix3 m;
        for (auto& row : m)
            for (auto& c : row) c = F.random(rng);
        if (det3(F, m) != 0) return m;
    }
}

/// Resultant in y of f(u, y, 1) and g(u, y, 1) as a polynomial in u, by
/// evaluation at deg_f * deg_g + 1 points and interpolation.
inline UPoly vertical_resultant(const PrimeField& F, const Form& f, const Form& g) {
    const int n = f.degree * g.degree + 1;
    std::vector<Elem> xs, ys;
    for (int i = 0; i < n; ++i) {
        const Elem u = static_cast<Elem>(i);
        xs.push_back(u);
        ys.push_back(sylvester_resultant(F, restrict_to_vertical_line(F, f, u), f.degree,
                                         restrict_to_vertical_line(F, g, u), g.degree));
    }
    return interpolate(F, xs, ys);
}

}  // namespace detail

/// Degree of the fiber over `target` (coefficients of alpha s0 + beta s1 + gamma s2).
inline FiberMeasurement fiber_degree(const PrimeField& F, const SectionTriple& t, const Point& target,
                                     const BasePlan& plan, std::mt19937_64& rng) {
    FiberMeasurement out;
    const Section sigma = combine(F, t, target);
    if (sigma.p.is_zero() || sigma.q.is_zero()) {
        out.reason = "target section has a vanishing component";
        return out;
    }
    const int a = sigma.p.degree, b = sigma.q.degree;
    if (static_cast<std::uint64_t>(a) * b + 1 > F.size()) throw DomainError("field too small for the resultant");
    const auto wedges = wedge_map(F, t);

    for (int attempt = 1; attempt <= kCoordinateRetries; ++attempt) {
        out.coordinate_attempts = attempt;
        const Matrix3 m = detail::random_invertible(F, rng);
        const Matrix3 m_inv = inverse3(F, m);
        const Form P = compose_linear(F, sigma.p, m);
        const Form Q = compose_linear(F, sigma.q, m);

        // Leading y-coefficients are the values at [0:1:0].
        if (P.at(0, a) == 0 || Q.at(0, b) == 0) {
            out.reason = "point at infinity of the projection direction lies on the curves";
            continue;
        }
        std::vector<Point> base;
        bool collision = false;
        std::set<Elem> base_u;
        for (const auto& bp : plan) {
            const Point p = apply(F, m_inv, bp.point);
            if (p[2] == 0) {
                collision = true;
                break;
            }
            const Elem iz = F.inv(p[2]);
            const Point affine{F.mul(p[0], iz), F.mul(p[1], iz), 1};
            if (!base_u.insert(affine[0]).second) {
                collision = true;
                break;
            }
            base.push_back(affine);
        }
        if (collision) {
            out.reason = "base points not separated by the projection";
            continue;
        }

        const UPoly res = detail::vertical_resultant(F, P, Q);
        if (res.degree() != a * b) {
            out.reason = "resultant degree " + std::to_string(res.degree()) + " below " + std::to_string(a * b);
            continue;
        }

        // Multiplicities at base points; the vertical line through each base
        // point must meet the zero scheme only there.
        std::vector<int> local;
        bool separated = true;
        for (const auto& bp : base) {
            const UPoly common = gcd(F, restrict_to_vertical_line(F, P, bp[0]), restrict_to_vertical_line(F, Q, bp[0]));
            if (common.is_zero() || common.degree() != root_multiplicity(F, common, bp[1]) ||
                common.degree() == 0) {
                separated = false;
                break;
            }
            local.push_back(root_multiplicity(F, res, bp[0]));
        }
        if (!separated) {
            out.reason = "another zero shares a vertical line with a base point";
            continue;
        }

        // Every other rational root must come from a genuine common zero.
        // Zeros where all wedges vanish are base points of the net that the
        // plan does not list; they are removed from the fiber.
        int rational_points = 0, extra_base = 0;
        std::int64_t extra_total = 0;
        bool consistent = true, isolated = true;
        for (Elem u : rational_roots(F, res, rng)) {
            if (base_u.count(u)) continue;
            const UPoly common = gcd(F, restrict_to_vertical_line(F, P, u), restrict_to_vertical_line(F, Q, u));
            if (common.degree() < 1) {
                consistent = false;
                break;
            }
            for (Elem y : rational_roots(F, common, rng)) {
                const Point original = apply(F, m, Point{u, y, 1});
                if (eval(F, sigma.p, original) != 0 || eval(F, sigma.q, original) != 0) {
                    consistent = false;
                    break;
                }
                if (std::all_of(wedges.begin(), wedges.end(), [&](const Form& w) { return eval(F, w, original) == 0; })) {
                    if (common.degree() != root_multiplicity(F, common, y)) {
                        isolated = false;
                        break;
                    }
                    ++extra_base;
                    extra_total += root_multiplicity(F, res, u);
                    continue;
                }
                ++rational_points;
            }
            if (!consistent || !isolated) break;
        }
        if (!consistent) {
            out.reason = "resultant root without a common zero";
            continue;
        }
        if (!isolated) {
            out.reason = "an unlisted base point shares a vertical line with another zero";
            continue;
        }

        std::int64_t total = extra_total;
        for (int l : local) total += l;
        out.status = MeasureStatus::ok;
        out.degree = static_cast<std::int64_t>(a) * b - total;
        out.local_multiplicities = std::move(local);
        out.rational_fiber_points = rational_points;
        out.unannounced_base_points = extra_base;
        out.reason.clear();
        return out;
    }
    return out;
}

enum class ExperimentStatus { verified, degenerate, mismatch };

constexpr std::string_view to_string(ExperimentStatus s) {
    switch (s) {
        case ExperimentStatus::verified: return "verified";
        case ExperimentStatus::degenerate: return "degenerate";
        case ExperimentStatus::mismatch: return "mismatch";
    }
    return "?";
}

struct TargetRecord {
    Point target;
    FiberMeasurement measurement;
};

struct FiberExperiment {
    SplitBundle bundle;
    BasePlan base_plan;
    PrimeFieldConfig field;
    std::int64_t predicted_degree = 0;
    std::int64_t measured_degree = 0;
    int targets_tested = 0;
    int triples_sampled = 0;
    ExperimentStatus status = ExperimentStatus::degenerate;
    std::vector<TargetRecord> records;  // measurements of the final triple
    SectionTriple triple;
    std::string reason;
};

namespace detail {

inline Point random_target(const PrimeField& F, std::mt19937_64& rng) {
    for (;;) {
        Point p{F.random(rng), F.random(rng), F.random(rng)};
        if (p[0] || p[1] || p[2]) return p;
    }
}

enum class TripleOutcome { agree, disagree, too_degenerate };

/// Measures `targets` non-degenerate fibers (allowing up to 4x as many draws).
inline TripleOutcome measure_triple(const PrimeField& F, const SectionTriple& t, const BasePlan& plan, int targets,
                                    std::mt19937_64& rng, std::vector<TargetRecord>& records,
                                    std::int64_t& common) {
    records.clear();
    int ok = 0;
    for (int draw = 0; draw < 4 * targets && ok < targets; ++draw) {
        const Point target = random_target(F, rng);
        auto m = fiber_degree(F, t, target, plan, rng);
        if (m.status == MeasureStatus::ok) ++ok;
        records.push_back({target, std::move(m)});
    }
    if (ok < targets) return TripleOutcome::too_degenerate;
    std::optional<std::int64_t> value;
    for (const auto& r : records) {
        if (r.measurement.status != MeasureStatus::ok) continue;
        if (value && *value != r.measurement.degree) return TripleOutcome::disagree;
        value = r.measurement.degree;
    }
    common = *value;
    return TripleOutcome::agree;
}

inline FiberExperiment run_experiment(const SplitBundle& e, const BasePlan& plan, const PrimeFieldConfig& cfg,
                                      int targets, const std::optional<SectionTriple>& fixed) {
    if (targets < 1) throw DomainError("at least one target is required");
    const PrimeField F = cfg.field();
    check_base_plan(F, plan);
    std::mt19937_64 rng(cfg.seed);

    FiberExperiment ex;
    ex.bundle = e;
    ex.base_plan = plan;
    ex.field = cfg;
    ex.predicted_degree = predicted_degree(e, plan);

    const int rounds = fixed ? 1 : 1 + kTripleResamples;
    for (int round = 0; round < rounds; ++round) {
        if (fixed) {
            ex.triple = *fixed;
        } else {
            try {
                ex.triple = sample_sections(e, plan, F, rng);
            } catch (const SamplingFailure& err) {
                ex.status = ExperimentStatus::degenerate;
                ex.reason = err.what();
                return ex;
            }
        }
        ++ex.triples_sampled;
        std::int64_t common = 0;
        const auto outcome = measure_triple(F, ex.triple, plan, targets, rng, ex.records, common);
        ex.targets_tested = static_cast<int>(ex.records.size());
        if (outcome == TripleOutcome::too_degenerate) {
            ex.status = ExperimentStatus::degenerate;
            ex.reason = "too few non-degenerate targets";
            continue;
        }
        if (outcome == TripleOutcome::disagree) {
            ex.status = ExperimentStatus::mismatch;
            ex.reason = "fiber degrees differ across targets";
            continue;
        }
        ex.measured_degree = common;
        if (common == ex.predicted_degree) {
            ex.status = ExperimentStatus::verified;
            ex.reason.clear();
        } else {
            ex.status = ExperimentStatus::mismatch;
            ex.reason = "measured degree differs from c2 - sum m^2";
        }
        return ex;
    }
    return ex;
}

}  // namespace detail

/// Samples a net satisfying the plan and measures its degree over random targets.
inline FiberExperiment verify_formula(const SplitBundle& e, const BasePlan& plan, const PrimeFieldConfig& cfg,
                                      int targets) {
    return detail::run_experiment(e, plan, cfg, targets, std::nullopt);
}

/// Same measurement for a user-supplied net.  The triple must have the
/// bundle's degrees, independent sections and wedges, and satisfy the
/// plan's jet conditions.
inline FiberExperiment verify_formula(const SplitBundle& e, const BasePlan& plan, const PrimeFieldConfig& cfg,
                                      int targets, const SectionTriple& sections) {
    const PrimeField F = cfg.field();
    for (const auto& s : sections.s)
        if (s.p.degree != e.a || s.q.degree != e.b)
            throw DomainError("section degrees do not match the bundle");
    if (!sections_independent(F, sections)) throw DomainError("sections are linearly dependent");
    if (!wedges_independent(F, sections)) throw DomainError("wedges of the sections are linearly dependent");
    const auto conditions = jet_condition_matrix(F, e, plan);
    for (const auto& s : sections.s) {
        const auto v = coefficient_vector(s);
        for (const auto& row : conditions) {
            Elem acc = 0;
            for (std::size_t i = 0; i < v.size(); ++i) acc = F.add(acc, F.mul(row[i], v[i]));
            if (acc != 0) throw DomainError("sections do not satisfy the base-point conditions");
        }
    }
    return detail::run_experiment(e, plan, cfg, targets, sections);
}

/// Distinct random rational base points carrying the given multiplicities.
inline BasePlan random_base_plan(const PrimeField& F, const std::vector<int>& mults, std::mt19937_64& rng) {
    BasePlan plan;
    std::set<Point> seen;
    for (int m : mults) {
        for (;;) {
            const Point p{F.random(rng), F.random(rng), 1};
            if (seen.insert(p).second) {
                plan.push_back({p, m});
                break;
            }
        }
    }
    return plan;
}

}  // namespace irrk3::ff
