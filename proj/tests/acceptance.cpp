// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "irrk3/ambient_catalog.hpp"
#include "irrk3/bn_dimension.hpp"
#include "irrk3/bound_engine.hpp"
#include "irrk3/core_arith.hpp"
#include "irrk3/reports.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace irrk3;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void fail(const std::string& why) {
        if (ok) detail = why;
        ok = false;
    }
};

int failures = 0;

void criterion(const std::string& name, double limit_seconds, const std::function<void(Outcome&)>& body) {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
        body(out);
    } catch (const std::exception& e) {
        out.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (limit_seconds > 0 && secs >= limit_seconds) {
        std::ostringstream why;
        why << "took " << secs << " s, limit " << limit_seconds << " s";
        out.fail(why.str());
    }
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(3);
    line << (out.ok ? "PASS " : "FAIL ") << name << " (" << secs << " s)";
    if (!out.detail.empty()) line << ": " << out.detail;
    std::cout << line.str() << std::endl;
    if (!out.ok) ++failures;
}

std::int64_t verify_degree(const ff::SplitBundle& e, const ff::BasePlan& plan, std::uint64_t seed, Outcome& out) {
    const auto ex = ff::verify_formula(e, plan, ff::PrimeFieldConfig(997, seed), 5);
    if (ex.status != ff::ExperimentStatus::verified)
        out.fail("(" + std::to_string(e.a) + "," + std::to_string(e.b) + ") seed " + std::to_string(seed) + ": " +
                 std::string(to_string(ex.status)) + " " + ex.reason);
    if (ex.targets_tested < 5) out.fail("fewer than 5 targets");
    return ex.measured_degree;
}

}  // namespace

int main() {
    criterion("table reproduction", 1.0, [](Outcome& out) {
        const std::vector<int> expected{3, 4, 4, 5, 4, 5, 5, 6, 6, 7, 5, 6, 7};
        for (std::size_t i = 0; i < kTabulatedGenera.size(); ++i) {
            const int g = kTabulatedGenera[i];
            const auto rows = reports::cmd_table(g, g).payload()["rows"];
            if (rows.size() != 1 || rows[0]["paper_bound"] != expected[i] || rows[0]["optimized_bound"] != expected[i])
                out.fail("genus " + std::to_string(g));
        }
    });

    criterion("closed-form family n <= 100", 1.0, [](Outcome& out) {
        for (int n = 0; n <= 100; ++n)
            if (paper_bound(Integer(2 + 2 * n * (n + 1))) != 2 + n) out.fail("n = " + std::to_string(n));
    });

    criterion("optimizer soundness g <= 2000", 30.0, [](Outcome& out) {
        int improved = 0;
        std::int64_t first = 0;
        for (int g = 2; g <= 2000; ++g) {
            const auto c = optimize_bound(g, true);
            const Integer pb = paper_bound(g);
            if (!c.consistent()) out.fail("inconsistent certificate at genus " + std::to_string(g));
            if (c.predicted_degree > pb) out.fail("worse than closed form at genus " + std::to_string(g));
            if (reports::is_tabulated(g) && c.predicted_degree != pb)
                out.fail("tabulated genus " + std::to_string(g) + " differs");
            if (c.predicted_degree < pb && improved++ == 0) first = g;
        }
        if (out.ok)
            out.detail = "flagged " + std::to_string(improved) + " strict improvements, first at genus " +
                         std::to_string(first) + " (expected-dimension model)";
    });

    criterion("Euler characteristic anchors", 0, [](Outcome& out) {
        if (euler_char_k3(2, 10, 4) != 5) out.fail("K3 (2,10,4)");
        if (euler_char_k3(2, 8, 4) != 4) out.fail("K3 (2,8,4)");
        if (euler_char_abelian_surface(2, 12, 3) != 3) out.fail("abelian (2,12,3)");
    });

    criterion("Mukai parity g <= 2000", 0, [](Outcome& out) {
        for (int g = 2; g <= 2000; ++g) {
            const Integer sq = mukai_square(k3_mukai_vector(g, 2, minimal_c2(g)));
            if (sq != (g % 2 == 0 ? -2 : 0)) out.fail("genus " + std::to_string(g));
        }
    });

    criterion("Brill-Noether case studies", 0, [](Outcome& out) {
        const auto g5 = case_study(5);
        if (g5.loci.size() != 2 || !g5.loci[0].empty()) out.fail("genus 5: W^2_3 not empty");
        std::vector<Integer> dims;
        for (const auto& c : g5.loci.at(1).components) {
            dims.push_back(c.dimension);
            if (c.construction == Construction::grassmannian_bundle_over_moduli) {
                const Integer recomputed = relative_grassmannian_dim(c.source, 2);
                if (recomputed != c.dimension || moduli_dim(c.source) + grassmannian_dim(3, 4) != recomputed)
                    out.fail("genus 5 Grassmannian component not recomputed");
            }
        }
        std::sort(dims.begin(), dims.end());
        if (dims != std::vector<Integer>{2, 5}) out.fail("genus 5 dimensions");
        const auto g6 = case_study(6);
        if (g6.loci.size() != 1 || g6.loci[0].components.size() != 1 || g6.loci[0].components[0].dimension != 2)
            out.fail("genus 6 dimension");
    });

    criterion("catalog validation", 0, [](Outcome& out) {
        const auto entries = catalog();
        const auto checks = validate_catalog(entries);
        if (entries.size() != 5) out.fail("expected 5 entries");
        for (const auto& c : checks) {
            if (c.name == "AB2-(1,6)" && (c.status != CatalogStatus::validated || c.derived_bound != Integer(3)))
                out.fail("abelian surface entry");
            if (c.name == "Hilb2-g6" && (c.status != CatalogStatus::validated || c.derived_bound != Integer(6)))
                out.fail("Hilb^2 entry");
        }
    });

    criterion("oracle without conditions", 60.0, [](Outcome& out) {
        for (auto [a, b] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 2}, {2, 3}})
            for (std::uint64_t seed : {1, 2, 3})
                if (verify_degree(ff::SplitBundle(a, b), {}, seed, out) != a * b)
                    out.fail("(" + std::to_string(a) + "," + std::to_string(b) + ") seed " + std::to_string(seed));
    });

    criterion("oracle fat-point drop", 60.0, [](Outcome& out) {
        for (std::uint64_t seed : {1, 2, 3}) {
            if (verify_degree(ff::SplitBundle(2, 2), {{{0, 0, 1}, 1}}, seed, out) != 3)
                out.fail("(2,2) simple point seed " + std::to_string(seed));
            if (verify_degree(ff::SplitBundle(2, 3), {{{0, 0, 1}, 2}}, seed, out) != 2)
                out.fail("(2,3) double point seed " + std::to_string(seed));
        }
    });

    criterion("verify determinism", 0, [](Outcome& out) {
        const ff::BasePlan plan{{{4, 9, 1}, 2}};
        const auto first = reports::cmd_verify(ff::SplitBundle(2, 3), plan, 997, 11, 5).dump();
        if (first != reports::cmd_verify(ff::SplitBundle(2, 3), plan, 997, 11, 5).dump())
            out.fail("envelopes differ");
        if (reports::cmd_verify(ff::SplitBundle(3, 3), {}, 1009, 5, 6).dump() !=
            reports::cmd_verify(ff::SplitBundle(3, 3), {}, 1009, 5, 6).dump())
            out.fail("envelopes differ");
    });

    std::cout << "INFO not computed here: existence, stability and global generation of the rank-2 bundles, "
                 "and the sharp values irr_L = 3 (g = 3, 4, 6) and irr_L = 4 (g = 5). These are proofs; the "
                 "sharp values are carried as recorded constants and only the properties above are checked."
              << std::endl;

    std::cout << (failures ? "acceptance: FAILED (" + std::to_string(failures) + ")" : std::string("acceptance: all passed"))
              << std::endl;
    return failures ? 1 : 0;
}
