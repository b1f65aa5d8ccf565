// irrk3: bounds, tables, Brill-Noether dimensions, the projection catalog and
// finite-field fiber experiments from the command line.

#include "irrk3/reports.hpp"
#include "irrk3/text_formats.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <string>

using namespace irrk3;
using reports::ExitCode;

namespace {

Integer parse_genus(const std::string& text) {
    static const std::regex integer_re("[+-]?[0-9]+");
    if (!std::regex_match(text, integer_re)) throw DomainError("not an integer: '" + text + "'");
    return Integer(text);
}

ff::SplitBundle parse_bundle(const std::string& text) {
    static const std::regex bundle_re(R"(\s*([0-9]+)\s*,\s*([0-9]+)\s*)");
    std::smatch m;
    if (!std::regex_match(text, m, bundle_re)) throw DomainError("--bundle expects a,b, got '" + text + "'");
    return ff::SplitBundle(std::stoi(m[1]), std::stoi(m[2]));
}

int emit(const reports::ResultEnvelope& env) {
    std::cout << env.dump();
    return static_cast<int>(env.exit_code);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Polarized degree-of-irrationality bounds for K3 surfaces and kernel-bundle experiments"};
    app.require_subcommand(1);

    std::string config_file;
    std::string cache_dir;
    app.add_option("--config", config_file, "flat key = value config file (flags win)");
    app.add_option("--cache", cache_dir, "directory memoizing verify payloads");

    std::string bound_genus;
    auto* bound = app.add_subcommand("bound", "closed-form and optimized bound for one genus");
    bound->add_option("g", bound_genus, "genus")->required();

    std::int64_t table_from = 0, table_to = 0;
    std::string table_format;
    auto* table = app.add_subcommand("table", "bound table over a genus range");
    auto* from_opt = table->add_option("--from", table_from, "first genus");
    auto* to_opt = table->add_option("--to", table_to, "last genus");
    auto* format_opt = table->add_option("--format", table_format, "json | csv | md");

    std::string opt_genus;
    bool exhaustive = false;
    auto* optimize = app.add_subcommand("optimize", "search bundle invariants and multiplicity plans");
    optimize->add_option("g", opt_genus, "genus")->required();
    optimize->add_flag("--exhaustive", exhaustive, "search the complete plan space");

    std::string bn_genus;
    auto* bn = app.add_subcommand("bn", "Brill-Noether loci for genus 5 and 6");
    bn->add_option("--genus", bn_genus, "genus")->required();

    auto* cat = app.add_subcommand("catalog", "higher-dimensional projection estimates");

    std::string bundle_text = "1,1";
    std::string base_points_file, sections_file;
    std::uint64_t q = 0, seed = 0;
    int targets = 0;
    auto* verify = app.add_subcommand("verify", "measure a fiber degree over a finite field");
    verify->add_option("--bundle", bundle_text, "split bundle O(a)+O(b) on P^2, as a,b");
    verify->add_option("--base-points", base_points_file, "file of base points: x y z multiplicity");
    auto* q_opt = verify->add_option("--q", q, "prime field size (>= 101)");
    auto* seed_opt = verify->add_option("--seed", seed, "random seed");
    auto* targets_opt = verify->add_option("--targets", targets, "number of generic targets");
    verify->add_option("--sections", sections_file, "user-supplied net of sections (sparse forms)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return static_cast<int>(ExitCode::domain_error);
    }

    try {
        RunConfig cfg;
        if (!config_file.empty()) cfg = load_run_config(config_file);
        if (!cache_dir.empty()) cfg.cache_path = cache_dir;
        if (*from_opt) cfg.genus_lo = table_from;
        if (*to_opt) cfg.genus_hi = table_to;
        if (*format_opt) cfg.output_format = parse_output_format(table_format);
        if (*q_opt) cfg.field_size = q;
        if (*seed_opt) cfg.seed = seed;
        if (*targets_opt) cfg.targets = targets;

        if (*bound) return emit(reports::cmd_bound(parse_genus(bound_genus)));
        if (*optimize) return emit(reports::cmd_optimize(parse_genus(opt_genus), exhaustive));
        if (*bn) return emit(reports::cmd_bn(parse_genus(bn_genus)));
        if (*cat) return emit(reports::cmd_catalog());

        if (*table) {
            if (cfg.output_format == OutputFormat::json) return emit(reports::cmd_table(cfg.genus_lo, cfg.genus_hi));
            std::cout << reports::render_table(reports::table_lines(cfg.genus_lo, cfg.genus_hi), cfg.output_format);
            return 0;
        }

        if (*verify) {
            cfg.validate();
            const auto e = parse_bundle(bundle_text);
            const ff::PrimeField F(cfg.field_size);
            ff::BasePlan plan;
            if (!base_points_file.empty()) {
                std::ifstream in(base_points_file);
                if (!in) throw DomainError("cannot open base-point file " + base_points_file);
                plan = ff::parse_base_points(in, F);
            }
            std::optional<ff::SectionTriple> sections;
            if (!sections_file.empty()) {
                std::ifstream in(sections_file);
                if (!in) throw DomainError("cannot open sections file " + sections_file);
                sections = ff::parse_sections(in, e, F);
            }
            std::optional<ResultCache> cache;
            if (!cfg.cache_path.empty()) cache.emplace(cfg.cache_path);
            return emit(reports::cmd_verify(e, plan, cfg.field_size, cfg.seed, cfg.targets, sections,
                                            cache ? &*cache : nullptr));
        }
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::domain_error);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
