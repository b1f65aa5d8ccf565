#pragma once

// Plain-text inputs accepted by the verify command.
//
// Base-point file: one point per line, "x y z m" (three field elements and
// a multiplicity), whitespace separated.  '#' starts a comment.
//
// Sections file: six sparse forms in the order p0 q0 p1 q1 p2 q2, separated
// by lines holding only "--".  Each term is a line "i j k c" for the
// monomial c * x^i y^j z^k.  An empty block is the zero form.

#include "irrk3/fiber_oracle.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace irrk3::ff {

namespace detail {

inline std::string strip_comment(std::string line) {
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = line.find_last_not_of(" \t\r");
    return line.substr(first, last - first + 1);
}

inline std::vector<std::int64_t> parse_integers(const std::string& line, std::size_t expected, int line_no) {
    std::istringstream in(line);
    std::vector<std::int64_t> v;
    std::int64_t x;
    while (in >> x) v.push_back(x);
    if (!in.eof() || v.size() != expected)
        throw DomainError("line " + std::to_string(line_no) + ": expected " + std::to_string(expected) +
                          " integers");
    return v;
}

}  // namespace detail

inline BasePlan parse_base_points(std::istream& in, const PrimeField& F) {
    BasePlan plan;
    std::string line;
    for (int line_no = 1; std::getline(in, line); ++line_no) {
        line = detail::strip_comment(line);
        if (line.empty()) continue;
        const auto v = detail::parse_integers(line, 4, line_no);
        const Point p{F.from_int(v[0]), F.from_int(v[1]), F.from_int(v[2])};
        if (p[0] == 0 && p[1] == 0 && p[2] == 0)
            throw DomainError("line " + std::to_string(line_no) + ": (0,0,0) is not a point");
        if (v[3] < 1 || v[3] > 1000)
            throw DomainError("line " + std::to_string(line_no) + ": multiplicity must be in [1, 1000]");
        plan.push_back({p, static_cast<int>(v[3])});
    }
    return plan;
}

inline void write_base_points(std::ostream& out, const BasePlan& plan) {
    for (const auto& bp : plan)
        out << bp.point[0] << ' ' << bp.point[1] << ' ' << bp.point[2] << ' ' << bp.multiplicity << '\n';
}

inline Form parse_form_block(const std::vector<std::pair<int, std::string>>& lines, int degree, const PrimeField& F) {
    Form f(degree);
    for (const auto& [line_no, text] : lines) {
        const auto v = detail::parse_integers(text, 4, line_no);
        if (v[0] < 0 || v[1] < 0 || v[2] < 0 || v[0] + v[1] + v[2] != degree)
            throw DomainError("line " + std::to_string(line_no) + ": exponents must be >= 0 and sum to " +
                              std::to_string(degree));
        Elem& c = f.at(static_cast<int>(v[0]), static_cast<int>(v[1]));
        c = F.add(c, F.from_int(v[3]));
    }
    return f;
}

inline SectionTriple parse_sections(std::istream& in, const SplitBundle& e, const PrimeField& F) {
    std::vector<std::vector<std::pair<int, std::string>>> blocks(1);
    std::string line;
    for (int line_no = 1; std::getline(in, line); ++line_no) {
        line = detail::strip_comment(line);
        if (line == "--") {
            blocks.emplace_back();
            continue;
        }
        if (!line.empty()) blocks.back().push_back({line_no, line});
    }
    if (blocks.size() != 6) throw DomainError("sections file must hold 6 blocks, found " + std::to_string(blocks.size()));
    SectionTriple t;
    for (int i = 0; i < 3; ++i) {
        t.s[i].p = parse_form_block(blocks[2 * i], e.a, F);
        t.s[i].q = parse_form_block(blocks[2 * i + 1], e.b, F);
    }
    return t;
}

inline void write_form(std::ostream& out, const Form& f) {
    const auto ms = monomials(f.degree);
    for (std::size_t s = 0; s < ms.size(); ++s)
        if (f.coeffs[s]) out << ms[s][0] << ' ' << ms[s][1] << ' ' << ms[s][2] << ' ' << f.coeffs[s] << '\n';
}

inline void write_sections(std::ostream& out, const SectionTriple& t) {
    for (int i = 0; i < 3; ++i) {
        if (i) out << "--\n";
        write_form(out, t.s[i].p);
        out << "--\n";
        write_form(out, t.s[i].q);
    }
}

}  // namespace irrk3::ff
