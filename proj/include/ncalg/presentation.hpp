#ifndef NCALG_PRESENTATION_HPP
#define NCALG_PRESENTATION_HPP

#include <string>
#include <utility>
#include <vector>

#include "ncalg/ncpoly.hpp"

namespace ncalg {

/* A finitely presented connected graded algebra: generators with Adams
 * multidegrees, homogeneous relations, base field, parameter bindings. */
struct Presentation {
    FieldPtr field;  // null = Q
    std::vector<std::string> gens;
    std::vector<Multideg> gen_degs;
    std::vector<NCPoly> rels;
    std::vector<Multideg> rel_degs;
    std::vector<std::pair<std::string, Scalar>> params;
    int adams_rank = 1;

    int gen_index(const std::string& name) const {
        for (size_t i = 0; i < gens.size(); ++i)
            if (gens[i] == name) return static_cast<int>(i);
        return -1;
    }
    const Scalar* param(const std::string& name) const {
        for (auto& [n, v] : params)
            if (n == name) return &v;
        return nullptr;
    }
    Multideg deg_of(const Word& w) const { return word_deg(w, gen_degs); }
};

/* Parse the line-oriented presentation grammar:
 *   field Q | field Q[u]/(u^2+1)
 *   param p = 2
 *   gen z1 : (1,0)
 *   rel z1*z2^2 - p^2*z2^2*z1
 * '#' starts a comment.  Errors carry line/column. */
Presentation parse_presentation(const std::string& text);

/* Canonical text; parse(print(p)) reproduces p. */
std::string print_presentation(const Presentation& p);

/* Expression evaluation in the context of a presentation (its field, params
 * and generators).  parse_scalar_expr rejects generator symbols. */
NCPoly parse_poly_expr(const std::string& text, const Presentation& ctx);
Scalar parse_scalar_expr(const std::string& text, const Presentation& ctx);

std::string poly_str(const NCPoly& p, const Presentation& ctx);
std::string word_str(const Word& w, const Presentation& ctx);

bool presentations_equal(const Presentation& a, const Presentation& b);

}  // namespace ncalg

#endif
