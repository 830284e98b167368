#ifndef NCALG_REWRITE_HPP
#define NCALG_REWRITE_HPP

#include <optional>

#include "ncalg/matrix.hpp"
#include "ncalg/presentation.hpp"

namespace ncalg {

/* Degree-lexicographic order: weighted total degree (first Adams component),
 * ties broken letter-by-letter by generator precedence. */
struct MonomialOrder {
    std::vector<int> weight;  // per generator
    std::vector<int> prec;    // rank, smaller = smaller generator

    int wdeg(const Word& w) const {
        int d = 0;
        for (char c : w) d += weight[static_cast<unsigned char>(c)];
        return d;
    }
    bool less(const Word& a, const Word& b) const {
        int da = wdeg(a), db = wdeg(b);
        if (da != db) return da < db;
        size_t n = std::min(a.size(), b.size());
        for (size_t i = 0; i < n; ++i) {
            int pa = prec[static_cast<unsigned char>(a[i])];
            int pb = prec[static_cast<unsigned char>(b[i])];
            if (pa != pb) return pa < pb;
        }
        return a.size() < b.size();  // unreachable for equal wdeg with positive weights
    }
};

struct RewriteRule {
    Word lead;
    NCPoly tail;  // lead rewrites to tail; every tail word < lead
    Multideg deg;
    int seq = 0;  // discovery order
};

struct DerivationLog {
    Word overlap;
    Word lead_a, lead_b;
    Word new_lead;
};

struct ReductionSystem {
    Presentation pres;
    MonomialOrder order;
    std::vector<RewriteRule> rules;  // inter-reduced, sorted by (wdeg(lead), seq)
    int complete_up_to = 0;
    std::vector<DerivationLog> log;

    bool is_monomial() const {
        for (auto& r : rules)
            if (!r.tail.is_zero()) return false;
        return true;
    }
};

/* Diamond-lemma completion up to first-component degree max_deg.  Optional
 * precedence list of generator names (default: file order, first = smallest). */
ReductionSystem complete(const Presentation& pres, int max_deg,
                         const std::vector<std::string>& precedence = {});

NCPoly normal_form(const NCPoly& p, const ReductionSystem& sys);
NCPoly normal_form_word(const Word& w, const ReductionSystem& sys);
bool word_is_standard(const Word& w, const ReductionSystem& sys);

std::vector<Word> standard_monomials(const ReductionSystem& sys, const Multideg& d);
std::vector<Word> standard_monomials_total(const ReductionSystem& sys, int n);
/* Multidegrees with given first component carrying at least one standard
 * monomial, in lexicographic order. */
std::vector<Multideg> realized_multidegs(const ReductionSystem& sys, int n);

std::vector<long long> hilbert_coeffs(const ReductionSystem& sys, int max_deg);

struct Ambiguity {
    Word word;
    int rule_a = 0, rule_b = 0;
};
std::vector<Ambiguity> overlap_ambiguities(const ReductionSystem& sys, int max_deg);
bool ambiguity_resolves(const ReductionSystem& sys, const Ambiguity& amb);

/* Coordinates of a homogeneous polynomial over the standard monomials of its
 * multidegree. */
std::vector<Scalar> poly_coords(const NCPoly& p, const std::vector<Word>& basis);

struct NormalCheck {
    bool normal = false;
    struct PerGen {
        bool left_ok = false, right_ok = false;
        std::optional<Scalar> left_scalar;   // z_i a = c (a z_i)
        std::optional<Scalar> right_scalar;  // a z_i = c (z_i a)
    };
    std::vector<PerGen> by_gen;
    std::string detail;
};
NormalCheck is_normal(const NCPoly& a, const ReductionSystem& sys, int max_deg);

struct NormalSearch {
    bool full_span = false;
    std::vector<Word> basis;
    std::vector<std::vector<Scalar>> solutions;  // first nonzero coordinate = 1
    std::vector<std::string> families;           // positive-dimensional components
};
NormalSearch search_normal(const ReductionSystem& sys, const Multideg& bidegree);

/* True iff every relation of src maps to zero under gen -> images[gen]. */
bool verify_homomorphism(const Presentation& src, const ReductionSystem& tgt,
                         const std::vector<NCPoly>& images, int max_deg,
                         std::string* why = nullptr);

struct PolyMat {
    int r = 0, c = 0;
    std::vector<NCPoly> e;
    NCPoly& at(int i, int j) { return e[static_cast<size_t>(i) * c + j]; }
    const NCPoly& at(int i, int j) const { return e[static_cast<size_t>(i) * c + j]; }
};

/* Complex of free modules F_m -> ... -> F_0; modules[0] is the leftmost.
 * maps[i] : modules[i] -> modules[i+1], rows indexed by source basis. */
struct ComplexSpec {
    std::vector<std::vector<Multideg>> modules;
    std::vector<PolyMat> maps;
};
ComplexSpec parse_maps_file(const std::string& text, const Presentation& ctx);

struct ComplexReport {
    bool is_complex = false;
    std::string detail;
    // hom[pos][n] for pos over modules (0 = leftmost) and Adams degree n <= N
    std::vector<std::vector<long long>> hom;
    std::vector<std::vector<long long>> ker_dims, im_dims;
};
ComplexReport verify_complex(const ComplexSpec& spec, const ReductionSystem& sys, int max_deg);

struct AnickResult {
    std::vector<std::vector<Word>> chains;  // chains[n-1] = n-chains
    std::vector<long long> poly;            // alternating-sum polynomial coefficients
};
AnickResult anick_chains(const ReductionSystem& sys, int n_max);

}  // namespace ncalg

#endif
