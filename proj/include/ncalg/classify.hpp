#ifndef NCALG_CLASSIFY_HPP
#define NCALG_CLASSIFY_HPP

#include <array>

#include "ncalg/ainf.hpp"

namespace ncalg {

struct GmCheck {
    bool gm2 = false;
    bool gm3 = false;
};
/* (GM2): (g1/g2)^i != 1 for i = 1..4;  (GM3): 1 + v + w != 0. */
GmCheck gm_check(const Scalar& g1, const Scalar& g2, const Scalar& v, const Scalar& w);

enum class SolutionId { S11, S12a, S12b, S13a, S21, S22, S23 };
SolutionId solution_from_string(const std::string& s);
std::string solution_name(SolutionId id);

/* A solution of the classification equations at concrete parameter values. */
struct SolutionInstance {
    SolutionId id;
    FieldPtr field;
    Scalar g1{0}, g2{0}, t{0};
    Scalar v{0}, w{0};
    Scalar pc{0}, qc{0}, rc{0};  // relation coefficients p, q, r
    Scalar f{0};                 // c_21 for the degree-(2,2) branch
    bool case4 = false;
};
SolutionInstance make_solution(SolutionId id, const std::map<std::string, Scalar>& params);

struct CoeffTables {
    Scalar g1{0}, g2{0}, t{0};
    std::map<std::array<int, 3>, Scalar> a;
    std::map<std::array<int, 4>, Scalar> b;  // b[i][q][j][k]
    std::map<std::array<int, 2>, Scalar> c;  // c[p][i]
    std::map<std::array<int, 4>, Scalar> y;
    std::map<std::array<int, 5>, Scalar> x;  // x[s][p][i][j][k]

    Scalar A(int i, int j, int k) const { return get(a, {i, j, k}); }
    Scalar B(int i, int q, int j, int k) const { return get(b, {i, q, j, k}); }
    Scalar C(int p, int i) const { return get(c, {p, i}); }
    Scalar Y(int i, int j, int k, int h) const { return get(y, {i, j, k, h}); }
    Scalar X(int s, int p, int i, int j, int k) const { return get(x, {s, p, i, j, k}); }
    Scalar R(int s, int k) const { return s == k ? (s == 1 ? g1 : g2) : Scalar(0); }
    Scalar G(int i) const { return i == 1 ? g1 : g2; }

    template <size_t N>
    static Scalar get(const std::map<std::array<int, N>, Scalar>& m, std::array<int, N> k) {
        auto it = m.find(k);
        return it == m.end() ? Scalar(0) : it->second;
    }
};
CoeffTables coeff_tables(const SolutionInstance& inst);

struct ResidualReport {
    struct Item {
        std::string family;
        std::vector<int> idx;
        Scalar value;
    };
    std::vector<Item> nonzero;
    long long checked = 0;
    bool all_zero() const { return nonzero.empty(); }
};
/* Evaluates the printed identity families SI(4a), SI(4b), SI(5a), SI(5c),
 * SI(6a) over all index tuples. */
ResidualReport si_residuals(const CoeffTables& tabs);

/* Every single-entry +1 perturbation of the a/b/c/x/y tables must break some
 * residual; returns the entries that fail to. */
std::vector<std::string> perturbation_insensitive_entries(const CoeffTables& tabs);

/* Which factors 1 - t g1^s g2^{4-s} vanish; cases numbered 1..5, empty = none. */
std::vector<int> case_dispatch(const Scalar& g1, const Scalar& g2, const Scalar& t);

/* The algebra catalog: A, B, C, D, X, Y, Z, O, ore.  Parameters by name; the
 * base field defaults to Q (Q[i] for B, Q[j] for C) unless one is supplied. */
Presentation catalog(const std::string& name, const std::map<std::string, Scalar>& params,
                     FieldPtr field = nullptr);
/* The presentation-file text the catalog entry was built from. */
std::string catalog_text(const std::string& name, const std::map<std::string, Scalar>& params,
                         FieldPtr field = nullptr);

std::vector<long long> golden_hilbert(int max_deg);           // 1/((1-t)^2(1-t^2)(1-t^3))
std::vector<long long> golden_hilbert_quotient(int max_deg);  // 1/((1-t)^2(1-t^3))

struct ScreenReport {
    bool pass = false;
    bool series_ok = false, betti_ok = false, frobenius_ok = false;
    std::string fail;  // first discrepancy
};
ScreenReport regularity_screen(const Presentation& pres, int max_deg = 10, long long dim_cap = 0);

struct YQuotientReport {
    bool z2sq_normal = false;
    std::vector<long long> hilbert;
    std::vector<long long> expected;
    int first_mismatch = -1;  // degree, or -1
};
/* The quotient-by-z2^2 refutation route: the square of the last generator is
 * checked normal, then the quotient series is compared against the shape a
 * regular algebra would force. */
YQuotientReport y_quotient_route(const Presentation& pres, int max_deg = 6);

}  // namespace ncalg

#endif
