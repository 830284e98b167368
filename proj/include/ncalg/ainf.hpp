#ifndef NCALG_AINF_HPP
#define NCALG_AINF_HPP

#include "ncalg/bar.hpp"

namespace ncalg {

enum class SplitPolicy { Structured, Echelon };

struct AinfBasisElem {
    std::string name;
    int s = 0;       // cohomological degree
    Multideg adams;  // stored positively; the Adams degree is -adams
};

/* A finite A-infinity structure: basis with bidegrees, strict unit, and
 * multiplication tables m_n for the materialized arities. */
struct AInfStructure {
    FieldPtr field;
    std::vector<AinfBasisElem> basis;
    int unit = -1;
    std::vector<int> table_ns;  // arities with materialized tables
    // key = input basis indices (length = arity); value = sparse output
    std::map<std::vector<int>, std::vector<std::pair<int, Scalar>>> table;

    std::map<std::pair<int, Multideg>, long long> dims() const;
    long long dim_at(int s, const Multideg& a) const;
    int find_name(const std::string& name) const;
    bool has_arity(int n) const {
        for (int k : table_ns)
            if (k == n) return true;
        return false;
    }
};

/* m_n = 0 forced by bidegree arithmetic alone: every tuple of nonzero nonunit
 * bidegrees has a zero-dimensional output slot. */
bool forced_vanishing(const std::map<std::pair<int, Multideg>, long long>& dims, int n);

struct StasheffReport {
    bool ok = true;
    long long tuples_checked = 0;
    struct Violation {
        int n;
        std::vector<int> tuple;
        std::vector<std::pair<int, Scalar>> residual;
    };
    std::vector<Violation> violations;
};
StasheffReport check_stasheff(const AInfStructure& E, int n_max);

/* Merkulov model of the Koszul-dual DGA of the quotient algebra: homology
 * basis per bidegree for s <= s_max and Adams first component <= n_max,
 * with multiplication tables for every arity not forced to vanish. */
AInfStructure merkulov_model(const ReductionSystem& sys, int s_max, int n_max, SplitPolicy policy,
                             long long dim_cap = 0);

struct KellerResult {
    // first-component degree -> recovered relations, deg-lex-monic with the
    // first-listed generator largest
    std::map<int, std::vector<NCPoly>> by_degree;
};
KellerResult keller_relations(const AInfStructure& E, const Presentation& pres);

/* Same span per degree, after monic normalization. */
bool relation_spans_match(const KellerResult& got, const Presentation& pres, std::string* why = nullptr);

struct FrobeniusData {
    bool ok = false;
    std::string why;
    Mat lambda;  // 2x2
    Scalar t{0};
    // chosen basis vectors as coordinates in the E basis
    std::vector<Scalar> delta, beta1, beta2, gamma1, gamma2;
};
FrobeniusData frobenius_data(const AInfStructure& E);

/* Nondegeneracy of the pairing to the top cohomological degree. */
bool check_frobenius(const AInfStructure& E);

std::string write_tables(const AInfStructure& E);
AInfStructure parse_tables(const std::string& text);

/* m_n tables restricted to (E^1)-tuples agree (used for the splitting-policy
 * independence check). */
bool restricted_tables_equal(const AInfStructure& a, const AInfStructure& b, int n,
                             std::string* why = nullptr);

/* Verifies the homotopy identity dQ + Qd = id - Pr_H on every slice with
 * s <= s_max and Adams first component <= n_max.  Test support. */
bool merkulov_homotopy_check(const ReductionSystem& sys, SplitPolicy policy, int s_max, int n_max,
                             std::string* why = nullptr);

}  // namespace ncalg

#endif
