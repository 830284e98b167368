#ifndef NCALG_BAR_HPP
#define NCALG_BAR_HPP

#include <map>

#include "ncalg/rewrite.hpp"

namespace ncalg {

using TensorWord = std::vector<Word>;  // [a_1|...|a_s], entries standard monomials

/* Shared bases, product expansions and bar differentials, cached per Adams
 * multidegree.  The m-basis in each degree is the standard-monomial basis. */
struct BarContext {
    const ReductionSystem& sys;
    long long dim_cap;

    explicit BarContext(const ReductionSystem& s, long long cap = 0);

    const std::vector<Word>& monos(const Multideg& d);
    int mono_index(const Multideg& d, const Word& w);
    /* NF(u*v) in standard-monomial coordinates of deg(u)+deg(v). */
    const std::vector<std::pair<int, Scalar>>& product(const Word& u, const Word& v);

    const std::vector<TensorWord>& slice_basis(int s, const Multideg& d);
    int slice_index(int s, const Multideg& d, const TensorWord& t);
    long long slice_dim(int s, const Multideg& d) { return static_cast<long long>(slice_basis(s, d).size()); }

    /* Bar differential d : slice(s) -> slice(s-1), columns indexed by the
     * source basis. */
    const Mat& bar_d(int s, const Multideg& d);

    /* Multidegrees with the given first component realized by standard
     * monomials (cached). */
    const std::vector<Multideg>& degs_of(int first);

  private:
    std::map<Multideg, std::vector<Word>> monos_;
    std::map<Multideg, std::map<Word, int>> mono_idx_;
    std::map<std::pair<Word, Word>, std::vector<std::pair<int, Scalar>>> prod_;
    std::map<std::pair<int, Multideg>, std::vector<TensorWord>> bases_;
    std::map<std::pair<int, Multideg>, std::map<TensorWord, int>> base_idx_;
    std::map<std::pair<int, Multideg>, Mat> dmat_;
    std::map<int, std::vector<Multideg>> degs_;
};

long long default_dim_cap();

struct BettiTable {
    std::map<std::pair<int, int>, long long> b;  // (s, n) -> dim Ext^s in Adams degree -n
    long long at(int s, int n) const {
        auto it = b.find({s, n});
        return it == b.end() ? 0 : it->second;
    }
};

BettiTable betti_numbers(const ReductionSystem& sys, int s_max, int n_max, long long dim_cap = 0);

struct ShapeReport {
    bool symmetric = false;
    int l = 0;
    std::string violation;
};

/* Lemma-style symmetry of the minimal free resolution encoded by the table:
 * the degree multisets of P_w and l - P_{d-w} must agree. */
ShapeReport resolution_shape(const BettiTable& b, int d);

/* sum_{s,n} (-1)^s b_{s,n} t^n * H(t) truncated at t^{n_max}; returns the
 * truncated series (index = degree). */
std::vector<Rational> betti_hilbert_product(const BettiTable& b, const std::vector<long long>& hilbert,
                                            int n_max);

}  // namespace ncalg

#endif
