#include "ncalg/ainf.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace ncalg {

std::map<std::pair<int, Multideg>, long long> AInfStructure::dims() const {
    std::map<std::pair<int, Multideg>, long long> d;
    for (auto& e : basis) ++d[{e.s, e.adams}];
    return d;
}

long long AInfStructure::dim_at(int s, const Multideg& a) const {
    long long n = 0;
    for (auto& e : basis)
        if (e.s == s && e.adams == a) ++n;
    return n;
}

int AInfStructure::find_name(const std::string& name) const {
    for (size_t i = 0; i < basis.size(); ++i)
        if (basis[i].name == name) return static_cast<int>(i);
    return -1;
}

bool forced_vanishing(const std::map<std::pair<int, Multideg>, long long>& dims, int n) {
    std::vector<std::pair<int, Multideg>> slots;
    for (auto& [k, v] : dims)
        if (v > 0 && !(k.first == 0 && k.second.is_zero())) slots.push_back(k);
    std::function<bool(int, int, Multideg)> rec = [&](int left, int ssum, Multideg asum) -> bool {
        if (left == 0) {
            auto it = dims.find({ssum - n + 2, asum});
            return it == dims.end() || it->second == 0;
        }
        for (auto& [s, a] : slots) {
            Multideg na = asum + a;
            if (!rec(left - 1, ssum + s, na)) return false;
        }
        return true;
    };
    return rec(n, 0, Multideg(0));
}

namespace {

const std::vector<std::pair<int, Scalar>> kEmpty;

/* Table lookup with reachability semantics: an absent entry is zero only when
 * the output slot has dimension zero or the tuple contains the strict unit. */
const std::vector<std::pair<int, Scalar>>& eval_m(
    const AInfStructure& E, const std::map<std::pair<int, Multideg>, long long>& dims,
    const std::vector<int>& tuple) {
    int n = static_cast<int>(tuple.size());
    bool has_unit = false;
    int ssum = 0;
    Multideg asum;
    asum.k = tuple.empty() ? 1 : E.basis[static_cast<size_t>(tuple[0])].adams.k;
    for (int i : tuple) {
        const auto& e = E.basis[static_cast<size_t>(i)];
        if (i == E.unit) has_unit = true;
        ssum += e.s;
        asum += e.adams;
    }
    if (has_unit && n != 2) return kEmpty;  // strict unit
    std::pair<int, Multideg> target{ssum - n + 2, asum};
    auto dit = dims.find(target);
    if (dit == dims.end() || dit->second == 0) return kEmpty;
    if (!E.has_arity(n))
        throw Error("m_" + std::to_string(n) +
                    " is not materialized but a tuple reaches a nonzero bidegree");
    auto it = E.table.find(tuple);
    if (it == E.table.end())
        throw Error("missing m_" + std::to_string(n) +
                    " entry reachable by degree arithmetic");
    return it->second;
}

void add_sparse(std::vector<std::pair<int, Scalar>>& acc, int idx, const Scalar& c) {
    for (auto& [i, v] : acc)
        if (i == idx) {
            v += c;
            return;
        }
    acc.emplace_back(idx, c);
}

void compact_sparse(std::vector<std::pair<int, Scalar>>& acc) {
    std::vector<std::pair<int, Scalar>> out;
    for (auto& [i, v] : acc)
        if (!v.is_zero()) out.emplace_back(i, v);
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    acc = std::move(out);
}

}  // namespace

StasheffReport check_stasheff(const AInfStructure& E, int n_max) {
    StasheffReport rep;
    auto dims = E.dims();
    size_t B = E.basis.size();
    for (int n = 1; n <= n_max; ++n) {
        std::vector<int> tuple(static_cast<size_t>(n), 0);
        std::function<void(int)> rec = [&](int pos) {
            if (pos == n) {
                int ssum = 0;
                Multideg asum;
                asum.k = E.basis[0].adams.k;
                for (int i : tuple) {
                    ssum += E.basis[static_cast<size_t>(i)].s;
                    asum += E.basis[static_cast<size_t>(i)].adams;
                }
                // every SI(n) term lands in this slot
                auto dit = dims.find({ssum - n + 3, asum});
                if (dit == dims.end() || dit->second == 0) return;
                ++rep.tuples_checked;
                std::vector<std::pair<int, Scalar>> residual;
                for (int r = 0; r + 1 <= n; ++r)
                    for (int s = 1; r + s <= n; ++s) {
                        int t = n - r - s;
                        std::vector<int> inner(tuple.begin() + r, tuple.begin() + r + s);
                        const auto& mid = eval_m(E, dims, inner);
                        if (mid.empty()) continue;
                        int degsum = 0;
                        for (int i = 0; i < r; ++i)
                            degsum += E.basis[static_cast<size_t>(tuple[static_cast<size_t>(i)])].s;
                        bool neg = ((r + s * t) % 2) != 0;
                        if ((s * degsum) % 2 != 0) neg = !neg;  // Koszul sign
                        for (auto& [mi, mc] : mid) {
                            std::vector<int> outer;
                            outer.reserve(static_cast<size_t>(n - s + 1));
                            for (int i = 0; i < r; ++i) outer.push_back(tuple[static_cast<size_t>(i)]);
                            outer.push_back(mi);
                            for (int i = r + s; i < n; ++i)
                                outer.push_back(tuple[static_cast<size_t>(i)]);
                            for (auto& [oi, oc] : eval_m(E, dims, outer))
                                add_sparse(residual, oi, neg ? -(mc * oc) : mc * oc);
                        }
                    }
                compact_sparse(residual);
                if (!residual.empty()) {
                    rep.ok = false;
                    if (rep.violations.size() < 32) rep.violations.push_back({n, tuple, residual});
                }
                return;
            }
            for (size_t i = 0; i < B; ++i) {
                tuple[static_cast<size_t>(pos)] = static_cast<int>(i);
                rec(pos + 1);
            }
        };
        rec(0);
    }
    return rep;
}

/* ------------------------- Merkulov construction ------------------------- */

namespace {

struct SliceVec {
    int s = 0;
    Multideg md;
    std::vector<Scalar> v;
};

struct SliceSplit {
    int dim = 0, nb = 0, nh = 0, nl = 0;
    Mat cols;    // columns: B | H | L basis vectors in slice coordinates
    Mat coords;  // inverse of cols; rows give B | H | L coordinates
    Mat Q;       // homotopy into the previous slice
};

struct Model {
    BarContext bar;
    SplitPolicy policy;
    std::map<std::pair<int, Multideg>, SliceSplit> splits;
    std::map<std::vector<int>, SliceVec> qlam_memo;

    struct Slot {
        int s;
        Multideg md;
        int h;  // index inside the slice's H block
    };
    std::vector<Slot> slots;  // per global basis index

    Model(const ReductionSystem& sys, long long cap, SplitPolicy p) : bar(sys, cap), policy(p) {}

    Mat dual_d(int s, const Multideg& md) {
        // partial^s : T^s -> T^{s+1} is minus the transpose of the bar
        // differential d_{s+1}; the constant sign is what makes the tensor
        // concatenation product a derivation
        const Mat& d = bar.bar_d(s + 1, md);
        Mat m = d.transposed();
        for (auto& x : m.a)
            if (!x.is_zero()) x = -x;
        return m;
    }

    const SliceSplit& split(int s, const Multideg& md);
    SliceVec qlam(const std::vector<int>& tuple);
    SliceVec lambda_of(const std::vector<int>& tuple);
    std::vector<Scalar> h_column(const Slot& slot);
    std::vector<Scalar> h_coords(const SliceVec& x);
};

SliceSplit echelon_split(Model& M, int s, const Multideg& md) {
    SliceSplit sp;
    sp.dim = static_cast<int>(M.bar.slice_dim(s, md));
    int dim_prev = (s >= 1) ? static_cast<int>(M.bar.slice_dim(s - 1, md)) : 0;
    sp.Q = Mat(dim_prev, sp.dim);
    if (sp.dim == 0) {
        sp.cols = Mat(0, 0);
        sp.coords = Mat(0, 0);
        return sp;
    }
    Mat d_in = (s >= 1) ? M.dual_d(s - 1, md) : Mat(sp.dim, 0);
    Mat d_out = M.dual_d(s, md);

    // column echelon of d_in with preimage tracking
    std::vector<std::vector<Scalar>> bcols, pre;
    std::vector<int> bpiv;
    for (int j = 0; j < d_in.c; ++j) {
        std::vector<Scalar> v(static_cast<size_t>(sp.dim));
        for (int i = 0; i < sp.dim; ++i) v[static_cast<size_t>(i)] = d_in.at(i, j);
        std::vector<Scalar> y(static_cast<size_t>(dim_prev), Scalar(0));
        y[static_cast<size_t>(j)] = Scalar(1);
        for (size_t k = 0; k < bcols.size(); ++k) {
            const Scalar& f = v[static_cast<size_t>(bpiv[k])];
            if (f.is_zero()) continue;
            Scalar ff = f;
            for (size_t i = 0; i < v.size(); ++i)
                if (!bcols[k][i].is_zero()) v[i] -= ff * bcols[k][i];
            for (size_t i = 0; i < y.size(); ++i)
                if (!pre[k][i].is_zero()) y[i] -= ff * pre[k][i];
        }
        int p = -1;
        for (size_t i = 0; i < v.size(); ++i)
            if (!v[i].is_zero()) {
                p = static_cast<int>(i);
                break;
            }
        if (p < 0) continue;
        Scalar inv = v[static_cast<size_t>(p)].inverse();
        for (auto& x : v)
            if (!x.is_zero()) x = x * inv;
        for (auto& x : y)
            if (!x.is_zero()) x = x * inv;
        bcols.push_back(std::move(v));
        pre.push_back(std::move(y));
        bpiv.push_back(p);
    }
    sp.nb = static_cast<int>(bcols.size());

    // kernel of the outgoing differential, reduced against B to get H
    std::vector<std::vector<Scalar>> hcols;
    std::vector<int> hpiv;
    for (auto& z : kernel_basis(d_out)) {
        std::vector<Scalar> v = z;
        for (size_t k = 0; k < bcols.size(); ++k) {
            const Scalar f = v[static_cast<size_t>(bpiv[k])];
            if (f.is_zero()) continue;
            for (size_t i = 0; i < v.size(); ++i)
                if (!bcols[k][i].is_zero()) v[i] -= f * bcols[k][i];
        }
        for (size_t k = 0; k < hcols.size(); ++k) {
            const Scalar f = v[static_cast<size_t>(hpiv[k])];
            if (f.is_zero()) continue;
            for (size_t i = 0; i < v.size(); ++i)
                if (!hcols[k][i].is_zero()) v[i] -= f * hcols[k][i];
        }
        int p = -1;
        for (size_t i = 0; i < v.size(); ++i)
            if (!v[i].is_zero()) {
                p = static_cast<int>(i);
                break;
            }
        if (p < 0) continue;
        Scalar inv = v[static_cast<size_t>(p)].inverse();
        for (auto& x : v)
            if (!x.is_zero()) x = x * inv;
        hcols.push_back(std::move(v));
        hpiv.push_back(p);
    }
    sp.nh = static_cast<int>(hcols.size());

    std::vector<bool> taken(static_cast<size_t>(sp.dim), false);
    for (int p : bpiv) taken[static_cast<size_t>(p)] = true;
    for (int p : hpiv) taken[static_cast<size_t>(p)] = true;
    std::vector<int> lidx;
    for (int i = 0; i < sp.dim; ++i)
        if (!taken[static_cast<size_t>(i)]) lidx.push_back(i);
    sp.nl = static_cast<int>(lidx.size());
    if (sp.nb + sp.nh + sp.nl != sp.dim)
        throw Error("internal: splitting does not fill the slice");

    sp.cols = Mat(sp.dim, sp.dim);
    for (int k = 0; k < sp.nb; ++k)
        for (int i = 0; i < sp.dim; ++i) sp.cols.at(i, k) = bcols[static_cast<size_t>(k)][static_cast<size_t>(i)];
    for (int k = 0; k < sp.nh; ++k)
        for (int i = 0; i < sp.dim; ++i)
            sp.cols.at(i, sp.nb + k) = hcols[static_cast<size_t>(k)][static_cast<size_t>(i)];
    for (int k = 0; k < sp.nl; ++k)
        sp.cols.at(lidx[static_cast<size_t>(k)], sp.nb + sp.nh + k) = Scalar(1);
    sp.coords = inverse(sp.cols);

    if (sp.nb > 0) {
        const SliceSplit& prev = M.split(s - 1, md);
        // project preimages to L along B + H of the previous slice
        Mat X(dim_prev, sp.nb);
        for (int k = 0; k < sp.nb; ++k) {
            std::vector<Scalar> c = mat_apply(prev.coords, pre[static_cast<size_t>(k)]);
            for (int i = 0; i < prev.nb + prev.nh; ++i) c[static_cast<size_t>(i)] = Scalar(0);
            std::vector<Scalar> x = mat_apply(prev.cols, c);
            for (int i = 0; i < dim_prev; ++i) X.at(i, k) = x[static_cast<size_t>(i)];
        }
        Mat brows(sp.nb, sp.dim);
        for (int k = 0; k < sp.nb; ++k)
            for (int j = 0; j < sp.dim; ++j) brows.at(k, j) = sp.coords.at(k, j);
        sp.Q = mat_mul(X, brows);
    }
    return sp;
}

SliceSplit structured_split(Model& M, int s, const Multideg& md) {
    const ReductionSystem& sys = M.bar.sys;
    SliceSplit sp;
    sp.dim = static_cast<int>(M.bar.slice_dim(s, md));
    int dim_prev = (s >= 1) ? static_cast<int>(M.bar.slice_dim(s - 1, md)) : 0;
    sp.Q = Mat(dim_prev, sp.dim);
    if (sp.dim == 0) return sp;
    if (s == 0 || s == 1) {
        sp.cols = Mat::identity(sp.dim);
        sp.coords = sp.cols;
        if (s == 0 || md.first() == 1) {
            sp.nh = sp.dim;
        } else {
            // no Ext^1 above degree 1 for degree-one-generated algebras
            Mat d_out = M.dual_d(s, md);
            if (static_cast<int>(sp.dim) - rank_ff(d_out) != 0)
                throw Error("structured splitting expects a degree-one-generated algebra");
            sp.nl = sp.dim;
        }
        return sp;
    }
    if (s >= 3) return echelon_split(M, s, md);

    // s == 2: primal slice decomposes as im(d3) + collapsed relations + xi(A)
    const auto& pairs = M.bar.slice_basis(2, md);
    std::map<TensorWord, int> pidx;
    for (size_t i = 0; i < pairs.size(); ++i) pidx[pairs[i]] = static_cast<int>(i);

    // image of the primal bar differential d3
    const Mat& d3 = M.bar.bar_d(3, md);
    std::vector<std::vector<Scalar>> icols;
    std::vector<int> ipiv;
    for (int j = 0; j < d3.c; ++j) {
        std::vector<Scalar> v(static_cast<size_t>(sp.dim));
        for (int i = 0; i < sp.dim; ++i) v[static_cast<size_t>(i)] = d3.at(i, j);
        for (size_t k = 0; k < icols.size(); ++k) {
            const Scalar f = v[static_cast<size_t>(ipiv[k])];
            if (f.is_zero()) continue;
            for (size_t i = 0; i < v.size(); ++i)
                if (!icols[k][i].is_zero()) v[i] -= f * icols[k][i];
        }
        int p = -1;
        for (size_t i = 0; i < v.size(); ++i)
            if (!v[i].is_zero()) {
                p = static_cast<int>(i);
                break;
            }
        if (p < 0) continue;
        Scalar inv = v[static_cast<size_t>(p)].inverse();
        for (auto& x : v)
            if (!x.is_zero()) x = x * inv;
        icols.push_back(std::move(v));
        ipiv.push_back(p);
    }
    // collapsed relations of this multidegree: word -> first letter (x) rest
    std::vector<std::vector<Scalar>> rcols;
    for (size_t r = 0; r < sys.pres.rels.size(); ++r) {
        if (!(sys.pres.rel_degs[r] == md)) continue;
        std::vector<Scalar> v(static_cast<size_t>(sp.dim), Scalar(0));
        for (auto& [w, c] : sys.pres.rels[r].t) {
            Word head = w.substr(0, 1);
            NCPoly rest = normal_form(NCPoly::monomial(w.substr(1)), sys);
            for (auto& [rw, rc] : rest.t) {
                auto it = pidx.find(TensorWord{head, rw});
                if (it == pidx.end()) throw Error("internal: collapsed relation outside slice");
                v[static_cast<size_t>(it->second)] += c * rc;
            }
        }
        rcols.push_back(std::move(v));
    }
    // xi(A_md): m -> -(first letter x rest), one column per standard monomial
    const auto& monos = M.bar.monos(md);
    std::vector<std::vector<Scalar>> xcols;
    for (auto& m : monos) {
        std::vector<Scalar> v(static_cast<size_t>(sp.dim), Scalar(0));
        auto it = pidx.find(TensorWord{m.substr(0, 1), m.substr(1)});
        if (it == pidx.end()) throw Error("internal: xi image outside slice");
        v[static_cast<size_t>(it->second)] = Scalar(-1);
        xcols.push_back(std::move(v));
    }
    int nI = static_cast<int>(icols.size());
    int nR = static_cast<int>(rcols.size());
    int nX = static_cast<int>(xcols.size());
    if (nI + nR + nX != sp.dim)
        throw Error("structured splitting failed at Adams degree " + md.str() +
                    ": found " + std::to_string(nI) + "+" + std::to_string(nR) + "+" +
                    std::to_string(nX) + " != " + std::to_string(sp.dim) +
                    " (are the relations minimal?)");
    Mat P(sp.dim, sp.dim);
    for (int k = 0; k < nI; ++k)
        for (int i = 0; i < sp.dim; ++i) P.at(i, k) = icols[static_cast<size_t>(k)][static_cast<size_t>(i)];
    for (int k = 0; k < nR; ++k)
        for (int i = 0; i < sp.dim; ++i)
            P.at(i, nI + k) = rcols[static_cast<size_t>(k)][static_cast<size_t>(i)];
    for (int k = 0; k < nX; ++k)
        for (int i = 0; i < sp.dim; ++i)
            P.at(i, nI + nR + k) = xcols[static_cast<size_t>(k)][static_cast<size_t>(i)];
    Mat Pinv = inverse(P);  // throws when the three blocks fail to span

    // dual-side blocks: B ~ xi(A)^#, H ~ R^#, L ~ im(d3)^#
    sp.nb = nX;
    sp.nh = nR;
    sp.nl = nI;
    sp.cols = Mat(sp.dim, sp.dim);
    sp.coords = Mat(sp.dim, sp.dim);
    auto put = [&](int dst, int src) {
        for (int i = 0; i < sp.dim; ++i) {
            sp.cols.at(i, dst) = Pinv.at(src, i);   // dual functional of P column src
            sp.coords.at(dst, i) = P.at(i, src);    // evaluation against that column
        }
    };
    for (int k = 0; k < nX; ++k) put(k, nI + nR + k);
    for (int k = 0; k < nR; ++k) put(nX + k, nI + k);
    for (int k = 0; k < nI; ++k) put(nX + nR + k, k);

    // Q = -(xi)^# : pair (u, v) with |u| = 1 maps to u v when standard
    for (size_t j = 0; j < pairs.size(); ++j) {
        const TensorWord& pr = pairs[j];
        if (pr[0].size() != 1) continue;
        Word w = pr[0] + pr[1];
        if (!word_is_standard(w, sys)) continue;
        sp.Q.at(M.bar.mono_index(md, w), static_cast<int>(j)) = Scalar(1);
    }
    return sp;
}

const SliceSplit& Model::split(int s, const Multideg& md) {
    auto key = std::make_pair(s, md);
    auto it = splits.find(key);
    if (it != splits.end()) return it->second;
    SliceSplit sp = (policy == SplitPolicy::Structured) ? structured_split(*this, s, md)
                                                        : echelon_split(*this, s, md);
    return splits.emplace(key, std::move(sp)).first->second;
}

std::vector<Scalar> Model::h_column(const Slot& slot) {
    const SliceSplit& sp = split(slot.s, slot.md);
    std::vector<Scalar> v(static_cast<size_t>(sp.dim));
    for (int i = 0; i < sp.dim; ++i) v[static_cast<size_t>(i)] = sp.cols.at(i, sp.nb + slot.h);
    return v;
}

std::vector<Scalar> Model::h_coords(const SliceVec& x) {
    const SliceSplit& sp = split(x.s, x.md);
    std::vector<Scalar> out(static_cast<size_t>(sp.nh), Scalar(0));
    for (int k = 0; k < sp.nh; ++k) {
        Scalar acc(0);
        for (int j = 0; j < sp.dim; ++j)
            if (!x.v[static_cast<size_t>(j)].is_zero()) acc += sp.coords.at(sp.nb + k, j) * x.v[static_cast<size_t>(j)];
        out[static_cast<size_t>(k)] = acc;
    }
    return out;
}

SliceVec Model::lambda_of(const std::vector<int>& tuple) {
    int k = static_cast<int>(tuple.size());
    int ssum = 0;
    Multideg md;
    md.k = slots[static_cast<size_t>(tuple[0])].md.k;
    for (int i : tuple) {
        ssum += slots[static_cast<size_t>(i)].s;
        md += slots[static_cast<size_t>(i)].md;
    }
    SliceVec out;
    out.s = ssum - (k - 2);
    out.md = md;
    out.v.assign(static_cast<size_t>(bar.slice_dim(out.s, md)), Scalar(0));
    for (int a = 1; a <= k - 1; ++a) {
        std::vector<int> left(tuple.begin(), tuple.begin() + a);
        std::vector<int> right(tuple.begin() + a, tuple.end());
        SliceVec L = qlam(left);
        SliceVec R = qlam(right);
        int t_len = k - a;
        int degsum = 0;
        for (int i = 0; i < a; ++i) degsum += slots[static_cast<size_t>(tuple[static_cast<size_t>(i)])].s;
        bool neg = ((a + 1) % 2) != 0;
        if ((((1 - t_len) * degsum) % 2) != 0) neg = !neg;  // Koszul sign
        const auto& lbasis = bar.slice_basis(L.s, L.md);
        const auto& rbasis = bar.slice_basis(R.s, R.md);
        for (size_t i = 0; i < L.v.size(); ++i) {
            if (L.v[i].is_zero()) continue;
            for (size_t j = 0; j < R.v.size(); ++j) {
                if (R.v[j].is_zero()) continue;
                TensorWord tw = lbasis[i];
                tw.insert(tw.end(), rbasis[j].begin(), rbasis[j].end());
                int idx = bar.slice_index(out.s, md, tw);
                Scalar c = L.v[i] * R.v[j];
                out.v[static_cast<size_t>(idx)] += neg ? -c : c;
            }
        }
    }
    return out;
}

SliceVec Model::qlam(const std::vector<int>& tuple) {
    auto it = qlam_memo.find(tuple);
    if (it != qlam_memo.end()) return it->second;
    SliceVec out;
    if (tuple.size() == 1) {
        const Slot& sl = slots[static_cast<size_t>(tuple[0])];
        out.s = sl.s;
        out.md = sl.md;
        out.v = h_column(sl);
        for (auto& x : out.v)
            if (!x.is_zero()) x = -x;  // Q lambda_1 = -id
    } else {
        SliceVec lam = lambda_of(tuple);
        const SliceSplit& sp = split(lam.s, lam.md);
        out.s = lam.s - 1;
        out.md = lam.md;
        out.v = mat_apply(sp.Q, lam.v);
    }
    return qlam_memo.emplace(tuple, std::move(out)).first->second;
}

/* deg-lex order with the first-listed generator largest; used to pick the
 * leading word of recovered relations. */
bool keller_less(const Word& a, const Word& b, const MonomialOrder& ord) {
    int da = ord.wdeg(a), db = ord.wdeg(b);
    if (da != db) return da < db;
    size_t n = std::min(a.size(), b.size());
    for (size_t i = 0; i < n; ++i)
        if (a[i] != b[i]) return a[i] > b[i];
    return a.size() < b.size();
}

Word keller_leading(const NCPoly& p, const MonomialOrder& ord) {
    const Word* best = nullptr;
    for (auto& [w, c] : p.t)
        if (!best || keller_less(*best, w, ord)) best = &w;
    return *best;
}

}  // namespace

AInfStructure merkulov_model(const ReductionSystem& sys, int s_max, int n_max, SplitPolicy policy,
                             long long dim_cap) {
    if (policy == SplitPolicy::Structured)
        for (auto& d : sys.pres.gen_degs)
            if (d.first() != 1)
                throw Error("structured splitting needs all generators in degree 1");
    if (sys.complete_up_to < n_max)
        throw Error("merkulov_model needs the system complete up to the Adams bound");

    Model M(sys, dim_cap, policy);
    AInfStructure E;
    E.field = sys.pres.field;
    int rank = sys.pres.adams_rank;

    // unit
    Multideg zero;
    zero.k = rank;
    E.basis.push_back({"1", 0, zero});
    M.slots.push_back({0, zero, 0});
    E.unit = 0;

    // degree-1 slices in generator order, then the rest by (s, multidegree)
    std::vector<std::pair<int, Multideg>> visited;
    auto visit = [&](int s, const Multideg& md) {
        for (auto& v : visited)
            if (v.first == s && v.second == md) return;
        visited.emplace_back(s, md);
        const SliceSplit& sp = M.split(s, md);
        for (int h = 0; h < sp.nh; ++h) {
            E.basis.push_back({"", s, md});
            M.slots.push_back({s, md, h});
        }
    };
    for (auto& gd : sys.pres.gen_degs) visit(1, gd);
    for (int n = 1; n <= n_max; ++n)
        for (auto& md : M.bar.degs_of(n)) visit(1, md);
    for (int s = 2; s <= s_max; ++s)
        for (int n = s; n <= n_max; ++n)
            for (auto& md : M.bar.degs_of(n)) visit(s, md);

    // names: the 1,2,(1+1),2,1 dimension pattern gets its customary letters
    {
        std::map<std::pair<int, int>, long long> byfirst;
        for (auto& e : E.basis) ++byfirst[{e.s, e.adams.first()}];
        std::map<std::pair<int, int>, long long> want{{{0, 0}, 1}, {{1, 1}, 2}, {{2, 3}, 1},
                                                      {{2, 4}, 1}, {{3, 6}, 2}, {{4, 7}, 1}};
        bool pattern = byfirst == want;
        std::map<std::pair<int, int>, int> counter;
        for (size_t i = 1; i < E.basis.size(); ++i) {
            auto& e = E.basis[i];
            int c = counter[{e.s, e.adams.first()}]++;
            if (pattern) {
                if (e.s == 1)
                    e.name = "a" + std::to_string(c + 1);
                else if (e.s == 2)
                    e.name = (e.adams.first() == 3) ? "b1" : "b2";
                else if (e.s == 3)
                    e.name = "g" + std::to_string(c + 1);
                else
                    e.name = "d";
            } else {
                e.name = "e" + std::to_string(e.s) + "n" + std::to_string(e.adams.first()) +
                         (c ? "_" + std::to_string(c + 1) : "");
            }
        }
    }

    auto dims = E.dims();
    std::map<std::pair<int, Multideg>, std::map<int, int>> global_of;  // (s,md) -> h -> idx
    for (size_t i = 0; i < E.basis.size(); ++i)
        global_of[{E.basis[i].s, E.basis[i].adams}][M.slots[i].h] = static_cast<int>(i);

    for (int n = 2; n <= 7; ++n) {
        if (forced_vanishing(dims, n)) continue;
        E.table_ns.push_back(n);
        std::vector<int> tuple(static_cast<size_t>(n));
        std::function<void(int, int, Multideg)> rec = [&](int pos, int ssum, Multideg asum) {
            if (asum.first() > n_max) return;
            if (pos == n) {
                std::pair<int, Multideg> target{ssum - n + 2, asum};
                auto dit = dims.find(target);
                if (dit == dims.end() || dit->second == 0) return;
                bool has_unit = false;
                for (int i : tuple) has_unit = has_unit || i == E.unit;
                std::vector<std::pair<int, Scalar>> val;
                if (has_unit && n != 2) {
                    // strict unit: the entry stays zero; the arity-3 case is
                    // cheap enough to assert against the recursion itself
                    if (n == 3) {
                        SliceVec lam = M.lambda_of(tuple);
                        for (auto& hc : M.h_coords(lam))
                            if (!hc.is_zero())
                                throw Error("internal: strict unit violated at arity 3");
                    }
                } else {
                    SliceVec lam = M.lambda_of(tuple);
                    auto hc = M.h_coords(lam);
                    for (size_t h = 0; h < hc.size(); ++h)
                        if (!hc[h].is_zero())
                            val.emplace_back(global_of[target][static_cast<int>(h)], hc[h]);
                }
                compact_sparse(val);
                E.table[tuple] = std::move(val);
                return;
            }
            for (size_t i = 0; i < E.basis.size(); ++i) {
                if (static_cast<int>(i) == E.unit && n != 2) continue;
                tuple[static_cast<size_t>(pos)] = static_cast<int>(i);
                rec(pos + 1, ssum + E.basis[i].s, asum + E.basis[i].adams);
            }
        };
        Multideg z;
        z.k = rank;
        rec(0, 0, z);
    }

    // normalize E^2 basis vectors so recovered relations are monic with the
    // first-listed generator largest (degree-one-generated case only)
    bool deg1 = true;
    for (auto& d : sys.pres.gen_degs) deg1 = deg1 && d.first() == 1;
    if (deg1) {
        std::vector<int> alphas;
        for (size_t i = 0; i < E.basis.size(); ++i)
            if (E.basis[i].s == 1) alphas.push_back(static_cast<int>(i));
        std::vector<Scalar> scale(E.basis.size(), Scalar(1));
        for (size_t b = 0; b < E.basis.size(); ++b) {
            if (E.basis[b].s != 2) continue;
            int len = E.basis[b].adams.first();
            if (!E.has_arity(len)) continue;
            NCPoly rho;
            std::vector<int> word(static_cast<size_t>(len), 0);
            std::function<void(int)> walk = [&](int pos) {
                if (pos == len) {
                    std::vector<int> tup;
                    for (int g : word) tup.push_back(alphas[static_cast<size_t>(g)]);
                    auto it = E.table.find(tup);
                    if (it == E.table.end()) return;
                    for (auto& [oi, oc] : it->second)
                        if (oi == static_cast<int>(b)) {
                            Word w;
                            for (int g : word) w += letter(g);
                            rho.add_term(w, oc);
                        }
                    return;
                }
                for (size_t g = 0; g < alphas.size(); ++g) {
                    word[static_cast<size_t>(pos)] = static_cast<int>(g);
                    walk(pos + 1);
                }
            };
            walk(0);
            if (rho.is_zero()) continue;
            scale[b] = rho.t.at(keller_leading(rho, sys.order));
        }
        std::map<std::vector<int>, std::vector<std::pair<int, Scalar>>> newtab;
        for (auto& [tup, val] : E.table) {
            Scalar f(1);
            for (int i : tup) f *= scale[static_cast<size_t>(i)];
            std::vector<std::pair<int, Scalar>> nv;
            for (auto& [oi, oc] : val) nv.emplace_back(oi, oc * f / scale[static_cast<size_t>(oi)]);
            newtab[tup] = std::move(nv);
        }
        E.table = std::move(newtab);
    }
    return E;
}

KellerResult keller_relations(const AInfStructure& E, const Presentation& pres) {
    for (auto& d : pres.gen_degs)
        if (d.first() != 1) throw Error("keller_relations needs all generators in degree 1");
    KellerResult out;
    std::vector<int> alphas;
    for (size_t i = 0; i < E.basis.size(); ++i)
        if (E.basis[i].s == 1) alphas.push_back(static_cast<int>(i));
    if (alphas.size() != pres.gens.size())
        throw Error("E^1 dimension does not match the generator count");
    MonomialOrder ord;
    ord.weight.assign(pres.gens.size(), 1);
    ord.prec.resize(pres.gens.size());
    for (size_t i = 0; i < pres.gens.size(); ++i) ord.prec[i] = static_cast<int>(i);
    for (size_t b = 0; b < E.basis.size(); ++b) {
        if (E.basis[b].s != 2) continue;
        int len = E.basis[b].adams.first();
        if (!E.has_arity(len))
            throw Error("m_" + std::to_string(len) + " missing; image not contained in E^2 slice");
        NCPoly rho;
        std::vector<int> word(static_cast<size_t>(len), 0);
        std::function<void(int)> walk = [&](int pos) {
            if (pos == len) {
                std::vector<int> tup;
                for (int g : word) tup.push_back(alphas[static_cast<size_t>(g)]);
                auto it = E.table.find(tup);
                if (it == E.table.end()) return;
                for (auto& [oi, oc] : it->second)
                    if (oi == static_cast<int>(b)) {
                        Word w;
                        for (int g : word) w += letter(g);
                        rho.add_term(w, oc);
                    }
                return;
            }
            for (size_t g = 0; g < alphas.size(); ++g) {
                word[static_cast<size_t>(pos)] = static_cast<int>(g);
                walk(pos + 1);
            }
        };
        walk(0);
        if (rho.is_zero()) continue;
        Scalar lead = rho.t.at(keller_leading(rho, ord));
        NCPoly normalized = lead.inverse() * rho;
        out.by_degree[len].push_back(normalized);
    }
    return out;
}

bool relation_spans_match(const KellerResult& got, const Presentation& pres, std::string* why) {
    std::map<int, std::vector<NCPoly>> want;
    for (size_t r = 0; r < pres.rels.size(); ++r)
        want[pres.rel_degs[r].first()].push_back(pres.rels[r]);
    std::set<int> degrees;
    for (auto& [d, v] : want) degrees.insert(d);
    for (auto& [d, v] : got.by_degree) degrees.insert(d);
    for (int d : degrees) {
        auto wi = want.find(d);
        auto gi = got.by_degree.find(d);
        size_t nw = wi == want.end() ? 0 : wi->second.size();
        size_t ng = gi == got.by_degree.end() ? 0 : gi->second.size();
        if (nw != ng) {
            if (why)
                *why = "degree " + std::to_string(d) + ": " + std::to_string(ng) +
                       " recovered vs " + std::to_string(nw) + " input relations";
            return false;
        }
        if (nw == 0) continue;
        // compare reduced row echelon forms over the word basis
        std::set<Word> wordset;
        for (auto& p : wi->second)
            for (auto& [w, c] : p.t) wordset.insert(w);
        for (auto& p : gi->second)
            for (auto& [w, c] : p.t) wordset.insert(w);
        std::vector<Word> words(wordset.begin(), wordset.end());
        std::map<Word, int> widx;
        for (size_t i = 0; i < words.size(); ++i) widx[words[i]] = static_cast<int>(i);
        auto fill = [&](const std::vector<NCPoly>& v) {
            Mat m(static_cast<int>(v.size()), static_cast<int>(words.size()));
            for (size_t r = 0; r < v.size(); ++r)
                for (auto& [w, c] : v[r].t) m.at(static_cast<int>(r), widx[w]) = c;
            rref(m);
            return m;
        };
        Mat a = fill(wi->second), b = fill(gi->second);
        for (int i = 0; i < a.r && i < b.r; ++i)
            for (int j = 0; j < a.c; ++j)
                if (!(a.at(i, j) == b.at(i, j))) {
                    if (why) *why = "degree " + std::to_string(d) + ": relation spans differ";
                    return false;
                }
    }
    return true;
}

namespace {

std::vector<std::pair<int, Scalar>> vec_m2(const AInfStructure& E,
                                           const std::map<std::pair<int, Multideg>, long long>& dims,
                                           const std::vector<std::pair<int, Scalar>>& x,
                                           const std::vector<std::pair<int, Scalar>>& y) {
    std::vector<std::pair<int, Scalar>> acc;
    for (auto& [i, ci] : x)
        for (auto& [j, cj] : y)
            for (auto& [oi, oc] : eval_m(E, dims, {i, j})) add_sparse(acc, oi, ci * cj * oc);
    compact_sparse(acc);
    return acc;
}

Scalar coeff_of(const std::vector<std::pair<int, Scalar>>& v, int idx) {
    for (auto& [i, c] : v)
        if (i == idx) return c;
    return Scalar(0);
}

}  // namespace

FrobeniusData frobenius_data(const AInfStructure& E) {
    FrobeniusData fd;
    auto dims = E.dims();
    std::map<std::pair<int, int>, std::vector<int>> byfirst;
    for (size_t i = 0; i < E.basis.size(); ++i)
        byfirst[{E.basis[i].s, E.basis[i].adams.first()}].push_back(static_cast<int>(i));
    auto count = [&](int s, int n) {
        auto it = byfirst.find({s, n});
        return it == byfirst.end() ? 0 : static_cast<int>(it->second.size());
    };
    if (count(0, 0) != 1 || count(1, 1) != 2 || count(2, 3) != 1 || count(2, 4) != 1 ||
        count(3, 6) != 2 || count(4, 7) != 1 ||
        static_cast<int>(E.basis.size()) != 8) {
        fd.why = "dimension pattern is not 1,2,(1+1),2,1";
        return fd;
    }
    int delta = byfirst[{4, 7}][0];
    int beta1 = byfirst[{2, 3}][0];
    int h4 = byfirst[{2, 4}][0];
    std::vector<int> alpha = byfirst[{1, 1}];
    std::vector<int> g3 = byfirst[{3, 6}];

    auto unitvec = [&](int i) { return std::vector<std::pair<int, Scalar>>{{i, Scalar(1)}}; };
    fd.delta.assign(E.basis.size(), Scalar(0));
    fd.delta[static_cast<size_t>(delta)] = Scalar(1);
    fd.beta1.assign(E.basis.size(), Scalar(0));
    fd.beta1[static_cast<size_t>(beta1)] = Scalar(1);

    Scalar e = coeff_of(vec_m2(E, dims, unitvec(beta1), unitvec(h4)), delta);
    if (e.is_zero()) {
        fd.why = "degenerate pairing: m2(beta1, E^2_{-4}) = 0: not Frobenius";
        return fd;
    }
    fd.beta2.assign(E.basis.size(), Scalar(0));
    fd.beta2[static_cast<size_t>(h4)] = e.inverse();
    fd.t = coeff_of(vec_m2(E, dims, unitvec(h4), unitvec(beta1)), delta) * e.inverse();

    // gamma basis dual to alpha under m2(alpha_i, gamma_j) = delta_ij delta
    Mat P(2, 2);
    for (int i = 0; i < 2; ++i)
        for (int b = 0; b < 2; ++b)
            P.at(i, b) = coeff_of(
                vec_m2(E, dims, unitvec(alpha[static_cast<size_t>(i)]), unitvec(g3[static_cast<size_t>(b)])),
                delta);
    Mat Pinv;
    try {
        Pinv = inverse(P);
    } catch (const Error&) {
        fd.why = "degenerate pairing: m2(E^1, E^3) singular: not Frobenius";
        return fd;
    }
    auto gamma = [&](int j) {
        std::vector<std::pair<int, Scalar>> v;
        for (int b = 0; b < 2; ++b)
            if (!Pinv.at(b, j).is_zero()) v.emplace_back(g3[static_cast<size_t>(b)], Pinv.at(b, j));
        return v;
    };
    fd.gamma1.assign(E.basis.size(), Scalar(0));
    fd.gamma2.assign(E.basis.size(), Scalar(0));
    for (auto& [i, c] : gamma(0)) fd.gamma1[static_cast<size_t>(i)] = c;
    for (auto& [i, c] : gamma(1)) fd.gamma2[static_cast<size_t>(i)] = c;

    fd.lambda = Mat(2, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            fd.lambda.at(i, j) =
                coeff_of(vec_m2(E, dims, gamma(i), unitvec(alpha[static_cast<size_t>(j)])), delta);
    Mat check = fd.lambda;
    if (rank_ff(check) != 2) {
        fd.why = "Lambda matrix singular: not Frobenius";
        return fd;
    }
    fd.ok = true;
    return fd;
}

bool check_frobenius(const AInfStructure& E) {
    auto dims = E.dims();
    int top = 0;
    for (auto& e : E.basis) top = std::max(top, e.s);
    std::vector<int> topidx;
    for (size_t i = 0; i < E.basis.size(); ++i)
        if (E.basis[i].s == top) topidx.push_back(static_cast<int>(i));
    if (topidx.size() != 1) return false;
    int phi = topidx[0];
    int n = static_cast<int>(E.basis.size());
    Mat G(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            G.at(i, j) = coeff_of(eval_m(E, dims, {i, j}), phi);
    return rank_ff(G) == n;
}

/* ------------------------------ tables IO ------------------------------ */

std::string write_tables(const AInfStructure& E) {
    std::ostringstream os;
    os << "ainf-tables 1\n";
    os << "field " << (E.field ? E.field->display() : "Q") << "\n";
    for (auto& e : E.basis) os << "basis " << e.name << " " << e.s << " " << e.adams.str() << "\n";
    os << "unit " << E.basis[static_cast<size_t>(E.unit)].name << "\n";
    os << "tables";
    for (int n : E.table_ns) os << " " << n;
    os << "\n";
    for (auto& [tup, val] : E.table) {
        os << "m" << tup.size();
        for (int i : tup) os << " " << E.basis[static_cast<size_t>(i)].name;
        os << " ->";
        if (val.empty()) {
            os << " 0";
        } else {
            bool first = true;
            for (auto& [oi, oc] : val) {
                std::string cs = oc.str();
                bool wrap = !oc.is_rational() && sgn(oc.rat_part()) != 0;
                if (wrap) cs = "(" + cs + ")";
                os << (first ? " " : " + ") << cs << "*" << E.basis[static_cast<size_t>(oi)].name;
                first = false;
            }
        }
        os << "\n";
    }
    return os.str();
}

AInfStructure parse_tables(const std::string& text) {
    AInfStructure E;
    Presentation scalar_ctx;  // carries the field for coefficient parsing
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& msg) -> void { throw ParseError(lineno, 1, msg); };
    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        if (kw == "ainf-tables") {
            continue;
        } else if (kw == "field") {
            std::string rest;
            std::getline(ls, rest);
            Presentation tmp = parse_presentation("field" + rest + "\n");
            scalar_ctx.field = tmp.field;
            E.field = tmp.field;
        } else if (kw == "basis") {
            AinfBasisElem e;
            std::string degs;
            if (!(ls >> e.name >> e.s >> degs)) fail("basis line needs: name s (a,b)");
            if (degs.size() < 2 || degs.front() != '(' || degs.back() != ')')
                fail("multidegree must be parenthesized");
            std::istringstream ts(degs.substr(1, degs.size() - 2));
            std::string comp;
            int idx = 0;
            while (std::getline(ts, comp, ',')) {
                if (idx >= 3) fail("multidegree rank exceeds 3");
                e.adams.v[static_cast<size_t>(idx++)] = std::stoi(comp);
            }
            e.adams.k = idx;
            E.basis.push_back(e);
        } else if (kw == "unit") {
            std::string name;
            ls >> name;
            E.unit = E.find_name(name);
            if (E.unit < 0) fail("unknown unit name");
        } else if (kw == "tables") {
            int n;
            while (ls >> n) E.table_ns.push_back(n);
        } else if (kw.size() >= 2 && kw[0] == 'm') {
            int n = std::stoi(kw.substr(1));
            std::vector<int> tup;
            for (int i = 0; i < n; ++i) {
                std::string name;
                if (!(ls >> name)) fail("expected " + std::to_string(n) + " input names");
                int idx = E.find_name(name);
                if (idx < 0) fail("unknown basis name " + name);
                tup.push_back(idx);
            }
            std::string arrow;
            ls >> arrow;
            if (arrow != "->") fail("expected '->'");
            std::string rhs;
            std::getline(ls, rhs);
            std::vector<std::pair<int, Scalar>> val;
            // split on '+' at paren depth 0
            std::vector<std::string> terms;
            std::string cur;
            int depth = 0;
            for (char c : rhs) {
                if (c == '(') ++depth;
                if (c == ')') --depth;
                if (c == '+' && depth == 0) {
                    terms.push_back(cur);
                    cur.clear();
                } else {
                    cur += c;
                }
            }
            terms.push_back(cur);
            for (auto& term : terms) {
                std::string t = term;
                size_t a = t.find_first_not_of(" \t");
                if (a == std::string::npos) continue;
                size_t b = t.find_last_not_of(" \t");
                t = t.substr(a, b - a + 1);
                if (t == "0") continue;
                size_t star = t.rfind('*');
                if (star == std::string::npos) fail("term must be coeff*name");
                std::string cs = t.substr(0, star);
                std::string name = t.substr(star + 1);
                int idx = E.find_name(name);
                if (idx < 0) fail("unknown basis name " + name);
                val.emplace_back(idx, parse_scalar_expr(cs, scalar_ctx));
            }
            compact_sparse(val);
            E.table[tup] = std::move(val);
        } else {
            fail("unknown directive " + kw);
        }
    }
    if (E.unit < 0) throw Error("tables file lacks a unit");
    // every entry's outputs must sit in the bidegree forced by its inputs
    for (auto& [tup, val] : E.table) {
        int ssum = 0;
        Multideg asum;
        asum.k = E.basis.empty() ? 1 : E.basis[0].adams.k;
        for (int i : tup) {
            ssum += E.basis[static_cast<size_t>(i)].s;
            asum += E.basis[static_cast<size_t>(i)].adams;
        }
        int want_s = ssum - static_cast<int>(tup.size()) + 2;
        for (auto& [oi, oc] : val) {
            const auto& e = E.basis[static_cast<size_t>(oi)];
            if (e.s != want_s || !(e.adams == asum))
                throw Error("table entry violates the bidegree of m_" +
                            std::to_string(tup.size()) + " (output " + e.name + ")");
        }
    }
    return E;
}

bool merkulov_homotopy_check(const ReductionSystem& sys, SplitPolicy policy, int s_max, int n_max,
                             std::string* why) {
    Model M(sys, 0, policy);
    for (int n = 1; n <= n_max; ++n)
        for (auto& md : M.bar.degs_of(n))
            for (int s = 1; s <= s_max; ++s) {
                const SliceSplit& sp = M.split(s, md);
                if (sp.dim == 0) continue;
                const SliceSplit& up = M.split(s + 1, md);
                Mat d_in = M.dual_d(s - 1, md);
                Mat d_out = M.dual_d(s, md);
                // dQ + Qd applied to each basis vector vs id - Pr_H
                Mat lhs = mat_mul(d_in, sp.Q);
                Mat qd = mat_mul(up.Q, d_out);
                for (int i = 0; i < sp.dim; ++i)
                    for (int j = 0; j < sp.dim; ++j) lhs.at(i, j) += qd.at(i, j);
                Mat prh(sp.dim, sp.dim);
                for (int k = 0; k < sp.nh; ++k)
                    for (int i = 0; i < sp.dim; ++i)
                        for (int j = 0; j < sp.dim; ++j)
                            prh.at(i, j) += sp.cols.at(i, sp.nb + k) * sp.coords.at(sp.nb + k, j);
                for (int i = 0; i < sp.dim; ++i)
                    for (int j = 0; j < sp.dim; ++j) {
                        Scalar want = (i == j ? Scalar(1) : Scalar(0)) - prh.at(i, j);
                        if (!(lhs.at(i, j) == want)) {
                            if (why)
                                *why = "homotopy identity fails at slice (" + std::to_string(s) +
                                       ", " + md.str() + ") entry (" + std::to_string(i) + "," +
                                       std::to_string(j) + ")";
                            return false;
                        }
                    }
            }
    return true;
}

bool restricted_tables_equal(const AInfStructure& a, const AInfStructure& b, int n,
                             std::string* why) {
    auto alphas = [](const AInfStructure& E) {
        std::vector<int> v;
        for (size_t i = 0; i < E.basis.size(); ++i)
            if (E.basis[i].s == 1) v.push_back(static_cast<int>(i));
        return v;
    };
    auto slot_ordinal = [](const AInfStructure& E, int idx) {
        int ord = 0;
        for (int i = 0; i < idx; ++i)
            if (E.basis[static_cast<size_t>(i)].s == E.basis[static_cast<size_t>(idx)].s &&
                E.basis[static_cast<size_t>(i)].adams == E.basis[static_cast<size_t>(idx)].adams)
                ++ord;
        return ord;
    };
    std::vector<int> aa = alphas(a), bb = alphas(b);
    if (aa.size() != bb.size()) {
        if (why) *why = "different E^1 dimensions";
        return false;
    }
    size_t g = aa.size();
    std::vector<int> word(static_cast<size_t>(n), 0);
    std::function<bool(int)> walk = [&](int pos) -> bool {
        if (pos == n) {
            std::vector<int> ta, tb;
            for (int w : word) {
                ta.push_back(aa[static_cast<size_t>(w)]);
                tb.push_back(bb[static_cast<size_t>(w)]);
            }
            auto ia = a.table.find(ta);
            auto ib = b.table.find(tb);
            std::vector<std::pair<int, Scalar>> va, vb;
            if (ia != a.table.end()) va = ia->second;
            if (ib != b.table.end()) vb = ib->second;
            auto canon = [&](const AInfStructure& E, std::vector<std::pair<int, Scalar>> v) {
                std::vector<std::tuple<int, int, int, std::string, std::string>> c;
                for (auto& [i, s] : v)
                    c.emplace_back(E.basis[static_cast<size_t>(i)].s, E.basis[static_cast<size_t>(i)].adams.first(),
                                   slot_ordinal(E, i), E.basis[static_cast<size_t>(i)].adams.str(), s.str());
                std::sort(c.begin(), c.end());
                return c;
            };
            if (canon(a, va) != canon(b, vb)) {
                if (why) {
                    *why = "m" + std::to_string(n) + " differs on an E^1 tuple";
                }
                return false;
            }
            return true;
        }
        for (size_t w = 0; w < g; ++w) {
            word[static_cast<size_t>(pos)] = static_cast<int>(w);
            if (!walk(pos + 1)) return false;
        }
        return true;
    };
    return walk(0);
}

}  // namespace ncalg
