#include "ncalg/bar.hpp"

#include <cstdlib>

namespace ncalg {

long long default_dim_cap() {
    if (const char* env = std::getenv("NCALG_DIM_CAP")) {
        long long v = std::atoll(env);
        if (v > 0) return v;
    }
    return 20000;
}

BarContext::BarContext(const ReductionSystem& s, long long cap)
    : sys(s), dim_cap(cap > 0 ? cap : default_dim_cap()) {}

const std::vector<Word>& BarContext::monos(const Multideg& d) {
    auto it = monos_.find(d);
    if (it != monos_.end()) return it->second;
    auto& v = monos_[d] = standard_monomials(sys, d);
    auto& idx = mono_idx_[d];
    for (size_t i = 0; i < v.size(); ++i) idx[v[i]] = static_cast<int>(i);
    return v;
}

int BarContext::mono_index(const Multideg& d, const Word& w) {
    monos(d);
    auto& idx = mono_idx_[d];
    auto it = idx.find(w);
    if (it == idx.end()) throw Error("internal: word not in standard basis");
    return it->second;
}

const std::vector<std::pair<int, Scalar>>& BarContext::product(const Word& u, const Word& v) {
    auto key = std::make_pair(u, v);
    auto it = prod_.find(key);
    if (it != prod_.end()) return it->second;
    Multideg d = sys.pres.deg_of(u) + sys.pres.deg_of(v);
    NCPoly nf = normal_form(NCPoly::monomial(u + v), sys);
    std::vector<std::pair<int, Scalar>> coords;
    for (auto& [w, c] : nf.t) coords.emplace_back(mono_index(d, w), c);
    return prod_[key] = std::move(coords);
}

const std::vector<Multideg>& BarContext::degs_of(int first) {
    auto it = degs_.find(first);
    if (it != degs_.end()) return it->second;
    return degs_[first] = realized_multidegs(sys, first);
}

const std::vector<TensorWord>& BarContext::slice_basis(int s, const Multideg& d) {
    auto key = std::make_pair(s, d);
    auto it = bases_.find(key);
    if (it != bases_.end()) return it->second;
    std::vector<TensorWord> out;
    if (s == 0) {
        if (d.is_zero()) out.push_back({});
    } else if (s == 1) {
        if (d.first() >= 1)
            for (auto& w : monos(d)) out.push_back({w});
    } else if (d.first() >= s) {
        // first factor runs over realized degrees, rest recursively
        for (int f = 1; f + (s - 1) <= d.first(); ++f) {
            for (auto& d1 : degs_of(f)) {
                Multideg rest = d - d1;
                bool comparable = true;
                if (rest.first() < s - 1) comparable = false;
                if (!comparable) continue;
                const auto& tails = slice_basis(s - 1, rest);
                if (tails.empty()) continue;
                for (auto& w : monos(d1))
                    for (auto& t : tails) {
                        TensorWord tw;
                        tw.reserve(static_cast<size_t>(s));
                        tw.push_back(w);
                        tw.insert(tw.end(), t.begin(), t.end());
                        out.push_back(std::move(tw));
                    }
            }
        }
    }
    if (static_cast<long long>(out.size()) > dim_cap)
        throw Error("bar slice (" + std::to_string(s) + ", " + d.str() + ") has dimension " +
                    std::to_string(out.size()) + " above the cap " + std::to_string(dim_cap) +
                    " (set NCALG_DIM_CAP to raise)");
    auto& idx = base_idx_[key];
    for (size_t i = 0; i < out.size(); ++i) idx[out[i]] = static_cast<int>(i);
    return bases_[key] = std::move(out);
}

int BarContext::slice_index(int s, const Multideg& d, const TensorWord& t) {
    slice_basis(s, d);
    auto& idx = base_idx_[{s, d}];
    auto it = idx.find(t);
    if (it == idx.end()) throw Error("internal: tensor word not in slice basis");
    return it->second;
}

const Mat& BarContext::bar_d(int s, const Multideg& d) {
    auto key = std::make_pair(s, d);
    auto it = dmat_.find(key);
    if (it != dmat_.end()) return it->second;
    const auto& src = slice_basis(s, d);
    const auto& tgt = slice_basis(s - 1, d);
    Mat m(static_cast<int>(tgt.size()), static_cast<int>(src.size()));
    for (size_t col = 0; col < src.size(); ++col) {
        const TensorWord& tw = src[col];
        for (int i = 2; i <= s; ++i) {
            // d([a_1|...|a_s]) contribution (-1)^{i-1} [..|a_{i-1} a_i|..]
            Scalar sign((i - 1) % 2 == 0 ? 1 : -1);
            const Word& u = tw[static_cast<size_t>(i - 2)];
            const Word& v = tw[static_cast<size_t>(i - 1)];
            Multideg md = sys.pres.deg_of(u) + sys.pres.deg_of(v);
            for (auto& [mi, c] : product(u, v)) {
                TensorWord merged;
                merged.reserve(static_cast<size_t>(s - 1));
                for (int k = 0; k < i - 2; ++k) merged.push_back(tw[static_cast<size_t>(k)]);
                merged.push_back(monos(md)[static_cast<size_t>(mi)]);
                for (int k = i; k < s; ++k) merged.push_back(tw[static_cast<size_t>(k)]);
                int row = slice_index(s - 1, d, merged);
                m.at(row, static_cast<int>(col)) += sign * c;
            }
        }
    }
    return dmat_[key] = std::move(m);
}

BettiTable betti_numbers(const ReductionSystem& sys, int s_max, int n_max, long long dim_cap) {
    BarContext ctx(sys, dim_cap);
    BettiTable table;
    table.b[{0, 0}] = 1;
    for (int n = 1; n <= n_max; ++n) {
        for (auto& md : ctx.degs_of(n)) {
            for (int s = 1; s <= s_max; ++s) {
                long long dim = ctx.slice_dim(s, md);
                if (dim == 0) continue;
                long long rk_in = rank_ff(ctx.bar_d(s, md));
                long long rk_out = rank_ff(ctx.bar_d(s + 1, md));
                long long b = dim - rk_in - rk_out;
                if (b) table.b[{s, n}] += b;
            }
        }
    }
    return table;
}

ShapeReport resolution_shape(const BettiTable& b, int d) {
    ShapeReport rep;
    // top term must be a single A(-l)
    int l = -1;
    long long top_total = 0;
    for (auto& [sn, v] : b.b)
        if (sn.first == d) {
            top_total += v;
            l = std::max(l, sn.second);
        }
    if (top_total != 1 || l < 0) {
        rep.violation = "top homological degree " + std::to_string(d) + " has total dimension " +
                        std::to_string(top_total) + ", expected 1";
        return rep;
    }
    rep.l = l;
    for (int w = 0; w <= d; ++w) {
        std::vector<int> a, mirrored;
        for (auto& [sn, v] : b.b) {
            if (sn.first == w)
                for (long long i = 0; i < v; ++i) a.push_back(sn.second);
            if (sn.first == d - w)
                for (long long i = 0; i < v; ++i) mirrored.push_back(l - sn.second);
        }
        std::sort(a.begin(), a.end());
        std::sort(mirrored.begin(), mirrored.end());
        if (a != mirrored) {
            rep.violation = "degrees at homological position " + std::to_string(w) +
                            " do not mirror position " + std::to_string(d - w);
            return rep;
        }
    }
    rep.symmetric = true;
    return rep;
}

std::vector<Rational> betti_hilbert_product(const BettiTable& b, const std::vector<long long>& hilbert,
                                            int n_max) {
    std::vector<Rational> poly(static_cast<size_t>(n_max) + 1, Rational(0));
    for (auto& [sn, v] : b.b) {
        if (sn.second > n_max) continue;
        Rational c(static_cast<long>(v));
        if (sn.first % 2) c = -c;
        poly[static_cast<size_t>(sn.second)] += c;
    }
    std::vector<Rational> out(static_cast<size_t>(n_max) + 1, Rational(0));
    for (int i = 0; i <= n_max; ++i)
        for (int j = 0; i + j <= n_max; ++j) {
            if (static_cast<size_t>(j) >= hilbert.size()) continue;
            out[static_cast<size_t>(i + j)] +=
                poly[static_cast<size_t>(i)] * Rational(static_cast<long>(hilbert[static_cast<size_t>(j)]));
        }
    return out;
}

}  // namespace ncalg
