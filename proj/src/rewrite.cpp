#include "ncalg/rewrite.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <tuple>

namespace ncalg {

namespace {

bool contains_subword(const Word& w, const Word& sub) {
    return w.find(sub) != Word::npos;
}

int find_reducer(const std::vector<RewriteRule>& rules, const Word& w, size_t* pos) {
    for (size_t r = 0; r < rules.size(); ++r) {
        size_t p = w.find(rules[r].lead);
        if (p != Word::npos) {
            if (pos) *pos = p;
            return static_cast<int>(r);
        }
    }
    return -1;
}

NCPoly reduce_by(const NCPoly& p, const std::vector<RewriteRule>& rules, const MonomialOrder& ord) {
    NCPoly work = p;
    while (true) {
        const Word* best = nullptr;
        int rule = -1;
        size_t pos = 0;
        for (auto& [w, c] : work.t) {
            size_t pp;
            int r = find_reducer(rules, w, &pp);
            if (r < 0) continue;
            if (!best || ord.less(*best, w)) {
                best = &w;
                rule = r;
                pos = pp;
            }
        }
        if (!best) return work;
        Word w = *best;
        Scalar c = work.t.at(w);
        work.t.erase(w);
        Word u = w.substr(0, pos);
        Word v = w.substr(pos + rules[static_cast<size_t>(rule)].lead.size());
        for (auto& [tw, tc] : rules[static_cast<size_t>(rule)].tail.t) work.add_term(u + tw + v, c * tc);
    }
}

RewriteRule make_rule(const NCPoly& p, const MonomialOrder& ord, const std::vector<Multideg>& gdegs,
                      int seq) {
    const Word* lead = nullptr;
    for (auto& [w, c] : p.t)
        if (!lead || ord.less(*lead, w)) lead = &w;
    RewriteRule r;
    r.lead = *lead;
    Scalar lc = p.t.at(r.lead);
    for (auto& [w, c] : p.t)
        if (w != r.lead) r.tail.add_term(w, -(c / lc));
    auto d = p.homogeneous_deg(gdegs);
    if (!d) throw Error("internal: inhomogeneous polynomial in completion");
    r.deg = *d;
    r.seq = seq;
    return r;
}

void sort_rules(std::vector<RewriteRule>& rules, const MonomialOrder& ord) {
    std::stable_sort(rules.begin(), rules.end(), [&](const RewriteRule& a, const RewriteRule& b) {
        int da = ord.wdeg(a.lead), db = ord.wdeg(b.lead);
        if (da != db) return da < db;
        return a.seq < b.seq;
    });
}

/* Restore the inter-reduced invariant: no lead contains another lead, tails in
 * normal form. */
void inter_reduce(std::vector<RewriteRule>& rules, const MonomialOrder& ord,
                  const std::vector<Multideg>& gdegs, int* seq) {
    bool changed = true;
    while (changed) {
        changed = false;
        sort_rules(rules, ord);
        for (size_t i = 0; i < rules.size(); ++i) {
            std::vector<RewriteRule> others;
            others.reserve(rules.size() - 1);
            for (size_t j = 0; j < rules.size(); ++j)
                if (j != i) others.push_back(rules[j]);
            if (find_reducer(others, rules[i].lead, nullptr) >= 0) {
                NCPoly p = NCPoly::monomial(rules[i].lead) - rules[i].tail;
                rules.erase(rules.begin() + static_cast<long>(i));
                p = reduce_by(p, rules, ord);
                if (!p.is_zero()) rules.push_back(make_rule(p, ord, gdegs, (*seq)++));
                changed = true;
                break;
            }
            NCPoly t = reduce_by(rules[i].tail, rules, ord);
            if (t != rules[i].tail) rules[i].tail = std::move(t);
        }
    }
    sort_rules(rules, ord);
}

struct OverlapSite {
    int a, b;
    Word word;
};

std::vector<OverlapSite> all_overlaps(const std::vector<RewriteRule>& rules, const MonomialOrder& ord,
                                      int max_deg) {
    std::vector<OverlapSite> out;
    for (size_t i = 0; i < rules.size(); ++i)
        for (size_t j = 0; j < rules.size(); ++j) {
            const Word& la = rules[i].lead;
            const Word& lb = rules[j].lead;
            size_t maxlen = std::min(la.size(), lb.size());
            for (size_t L = 1; L < maxlen; ++L) {
                if (la.compare(la.size() - L, L, lb, 0, L) != 0) continue;
                Word w = la + lb.substr(L);
                if (ord.wdeg(w) > max_deg) continue;
                out.push_back({static_cast<int>(i), static_cast<int>(j), w});
            }
        }
    std::sort(out.begin(), out.end(), [&](const OverlapSite& x, const OverlapSite& y) {
        int dx = ord.wdeg(x.word), dy = ord.wdeg(y.word);
        if (dx != dy) return dx < dy;
        if (x.word != y.word) return x.word < y.word;
        if (x.a != y.a) return x.a < y.a;
        return x.b < y.b;
    });
    return out;
}

std::pair<NCPoly, NCPoly> reduce_two_ways(const std::vector<RewriteRule>& rules,
                                          const MonomialOrder& ord, const OverlapSite& s) {
    const RewriteRule& A = rules[static_cast<size_t>(s.a)];
    const RewriteRule& B = rules[static_cast<size_t>(s.b)];
    Word suffix = s.word.substr(A.lead.size());
    Word prefix = s.word.substr(0, s.word.size() - B.lead.size());
    NCPoly p1, p2;
    for (auto& [tw, tc] : A.tail.t) p1.add_term(tw + suffix, tc);
    for (auto& [tw, tc] : B.tail.t) p2.add_term(prefix + tw, tc);
    return {reduce_by(p1, rules, ord), reduce_by(p2, rules, ord)};
}

}  // namespace

ReductionSystem complete(const Presentation& pres, int max_deg,
                         const std::vector<std::string>& precedence) {
    ReductionSystem sys;
    sys.pres = pres;
    int ng = static_cast<int>(pres.gens.size());
    sys.order.weight.resize(static_cast<size_t>(ng));
    sys.order.prec.assign(static_cast<size_t>(ng), 0);
    for (int i = 0; i < ng; ++i)
        sys.order.weight[static_cast<size_t>(i)] = pres.gen_degs[static_cast<size_t>(i)].first();
    if (precedence.empty()) {
        for (int i = 0; i < ng; ++i) sys.order.prec[static_cast<size_t>(i)] = i;
    } else {
        if (static_cast<int>(precedence.size()) != ng)
            throw Error("precedence list must name every generator once");
        std::vector<bool> seen(static_cast<size_t>(ng), false);
        for (int r = 0; r < ng; ++r) {
            int g = pres.gen_index(precedence[static_cast<size_t>(r)]);
            if (g < 0) throw Error("unknown generator in precedence: " + precedence[static_cast<size_t>(r)]);
            if (seen[static_cast<size_t>(g)])
                throw Error("duplicate generator in precedence: " + precedence[static_cast<size_t>(r)]);
            seen[static_cast<size_t>(g)] = true;
            sys.order.prec[static_cast<size_t>(g)] = r;
        }
    }
    for (auto& d : pres.rel_degs)
        if (d.first() > max_deg)
            throw Error("completion bound " + std::to_string(max_deg) + " below relation degree " +
                        std::to_string(d.first()));

    int seq = 0;
    for (auto& r : pres.rels) {
        NCPoly p = reduce_by(r, sys.rules, sys.order);
        if (p.is_zero()) continue;
        sys.rules.push_back(make_rule(p, sys.order, pres.gen_degs, seq++));
        inter_reduce(sys.rules, sys.order, pres.gen_degs, &seq);
    }

    // process overlap ambiguities by increasing degree; restart whenever the
    // rule set changes so every ambiguity is finally checked against the
    // finished system
    while (true) {
        bool changed = false;
        for (auto& site : all_overlaps(sys.rules, sys.order, max_deg)) {
            auto [p1, p2] = reduce_two_ways(sys.rules, sys.order, site);
            if (p1 == p2) continue;
            NCPoly diff = p1 - p2;
            DerivationLog dl;
            dl.overlap = site.word;
            dl.lead_a = sys.rules[static_cast<size_t>(site.a)].lead;
            dl.lead_b = sys.rules[static_cast<size_t>(site.b)].lead;
            RewriteRule nr = make_rule(diff, sys.order, pres.gen_degs, seq++);
            dl.new_lead = nr.lead;
            sys.log.push_back(dl);
            sys.rules.push_back(std::move(nr));
            inter_reduce(sys.rules, sys.order, pres.gen_degs, &seq);
            changed = true;
            break;
        }
        if (!changed) break;
    }
    sys.complete_up_to = max_deg;
    return sys;
}

NCPoly normal_form(const NCPoly& p, const ReductionSystem& sys) {
    for (auto& [w, c] : p.t)
        if (sys.order.wdeg(w) > sys.complete_up_to)
            throw Error("degree " + std::to_string(sys.order.wdeg(w)) + " above completion bound " +
                        std::to_string(sys.complete_up_to));
    return reduce_by(p, sys.rules, sys.order);
}

NCPoly normal_form_word(const Word& w, const ReductionSystem& sys) {
    return normal_form(NCPoly::monomial(w), sys);
}

bool word_is_standard(const Word& w, const ReductionSystem& sys) {
    return find_reducer(sys.rules, w, nullptr) < 0;
}

namespace {

/* Prefix automaton over the rule leads: states are proper prefixes of leads;
 * a transition is absent when the extended text contains a lead. */
struct LeadAutomaton {
    std::vector<Word> states;
    std::vector<std::vector<int>> next;

    LeadAutomaton(const std::vector<RewriteRule>& rules, int ng) {
        std::set<Word> prefixes;
        prefixes.insert(Word());
        std::vector<Word> leads;
        for (auto& r : rules) {
            leads.push_back(r.lead);
            for (size_t l = 1; l < r.lead.size(); ++l) prefixes.insert(r.lead.substr(0, l));
        }
        for (auto it = prefixes.begin(); it != prefixes.end();) {
            bool dead = false;
            for (auto& l : leads)
                if (contains_subword(*it, l)) dead = true;
            it = dead ? prefixes.erase(it) : std::next(it);
        }
        states.assign(prefixes.begin(), prefixes.end());
        next.assign(states.size(), std::vector<int>(static_cast<size_t>(ng), -1));
        for (size_t s = 0; s < states.size(); ++s)
            for (int g = 0; g < ng; ++g) {
                Word t = states[s] + letter(g);
                bool dead = false;
                for (auto& l : leads)
                    if (t.size() >= l.size() && t.compare(t.size() - l.size(), l.size(), l) == 0)
                        dead = true;
                if (dead) continue;
                for (size_t cut = 0; cut <= t.size(); ++cut) {
                    Word suf = t.substr(cut);
                    auto it = std::lower_bound(states.begin(), states.end(), suf);
                    if (it != states.end() && *it == suf) {
                        next[s][static_cast<size_t>(g)] = static_cast<int>(it - states.begin());
                        break;
                    }
                }
            }
    }
    int start() const {
        auto it = std::lower_bound(states.begin(), states.end(), Word());
        return static_cast<int>(it - states.begin());
    }
};

void enumerate_standard(const ReductionSystem& sys, const LeadAutomaton& aut, int state, Word& cur,
                        const Multideg& remaining, bool exact_multideg, std::vector<Word>& out) {
    if (remaining.first() == 0) {
        if (!exact_multideg || remaining.is_zero()) out.push_back(cur);
        return;
    }
    int ng = static_cast<int>(sys.pres.gens.size());
    for (int g = 0; g < ng; ++g) {
        const Multideg& gd = sys.pres.gen_degs[static_cast<size_t>(g)];
        if (gd.first() > remaining.first()) continue;
        int ns = aut.next[static_cast<size_t>(state)][static_cast<size_t>(g)];
        if (ns < 0) continue;
        cur.push_back(static_cast<char>(g));
        enumerate_standard(sys, aut, ns, cur, remaining - gd, exact_multideg, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<Word> standard_monomials(const ReductionSystem& sys, const Multideg& d) {
    LeadAutomaton aut(sys.rules, static_cast<int>(sys.pres.gens.size()));
    std::vector<Word> out;
    Word cur;
    enumerate_standard(sys, aut, aut.start(), cur, d, true, out);
    return out;
}

std::vector<Word> standard_monomials_total(const ReductionSystem& sys, int n) {
    LeadAutomaton aut(sys.rules, static_cast<int>(sys.pres.gens.size()));
    std::vector<Word> out;
    Word cur;
    enumerate_standard(sys, aut, aut.start(), cur, Multideg(n), false, out);
    return out;
}

std::vector<Multideg> realized_multidegs(const ReductionSystem& sys, int n) {
    std::set<Multideg> degs;
    for (auto& w : standard_monomials_total(sys, n)) degs.insert(sys.pres.deg_of(w));
    return {degs.begin(), degs.end()};
}

std::vector<long long> hilbert_coeffs(const ReductionSystem& sys, int max_deg) {
    if (max_deg > sys.complete_up_to)
        throw Error("system complete only up to degree " + std::to_string(sys.complete_up_to));
    LeadAutomaton aut(sys.rules, static_cast<int>(sys.pres.gens.size()));
    size_t ns = aut.states.size();
    std::vector<std::vector<long long>> cnt(static_cast<size_t>(max_deg) + 1,
                                            std::vector<long long>(ns, 0));
    cnt[0][static_cast<size_t>(aut.start())] = 1;
    int ng = static_cast<int>(sys.pres.gens.size());
    for (int d = 0; d < max_deg; ++d)
        for (size_t s = 0; s < ns; ++s) {
            if (!cnt[static_cast<size_t>(d)][s]) continue;
            for (int g = 0; g < ng; ++g) {
                int w = sys.order.weight[static_cast<size_t>(g)];
                int t = aut.next[s][static_cast<size_t>(g)];
                if (t < 0 || d + w > max_deg) continue;
                cnt[static_cast<size_t>(d + w)][static_cast<size_t>(t)] += cnt[static_cast<size_t>(d)][s];
            }
        }
    std::vector<long long> h(static_cast<size_t>(max_deg) + 1, 0);
    for (int d = 0; d <= max_deg; ++d)
        for (size_t s = 0; s < ns; ++s) h[static_cast<size_t>(d)] += cnt[static_cast<size_t>(d)][s];
    return h;
}

std::vector<Ambiguity> overlap_ambiguities(const ReductionSystem& sys, int max_deg) {
    std::vector<Ambiguity> out;
    std::set<std::tuple<Word, int, int>> seen;
    for (auto& s : all_overlaps(sys.rules, sys.order, max_deg))
        if (seen.insert({s.word, s.a, s.b}).second) out.push_back({s.word, s.a, s.b});
    return out;
}

bool ambiguity_resolves(const ReductionSystem& sys, const Ambiguity& amb) {
    OverlapSite s{amb.rule_a, amb.rule_b, amb.word};
    auto [p1, p2] = reduce_two_ways(sys.rules, sys.order, s);
    return p1 == p2;
}

std::vector<Scalar> poly_coords(const NCPoly& p, const std::vector<Word>& basis) {
    std::map<Word, int> idx;
    for (size_t i = 0; i < basis.size(); ++i) idx[basis[i]] = static_cast<int>(i);
    std::vector<Scalar> v(basis.size(), Scalar(0));
    for (auto& [w, c] : p.t) {
        auto it = idx.find(w);
        if (it == idx.end()) throw Error("polynomial not supported on the given basis");
        v[static_cast<size_t>(it->second)] = c;
    }
    return v;
}

NormalCheck is_normal(const NCPoly& a, const ReductionSystem& sys, int max_deg) {
    NormalCheck res;
    auto adeg = a.homogeneous_deg(sys.pres.gen_degs);
    if (!adeg) throw Error("is_normal requires a homogeneous element");
    int need = adeg->first();
    for (auto& gd : sys.pres.gen_degs) need = std::max(need, adeg->first() + gd.first());
    if (max_deg < need || sys.complete_up_to < need)
        throw Error("is_normal needs completion up to degree " + std::to_string(need));

    NCPoly an = normal_form(a, sys);
    if (an.is_zero()) throw Error("element is zero in the quotient");
    int ng = static_cast<int>(sys.pres.gens.size());
    res.normal = true;
    res.by_gen.resize(static_cast<size_t>(ng));
    for (int g = 0; g < ng; ++g) {
        const Multideg& gd = sys.pres.gen_degs[static_cast<size_t>(g)];
        Multideg td = gd + *adeg;
        std::vector<Word> target = standard_monomials(sys, td);
        std::vector<Word> side = standard_monomials(sys, gd);
        NCPoly za = normal_form(NCPoly::monomial(letter(g)) * an, sys);
        NCPoly az = normal_form(an * NCPoly::monomial(letter(g)), sys);
        std::vector<Scalar> vza = poly_coords(za, target);
        std::vector<Scalar> vaz = poly_coords(az, target);

        Mat right_span(static_cast<int>(target.size()), static_cast<int>(side.size()));
        Mat left_span(static_cast<int>(target.size()), static_cast<int>(side.size()));
        for (size_t k = 0; k < side.size(); ++k) {
            auto cr = poly_coords(normal_form(an * NCPoly::monomial(side[k]), sys), target);
            auto cl = poly_coords(normal_form(NCPoly::monomial(side[k]) * an, sys), target);
            for (size_t i = 0; i < target.size(); ++i) {
                right_span.at(static_cast<int>(i), static_cast<int>(k)) = cr[i];
                left_span.at(static_cast<int>(i), static_cast<int>(k)) = cl[i];
            }
        }
        auto& pg = res.by_gen[static_cast<size_t>(g)];
        pg.left_ok = in_column_span(right_span, vza);  // z_g a  in  a A
        pg.right_ok = in_column_span(left_span, vaz);  // a z_g  in  A a
        if (!pg.left_ok || !pg.right_ok) {
            res.normal = false;
            if (res.detail.empty())
                res.detail = "generator " + sys.pres.gens[static_cast<size_t>(g)] +
                             (pg.left_ok ? ": a*z not in A*a" : ": z*a not in a*A");
        }
        auto scalar_of = [&](const std::vector<Scalar>& num,
                             const std::vector<Scalar>& den) -> std::optional<Scalar> {
            std::optional<Scalar> c;
            for (size_t i = 0; i < num.size(); ++i) {
                if (den[i].is_zero()) {
                    if (!num[i].is_zero()) return std::nullopt;
                    continue;
                }
                Scalar q = num[i] / den[i];
                if (!c)
                    c = q;
                else if (!(*c == q))
                    return std::nullopt;
            }
            return c;
        };
        pg.left_scalar = scalar_of(vza, vaz);   // z a = c * (a z)
        pg.right_scalar = scalar_of(vaz, vza);  // a z = c * (z a)
    }
    return res;
}

/* ---------------- search_normal: exact case-split solver ---------------- */

namespace {

struct MiniPoly {
    std::map<std::vector<int>, Scalar> t;

    static MiniPoly constant(const Scalar& c, size_t nv) {
        MiniPoly p;
        if (!c.is_zero()) p.t[std::vector<int>(nv, 0)] = c;
        return p;
    }
    static MiniPoly var(size_t i, size_t nv) {
        MiniPoly p;
        std::vector<int> e(nv, 0);
        e[i] = 1;
        p.t[e] = Scalar(1);
        return p;
    }
    bool is_zero() const { return t.empty(); }
    void add(const std::vector<int>& e, const Scalar& c) {
        if (c.is_zero()) return;
        auto it = t.find(e);
        if (it == t.end()) {
            t[e] = c;
        } else {
            it->second += c;
            if (it->second.is_zero()) t.erase(it);
        }
    }
    MiniPoly operator+(const MiniPoly& o) const {
        MiniPoly r = *this;
        for (auto& [e, c] : o.t) r.add(e, c);
        return r;
    }
    MiniPoly operator-(const MiniPoly& o) const {
        MiniPoly r = *this;
        for (auto& [e, c] : o.t) r.add(e, -c);
        return r;
    }
    MiniPoly operator*(const MiniPoly& o) const {
        MiniPoly r;
        for (auto& [e1, c1] : t)
            for (auto& [e2, c2] : o.t) {
                std::vector<int> e = e1;
                for (size_t i = 0; i < e.size(); ++i) e[i] += e2[i];
                r.add(e, c1 * c2);
            }
        return r;
    }
    MiniPoly scaled(const Scalar& c) const {
        MiniPoly r;
        for (auto& [e, cc] : t) r.add(e, cc * c);
        return r;
    }
    int deg_in(size_t v) const {
        int d = 0;
        for (auto& [e, c] : t) d = std::max(d, e[v]);
        return d;
    }
    bool uses(size_t v) const { return deg_in(v) > 0; }
    bool is_constant() const {
        for (auto& [e, c] : t)
            for (int x : e)
                if (x) return false;
        return true;
    }
    Scalar constant_value() const { return t.empty() ? Scalar(0) : t.begin()->second; }
    size_t nvars() const { return t.empty() ? 0 : t.begin()->first.size(); }
    MiniPoly subst(size_t v, const MiniPoly& val, size_t nv) const {
        MiniPoly r;
        for (auto& [e, c] : t) {
            MiniPoly term = MiniPoly::constant(c, nv);
            for (size_t i = 0; i < e.size(); ++i)
                for (int k = 0; k < e[i]; ++k) term = term * (i == v ? val : MiniPoly::var(i, nv));
            r = r + term;
        }
        return r;
    }
    std::vector<MiniPoly> coeffs_in(size_t v) const {
        std::vector<MiniPoly> cs(static_cast<size_t>(deg_in(v)) + 1);
        for (auto& [e, c] : t) {
            std::vector<int> e2 = e;
            int d = e2[v];
            e2[v] = 0;
            cs[static_cast<size_t>(d)].add(e2, c);
        }
        return cs;
    }
};

/* All square roots of d inside its own field. */
std::vector<Scalar> scalar_sqrts(const Scalar& d) {
    std::vector<Scalar> out;
    auto try_push = [&](const Scalar& s) {
        if (!(s * s == d)) return;
        for (auto& x : out)
            if (x == s) return;
        out.push_back(s);
    };
    if (d.is_zero()) return {Scalar(0)};
    const FieldPtr& F = d.field();
    if (d.is_rational()) {
        Rational r;
        if (rat_is_square(d.rat_part(), &r)) {
            try_push(Scalar(r));
            try_push(Scalar(-r));
        }
        if (F) {
            Rational denom = F->c1 * F->c1 / 4 + F->c0;
            if (sgn(denom) != 0) {
                Rational y2 = d.rat_part() / denom;
                y2.canonicalize();
                Rational y;
                if (rat_is_square(y2, &y) && sgn(y) != 0) {
                    try_push(Scalar(-y * F->c1 / 2, y, F));
                    try_push(Scalar(y * F->c1 / 2, -y, F));
                }
            }
        }
        return out;
    }
    Rational A = F->c1 * F->c1 + 4 * F->c0;
    Rational B = -(2 * F->c1 * d.gen_part() + 4 * d.rat_part());
    Rational C = d.gen_part() * d.gen_part();
    std::vector<Rational> broots;
    if (sgn(A) == 0) {
        if (sgn(B) != 0) broots.push_back(-C / B);
    } else {
        Rational disc = B * B - 4 * A * C, sq;
        if (rat_is_square(disc, &sq)) {
            broots.push_back((-B + sq) / (2 * A));
            broots.push_back((-B - sq) / (2 * A));
        }
    }
    for (Rational b2 : broots) {
        b2.canonicalize();
        Rational y;
        if (!rat_is_square(b2, &y) || sgn(y) == 0) continue;
        Rational candidates[2] = {y, Rational(-y)};
        for (const Rational& yy : candidates) {
            Rational x = (d.gen_part() / yy - yy * F->c1) / 2;
            try_push(Scalar(x, yy, F));
        }
    }
    return out;
}

std::vector<Scalar> univariate_roots(std::vector<Scalar> cs) {
    while (cs.size() > 1 && cs.back().is_zero()) cs.pop_back();
    int deg = static_cast<int>(cs.size()) - 1;
    if (deg <= 0) return {};
    if (deg == 1) return {-(cs[0] / cs[1])};
    if (deg == 2) {
        Scalar disc = cs[1] * cs[1] - Scalar(4) * cs[2] * cs[0];
        std::vector<Scalar> out;
        for (auto& s : scalar_sqrts(disc)) {
            Scalar r = (-cs[1] + s) / (Scalar(2) * cs[2]);
            bool dup = false;
            for (auto& x : out) dup = dup || x == r;
            if (!dup) out.push_back(r);
        }
        return out;
    }
    for (auto& c : cs)
        if (!c.is_rational())
            throw Error("search_normal: univariate degree > 2 over an extension field");
    std::vector<Scalar> out;
    // strip zero roots
    size_t shift = 0;
    while (shift < cs.size() && cs[shift].is_zero()) ++shift;
    if (shift > 0) {
        out.push_back(Scalar(0));
        cs.erase(cs.begin(), cs.begin() + static_cast<long>(shift));
        deg = static_cast<int>(cs.size()) - 1;
        if (deg == 0) return out;
    }
    mpz_class den(1);
    for (auto& c : cs) den = lcm(den, c.rat_part().get_den());
    std::vector<mpz_class> ic(cs.size());
    for (size_t i = 0; i < cs.size(); ++i) {
        Rational q = cs[i].rat_part() * Rational(den);
        q.canonicalize();
        ic[i] = q.get_num();
    }
    auto divisors = [](mpz_class n) {
        std::vector<mpz_class> ds;
        n = abs(n);
        for (mpz_class d = 1; d * d <= n; ++d)
            if (n % d == 0) {
                ds.push_back(d);
                if (d * d != n) ds.push_back(n / d);
            }
        return ds;
    };
    for (auto& p : divisors(ic[0]))
        for (auto& q : divisors(ic[static_cast<size_t>(deg)]))
            for (int sign : {1, -1}) {
                Rational cand(sign * p, q);
                cand.canonicalize();
                Scalar v(0);
                for (int i = deg; i >= 0; --i) v = v * Scalar(cand) + cs[static_cast<size_t>(i)];
                if (v.is_zero()) {
                    Scalar r{cand};
                    bool dup = false;
                    for (auto& x : out) dup = dup || x == r;
                    if (!dup) out.push_back(r);
                }
            }
    return out;
}

std::vector<Scalar> minipoly_univariate_coeffs(const MiniPoly& p, size_t v) {
    auto cs = p.coeffs_in(v);
    std::vector<Scalar> out(cs.size());
    for (size_t i = 0; i < cs.size(); ++i) {
        if (!cs[i].is_constant()) throw Error("internal: not univariate");
        out[i] = cs[i].constant_value();
    }
    return out;
}

MiniPoly resultant_in(const MiniPoly& f, const MiniPoly& g, size_t v, size_t nv) {
    auto fc = f.coeffs_in(v);
    auto gc = g.coeffs_in(v);
    int m = static_cast<int>(fc.size()) - 1, n = static_cast<int>(gc.size()) - 1;
    if (m <= 0 || n <= 0) throw Error("internal: resultant of constants");
    int N = m + n;
    std::vector<std::vector<MiniPoly>> S(static_cast<size_t>(N),
                                         std::vector<MiniPoly>(static_cast<size_t>(N)));
    for (size_t i = 0; i < static_cast<size_t>(n); ++i)
        for (int j = 0; j <= m; ++j) S[i][i + static_cast<size_t>(j)] = fc[static_cast<size_t>(m - j)];
    for (size_t i = 0; i < static_cast<size_t>(m); ++i)
        for (int j = 0; j <= n; ++j)
            S[static_cast<size_t>(n) + i][i + static_cast<size_t>(j)] = gc[static_cast<size_t>(n - j)];
    std::function<MiniPoly(size_t, std::vector<size_t>&)> det = [&](size_t row,
                                                                    std::vector<size_t>& cc) {
        if (row == static_cast<size_t>(N)) return MiniPoly::constant(Scalar(1), nv);
        MiniPoly acc;
        for (size_t k = 0; k < cc.size(); ++k) {
            const MiniPoly& pivot = S[row][cc[k]];
            if (pivot.is_zero()) continue;
            std::vector<size_t> rest;
            for (size_t l = 0; l < cc.size(); ++l)
                if (l != k) rest.push_back(cc[l]);
            MiniPoly term = pivot * det(row + 1, rest);
            if (k % 2) term = term.scaled(Scalar(-1));
            acc = acc + term;
        }
        return acc;
    };
    std::vector<size_t> cols(static_cast<size_t>(N));
    for (size_t i = 0; i < cols.size(); ++i) cols[i] = i;
    return det(0, cols);
}

struct Binding {
    size_t var;
    MiniPoly expr;  // expression in the variables still active at bind time
};

void solve_system(std::vector<MiniPoly> polys, size_t nv, std::vector<bool> active,
                  std::vector<Binding> bindings, std::vector<std::vector<Scalar>>& sols,
                  std::vector<std::string>& families, int depth) {
    if (depth > 24) throw Error("search_normal: case split too deep");
    while (true) {
        std::vector<MiniPoly> keep;
        for (auto& p : polys) {
            if (p.is_zero()) continue;
            if (p.is_constant()) return;  // inconsistent branch
            keep.push_back(p);
        }
        polys = std::move(keep);
        // linear elimination: c*x + rest with scalar c, rest free of x
        bool progressed = false;
        for (size_t pi = 0; pi < polys.size() && !progressed; ++pi) {
            for (size_t v = 0; v < nv && !progressed; ++v) {
                if (!active[v] || polys[pi].deg_in(v) != 1) continue;
                auto cs = polys[pi].coeffs_in(v);
                if (!cs[1].is_constant()) continue;
                MiniPoly val = cs[0].scaled(-(Scalar(1) / cs[1].constant_value()));
                std::vector<MiniPoly> next;
                for (auto& q : polys) next.push_back(q.subst(v, val, nv));
                polys = std::move(next);
                active[v] = false;
                bindings.push_back({v, val});
                progressed = true;
            }
        }
        if (!progressed) break;
    }
    {
        std::vector<MiniPoly> keep;
        for (auto& p : polys) {
            if (p.is_zero()) continue;
            if (p.is_constant()) return;
            keep.push_back(p);
        }
        polys = std::move(keep);
    }
    std::vector<size_t> unknowns;
    for (size_t v = 0; v < nv; ++v)
        if (active[v]) unknowns.push_back(v);
    if (polys.empty()) {
        if (!unknowns.empty()) {
            std::string f = "free:";
            for (size_t v : unknowns) f += " u" + std::to_string(v + 1);
            families.push_back(f);
            return;
        }
        // back-substitute bindings in reverse
        std::vector<std::optional<Scalar>> value(nv);
        for (auto it = bindings.rbegin(); it != bindings.rend(); ++it) {
            MiniPoly e = it->expr;
            for (size_t v = 0; v < nv; ++v)
                if (e.uses(v)) {
                    if (!value[v]) throw Error("internal: unresolved binding");
                    e = e.subst(v, MiniPoly::constant(*value[v], nv), nv);
                }
            if (!e.is_constant()) throw Error("internal: unresolved binding");
            value[it->var] = e.constant_value();
        }
        std::vector<Scalar> sol(nv, Scalar(0));
        for (size_t v = 0; v < nv; ++v)
            if (value[v]) sol[v] = *value[v];
        sols.push_back(sol);
        return;
    }
    if (unknowns.empty()) return;
    for (auto& p : polys) {
        size_t used = 0, var = 0;
        for (size_t v : unknowns)
            if (p.uses(v)) {
                ++used;
                var = v;
            }
        if (used == 1) {
            for (auto& r : univariate_roots(minipoly_univariate_coeffs(p, var))) {
                std::vector<MiniPoly> next;
                for (auto& q : polys) next.push_back(q.subst(var, MiniPoly::constant(r, nv), nv));
                std::vector<bool> act2 = active;
                act2[var] = false;
                std::vector<Binding> b2 = bindings;
                b2.push_back({var, MiniPoly::constant(r, nv)});
                solve_system(next, nv, act2, b2, sols, families, depth + 1);
            }
            return;
        }
    }
    if (unknowns.size() >= 2 && polys.size() >= 2) {
        size_t v = unknowns.back();
        const MiniPoly* f = nullptr;
        const MiniPoly* g = nullptr;
        for (auto& p : polys)
            if (p.uses(v)) {
                if (!f)
                    f = &p;
                else if (!g) {
                    g = &p;
                    break;
                }
            }
        if (f && g) {
            MiniPoly res = resultant_in(*f, *g, v, nv);
            if (!res.is_constant()) {
                polys.push_back(res);
                solve_system(polys, nv, active, bindings, sols, families, depth + 1);
                return;
            }
            if (res.is_zero()) {
                // common factor; fall through to the unsupported case
            }
        }
    }
    throw Error("search_normal: system beyond the supported case analysis");
}

}  // namespace

NormalSearch search_normal(const ReductionSystem& sys, const Multideg& bidegree) {
    NormalSearch out;
    out.basis = standard_monomials(sys, bidegree);
    size_t D = out.basis.size();
    if (D == 0) return out;
    if (D > 3)
        throw Error("search_normal: coefficient dimension " + std::to_string(D) +
                    " exceeds the supported bound 3");
    int need = bidegree.first();
    for (auto& gd : sys.pres.gen_degs) need = std::max(need, bidegree.first() + gd.first());
    if (sys.complete_up_to < need)
        throw Error("search_normal needs completion up to degree " + std::to_string(need));

    int ng = static_cast<int>(sys.pres.gens.size());
    std::vector<MiniPoly> minors;
    for (int g = 0; g < ng; ++g) {
        Multideg td = sys.pres.gen_degs[static_cast<size_t>(g)] + bidegree;
        std::vector<Word> target = standard_monomials(sys, td);
        size_t T = target.size();
        std::vector<std::vector<Scalar>> L(D), R(D);
        for (size_t d = 0; d < D; ++d) {
            L[d] = poly_coords(normal_form(NCPoly::monomial(letter(g) + out.basis[d]), sys), target);
            R[d] = poly_coords(normal_form(NCPoly::monomial(out.basis[d] + letter(g)), sys), target);
        }
        auto lin = [&](const std::vector<std::vector<Scalar>>& M, size_t j) {
            MiniPoly p;
            for (size_t d = 0; d < D; ++d)
                if (!M[d][j].is_zero()) p = p + MiniPoly::var(d, D).scaled(M[d][j]);
            return p;
        };
        for (size_t j = 0; j < T; ++j)
            for (size_t k = j + 1; k < T; ++k)
                minors.push_back(lin(L, j) * lin(R, k) - lin(L, k) * lin(R, j));
    }
    bool all_zero = true;
    for (auto& m : minors) all_zero = all_zero && m.is_zero();
    if (all_zero) {
        out.full_span = true;
        return out;
    }

    for (unsigned mask = 1; mask < (1u << D); ++mask) {
        size_t first = 0;
        while (!(mask & (1u << first))) ++first;
        std::vector<MiniPoly> system = minors;
        std::vector<bool> active(D, false);
        std::vector<Binding> bindings;
        for (size_t v = 0; v < D; ++v) {
            if (!(mask & (1u << v))) {
                for (auto& p : system) p = p.subst(v, MiniPoly::constant(Scalar(0), D), D);
                bindings.push_back({v, MiniPoly::constant(Scalar(0), D)});
            } else if (v == first) {
                for (auto& p : system) p = p.subst(v, MiniPoly::constant(Scalar(1), D), D);
                bindings.push_back({v, MiniPoly::constant(Scalar(1), D)});
            } else {
                active[v] = true;
            }
        }
        std::vector<std::vector<Scalar>> sols;
        std::vector<std::string> fams;
        solve_system(system, D, active, bindings, sols, fams, 0);
        for (auto& s : sols) {
            bool support_ok = true;
            for (size_t v = 0; v < D; ++v) {
                bool want = (mask >> v) & 1u;
                if (want != !s[v].is_zero()) support_ok = false;
            }
            if (!support_ok) continue;
            bool dup = false;
            for (auto& x : out.solutions) dup = dup || x == s;
            if (!dup) out.solutions.push_back(s);
        }
        for (auto& f : fams) out.families.push_back("support " + std::to_string(mask) + ", " + f);
    }
    return out;
}

bool verify_homomorphism(const Presentation& src, const ReductionSystem& tgt,
                         const std::vector<NCPoly>& images, int max_deg, std::string* why) {
    if (images.size() != src.gens.size()) throw Error("one image per source generator required");
    for (size_t g = 0; g < images.size(); ++g) {
        NCPoly im = normal_form(images[g], tgt);
        if (im.is_zero()) continue;
        auto d = im.homogeneous_deg(tgt.pres.gen_degs);
        if (!d) throw Error("image of " + src.gens[g] + " is not homogeneous");
        if (src.adams_rank == tgt.pres.adams_rank) {
            if (*d != src.gen_degs[g])
                throw Error("image of " + src.gens[g] + " has multidegree " + d->str() +
                            ", expected " + src.gen_degs[g].str());
        } else if (d->first() != src.gen_degs[g].first()) {
            throw Error("image of " + src.gens[g] + " has degree " + std::to_string(d->first()) +
                        ", expected " + std::to_string(src.gen_degs[g].first()));
        }
    }
    for (size_t r = 0; r < src.rels.size(); ++r) {
        if (src.rel_degs[r].first() > max_deg || src.rel_degs[r].first() > tgt.complete_up_to)
            throw Error("degree overflow: relation of degree " +
                        std::to_string(src.rel_degs[r].first()));
        NCPoly image;
        for (auto& [w, c] : src.rels[r].t) {
            NCPoly prod = NCPoly::monomial(Word(), c);
            for (char ch : w) prod = prod * images[static_cast<unsigned char>(ch)];
            image += prod;
        }
        NCPoly nf = normal_form(image, tgt);
        if (!nf.is_zero()) {
            if (why) *why = "relation " + std::to_string(r + 1) + " maps to " + poly_str(nf, tgt.pres);
            return false;
        }
    }
    return true;
}

ComplexSpec parse_maps_file(const std::string& text, const Presentation& ctx) {
    ComplexSpec spec;
    std::istringstream in(text);
    std::string rawline;
    int lineno = 0;
    std::string pending_map;
    bool in_map = false;
    auto finish_map = [&](int at_line) {
        std::string s = pending_map;
        size_t open = s.find('[');
        size_t close = s.rfind(']');
        if (open == std::string::npos || close == std::string::npos || close < open)
            throw ParseError(at_line, 1, "map must be enclosed in [ ... ]");
        std::string body = s.substr(open + 1, close - open - 1);
        std::vector<std::vector<NCPoly>> rows;
        std::vector<NCPoly> row;
        size_t start = 0;
        auto flush_entry = [&](size_t end) {
            std::string entry = body.substr(start, end - start);
            if (entry.find_first_not_of(" \t") == std::string::npos)
                throw ParseError(at_line, 1, "empty matrix entry");
            row.push_back(parse_poly_expr(entry, ctx));
        };
        for (size_t i = 0; i < body.size(); ++i) {
            if (body[i] == ',') {
                flush_entry(i);
                start = i + 1;
            } else if (body[i] == ';') {
                flush_entry(i);
                start = i + 1;
                rows.push_back(row);
                row.clear();
            }
        }
        flush_entry(body.size());
        rows.push_back(row);
        PolyMat m;
        m.r = static_cast<int>(rows.size());
        m.c = static_cast<int>(rows[0].size());
        for (auto& rr : rows) {
            if (static_cast<int>(rr.size()) != m.c) throw ParseError(at_line, 1, "ragged matrix rows");
            for (auto& e : rr) m.e.push_back(e);
        }
        spec.maps.push_back(std::move(m));
        pending_map.clear();
        in_map = false;
    };
    while (std::getline(in, rawline)) {
        ++lineno;
        std::string line = rawline;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (in_map) {
            pending_map += " " + line;
            if (line.find(']') != std::string::npos) finish_map(lineno);
            continue;
        }
        std::istringstream ls(line);
        std::string kw;
        ls >> kw;
        if (kw == "module") {
            std::string rest;
            std::getline(ls, rest);
            std::vector<Multideg> shifts;
            size_t i = 0;
            while (i < rest.size()) {
                if (rest[i] != '(') {
                    ++i;
                    continue;
                }
                size_t j = rest.find(')', i);
                if (j == std::string::npos) throw ParseError(lineno, 1, "unclosed multidegree");
                std::string tup = rest.substr(i + 1, j - i - 1);
                Multideg d;
                int idx = 0;
                std::istringstream ts(tup);
                std::string comp;
                while (std::getline(ts, comp, ',')) {
                    if (idx >= 3) throw ParseError(lineno, 1, "multidegree rank exceeds 3");
                    d.v[static_cast<size_t>(idx++)] = std::stoi(comp);
                }
                d.k = idx;
                shifts.push_back(d);
                i = j + 1;
            }
            if (shifts.empty()) throw ParseError(lineno, 1, "module line needs at least one shift");
            spec.modules.push_back(shifts);
        } else if (kw == "map") {
            std::string rest;
            std::getline(ls, rest);
            pending_map = rest;
            in_map = true;
            if (rest.find(']') != std::string::npos) finish_map(lineno);
        } else {
            throw ParseError(lineno, 1, "expected 'module' or 'map'");
        }
    }
    if (in_map) throw ParseError(lineno, 1, "unterminated map");
    if (spec.modules.size() < 2 || spec.maps.size() != spec.modules.size() - 1)
        throw Error("maps file must alternate modules and maps (n modules, n-1 maps)");
    return spec;
}

ComplexReport verify_complex(const ComplexSpec& spec, const ReductionSystem& sys, int max_deg) {
    ComplexReport rep;
    size_t M = spec.modules.size();
    for (size_t i = 0; i + 1 < M; ++i) {
        const PolyMat& m = spec.maps[i];
        if (m.r != static_cast<int>(spec.modules[i].size()) ||
            m.c != static_cast<int>(spec.modules[i + 1].size()))
            throw Error("map " + std::to_string(i) + " has shape " + std::to_string(m.r) + "x" +
                        std::to_string(m.c) + ", expected " + std::to_string(spec.modules[i].size()) +
                        "x" + std::to_string(spec.modules[i + 1].size()));
        for (int rr = 0; rr < m.r; ++rr)
            for (int cc = 0; cc < m.c; ++cc) {
                const NCPoly& e = m.at(rr, cc);
                if (e.is_zero()) continue;
                auto d = e.homogeneous_deg(sys.pres.gen_degs);
                if (!d) throw Error("non-homogeneous matrix entry");
                Multideg want = spec.modules[i][static_cast<size_t>(rr)] -
                                spec.modules[i + 1][static_cast<size_t>(cc)];
                if (d->k == want.k ? !(*d == want) : d->first() != want.first())
                    throw Error("matrix entry of multidegree " + d->str() + ", expected " +
                                want.str());
            }
    }
    rep.is_complex = true;
    for (size_t i = 0; i + 2 < M; ++i) {
        const PolyMat& f = spec.maps[i];
        const PolyMat& g = spec.maps[i + 1];
        for (int rr = 0; rr < f.r; ++rr)
            for (int cc = 0; cc < g.c; ++cc) {
                NCPoly acc;
                for (int k = 0; k < f.c; ++k) acc += f.at(rr, k) * g.at(k, cc);
                if (!normal_form(acc, sys).is_zero()) {
                    rep.is_complex = false;
                    if (rep.detail.empty())
                        rep.detail = "composite of maps " + std::to_string(i) + "," +
                                     std::to_string(i + 1) + " nonzero at (" + std::to_string(rr) +
                                     "," + std::to_string(cc) + ")";
                }
            }
    }
    rep.hom.assign(M, std::vector<long long>(static_cast<size_t>(max_deg) + 1, 0));
    rep.ker_dims = rep.hom;
    rep.im_dims = rep.hom;
    for (int n = 0; n <= max_deg; ++n) {
        // graded components by first Adams degree; exactness per degree
        std::vector<std::vector<std::vector<Word>>> comp(M);
        std::vector<long long> dim(M, 0);
        for (size_t i = 0; i < M; ++i)
            for (auto& shift : spec.modules[i]) {
                std::vector<Word> b;
                if (n - shift.first() >= 0) b = standard_monomials_total(sys, n - shift.first());
                comp[i].push_back(b);
                dim[i] += static_cast<long long>(b.size());
            }
        std::vector<long long> rank(M - 1, 0);
        for (size_t i = 0; i + 1 < M; ++i) {
            Mat m(static_cast<int>(dim[i]), static_cast<int>(dim[i + 1]));
            int roff = 0;
            for (size_t sj = 0; sj < spec.modules[i].size(); ++sj) {
                auto& sb = comp[i][sj];
                int coff = 0;
                for (size_t tk = 0; tk < spec.modules[i + 1].size(); ++tk) {
                    auto& tb = comp[i + 1][tk];
                    const NCPoly& entry = spec.maps[i].at(static_cast<int>(sj), static_cast<int>(tk));
                    if (!entry.is_zero() && !sb.empty() && !tb.empty()) {
                        for (size_t a = 0; a < sb.size(); ++a) {
                            NCPoly prod = normal_form(NCPoly::monomial(sb[a]) * entry, sys);
                            auto coords = poly_coords(prod, tb);
                            for (size_t bi = 0; bi < tb.size(); ++bi)
                                m.at(roff + static_cast<int>(a), coff + static_cast<int>(bi)) =
                                    coords[bi];
                        }
                    }
                    coff += static_cast<int>(tb.size());
                }
                roff += static_cast<int>(sb.size());
            }
            rank[i] = rank_ff(m);
        }
        for (size_t i = 0; i < M; ++i) {
            long long ker = (i + 1 < M) ? dim[i] - rank[i] : dim[i];
            long long im = (i > 0) ? rank[i - 1] : 0;
            rep.ker_dims[i][static_cast<size_t>(n)] = ker;
            rep.im_dims[i][static_cast<size_t>(n)] = im;
            rep.hom[i][static_cast<size_t>(n)] = ker - im;
        }
    }
    return rep;
}

AnickResult anick_chains(const ReductionSystem& sys, int n_max) {
    if (!sys.is_monomial()) throw Error("anick_chains requires a monomial reduction system");
    AnickResult res;
    std::vector<Word> obstructions;
    for (auto& r : sys.rules) obstructions.push_back(r.lead);
    std::sort(obstructions.begin(), obstructions.end());

    struct Node {
        Word w;
        size_t prev_len;  // length of the latest obstruction occurrence
    };
    std::vector<Node> level;
    {
        std::vector<Word> v1;
        for (auto& o : obstructions) {
            level.push_back({o, o.size()});
            v1.push_back(o);
        }
        std::sort(v1.begin(), v1.end());
        res.chains.push_back(v1);
    }
    for (int n = 2; n <= n_max && !level.empty(); ++n) {
        std::vector<Node> next;
        std::set<Word> seen;
        for (auto& node : level) {
            for (auto& o : obstructions) {
                // new occurrence reaches r letters into w and must start
                // strictly after the previous occurrence: 1 <= r < prev_len
                for (size_t r = 1; r < o.size() && r < node.prev_len; ++r) {
                    if (node.w.size() < r) continue;
                    if (node.w.compare(node.w.size() - r, r, o, 0, r) != 0) continue;
                    Word s = o.substr(r);
                    // minimality: no proper nonempty prefix of s completes an
                    // obstruction under the same window
                    bool minimal = true;
                    for (size_t plen = 1; plen < s.size() && minimal; ++plen) {
                        for (auto& o2 : obstructions) {
                            if (o2.size() <= plen) continue;
                            size_t r2 = o2.size() - plen;
                            if (r2 >= node.prev_len || node.w.size() < r2) continue;
                            if (node.w.compare(node.w.size() - r2, r2, o2, 0, r2) == 0 &&
                                s.compare(0, plen, o2, r2, plen) == 0) {
                                minimal = false;
                                break;
                            }
                        }
                    }
                    if (!minimal) continue;
                    Word w2 = node.w + s;
                    if (seen.insert(w2).second) next.push_back({w2, o.size()});
                }
            }
        }
        std::sort(next.begin(), next.end(), [](const Node& a, const Node& b) { return a.w < b.w; });
        std::vector<Word> vn;
        for (auto& nd : next) vn.push_back(nd.w);
        res.chains.push_back(vn);
        level = std::move(next);
    }
    while (static_cast<int>(res.chains.size()) < n_max) res.chains.emplace_back();

    int maxd = 0;
    for (auto& lvl : res.chains)
        for (auto& w : lvl) maxd = std::max(maxd, sys.order.wdeg(w));
    for (size_t g = 0; g < sys.pres.gens.size(); ++g)
        maxd = std::max(maxd, sys.order.weight[g]);
    res.poly.assign(static_cast<size_t>(maxd) + 1, 0);
    res.poly[0] = 1;
    for (size_t g = 0; g < sys.pres.gens.size(); ++g)
        res.poly[static_cast<size_t>(sys.order.weight[g])] -= 1;
    for (size_t lvl = 0; lvl < res.chains.size(); ++lvl) {
        long long sign = (lvl % 2 == 0) ? 1 : -1;
        for (auto& w : res.chains[lvl]) res.poly[static_cast<size_t>(sys.order.wdeg(w))] += sign;
    }
    return res;
}

}  // namespace ncalg
