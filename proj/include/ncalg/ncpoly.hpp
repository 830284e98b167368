#ifndef NCALG_NCPOLY_HPP
#define NCALG_NCPOLY_HPP

#include <map>
#include <optional>

#include "ncalg/scalar.hpp"
#include "ncalg/word.hpp"

namespace ncalg {

/* Element of the free algebra: finite word -> scalar map, no zero values.
 * The internal term order (word length, then bytes) is structural only. */
struct NCPoly {
    std::map<Word, Scalar, bool (*)(const Word&, const Word&)> t;

    static bool word_less(const Word& a, const Word& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }

    NCPoly() : t(&word_less) {}
    static NCPoly zero() { return NCPoly(); }
    static NCPoly monomial(const Word& w, const Scalar& c = Scalar(1)) {
        NCPoly p;
        if (!c.is_zero()) p.t.emplace(w, c);
        return p;
    }

    bool is_zero() const { return t.empty(); }

    void add_term(const Word& w, const Scalar& c) {
        if (c.is_zero()) return;
        auto it = t.find(w);
        if (it == t.end()) {
            t.emplace(w, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) t.erase(it);
        }
    }

    NCPoly& operator+=(const NCPoly& o) {
        for (auto& [w, c] : o.t) add_term(w, c);
        return *this;
    }
    NCPoly& operator-=(const NCPoly& o) {
        for (auto& [w, c] : o.t) add_term(w, -c);
        return *this;
    }
    friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
    friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
    friend NCPoly operator*(const NCPoly& a, const NCPoly& b) {
        NCPoly r;
        for (auto& [wa, ca] : a.t)
            for (auto& [wb, cb] : b.t) r.add_term(wa + wb, ca * cb);
        return r;
    }
    friend NCPoly operator*(const Scalar& c, const NCPoly& a) {
        NCPoly r;
        for (auto& [w, cw] : a.t) r.add_term(w, c * cw);
        return r;
    }
    friend bool operator==(const NCPoly& a, const NCPoly& b) {
        if (a.t.size() != b.t.size()) return false;
        auto ia = a.t.begin();
        for (auto ib = b.t.begin(); ib != b.t.end(); ++ia, ++ib)
            if (ia->first != ib->first || !(ia->second == ib->second)) return false;
        return true;
    }
    friend bool operator!=(const NCPoly& a, const NCPoly& b) { return !(a == b); }

    /* Multidegree if homogeneous, nullopt otherwise. */
    std::optional<Multideg> homogeneous_deg(const std::vector<Multideg>& gen_degs) const {
        std::optional<Multideg> d;
        for (auto& [w, c] : t) {
            Multideg wd = word_deg(w, gen_degs);
            if (!d)
                d = wd;
            else if (*d != wd)
                return std::nullopt;
        }
        return d;
    }
};

}  // namespace ncalg

#endif
