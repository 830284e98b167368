#ifndef NCALG_WORD_HPP
#define NCALG_WORD_HPP

#include <array>
#include <string>
#include <vector>

namespace ncalg {

/* A word over generator indices; byte i holds the index of the i-th letter.
 * The empty word is the identity monomial. */
using Word = std::string;

inline Word letter(int gen) { return Word(1, static_cast<char>(gen)); }

/* An Adams multidegree in Z^k, k <= 3.  Comparison is lexicographic. */
struct Multideg {
    int k = 1;
    std::array<int, 3> v{0, 0, 0};

    Multideg() = default;
    explicit Multideg(int a) : k(1), v{a, 0, 0} {}
    Multideg(int a, int b) : k(2), v{a, b, 0} {}
    Multideg(int a, int b, int c) : k(3), v{a, b, c} {}

    int first() const { return v[0]; }
    bool is_zero() const { return v[0] == 0 && v[1] == 0 && v[2] == 0; }

    Multideg& operator+=(const Multideg& o) {
        for (int i = 0; i < 3; ++i) v[i] += o.v[i];
        return *this;
    }
    friend Multideg operator+(Multideg a, const Multideg& b) { return a += b; }
    friend Multideg operator-(const Multideg& a, const Multideg& b) {
        Multideg r = a;
        for (int i = 0; i < 3; ++i) r.v[i] -= b.v[i];
        return r;
    }
    friend bool operator==(const Multideg& a, const Multideg& b) { return a.k == b.k && a.v == b.v; }
    friend bool operator!=(const Multideg& a, const Multideg& b) { return !(a == b); }
    friend bool operator<(const Multideg& a, const Multideg& b) { return a.v < b.v; }

    std::string str() const {
        std::string s = "(";
        for (int i = 0; i < k; ++i) s += (i ? "," : "") + std::to_string(v[i]);
        return s + ")";
    }
};

inline Multideg word_deg(const Word& w, const std::vector<Multideg>& gen_degs) {
    Multideg d;
    d.k = gen_degs.empty() ? 1 : gen_degs[0].k;
    for (char c : w) d += gen_degs[static_cast<unsigned char>(c)];
    return d;
}

}  // namespace ncalg

#endif
