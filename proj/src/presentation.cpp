#include "ncalg/presentation.hpp"

#include <cctype>
#include <sstream>

namespace ncalg {

namespace {

enum class Tok { End, Ident, Int, Sym };

struct Lexer {
    const std::string& src;
    size_t pos = 0;
    int line = 1, col = 1;

    Tok kind = Tok::End;
    std::string text;
    int tline = 1, tcol = 1;

    explicit Lexer(const std::string& s) : src(s) { advance(); }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(tline, tcol, msg); }

    void bump() {
        if (pos < src.size() && src[pos] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++pos;
    }

    void advance() {
        // skip spaces and comments, but not newlines (the presentation file
        // grammar is line-oriented; expression parsing never sees newlines)
        while (pos < src.size()) {
            char c = src[pos];
            if (c == '#') {
                while (pos < src.size() && src[pos] != '\n') bump();
            } else if (c == ' ' || c == '\t' || c == '\r') {
                bump();
            } else {
                break;
            }
        }
        tline = line;
        tcol = col;
        if (pos >= src.size()) {
            kind = Tok::End;
            text.clear();
            return;
        }
        char c = src[pos];
        if (c == '\n') {
            kind = Tok::Sym;
            text = "\n";
            bump();
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            kind = Tok::Ident;
            text.clear();
            while (pos < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_')) {
                text += src[pos];
                bump();
            }
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            kind = Tok::Int;
            text.clear();
            while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
                text += src[pos];
                bump();
            }
            return;
        }
        if (pos + 1 < src.size() && c == '-' && src[pos + 1] == '>') {
            kind = Tok::Sym;
            text = "->";
            bump();
            bump();
            return;
        }
        kind = Tok::Sym;
        text = std::string(1, c);
        bump();
    }

    bool is_sym(const char* s) const { return kind == Tok::Sym && text == s; }
    void expect_sym(const char* s, const char* what) {
        if (!is_sym(s)) fail(std::string("expected '") + s + "' " + what);
        advance();
    }
};

struct ExprCtx {
    const Presentation& pres;
    bool allow_gens;
};

NCPoly parse_expr(Lexer& lx, const ExprCtx& cx);

long parse_exponent(Lexer& lx) {
    bool neg = false;
    if (lx.is_sym("-")) {
        neg = true;
        lx.advance();
    }
    if (lx.kind != Tok::Int) lx.fail("expected integer exponent after '^'");
    long e = std::stol(lx.text);
    lx.advance();
    return neg ? -e : e;
}

NCPoly parse_primary(Lexer& lx, const ExprCtx& cx) {
    if (lx.is_sym("-")) {
        lx.advance();
        return Scalar(-1) * parse_primary(lx, cx);
    }
    if (lx.is_sym("(")) {
        lx.advance();
        NCPoly p = parse_expr(lx, cx);
        lx.expect_sym(")", "to close parenthesis");
        return p;
    }
    if (lx.kind == Tok::Int) {
        Rational num(lx.text);
        lx.advance();
        if (lx.is_sym("/")) {
            lx.advance();
            if (lx.kind != Tok::Int) lx.fail("expected integer denominator");
            Rational den(lx.text);
            if (sgn(den) == 0) lx.fail("zero denominator");
            lx.advance();
            Rational q = num / den;
            q.canonicalize();
            return NCPoly::monomial(Word(), Scalar(q));
        }
        return NCPoly::monomial(Word(), Scalar(num));
    }
    if (lx.kind == Tok::Ident) {
        std::string name = lx.text;
        int g = cx.pres.gen_index(name);
        if (g >= 0) {
            if (!cx.allow_gens) lx.fail("generator '" + name + "' not allowed in a scalar expression");
            lx.advance();
            return NCPoly::monomial(letter(g));
        }
        if (const Scalar* v = cx.pres.param(name)) {
            lx.advance();
            return NCPoly::monomial(Word(), *v);
        }
        if (cx.pres.field && cx.pres.field->gen == name) {
            lx.advance();
            return NCPoly::monomial(Word(), Scalar::generator(cx.pres.field));
        }
        lx.fail("unknown identifier '" + name + "'");
    }
    lx.fail("expected a term");
}

NCPoly parse_factor(Lexer& lx, const ExprCtx& cx) {
    NCPoly p = parse_primary(lx, cx);
    while (lx.is_sym("^")) {
        lx.advance();
        long e = parse_exponent(lx);
        if (e < 0) {
            if (p.t.size() != 1 || !p.t.begin()->first.empty())
                lx.fail("negative power of a non-scalar");
            p = NCPoly::monomial(Word(), p.t.begin()->second.pow(e));
        } else {
            NCPoly r = NCPoly::monomial(Word());
            for (long i = 0; i < e; ++i) r = r * p;
            p = r;
        }
    }
    return p;
}

NCPoly parse_term(Lexer& lx, const ExprCtx& cx) {
    NCPoly p = parse_factor(lx, cx);
    while (lx.is_sym("*")) {
        lx.advance();
        p = p * parse_factor(lx, cx);
    }
    return p;
}

NCPoly parse_expr(Lexer& lx, const ExprCtx& cx) {
    bool neg = false;
    if (lx.is_sym("+") || lx.is_sym("-")) {
        neg = lx.text == "-";
        lx.advance();
    }
    NCPoly p = parse_term(lx, cx);
    if (neg) p = Scalar(-1) * p;
    while (lx.is_sym("+") || lx.is_sym("-")) {
        bool minus = lx.text == "-";
        lx.advance();
        NCPoly q = parse_term(lx, cx);
        if (minus)
            p -= q;
        else
            p += q;
    }
    return p;
}

void skip_newlines(Lexer& lx) {
    while (lx.is_sym("\n")) lx.advance();
}

/* field Q  |  field Q[g]/(g^2+b*g+c) */
FieldPtr parse_field_line(Lexer& lx) {
    if (lx.kind != Tok::Ident || lx.text != "Q") lx.fail("expected 'Q' after 'field'");
    lx.advance();
    if (!lx.is_sym("[")) return field_rationals();
    lx.advance();
    if (lx.kind != Tok::Ident) lx.fail("expected extension generator name");
    std::string g = lx.text;
    lx.advance();
    lx.expect_sym("]", "after generator name");
    lx.expect_sym("/", "before defining polynomial");
    lx.expect_sym("(", "before defining polynomial");
    // parse sum of terms  c * g^e  with e in {0,1,2}
    Rational c2(0), c1(0), c0(0);
    bool first = true;
    while (true) {
        Rational sign(1);
        if (lx.is_sym("+")) {
            lx.advance();
        } else if (lx.is_sym("-")) {
            sign = -1;
            lx.advance();
        } else if (!first) {
            break;
        }
        first = false;
        Rational coef(1);
        bool have_coef = false;
        if (lx.kind == Tok::Int) {
            coef = Rational(lx.text);
            have_coef = true;
            lx.advance();
            if (lx.is_sym("/")) {
                lx.advance();
                if (lx.kind != Tok::Int) lx.fail("expected integer denominator");
                coef /= Rational(lx.text);
                coef.canonicalize();
                lx.advance();
            }
            if (lx.is_sym("*")) lx.advance();
        }
        long e = 0;
        if (lx.kind == Tok::Ident && lx.text == g) {
            e = 1;
            lx.advance();
            if (lx.is_sym("^")) {
                lx.advance();
                e = parse_exponent(lx);
            }
        } else if (!have_coef) {
            lx.fail("expected a term of the defining polynomial");
        }
        Rational v = sign * coef;
        if (e == 0)
            c0 += v;
        else if (e == 1)
            c1 += v;
        else if (e == 2)
            c2 += v;
        else
            lx.fail("defining polynomial degree must be at most 2");
    }
    lx.expect_sym(")", "after defining polynomial");
    if (c2 != 1) lx.fail("defining polynomial must be monic of degree 2");
    return make_field_quadratic(g, c1, c0);
}

}  // namespace

Presentation parse_presentation(const std::string& text) {
    Presentation p;
    Lexer lx(text);
    bool field_set = false;
    skip_newlines(lx);
    while (lx.kind != Tok::End) {
        if (lx.kind != Tok::Ident) lx.fail("expected a directive (field/param/gen/rel)");
        std::string dir = lx.text;
        int dline = lx.tline, dcol = lx.tcol;
        lx.advance();
        if (dir == "field") {
            if (field_set) throw ParseError(dline, dcol, "duplicate field directive");
            p.field = parse_field_line(lx);
            field_set = true;
        } else if (dir == "param") {
            if (lx.kind != Tok::Ident) lx.fail("expected parameter name");
            std::string name = lx.text;
            if (p.param(name) || p.gen_index(name) >= 0 || (p.field && p.field->gen == name))
                lx.fail("name '" + name + "' already in use");
            lx.advance();
            lx.expect_sym("=", "after parameter name");
            NCPoly v = parse_expr(lx, {p, false});
            Scalar s(0);
            if (!v.is_zero()) s = v.t.begin()->second;
            p.params.emplace_back(name, s);
        } else if (dir == "gen") {
            if (lx.kind != Tok::Ident) lx.fail("expected generator name");
            std::string name = lx.text;
            if (p.param(name) || p.gen_index(name) >= 0 || (p.field && p.field->gen == name))
                lx.fail("name '" + name + "' already in use");
            lx.advance();
            lx.expect_sym(":", "after generator name");
            lx.expect_sym("(", "before multidegree");
            Multideg d;
            int idx = 0;
            while (true) {
                bool neg = false;
                if (lx.is_sym("-")) {
                    neg = true;
                    lx.advance();
                }
                if (lx.kind != Tok::Int) lx.fail("expected integer degree component");
                if (idx >= 3) lx.fail("multidegree rank exceeds 3");
                d.v[idx++] = (neg ? -1 : 1) * std::stoi(lx.text);
                lx.advance();
                if (lx.is_sym(",")) {
                    lx.advance();
                    continue;
                }
                break;
            }
            d.k = idx;
            lx.expect_sym(")", "after multidegree");
            if (d.first() < 1)
                throw ParseError(dline, dcol,
                                 "generator '" + name + "' must have first-component degree >= 1");
            if (p.gens.empty())
                p.adams_rank = d.k;
            else if (d.k != p.adams_rank)
                throw ParseError(dline, dcol, "inconsistent multidegree rank");
            if (p.gens.size() >= 64) lx.fail("too many generators");
            p.gens.push_back(name);
            p.gen_degs.push_back(d);
        } else if (dir == "rel") {
            NCPoly r = parse_expr(lx, {p, true});
            if (r.is_zero()) throw ParseError(dline, dcol, "relation is identically zero");
            auto deg = r.homogeneous_deg(p.gen_degs);
            if (!deg)
                throw ParseError(dline, dcol, "inhomogeneous relation: terms of unequal multidegree");
            if (deg->first() < 2)
                throw ParseError(dline, dcol, "relation must have first-component degree >= 2");
            p.rels.push_back(std::move(r));
            p.rel_degs.push_back(*deg);
        } else {
            throw ParseError(dline, dcol, "unknown directive '" + dir + "'");
        }
        if (lx.kind != Tok::End && !lx.is_sym("\n"))
            lx.fail("unexpected trailing tokens on line");
        skip_newlines(lx);
    }
    return p;
}

std::string word_str(const Word& w, const Presentation& ctx) {
    if (w.empty()) return "1";
    std::string s;
    size_t i = 0;
    while (i < w.size()) {
        size_t j = i;
        while (j < w.size() && w[j] == w[i]) ++j;
        if (!s.empty()) s += "*";
        s += ctx.gens[static_cast<unsigned char>(w[i])];
        if (j - i > 1) s += "^" + std::to_string(j - i);
        i = j;
    }
    return s;
}

namespace {

/* Print c*w so that terms can be joined with " + "/" - ".  Returns the
 * magnitude string and whether the leading sign is negative. */
std::pair<std::string, bool> term_str(const Word& w, const Scalar& c, const Presentation& ctx) {
    bool neg = false;
    Scalar cc = c;
    if (c.is_rational()) {
        if (sgn(c.rat_part()) < 0) {
            neg = true;
            cc = -c;
        }
    } else if (sgn(c.rat_part()) == 0 && sgn(c.gen_part()) < 0) {
        neg = true;
        cc = -c;
    }
    std::string cs;
    bool need_coef = true;
    if (cc.is_one() && !w.empty()) need_coef = false;
    if (need_coef) {
        cs = cc.str();
        bool wrap = !cc.is_rational() && sgn(cc.rat_part()) != 0;
        if (wrap) cs = "(" + cs + ")";
    }
    if (w.empty()) return {cs, neg};
    if (cs.empty()) return {word_str(w, ctx), neg};
    return {cs + "*" + word_str(w, ctx), neg};
}

}  // namespace

std::string poly_str(const NCPoly& p, const Presentation& ctx) {
    if (p.is_zero()) return "0";
    std::string s;
    bool first = true;
    for (auto& [w, c] : p.t) {
        auto [ts, neg] = term_str(w, c, ctx);
        if (first) {
            s = (neg ? "-" : "") + ts;
            first = false;
        } else {
            s += (neg ? " - " : " + ") + ts;
        }
    }
    return s;
}

std::string print_presentation(const Presentation& p) {
    std::ostringstream os;
    os << "field " << (p.field ? p.field->display() : "Q") << "\n";
    for (auto& [name, v] : p.params) {
        std::string vs = v.str();
        bool wrap = !v.is_rational() && sgn(v.rat_part()) != 0;
        os << "param " << name << " = " << (wrap ? "(" + vs + ")" : vs) << "\n";
    }
    for (size_t i = 0; i < p.gens.size(); ++i)
        os << "gen " << p.gens[i] << " : " << p.gen_degs[i].str() << "\n";
    for (auto& r : p.rels) os << "rel " << poly_str(r, p) << "\n";
    return os.str();
}

NCPoly parse_poly_expr(const std::string& text, const Presentation& ctx) {
    Lexer lx(text);
    skip_newlines(lx);
    NCPoly p = parse_expr(lx, {ctx, true});
    skip_newlines(lx);
    if (lx.kind != Tok::End) lx.fail("unexpected trailing tokens");
    return p;
}

Scalar parse_scalar_expr(const std::string& text, const Presentation& ctx) {
    Lexer lx(text);
    skip_newlines(lx);
    NCPoly p = parse_expr(lx, {ctx, false});
    skip_newlines(lx);
    if (lx.kind != Tok::End) lx.fail("unexpected trailing tokens");
    if (p.is_zero()) return Scalar(0);
    return p.t.begin()->second;
}

bool presentations_equal(const Presentation& a, const Presentation& b) {
    if (!same_field(a.field, b.field)) return false;
    if (a.gens != b.gens || a.adams_rank != b.adams_rank) return false;
    if (a.gen_degs.size() != b.gen_degs.size()) return false;
    for (size_t i = 0; i < a.gen_degs.size(); ++i)
        if (a.gen_degs[i] != b.gen_degs[i]) return false;
    if (a.rels.size() != b.rels.size()) return false;
    for (size_t i = 0; i < a.rels.size(); ++i)
        if (a.rels[i] != b.rels[i]) return false;
    if (a.params.size() != b.params.size()) return false;
    for (size_t i = 0; i < a.params.size(); ++i)
        if (a.params[i].first != b.params[i].first || !(a.params[i].second == b.params[i].second))
            return false;
    return true;
}

}  // namespace ncalg
