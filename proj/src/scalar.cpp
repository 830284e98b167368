#include "ncalg/scalar.hpp"

namespace ncalg {

std::string rat_str(const Rational& q) {
    return q.get_str();
}

Rational rat_pow(const Rational& q, long e) {
    if (e < 0) {
        if (sgn(q) == 0) throw Error("division by zero in rational power");
        Rational inv = Rational(1) / q;
        return rat_pow(inv, -e);
    }
    Rational r(1);
    Rational base = q;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    r.canonicalize();
    return r;
}

bool rat_is_square(const Rational& q, Rational* root) {
    if (sgn(q) < 0) return false;
    if (sgn(q) == 0) {
        if (root) *root = 0;
        return true;
    }
    mpz_class num = q.get_num(), den = q.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return false;
    if (root) {
        mpz_class rn, rd;
        mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
        mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
        *root = Rational(rn, rd);
        root->canonicalize();
    }
    return true;
}

std::string FieldDef::display() const {
    // g^2 = c1*g + c0, printed as the monic defining polynomial.
    Rational b = -c1, c = -c0;
    std::string s = "Q[" + gen + "]/(" + gen + "^2";
    if (sgn(b) != 0) s += (sgn(b) > 0 ? "+" : "-") + (abs(b) == 1 ? gen : rat_str(abs(b)) + "*" + gen);
    if (sgn(c) != 0) s += (sgn(c) > 0 ? "+" : "-") + rat_str(abs(c));
    s += ")";
    return s;
}

FieldPtr make_field_quadratic(const std::string& gen, const Rational& b, const Rational& c) {
    Rational disc = b * b - 4 * c;
    Rational sq;
    if (rat_is_square(disc, &sq)) {
        Rational r1 = (-b + sq) / 2, r2 = (-b - sq) / 2;
        throw Error("reducible polynomial " + gen + "^2" +
                    (sgn(b) ? (sgn(b) > 0 ? "+" : "") + rat_str(b) + "*" + gen : "") +
                    (sgn(c) ? (sgn(c) > 0 ? "+" : "") + rat_str(c) : "") + ": factors as (" + gen +
                    "-(" + rat_str(r1) + "))*(" + gen + "-(" + rat_str(r2) + "))");
    }
    auto f = std::make_shared<FieldDef>();
    f->gen = gen;
    f->c1 = -b;
    f->c0 = -c;
    return f;
}

bool same_field(const FieldPtr& a, const FieldPtr& b) {
    if (!a && !b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

FieldPtr unify_fields(const FieldPtr& a, const FieldPtr& b) {
    if (!a) return b;
    if (!b) return a;
    if (*a == *b) return a;
    throw Error("mixed fields: " + a->display() + " vs " + b->display());
}

Scalar::Scalar(const Rational& a, const Rational& b, FieldPtr f) : a_(a), b_(b), f_(std::move(f)) {
    if (!f_ && sgn(b_) != 0) throw Error("extension coefficient without a field");
    if (sgn(b_) == 0 && f_ == nullptr) f_ = nullptr;
}

Scalar Scalar::generator(const FieldPtr& f) {
    if (!f) throw Error("the rational field has no extension generator");
    return Scalar(Rational(0), Rational(1), f);
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    r.a_ = -r.a_;
    r.b_ = -r.b_;
    return r;
}

Scalar operator+(const Scalar& x, const Scalar& y) {
    Scalar r;
    r.f_ = unify_fields(x.f_, y.f_);
    r.a_ = x.a_ + y.a_;
    r.b_ = x.b_ + y.b_;
    return r;
}

Scalar operator-(const Scalar& x, const Scalar& y) {
    return x + (-y);
}

Scalar operator*(const Scalar& x, const Scalar& y) {
    Scalar r;
    r.f_ = unify_fields(x.f_, y.f_);
    // (a1 + b1 g)(a2 + b2 g) with g^2 = c1 g + c0
    r.a_ = x.a_ * y.a_;
    r.b_ = x.a_ * y.b_ + x.b_ * y.a_;
    if (sgn(x.b_) != 0 && sgn(y.b_) != 0) {
        Rational bb = x.b_ * y.b_;
        r.a_ += bb * r.f_->c0;
        r.b_ += bb * r.f_->c1;
    }
    r.a_.canonicalize();
    r.b_.canonicalize();
    return r;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw Error("division by zero");
    if (sgn(b_) == 0) return Scalar(Rational(1) / a_, Rational(0), f_);
    // conj = (a + b c1) - b g, and x * conj is rational.
    Scalar conj(a_ + b_ * f_->c1, -b_, f_);
    Scalar n = (*this) * conj;
    if (sgn(n.b_) != 0) throw Error("internal: norm not rational");
    Rational inv = Rational(1) / n.a_;
    return Scalar(conj.a_ * inv, conj.b_ * inv, f_);
}

Scalar operator/(const Scalar& x, const Scalar& y) {
    return x * y.inverse();
}

bool operator==(const Scalar& x, const Scalar& y) {
    if (!same_field(x.f_, y.f_)) {
        if (x.is_rational() && y.is_rational()) return x.a_ == y.a_;
        unify_fields(x.f_, y.f_);  // throws on genuine mismatch
    }
    return x.a_ == y.a_ && x.b_ == y.b_;
}

Scalar Scalar::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Scalar r(1), base = *this;
    while (e) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

std::string Scalar::str() const {
    if (sgn(b_) == 0) return rat_str(a_);
    const std::string& g = f_->gen;
    std::string gp;
    if (b_ == 1)
        gp = g;
    else if (b_ == -1)
        gp = "-" + g;
    else
        gp = rat_str(b_) + "*" + g;
    if (sgn(a_) == 0) return gp;
    if (sgn(b_) > 0) return rat_str(a_) + "+" + gp;
    return rat_str(a_) + gp;  // gp already carries the minus sign
}

}  // namespace ncalg
