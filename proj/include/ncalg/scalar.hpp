#ifndef NCALG_SCALAR_HPP
#define NCALG_SCALAR_HPP

#include <gmpxx.h>

#include <memory>
#include <stdexcept>
#include <string>

namespace ncalg {

using Rational = mpq_class;

/* Operational error (bad input, exceeded bound, unsupported case). */
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/* Syntax error with source position. */
struct ParseError : Error {
    int line, col;
    ParseError(int line_, int col_, const std::string& msg)
        : Error("line " + std::to_string(line_) + ", col " + std::to_string(col_) + ": " + msg),
          line(line_), col(col_) {}
};

std::string rat_str(const Rational& q);
Rational rat_pow(const Rational& q, long e);
bool rat_is_square(const Rational& q, Rational* root);

/* A quadratic extension Q[g]/(g^2 - c1*g - c0).  Plain Q is represented by a
 * null FieldDef pointer throughout. */
struct FieldDef {
    std::string gen;  // generator symbol, e.g. "u", "i", "j"
    Rational c1, c0;  // g^2 = c1*g + c0
    std::string display() const;
    bool operator==(const FieldDef& o) const { return gen == o.gen && c1 == o.c1 && c0 == o.c0; }
};

using FieldPtr = std::shared_ptr<const FieldDef>;

/* Q itself. */
inline FieldPtr field_rationals() { return nullptr; }

/* Q[gen]/(gen^2 + b*gen + c); rejects reducible polynomials, exhibiting a
 * rational root. */
FieldPtr make_field_quadratic(const std::string& gen, const Rational& b, const Rational& c);

bool same_field(const FieldPtr& a, const FieldPtr& b);
/* Common field of two operands; throws on a genuine mismatch. */
FieldPtr unify_fields(const FieldPtr& a, const FieldPtr& b);

/* An exact element a + b*g of Q or of a quadratic extension. */
class Scalar {
  public:
    Scalar() : a_(0), b_(0) {}
    Scalar(long v) : a_(v), b_(0) {}  // NOLINT: implicit by design
    Scalar(const Rational& v) : a_(v), b_(0) {}
    Scalar(const Rational& a, const Rational& b, FieldPtr f);

    static Scalar generator(const FieldPtr& f);

    bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
    bool is_one() const { return a_ == 1 && sgn(b_) == 0; }
    bool is_rational() const { return sgn(b_) == 0; }
    const Rational& rat_part() const { return a_; }
    const Rational& gen_part() const { return b_; }
    const FieldPtr& field() const { return f_; }

    Scalar operator-() const;
    Scalar inverse() const;
    Scalar pow(long e) const;
    std::string str() const;

    friend Scalar operator+(const Scalar& x, const Scalar& y);
    friend Scalar operator-(const Scalar& x, const Scalar& y);
    friend Scalar operator*(const Scalar& x, const Scalar& y);
    friend Scalar operator/(const Scalar& x, const Scalar& y);
    friend bool operator==(const Scalar& x, const Scalar& y);
    friend bool operator!=(const Scalar& x, const Scalar& y) { return !(x == y); }

    Scalar& operator+=(const Scalar& y) { return *this = *this + y; }
    Scalar& operator-=(const Scalar& y) { return *this = *this - y; }
    Scalar& operator*=(const Scalar& y) { return *this = *this * y; }

  private:
    Rational a_, b_;  // a + b*gen
    FieldPtr f_;      // null = plain Q (then b_ == 0)
};

}  // namespace ncalg

#endif
