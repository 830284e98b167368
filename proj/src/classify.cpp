#include "ncalg/classify.hpp"

#include <sstream>

namespace ncalg {

GmCheck gm_check(const Scalar& g1, const Scalar& g2, const Scalar& v, const Scalar& w) {
    GmCheck r;
    if (!g1.is_zero() && !g2.is_zero()) {
        Scalar q = g1 / g2;
        r.gm2 = true;
        Scalar acc(1);
        for (int i = 1; i <= 4; ++i) {
            acc = acc * q;
            if (acc.is_one()) r.gm2 = false;
        }
    }
    r.gm3 = !(Scalar(1) + v + w).is_zero();
    return r;
}

SolutionId solution_from_string(const std::string& s) {
    if (s == "1.1") return SolutionId::S11;
    if (s == "1.2a") return SolutionId::S12a;
    if (s == "1.2b") return SolutionId::S12b;
    if (s == "1.3a") return SolutionId::S13a;
    if (s == "2.1") return SolutionId::S21;
    if (s == "2.2") return SolutionId::S22;
    if (s == "2.3") return SolutionId::S23;
    throw Error("unknown solution id '" + s + "' (use 1.1, 1.2a, 1.2b, 1.3a, 2.1, 2.2, 2.3)");
}

std::string solution_name(SolutionId id) {
    switch (id) {
        case SolutionId::S11: return "1.1";
        case SolutionId::S12a: return "1.2a";
        case SolutionId::S12b: return "1.2b";
        case SolutionId::S13a: return "1.3a";
        case SolutionId::S21: return "2.1";
        case SolutionId::S22: return "2.2";
        case SolutionId::S23: return "2.3";
    }
    return "?";
}

namespace {

Scalar need(const std::map<std::string, Scalar>& params, const std::string& name) {
    auto it = params.find(name);
    if (it == params.end()) throw Error("missing parameter '" + name + "'");
    return it->second;
}

Scalar coerce(const Scalar& s, const FieldPtr& f) {
    if (!s.field()) return Scalar(s.rat_part(), Rational(0), f);
    return s;
}

}  // namespace

SolutionInstance make_solution(SolutionId id, const std::map<std::string, Scalar>& params) {
    SolutionInstance r;
    r.id = id;
    switch (id) {
        case SolutionId::S11: {
            Scalar f = need(params, "f"), v = need(params, "v");
            if (f.is_zero()) throw Error("solution 1.1 needs f != 0");
            r.field = f.field() ? f.field() : v.field();
            r.g1 = -f.pow(3);
            r.g2 = -f.pow(-4);
            r.v = v;
            r.w = f * f;
            r.pc = v - f;
            r.qc = (f - v) * f;
            r.rc = -f.pow(3);
            break;
        }
        case SolutionId::S12a: {
            Scalar p = need(params, "p");
            if (p.is_zero()) throw Error("solution 1.2a needs p != 0");
            r.field = p.field();
            r.g1 = -p.pow(3);
            r.g2 = -p.pow(-4);
            r.v = Scalar(0);
            r.w = -(p * p);
            r.pc = p;
            r.qc = p * p;
            r.rc = p.pow(3);
            break;
        }
        case SolutionId::S12b: {
            FieldPtr F = make_field_quadratic("i", Rational(0), Rational(1));  // i^2 = -1
            Scalar p = coerce(need(params, "p"), F);
            if (p.is_zero()) throw Error("solution 1.2b needs p != 0");
            if (!same_field(p.field(), F)) throw Error("solution 1.2b parameters must live in Q[i]");
            Scalar i = Scalar::generator(F);
            r.field = F;
            r.g1 = i * p.pow(3);
            r.g2 = -p.pow(-4);
            r.v = Scalar(0);
            r.w = i * p * p;
            r.pc = p;
            r.qc = p * p;
            r.rc = p.pow(3);
            break;
        }
        case SolutionId::S13a: {
            FieldPtr F = make_field_quadratic("j", Rational(-1), Rational(1));  // j^2 = j - 1
            Scalar v = coerce(need(params, "v"), F);
            if (v.is_zero()) throw Error("solution 1.3a needs v != 0");
            if (!same_field(v.field(), F)) throw Error("solution 1.3a parameters must live in Q[j]");
            Scalar j = Scalar::generator(F);
            r.field = F;
            r.g1 = -v.pow(3);
            r.g2 = j * v.pow(-4);
            r.v = v;
            r.w = v * v;
            r.pc = Scalar(0);
            r.qc = Scalar(0);
            r.rc = j.inverse() * v.pow(3);
            break;
        }
        case SolutionId::S21: {
            Scalar h = need(params, "h"), f = need(params, "f");
            if (h.is_zero() || f.is_zero()) throw Error("solution 2.1 needs h, f != 0");
            r.field = h.field() ? h.field() : f.field();
            r.case4 = true;
            r.f = f;
            r.v = h * h * f - h;
            r.w = -h.pow(3) * f;
            r.pc = h * h * f;
            r.qc = h.pow(3) * f;
            r.rc = h.pow(5) * f * f;
            r.g1 = -h.pow(4);
            r.g2 = -h.pow(-3);
            break;
        }
        case SolutionId::S22: {
            Scalar h = need(params, "h"), f = need(params, "f");
            if (h.is_zero()) throw Error("solution 2.2 needs h != 0");
            r.field = h.field() ? h.field() : f.field();
            r.case4 = true;
            r.f = f;
            r.v = Scalar(0);
            r.w = -(h * h);
            r.pc = h;
            r.qc = h * h;
            r.rc = h.pow(4) * f;
            r.g1 = -h.pow(4);
            r.g2 = -h.pow(-3);
            break;
        }
        case SolutionId::S23: {
            Scalar h = need(params, "h"), p = need(params, "p");
            if (h.is_zero() || p.is_zero()) throw Error("solution 2.3 needs h, p != 0");
            if (h == p) throw Error("solution 2.3 needs h != p (h = p reduces to solution 2.2)");
            r.field = h.field() ? h.field() : p.field();
            r.case4 = true;
            r.f = -h.pow(-3) * (h * h + h * p + p * p);
            r.v = h.inverse() * p.inverse() * (h.pow(3) - p.pow(3));
            r.w = -(h * p);
            r.pc = p;
            r.qc = h.pow(-2) * p.inverse() *
                   (h.pow(5) + h.pow(4) * p + h.pow(3) * p * p - h * p.pow(4) - p.pow(5));
            r.rc = -p * (h * h + h * p + p * p);
            r.g1 = -h.pow(4);
            r.g2 = -h.pow(-3);
            break;
        }
    }
    r.t = -(r.g1 * r.g2 * r.g2);
    return r;
}

CoeffTables coeff_tables(const SolutionInstance& inst) {
    CoeffTables T;
    T.g1 = inst.g1;
    T.g2 = inst.g2;
    T.t = inst.t;
    const Scalar &v = inst.v, &w = inst.w;
    T.a[{1, 2, 2}] = Scalar(1);
    if (!v.is_zero()) T.a[{2, 1, 2}] = v;
    T.a[{2, 2, 1}] = w;
    // b-table
    T.b[{1, 3, 2, 2}] = Scalar(1);
    if (!v.is_zero()) T.b[{2, 3, 1, 2}] = v;
    T.b[{2, 3, 2, 1}] = w;
    T.b[{2, 2, 2, 1}] = T.g1;
    if (!v.is_zero()) T.b[{1, 2, 2, 2}] = T.g2 * v;
    T.b[{2, 2, 1, 2}] = T.g2 * w;
    T.b[{1, 1, 2, 2}] = T.g2 * T.g2 * w;
    T.b[{2, 1, 1, 2}] = T.g2 * T.g1;
    if (!v.is_zero()) T.b[{2, 1, 2, 1}] = T.g1 * T.g2 * v;
    for (auto it = T.b.begin(); it != T.b.end();)
        it = it->second.is_zero() ? T.b.erase(it) : std::next(it);

    if (!inst.case4) {
        T.y[{1, 1, 1, 2}] = Scalar(1);
        if (!inst.pc.is_zero()) T.y[{1, 1, 2, 1}] = inst.pc;
        if (!inst.qc.is_zero()) T.y[{1, 2, 1, 1}] = inst.qc;
        T.y[{2, 1, 1, 1}] = inst.rc;
        const Scalar &g1 = T.g1, &g2 = T.g2;
        const Scalar &p = inst.pc, &q = inst.qc, &rr = inst.rc;
        auto setx = [&](int s, int pp, int i, int j, int k, const Scalar& val) {
            if (!val.is_zero()) T.x[{s, pp, i, j, k}] = val;
        };
        setx(1, 1, 2, 1, 1, -g1.pow(3) * g2.pow(3) * rr);
        setx(2, 1, 1, 1, 1, -g1.pow(4) * g2.pow(2));
        setx(1, 1, 1, 1, 2, -g1.pow(3) * g2.pow(3) * p);
        setx(1, 1, 1, 2, 1, -g1.pow(3) * g2.pow(3) * q);
        setx(1, 2, 1, 2, 1, -g1.pow(2) * g2.pow(3) * rr);
        setx(1, 2, 2, 1, 1, -g1.pow(3) * g2.pow(2));
        setx(2, 2, 1, 1, 1, -g1.pow(3) * g2.pow(2) * p);
        setx(1, 2, 1, 1, 2, -g1.pow(2) * g2.pow(3) * q);
        setx(1, 3, 1, 2, 1, -g1.pow(2) * g2.pow(2));
        setx(1, 3, 2, 1, 1, -g1.pow(2) * g2.pow(2) * p);
        setx(2, 3, 1, 1, 1, -g1.pow(2) * g2.pow(2) * q);
        setx(1, 3, 1, 1, 2, -g1 * g2.pow(3) * rr);
        setx(1, 4, 1, 1, 2, -g1 * g2.pow(2));
        setx(1, 4, 2, 1, 1, -g1 * g2.pow(2) * q);
        setx(1, 4, 1, 2, 1, -g1 * g2.pow(2) * p);
        setx(2, 4, 1, 1, 1, -g1 * g2.pow(2) * rr);
    } else {
        T.y[{1, 2, 1, 2}] = Scalar(1);
        if (!inst.pc.is_zero()) T.y[{2, 1, 1, 2}] = inst.pc;
        if (!inst.qc.is_zero()) T.y[{2, 1, 2, 1}] = inst.qc;
        if (!inst.rc.is_zero()) T.y[{2, 2, 1, 1}] = inst.rc;
        // c-table: c_21 = f, c_i2 = 0 by the Z^3-grading, and c_11, c_31 pinned
        // by the vanishing of the U/V combinations (c_11 chosen 0)
        Scalar h2 = (T.g1 * T.g2) * (T.g1 * T.g2);
        if (!inst.f.is_zero()) {
            T.c[{2, 1}] = inst.f;
            T.c[{3, 1}] = -(h2 * inst.f);
        }
        // x-table from the first four SI(5a) lines, taken as definitions
        for (int i = 1; i <= 2; ++i)
            for (int j = 1; j <= 2; ++j)
                for (int k = 1; k <= 2; ++k)
                    for (int h = 1; h <= 2; ++h) {
                        Scalar val = T.A(i, j, k) * T.C(2, h) - T.A(j, k, h) * T.C(1, i) +
                                     T.t * T.Y(i, j, k, h);
                        if (!val.is_zero()) T.x[{i, 4, j, k, h}] = val;
                    }
        for (int i = 1; i <= 2; ++i)
            for (int j = 1; j <= 2; ++j)
                for (int k = 1; k <= 2; ++k)
                    for (int h = 1; h <= 2; ++h) {
                        Scalar val = T.A(i, j, k) * T.C(3, h) + T.R(1, h) * T.X(1, 4, i, j, k) +
                                     T.R(2, h) * T.X(2, 4, i, j, k);
                        if (!val.is_zero()) T.x[{i, 3, j, k, h}] = val;
                    }
        for (int i = 1; i <= 2; ++i)
            for (int j = 1; j <= 2; ++j)
                for (int k = 1; k <= 2; ++k)
                    for (int h = 1; h <= 2; ++h) {
                        Scalar val =
                            T.R(1, h) * T.X(1, 3, i, j, k) + T.R(2, h) * T.X(2, 3, i, j, k);
                        if (!val.is_zero()) T.x[{i, 2, j, k, h}] = val;
                    }
        for (int i = 1; i <= 2; ++i)
            for (int j = 1; j <= 2; ++j)
                for (int k = 1; k <= 2; ++k)
                    for (int h = 1; h <= 2; ++h) {
                        Scalar val = -(T.C(1, i) * T.A(j, k, h)) + T.R(1, h) * T.X(1, 2, i, j, k) +
                                     T.R(2, h) * T.X(2, 2, i, j, k);
                        if (!val.is_zero()) T.x[{i, 1, j, k, h}] = val;
                    }
    }
    return T;
}

ResidualReport si_residuals(const CoeffTables& T) {
    ResidualReport rep;
    auto emit = [&](const std::string& fam, std::vector<int> idx, const Scalar& val) {
        ++rep.checked;
        if (!val.is_zero()) rep.nonzero.push_back({fam, std::move(idx), val});
    };
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j)
            for (int k = 1; k <= 2; ++k) {
                emit("SI4a.1", {i, j, k}, T.A(i, j, k) - T.B(i, 3, j, k));
                Scalar s2 = T.B(i, 2, j, k), s3 = T.B(i, 1, j, k), s4 = T.t * T.A(i, j, k);
                for (int s = 1; s <= 2; ++s) {
                    s2 -= T.R(s, k) * T.B(s, 3, i, j);
                    s3 -= T.R(s, k) * T.B(s, 2, i, j);
                    s4 += T.R(s, k) * T.B(s, 1, i, j);
                }
                emit("SI4a.2", {i, j, k}, s2);
                emit("SI4a.3", {i, j, k}, s3);
                emit("SI4a.4", {i, j, k}, s4);
                Scalar b4 = T.t * T.A(i, j, k);
                for (int s = 1; s <= 2; ++s)
                    for (int tt = 1; tt <= 2; ++tt)
                        for (int u = 1; u <= 2; ++u)
                            b4 += T.R(s, k) * T.R(tt, j) * T.R(u, i) * T.A(u, tt, s);
                emit("SI4b", {i, j, k}, b4);
            }
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j)
            for (int k = 1; k <= 2; ++k)
                for (int h = 1; h <= 2; ++h) {
                    emit("SI5a.1", {i, j, k, h},
                         T.A(i, j, k) * T.C(2, h) - T.A(j, k, h) * T.C(1, i) +
                             T.t * T.Y(i, j, k, h) - T.X(i, 4, j, k, h));
                    emit("SI5a.2", {i, j, k, h},
                         T.A(i, j, k) * T.C(3, h) + T.R(1, h) * T.X(1, 4, i, j, k) +
                             T.R(2, h) * T.X(2, 4, i, j, k) - T.X(i, 3, j, k, h));
                    emit("SI5a.3", {i, j, k, h},
                         T.R(1, h) * T.X(1, 3, i, j, k) + T.R(2, h) * T.X(2, 3, i, j, k) -
                             T.X(i, 2, j, k, h));
                    emit("SI5a.4", {i, j, k, h},
                         T.C(1, i) * T.A(j, k, h) - T.R(1, h) * T.X(1, 2, i, j, k) -
                             T.R(2, h) * T.X(2, 2, i, j, k) + T.X(i, 1, j, k, h));
                    emit("SI5a.5", {i, j, k, h},
                         T.A(j, k, h) * T.C(2, i) - T.A(i, j, k) * T.C(3, h) -
                             T.R(1, h) * T.X(1, 1, i, j, k) - T.R(2, h) * T.X(2, 1, i, j, k) +
                             T.Y(i, j, k, h));
                    emit("SI5c", {i, j, k, h},
                         (Scalar(1) - T.t * T.G(i) * T.G(j) * T.G(k) * T.G(h)) * T.Y(i, j, k, h));
                }
    for (int s = 1; s <= 2; ++s)
        for (int i = 1; i <= 2; ++i)
            for (int j = 1; j <= 2; ++j)
                for (int k = 1; k <= 2; ++k)
                    for (int h = 1; h <= 2; ++h)
                        for (int m = 1; m <= 2; ++m)
                            for (int n = 1; n <= 2; ++n) {
                                Scalar val = -(T.A(i, j, k) * T.X(s, 1, h, m, n)) +
                                             T.A(j, k, h) * T.X(s, 2, i, m, n) -
                                             T.A(k, h, m) * T.X(s, 3, i, j, n) +
                                             T.A(h, m, n) * T.X(s, 4, i, j, k) +
                                             T.B(s, 1, m, n) * T.Y(i, j, k, h) -
                                             T.B(s, 2, i, n) * T.Y(j, k, h, m) +
                                             T.B(s, 3, i, j) * T.Y(k, h, m, n);
                                emit("SI6a", {s, i, j, k, h, m, n}, val);
                            }
    return rep;
}

std::vector<std::string> perturbation_insensitive_entries(const CoeffTables& tabs) {
    std::vector<std::string> bad;
    auto trial = [&](CoeffTables t, const std::string& what) {
        if (si_residuals(t).all_zero()) bad.push_back(what);
    };
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j)
            for (int k = 1; k <= 2; ++k) {
                CoeffTables t = tabs;
                t.a[{i, j, k}] = t.A(i, j, k) + Scalar(1);
                trial(t, "a[" + std::to_string(i) + std::to_string(j) + std::to_string(k) + "]");
            }
    for (int i = 1; i <= 2; ++i)
        for (int q = 1; q <= 3; ++q)
            for (int j = 1; j <= 2; ++j)
                for (int k = 1; k <= 2; ++k) {
                    CoeffTables t = tabs;
                    t.b[{i, q, j, k}] = t.B(i, q, j, k) + Scalar(1);
                    trial(t, "b[" + std::to_string(i) + std::to_string(q) + std::to_string(j) +
                                 std::to_string(k) + "]");
                }
    for (int p = 1; p <= 3; ++p)
        for (int i = 1; i <= 2; ++i) {
            CoeffTables t = tabs;
            t.c[{p, i}] = t.C(p, i) + Scalar(1);
            trial(t, "c[" + std::to_string(p) + std::to_string(i) + "]");
        }
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j)
            for (int k = 1; k <= 2; ++k)
                for (int h = 1; h <= 2; ++h) {
                    CoeffTables t = tabs;
                    t.y[{i, j, k, h}] = t.Y(i, j, k, h) + Scalar(1);
                    trial(t, "y[" + std::to_string(i) + std::to_string(j) + std::to_string(k) +
                                 std::to_string(h) + "]");
                }
    for (int s = 1; s <= 2; ++s)
        for (int p = 1; p <= 4; ++p)
            for (int i = 1; i <= 2; ++i)
                for (int j = 1; j <= 2; ++j)
                    for (int k = 1; k <= 2; ++k) {
                        CoeffTables t = tabs;
                        t.x[{s, p, i, j, k}] = t.X(s, p, i, j, k) + Scalar(1);
                        trial(t, "x[" + std::to_string(s) + std::to_string(p) + std::to_string(i) +
                                     std::to_string(j) + std::to_string(k) + "]");
                    }
    return bad;
}

std::vector<int> case_dispatch(const Scalar& g1, const Scalar& g2, const Scalar& t) {
    std::vector<int> out;
    const Scalar factors[5] = {
        Scalar(1) - t * g1.pow(4),           // case 1
        Scalar(1) - t * g2.pow(4),           // case 2
        Scalar(1) - t * g1 * g2.pow(3),      // case 3
        Scalar(1) - t * g1.pow(2) * g2.pow(2),  // case 4
        Scalar(1) - t * g1.pow(3) * g2,      // case 5
    };
    for (int c = 0; c < 5; ++c)
        if (factors[c].is_zero()) out.push_back(c + 1);
    return out;
}

namespace {

std::string scalar_literal(const Scalar& s) {
    std::string v = s.str();
    bool wrap = !s.is_rational() && sgn(s.rat_part()) != 0;
    return wrap ? "(" + v + ")" : v;
}

}  // namespace

std::string catalog_text(const std::string& name, const std::map<std::string, Scalar>& params,
                         FieldPtr field) {
    std::ostringstream os;
    auto param_line = [&](const std::string& n) {
        os << "param " << n << " = " << scalar_literal(need(params, n)) << "\n";
    };
    auto gens = [&] {
        os << "gen z1 : (1,1)\n";
        os << "gen z2 : (1,0)\n";
    };
    auto nonzero = [&](const std::string& n) {
        if (need(params, n).is_zero()) throw Error("catalog " + name + " needs " + n + " != 0");
    };
    if (name == "A") {
        nonzero("p");
        os << "field " << (field ? field->display() : "Q") << "\n";
        param_line("p");
        gens();
        os << "rel z1*z2^2 - p^2*z2^2*z1\n";
        os << "rel z1^3*z2 + p*z1^2*z2*z1 + p^2*z1*z2*z1^2 + p^3*z2*z1^3\n";
    } else if (name == "B") {
        nonzero("p");
        if (!field) field = make_field_quadratic("i", Rational(0), Rational(1));
        os << "field " << field->display() << "\n";
        param_line("p");
        gens();
        os << "rel z1*z2^2 + i*p^2*z2^2*z1\n";
        os << "rel z1^3*z2 + p*z1^2*z2*z1 + p^2*z1*z2*z1^2 + p^3*z2*z1^3\n";
    } else if (name == "C") {
        nonzero("p");
        if (!field) field = make_field_quadratic("j", Rational(-1), Rational(1));
        os << "field " << field->display() << "\n";
        param_line("p");
        gens();
        os << "rel z1*z2^2 + p*z2*z1*z2 + p^2*z2^2*z1\n";
        os << "rel z1^3*z2 + j*p^3*z2*z1^3\n";
    } else if (name == "D") {
        nonzero("p");
        os << "field " << (field ? field->display() : "Q") << "\n";
        param_line("v");
        param_line("p");
        gens();
        os << "rel z1*z2^2 + v*z2*z1*z2 + p^2*z2^2*z1\n";
        os << "rel z1^3*z2 + (v+p)*z1^2*z2*z1 + (p^2+p*v)*z1*z2*z1^2 + p^3*z2*z1^3\n";
    } else if (name == "X") {
        os << "field " << (field ? field->display() : "Q") << "\n";
        param_line("p");
        param_line("h");
        gens();
        os << "rel z1*z2^2 + (p-h)*z2*z1*z2 - h*p*z2^2*z1\n";
        os << "rel z1*z2*z1*z2 + p*z2*z1^2*z2 + h*p*z2*z1*z2*z1 + h*p^2*z2^2*z1^2\n";
    } else if (name == "Y") {
        os << "field " << (field ? field->display() : "Q") << "\n";
        param_line("h");
        param_line("f");
        gens();
        os << "rel z1*z2^2 - h^2*z2^2*z1\n";
        os << "rel z1*z2*z1*z2 + h*z2*z1^2*z2 + h^2*z2*z1*z2*z1 + h^4*f*z2^2*z1^2\n";
    } else if (name == "Z") {
        nonzero("p");
        nonzero("h");
        os << "field " << (field ? field->display() : "Q") << "\n";
        param_line("p");
        param_line("h");
        gens();
        os << "rel z1*z2^2 + h^-1*p^-1*(h^3-p^3)*z2*z1*z2 - h*p*z2^2*z1\n";
        os << "rel z1*z2*z1*z2 + p*z2*z1^2*z2 + h^-2*p^-1*(h^5+h^4*p+h^3*p^2-h*p^4-p^5)*z2*z1*z2*z1 "
              "- p*(h^2+h*p+p^2)*z2^2*z1^2\n";
    } else if (name == "O") {
        os << "field Q\n";
        gens();
        os << "rel z2^2*z1\n";
        os << "rel z2*z1^3\n";
        os << "rel z2*z1*z2*z1^2\n";
    } else if (name == "ore") {
        nonzero("p");
        Scalar c = need(params, "c");
        Scalar v = need(params, "v");
        Scalar p = need(params, "p");
        Scalar d = v - c;
        if (!(c * d == p * p))
            throw Error("catalog ore needs c*(v-c) = p^2 (c, v-c are the two roots)");
        os << "field " << (field ? field->display() : "Q") << "\n";
        param_line("v");
        param_line("p");
        param_line("c");
        os << "param d = " << scalar_literal(d) << "\n";
        os << "gen z1 : (1,1)\n";
        os << "gen z2 : (1,0)\n";
        os << "gen x : (2,1)\n";
        os << "gen y : (3,2)\n";
        os << "rel z1*z2 + c*z2*z1 - x\n";
        os << "rel x*z2 + d*z2*x\n";
        os << "rel z1*x + d*x*z1 - y\n";
        os << "rel y*z2 - p^2*z2*y\n";
        os << "rel z1*y + p*y*z1\n";
        os << "rel y*x + p*x*y\n";
    } else {
        throw Error("unknown catalog name '" + name + "' (A, B, C, D, X, Y, Z, O, ore)");
    }
    return os.str();
}

Presentation catalog(const std::string& name, const std::map<std::string, Scalar>& params,
                     FieldPtr field) {
    return parse_presentation(catalog_text(name, params, std::move(field)));
}

namespace {

std::vector<long long> series_inverse(const std::vector<long long>& p, int max_deg) {
    std::vector<long long> h(static_cast<size_t>(max_deg) + 1, 0);
    h[0] = 1;
    for (int n = 1; n <= max_deg; ++n) {
        long long acc = 0;
        for (int k = 1; k <= n && k < static_cast<int>(p.size()); ++k)
            acc += p[static_cast<size_t>(k)] * h[static_cast<size_t>(n - k)];
        h[static_cast<size_t>(n)] = -acc;
    }
    return h;
}

std::vector<long long> poly_mul_int(const std::vector<long long>& a, const std::vector<long long>& b) {
    std::vector<long long> c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

}  // namespace

std::vector<long long> golden_hilbert(int max_deg) {
    // (1-t)^2 (1-t^2) (1-t^3)
    auto p = poly_mul_int(poly_mul_int({1, -1}, {1, -1}), poly_mul_int({1, 0, -1}, {1, 0, 0, -1}));
    return series_inverse(p, max_deg);
}

std::vector<long long> golden_hilbert_quotient(int max_deg) {
    auto p = poly_mul_int(poly_mul_int({1, -1}, {1, -1}), {1, 0, 0, -1});
    return series_inverse(p, max_deg);
}

ScreenReport regularity_screen(const Presentation& pres, int max_deg, long long dim_cap) {
    ScreenReport rep;
    if (pres.gens.size() != 2 || pres.gen_degs[0].first() != 1 || pres.gen_degs[1].first() != 1) {
        rep.fail = "screen needs two generators of degree 1";
        return rep;
    }
    {
        std::vector<int> degs;
        for (auto& d : pres.rel_degs) degs.push_back(d.first());
        std::sort(degs.begin(), degs.end());
        if (degs != std::vector<int>{3, 4}) {
            rep.fail = "screen needs one relation in degree 3 and one in degree 4";
            return rep;
        }
    }
    ReductionSystem sys = complete(pres, max_deg);
    auto h = hilbert_coeffs(sys, max_deg);
    auto want = golden_hilbert(max_deg);
    for (int n = 0; n <= max_deg; ++n)
        if (h[static_cast<size_t>(n)] != want[static_cast<size_t>(n)]) {
            rep.fail = "H[" + std::to_string(n) + "]=" + std::to_string(h[static_cast<size_t>(n)]) +
                       " expected " + std::to_string(want[static_cast<size_t>(n)]);
            return rep;
        }
    rep.series_ok = true;

    BettiTable b = betti_numbers(sys, 4, 7, dim_cap);
    std::map<std::pair<int, int>, long long> wantb{{{0, 0}, 1}, {{1, 1}, 2}, {{2, 3}, 1},
                                                   {{2, 4}, 1}, {{3, 6}, 2}, {{4, 7}, 1}};
    for (auto& [sn, val] : b.b) {
        auto it = wantb.find(sn);
        long long expect = it == wantb.end() ? 0 : it->second;
        if (val != expect) {
            rep.fail = "betti b[" + std::to_string(sn.first) + "," + std::to_string(sn.second) +
                       "]=" + std::to_string(val) + " expected " + std::to_string(expect);
            return rep;
        }
    }
    for (auto& [sn, expect] : wantb)
        if (b.at(sn.first, sn.second) != expect) {
            rep.fail = "betti b[" + std::to_string(sn.first) + "," + std::to_string(sn.second) +
                       "]=" + std::to_string(b.at(sn.first, sn.second)) + " expected " +
                       std::to_string(expect);
            return rep;
        }
    ShapeReport shape = resolution_shape(b, 4);
    if (!shape.symmetric || shape.l != 7) {
        rep.fail = "resolution shape: " + (shape.symmetric ? "l=" + std::to_string(shape.l) +
                                                                 " expected 7"
                                                           : shape.violation);
        return rep;
    }
    rep.betti_ok = true;

    AInfStructure E = merkulov_model(sys, 4, 7, SplitPolicy::Structured, dim_cap);
    if (!check_frobenius(E)) {
        rep.fail = "Ext pairing degenerate: not Frobenius";
        return rep;
    }
    rep.frobenius_ok = true;
    rep.pass = true;
    return rep;
}

YQuotientReport y_quotient_route(const Presentation& pres, int max_deg) {
    YQuotientReport rep;
    if (pres.gens.size() != 2) throw Error("quotient route needs a two-generator presentation");
    int bound = std::max(max_deg, 4) + 1;
    ReductionSystem sys = complete(pres, bound);
    NCPoly z2sq = NCPoly::monomial(letter(1) + letter(1));
    rep.z2sq_normal = is_normal(z2sq, sys, bound).normal;

    Presentation quot = pres;
    auto d = z2sq.homogeneous_deg(quot.gen_degs);
    quot.rels.push_back(z2sq);
    quot.rel_degs.push_back(*d);
    ReductionSystem qsys = complete(quot, max_deg);
    rep.hilbert = hilbert_coeffs(qsys, max_deg);
    rep.expected = golden_hilbert_quotient(max_deg);
    for (int n = 0; n <= max_deg; ++n)
        if (rep.hilbert[static_cast<size_t>(n)] != rep.expected[static_cast<size_t>(n)]) {
            rep.first_mismatch = n;
            break;
        }
    return rep;
}

}  // namespace ncalg
