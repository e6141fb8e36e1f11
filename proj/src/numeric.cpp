#include "kgraph/numeric.hpp"

#include <cmath>
#include <sstream>

namespace kgraph {

std::string to_string(const Rational& q) {
    Rational c = q;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

double to_double(const Rational& q) { return q.get_d(); }

Rational rational_pow(const Rational& base, int exponent) {
    Rational result = 1;
    Rational b = exponent >= 0 ? base : Rational(1) / base;
    for (int e = std::abs(exponent); e > 0; --e) result *= b;
    return result;
}

// Same recurrence as Python's Fraction.limit_denominator.
Rational rationalize(double value, long max_denominator) {
    Rational exact(value);
    exact.canonicalize();
    if (exact.get_den() <= max_denominator) return exact;

    mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    mpz_class n = exact.get_num(), d = exact.get_den();
    while (true) {
        mpz_class a;
        mpz_fdiv_q(a.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
        mpz_class q2 = q0 + a * q1;
        if (q2 > max_denominator) break;
        mpz_class p_next = p0 + a * p1;
        p0 = p1;
        q0 = q1;
        p1 = p_next;
        q1 = q2;
        mpz_class rem = n - a * d;
        n = d;
        d = rem;
        if (d == 0) break;
    }
    mpz_class k = (mpz_class(max_denominator) - q0) / q1;
    Rational bound1(p0 + k * p1, q0 + k * q1);
    Rational bound2(p1, q1);
    bound1.canonicalize();
    bound2.canonicalize();
    return abs(bound2 - exact) <= abs(bound1 - exact) ? bound2 : bound1;
}

std::string to_string(const GaussRational& z) {
    if (sgn(z.im) == 0) return to_string(z.re);
    Rational mag = abs(z.im);
    std::string im = to_string(mag);
    if (im.find('/') != std::string::npos) im = "(" + im + ")";
    im += "i";
    if (sgn(z.re) == 0) return sgn(z.im) < 0 ? "-" + im : im;
    return to_string(z.re) + (sgn(z.im) < 0 ? "-" : "+") + im;
}

Real Real::operator-() const {
    Real r = *this;
    if (r.exact_) r.exact_ = -*r.exact_;
    r.approx_ = -approx_;
    return r;
}

namespace {
template <class Op, class DOp>
Real combine(const Real& a, const Real& b, Op op, DOp dop) {
    if (a.is_exact() && b.is_exact()) return Real(Rational(op(a.exact(), b.exact())));
    return Real::approximate(dop(a.value(), b.value()));
}
}  // namespace

Real operator+(const Real& a, const Real& b) {
    return combine(a, b, std::plus<>{}, std::plus<>{});
}
Real operator-(const Real& a, const Real& b) {
    return combine(a, b, std::minus<>{}, std::minus<>{});
}
Real operator*(const Real& a, const Real& b) {
    return combine(a, b, std::multiplies<>{}, std::multiplies<>{});
}
Real operator/(const Real& a, const Real& b) {
    return combine(a, b, std::divides<>{}, std::divides<>{});
}

Real Real::pow(int exponent) const {
    if (is_exact()) return Real(rational_pow(*exact_, exponent));
    return Real::approximate(std::pow(approx_, exponent));
}

bool close(const Real& a, const Real& b, double tol) {
    if (a.is_exact() && b.is_exact()) return a.exact() == b.exact();
    return std::abs(a.value() - b.value()) <= tol;
}

bool leq(const Real& a, const Real& b, double tol) {
    if (a.is_exact() && b.is_exact()) return a.exact() <= b.exact();
    return a.value() <= b.value() + tol;
}

std::string to_string(const Real& r) {
    if (r.is_exact()) return to_string(r.exact());
    std::ostringstream os;
    os.precision(17);
    os << r.value();
    return os.str();
}

void RealSum::add(const Real& r) {
    if (all_exact_ && r.is_exact()) {
        exact_ += r.exact();
    } else {
        all_exact_ = false;
    }
    double y = r.value() - carry_;
    double t = sum_ + y;
    carry_ = (t - sum_) - y;
    sum_ = t;
}

Real RealSum::result() const {
    if (all_exact_) return Real(exact_);
    return Real::approximate(sum_);
}

bool Complex::is_zero(double tol) const {
    if (exact_) return exact_->is_zero();
    return std::abs(approx_) <= tol;
}

Complex Complex::conj() const {
    if (exact_) return Complex(exact_->conj());
    return approximate(std::conj(approx_));
}

Complex Complex::operator-() const {
    if (exact_) return Complex(GaussRational(-exact_->re, -exact_->im));
    return approximate(-approx_);
}

Complex operator+(const Complex& a, const Complex& b) {
    if (a.is_exact() && b.is_exact()) return Complex(a.exact() + b.exact());
    return Complex::approximate(a.value() + b.value());
}
Complex operator-(const Complex& a, const Complex& b) {
    if (a.is_exact() && b.is_exact()) return Complex(a.exact() - b.exact());
    return Complex::approximate(a.value() - b.value());
}
Complex operator*(const Complex& a, const Complex& b) {
    if (a.is_exact() && b.is_exact()) return Complex(a.exact() * b.exact());
    return Complex::approximate(a.value() * b.value());
}

bool close(const Complex& a, const Complex& b, double tol) {
    if (a.is_exact() && b.is_exact()) return a.exact() == b.exact();
    return std::abs(a.value() - b.value()) <= tol;
}

std::string to_string(const Complex& c) {
    if (c.is_exact()) return to_string(c.exact());
    std::ostringstream os;
    os.precision(17);
    os << c.value().real();
    if (c.value().imag() >= 0) os << "+";
    os << c.value().imag() << "i";
    return os.str();
}

}  // namespace kgraph
