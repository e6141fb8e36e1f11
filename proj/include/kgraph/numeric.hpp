#pragma once

#include <gmpxx.h>

#include <complex>
#include <optional>
#include <string>

namespace kgraph {

using Rational = mpq_class;

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);
double to_double(const Rational& q);
Rational rational_pow(const Rational& base, int exponent);

/// Best rational approximation of `value` whose denominator does not exceed
/// `max_denominator` (continued-fraction convergents and semiconvergents).
Rational rationalize(double value, long max_denominator);

struct GaussRational {
    Rational re;
    Rational im;

    GaussRational() = default;
    GaussRational(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}

    friend GaussRational operator+(const GaussRational& a, const GaussRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussRational operator-(const GaussRational& a, const GaussRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussRational operator*(const GaussRational& a, const GaussRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend bool operator==(const GaussRational& a, const GaussRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    GaussRational conj() const { return {re, -im}; }
    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }
};

std::string to_string(const GaussRational& z);

/// A real number carried exactly when every input was exact, and as a double
/// always. Arithmetic with an inexact operand drops the exact part.
class Real {
public:
    Real() : exact_(Rational(0)), approx_(0.0) {}
    Real(const Rational& q) : exact_(q), approx_(to_double(q)) {}
    Real(long n) : Real(Rational(n)) {}
    Real(int n) : Real(Rational(n)) {}

    static Real approximate(double v) {
        Real r;
        r.exact_.reset();
        r.approx_ = v;
        return r;
    }

    bool is_exact() const { return exact_.has_value(); }
    const Rational& exact() const { return *exact_; }
    double value() const { return approx_; }

    Real operator-() const;
    friend Real operator+(const Real& a, const Real& b);
    friend Real operator-(const Real& a, const Real& b);
    friend Real operator*(const Real& a, const Real& b);
    friend Real operator/(const Real& a, const Real& b);
    Real& operator+=(const Real& b) { return *this = *this + b; }
    Real& operator*=(const Real& b) { return *this = *this * b; }

    Real pow(int exponent) const;

private:
    std::optional<Rational> exact_;
    double approx_;
};

/// Exact equality when both sides are exact; |a-b| <= tol otherwise.
bool close(const Real& a, const Real& b, double tol);
/// a <= b, exactly or with slack tol.
bool leq(const Real& a, const Real& b, double tol);
std::string to_string(const Real& r);

/// Fixed-order compensated sum; exact part accumulated exactly.
class RealSum {
public:
    void add(const Real& r);
    Real result() const;

private:
    Rational exact_ = 0;
    bool all_exact_ = true;
    double sum_ = 0.0;
    double carry_ = 0.0;
};

class Complex {
public:
    Complex() : exact_(GaussRational{}), approx_(0.0) {}
    Complex(const GaussRational& z) : exact_(z), approx_(z.to_complex()) {}
    Complex(const Real& r)
        : exact_(r.is_exact() ? std::optional<GaussRational>(GaussRational(r.exact())) : std::nullopt),
          approx_(r.value()) {}
    Complex(const Rational& q) : Complex(GaussRational(q)) {}
    Complex(int n) : Complex(GaussRational(Rational(n))) {}

    static Complex approximate(std::complex<double> v) {
        Complex c;
        c.exact_.reset();
        c.approx_ = v;
        return c;
    }

    bool is_exact() const { return exact_.has_value(); }
    const GaussRational& exact() const { return *exact_; }
    std::complex<double> value() const { return approx_; }
    bool is_zero(double tol) const;

    Complex conj() const;
    Complex operator-() const;
    friend Complex operator+(const Complex& a, const Complex& b);
    friend Complex operator-(const Complex& a, const Complex& b);
    friend Complex operator*(const Complex& a, const Complex& b);
    Complex& operator+=(const Complex& b) { return *this = *this + b; }

private:
    std::optional<GaussRational> exact_;
    std::complex<double> approx_;
};

bool close(const Complex& a, const Complex& b, double tol);
std::string to_string(const Complex& c);

}  // namespace kgraph
