#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>

namespace dbar {

using Rational = mpq_class;

/// n / d in canonical form.
inline Rational ratio(long n, long d) {
    Rational q{mpz_class(n), mpz_class(d)};
    q.canonicalize();
    return q;
}

/// Complex number with exact rational real and imaginary parts.
///
/// Every double is a dyadic rational, so conversion from double is exact;
/// conversion back rounds once.
class ExactComplex {
public:
    ExactComplex() = default;
    ExactComplex(Rational re, Rational im = 0) : re_(std::move(re)), im_(std::move(im)) {
        re_.canonicalize();
        im_.canonicalize();
    }
    ExactComplex(long re) : re_(re), im_(0) {}
    ExactComplex(int re) : re_(re), im_(0) {}

    static ExactComplex from_double(double re, double im = 0.0);
    static ExactComplex from_complex(std::complex<double> c) {
        return from_double(c.real(), c.imag());
    }
    static ExactComplex i() { return ExactComplex(Rational(0), Rational(1)); }

    const Rational& real() const noexcept { return re_; }
    const Rational& imag() const noexcept { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }
    double abs() const { return std::abs(to_complex()); }
    ExactComplex conj() const { return ExactComplex(re_, -im_); }

    ExactComplex& operator+=(const ExactComplex& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    ExactComplex& operator-=(const ExactComplex& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    ExactComplex& operator*=(const ExactComplex& o) {
        Rational r = re_ * o.re_ - im_ * o.im_;
        Rational i = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }
    ExactComplex& operator*=(const Rational& s) {
        re_ *= s;
        im_ *= s;
        return *this;
    }

    friend ExactComplex operator+(ExactComplex a, const ExactComplex& b) { return a += b; }
    friend ExactComplex operator-(ExactComplex a, const ExactComplex& b) { return a -= b; }
    friend ExactComplex operator*(ExactComplex a, const ExactComplex& b) { return a *= b; }
    friend ExactComplex operator*(ExactComplex a, const Rational& s) { return a *= s; }
    friend ExactComplex operator*(const Rational& s, ExactComplex a) { return a *= s; }
    friend ExactComplex operator-(const ExactComplex& a) { return ExactComplex(-a.re_, -a.im_); }
    friend bool operator==(const ExactComplex& a, const ExactComplex& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    std::string to_string() const;

private:
    Rational re_{0};
    Rational im_{0};
};

}  // namespace dbar
