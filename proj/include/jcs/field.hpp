#pragma once

#include "jcs/rational.hpp"

#include <stdexcept>
#include <string>

namespace jcs {

/// Element of the scalar field F = Q(eps) with eps^2 = eps - 1/2.
///
/// F is the splitting field of the constants needed by the exceptional
/// constructions: alpha := 2*eps^2 = 2*eps - 1 satisfies alpha^2 = -1 and
/// eps^2 = alpha/2 (hence eps^4 = -1/4).  Internally the element is kept in
/// the Gaussian basis re + im*alpha, which makes inversion and rendering
/// direct.  Plain rationals embed with im = 0.
class FieldElem {
public:
    FieldElem() = default;
    FieldElem(long long v) : re_(v) {}
    FieldElem(const Rat& r) : re_(r) {}
    FieldElem(Rat re, Rat im) : re_(std::move(re)), im_(std::move(im)) {}

    /// The spec's eps-component view: c0 + c1*eps + c2*eps^2 + c3*eps^3,
    /// reduced via eps = (1+alpha)/2.
    static FieldElem from_eps_components(const Rat& c0, const Rat& c1,
                                         const Rat& c2, const Rat& c3) {
        // eps   = 1/2 + (1/2)a
        // eps^2 = (1/2)a
        // eps^3 = -1/4 + (1/4)a
        Rat re = c0 + c1 / 2 - c3 / 4;
        Rat im = c1 / 2 + c2 / 2 + c3 / 4;
        return FieldElem(std::move(re), std::move(im));
    }

    static FieldElem alpha() { return FieldElem(Rat(0), Rat(1)); }
    static FieldElem eps() { return FieldElem(Rat(1, 2), Rat(1, 2)); }

    const Rat& re() const { return re_; }
    const Rat& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_rational() const { return im_ == 0; }

    FieldElem operator-() const { return FieldElem(-re_, -im_); }

    FieldElem& operator+=(const FieldElem& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    FieldElem& operator-=(const FieldElem& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    FieldElem& operator*=(const FieldElem& o) {
        Rat re = re_ * o.re_ - im_ * o.im_;
        Rat im = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(re);
        im_ = std::move(im);
        return *this;
    }

    FieldElem inv() const {
        Rat n = re_ * re_ + im_ * im_;
        if (n == 0) throw std::domain_error("FieldElem: division by zero");
        return FieldElem(re_ / n, -im_ / n);
    }

    friend FieldElem operator+(FieldElem a, const FieldElem& b) { return a += b; }
    friend FieldElem operator-(FieldElem a, const FieldElem& b) { return a -= b; }
    friend FieldElem operator*(FieldElem a, const FieldElem& b) { return a *= b; }
    friend FieldElem operator/(const FieldElem& a, const FieldElem& b) { return a * b.inv(); }
    friend bool operator==(const FieldElem& a, const FieldElem& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const FieldElem& a, const FieldElem& b) { return !(a == b); }

    /// Canonical rendering in the Gaussian basis, e.g. "1", "-1/2",
    /// "i", "-2i", "1/2+1/2i".
    std::string str() const {
        if (is_zero()) return "0";
        std::string out;
        if (re_ != 0) out += rat_str(re_);
        if (im_ != 0) {
            if (im_ > 0 && !out.empty()) out += "+";
            if (im_ == -1)
                out += "-";
            else if (im_ != 1)
                out += rat_str(im_);
            out += "i";
        }
        return out;
    }

private:
    Rat re_{0};
    Rat im_{0};
};

inline FieldElem sign_pow(int exponent) {
    return (exponent & 1) ? FieldElem(-1) : FieldElem(1);
}

} // namespace jcs
