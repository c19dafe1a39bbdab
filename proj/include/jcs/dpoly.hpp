#pragma once

#include "jcs/field.hpp"

#include <string>
#include <utility>
#include <vector>

namespace jcs {

/// Polynomial in the module generator d (the F[d]-action) with FieldElem
/// coefficients, dense and canonical (no trailing zeros).
class DPoly {
public:
    DPoly() = default;
    explicit DPoly(FieldElem c) {
        if (!c.is_zero()) coeffs_.push_back(std::move(c));
    }

    static DPoly d_power(int k, FieldElem c = FieldElem(1)) {
        DPoly p;
        if (c.is_zero()) return p;
        p.coeffs_.assign(k + 1, FieldElem(0));
        p.coeffs_[k] = std::move(c);
        return p;
    }

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<FieldElem>& coeffs() const { return coeffs_; }

    FieldElem coeff(int k) const {
        if (k < 0 || k > degree()) return FieldElem(0);
        return coeffs_[k];
    }

    void set_coeff(int k, FieldElem c) {
        if (k >= static_cast<int>(coeffs_.size())) coeffs_.resize(k + 1, FieldElem(0));
        coeffs_[k] = std::move(c);
        trim();
    }

    DPoly operator-() const {
        DPoly p = *this;
        for (auto& c : p.coeffs_) c = -c;
        return p;
    }

    DPoly& operator+=(const DPoly& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), FieldElem(0));
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
        trim();
        return *this;
    }
    DPoly& operator-=(const DPoly& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), FieldElem(0));
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
        trim();
        return *this;
    }

    friend DPoly operator+(DPoly a, const DPoly& b) { return a += b; }
    friend DPoly operator-(DPoly a, const DPoly& b) { return a -= b; }
    friend bool operator==(const DPoly& a, const DPoly& b) { return a.coeffs_ == b.coeffs_; }

    friend DPoly operator*(const DPoly& a, const DPoly& b) {
        DPoly out;
        if (a.is_zero() || b.is_zero()) return out;
        out.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, FieldElem(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
                out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        out.trim();
        return out;
    }

    friend DPoly operator*(const FieldElem& c, const DPoly& p) {
        DPoly out;
        if (c.is_zero()) return out;
        out.coeffs_ = p.coeffs_;
        for (auto& x : out.coeffs_) x = c * x;
        out.trim();
        return out;
    }

    /// Multiply by d^k.
    DPoly shifted(int k) const {
        if (is_zero() || k == 0) return *this;
        DPoly out;
        out.coeffs_.assign(coeffs_.size() + k, FieldElem(0));
        for (std::size_t i = 0; i < coeffs_.size(); ++i) out.coeffs_[i + k] = coeffs_[i];
        return out;
    }

    /// Exact polynomial division: *this = q*b + r with deg r < deg b.
    std::pair<DPoly, DPoly> divmod(const DPoly& b) const {
        if (b.is_zero()) throw std::domain_error("DPoly: division by zero");
        DPoly q;
        DPoly r = *this;
        FieldElem lead_inv = b.coeffs_.back().inv();
        while (!r.is_zero() && r.degree() >= b.degree()) {
            int k = r.degree() - b.degree();
            FieldElem f = r.coeffs_.back() * lead_inv;
            q.set_coeff(k, q.coeff(k) + f);
            r -= f * b.shifted(k);
        }
        return {q, r};
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::string out;
        for (int k = 0; k <= degree(); ++k) {
            if (coeffs_[k].is_zero()) continue;
            if (!out.empty()) out += " + ";
            out += "(" + coeffs_[k].str() + ")";
            if (k == 1) out += "*d";
            if (k > 1) out += "*d^" + std::to_string(k);
        }
        return out;
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    }

    std::vector<FieldElem> coeffs_;
};

} // namespace jcs
