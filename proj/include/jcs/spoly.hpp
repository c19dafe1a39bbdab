#pragma once

#include "jcs/field.hpp"

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace jcs {

enum class EvenKind {
    laurent_t,  // single even variable t, exponents in Z
    polynomial, // p1..pk, q1..qk (and t when m is odd), exponents in N
};

enum class OddPairing {
    paper,    // diagonal on x1..x_{n-2}, hyperbolic on (x_{n-1}, x_n)
    diagonal, // all diagonal; used when n <= 1
};

/// Shape of the carrier superalgebra /\(m,n).
struct Signature {
    int m = 0;
    int n = 0;
    EvenKind even_kind = EvenKind::polynomial;
    OddPairing pairing = OddPairing::diagonal;

    friend bool operator==(const Signature&, const Signature&) = default;

    /// Index of t among the even variables, if present.
    std::optional<int> t_index() const {
        if (even_kind == EvenKind::laurent_t) return 0;
        if (m % 2 == 1) return m - 1;
        return std::nullopt;
    }
};

/// /\(2k, n) with the Poisson-bracket variable layout p1..pk, q1..qk.
inline Signature p_signature(int k, int n) {
    Signature s;
    s.m = 2 * k;
    s.n = n;
    s.even_kind = EvenKind::polynomial;
    s.pairing = n <= 1 ? OddPairing::diagonal : OddPairing::paper;
    return s;
}

/// /\(1, n) with Laurent t, the J(1,n) carrier.
inline Signature k_signature(int n) {
    Signature s;
    s.m = 1;
    s.n = n;
    s.even_kind = EvenKind::laurent_t;
    s.pairing = n <= 1 ? OddPairing::diagonal : OddPairing::paper;
    return s;
}

struct VarId {
    bool odd = false;
    int index = 0; // even: 0-based slot; odd: 1-based xi index
};

inline VarId even_var(int index) { return VarId{false, index}; }
inline VarId odd_var(int index) { return VarId{true, index}; }

/// One monomial key: even exponents plus the ordered odd mask
/// (bit i-1 set <=> xi present).
struct Mono {
    std::vector<int> even;
    std::uint32_t mask = 0;

    friend bool operator==(const Mono&, const Mono&) = default;
    friend bool operator<(const Mono& a, const Mono& b) {
        if (a.even != b.even) return a.even < b.even;
        return a.mask < b.mask;
    }

    int odd_degree() const { return std::popcount(mask); }
};

/// Koszul sign for appending mask b after mask a (masks must be disjoint):
/// (-1)^{#{(i,j) in a x b : i > j}}.
inline int koszul_inversions(std::uint32_t a, std::uint32_t b) {
    int inv = 0;
    while (b) {
        int j = std::countr_zero(b);
        inv += std::popcount(a >> (j + 1));
        b &= b - 1;
    }
    return inv;
}

/// Sparse element of /\(m,n) tensor the even coordinate ring, with exact
/// field coefficients.  Immutable value semantics; all operations return
/// canonical results (no explicit zero terms).
class SPoly {
public:
    using TermMap = std::map<Mono, FieldElem>;

    SPoly() = default;
    explicit SPoly(Signature sig) : sig_(std::move(sig)) {}

    static SPoly zero(const Signature& sig) { return SPoly(sig); }

    static SPoly scalar(const Signature& sig, FieldElem c) {
        return monomial(sig, std::vector<int>(sig.m, 0), 0, std::move(c));
    }

    static SPoly monomial(const Signature& sig, std::vector<int> even,
                          std::uint32_t mask, FieldElem coeff = FieldElem(1)) {
        if (static_cast<int>(even.size()) != sig.m)
            throw std::invalid_argument("SPoly: even exponent count != m");
        if (mask >> sig.n)
            throw std::invalid_argument("SPoly: odd mask out of range");
        for (int i = 0; i < sig.m; ++i) {
            bool laurent_ok = sig.even_kind == EvenKind::laurent_t;
            if (even[i] < 0 && !laurent_ok)
                throw std::invalid_argument("SPoly: negative exponent in polynomial signature");
        }
        SPoly p(sig);
        if (!coeff.is_zero()) p.terms_.emplace(Mono{std::move(even), mask}, std::move(coeff));
        return p;
    }

    const Signature& sig() const { return sig_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// 0 or 1 for homogeneous elements (zero counts as even).
    std::optional<int> parity() const {
        std::optional<int> p;
        for (const auto& [mono, c] : terms_) {
            int tp = mono.odd_degree() % 2;
            if (!p)
                p = tp;
            else if (*p != tp)
                return std::nullopt;
        }
        return p ? p : std::optional<int>(0);
    }

    bool is_homogeneous() const { return parity().has_value(); }

    /// Projection onto the terms of the given parity.
    SPoly parity_part(int parity_bit) const {
        SPoly out(sig_);
        for (const auto& [mono, c] : terms_)
            if (mono.odd_degree() % 2 == parity_bit) out.terms_.emplace(mono, c);
        return out;
    }

    SPoly operator-() const {
        SPoly out(sig_);
        for (const auto& [mono, c] : terms_) out.terms_.emplace(mono, -c);
        return out;
    }

    SPoly& operator+=(const SPoly& o) {
        require_same_sig(o);
        for (const auto& [mono, c] : o.terms_) add_term(mono, c);
        return *this;
    }
    SPoly& operator-=(const SPoly& o) {
        require_same_sig(o);
        for (const auto& [mono, c] : o.terms_) add_term(mono, -c);
        return *this;
    }

    friend SPoly operator+(SPoly a, const SPoly& b) { return a += b; }
    friend SPoly operator-(SPoly a, const SPoly& b) { return a -= b; }
    friend bool operator==(const SPoly& a, const SPoly& b) {
        return a.sig_ == b.sig_ && a.terms_ == b.terms_;
    }

    friend SPoly operator*(const FieldElem& c, const SPoly& p) {
        SPoly out(p.sig_);
        if (c.is_zero()) return out;
        for (const auto& [mono, pc] : p.terms_) out.terms_.emplace(mono, c * pc);
        return out;
    }

    void add_term(const Mono& mono, const FieldElem& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(mono);
        if (it == terms_.end()) {
            terms_.emplace(mono, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    int max_even_degree(int var_index) const {
        int d = 0;
        bool first = true;
        for (const auto& [mono, c] : terms_) {
            if (first || mono.even[var_index] > d) d = mono.even[var_index];
            first = false;
        }
        return d;
    }

private:
    void require_same_sig(const SPoly& o) const {
        if (!(sig_ == o.sig_)) throw std::invalid_argument("SPoly: signature mismatch");
    }

    Signature sig_;
    TermMap terms_;
};

/// Supercommutative product on /\(m,n): xi^2 = 0, Koszul sign from mask
/// interleaving, even exponents add.
inline SPoly smul(const SPoly& f, const SPoly& g) {
    if (!(f.sig() == g.sig())) throw std::invalid_argument("smul: signature mismatch");
    SPoly out(f.sig());
    for (const auto& [fm, fc] : f.terms()) {
        for (const auto& [gm, gc] : g.terms()) {
            if (fm.mask & gm.mask) continue;
            Mono m;
            m.even.resize(fm.even.size());
            for (std::size_t i = 0; i < fm.even.size(); ++i) m.even[i] = fm.even[i] + gm.even[i];
            m.mask = fm.mask | gm.mask;
            FieldElem c = fc * gc;
            if (koszul_inversions(fm.mask, gm.mask) & 1) c = -c;
            out.add_term(m, c);
        }
    }
    return out;
}

inline SPoly operator*(const SPoly& f, const SPoly& g) { return smul(f, g); }

/// Left partial derivative with respect to one variable of the signature.
inline SPoly partial(VarId v, const SPoly& f) {
    const Signature& sig = f.sig();
    SPoly out(sig);
    if (v.odd) {
        if (v.index < 1 || v.index > sig.n)
            throw std::invalid_argument("partial: unknown odd variable");
        std::uint32_t bit = 1u << (v.index - 1);
        for (const auto& [mono, c] : f.terms()) {
            if (!(mono.mask & bit)) continue;
            Mono m = mono;
            m.mask &= ~bit;
            FieldElem cc = c;
            if (std::popcount(mono.mask & (bit - 1)) & 1) cc = -cc;
            out.add_term(m, cc);
        }
    } else {
        if (v.index < 0 || v.index >= sig.m)
            throw std::invalid_argument("partial: unknown even variable");
        for (const auto& [mono, c] : f.terms()) {
            int e = mono.even[v.index];
            if (e == 0) continue;
            Mono m = mono;
            m.even[v.index] = e - 1;
            out.add_term(m, FieldElem(Rat(e)) * c);
        }
    }
    return out;
}

/// Euler operator: multiplies each term by its total degree in the p, q
/// and xi variables.  The t variable is not counted.
inline SPoly euler(const SPoly& f) {
    const Signature& sig = f.sig();
    std::optional<int> t = sig.t_index();
    SPoly out(sig);
    for (const auto& [mono, c] : f.terms()) {
        long deg = mono.odd_degree();
        for (int i = 0; i < sig.m; ++i) {
            if (t && *t == i) continue;
            deg += mono.even[i];
        }
        if (deg != 0) out.add_term(mono, FieldElem(Rat(deg)) * c);
    }
    return out;
}

inline std::string even_var_name(const Signature& sig, int index) {
    if (auto t = sig.t_index(); t && *t == index) return "t";
    int k = sig.m / 2;
    if (index < k) return "p" + std::to_string(index + 1);
    return "q" + std::to_string(index - k + 1);
}

/// Canonical text rendering: sorted terms, explicit signs, coefficient
/// always parenthesized.  Example: "(1)*t^2*x1*x2 + (-1/2)*x3".
inline std::string spoly_str(const SPoly& f, const std::string& odd_prefix = "x") {
    if (f.is_zero()) return "0";
    std::string out;
    for (const auto& [mono, c] : f.terms()) {
        if (!out.empty()) out += " + ";
        out += "(" + c.str() + ")";
        bool any = false;
        for (std::size_t i = 0; i < mono.even.size(); ++i) {
            if (mono.even[i] == 0) continue;
            out += "*" + even_var_name(f.sig(), static_cast<int>(i));
            if (mono.even[i] != 1) out += "^" + std::to_string(mono.even[i]);
            any = true;
        }
        for (int i = 1; i <= f.sig().n; ++i) {
            if (mono.mask & (1u << (i - 1))) {
                out += "*" + odd_prefix + std::to_string(i);
                any = true;
            }
        }
        if (!any) out += "*1";
    }
    return out;
}

} // namespace jcs
