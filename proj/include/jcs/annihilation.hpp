#pragma once

#include "jcs/constructions.hpp"
#include "jcs/jordan.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace jcs {

/// Element of a current superalgebra j (x) F[t, t^-1]: finitely many
/// Laurent modes, each a coefficient vector over the finite algebra.
struct CurCoef {
    const FinAlg* alg = nullptr;
    std::map<long, std::vector<FieldElem>> parts;

    static CurCoef mode(const FinAlg* a, int i, long k) {
        CurCoef x;
        x.alg = a;
        std::vector<FieldElem> v(a->rank, FieldElem(0));
        v[i] = FieldElem(1);
        x.parts.emplace(k, std::move(v));
        return x;
    }

    bool is_zero() const { return parts.empty(); }

    void add(long k, const std::vector<FieldElem>& v, const FieldElem& scale) {
        auto it = parts.find(k);
        if (it == parts.end())
            it = parts.emplace(k, std::vector<FieldElem>(alg->rank, FieldElem(0))).first;
        bool nonzero = false;
        for (int i = 0; i < alg->rank; ++i) {
            it->second[i] += scale * v[i];
            if (!it->second[i].is_zero()) nonzero = true;
        }
        if (!nonzero) parts.erase(it);
    }

    CurCoef operator-() const {
        CurCoef x = *this;
        for (auto& [k, v] : x.parts)
            for (auto& c : v) c = -c;
        return x;
    }
    CurCoef& operator+=(const CurCoef& o) {
        for (const auto& [k, v] : o.parts) add(k, v, FieldElem(1));
        return *this;
    }
    CurCoef& operator-=(const CurCoef& o) {
        for (const auto& [k, v] : o.parts) add(k, v, FieldElem(-1));
        return *this;
    }
    friend CurCoef operator+(CurCoef a, const CurCoef& b) { return a += b; }
    friend CurCoef operator-(CurCoef a, const CurCoef& b) { return a -= b; }
    friend CurCoef operator*(const FieldElem& c, const CurCoef& x) {
        CurCoef out;
        out.alg = x.alg;
        if (c.is_zero()) return out;
        for (const auto& [k, v] : x.parts) out.add(k, v, c);
        return out;
    }
};

inline CurCoef cur_mul(const CurCoef& x, const CurCoef& y) {
    CurCoef out;
    out.alg = x.alg;
    for (const auto& [kx, vx] : x.parts)
        for (const auto& [ky, vy] : y.parts) out.add(kx + ky, x.alg->mul(vx, vy), FieldElem(1));
    return out;
}

inline std::string cur_str(const CurCoef& x) {
    if (x.is_zero()) return "0";
    std::string out;
    for (const auto& [k, v] : x.parts) {
        for (int i = 0; i < x.alg->rank; ++i) {
            if (v[i].is_zero()) continue;
            if (!out.empty()) out += " + ";
            out += "(" + v[i].str() + ")*" + x.alg->names[i] + "*t^" + std::to_string(k);
        }
    }
    return out;
}

/// A coefficient (annihilation) realization of a conformal algebra: the
/// map (basis index, mode k) -> target element, plus the target product.
template <class T>
struct Realization {
    const CAlgebra* alg = nullptr;
    std::function<T(int, long)> coef;
    std::function<T(const T&, const T&)> mul;
    std::function<std::string(const T&)> render;
};

/// coef_k extended over F[d] by coef_k(d x) = -k coef_{k-1}(x).
template <class T>
T coef_of(const Realization<T>& real, const CElem& x, long k) {
    T out = FieldElem(0) * real.coef(0, 0);
    for (const auto& [i, p] : x.comps) {
        for (int q = 0; q <= p.degree(); ++q) {
            if (p.coeff(q).is_zero()) continue;
            FieldElem scale = p.coeff(q) * sign_pow(q) * FieldElem(rat_falling(k, q));
            if (scale.is_zero()) continue;
            out += scale * real.coef(i, k - q);
        }
    }
    return out;
}

/// coef_m(x) coef_k(y) - sum_j C(m,j) coef_{m+k-j}(x_(j) y); zero
/// certifies that the realization is a homomorphism of the coefficient
/// structure at (m,k).
template <class T>
T bridge_residual(const Realization<T>& real, int i, int j, long m, long k) {
    T lhs = real.mul(real.coef(i, m), real.coef(j, k));
    FormalPoly p = lprod(basis_elem(real.alg, i), W1, basis_elem(real.alg, j));
    for (int jd = 0; jd <= p.max_degree(W1); ++jd) {
        CElem cj = formal_constant_to_celem(p.coeff_of(W1, jd), "bridge_residual");
        if (cj.is_zero()) continue;
        // x_(j) y = j! c_j
        FieldElem binom(rat_binom(m, jd));
        if (binom.is_zero()) continue;
        CElem jprod = FieldElem(rat_factorial(jd)) * cj;
        lhs -= binom * coef_of(real, jprod, m + k - jd);
    }
    return lhs;
}

/// J_n into the KKM double of P(1,n): a+ -> a t^k, a- -> a t^k theta.
inline Realization<KKMElem> jn_realization(const CAlgebraPtr& jn, int n) {
    Realization<KKMElem> real;
    real.alg = jn.get();
    Signature sig = k_signature(n);
    auto ps = std::make_shared<PoissonStructure>(
        make_poisson_structure(BracketKind{BracketKind::kbracket_tag, sig}));
    real.coef = [sig, n](int idx, long k) {
        bool minus = idx >= (1 << n);
        std::uint32_t mask = static_cast<std::uint32_t>(minus ? idx - (1 << n) : idx);
        SPoly f = SPoly::monomial(sig, {static_cast<int>(k)}, mask);
        return minus ? KKMElem::theta_part(f) : KKMElem::plain(f);
    };
    real.mul = [ps](const KKMElem& x, const KKMElem& y) { return kkm_mul(x, y, *ps); };
    real.render = [](const KKMElem& x) { return kkm_str(x); };
    return real;
}

/// JS_1 into js(1,1): S -> xi t^k, T -> t^k.
inline Realization<SPoly> js1_realization(const CAlgebraPtr& js1) {
    Realization<SPoly> real;
    real.alg = js1.get();
    Signature sig = js11_signature();
    real.coef = [sig](int idx, long k) {
        return SPoly::monomial(sig, {static_cast<int>(k)}, idx == 0 ? 1u : 0u);
    };
    real.mul = [](const SPoly& x, const SPoly& y) { return js11_mul(x, y); };
    real.render = [](const SPoly& x) { return spoly_str(x); };
    return real;
}

/// Cur(j) into j (x) F[t,t^-1].
inline Realization<CurCoef> cur_realization(const CAlgebraPtr& alg,
                                            std::shared_ptr<const FinAlg> fin) {
    Realization<CurCoef> real;
    real.alg = alg.get();
    real.coef = [fin](int i, long k) { return CurCoef::mode(fin.get(), i, k); };
    real.mul = [](const CurCoef& x, const CurCoef& y) { return cur_mul(x, y); };
    real.render = [](const CurCoef& x) { return cur_str(x); };
    return real;
}

/// The J-style presentation of the Lie algebra K(1,n) (used by the Remark
/// consistency suite): basis a -> a t^k with the kbracket itself.
inline Realization<SPoly> kn_jstyle_realization(const CAlgebraPtr& kn_jstyle, int n) {
    Realization<SPoly> real;
    real.alg = kn_jstyle.get();
    Signature sig = k_signature(n);
    real.coef = [sig](int mask, long k) {
        return SPoly::monomial(sig, {static_cast<int>(k)}, static_cast<std::uint32_t>(mask));
    };
    real.mul = [](const SPoly& x, const SPoly& y) { return kbracket(x, y); };
    real.render = [](const SPoly& x) { return spoly_str(x); };
    return real;
}

// --- sl2 triple and the TKK compatibility --------------------------------

struct SL2Triple {
    SPoly e, h, f;
    Signature ambient;
    std::string note;
};

/// /\(1, n+3) with the paper pairing; the first n odd variables then carry
/// the diagonal form, which is the P(1,n) model the embedding targets.
inline Signature tkk_ambient(int n) { return k_signature(n + 3); }

inline std::uint32_t b2_bit(int n) { return 1u << (n + 1); }

inline Signature tkk_jside_signature(int n) {
    Signature s = k_signature(n);
    s.pairing = OddPairing::diagonal;
    return s;
}

/// Roles and scalings for the listed quadratic monomials
/// {xi_{n+1}xi_{n+2}, xi_{n+3}xi_{n+2}, xi_{n+1}xi_{n+3}}: the unit image
/// xi_{n+1}xi_{n+3} spans L_{-1}, so it is the f direction; the e scale is
/// pinned by the embedded unit acting as identity.
inline SL2Triple sl2_assign(int n) {
    Signature sig = tkk_ambient(n);
    std::uint32_t b1 = 1u << n, b3 = 1u << (n + 2);
    SPoly X1 = SPoly::monomial(sig, {0}, b1 | b2_bit(n));  // xi_{n+1} xi_{n+2}
    SPoly X3 = SPoly::monomial(sig, {0}, b1 | b3);         // xi_{n+1} xi_{n+3}

    // unit normalization: {{X3, s X1}, X3} = X3
    SPoly probe = kbracket(kbracket(X3, X1), X3);
    FieldElem s;
    {
        // probe must be proportional to X3
        if (probe.terms().size() != 1) throw std::runtime_error("sl2_assign: unit probe failed");
        const auto& [mono, c] = *probe.terms().begin();
        if (!(Mono{std::vector<int>{0}, b1 | b3} == mono) || c.is_zero())
            throw std::runtime_error("sl2_assign: unit probe not proportional to the unit image");
        s = c.inv();
    }
    SL2Triple t;
    t.ambient = sig;
    t.e = s * X1;
    // [[e, X3], e] = ce * e fixes the f scale: f = (2/ce) X3, h = [e, f]
    SPoly he = kbracket(kbracket(t.e, X3), t.e);
    FieldElem ce;
    {
        const auto& [mono, c] = *t.e.terms().begin();
        ce = he.terms().count(mono) ? he.terms().at(mono) / c : FieldElem(0);
    }
    if (ce.is_zero()) throw std::runtime_error("sl2_assign: degenerate bracket table");
    FieldElem rho = FieldElem(2) / ce;
    t.f = rho * X3;
    t.h = kbracket(t.e, t.f);
    // verify the relations exactly
    if (!(kbracket(t.h, t.e) - FieldElem(2) * t.e).is_zero() ||
        !(kbracket(t.h, t.f) + FieldElem(2) * t.f).is_zero() ||
        !(kbracket(t.e, t.f) - t.h).is_zero())
        throw std::runtime_error("sl2_assign: no admissible assignment");
    t.note = "e = (" + s.str() + ")*x" + std::to_string(n + 1) + "x" + std::to_string(n + 2) +
             ", f = (" + rho.str() + ")*x" + std::to_string(n + 1) + "x" + std::to_string(n + 3);
    return t;
}

/// a + b theta -> (a xi_{n+1} + gamma b) xi_{n+3}; the theta scale gamma
/// (a square root of -1) is what makes the theta-theta case of the KKM
/// product match the double bracket.
inline SPoly tkk_embed(const KKMElem& x, int n, FieldElem gamma = FieldElem::alpha()) {
    Signature amb = tkk_ambient(n);
    std::uint32_t b1 = 1u << n, b3 = 1u << (n + 2);
    SPoly out(amb);
    auto lift = [&](const SPoly& f, std::uint32_t extra, const FieldElem& scale) {
        for (const auto& [m, c] : f.terms()) {
            SPoly mono = SPoly::monomial(amb, m.even, m.mask, scale * c);
            out += smul(mono, SPoly::monomial(amb, {0}, extra));
        }
    };
    lift(x.a, b1 | b3, FieldElem(1));
    lift(x.b, b3, gamma);
    return out;
}

/// [[embed(x), e], embed(y)] - embed(x o y); zero certifies the TKK/KKM
/// compatibility on (x, y).
inline SPoly tkk_product_residual(const KKMElem& x, const KKMElem& y, int n,
                                  const SL2Triple& triple, const PoissonStructure& jside,
                                  FieldElem gamma = FieldElem::alpha()) {
    SPoly lhs = kbracket(kbracket(tkk_embed(x, n, gamma), triple.e), tkk_embed(y, n, gamma));
    SPoly rhs = tkk_embed(kkm_mul(x, y, jside), n, gamma);
    return lhs - rhs;
}

} // namespace jcs
