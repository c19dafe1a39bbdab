#pragma once

#include "jcs/brackets.hpp"
#include "jcs/span.hpp"

#include <array>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace jcs {

inline std::string mask_name(std::uint32_t mask, const std::string& prefix = "x") {
    if (mask == 0) return "1";
    std::string out;
    for (int i = 0; i < 32; ++i)
        if (mask & (1u << i)) out += prefix + std::to_string(i + 1);
    return out;
}

/// Collapse an /\(0,n) element (no even variables) into a CElem via a
/// mask-to-index map, each coefficient multiplied by the given d-factor.
inline CElem spoly_to_celem(const CAlgebra* alg, const SPoly& f,
                            const std::function<int(std::uint32_t)>& index,
                            const DPoly& factor = DPoly(FieldElem(1))) {
    CElem out = celem_zero(alg);
    for (const auto& [mono, c] : f.terms()) out.add_comp(index(mono.mask), c * factor);
    return out;
}

// --- JS_1 ----------------------------------------------------------------

/// Free rank (1|1) module, S even and T odd, with S_l S = 2S,
/// T_l T = (d + 2l) S, T_l S = T; the S_l T entry is completed by
/// commutativity and the full table re-verified.
inline CAlgebraPtr build_js1() {
    auto alg = std::make_shared<CAlgebra>();
    alg->name = "JS1";
    alg->rank = 2;
    alg->parity = {0, 1};
    alg->basis_names = {"S", "T"};
    alg->variety = Variety::jordan;
    alg->table.assign(2, std::vector<FormalPoly>(2, FormalPoly(alg.get())));
    const int S = 0, T = 1;
    alg->table[S][S] = FormalPoly::from_celem(FieldElem(2) * basis_elem(alg.get(), S));
    alg->table[T][S] = FormalPoly::from_celem(basis_elem(alg.get(), T));
    FormalPoly tt(alg.get());
    tt.add_term(vkey_zero(), basis_elem(alg.get(), S, DPoly::d_power(1)));
    VKey l = vkey_zero();
    l[L1] = 1;
    tt.add_term(l, FieldElem(2) * basis_elem(alg.get(), S));
    alg->table[T][T] = tt;
    alg->table[S][T] = conjugate_entry(alg.get(), T, S, +1);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            if (!comm_residual_conf(basis_elem(alg.get(), i), basis_elem(alg.get(), j), +1)
                     .is_zero())
                throw std::logic_error("build_js1: completed table fails commutativity");
    return alg;
}

// --- J_n -----------------------------------------------------------------

inline int jn_plus(std::uint32_t mask) { return static_cast<int>(mask); }
inline int jn_minus(int n, std::uint32_t mask) { return (1 << n) + static_cast<int>(mask); }

/// The free F[d]-module on {a+, a- : a in /\(n)} with the four
/// lambda-product formulas of the KKM coefficient realization; the odd
/// pairing is the paper one for n >= 2 and diagonal for n <= 1 unless
/// overridden (the TKK chain through K(1,n+3) induces the diagonal form).
inline CAlgebraPtr build_jn(int n, std::optional<OddPairing> pairing_override = std::nullopt) {
    if (n < 0) throw std::invalid_argument("build_jn: n must be >= 0");
    Signature aux = p_signature(0, n);
    if (pairing_override) aux.pairing = *pairing_override;
    auto alg = std::make_shared<CAlgebra>();
    alg->name = "J" + std::to_string(n);
    alg->rank = 2 << n;
    alg->parity.resize(alg->rank);
    alg->basis_names.resize(alg->rank);
    alg->variety = Variety::jordan;
    int half = 1 << n;
    for (std::uint32_t m = 0; m < static_cast<std::uint32_t>(half); ++m) {
        int deg = std::popcount(m);
        alg->parity[jn_plus(m)] = deg % 2;
        alg->parity[jn_minus(n, m)] = (deg + 1) % 2;
        alg->basis_names[jn_plus(m)] = mask_name(m) + "+";
        alg->basis_names[jn_minus(n, m)] = mask_name(m) + "-";
    }
    alg->table.assign(alg->rank, std::vector<FormalPoly>(alg->rank, FormalPoly(alg.get())));

    auto plus_idx = [](std::uint32_t m) { return jn_plus(m); };
    auto minus_idx = [n](std::uint32_t m) { return jn_minus(n, m); };
    for (std::uint32_t A = 0; A < static_cast<std::uint32_t>(half); ++A) {
        SPoly fA = SPoly::monomial(aux, {}, A);
        int r = std::popcount(A);
        for (std::uint32_t B = 0; B < static_cast<std::uint32_t>(half); ++B) {
            SPoly fB = SPoly::monomial(aux, {}, B);
            int s = std::popcount(B);
            SPoly prod = smul(fA, fB);
            SPoly pair = odd_pairing_term(fA, fB);

            alg->table[jn_plus(A)][jn_plus(B)] =
                FormalPoly::from_celem(spoly_to_celem(alg.get(), prod, plus_idx));
            alg->table[jn_plus(A)][jn_minus(n, B)] =
                FormalPoly::from_celem(spoly_to_celem(alg.get(), prod, minus_idx));
            alg->table[jn_minus(n, A)][jn_plus(B)] = FormalPoly::from_celem(
                sign_pow(s) * spoly_to_celem(alg.get(), prod, minus_idx));

            // a-_l b- = (-1)^s ((r-1) d (ab)+ + (-1)^r pairing+ + l (r+s-2)(ab)+)
            FormalPoly mm(alg.get());
            CElem dterm =
                spoly_to_celem(alg.get(), prod, plus_idx, DPoly::d_power(1, FieldElem(r - 1)));
            CElem pterm = sign_pow(r) * spoly_to_celem(alg.get(), pair, plus_idx);
            mm.add_term(vkey_zero(), dterm + pterm);
            VKey l = vkey_zero();
            l[L1] = 1;
            mm.add_term(l, FieldElem(r + s - 2) * spoly_to_celem(alg.get(), prod, plus_idx));
            alg->table[jn_minus(n, A)][jn_minus(n, B)] = sign_pow(s) * mm;
        }
    }
    return alg;
}

// --- K_n -----------------------------------------------------------------

inline Signature kn_aux_signature(int n) {
    Signature s;
    s.m = 0;
    s.n = n;
    s.even_kind = EvenKind::polynomial;
    s.pairing = OddPairing::diagonal;
    return s;
}

/// Contact-type Lie conformal superalgebra on /\(n) in the diagonal
/// omega-coordinates:
///   [a_l b] = (r/2 - 1) d(ab) + (-1)^r (1/2) sum_i d_i a d_i b
///             + l ((r+s)/2 - 2) ab.
inline CAlgebraPtr build_kn(int n) {
    if (n < 0) throw std::invalid_argument("build_kn: n must be >= 0");
    Signature aux = kn_aux_signature(n);
    auto alg = std::make_shared<CAlgebra>();
    alg->name = "K" + std::to_string(n);
    alg->rank = 1 << n;
    alg->parity.resize(alg->rank);
    alg->basis_names.resize(alg->rank);
    alg->variety = Variety::lie;
    for (std::uint32_t m = 0; m < static_cast<std::uint32_t>(alg->rank); ++m) {
        alg->parity[m] = std::popcount(m) % 2;
        alg->basis_names[m] = mask_name(m, "w");
    }
    alg->table.assign(alg->rank, std::vector<FormalPoly>(alg->rank, FormalPoly(alg.get())));
    auto idx = [](std::uint32_t m) { return static_cast<int>(m); };
    FieldElem half(Rat(1, 2));
    for (std::uint32_t A = 0; A < static_cast<std::uint32_t>(alg->rank); ++A) {
        SPoly fA = SPoly::monomial(aux, {}, A);
        int r = std::popcount(A);
        for (std::uint32_t B = 0; B < static_cast<std::uint32_t>(alg->rank); ++B) {
            SPoly fB = SPoly::monomial(aux, {}, B);
            int s = std::popcount(B);
            SPoly prod = smul(fA, fB);
            SPoly pair = odd_pairing_term(fA, fB);
            FormalPoly entry(alg.get());
            CElem c0 = spoly_to_celem(alg.get(), prod, idx,
                                      DPoly::d_power(1, FieldElem(Rat(r - 2, 2))));
            c0 += (sign_pow(r) * half) * spoly_to_celem(alg.get(), pair, idx);
            entry.add_term(vkey_zero(), c0);
            VKey l = vkey_zero();
            l[L1] = 1;
            entry.add_term(l, FieldElem(Rat(r + s - 4, 2)) * spoly_to_celem(alg.get(), prod, idx));
            alg->table[A][B] = std::move(entry);
        }
    }
    return alg;
}

/// The same coefficient Lie algebra K(1,n) presented J_n-style (xi
/// coordinates, paper pairing, all distributions at weight one):
///   [a_l b] = (r-2) d(ab) + (-1)^r B_xi(da, db) + l (r+s-4) ab.
inline CAlgebraPtr build_kn_jstyle(int n) {
    Signature aux = p_signature(0, n);
    auto alg = std::make_shared<CAlgebra>();
    alg->name = "K" + std::to_string(n) + "(jstyle)";
    alg->rank = 1 << n;
    alg->parity.resize(alg->rank);
    alg->basis_names.resize(alg->rank);
    alg->variety = Variety::lie;
    for (std::uint32_t m = 0; m < static_cast<std::uint32_t>(alg->rank); ++m) {
        alg->parity[m] = std::popcount(m) % 2;
        alg->basis_names[m] = mask_name(m);
    }
    alg->table.assign(alg->rank, std::vector<FormalPoly>(alg->rank, FormalPoly(alg.get())));
    auto idx = [](std::uint32_t m) { return static_cast<int>(m); };
    for (std::uint32_t A = 0; A < static_cast<std::uint32_t>(alg->rank); ++A) {
        SPoly fA = SPoly::monomial(aux, {}, A);
        int r = std::popcount(A);
        for (std::uint32_t B = 0; B < static_cast<std::uint32_t>(alg->rank); ++B) {
            SPoly fB = SPoly::monomial(aux, {}, B);
            int s = std::popcount(B);
            SPoly prod = smul(fA, fB);
            SPoly pair = odd_pairing_term(fA, fB);
            FormalPoly entry(alg.get());
            CElem c0 =
                spoly_to_celem(alg.get(), prod, idx, DPoly::d_power(1, FieldElem(r - 2)));
            c0 += sign_pow(r) * spoly_to_celem(alg.get(), pair, idx);
            entry.add_term(vkey_zero(), c0);
            VKey l = vkey_zero();
            l[L1] = 1;
            entry.add_term(l, FieldElem(r + s - 4) * spoly_to_celem(alg.get(), prod, idx));
            alg->table[A][B] = std::move(entry);
        }
    }
    return alg;
}

// --- Hodge star ----------------------------------------------------------

struct StarResult {
    FieldElem sign; // mask * complement = sign * TOP
    std::uint32_t complement;
};

inline StarResult hodge_star(std::uint32_t mask, int n = 6) {
    std::uint32_t full = (1u << n) - 1;
    if (mask & ~full) throw std::invalid_argument("hodge_star: mask out of range");
    std::uint32_t comp = full & ~mask;
    return StarResult{sign_pow(koszul_inversions(mask, comp)), comp};
}

/// The signed monomial a* with a a* = +TOP exactly.
inline std::pair<FieldElem, std::uint32_t> star_monomial(std::uint32_t mask, int n = 6) {
    StarResult s = hodge_star(mask, n);
    return {s.sign, s.complement};
}

// --- CK_6 ----------------------------------------------------------------

struct CK6Data {
    CAlgebraPtr k6;
    CAlgebraPtr ck6;
    SpanBasis span;
    bool closed = false;
    CElem Lgen;
    std::map<std::pair<int, int>, CElem> a; // i<j, 1-based
    std::map<int, CElem> b;
    std::map<std::array<int, 3>, CElem> c; // i<j<k
    std::vector<CElem> gens;
};

/// Spanning family of CK_6 inside K_6:
///   L = (-1 + alpha d^3 nu)/2, a_ij = w_i w_j + alpha d (w_i w_j)*,
///   b_i = w_i - alpha d^2 (w_i)*, c_ijk = w_i w_j w_k + alpha (w_i w_j w_k)*.
inline CK6Data build_ck6() {
    CK6Data out;
    out.k6 = build_kn(6);
    const CAlgebra* k6 = out.k6.get();
    FieldElem alpha = FieldElem::alpha();
    auto mk = [&](std::uint32_t mask, FieldElem plain, int star_dpow, FieldElem star_scale) {
        CElem x = celem_zero(k6);
        x.add_comp(static_cast<int>(mask), DPoly(plain));
        auto [sgn, comp] = star_monomial(mask, 6);
        x.add_comp(static_cast<int>(comp), DPoly::d_power(star_dpow, star_scale * sgn));
        return x;
    };

    out.Lgen = celem_zero(k6);
    out.Lgen.add_comp(0, DPoly(FieldElem(Rat(-1, 2))));
    out.Lgen.add_comp(63, DPoly::d_power(3, alpha * FieldElem(Rat(1, 2))));
    out.gens.push_back(out.Lgen);

    for (int i = 1; i <= 6; ++i)
        for (int j = i + 1; j <= 6; ++j) {
            std::uint32_t mask = (1u << (i - 1)) | (1u << (j - 1));
            out.a[{i, j}] = mk(mask, FieldElem(1), 1, alpha);
            out.gens.push_back(out.a[{i, j}]);
        }
    for (int i = 1; i <= 6; ++i) {
        out.b[i] = mk(1u << (i - 1), FieldElem(1), 2, -alpha);
        out.gens.push_back(out.b[i]);
    }
    for (int i = 1; i <= 6; ++i)
        for (int j = i + 1; j <= 6; ++j)
            for (int k = j + 1; k <= 6; ++k) {
                std::uint32_t mask = (1u << (i - 1)) | (1u << (j - 1)) | (1u << (k - 1));
                out.c[{i, j, k}] = mk(mask, FieldElem(1), 0, alpha);
                out.gens.push_back(out.c[{i, j, k}]);
            }

    ClosureResult cl = span_closure(out.gens, k6);
    out.closed = cl.closed;
    out.span = cl.basis;
    if (!cl.closed) throw std::runtime_error("build_ck6: closure failed: " + cl.offending);

    std::vector<std::string> names;
    std::vector<int> parities;
    for (std::size_t i = 0; i < out.span.reduced.size(); ++i) {
        auto p = parity_of(out.span.reduced[i]);
        parities.push_back(p.value());
        names.push_back("g" + std::to_string(i));
    }
    out.ck6 = extract_restriction_table(k6, out.span.reduced, names, parities, Variety::lie,
                                        "CK6", out.span.bound_used);
    return out;
}

// --- JCK_4, eigenspace realization ---------------------------------------

enum class TkkMode {
    inner_at_lambda, // [[x_m e]_l y] with m -> l afterwards
    inner_at_zero,   // [[x_m e]_l y] with m -> 0 (the printed form)
};

/// TKK-induced product of two elements of a Lie conformal algebra through
/// the middle element e.
inline FormalPoly tkk_lambda_product(const CElem& x, const CElem& e, const CElem& y,
                                     TkkMode mode) {
    FormalPoly inner = lprod(FormalPoly::from_celem(x), L2, FormalPoly::from_celem(e));
    FormalPoly outer = lprod(inner, W1, FormalPoly::from_celem(y));
    outer = subst_linear(outer, W1, {{L1, FieldElem(1)}});
    if (mode == TkkMode::inner_at_lambda)
        return subst_linear(outer, L2, {{L1, FieldElem(1)}});
    return subst_linear(outer, L2, {});
}

struct JCK4Data {
    CAlgebraPtr alg;
    CAlgebraPtr parent;
    std::vector<CElem> basis; // in the parent
    CElem e_elem;
    TkkMode mode = TkkMode::inner_at_lambda;
    int even_dim = 0, odd_dim = 0;
    std::string note;
};

namespace detail {

/// ad0(x) = [m_l x] at l = 0.
inline CElem ad_zero(const CElem& m, const CElem& x) {
    return formal_constant_to_celem(subst_linear(lprod(m, L1, x), L1, {}), "ad_zero");
}

/// Dimension of the kernel of (ad0(m) + ev) on the F-span of the rows,
/// split by parity.  Rows must be closed under ad0 within their F[d]-span.
inline std::pair<int, int> eigen_dims(const CAlgebra* alg, const std::vector<CElem>& rows,
                                      const CElem& m, const FieldElem& ev, int bound) {
    FlatSpan span(alg, rows, bound);
    std::size_t n = rows.size();
    std::vector<std::vector<DPoly>> M(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto sol = span.solve(ad_zero(m, rows[i]));
        if (!sol) throw std::runtime_error("eigen_dims: ad0 image leaves the span");
        M[i] = *sol;
    }
    std::pair<int, int> dims{0, 0};
    for (int par = 0; par < 2; ++par) {
        std::vector<std::size_t> sel;
        for (std::size_t i = 0; i < n; ++i)
            if (parity_of(rows[i]).value() == par) sel.push_back(i);
        if (sel.empty()) continue;
        // unknowns c_i; equations indexed by (target row j, d-power)
        std::vector<std::vector<FieldElem>> eqs;
        int maxdeg = 0;
        for (auto i : sel)
            for (const auto& p : M[i]) maxdeg = std::max(maxdeg, p.degree());
        for (std::size_t j = 0; j < n; ++j) {
            for (int q = 0; q <= maxdeg; ++q) {
                std::vector<FieldElem> row;
                bool nonzero = false;
                for (auto i : sel) {
                    FieldElem v = M[i][j].coeff(q);
                    if (i == j && q == 0) v += ev;
                    if (!v.is_zero()) nonzero = true;
                    row.push_back(v);
                }
                if (nonzero) eqs.push_back(std::move(row));
            }
        }
        // rank via Gaussian elimination
        std::size_t cols = sel.size(), rank = 0;
        for (std::size_t c = 0; c < cols && rank < eqs.size(); ++c) {
            std::size_t piv = rank;
            while (piv < eqs.size() && eqs[piv][c].is_zero()) ++piv;
            if (piv == eqs.size()) continue;
            std::swap(eqs[rank], eqs[piv]);
            FieldElem inv = eqs[rank][c].inv();
            for (auto& x : eqs[rank]) x = inv * x;
            for (std::size_t r2 = 0; r2 < eqs.size(); ++r2) {
                if (r2 == rank || eqs[r2][c].is_zero()) continue;
                FieldElem f = eqs[r2][c];
                for (std::size_t cc = 0; cc < cols; ++cc) eqs[r2][cc] -= f * eqs[rank][cc];
            }
            ++rank;
        }
        int dim = static_cast<int>(cols - rank);
        (par == 0 ? dims.first : dims.second) = dim;
    }
    return dims;
}

inline std::optional<FieldElem> proportionality(const FormalPoly& p, const CElem& x) {
    // p must equal m*x for a scalar m (and be free of formal variables)
    CElem c = celem_zero(p.alg);
    for (const auto& [k, e] : p.terms) {
        if (k != vkey_zero()) return std::nullopt;
        c += e;
    }
    if (c.is_zero()) return x.is_zero() ? std::optional<FieldElem>(FieldElem(0)) : std::nullopt;
    if (x.is_zero()) return std::nullopt;
    const auto& [i0, p0] = *x.comps.begin();
    auto it = c.comps.find(i0);
    if (it == c.comps.end()) return std::nullopt;
    int q = p0.degree();
    if (p0.coeff(q).is_zero()) return std::nullopt;
    FieldElem m = it->second.coeff(q) / p0.coeff(q);
    return (c == m * x) ? std::optional<FieldElem>(m) : std::nullopt;
}

} // namespace detail

/// The eigenspace Jordan conformal algebra of CK_6: the -alpha/2
/// eigenspace of ad0(w5 w6) with the TKK product through a computed
/// admissible middle element e (direction alpha w4w5 + w4w6, scale pinned
/// by the unit normalization on a46 - alpha a45).
inline JCK4Data build_jck4_from_ck6(const CK6Data& D) {
    const CAlgebra* k6 = D.k6.get();
    FieldElem alpha = FieldElem::alpha();
    JCK4Data out;
    out.parent = D.k6;

    CElem grading = basis_elem(k6, (1 << 4) | (1 << 5)); // w5 w6
    auto dims = detail::eigen_dims(k6, D.span.reduced, grading,
                                   alpha * FieldElem(Rat(1, 2)), D.span.bound_used);
    out.even_dim = dims.first;
    out.odd_dim = dims.second;
    if (dims != std::pair<int, int>{4, 4})
        throw std::runtime_error("build_jck4_from_ck6: eigenspace dimension (" +
                                 std::to_string(dims.first) + "|" + std::to_string(dims.second) +
                                 ") != (4|4)");

    for (int i = 1; i <= 4; ++i) out.basis.push_back(D.a.at({i, 6}) - alpha * D.a.at({i, 5}));

    // The odd members are listed with an internal sign that cannot sit in
    // the same eigenspace as the even ones under this basis change; each
    // sign is selected by the exact eigenvalue test and reported.
    auto eigen_pick = [&](const CElem& first, const CElem& second,
                          const std::string& label) {
        for (int s : {-1, +1}) {
            CElem cand = first + FieldElem(s) * second;
            CElem res = detail::ad_zero(grading, cand) + (alpha * FieldElem(Rat(1, 2))) * cand;
            if (res.is_zero()) {
                out.note += label + (s > 0 ? "+" : "-") + " ";
                return cand;
            }
        }
        throw std::runtime_error("build_jck4_from_ck6: no sign makes " + label +
                                 " an eigenvector");
    };
    out.basis.push_back(eigen_pick(D.b.at(5), alpha * D.b.at(6), "b5(a)b6:"));
    out.basis.push_back(eigen_pick(D.c.at({1, 2, 6}), D.c.at({3, 4, 6}), "c126,c346:"));
    out.basis.push_back(eigen_pick(D.c.at({1, 3, 6}), D.c.at({2, 4, 6}), "c136,c246:"));
    out.basis.push_back(eigen_pick(D.c.at({2, 3, 6}), D.c.at({1, 4, 6}), "c236,c146:"));

    // every chosen element is an exact eigenvector (the evens are checked
    // here; the odds were selected by this property)
    for (const auto& x : out.basis) {
        CElem res = detail::ad_zero(grading, x) + (alpha * FieldElem(Rat(1, 2))) * x;
        if (!res.is_zero())
            throw std::runtime_error("build_jck4_from_ck6: listed element fails the eigenvalue");
    }

    CElem e_dir = alpha * basis_elem(k6, (1 << 3) | (1 << 4)); // alpha w4w5
    e_dir += basis_elem(k6, (1 << 3) | (1 << 5));              // + w4w6
    const CElem& unit = out.basis[3];                          // a46 - alpha a45

    for (TkkMode mode : {TkkMode::inner_at_lambda, TkkMode::inner_at_zero}) {
        auto probe = detail::proportionality(tkk_lambda_product(unit, e_dir, unit, mode), unit);
        if (!probe || probe->is_zero()) continue;
        FieldElem m = *probe;
        CElem e = m.inv() * e_dir;
        bool unit_ok = true;
        for (const auto& x : out.basis) {
            FormalPoly p = tkk_lambda_product(unit, e, x, mode);
            FormalPoly diff = p - FormalPoly::from_celem(x);
            if (!diff.is_zero()) {
                unit_ok = false;
                break;
            }
        }
        if (!unit_ok) continue;
        out.e_elem = e;
        out.mode = mode;
        out.note = std::string("e = (") + (m.inv()).str() + ")*(alpha w4w5 + w4w6), inner " +
                   (mode == TkkMode::inner_at_lambda ? "mu->lambda" : "mu->0");
        out.alg = extract_table(
            k6, out.basis, {"u1", "u2", "u3", "u4", "v1", "v2", "v3", "v4"},
            {0, 0, 0, 0, 1, 1, 1, 1}, Variety::jordan, "JCK4(CK6)",
            [&](const CElem& x, const CElem& y) { return tkk_lambda_product(x, e, y, mode); },
            D.span.bound_used);
        // re-verify commutativity of the extracted table
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j)
                if (!comm_residual_conf(basis_elem(out.alg.get(), i),
                                        basis_elem(out.alg.get(), j), +1)
                         .is_zero())
                    throw std::runtime_error("build_jck4_from_ck6: table not commutative");
        return out;
    }
    throw std::runtime_error("build_jck4_from_ck6: no admissible middle element e found");
}

// --- JCK_4 inside J_3 ----------------------------------------------------

struct JCK4J3Data {
    CAlgebraPtr alg;
    CAlgebraPtr j3;
    std::vector<CElem> basis;
    std::array<int, 4> signs{1, 1, 1, 1}; // (E, U, O, W) internal signs
    bool paper_signs_closed = false;
};

/// The spanning family xi_i^- - s1 d(xi_i^*)^+, 1^+ + s2 d nu^-,
/// xi_i^+ + s3 (xi_i^*)^-, 1^- - s4 d^2 nu^+ in J_3.  The printed signs
/// (all +) are tried first; if the span does not close, the sign pattern
/// is searched and the closing one recorded.
inline JCK4J3Data build_jck4_in_j3() {
    JCK4J3Data out;
    out.j3 = build_jn(3);
    const CAlgebra* j3 = out.j3.get();
    const int n = 3;

    // The complement of xi_i is taken through the pairing of the carrier:
    // D_i = sum_j B_ij d_j(nu).  For a diagonal form this is exactly the
    // printed xi_i^*; for the paper form it swaps the hyperbolic pair.
    Signature aux = p_signature(0, n);
    SPoly nu = SPoly::monomial(aux, {}, (1u << n) - 1);
    auto dual_complement = [&](int i) {
        int j = i;
        if (aux.pairing == OddPairing::paper && i >= n - 1) j = (i == n - 1) ? n : n - 1;
        SPoly d = partial(odd_var(j), nu);
        const auto& [mono, coeff] = *d.terms().begin();
        return std::pair<FieldElem, std::uint32_t>(coeff, mono.mask);
    };

    auto family = [&](const std::array<int, 4>& s) {
        std::vector<CElem> basis;
        for (int i = 1; i <= 3; ++i) {
            auto [sgn, comp] = dual_complement(i);
            CElem e = basis_elem(j3, jn_minus(n, 1u << (i - 1)));
            e.add_comp(jn_plus(comp), DPoly::d_power(1, FieldElem(-s[0]) * sgn));
            basis.push_back(e);
        }
        CElem u = basis_elem(j3, jn_plus(0));
        u.add_comp(jn_minus(n, 7), DPoly::d_power(1, FieldElem(s[1])));
        basis.push_back(u);
        for (int i = 1; i <= 3; ++i) {
            auto [sgn, comp] = dual_complement(i);
            CElem o = basis_elem(j3, jn_plus(1u << (i - 1)));
            o.add_comp(jn_minus(n, comp), DPoly(FieldElem(s[2]) * sgn));
            basis.push_back(o);
        }
        CElem w = basis_elem(j3, jn_minus(n, 0));
        w.add_comp(jn_plus(7), DPoly::d_power(2, FieldElem(-s[3])));
        basis.push_back(w);
        return basis;
    };

    std::vector<std::array<int, 4>> candidates;
    for (int bits = 0; bits < 16; ++bits)
        candidates.push_back({bits & 1 ? -1 : 1, bits & 2 ? -1 : 1, bits & 4 ? -1 : 1,
                              bits & 8 ? -1 : 1});
    // fewest deviations from the printed signs first; among ties prefer
    // keeping the printed 1^+ + d nu^- element (the one the source lists)
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const std::array<int, 4>& a, const std::array<int, 4>& b) {
                         auto flips = [](const std::array<int, 4>& s) {
                             int f = 0;
                             for (int v : s) f += v < 0;
                             return f;
                         };
                         if (flips(a) != flips(b)) return flips(a) < flips(b);
                         return (a[1] > 0) && (b[1] < 0);
                     });

    for (const auto& s : candidates) {
        std::vector<CElem> basis = family(s);
        ClosureResult cl = span_closure(basis, j3);
        if (!cl.closed) {
            if (s == std::array<int, 4>{1, 1, 1, 1}) out.paper_signs_closed = false;
            continue;
        }
        if (s == std::array<int, 4>{1, 1, 1, 1}) out.paper_signs_closed = true;
        out.signs = s;
        out.basis = basis;
        out.alg = extract_restriction_table(j3, basis, {"E1", "E2", "E3", "U", "O1", "O2", "O3", "W"},
                                            {0, 0, 0, 0, 1, 1, 1, 1}, Variety::jordan,
                                            "JCK4(J3)", cl.basis.bound_used + 2);
        return out;
    }
    throw std::runtime_error("build_jck4_in_j3: no sign pattern closes the span");
}

// --- the xi -> omega dictionary and the K_n consistency check ------------

/// Multiplicative change of coordinates Phi: /\(n)_xi -> /\(n)_omega that
/// carries the paper pairing to -sum_i delta_i delta_i:
///   xi_i -> alpha w_i (diagonal block),
///   xi_{n-1} -> -alpha eps w_{n-1} - eps w_n,
///   xi_n   -> -eps w_{n-1} - alpha eps w_n (hyperbolic block).
inline SPoly xi_to_omega(std::uint32_t mask, int n) {
    Signature aux = kn_aux_signature(n);
    Signature src = p_signature(0, n);
    FieldElem alpha = FieldElem::alpha(), eps = FieldElem::eps();
    SPoly acc = SPoly::scalar(aux, FieldElem(1));
    for (int i = 1; i <= n; ++i) {
        if (!(mask & (1u << (i - 1)))) continue;
        SPoly img(aux);
        bool hyperbolic = src.pairing == OddPairing::paper && i >= n - 1;
        if (!hyperbolic) {
            img = SPoly::monomial(aux, {}, 1u << (i - 1), alpha);
        } else if (i == n - 1) {
            img = SPoly::monomial(aux, {}, 1u << (n - 2), -alpha * eps);
            img += SPoly::monomial(aux, {}, 1u << (n - 1), -eps);
        } else {
            img = SPoly::monomial(aux, {}, 1u << (n - 2), -eps);
            img += SPoly::monomial(aux, {}, 1u << (n - 1), -alpha * eps);
        }
        acc = smul(acc, img);
    }
    return acc;
}

/// psi(a) = 2 alpha^{deg a} Phi(a), a lambda-bracket homomorphism from the
/// J-style presentation of K(1,n) onto the omega-display K_n.
inline CElem kn_dictionary_psi(const CAlgebra* kn_display, std::uint32_t mask, int n) {
    int r = std::popcount(mask);
    FieldElem scale = FieldElem(2);
    for (int i = 0; i < r; ++i) scale *= FieldElem::alpha();
    SPoly img = xi_to_omega(mask, n);
    return scale * spoly_to_celem(kn_display, img,
                                  [](std::uint32_t m) { return static_cast<int>(m); });
}

/// psi applied F[d]-linearly to an element of the J-style algebra.
inline CElem kn_dictionary_psi(const CAlgebra* kn_display, const CElem& x, int n) {
    CElem out = celem_zero(kn_display);
    for (const auto& [i, p] : x.comps)
        out += p * kn_dictionary_psi(kn_display, static_cast<std::uint32_t>(i), n);
    return out;
}

/// The Remark consistency check between the J_n minus-sector shape and the
/// K_n display: psi intertwines the J-style Lie table with the display
/// table on every basis pair.
inline bool kn_remark_check(int n, std::string* diag = nullptr) {
    CAlgebraPtr jstyle = build_kn_jstyle(n);
    CAlgebraPtr disp = build_kn(n);
    for (std::uint32_t A = 0; A < (1u << n); ++A) {
        for (std::uint32_t B = 0; B < (1u << n); ++B) {
            FormalPoly entry = jstyle->table[A][B];
            FormalPoly lhs(disp.get());
            for (const auto& [k, c] : entry.terms)
                lhs.add_term(k, kn_dictionary_psi(disp.get(), c, n));
            FormalPoly rhs = lprod(kn_dictionary_psi(disp.get(), A, n), L1,
                                   kn_dictionary_psi(disp.get(), B, n));
            if (!(lhs - rhs).is_zero()) {
                if (diag)
                    *diag = "mismatch at (" + jstyle->basis_names[A] + ", " +
                            jstyle->basis_names[B] + ")";
                return false;
            }
        }
    }
    return true;
}

// --- the intertwiner between the two JCK_4 realizations ------------------

struct IntertwinerResult {
    bool found = false;
    std::vector<std::vector<DPoly>> matrix; // phi(a_i) coordinates over the B basis
    FieldElem scale;                        // rho with phi = rho * chi
    std::string note;
};

/// chi: J_3 -> K_6(display).  Three steps: the form isometry Theta from
/// the hyperbolic (xi2, xi3) pairing of J_3 onto the diagonal pairing that
/// the ambient K(1,6) induces on xi1..xi3, then the TKK embedding
/// a+ -> [a xi4 xi6], a- -> [a xi6], then the psi dictionary at n = 6.
inline CElem jck4_chi(const CAlgebra* k6_display, const CElem& x_in_j3) {
    static const Signature aux = [] {
        Signature s;
        s.m = 0;
        s.n = 3;
        s.even_kind = EvenKind::polynomial;
        s.pairing = OddPairing::diagonal;
        return s;
    }();
    FieldElem alpha = FieldElem::alpha(), half(Rat(1, 2));
    auto theta = [&](std::uint32_t mask) {
        SPoly acc = SPoly::scalar(aux, FieldElem(1));
        for (int i = 1; i <= 3; ++i) {
            if (!(mask & (1u << (i - 1)))) continue;
            SPoly img(aux);
            if (i == 1) {
                img = SPoly::monomial(aux, {}, 0b001);
            } else if (i == 2) {
                img = SPoly::monomial(aux, {}, 0b010, half);
                img += SPoly::monomial(aux, {}, 0b100, half * alpha);
            } else {
                img = SPoly::monomial(aux, {}, 0b010);
                img += SPoly::monomial(aux, {}, 0b100, -alpha);
            }
            acc = smul(acc, img);
        }
        return acc;
    };
    CElem out = celem_zero(k6_display);
    for (const auto& [idx, p] : x_in_j3.comps) {
        bool minus = idx >= 8;
        std::uint32_t mask = static_cast<std::uint32_t>(minus ? idx - 8 : idx);
        // theta-part scale alpha: the KKM theta-theta case needs a square
        // root of -1 to match the double bracket through e
        FieldElem fac = minus ? alpha : FieldElem(1);
        SPoly th = theta(mask);
        for (const auto& [mono, c] : th.terms()) {
            std::uint32_t emb = mono.mask | (minus ? (1u << 5) : ((1u << 3) | (1u << 5)));
            out += (fac * c * p) * kn_dictionary_psi(k6_display, emb, 6);
        }
    }
    return out;
}

/// Finds the parity-preserving F[d]-linear isomorphism between the two
/// structure tables by solving: the chain candidate phi = rho * chi is
/// expressed over the CK6-side basis coordinate-wise, then the
/// intertwining of the tables is verified exactly on every basis pair.
inline IntertwinerResult solve_jck4_intertwiner(const JCK4J3Data& A, const JCK4Data& B) {
    IntertwinerResult out;
    const CAlgebra* k6 = B.parent.get();
    FlatSpan bspan(k6, B.basis, default_closure_bound(k6, B.basis) + 4);

    // rho from unit matching: chi(U_A) must be a constant multiple of the
    // B-side unit u4 = a46 - alpha a45
    CElem chiU = jck4_chi(k6, A.basis[3]);
    auto coords = bspan.solve(chiU);
    if (!coords) {
        out.note = "chi(unit) does not lie in the B-side span";
        return out;
    }
    FieldElem c;
    for (std::size_t l = 0; l < coords->size(); ++l) {
        if ((*coords)[l].is_zero()) continue;
        if (l != 3 || (*coords)[l].degree() != 0) {
            out.note = "chi(unit) is not a scalar multiple of the B-side unit";
            return out;
        }
        c = (*coords)[l].coeff(0);
    }
    if (c.is_zero()) {
        out.note = "chi(unit) vanishes";
        return out;
    }
    out.scale = c.inv();

    // phi on the A basis, coordinate-wise over the B basis
    std::vector<CElem> phi_imgs;
    for (const auto& xa : A.basis) {
        CElem img = out.scale * jck4_chi(k6, xa);
        auto sol = bspan.solve(img);
        if (!sol) {
            out.note = "phi image leaves the B-side span";
            return out;
        }
        out.matrix.push_back(*sol);
        CElem in_b = celem_zero(B.alg.get());
        for (std::size_t l = 0; l < sol->size(); ++l)
            if (!(*sol)[l].is_zero()) in_b.add_comp(static_cast<int>(l), (*sol)[l]);
        phi_imgs.push_back(in_b);
    }

    // parity preservation
    for (int i = 0; i < 8; ++i)
        if (parity_of(phi_imgs[i]).value_or(-1) != A.alg->parity[i]) {
            out.note = "phi does not preserve parity";
            return out;
        }

    // intertwining of the two tables
    auto map_through = [&](const FormalPoly& p) {
        FormalPoly q(B.alg.get());
        for (const auto& [k, c] : p.terms) {
            CElem img = celem_zero(B.alg.get());
            for (const auto& [i, pol] : c.comps) img += pol * phi_imgs[i];
            q.add_term(k, img);
        }
        return q;
    };
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            FormalPoly lhs = map_through(A.alg->table[i][j]);
            FormalPoly rhs = lprod(phi_imgs[i], L1, phi_imgs[j]);
            if (!(lhs - rhs).is_zero()) {
                out.note = "intertwining fails at (" + A.alg->basis_names[i] + ", " +
                           A.alg->basis_names[j] + ")";
                return out;
            }
        }

    // invertibility: both parity blocks have unit determinant in F[d]
    for (int block = 0; block < 2; ++block) {
        int off = block * 4;
        DPoly det;
        std::array<int, 4> perm{0, 1, 2, 3};
        do {
            int inv = 0;
            for (int i = 0; i < 4; ++i)
                for (int j = i + 1; j < 4; ++j) inv += perm[i] > perm[j];
            DPoly term(FieldElem(inv % 2 ? -1 : 1));
            for (int i = 0; i < 4; ++i) term = term * out.matrix[off + i][off + perm[i]];
            det += term;
        } while (std::next_permutation(perm.begin(), perm.end()));
        if (det.is_zero() || det.degree() != 0) {
            out.note = "phi block determinant is not a unit of F[d]";
            return out;
        }
    }

    out.found = true;
    out.note = "phi = rho*chi with rho = " + out.scale.str();
    return out;
}

} // namespace jcs
