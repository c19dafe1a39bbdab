#pragma once

#include "jcs/annihilation.hpp"
#include "jcs/catalog_io.hpp"
#include "jcs/report.hpp"

#include <chrono>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace jcs {

struct SuiteConfig {
    int n = -1;          // -1: every rank the suite documents
    long tmin = -3;      // Laurent window for the bridge suite
    long tmax = 3;
    int max_tdeg = 2;    // t-degree bound for coefficient enumerations
    int max_ddeg = -1;   // d-degree bound for closures (-1: automatic)
    std::uint64_t seed = 20240817;
    int jobs = 1;
    bool fail_fast = false;

    std::map<std::string, std::string> echo() const {
        return {{"n", std::to_string(n)},
                {"tmin", std::to_string(tmin)},
                {"tmax", std::to_string(tmax)},
                {"max_tdeg", std::to_string(max_tdeg)},
                {"max_ddeg", std::to_string(max_ddeg)},
                {"seed", std::to_string(seed)},
                {"jobs", std::to_string(jobs)}};
    }
};

/// Deterministic seeded generator for the randomized K_6 triples.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    long below(long m) { return static_cast<long>(next() % static_cast<std::uint64_t>(m)); }
};

namespace detail_suite {

/// Deterministic fan-out: entry i is produced by fill(i) regardless of the
/// number of workers; results are appended in index order.
template <class Fill>
void parallel_checks(VerificationReport& rep, std::size_t count, const SuiteConfig& cfg,
                     Fill&& fill) {
    int jobs = std::max(1, cfg.jobs);
    if (jobs == 1 || count < 64) {
        for (std::size_t i = 0; i < count; ++i) {
            rep.entries.push_back(fill(i));
            if (cfg.fail_fast && !rep.entries.back().pass) return;
        }
        return;
    }
    std::vector<CheckEntry> out(count);
    std::vector<std::thread> pool;
    for (int w = 0; w < jobs; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t i = static_cast<std::size_t>(w); i < count;
                 i += static_cast<std::size_t>(jobs))
                out[i] = fill(i);
        });
    for (auto& t : pool) t.join();
    for (auto& e : out) rep.entries.push_back(std::move(e));
}

inline std::string pair_instance(const CAlgebraPtr& alg, int i, int j) {
    return "x=" + alg->basis_names[i] + ",y=" + alg->basis_names[j];
}

inline std::string quad_instance(const CAlgebraPtr& alg, int a, int b, int c, int d) {
    return "a=" + alg->basis_names[a] + ",b=" + alg->basis_names[b] + ",c=" +
           alg->basis_names[c] + ",d=" + alg->basis_names[d];
}

inline void conformal_law_checks(VerificationReport& rep, const SuiteConfig& cfg,
                                 const CAlgebraPtr& alg, const std::string& prefix,
                                 bool with_jordan) {
    int sign = alg->comm_sign();
    for (int i = 0; i < alg->rank; ++i)
        for (int j = 0; j < alg->rank; ++j) {
            FormalPoly r = comm_residual_conf(basis_elem(alg.get(), i), basis_elem(alg.get(), j),
                                              sign);
            rep.add(prefix + "/comm", pair_instance(alg, i, j), r.is_zero(),
                    r.is_zero() ? "" : formal_str(r));
            // double conjugation acts as the identity on table values
            FormalPoly e = alg->table[i][j];
            FormalPoly twice =
                subst_conjugate(subst_conjugate(rename_var(e, L1, W1), W1, L2), L2, L1);
            rep.add(prefix + "/double-conj", pair_instance(alg, i, j), (twice - e).is_zero());
        }
    if (!with_jordan) return;
    std::size_t r = alg->rank;
    parallel_checks(rep, r * r * r * r, cfg, [&](std::size_t idx) {
        int a = static_cast<int>(idx / (r * r * r));
        int b = static_cast<int>(idx / (r * r) % r);
        int c = static_cast<int>(idx / r % r);
        int d = static_cast<int>(idx % r);
        FormalPoly res =
            conformal_jordan_residual(basis_elem(alg.get(), a), basis_elem(alg.get(), b),
                                      basis_elem(alg.get(), c), basis_elem(alg.get(), d));
        return CheckEntry{prefix + "/jordan", quad_instance(alg, a, b, c, d), res.is_zero(),
                          res.is_zero() ? "" : formal_str(res)};
    });
}

inline std::vector<KKMElem> kkm_monomials(const Signature& sig, int max_tdeg) {
    std::vector<int> texps;
    for (int t = 0; t <= max_tdeg; ++t) texps.push_back(t);
    std::vector<KKMElem> out;
    std::vector<std::vector<int>> evens{{}};
    for (int i = 0; i < sig.m; ++i) {
        std::vector<std::vector<int>> next;
        for (const auto& e : evens)
            for (int t : texps) {
                auto e2 = e;
                e2.push_back(t);
                next.push_back(std::move(e2));
            }
        evens = std::move(next);
    }
    for (const auto& e : evens)
        for (std::uint32_t mask = 0; mask < (1u << sig.n); ++mask) {
            out.push_back(KKMElem::plain(SPoly::monomial(sig, e, mask)));
            out.push_back(KKMElem::theta_part(SPoly::monomial(sig, e, mask)));
        }
    return out;
}

inline int kkm_par(const KKMElem& x) { return x.parity().value(); }

} // namespace detail_suite

// --- individual suites ----------------------------------------------------

inline void suite_js1(VerificationReport& rep, const SuiteConfig& cfg) {
    auto js1 = build_js1();
    const int S = 0, T = 1;
    // the defining relations, verbatim
    FormalPoly tt(js1.get());
    tt.add_term(vkey_zero(), basis_elem(js1.get(), S, DPoly::d_power(1)));
    VKey l = vkey_zero();
    l[L1] = 1;
    tt.add_term(l, FieldElem(2) * basis_elem(js1.get(), S));
    rep.add("js1/table", "S,S",
            js1->table[S][S] == FormalPoly::from_celem(FieldElem(2) * basis_elem(js1.get(), S)));
    rep.add("js1/table", "T,T", js1->table[T][T] == tt);
    rep.add("js1/table", "T,S",
            js1->table[T][S] == FormalPoly::from_celem(basis_elem(js1.get(), T)));
    rep.add("js1/table", "S,T",
            js1->table[S][T] == FormalPoly::from_celem(basis_elem(js1.get(), T)));
    detail_suite::conformal_law_checks(rep, cfg, js1, "js1", true);
}

inline void suite_jn(VerificationReport& rep, const SuiteConfig& cfg) {
    std::vector<int> ns = cfg.n >= 0 ? std::vector<int>{cfg.n} : std::vector<int>{0, 1, 2};
    for (int n : ns) {
        auto jn = build_jn(n);
        detail_suite::conformal_law_checks(rep, cfg, jn, "jn/" + std::to_string(n), true);
        if (cfg.fail_fast && rep.failures()) return;
    }
}

inline void suite_kn(VerificationReport& rep, const SuiteConfig& cfg) {
    std::vector<int> ns = cfg.n >= 0 ? std::vector<int>{cfg.n} : std::vector<int>{0, 1, 2, 3, 4};
    for (int n : ns) {
        auto kn = build_kn(n);
        std::string prefix = "kn/" + std::to_string(n);
        int r = kn->rank;
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) {
                FormalPoly c =
                    comm_residual_conf(basis_elem(kn.get(), i), basis_elem(kn.get(), j), -1);
                rep.add(prefix + "/anticomm", detail_suite::pair_instance(kn, i, j), c.is_zero(),
                        c.is_zero() ? "" : formal_str(c));
            }
        detail_suite::parallel_checks(
            rep, static_cast<std::size_t>(r) * r * r, cfg, [&](std::size_t idx) {
                int a = static_cast<int>(idx / (r * r));
                int b = static_cast<int>(idx / r % r);
                int c = static_cast<int>(idx % r);
                FormalPoly res = jacobi_residual(basis_elem(kn.get(), a),
                                                 basis_elem(kn.get(), b), basis_elem(kn.get(), c));
                return CheckEntry{prefix + "/jacobi",
                                  "a=" + kn->basis_names[a] + ",b=" + kn->basis_names[b] +
                                      ",c=" + kn->basis_names[c],
                                  res.is_zero(), res.is_zero() ? "" : formal_str(res)};
            });
        if (n <= 2) {
            std::string diag;
            bool ok = kn_remark_check(n, &diag);
            rep.add(prefix + "/remark-dictionary", "psi intertwines both presentations", ok, diag);
        }
        if (cfg.fail_fast && rep.failures()) return;
    }
    if (cfg.n >= 0 && cfg.n != 6) return;
    // K_6: seeded random Jacobi triples
    auto k6 = build_kn(6);
    SplitMix64 rng(cfg.seed);
    const int triples = 1000;
    std::vector<std::array<int, 3>> picks(triples);
    for (auto& p : picks) p = {static_cast<int>(rng.below(64)), static_cast<int>(rng.below(64)),
                               static_cast<int>(rng.below(64))};
    detail_suite::parallel_checks(rep, picks.size(), cfg, [&](std::size_t i) {
        auto [a, b, c] = picks[i];
        FormalPoly res =
            jacobi_residual(basis_elem(k6.get(), a), basis_elem(k6.get(), b), basis_elem(k6.get(), c));
        FormalPoly anti = comm_residual_conf(basis_elem(k6.get(), a), basis_elem(k6.get(), b), -1);
        bool ok = res.is_zero() && anti.is_zero();
        return CheckEntry{"kn/6/random-jacobi",
                          "i=" + std::to_string(i) + ":a=" + k6->basis_names[a] + ",b=" +
                              k6->basis_names[b] + ",c=" + k6->basis_names[c],
                          ok, ok ? "" : formal_str(res)};
    });
}

inline void suite_ck6(VerificationReport& rep, const SuiteConfig& cfg) {
    CK6Data D = build_ck6();
    rep.add("ck6/generators", "count", D.gens.size() == 42,
            D.gens.size() == 42 ? "" : std::to_string(D.gens.size()));
    int even = D.span.even_rank(D.k6.get()), odd = D.span.odd_rank(D.k6.get());
    rep.add("ck6/rank", "even", even == 16, even == 16 ? "" : std::to_string(even));
    rep.add("ck6/rank", "odd", odd == 16, odd == 16 ? "" : std::to_string(odd));

    // closure certificate, one entry per ordered pair of the reduced basis
    FlatSpan span(D.k6.get(), D.span.reduced,
                  cfg.max_ddeg > 0 ? cfg.max_ddeg : D.span.bound_used);
    std::size_t r = D.span.reduced.size();
    detail_suite::parallel_checks(rep, r * r, cfg, [&](std::size_t idx) {
        std::size_t i = idx / r, j = idx % r;
        FormalPoly p = lprod(D.span.reduced[i], L1, D.span.reduced[j]);
        bool ok = true;
        std::string residual;
        for (int k = 0; k <= p.max_degree(L1) && ok; ++k) {
            CElem c = formal_constant_to_celem(p.coeff_of(L1, k), "ck6 suite");
            if (c.is_zero()) continue;
            if (!span.contains(c)) {
                ok = false;
                residual = "l^" + std::to_string(k) + ": " + celem_str(c);
            }
        }
        return CheckEntry{"ck6/closure", "i=" + std::to_string(i) + ",j=" + std::to_string(j), ok,
                          residual};
    });
}

inline void suite_jck4(VerificationReport& rep, const SuiteConfig& cfg) {
    CK6Data D = build_ck6();
    JCK4Data B = build_jck4_from_ck6(D);
    rep.add("jck4/eigenspace", "dimension",
            B.even_dim == 4 && B.odd_dim == 4,
            "(" + std::to_string(B.even_dim) + "|" + std::to_string(B.odd_dim) + ")");
    rep.add("jck4/ck6-side", B.note, true);
    JCK4J3Data A = build_jck4_in_j3();
    rep.add("jck4/j3-side",
            std::string("signs E,U,O,W = ") + std::to_string(A.signs[0]) + "," +
                std::to_string(A.signs[1]) + "," + std::to_string(A.signs[2]) + "," +
                std::to_string(A.signs[3]) +
                (A.paper_signs_closed ? "" : " (printed signs do not close; surfaced)"),
            true);
    detail_suite::conformal_law_checks(rep, cfg, B.alg, "jck4/ck6", true);
    detail_suite::conformal_law_checks(rep, cfg, A.alg, "jck4/j3", true);
    IntertwinerResult phi = solve_jck4_intertwiner(A, B);
    rep.add("jck4/intertwiner", phi.note, phi.found);
}

inline void suite_kkm(VerificationReport& rep, const SuiteConfig& cfg) {
    std::vector<int> ns = cfg.n >= 0 ? std::vector<int>{cfg.n} : std::vector<int>{0, 1, 2};
    for (int n : ns) {
        PoissonStructure ps = make_poisson_structure(kbracket_kind(n));
        auto elems = detail_suite::kkm_monomials(ps.sig, cfg.max_tdeg);
        auto mul = [&](const KKMElem& x, const KKMElem& y) { return kkm_mul(x, y, ps); };
        std::string prefix = "kkm/" + std::to_string(n);
        for (std::size_t i = 0; i < elems.size(); ++i)
            for (std::size_t j = 0; j < elems.size(); ++j) {
                KKMElem r = comm_residual(elems[i], elems[j], mul, detail_suite::kkm_par);
                rep.add(prefix + "/comm",
                        "x=" + kkm_str(elems[i]) + ",y=" + kkm_str(elems[j]), r.is_zero(),
                        r.is_zero() ? "" : kkm_str(r));
            }
        std::size_t m = elems.size();
        detail_suite::parallel_checks(rep, m * m * m * m, cfg, [&](std::size_t idx) {
            std::size_t a = idx / (m * m * m), b = idx / (m * m) % m, c = idx / m % m,
                        d = idx % m;
            KKMElem r = lin_jordan_residual(elems[a], elems[b], elems[c], elems[d], mul,
                                            detail_suite::kkm_par);
            return CheckEntry{prefix + "/jordan",
                              "a=" + kkm_str(elems[a]) + ",b=" + kkm_str(elems[b]) + ",c=" +
                                  kkm_str(elems[c]) + ",d=" + kkm_str(elems[d]),
                              r.is_zero(), r.is_zero() ? "" : kkm_str(r)};
        });
        if (cfg.fail_fast && rep.failures()) return;
    }
    // the ordinary Poisson case P(2,0): D = 0, KKM is Jordan as well
    PoissonStructure pp = make_poisson_structure(pbracket_kind(1, 0));
    std::vector<KKMElem> pel;
    for (int pa = 0; pa <= 1; ++pa)
        for (int qa = 0; qa <= 1; ++qa) {
            pel.push_back(KKMElem::plain(SPoly::monomial(pp.sig, {pa, qa}, 0)));
            pel.push_back(KKMElem::theta_part(SPoly::monomial(pp.sig, {pa, qa}, 0)));
        }
    auto pmul = [&](const KKMElem& x, const KKMElem& y) { return kkm_mul(x, y, pp); };
    std::size_t m = pel.size(), idx = 0;
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) {
            std::size_t c = (idx += 3) % m, d = (idx * 7 + 1) % m;
            KKMElem r =
                lin_jordan_residual(pel[a], pel[b], pel[c], pel[d], pmul, detail_suite::kkm_par);
            rep.add("kkm/p20/jordan",
                    "a=" + kkm_str(pel[a]) + ",b=" + kkm_str(pel[b]) + ",c=" + kkm_str(pel[c]) +
                        ",d=" + kkm_str(pel[d]),
                    r.is_zero(), r.is_zero() ? "" : kkm_str(r));
        }
}

inline void suite_brackets(VerificationReport& rep, const SuiteConfig& cfg) {
    // kbracket: anti-symmetry, generalized Leibniz with D = {.,1}, Jacobi
    {
        BracketKind kb = kbracket_kind(3);
        BracketFn br = [&](const SPoly& a, const SPoly& b) { return kbracket(a, b); };
        UnaryFn D = [&](const SPoly& a) { return bracket_derivation(a, kb); };
        std::vector<SPoly> monos;
        for (int t = 0; t <= 3; ++t)
            for (std::uint32_t mask = 0; mask < 8; ++mask)
                monos.push_back(SPoly::monomial(kb.sig, {t}, mask));
        for (std::size_t i = 0; i < monos.size(); ++i)
            for (std::size_t j = 0; j < monos.size(); ++j) {
                SPoly r = antisym_residual(monos[i], monos[j], br);
                rep.add("brackets/k/antisym",
                        "f=" + spoly_str(monos[i]) + ",g=" + spoly_str(monos[j]), r.is_zero(),
                        r.is_zero() ? "" : spoly_str(r));
            }
        std::size_t m = monos.size();
        detail_suite::parallel_checks(rep, m * m * m, cfg, [&](std::size_t idx) {
            const SPoly &a = monos[idx / (m * m)], &b = monos[idx / m % m], &c = monos[idx % m];
            SPoly r1 = leibniz_residual(a, b, c, br, D);
            SPoly r2 = bracket_jacobi_residual(a, b, c, br);
            bool ok = r1.is_zero() && r2.is_zero();
            return CheckEntry{"brackets/k/leibniz+jacobi",
                              "a=" + spoly_str(a) + ",b=" + spoly_str(b) + ",c=" + spoly_str(c),
                              ok, ok ? "" : spoly_str(r1.is_zero() ? r2 : r1)};
        });
        // D is computed, not configured: D(bc) = D(b)c + b D(c)
        for (const auto& b : monos)
            for (const auto& c : monos) {
                SPoly r = D(smul(b, c)) - smul(D(b), c) - smul(b, D(c));
                rep.add("brackets/k/derivation-D",
                        "b=" + spoly_str(b) + ",c=" + spoly_str(c), r.is_zero(),
                        r.is_zero() ? "" : spoly_str(r));
            }
    }
    // pbracket: anti-symmetry and Jacobi; D vanishes identically
    {
        BracketKind pb = pbracket_kind(1, 2);
        BracketFn br = [&](const SPoly& a, const SPoly& b) { return pbracket(a, b); };
        std::vector<SPoly> monos;
        for (int pa = 0; pa <= 1; ++pa)
            for (int qa = 0; qa <= 1; ++qa)
                for (std::uint32_t mask = 0; mask < 4; ++mask)
                    monos.push_back(SPoly::monomial(pb.sig, {pa, qa}, mask));
        for (std::size_t i = 0; i < monos.size(); ++i)
            for (std::size_t j = 0; j < monos.size(); ++j) {
                SPoly r = antisym_residual(monos[i], monos[j], br);
                rep.add("brackets/p/antisym",
                        "f=" + spoly_str(monos[i]) + ",g=" + spoly_str(monos[j]), r.is_zero(),
                        r.is_zero() ? "" : spoly_str(r));
                rep.add("brackets/p/derivation-zero", "f=" + spoly_str(monos[i]),
                        bracket_derivation(monos[i], pb).is_zero());
            }
        std::size_t m = monos.size();
        detail_suite::parallel_checks(rep, m * m * m, cfg, [&](std::size_t idx) {
            const SPoly &a = monos[idx / (m * m)], &b = monos[idx / m % m], &c = monos[idx % m];
            SPoly r = bracket_jacobi_residual(a, b, c, br);
            return CheckEntry{"brackets/p/jacobi",
                              "a=" + spoly_str(a) + ",b=" + spoly_str(b) + ",c=" + spoly_str(c),
                              r.is_zero(), r.is_zero() ? "" : spoly_str(r)};
        });
    }
    // Lemma: {.,.}_D from the kbracket satisfies axioms (i)-(iii) with D/2
    {
        BracketKind kb = kbracket_kind(2);
        BracketFn jb = [&](const SPoly& a, const SPoly& b) { return jordan_bracket_D(a, b, kb); };
        UnaryFn halfD = [&](const SPoly& a) {
            return FieldElem(Rat(1, 2)) * bracket_derivation(a, kb);
        };
        std::vector<SPoly> monos;
        for (int t = 0; t <= 2; ++t)
            for (std::uint32_t mask = 0; mask < 4; ++mask)
                monos.push_back(SPoly::monomial(kb.sig, {t}, mask));
        std::size_t m = monos.size();
        detail_suite::parallel_checks(rep, m * m * m, cfg, [&](std::size_t idx) {
            const SPoly &a = monos[idx / (m * m)], &b = monos[idx / m % m], &c = monos[idx % m];
            auto res = jordan_bracket_axiom_residuals(a, b, c, jb, halfD);
            bool ok = res[0].is_zero() && res[1].is_zero() && res[2].is_zero();
            std::string bad;
            if (!ok)
                bad = "(i)=" + spoly_str(res[0]) + " (ii)=" + spoly_str(res[1]) + " (iii)=" +
                      spoly_str(res[2]);
            return CheckEntry{"brackets/lemma-axioms",
                              "a=" + spoly_str(a) + ",b=" + spoly_str(b) + ",c=" + spoly_str(c),
                              ok, bad};
        });
    }
}

inline void suite_tkk(VerificationReport& rep, const SuiteConfig& cfg) {
    for (int n = 0; n <= 3; ++n) {
        SL2Triple t = sl2_assign(n);
        bool ok = (kbracket(t.h, t.e) - FieldElem(2) * t.e).is_zero() &&
                  (kbracket(t.h, t.f) + FieldElem(2) * t.f).is_zero() &&
                  (kbracket(t.e, t.f) - t.h).is_zero();
        rep.add("tkk/sl2", "n=" + std::to_string(n) + " " + t.note, ok);
    }
    int maxn = cfg.n >= 0 ? cfg.n : 2;
    for (int n = 0; n <= maxn && n <= 2; ++n) {
        SL2Triple triple = sl2_assign(n);
        Signature jsig = tkk_jside_signature(n);
        PoissonStructure ps =
            make_poisson_structure(BracketKind{BracketKind::kbracket_tag, jsig});
        auto elems = detail_suite::kkm_monomials(jsig, cfg.max_tdeg);
        std::size_t m = elems.size();
        detail_suite::parallel_checks(rep, m * m, cfg, [&](std::size_t idx) {
            const KKMElem &x = elems[idx / m], &y = elems[idx % m];
            SPoly r = tkk_product_residual(x, y, n, triple, ps);
            return CheckEntry{"tkk/" + std::to_string(n) + "/product",
                              "x=" + kkm_str(x) + ",y=" + kkm_str(y), r.is_zero(),
                              r.is_zero() ? "" : spoly_str(r)};
        });
        if (cfg.fail_fast && rep.failures()) return;
    }
}

inline void suite_bridge(VerificationReport& rep, const SuiteConfig& cfg) {
    // the convention-pinning example runs (and sorts) first
    {
        auto j0 = build_jn(0);
        auto real = jn_realization(j0, 0);
        const int minus = jn_minus(0, 0);
        KKMElem lhs = real.mul(real.coef(minus, 1), real.coef(minus, 0));
        bool lhs_ok = lhs == KKMElem::plain(SPoly::scalar(k_signature(0), FieldElem(-1)));
        KKMElem res = bridge_residual(real, minus, minus, 1, 0);
        bool ok = lhs_ok && res.is_zero();
        rep.add("bridge/00-pin", "J0: (t th)(th) = -1 and the m=1,k=0 bridge", ok,
                ok ? ""
                   : "convention diagnosis: D = {.,1}, x_(j)y = j! c_j, coef_k(dx) = -k "
                     "coef_{k-1}(x) are jointly violated; lhs = " +
                         kkm_str(lhs));
        if (!ok && cfg.fail_fast) return;
    }
    int maxn = cfg.n >= 0 ? std::min(cfg.n, 2) : 2;
    for (int n = 0; n <= maxn; ++n) {
        auto jn = build_jn(n);
        auto real = jn_realization(jn, n);
        long window = cfg.tmax - cfg.tmin + 1;
        std::size_t count = static_cast<std::size_t>(jn->rank) * jn->rank * window * window;
        detail_suite::parallel_checks(rep, count, cfg, [&](std::size_t idx) {
            int i = static_cast<int>(idx / (jn->rank * window * window));
            int j = static_cast<int>(idx / (window * window) % jn->rank);
            long m = cfg.tmin + static_cast<long>(idx / window % window);
            long k = cfg.tmin + static_cast<long>(idx % window);
            KKMElem r = bridge_residual(real, i, j, m, k);
            return CheckEntry{"bridge/jn" + std::to_string(n),
                              "x=" + jn->basis_names[i] + ",y=" + jn->basis_names[j] + ",m=" +
                                  std::to_string(m) + ",k=" + std::to_string(k),
                              r.is_zero(), r.is_zero() ? "" : kkm_str(r)};
        });
        if (cfg.fail_fast && rep.failures()) return;
    }
    {
        auto js1 = build_js1();
        auto real = js1_realization(js1);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (long m = cfg.tmin; m <= cfg.tmax; ++m)
                    for (long k = cfg.tmin; k <= cfg.tmax; ++k) {
                        SPoly r = bridge_residual(real, i, j, m, k);
                        rep.add("bridge/js1",
                                "x=" + js1->basis_names[i] + ",y=" + js1->basis_names[j] +
                                    ",m=" + std::to_string(m) + ",k=" + std::to_string(k),
                                r.is_zero(), r.is_zero() ? "" : spoly_str(r));
                    }
    }
    {
        auto fin = std::make_shared<FinAlg>();
        fin->name = "Gr1";
        fin->rank = 2;
        fin->parity = {0, 1};
        fin->names = {"1", "z"};
        auto zero = std::vector<FieldElem>(2, FieldElem(0));
        fin->c.assign(2, std::vector<std::vector<FieldElem>>(2, zero));
        fin->c[0][0][0] = FieldElem(1);
        fin->c[0][1][1] = FieldElem(1);
        fin->c[1][0][1] = FieldElem(1);
        auto calg = cur(*fin, Variety::associative);
        auto real = cur_realization(calg, fin);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (long m = cfg.tmin; m <= cfg.tmax; ++m)
                    for (long k = cfg.tmin; k <= cfg.tmax; ++k) {
                        CurCoef r = bridge_residual(real, i, j, m, k);
                        rep.add("bridge/cur",
                                "x=" + calg->basis_names[i] + ",y=" + calg->basis_names[j] +
                                    ",m=" + std::to_string(m) + ",k=" + std::to_string(k),
                                r.is_zero(), r.is_zero() ? "" : cur_str(r));
                    }
    }
    // the J-style K_n presentation against the kbracket coefficients
    for (int n = 0; n <= 2; ++n) {
        auto kj = build_kn_jstyle(n);
        auto real = kn_jstyle_realization(kj, n);
        for (int i = 0; i < kj->rank; ++i)
            for (int j = 0; j < kj->rank; ++j)
                for (long m = -2; m <= 2; ++m)
                    for (long k = -2; k <= 2; ++k) {
                        SPoly r = bridge_residual(real, i, j, m, k);
                        rep.add("bridge/kstyle" + std::to_string(n),
                                "x=" + kj->basis_names[i] + ",y=" + kj->basis_names[j] + ",m=" +
                                    std::to_string(m) + ",k=" + std::to_string(k),
                                r.is_zero(), r.is_zero() ? "" : spoly_str(r));
                    }
    }
    // d-compatibility of every registered realization
    for (int n = 0; n <= 1; ++n) {
        auto jn = build_jn(n);
        auto real = jn_realization(jn, n);
        for (int idx = 0; idx < jn->rank; ++idx)
            for (long k = -3; k <= 3; ++k) {
                KKMElem lhs = coef_of(real, basis_elem(jn.get(), idx, DPoly::d_power(1)), k);
                KKMElem rhs = FieldElem(Rat(-k)) * real.coef(idx, k - 1);
                rep.add("bridge/dcompat-jn" + std::to_string(n),
                        "x=" + jn->basis_names[idx] + ",k=" + std::to_string(k), lhs == rhs);
            }
    }
}

inline void suite_derivations(VerificationReport& rep, const SuiteConfig& cfg) {
    // d_theta, a*d_theta and d/dt on K(P(1,n))
    for (int n = 1; n <= 2; ++n) {
        PoissonStructure ps = make_poisson_structure(kbracket_kind(n));
        auto mul = [&](const KKMElem& x, const KKMElem& y) { return kkm_mul(x, y, ps); };
        std::vector<std::pair<std::string, KKMElem>> span;
        for (auto& x : detail_suite::kkm_monomials(ps.sig, n == 1 ? cfg.max_tdeg : 1))
            span.emplace_back(kkm_str(x), x);
        std::string prefix = "derivations/" + std::to_string(n);
        std::function<KKMElem(const KKMElem&)> dtheta = [](const KKMElem& x) {
            return kkm_dtheta(x);
        };
        is_derivation<KKMElem>(rep, prefix + "/dtheta", 1, dtheta, mul, detail_suite::kkm_par,
                               span, [](const KKMElem& r) { return kkm_str(r); });
        SPoly t = SPoly::monomial(ps.sig, std::vector<int>(ps.sig.m, 1), 0);
        SPoly xi = SPoly::monomial(ps.sig, std::vector<int>(ps.sig.m, 0), 1);
        std::function<KKMElem(const KKMElem&)> tdt = [t](const KKMElem& x) {
            return kkm_a_dtheta(t, x);
        };
        std::function<KKMElem(const KKMElem&)> xidt = [xi](const KKMElem& x) {
            return kkm_a_dtheta(xi, x);
        };
        is_derivation<KKMElem>(rep, prefix + "/t*dtheta", 1, tdt, mul, detail_suite::kkm_par,
                               span, [](const KKMElem& r) { return kkm_str(r); });
        is_derivation<KKMElem>(rep, prefix + "/xi*dtheta", 0, xidt, mul, detail_suite::kkm_par,
                               span, [](const KKMElem& r) { return kkm_str(r); });
        std::function<KKMElem(const KKMElem&)> ddt = [](const KKMElem& x) {
            return KKMElem(partial(even_var(0), x.a), partial(even_var(0), x.b));
        };
        is_derivation<KKMElem>(rep, prefix + "/d-dt", 0, ddt, mul, detail_suite::kkm_par, span,
                               [](const KKMElem& r) { return kkm_str(r); });
        if (cfg.fail_fast && rep.failures()) return;
    }
    // the example K(F + F xi), delta(theta) = theta, delta(xi) = -xi
    {
        PoissonStructure ps;
        ps.sig = p_signature(0, 1);
        Signature sig = ps.sig;
        ps.bracket = [sig](const SPoly& a, const SPoly& b) {
            FieldElem ca, cb;
            for (const auto& [m, c] : a.terms())
                if (m.mask == 1) ca = c;
            for (const auto& [m, c] : b.terms())
                if (m.mask == 1) cb = c;
            return SPoly::scalar(sig, ca * cb);
        };
        ps.D = [sig](const SPoly&) { return SPoly::zero(sig); };
        auto mul = [&](const KKMElem& x, const KKMElem& y) { return kkm_mul(x, y, ps); };
        SPoly one = SPoly::scalar(sig, FieldElem(1));
        SPoly xi = SPoly::monomial(sig, {}, 1);
        std::vector<std::pair<std::string, KKMElem>> span{
            {"1", KKMElem::plain(one)},
            {"xi", KKMElem::plain(xi)},
            {"theta", KKMElem::theta_part(one)},
            {"xi*theta", KKMElem::theta_part(xi)}};
        std::function<KKMElem(const KKMElem&)> delta = [sig](const KKMElem& x) {
            KKMElem out(SPoly::zero(sig), SPoly::zero(sig));
            for (const auto& [m, c] : x.a.terms())
                if (m.mask == 1) out.a.add_term(m, -c);
            for (const auto& [m, c] : x.b.terms())
                if (m.mask == 0) out.b.add_term(m, c);
            return out;
        };
        is_derivation<KKMElem>(rep, "derivations/fxi-example", 0, delta, mul,
                               detail_suite::kkm_par, span,
                               [](const KKMElem& r) { return kkm_str(r); });
    }
    // d/dt on js(1,1)
    {
        Signature sig = js11_signature();
        auto mul = [](const SPoly& a, const SPoly& b) { return js11_mul(a, b); };
        auto par = [](const SPoly& a) { return js11_parity(a); };
        std::vector<std::pair<std::string, SPoly>> span;
        for (int t = 0; t <= 3; ++t)
            for (std::uint32_t mask = 0; mask < 2; ++mask) {
                SPoly x = SPoly::monomial(sig, {t}, mask);
                span.emplace_back(spoly_str(x), x);
            }
        std::function<SPoly(const SPoly&)> ddt = [](const SPoly& f) {
            return partial(even_var(0), f);
        };
        is_derivation<SPoly>(rep, "derivations/js11-d-dt", 0, ddt, mul, par, span,
                             [](const SPoly& r) { return spoly_str(r); });
    }
}

inline void suite_mutation(VerificationReport& rep, const SuiteConfig& cfg) {
    (void)cfg;
    // 1. sign flip in the JS_1 table breaks conformal commutativity
    {
        auto bad = build_js1();
        bad->table[1][0] = -bad->table[1][0];
        bool detected = false;
        for (int i = 0; i < 2 && !detected; ++i)
            for (int j = 0; j < 2 && !detected; ++j)
                if (!comm_residual_conf(basis_elem(bad.get(), i), basis_elem(bad.get(), j), +1)
                         .is_zero())
                    detected = true;
        rep.add("mutation/js1-comm-flip", "negated T_l S entry", detected);
    }
    // 2. negated lambda coefficient of 1- 1- in J_1 breaks the Jordan identity
    {
        auto bad = build_jn(1);
        int mm = jn_minus(1, 0);
        FormalPoly e = bad->table[mm][mm];
        VKey l = vkey_zero();
        l[L1] = 1;
        FormalPoly fixed(bad.get());
        for (const auto& [k, c] : e.terms) fixed.add_term(k, k == l ? -c : c);
        bad->table[mm][mm] = fixed;
        bool detected = false;
        for (int a = 0; a < 4 && !detected; ++a)
            for (int b = 0; b < 4 && !detected; ++b)
                for (int c = 0; c < 4 && !detected; ++c)
                    for (int d = 0; d < 4 && !detected; ++d)
                        if (!conformal_jordan_residual(
                                 basis_elem(bad.get(), a), basis_elem(bad.get(), b),
                                 basis_elem(bad.get(), c), basis_elem(bad.get(), d))
                                 .is_zero())
                            detected = true;
        rep.add("mutation/j1-lambda-flip", "negated l-coefficient of 1- 1-", detected);
    }
    // 3. symmetric defect {f,g} + fg breaks Jordan-bracket axiom (i)
    {
        BracketKind kb = kbracket_kind(1);
        BracketFn bad = [&](const SPoly& a, const SPoly& b) { return kbracket(a, b) + smul(a, b); };
        UnaryFn D = [&](const SPoly& a) { return bracket_derivation(a, kb); };
        SPoly t = SPoly::monomial(kb.sig, {1}, 0);
        SPoly xi = SPoly::monomial(kb.sig, {0}, 1);
        auto res = jordan_bracket_axiom_residuals(t, t, xi, bad, D);
        rep.add("mutation/bracket-symmetric-defect", "kbracket + fg on (t,t,xi)",
                !res[0].is_zero());
    }
    // 4. a d_x1(b) + d_x1(a) b on /\(0,2) fails the linearized Jordan identity
    {
        Signature sig = p_signature(0, 2);
        auto bad = [](const SPoly& a, const SPoly& b) {
            return smul(a, partial(odd_var(1), b)) + smul(partial(odd_var(1), a), b);
        };
        auto par = [](const SPoly& a) { return *a.parity(); };
        bool detected = false;
        std::vector<SPoly> monos;
        for (std::uint32_t mask = 0; mask < 4; ++mask)
            monos.push_back(SPoly::monomial(sig, {}, mask));
        for (const auto& a : monos)
            for (const auto& b : monos)
                for (const auto& c : monos)
                    for (const auto& d : monos)
                        if (!lin_jordan_residual(a, b, c, d, bad, par).is_zero()) detected = true;
        rep.add("mutation/grassmann-defect-product", "a d1(b) + d1(a) b on /\\(0,2)", detected);
    }
    // 5. embedding typo xi_{n+3} -> xi_{n+2}
    {
        int n = 1;
        SL2Triple triple = sl2_assign(n);
        Signature jsig = tkk_jside_signature(n);
        PoissonStructure ps =
            make_poisson_structure(BracketKind{BracketKind::kbracket_tag, jsig});
        Signature amb = tkk_ambient(n);
        auto bad_embed = [&](const KKMElem& x) {
            std::uint32_t b1 = 1u << n, b2 = 1u << (n + 1);
            SPoly out(amb);
            for (const auto& [m, c] : x.a.terms())
                out +=
                    smul(SPoly::monomial(amb, m.even, m.mask, c), SPoly::monomial(amb, {0}, b1 | b2));
            for (const auto& [m, c] : x.b.terms())
                out += smul(SPoly::monomial(amb, m.even, m.mask, FieldElem::alpha() * c),
                            SPoly::monomial(amb, {0}, b2));
            return out;
        };
        bool detected = false;
        for (auto& mon : detail_suite::kkm_monomials(jsig, 1)) {
            for (auto& mon2 : detail_suite::kkm_monomials(jsig, 1)) {
                SPoly lhs = kbracket(kbracket(bad_embed(mon), triple.e), bad_embed(mon2));
                SPoly rhs = bad_embed(kkm_mul(mon, mon2, ps));
                if (!(lhs - rhs).is_zero()) detected = true;
            }
        }
        rep.add("mutation/tkk-embedding-typo", "xi_{n+3} -> xi_{n+2}", detected);
    }
    // 6. anti-commutative non-Lie table: Jacobi catches it through Cur
    {
        FinAlg badf;
        badf.name = "nonlie";
        badf.rank = 3;
        badf.parity = {0, 0, 0};
        badf.names = {"e1", "e2", "e3"};
        auto zero = std::vector<FieldElem>(3, FieldElem(0));
        badf.c.assign(3, std::vector<std::vector<FieldElem>>(3, zero));
        badf.c[0][1][0] = FieldElem(1);
        badf.c[1][0][0] = FieldElem(-1);
        badf.c[1][2][1] = FieldElem(1);
        badf.c[2][1][1] = FieldElem(-1);
        auto cb = cur(badf, Variety::lie);
        bool detected = false;
        for (int i = 0; i < 3 && !detected; ++i)
            for (int j = 0; j < 3 && !detected; ++j)
                for (int k = 0; k < 3 && !detected; ++k)
                    if (!jacobi_residual(basis_elem(cb.get(), i), basis_elem(cb.get(), j),
                                         basis_elem(cb.get(), k))
                             .is_zero())
                        detected = true;
        rep.add("mutation/cur-nonlie", "[e1,e2]=e1, [e2,e3]=e2", detected);
    }
    // 7. non-associative base detected through Cur
    {
        FinAlg na;
        na.name = "nonassoc";
        na.rank = 2;
        na.parity = {0, 0};
        na.names = {"u", "v"};
        auto zero = std::vector<FieldElem>(2, FieldElem(0));
        na.c.assign(2, std::vector<std::vector<FieldElem>>(2, zero));
        na.c[0][0][1] = FieldElem(1);
        na.c[1][0][0] = FieldElem(1);
        auto cn = cur(na);
        bool detected = !assoc_residual(basis_elem(cn.get(), 0), basis_elem(cn.get(), 0),
                                        basis_elem(cn.get(), 0))
                             .is_zero();
        rep.add("mutation/cur-nonassoc", "u u = v, v u = u", detected);
    }
    // 8. wrong pairing weight in the K_2 display breaks Jacobi
    {
        auto bad = build_kn(2);
        // rescale the pairing part: [w1 w1] = -1/2 becomes -1
        for (std::uint32_t A = 0; A < 4; ++A)
            for (std::uint32_t B = 0; B < 4; ++B) {
                Signature aux = kn_aux_signature(2);
                SPoly pair = odd_pairing_term(SPoly::monomial(aux, {}, A),
                                              SPoly::monomial(aux, {}, B));
                if (pair.is_zero()) continue;
                int r = std::popcount(A);
                FieldElem half(Rat(1, 2));
                CElem extra = (sign_pow(r) * half) *
                              spoly_to_celem(bad.get(), pair,
                                             [](std::uint32_t m) { return static_cast<int>(m); });
                FormalPoly e = bad->table[A][B];
                e.add_term(vkey_zero(), extra);
                bad->table[A][B] = e;
            }
        bool detected = false;
        for (int a = 0; a < 4 && !detected; ++a)
            for (int b = 0; b < 4 && !detected; ++b)
                for (int c = 0; c < 4 && !detected; ++c)
                    if (!jacobi_residual(basis_elem(bad.get(), a), basis_elem(bad.get(), b),
                                         basis_elem(bad.get(), c))
                             .is_zero())
                        detected = true;
        rep.add("mutation/kn-pairing-weight", "K_2 pairing 1 instead of 1/2", detected);
    }
}

// --- the driver -----------------------------------------------------------

inline VerificationReport run_suite(const std::string& name, const SuiteConfig& cfg) {
    if (cfg.tmin > cfg.tmax || cfg.max_tdeg < 0)
        throw std::invalid_argument("run_suite: invalid config");
    using SuiteFn = void (*)(VerificationReport&, const SuiteConfig&);
    static const std::vector<std::pair<std::string, SuiteFn>> suites = {
        {"brackets", suite_brackets}, {"kkm", suite_kkm},
        {"jn", suite_jn},             {"js1", suite_js1},
        {"kn", suite_kn},             {"ck6", suite_ck6},
        {"jck4", suite_jck4},         {"tkk", suite_tkk},
        {"bridge", suite_bridge},     {"derivations", suite_derivations},
        {"mutation", suite_mutation},
    };
    auto t0 = std::chrono::steady_clock::now();
    VerificationReport rep;
    rep.suite = name;
    rep.config = cfg.echo();
    if (name == "all") {
        for (const auto& [nm, fn] : suites) {
            VerificationReport sub;
            sub.suite = nm;
            fn(sub, cfg);
            rep.merge(sub);
            if (cfg.fail_fast && rep.failures()) break;
        }
    } else {
        bool found = false;
        for (const auto& [nm, fn] : suites)
            if (nm == name) {
                fn(rep, cfg);
                found = true;
                break;
            }
        if (!found) throw std::invalid_argument("run_suite: unknown suite '" + name + "'");
    }
    rep.sort_entries();
    rep.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    return rep;
}

} // namespace jcs
