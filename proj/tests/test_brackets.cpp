#include "jcs/brackets.hpp"

#include "test_util.hpp"

#include <catch_amalgamated.hpp>

using namespace jcs;

namespace {

SPoly mono(const Signature& sig, std::vector<int> e, std::uint32_t mask) {
    return SPoly::monomial(sig, std::move(e), mask);
}

} // namespace

TEST_CASE("pbracket hand-checked values") {
    Signature pq = p_signature(1, 0);
    SPoly p1 = mono(pq, {1, 0}, 0);
    SPoly q1 = mono(pq, {0, 1}, 0);
    CHECK(pbracket(p1, q1) == SPoly::scalar(pq, FieldElem(1)));
    CHECK(pbracket(q1, p1) == SPoly::scalar(pq, FieldElem(-1)));

    Signature gx = p_signature(0, 2);
    SPoly x1 = mono(gx, {}, 0b01), x2 = mono(gx, {}, 0b10);
    CHECK(pbracket(x1, x2) == SPoly::scalar(gx, FieldElem(-1)));

    SPoly one = SPoly::scalar(gx, FieldElem(1));
    for (const auto& f : testutil::enumerate_monomials(gx, {}))
        CHECK(pbracket(one, f).is_zero());
}

TEST_CASE("kbracket hand-checked values") {
    Signature k0 = k_signature(0);
    SPoly one = SPoly::scalar(k0, FieldElem(1));
    SPoly t = mono(k0, {1}, 0);
    CHECK(kbracket(one, t) == FieldElem(2) * one);
    CHECK(kbracket(t, one) == FieldElem(-2) * one);

    Signature k2 = k_signature(2);
    SPoly x1 = mono(k2, {0}, 0b01), x2 = mono(k2, {0}, 0b10);
    CHECK(kbracket(x1, x2) == SPoly::scalar(k2, FieldElem(-1)));
}

TEST_CASE("bracket_derivation D = {., 1}") {
    BracketKind kb = kbracket_kind(0);
    Signature k0 = kb.sig;
    SPoly t = mono(k0, {1}, 0);
    SPoly t2 = mono(k0, {2}, 0);
    CHECK(bracket_derivation(t, kb) == SPoly::scalar(k0, FieldElem(-2)));
    CHECK(bracket_derivation(t2, kb) == FieldElem(-4) * t);

    // kbracket with m=1: D(f) = -2 df/dt on every enumerated monomial
    Signature k2 = k_signature(2);
    BracketKind kb2 = kbracket_kind(2);
    for (const auto& f : testutil::enumerate_monomials(k2, {-2, -1, 0, 1, 2}))
        CHECK(bracket_derivation(f, kb2) == FieldElem(-2) * partial(even_var(0), f));

    BracketKind pb = pbracket_kind(1, 1);
    for (const auto& f : testutil::enumerate_monomials(pb.sig, {0, 1}))
        CHECK(bracket_derivation(f, pb).is_zero());
}

TEST_CASE("jordan_bracket_D values") {
    BracketKind kb = kbracket_kind(0);
    SPoly one = SPoly::scalar(kb.sig, FieldElem(1));
    SPoly t = mono(kb.sig, {1}, 0);
    CHECK(jordan_bracket_D(t, one, kb) == FieldElem(-1) * one);
    CHECK(jordan_bracket_D(one, one, kb).is_zero());

    BracketKind pb = pbracket_kind(1, 0);
    for (const auto& f : testutil::enumerate_monomials(pb.sig, {0, 1}))
        for (const auto& g : testutil::enumerate_monomials(pb.sig, {0, 1}))
            CHECK(jordan_bracket_D(f, g, pb) == pbracket(f, g));
}

TEST_CASE("super anti-symmetry of both brackets") {
    BracketKind kb = kbracket_kind(3);
    auto kmonos = testutil::enumerate_monomials(kb.sig, {0, 1, 2, 3});
    BracketFn kf = [&](const SPoly& a, const SPoly& b) { return kbracket(a, b); };
    for (const auto& f : kmonos)
        for (const auto& g : kmonos) CHECK(antisym_residual(f, g, kf).is_zero());

    BracketKind pb = pbracket_kind(1, 2);
    auto pmonos = testutil::enumerate_monomials(pb.sig, {0, 1});
    BracketFn pf = [&](const SPoly& a, const SPoly& b) { return pbracket(a, b); };
    for (const auto& f : pmonos)
        for (const auto& g : pmonos) CHECK(antisym_residual(f, g, pf).is_zero());
}

TEST_CASE("kbracket generalized Leibniz law with D = {., 1}") {
    BracketKind kb = kbracket_kind(3);
    auto monos = testutil::enumerate_monomials(kb.sig, {0, 1, 2, 3});
    BracketFn br = [&](const SPoly& a, const SPoly& b) { return kbracket(a, b); };
    UnaryFn D = [&](const SPoly& a) { return bracket_derivation(a, kb); };
    std::size_t idx = 0;
    for (const auto& a : monos)
        for (const auto& b : monos) {
            // thin the cube to keep runtime modest; every (a,b) pair appears
            const SPoly& c = monos[idx++ % monos.size()];
            CHECK(leibniz_residual(a, b, c, br, D).is_zero());
        }
    // D is itself a derivation of the commutative product
    for (const auto& b : monos)
        for (const auto& c : monos)
            CHECK((D(smul(b, c)) - smul(D(b), c) - smul(b, D(c))).is_zero());
}

TEST_CASE("Jacobi identity for pbracket and kbracket") {
    BracketKind pb = pbracket_kind(1, 1);
    auto pmonos = testutil::enumerate_monomials(pb.sig, {0, 1});
    BracketFn pf = [&](const SPoly& a, const SPoly& b) { return pbracket(a, b); };
    for (const auto& a : pmonos)
        for (const auto& b : pmonos)
            for (const auto& c : pmonos) CHECK(bracket_jacobi_residual(a, b, c, pf).is_zero());

    BracketKind kb = kbracket_kind(2);
    auto kmonos = testutil::enumerate_monomials(kb.sig, {0, 1, 2});
    BracketFn kf = [&](const SPoly& a, const SPoly& b) { return kbracket(a, b); };
    for (const auto& a : kmonos)
        for (const auto& b : kmonos)
            for (const auto& c : kmonos) CHECK(bracket_jacobi_residual(a, b, c, kf).is_zero());
}

TEST_CASE("Jordan bracket axioms hold for {., .}_D with derivation D/2") {
    BracketKind kb = kbracket_kind(2);
    auto monos = testutil::enumerate_monomials(kb.sig, {0, 1, 2});
    BracketFn jb = [&](const SPoly& a, const SPoly& b) { return jordan_bracket_D(a, b, kb); };
    UnaryFn half_D = [&](const SPoly& a) {
        return FieldElem(Rat(1, 2)) * bracket_derivation(a, kb);
    };
    std::size_t idx = 0;
    for (const auto& a : monos)
        for (const auto& b : monos) {
            const SPoly& c = monos[(idx += 7) % monos.size()];
            auto res = jordan_bracket_axiom_residuals(a, b, c, jb, half_D);
            CHECK(res[0].is_zero());
            CHECK(res[1].is_zero());
            CHECK(res[2].is_zero());
        }

    // ordinary Poisson bracket: Jordan with D = 0
    BracketKind pb = pbracket_kind(1, 0);
    SPoly p1 = mono(pb.sig, {1, 0}, 0), q1 = mono(pb.sig, {0, 1}, 0);
    SPoly p1q1 = mono(pb.sig, {1, 1}, 0);
    BracketFn pf = [&](const SPoly& a, const SPoly& b) { return pbracket(a, b); };
    UnaryFn zero = [&](const SPoly& a) { return SPoly::zero(a.sig()); };
    auto res = jordan_bracket_axiom_residuals(p1, q1, p1q1, pf, zero);
    CHECK(res[0].is_zero());
    CHECK(res[1].is_zero());
    CHECK(res[2].is_zero());
}

TEST_CASE("planted symmetric defect breaks axiom (i)") {
    BracketKind kb = kbracket_kind(1);
    BracketFn bad = [&](const SPoly& a, const SPoly& b) { return kbracket(a, b) + smul(a, b); };
    UnaryFn D = [&](const SPoly& a) { return bracket_derivation(a, kb); };
    SPoly t = mono(kb.sig, {1}, 0);
    SPoly xi = mono(kb.sig, {0}, 1);
    auto res = jordan_bracket_axiom_residuals(t, t, xi, bad, D);
    CHECK(!res[0].is_zero());
}

TEST_CASE("wrong signature parity is rejected") {
    Signature k0 = k_signature(0);
    SPoly t = mono(k0, {1}, 0);
    CHECK_THROWS_AS(pbracket(t, t), std::invalid_argument);
    Signature pq = p_signature(1, 0);
    SPoly p1 = mono(pq, {1, 0}, 0);
    CHECK_THROWS_AS(kbracket(p1, p1), std::invalid_argument);
}
