#include "jcs/field.hpp"
#include "jcs/spoly.hpp"

#include "test_util.hpp"

#include <catch_amalgamated.hpp>

using namespace jcs;
using jcs::testutil::Rng;

namespace {

FieldElem random_field_elem(Rng& rng) {
    auto small = [&] { return Rat(rng.below(19) - 9, 1 + rng.below(4)); };
    return FieldElem(small(), small());
}

} // namespace

TEST_CASE("Rat stays in canonical reduced form") {
    Rat r = Rat(6) / Rat(-4);
    CHECK(numerator(r) == -3);
    CHECK(denominator(r) == 2);
    CHECK(rat_str(r) == "-3/2");
    CHECK(rat_binom(-1, 3) == Rat(-1));
    CHECK(rat_binom(4, 2) == Rat(6));
    CHECK(rat_binom(0, 1) == Rat(0));
}

TEST_CASE("field constants satisfy the defining relations") {
    FieldElem eps = FieldElem::eps();
    FieldElem alpha = FieldElem(2) * eps * eps;
    CHECK(alpha == FieldElem::alpha());
    CHECK(alpha * alpha == FieldElem(-1));
    CHECK(eps * eps == alpha * FieldElem(Rat(1, 2)));
    // eps^4 + 1/4 = 0
    FieldElem e4 = eps * eps * eps * eps;
    CHECK(e4 + FieldElem(Rat(1, 4)) == FieldElem(0));
}

TEST_CASE("eps-component constructor reduces correctly") {
    // 1*eps^2 = alpha/2
    CHECK(FieldElem::from_eps_components(0, 0, 1, 0) ==
          FieldElem::alpha() * FieldElem(Rat(1, 2)));
    // rationals embed with c1=c2=c3=0
    CHECK(FieldElem::from_eps_components(Rat(-7, 3), 0, 0, 0) == FieldElem(Rat(-7, 3)));
    // eps^3 = eps * eps^2
    CHECK(FieldElem::from_eps_components(0, 0, 0, 1) ==
          FieldElem::eps() * FieldElem::eps() * FieldElem::eps());
}

TEST_CASE("every nonzero element is invertible") {
    Rng rng(42);
    for (int i = 0; i < 200; ++i) {
        FieldElem x = random_field_elem(rng);
        if (x.is_zero()) continue;
        CHECK(x * x.inv() == FieldElem(1));
    }
    CHECK_THROWS_AS(FieldElem(0).inv(), std::domain_error);
}

TEST_CASE("field distributivity on random triples") {
    Rng rng(7);
    for (int i = 0; i < 100; ++i) {
        FieldElem a = random_field_elem(rng), b = random_field_elem(rng),
                  c = random_field_elem(rng);
        CHECK((a + b) * c == a * c + b * c);
    }
}

TEST_CASE("smul examples") {
    Signature sig = p_signature(0, 2);
    SPoly x1 = SPoly::monomial(sig, {}, 0b01);
    SPoly x2 = SPoly::monomial(sig, {}, 0b10);
    SPoly x12 = SPoly::monomial(sig, {}, 0b11);
    CHECK(smul(x1, x2) == x12);
    CHECK(smul(x2, x1) == -x12);
    CHECK(smul(x1, x1).is_zero());

    Signature lt = k_signature(0);
    SPoly t2 = SPoly::monomial(lt, {2}, 0);
    SPoly tm3 = SPoly::monomial(lt, {-3}, 0);
    CHECK(smul(t2, tm3) == SPoly::monomial(lt, {-1}, 0));

    CHECK_THROWS_AS(smul(x1, t2), std::invalid_argument);
}

TEST_CASE("left partial derivatives") {
    Signature sig = p_signature(0, 2);
    SPoly x12 = SPoly::monomial(sig, {}, 0b11);
    CHECK(partial(odd_var(1), x12) == SPoly::monomial(sig, {}, 0b10));
    CHECK(partial(odd_var(2), x12) == -SPoly::monomial(sig, {}, 0b01));

    Signature lt = k_signature(0);
    SPoly tm1 = SPoly::monomial(lt, {-1}, 0);
    CHECK(partial(even_var(0), tm1) == FieldElem(-1) * SPoly::monomial(lt, {-2}, 0));

    CHECK_THROWS_AS(partial(odd_var(3), x12), std::invalid_argument);
}

TEST_CASE("euler operator counts p,q,xi but not t") {
    Signature pq = p_signature(1, 0);
    SPoly p1q1 = SPoly::monomial(pq, {1, 1}, 0);
    CHECK(euler(p1q1) == FieldElem(2) * p1q1);

    Signature lt = k_signature(1);
    SPoly xi = SPoly::monomial(lt, {0}, 1);
    CHECK(euler(xi) == xi);
    SPoly t3 = SPoly::monomial(lt, {3}, 0);
    CHECK(euler(t3).is_zero());
}

TEST_CASE("smul associativity and supercommutativity on enumerated monomials") {
    Signature sig = k_signature(2);
    auto monos = testutil::enumerate_monomials(sig, {-1, 0, 2});
    for (const auto& f : monos)
        for (const auto& g : monos) {
            int pf = *f.parity(), pg = *g.parity();
            SPoly fg = smul(f, g);
            SPoly gf = smul(g, f);
            CHECK(fg == sign_pow(pf * pg) * gf);
        }
    // associativity on a subsample of triples
    for (std::size_t i = 0; i < monos.size(); i += 3)
        for (std::size_t j = 1; j < monos.size(); j += 4)
            for (std::size_t k = 2; k < monos.size(); k += 5) {
                const SPoly &f = monos[i], &g = monos[j], &h = monos[k];
                CHECK(smul(smul(f, g), h) == smul(f, smul(g, h)));
            }
}

TEST_CASE("odd partials are odd superderivations") {
    Signature sig = p_signature(0, 3);
    auto monos = testutil::enumerate_monomials(sig, {});
    for (const auto& f : monos)
        for (const auto& g : monos) {
            int pf = *f.parity();
            for (int v = 1; v <= 3; ++v) {
                SPoly lhs = partial(odd_var(v), smul(f, g));
                SPoly rhs = smul(partial(odd_var(v), f), g) +
                            sign_pow(pf) * smul(f, partial(odd_var(v), g));
                CHECK(lhs == rhs);
            }
        }
}

TEST_CASE("canonical rendering") {
    Signature sig = k_signature(2);
    SPoly f = SPoly::monomial(sig, {-1}, 0b11, FieldElem(-2));
    f += SPoly::monomial(sig, {0}, 0b10, FieldElem(Rat(1, 2), Rat(1, 2)));
    CHECK(spoly_str(f) == "(-2)*t^-1*x1*x2 + (1/2+1/2i)*x2");
    CHECK(spoly_str(SPoly::zero(sig)) == "0");
    CHECK(spoly_str(SPoly::scalar(sig, FieldElem(1))) == "(1)*1");
}
