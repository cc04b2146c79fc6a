#include "doctest.h"
#include "helpers.hpp"

#include "abeltrace/errors.hpp"
#include "abeltrace/multipoly.hpp"

using namespace abeltrace;
using testutil::from_terms;

TEST_CASE("poly_eval matches hand expansion") {
    const MultiPoly p = from_terms(2, {{{1, 1}, 1.0}, {{0, 0}, 1.0}});
    CHECK(std::abs(poly_eval(p, CVec{2.0, 3.0}) - cplx(7.0)) < 1e-15);

    CHECK(poly_eval(MultiPoly::zero(3), CVec{1.0, 2.0, 3.0}) == cplx(0.0));

    const MultiPoly circle = from_terms(2, {{{2, 0}, 1.0}, {{0, 2}, 1.0}, {{0, 0}, -1.0}});
    CHECK(std::abs(poly_eval(circle, CVec{0.6, 0.8})) < 1e-15);
}

TEST_CASE("arithmetic keeps term invariants") {
    const MultiPoly x1 = MultiPoly::variable(2, 0);
    const MultiPoly x2 = MultiPoly::variable(2, 1);

    MultiPoly p = x1 * x2 + MultiPoly::constant(2, 1.0);
    MultiPoly q = p - p;
    CHECK(q.is_zero());
    CHECK(q.terms().empty());

    // cancellation must not leave a zero-coefficient term behind
    MultiPoly r = (x1 + x2) * (x1 - x2);
    CHECK(r.coefficient({1, 1}) == cplx(0.0));
    CHECK(r.terms().size() == 2);
    CHECK(r.total_degree() == 2);
    CHECK(r.degree_in(0) == 2);
    CHECK(r.degree_in(1) == 2);
    CHECK(MultiPoly::zero(2).total_degree() == -1);
}

TEST_CASE("poly_diff on the stated examples") {
    const MultiPoly p = from_terms(2, {{{2, 1}, 1.0}});
    const MultiPoly d = poly_diff(p, 0);
    CHECK(d.terms().size() == 1);
    CHECK(std::abs(d.coefficient({1, 1}) - cplx(2.0)) < 1e-15);

    CHECK(poly_diff(from_terms(2, {{{2, 0}, 1.0}}), 1).is_zero());

    const MultiPoly circle = from_terms(2, {{{2, 0}, 1.0}, {{0, 2}, 1.0}, {{0, 0}, -1.0}});
    const MultiPoly dc = poly_diff(circle, 0);
    CHECK(std::abs(dc.coefficient({1, 0}) - cplx(2.0)) < 1e-15);
    CHECK(dc.terms().size() == 1);
}

TEST_CASE("poly_compose substitutes polynomials for variables") {
    // p(x1,x2) = x1^2 + x2, substitute x1 = t+1, x2 = t  ->  t^2 + 3t + 1
    const MultiPoly p = from_terms(2, {{{2, 0}, 1.0}, {{0, 1}, 1.0}});
    const MultiPoly t = MultiPoly::variable(1, 0);
    const MultiPoly got = poly_compose(p, {t + MultiPoly::constant(1, 1.0), t});
    CHECK(std::abs(got.coefficient({2}) - cplx(1.0)) < 1e-14);
    CHECK(std::abs(got.coefficient({1}) - cplx(3.0)) < 1e-14);
    CHECK(std::abs(got.coefficient({0}) - cplx(1.0)) < 1e-14);
}

TEST_CASE("series_inverse inverts unit series up to truncation") {
    // 1/(1 - t) = 1 + t + t^2 + ...
    MultiPoly p(1);
    p.set_coefficient({0}, 1.0);
    p.set_coefficient({1}, -1.0);
    const MultiPoly inv = series_inverse(p, 8);
    for (int j = 0; j <= 8; ++j) CHECK(std::abs(inv.coefficient({j}) - cplx(1.0)) < 1e-12);
    const MultiPoly prod = mul_truncated(p, inv, 8);
    CHECK(std::abs(prod.coefficient({0}) - cplx(1.0)) < 1e-12);
    for (int j = 1; j <= 8; ++j) CHECK(std::abs(prod.coefficient({j})) < 1e-12);

    CHECK_THROWS_AS(series_inverse(MultiPoly::variable(1, 0), 4), DomainError);
}

TEST_CASE("normalized picks a deterministic unit pivot") {
    const MultiPoly p = from_terms(2, {{{2, 0}, cplx(0.0, 2.0)}, {{0, 1}, 1.0}});
    const MultiPoly n = p.normalized();
    CHECK(std::abs(n.coefficient({2, 0}) - cplx(1.0)) < 1e-15);
    CHECK(std::abs(n.coefficient({0, 1}) - cplx(0.0, -0.5)) < 1e-15);
    CHECK(n.max_coeff() == doctest::Approx(1.0));

    // near-tie between equal magnitudes resolves to the lex-smallest exponent
    const MultiPoly q = from_terms(2, {{{0, 1}, 3.0}, {{1, 0}, cplx(0.0, 3.0)}});
    const MultiPoly qn = q.normalized();
    CHECK(std::abs(qn.coefficient({0, 1}) - cplx(1.0)) < 1e-15);
}

TEST_CASE("pruned drops relatively tiny terms") {
    const MultiPoly p = from_terms(2, {{{1, 0}, 1.0}, {{0, 1}, 1e-14}});
    CHECK(p.pruned().terms().size() == 1);
    CHECK(p.pruned(1e-16).terms().size() == 2);
}

TEST_CASE("LinearForm evaluates and rejects degenerate input") {
    const LinearForm u(CVec{cplx(1.0), cplx(0.0, 1.0)});
    CHECK(std::abs(u.eval(CVec{2.0, 3.0}) - cplx(2.0, 3.0)) < 1e-15);
    const MultiPoly up = u.as_poly();
    CHECK(up.total_degree() == 1);
    CHECK(std::abs(up.coefficient({0, 1}) - cplx(0.0, 1.0)) < 1e-15);
    CHECK_THROWS_AS(LinearForm(CVec{}), ShapeError);
    CHECK_THROWS_AS(LinearForm(CVec{cplx(0.0), cplx(0.0)}), ShapeError);
}

TEST_CASE("pow and truncation helpers") {
    const MultiPoly x = MultiPoly::variable(1, 0);
    const MultiPoly one_plus_x = x + MultiPoly::constant(1, 1.0);
    const MultiPoly p = one_plus_x.pow(4);
    CHECK(std::abs(p.coefficient({2}) - cplx(6.0)) < 1e-13);
    CHECK(truncate_degree(p, 2).total_degree() == 2);
    const MultiPoly mt = mul_truncated(p, p, 3);
    CHECK(mt.total_degree() <= 3);
    CHECK(std::abs(mt.coefficient({3}) - cplx(56.0)) < 1e-12);
}
