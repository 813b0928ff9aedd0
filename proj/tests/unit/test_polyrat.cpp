#include <doctest.h>

#include <algorithm>
#include <random>

#include "support.hpp"

using namespace royal;
using royal::testing::random_in_disc;

namespace {

bool near(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol; }

// Greedy multiset match of two root lists.
bool same_multiset(std::vector<cplx> a, std::vector<cplx> b, double tol) {
    if (a.size() != b.size()) return false;
    for (const cplx r : a) {
        auto it = std::min_element(b.begin(), b.end(),
                                   [r](cplx x, cplx y) { return std::abs(x - r) < std::abs(y - r); });
        if (it == b.end() || std::abs(*it - r) > tol) return false;
        b.erase(it);
    }
    return true;
}

Poly random_poly(std::mt19937_64& rng, int degree) {
    std::vector<cplx> roots;
    for (int j = 0; j < degree; ++j) roots.push_back(random_in_disc(rng, 2.0));
    return Poly::from_roots(roots, random_in_disc(rng, 1.0) + 0.5);
}

}  // namespace

TEST_CASE("poly_eval examples") {
    CHECK(near(poly_eval(Poly{1.0}, {7.0, 2.0}), 1.0, 0.0));
    CHECK(near(poly_eval(Poly{0.0, 1.0}, {0.0, 1.0}), {0.0, 1.0}, 0.0));
    CHECK(near(poly_eval(Poly{0.25, 1.0}, 1.0), 1.25, 1e-15));
}

TEST_CASE("zero polynomial") {
    const Poly z;
    CHECK(z.is_zero());
    CHECK(z.degree() == Poly::kZeroDegree);
    CHECK(poly_eval(z, 3.0) == cplx(0.0));
    CHECK(Poly{0.0, 0.0}.is_zero());
    CHECK_THROWS_AS(poly_roots(z), Error);
    CHECK(poly_roots(Poly{2.0}).empty());
}

TEST_CASE("poly_derivative examples") {
    CHECK(poly_derivative(Poly{5.0}).is_zero());
    const Poly d = poly_derivative(Poly{0.0, 0.0, 1.0});
    CHECK(coeff_distance(d, Poly{0.0, 2.0}) == 0.0);
    const Poly q = poly_derivative(Poly{0.0, 0.5, 1.0});
    CHECK(near(q(-1.0), -1.5, 1e-15));
}

TEST_CASE("poly_roots examples") {
    auto r = poly_roots(Poly{-1.0, 0.0, 1.0});
    REQUIRE(r.size() == 2);
    CHECK(same_multiset(flatten(r), {1.0, -1.0}, 1e-12));
    CHECK(r[0].multiplicity == 1);

    r = poly_roots(Poly{0.0, 0.0, 1.0});
    REQUIRE(r.size() == 1);
    CHECK(r[0].multiplicity == 2);
    CHECK(std::abs(r[0].value) < 1e-12);
}

TEST_CASE("royal polynomial of h_nu(0, 1/2) has roots 0 and a double -1") {
    const GammaInnerFn h = generate_h_nu(0, 0.5);
    const auto roots = poly_roots(h.royal_polynomial());
    REQUIRE(roots.size() == 2);
    for (const auto& r : roots) {
        if (std::abs(r.value) < 1e-9) {
            CHECK(r.multiplicity == 1);
        } else {
            CHECK(near(r.value, -1.0, 1e-7));
            CHECK(r.multiplicity == 2);
        }
    }
}

TEST_CASE("rat_reduce examples") {
    const RationalFn f = rat_reduce({Poly{-1.0, 0.0, 1.0}, Poly{-1.0, 1.0}});
    CHECK(f.den().degree() == 0);
    CHECK(coeff_distance(f, RationalFn::from_poly(Poly{1.0, 1.0})) < 1e-12);

    const RationalFn g = rat_reduce({Poly{0.0, 2.0}, Poly{2.0}});
    CHECK(g.den().leading() == cplx(1.0));
    CHECK(coeff_distance(g, RationalFn::from_poly(Poly{0.0, 1.0})) < 1e-15);
}

TEST_CASE("phi at -conj(eta) of the boundary-node closed form reduces to a constant") {
    const cplx I(0.0, 1.0);
    const GammaInnerFn h(Poly{-2.0 * I, -2.0 * I}, Poly{1.0, -3.0}, Poly{3.0, -1.0});
    const RationalFn raw = h.compose_phi(-std::conj(I));
    CHECK(raw.degree() == 1);
    const RationalFn reduced = rat_reduce(raw);
    CHECK(reduced.degree() == 0);
    CHECK(near(reduced(0.3), raw(0.3), 1e-12));
}

TEST_CASE("roots of a product are the union of the roots") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> deg(1, 6);
    for (int trial = 0; trial < 30; ++trial) {
        const Poly p = random_poly(rng, deg(rng));
        const Poly q = random_poly(rng, deg(rng));
        auto both = flatten(poly_roots(p));
        const auto rq = flatten(poly_roots(q));
        both.insert(both.end(), rq.begin(), rq.end());
        CHECK(same_multiset(flatten(poly_roots(p * q)), both, 1e-7));
    }
}

TEST_CASE("derivative agrees with central differences") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 5; ++trial) {
        const Poly p = random_poly(rng, 5);
        const Poly dp = poly_derivative(p);
        for (int i = 0; i < 20; ++i) {
            const cplx z = random_in_disc(rng, 1.5);
            const double h = 1e-5;
            const cplx fd = (p(z + h) - p(z - h)) / (2.0 * h);
            CHECK(std::abs(fd - dp(z)) <= 1e-6 * std::max(1.0, std::abs(dp(z))));
        }
    }
}

TEST_CASE("rat_reduce is idempotent and preserves values") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        const Poly common = random_poly(rng, 2);
        const RationalFn f(random_poly(rng, 3) * common, random_poly(rng, 2) * common);
        const RationalFn once = rat_reduce(f);
        const RationalFn twice = rat_reduce(once);
        CHECK(coeff_distance(once, twice) <= 1e-12 * std::max(1.0, once.num().max_abs_coeff()));
        CHECK(once.den().leading() == cplx(1.0));
        CHECK(once.den().degree() == 2);
        for (int i = 0; i < 32; ++i) {
            const cplx z = random_in_disc(rng, 1.0);
            if (std::abs(common(z)) < 1e-3 || std::abs(f.den()(z)) < 1e-3) continue;
            CHECK(std::abs(once(z) - f(z)) <= 1e-8 * std::max(1.0, std::abs(f(z))));
        }
    }
}
