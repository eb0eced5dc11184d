#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "arith.hpp"
#include "constants.hpp"
#include "errors.hpp"
#include "gl2.hpp"
#include "oracles.hpp"

using namespace ktwin;

TEST_CASE("generic Euler factor") {
    CHECK(euler_factor(2) == Rational(2, 3));
    CHECK(euler_factor(3) == Rational(27, 32));
    // cross-check against the matrix counts: (1 - |C(l)|/|G(l)|) / (1 - 1/l)
    for (uint64_t ell : {2ull, 3ull, 5ull, 7ull}) {
        Rational numer = Rational(1) - Rational(static_cast<int64_t>(count_C_bruteforce(ell)),
                                                static_cast<int64_t>(gl2_order(ell)));
        Rational denom = Rational(1) - Rational(1, static_cast<int64_t>(ell));
        CHECK(numer / denom == euler_factor(ell));
    }
    CHECK_THROWS_AS(euler_factor(4), error);
}

TEST_CASE("1 - E(l) <= 2/l^2 for l >= 3, exactly in rationals") {
    for (uint64_t ell : oracle::sieve_primes(10000)) {
        if (ell < 3) continue;
        Rational one_minus = Rational(1) - euler_factor(ell);
        CHECK(one_minus <= Rational(2, static_cast<int64_t>(ell * ell)));
        CHECK(one_minus >= Rational(0));
    }
}

TEST_CASE("classical twin constant") {
    auto three = twin_constant_classical(3);
    CHECK(three.value == doctest::Approx(1.5).epsilon(1e-15));  // 2 * (3/4)

    auto est = twin_constant_classical(1000000);
    CHECK(est.value >= 1.320);
    CHECK(est.value <= 1.321);

    // independent straightforward product oracle
    auto primes = oracle::sieve_primes(1000000);
    double direct = oracle::twin_product_direct(primes, 1000000);
    CHECK(std::fabs(est.value - direct) <= 1e-12);

    CHECK_THROWS_AS(twin_constant_classical(2), error);
}

TEST_CASE("twin constant is decreasing in the cutoff with a valid tail") {
    double prev = 10.0;
    for (uint64_t cutoff : {10ull, 100ull, 1000ull, 10000ull, 100000ull}) {
        auto est = twin_constant_classical(cutoff);
        CHECK(est.value < prev);
        prev = est.value;
        CHECK(est.tail_bound >= 0.0);
        CHECK(est.tail_bound <= 3.0 / static_cast<double>(cutoff));
        // doubling the cutoff moves the value by less than the claimed width
        auto refined = twin_constant_classical(2 * cutoff);
        CHECK(std::fabs(refined.value - est.value) <= est.value * est.tail_bound);
        CHECK(refined.tail_bound < est.tail_bound);
    }
}

TEST_CASE("koblitz constant, trivial image") {
    GaloisImageSpec image = GaloisImageSpec::full_image(1);
    auto tiny = koblitz_constant(image, 2);
    CHECK(tiny.value == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

    auto est = koblitz_constant(image, 1000000);
    CHECK(est.value > 0.4);
    CHECK(est.value < 0.6);

    auto primes = oracle::sieve_primes(1000000);
    double direct = oracle::koblitz_product_direct(primes, 1000000);
    CHECK(std::fabs(est.value - direct) <= 1e-12);

    // stability across cutoffs within the certified width
    auto coarse = koblitz_constant(image, 100000);
    CHECK(std::fabs(est.value - coarse.value) <= coarse.value * coarse.tail_bound);
}

TEST_CASE("tail validity under cutoff doubling") {
    GaloisImageSpec image = GaloisImageSpec::full_image(1);
    for (uint64_t cutoff : {1000ull, 10000ull, 100000ull}) {
        auto est = koblitz_constant(image, cutoff);
        auto refined = koblitz_constant(image, 2 * cutoff);
        CHECK(std::fabs(refined.value - est.value) <= est.value * est.tail_bound);
    }
}

TEST_CASE("full image at 2 routes identically through either factor") {
    // correction factor for FullImage m_e = 2 equals the generic E(2) exactly
    GaloisImageSpec image2 = GaloisImageSpec::full_image(2);
    CHECK(image_correction_factor(image2) == euler_factor(2));

    GaloisImageSpec image1 = GaloisImageSpec::full_image(1);
    auto via_correction = koblitz_constant(image2, 100000);
    auto generic = koblitz_constant(image1, 100000);
    CHECK(via_correction.value == doctest::Approx(generic.value).epsilon(1e-13));
}

TEST_CASE("correction factor for squarefree full images factors over primes") {
    for (uint64_t m : {6ull, 10ull, 15ull, 30ull}) {
        GaloisImageSpec image = GaloisImageSpec::full_image(m);
        Rational expected(1);
        for (auto [p, e] : factorize(m).factors) expected = expected * euler_factor(p);
        CHECK(image_correction_factor(image) == expected);
    }
}

TEST_CASE("cutoff must reach the largest prime dividing m_e") {
    GaloisImageSpec image = GaloisImageSpec::full_image(10);
    CHECK_THROWS_AS(koblitz_constant(image, 3), error);
    CHECK(koblitz_constant(image, 5).cutoff == 5);
}

TEST_CASE("estimate interval brackets the refined value") {
    GaloisImageSpec image = GaloisImageSpec::full_image(1);
    auto est = koblitz_constant(image, 10000);
    auto better = koblitz_constant(image, 1000000);
    CHECK(better.value >= est.lower());
    CHECK(better.value <= est.upper());
}
