#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "arith.hpp"
#include "errors.hpp"
#include "gl2.hpp"
#include "oracles.hpp"

using namespace ktwin;

TEST_CASE("gl2_order closed form vs scan") {
    CHECK(gl2_order(1) == 1);
    CHECK(gl2_order(2) == 6);
    CHECK(gl2_order(4) == 96);
    for (uint64_t n = 1; n <= 16; ++n) CHECK(gl2_order(n) == oracle::gl2_order_scan(n));
    CHECK(gl2_order(6) == gl2_order(2) * gl2_order(3));
    CHECK_THROWS_AS(gl2_order(1u << 20), error);  // n^4 alone is 2^80
}

TEST_CASE("count_C brute force") {
    CHECK(count_C_bruteforce(1) == 1);
    CHECK(count_C_bruteforce(2) == 4);
    CHECK(count_C_bruteforce(4) == 40);
    for (uint64_t n = 1; n <= 16; ++n) CHECK(count_C_bruteforce(n) == oracle::count_c_scan(n));
    CHECK_THROWS_AS(count_C_bruteforce(401), error);
}

TEST_CASE("closed-form count_C matches brute force") {
    // primes, prime squares, and mixed moduli
    for (uint64_t n : {2, 3, 4, 5, 7, 9, 11, 13, 25, 6, 10, 12, 15, 18, 30, 36}) {
        CHECK(count_C(n) == count_C_bruteforce(n));
    }
    CHECK(count_C(8) == count_C_bruteforce(8));  // cube falls back to the scan
}

TEST_CASE("prime density closed forms") {
    CHECK(density_C_prime(2) == Rational(2, 3));
    CHECK(density_C_prime_squared(2) == Rational(5, 12));  // 40 of 96 matrices
    for (uint64_t ell : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
        Rational brute(static_cast<int64_t>(count_C_bruteforce(ell)),
                       static_cast<int64_t>(gl2_order(ell)));
        CHECK(brute == density_C_prime(ell));
    }
    for (uint64_t ell : {2ull, 3ull, 5ull}) {
        Rational brute(static_cast<int64_t>(count_C_bruteforce(ell * ell)),
                       static_cast<int64_t>(gl2_order(ell * ell)));
        CHECK(brute == density_C_prime_squared(ell));
    }
    CHECK_THROWS_AS(density_C_prime(6), error);
}

TEST_CASE("prime density approaches 1/l") {
    for (uint64_t ell : {97ull, 997ull, 9973ull}) {
        double scaled = static_cast<double>(ell) * density_C_prime(ell).to_double();
        CHECK(std::fabs(scaled - 1.0) <= 3.0 / static_cast<double>(ell));
    }
}

TEST_CASE("multiplicativity of C over coprime moduli") {
    for (auto [a, b] : std::vector<std::pair<uint64_t, uint64_t>>{{2, 3}, {2, 5}, {3, 5}, {2, 15}}) {
        CHECK(count_C_bruteforce(a * b) * gl2_order(a) * gl2_order(b) ==
              count_C_bruteforce(a) * count_C_bruteforce(b) * gl2_order(a * b));
    }
}

TEST_CASE("subgroup closure") {
    MatrixModN id = make_matrix(5, 1, 0, 0, 1);
    auto trivial = subgroup_closure(std::span<const MatrixModN>(&id, 1));
    CHECK(trivial.size() == 1);

    // all of GL2(F_2) as generators
    std::vector<MatrixModN> all;
    for (uint64_t a = 0; a < 2; ++a)
        for (uint64_t b = 0; b < 2; ++b)
            for (uint64_t c = 0; c < 2; ++c)
                for (uint64_t d = 0; d < 2; ++d) {
                    MatrixModN m = make_matrix(2, a, b, c, d);
                    if (m.invertible()) all.push_back(m);
                }
    REQUIRE(all.size() == 6);
    CHECK(subgroup_closure(all).size() == 6);

    MatrixModN shear = make_matrix(3, 1, 1, 0, 1);
    CHECK(subgroup_closure(std::span<const MatrixModN>(&shear, 1)).size() == 3);

    // the two shears span SL2, a generating scalar extends to GL2(F_3), order 48
    std::vector<MatrixModN> gens = {make_matrix(3, 1, 1, 0, 1), make_matrix(3, 1, 0, 1, 1),
                                    make_matrix(3, 2, 0, 0, 1)};
    CHECK(subgroup_closure(gens).size() == 48);

    MatrixModN singular = make_matrix(4, 2, 0, 0, 1);
    std::vector<MatrixModN> bad = {singular};
    CHECK_THROWS_AS(subgroup_closure(bad), error);
    try {
        subgroup_closure(bad);
    } catch (const error& e) {
        CHECK(e.code() == errc::not_invertible);
    }

    CHECK_THROWS_AS(subgroup_closure(std::span<const MatrixModN>(&shear, 1), 2), error);
    try {
        subgroup_closure(std::span<const MatrixModN>(&shear, 1), 2);
    } catch (const error& e) {
        CHECK(e.code() == errc::cap_exceeded);
    }
}

TEST_CASE("count_Omega and prob_coprime") {
    CHECK(count_Omega(GaloisImageSpec::full_image(1)) == 0);
    CHECK(GaloisImageSpec::full_image(1).prob_coprime() == Rational(1));

    GaloisImageSpec full2 = GaloisImageSpec::full_image(2);
    CHECK(count_Omega(full2) == 4);  // exactly the members of C(2)
    CHECK(full2.prob_coprime() == Rational(1, 3));

    // generators spanning GL2(F_2) reproduce the full-image numbers
    std::vector<MatrixModN> gens = {make_matrix(2, 0, 1, 1, 0), make_matrix(2, 1, 1, 0, 1)};
    GaloisImageSpec spanned = GaloisImageSpec::from_generators(2, gens);
    CHECK(spanned.group_size() == 6);
    CHECK(spanned.prob_coprime() == Rational(1, 3));

    // proper subgroup: the shear group mod 3; every element is unipotent, so
    // det + 1 - tr = 1 + 1 - 2 = 0 and gcd(0, 3) = 3
    std::vector<MatrixModN> shear = {make_matrix(3, 1, 1, 0, 1)};
    GaloisImageSpec small = GaloisImageSpec::from_generators(3, shear);
    CHECK(small.group_size() == 3);
    CHECK(small.omega_size() == 3);
    CHECK(small.prob_coprime() == Rational(0));
}

TEST_CASE("inclusion-exclusion identity for squarefree moduli") {
    for (uint64_t m : {2ull, 3ull, 5ull, 6ull, 10ull, 15ull, 30ull}) {
        GaloisImageSpec image = GaloisImageSpec::full_image(m);
        Rational lhs = image.prob_coprime();
        Rational rhs(0);
        for (uint64_t d = 1; d <= m; ++d) {
            if (m % d != 0) continue;
            int mu = mobius(d);
            if (mu == 0) continue;
            rhs = rhs + Rational(mu) * Rational(static_cast<int64_t>(count_C_bruteforce(d)),
                                                static_cast<int64_t>(gl2_order(d)));
        }
        CHECK(lhs == rhs);
        CHECK(lhs >= Rational(0));
        CHECK(lhs <= Rational(1));
    }
}

TEST_CASE("matrix parsing") {
    MatrixModN m = parse_matrix("1,2;3,4", 5);
    CHECK(m.a == 1);
    CHECK(m.b == 2);
    CHECK(m.c == 3);
    CHECK(m.d == 4);
    CHECK(m.det() == (1 * 4 + 5 - (2 * 3) % 5) % 5);
    CHECK_THROWS_AS(parse_matrix("1,2,3,4", 5), error);
    CHECK_THROWS_AS(parse_matrix("1,2;3", 5), error);
}
