#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "eisenpack/eisenstein.hpp"

using namespace eisenpack;

TEST_SUITE_BEGIN("eisenstein");

TEST_CASE("ring arithmetic follows omega^2 = -1 - omega") {
    CHECK(norm(EisensteinInt{1, 1}) == 1);
    CHECK(norm(EisensteinInt{2, 0}) == 4);
    CHECK(EisensteinInt{1, 1} * EisensteinInt{1, 1} == EisensteinInt{0, 1});
    CHECK(EisensteinInt{2, 3} + EisensteinInt{-1, 4} == EisensteinInt{1, 7});
    CHECK(EisensteinInt{2, 3} - EisensteinInt{-1, 4} == EisensteinInt{3, -1});
    CHECK(conj(EisensteinInt{1, 1}) == EisensteinInt{0, -1});
    CHECK(pow(EisensteinInt{0, 1}, 3) == EisensteinInt{1, 0});  // omega^3 = 1
}

TEST_CASE("norm is multiplicative and positive definite") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<std::int64_t> coeff(-40, 40);
    for (int trial = 0; trial < 200; ++trial) {
        const EisensteinInt x{coeff(rng), coeff(rng)};
        const EisensteinInt y{coeff(rng), coeff(rng)};
        CHECK(norm(x * y) == norm(x) * norm(y));
        CHECK(norm(x) >= 0);
        if (!x.is_zero()) CHECK(norm(x) >= 1);
        CHECK(x * conj(x) == EisensteinInt{norm(x), 0});
    }
}

TEST_CASE("overflow is detected, never wrapped") {
    const EisensteinInt big{std::int64_t{1} << 62, 0};
    const EisensteinInt two{2, 0};
    CHECK_THROWS_AS(big + big, std::overflow_error);
    CHECK_THROWS_AS(big * two, std::overflow_error);
    CHECK_THROWS_AS(norm(EisensteinInt(std::int64_t{1} << 33, 0)), std::overflow_error);
}

TEST_CASE("embedding matches the (u - v/2, sqrt(3)/2 v) identification") {
    const auto e10 = embed(1.0, 0.0);
    CHECK(e10[0] == doctest::Approx(1.0));
    CHECK(e10[1] == doctest::Approx(0.0));

    const auto e01 = embed(0.0, 1.0);
    CHECK(e01[0] == doctest::Approx(-0.5));
    CHECK(e01[1] == doctest::Approx(std::sqrt(3.0) / 2.0));
    CHECK(std::hypot(e01[0], e01[1]) == doctest::Approx(1.0));

    const auto e12 = embed(1.0, 2.0);
    CHECK(e12[0] == doctest::Approx(0.0));
    CHECK(e12[1] == doctest::Approx(std::sqrt(3.0)));

    std::mt19937 rng(11);
    std::uniform_int_distribution<int> coeff(-25, 25);
    for (int trial = 0; trial < 200; ++trial) {
        const int u = coeff(rng), v = coeff(rng);
        const auto xy = embed(static_cast<double>(u), static_cast<double>(v));
        const double len2 = xy[0] * xy[0] + xy[1] * xy[1];
        CHECK(len2 == doctest::Approx(u * u - u * v + v * v).epsilon(1e-12));
    }
}

TEST_CASE("prime splitting law in Q(sqrt(-3))") {
    const auto two = split_prime(2);
    CHECK(two.kind == PrimeKind::Inert);
    CHECK(two.Q == 4);
    CHECK(two.t == EisensteinInt{2, 0});
    REQUIRE(two.reps.size() == 4);
    CHECK(two.reps[0] == EisensteinInt{0, 0});
    CHECK(two.reps[1] == EisensteinInt{1, 0});
    CHECK(two.reps[2] == EisensteinInt{0, 1});
    CHECK(two.reps[3] == EisensteinInt{1, 1});

    const auto three = split_prime(3);
    CHECK(three.kind == PrimeKind::Ramified);
    CHECK(three.Q == 3);
    CHECK(three.t == EisensteinInt{1, -1});
    CHECK(norm(three.t) == 3);

    const auto seven = split_prime(7);
    CHECK(seven.kind == PrimeKind::Split);
    CHECK(seven.Q == 7);
    CHECK(norm(seven.t) == 7);

    CHECK_THROWS_AS(split_prime(6), std::invalid_argument);
    CHECK_THROWS_AS(split_prime(1), std::invalid_argument);

    for (std::int64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}) {
        const auto info = split_prime(p);
        CHECK(norm(info.t) == info.Q);
        if (p == 3) {
            CHECK(info.Q == 3);
        } else if (p % 3 == 1) {
            CHECK(info.kind == PrimeKind::Split);
            CHECK(info.Q == p);
        } else {
            CHECK(info.kind == PrimeKind::Inert);
            CHECK(info.Q == p * p);
        }
        CHECK(static_cast<std::int64_t>(info.reps.size()) == info.Q);
        CHECK(info.reps[0].is_zero());
        // reps pairwise incongruent, and nonzero differences have norm >= 1
        for (std::size_t i = 0; i < info.reps.size(); ++i)
            for (std::size_t j = i + 1; j < info.reps.size(); ++j) {
                CHECK(!divisible(info.reps[i] - info.reps[j], info.t));
                CHECK(norm(info.reps[i] - info.reps[j]) >= 1);
            }
    }
}

TEST_CASE("reduce picks the unique congruent representative") {
    const auto two = split_prime(2);
    CHECK(reduce(EisensteinInt{0, 0}, two) == 0);
    CHECK(reduce(EisensteinInt{2, 2}, two) == 0);
    CHECK(reduce(EisensteinInt{3, 1}, two) == 3);  // 3 + w = (1 + w) + 2

    const auto seven = split_prime(7);
    std::set<std::size_t> classes;
    for (std::int64_t a = 0; a < 7; ++a) classes.insert(reduce(EisensteinInt{a, 0}, seven));
    CHECK(classes.size() == 7);
}

TEST_CASE("residues form a group under induced addition") {
    for (std::int64_t p : {2, 3, 7}) {
        const auto info = split_prime(p);
        std::mt19937 rng(100 + static_cast<unsigned>(p));
        std::uniform_int_distribution<std::int64_t> coeff(-12, 12);
        for (std::size_t i = 0; i < info.reps.size(); ++i)
            for (std::size_t j = 0; j < info.reps.size(); ++j) {
                const std::size_t expected = reduce(info.reps[i] + info.reps[j], info);
                // class of the sum depends only on the classes of the summands
                const EisensteinInt noise_i = info.t * EisensteinInt{coeff(rng), coeff(rng)};
                const EisensteinInt noise_j = info.t * EisensteinInt{coeff(rng), coeff(rng)};
                const EisensteinInt x = info.reps[i] + noise_i;
                const EisensteinInt y = info.reps[j] + noise_j;
                CHECK(reduce(x + y, info) == expected);
            }
    }
}

TEST_CASE("display form") {
    CHECK(to_string(EisensteinInt{0, 0}) == "0");
    CHECK(to_string(EisensteinInt{2, 0}) == "2");
    CHECK(to_string(EisensteinInt{0, 1}) == "w");
    CHECK(to_string(EisensteinInt{1, -2}) == "1-2w");
    CHECK(to_string(EisensteinInt{-1, 1}) == "-1+w");
}

TEST_SUITE_END();
