#include <doctest.h>

#include <cmath>
#include <random>

#include "eisenpack/errors.hpp"
#include "eisenpack/lattice.hpp"

using namespace eisenpack;

namespace {

IntegerLattice make_lattice(int n, std::vector<std::vector<std::int64_t>> rows) {
    return IntegerLattice{n, std::move(rows)};
}

IntegerLattice random_full_rank(std::mt19937& rng, int n) {
    std::uniform_int_distribution<std::int64_t> coeff(-3, 3);
    while (true) {
        IntegerLattice lattice;
        lattice.ambient_dim = n;
        lattice.basis.assign(n, std::vector<std::int64_t>(n));
        for (auto& row : lattice.basis)
            for (auto& v : row) v = coeff(rng);
        try {
            gram_det_squared(lattice);
            return lattice;
        } catch (const std::invalid_argument&) {
            // singular draw; try again
        }
    }
}

}  // namespace

TEST_SUITE_BEGIN("lattice");

TEST_CASE("gram determinants") {
    CHECK(gram_det(make_lattice(2, {{1, 0}, {0, 1}})) == doctest::Approx(1.0));
    CHECK(gram_det(make_lattice(3, {{1, -1, 0}, {0, 1, -1}})) == doctest::Approx(std::sqrt(3.0)));
    CHECK(gram_det(make_lattice(2, {{1, -1}, {0, 2}})) == doctest::Approx(2.0));
    CHECK(static_cast<long long>(gram_det_squared(make_lattice(3, {{1, -1, 0}, {0, 1, -1}}))) == 3);
    CHECK_THROWS_AS(gram_det(make_lattice(2, {{1, 1}, {2, 2}})), std::invalid_argument);
}

TEST_CASE("min distance by exhaustive enumeration") {
    const auto z2 = min_distance(make_lattice(2, {{1, 0}, {0, 1}}), 1);
    CHECK(z2.distance == doctest::Approx(1.0));
    CHECK(z2.certified);

    const auto a2 = min_distance(make_lattice(3, {{1, -1, 0}, {0, 1, -1}}), 2);
    CHECK(a2.distance == doctest::Approx(std::sqrt(2.0)));

    const auto aug = min_distance(augment(root_lattice_A(2), 2), 2);
    CHECK(aug.distance == doctest::Approx(std::sqrt(2.0)));

    CHECK_THROWS_AS(min_distance(make_lattice(2, {{1, 0}, {0, 1}}), 0), std::invalid_argument);
}

TEST_CASE("A_{n-1} root lattices") {
    const auto a1 = root_lattice_A(2);
    CHECK(a1.rank() == 1);
    CHECK(a1.basis[0] == std::vector<std::int64_t>{1, -1});

    const auto a2 = root_lattice_A(3);
    CHECK(a2.rank() == 2);
    CHECK(gram_det(a2) == doctest::Approx(std::sqrt(3.0)));

    CHECK(min_distance(root_lattice_A(4), 2).distance == doctest::Approx(std::sqrt(2.0)));
    CHECK_THROWS_AS(root_lattice_A(1), std::invalid_argument);
}

TEST_CASE("augmentation appends (0,..,0,chi)") {
    const auto b = augment(root_lattice_A(2), 2);
    CHECK(b.rank() == 2);
    CHECK(b.basis[1] == std::vector<std::int64_t>{0, 2});
    CHECK(gram_det(b) == doctest::Approx(2.0));  // (2/sqrt 2) * sqrt 2

    CHECK(gram_det(augment(root_lattice_A(3), 3)) == doctest::Approx(3.0));

    CHECK_THROWS_AS(augment(root_lattice_A(3), 0), std::invalid_argument);
    CHECK_THROWS_AS(augment(make_lattice(2, {{1, 1}}), 2), std::invalid_argument);
}

TEST_CASE("augment determinant identity is exact in squared form") {
    std::mt19937 rng(2026);
    for (int n : {2, 3, 4}) {
        for (int trial = 0; trial < 20; ++trial) {
            // random full-rank sublattice of A_{n-1}: integer combinations of roots
            const auto roots = root_lattice_A(n);
            IntegerLattice sub;
            sub.ambient_dim = n;
            std::uniform_int_distribution<std::int64_t> coeff(-2, 2);
            while (true) {
                sub.basis.assign(n - 1, std::vector<std::int64_t>(n, 0));
                for (auto& row : sub.basis)
                    for (int j = 0; j + 1 < n; ++j) {
                        const std::int64_t c = coeff(rng);
                        for (int k = 0; k < n; ++k) row[k] += c * roots.basis[j][k];
                    }
                try {
                    gram_det_squared(sub);
                    break;
                } catch (const std::invalid_argument&) {
                }
            }
            const std::int64_t chi = 1 + static_cast<std::int64_t>(trial % 4);
            const auto aug = augment(sub, chi);
            const __int128 lhs = gram_det_squared(aug) * n;
            const __int128 rhs = static_cast<__int128>(chi) * chi * gram_det_squared(sub);
            CHECK(static_cast<long long>(lhs) == static_cast<long long>(rhs));
        }
    }
}

TEST_CASE("complexify realizes the two degree-2 lemmas") {
    const auto hex = complexify(make_lattice(1, {{1}}));
    CHECK(hex.real_dim == 2);
    CHECK(hex.det_per_point == doctest::Approx(std::sqrt(3.0) / 2.0));
    CHECK(min_distance(hex, 2).distance == doctest::Approx(1.0));

    const auto z2c = complexify(make_lattice(2, {{1, 0}, {0, 1}}));
    CHECK(z2c.det_per_point == doctest::Approx(0.75));

    const auto p = make_lattice(2, {{2, 1}, {-1, 2}});  // det 5
    const auto pc = complexify(p);
    CHECK(pc.det_per_point == doctest::Approx(0.75 * 25.0));
    CHECK(gram_det(pc.period_basis) == doctest::Approx(pc.det_per_point).epsilon(1e-12));

    CHECK_THROWS_AS(complexify(root_lattice_A(3)), std::invalid_argument);  // rank 2 < 3
}

TEST_CASE("complexify lemma identities hold on random lattices") {
    std::mt19937 rng(451);
    int done = 0;
    for (int n = 1; n <= 3; ++n) {
        for (int trial = 0; trial < 17 && done < 50; ++trial, ++done) {
            const auto p = random_full_rank(rng, n);
            const auto pc = complexify(p);
            const double det_formula = std::pow(std::sqrt(3.0) / 2.0, n) * gram_det(p) * gram_det(p);
            CHECK(gram_det(pc.period_basis) == doctest::Approx(det_formula).epsilon(1e-9));
            CHECK(pc.det_per_point == doctest::Approx(det_formula).epsilon(1e-9));
            const double dp = min_distance(p, 3).distance;
            const double dpc = min_distance(pc, 3).distance;
            CHECK(dpc == doctest::Approx(dp).epsilon(1e-9));
        }
    }
    CHECK(done >= 50);
}

TEST_CASE("scaling by an Eisenstein integer") {
    const auto hex = complexify(make_lattice(1, {{1}}));

    const auto same = scale_by(EisensteinInt{1, 0}, hex);
    CHECK(same.det_per_point == doctest::Approx(hex.det_per_point));
    CHECK(min_distance(same, 2).distance == doctest::Approx(1.0));

    const auto doubled = scale_by(EisensteinInt{2, 0}, hex);
    CHECK(doubled.det_per_point == doctest::Approx(4.0 * std::sqrt(3.0) / 2.0));
    CHECK(min_distance(doubled, 2).distance == doctest::Approx(2.0));

    const auto unit = scale_by(EisensteinInt{1, 1}, hex);  // norm 1
    CHECK(unit.det_per_point == doctest::Approx(hex.det_per_point));
    CHECK(min_distance(unit, 2).distance == doctest::Approx(1.0));

    EmbeddedPacking plain;
    plain.real_dim = 1;
    plain.period_basis = {{1.0}};
    plain.det_per_point = 1.0;
    CHECK_THROWS_AS(scale_by(EisensteinInt{2, 0}, plain), std::invalid_argument);
}

TEST_CASE("unit ball volumes") {
    CHECK(unit_ball_volume(2) == doctest::Approx(M_PI).epsilon(1e-12));
    CHECK(unit_ball_volume(3) == doctest::Approx(4.0 * M_PI / 3.0).epsilon(1e-12));
    double v24 = std::pow(M_PI, 12);
    for (int k = 2; k <= 12; ++k) v24 /= k;
    CHECK(unit_ball_volume(24) == doctest::Approx(v24).epsilon(1e-12));
    CHECK(std::exp2(log2_unit_ball_volume(7)) == doctest::Approx(unit_ball_volume(7)));
}

TEST_CASE("Stirling approximation brackets the exact volume from above") {
    // exact = stirling - eps with 0 < eps < log2(e)/(6N). The gap approaches
    // the envelope like 1 - O(1/N^2), so for large N the strict comparison
    // sits below double rounding noise; 1e-5 relative slack covers that.
    const double log2e = 1.4426950408889634;
    for (int N : {2, 3, 5, 10, 100, 1000, 5000, 10000}) {
        const double gap = stirling_log2_unit_ball_volume(N) - log2_unit_ball_volume(N);
        CHECK(gap > 0.0);
        CHECK(gap < log2e / (6.0 * N) * (1.0 + 1e-5));
    }
}

TEST_CASE("density metrics") {
    const auto hex = density_metrics(1.0, std::sqrt(3.0) / 2.0, 2);
    CHECK(hex.density == doctest::Approx(M_PI / (2.0 * std::sqrt(3.0))).epsilon(1e-12));
    CHECK(hex.density == doctest::Approx(0.9069).epsilon(1e-4));

    for (int N : {1, 2, 5, 8}) {
        const auto zn = density_metrics(1.0, 1.0, N);
        CHECK(zn.density == doctest::Approx(unit_ball_volume(N) / std::exp2(N)).epsilon(1e-12));
        CHECK(zn.center_density == doctest::Approx(1.0 / std::exp2(N)).epsilon(1e-12));
    }

    // scale invariance: d -> c d, det -> c^N det
    const auto base = density_metrics(std::sqrt(2.0), 7.5, 5);
    const double c = 3.0;
    const auto scaled = density_metrics(c * std::sqrt(2.0), std::pow(c, 5) * 7.5, 5);
    CHECK(scaled.density == doctest::Approx(base.density).epsilon(1e-12));
    CHECK(scaled.lambda == doctest::Approx(base.lambda).epsilon(1e-12));

    CHECK_THROWS_AS(density_metrics(0.0, 1.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(density_metrics(1.0, -1.0, 2), std::invalid_argument);
}

TEST_CASE("certified minimum distance escalates the window") {
    // skew basis: shortest vector (1, 0) = b1 - 2 b2 needs coefficient 2
    const auto skew = make_lattice(2, {{5, 2}, {2, 1}});
    const auto direct = min_distance(skew, 1);
    const auto certified = certified_min_distance(skew, 1);
    CHECK(certified.certified);
    CHECK(certified.distance <= direct.distance + 1e-12);
    CHECK(certified.distance == doctest::Approx(1.0));
}

TEST_SUITE_END();
