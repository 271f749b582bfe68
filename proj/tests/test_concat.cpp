#include <doctest.h>

#include <cmath>
#include <fstream>
#include <string>

#include "eisenpack/concat.hpp"
#include "eisenpack/errors.hpp"

using namespace eisenpack;

namespace {

IntegerLattice standard_lattice(int n) {
    IntegerLattice lattice;
    lattice.ambient_dim = n;
    lattice.basis.assign(n, std::vector<std::int64_t>(n, 0));
    for (int i = 0; i < n; ++i) lattice.basis[i][i] = 1;
    return lattice;
}

ConcatenationSpec rep_spec_q4() {
    ConcatenationSpec spec;
    spec.info = split_prime(2);
    spec.levels = 1;
    spec.codes = {repetition_code(4, 4)};
    spec.base = standard_lattice(4);
    return spec;
}

std::string corpus_path(const std::string& name) {
    return std::string(EISENPACK_CORPUS_DIR) + "/" + name;
}

}  // namespace

TEST_SUITE_BEGIN("concat");

TEST_CASE("validate accepts admissible specs and lists violations otherwise") {
    ConcatenationSpec empty;
    empty.info = split_prime(2);
    empty.levels = 0;
    empty.base = standard_lattice(3);
    CHECK(validate(empty).empty());

    CHECK(validate(rep_spec_q4()).empty());

    ConcatenationSpec weak = rep_spec_q4();
    weak.codes = {make_code(4, 4, {{0, 0, 0, 0}, {1, 1, 1, 0}})};  // d_H = 3 < 4
    const auto violations = validate(weak);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].find("d_H") != std::string::npos);

    ConcatenationSpec wrong_alphabet = rep_spec_q4();
    wrong_alphabet.codes = {repetition_code(4, 3)};
    CHECK(!validate(wrong_alphabet).empty());
}

TEST_CASE("empty concatenation is the complexified base") {
    ConcatenationSpec spec;
    spec.info = split_prime(2);
    spec.levels = 0;
    spec.base = standard_lattice(2);
    const auto built = build(spec);
    CHECK(built.points_per_cell == 1);
    CHECK(built.packing.coset_reps.size() == 1);
    CHECK(built.packing.det_per_point == doctest::Approx(0.75));
    const auto base_metrics = density_metrics(1.0, 0.75, 4);
    CHECK(built.lambda_lower == doctest::Approx(base_metrics.lambda).epsilon(1e-12));
}

TEST_CASE("repetition concatenation over Q = 4 meets the distance guarantee exactly") {
    const auto built = build(rep_spec_q4());
    CHECK(built.Q == 4);
    CHECK(built.points_per_cell == 4);
    CHECK(built.packing.coset_reps.size() == 4);

    const auto measured = certified_min_distance(built.packing, 2, 16);
    CHECK(measured.certified);
    // d_E = 2 = sqrt(Q^l d_E^2(P + omega P))
    CHECK(measured.distance == doctest::Approx(2.0).epsilon(1e-12));

    const double lambda_measured =
        density_metrics(measured.distance, built.packing.det_per_point, 8).lambda;
    CHECK(lambda_measured >= built.lambda_lower - 1e-9);
    CHECK(lambda_measured == doctest::Approx(built.lambda_lower).epsilon(1e-9));
}

TEST_CASE("ramified prime concatenation over Q = 3") {
    ConcatenationSpec spec;
    spec.info = split_prime(3);
    spec.levels = 1;
    spec.codes = {repetition_code(3, 3)};
    spec.base = standard_lattice(3);
    const auto built = build(spec);
    CHECK(built.points_per_cell == 3);

    const auto measured = certified_min_distance(built.packing, 2, 16);
    CHECK(measured.certified);
    CHECK(measured.distance * measured.distance >= 3.0 - 1e-9);
}

TEST_CASE("adding a valid level never lowers the guaranteed exponent") {
    ConcatenationSpec bare;
    bare.info = split_prime(2);
    bare.levels = 0;
    bare.base = standard_lattice(4);
    const auto built0 = build(bare);
    const auto built1 = build(rep_spec_q4());
    CHECK(built1.lambda_lower >= built0.lambda_lower - 1e-12);
    // period determinant grows by exactly Q^n per level
    const double cell0 = built0.packing.det_per_point;  // one coset
    const double cell1 =
        built1.packing.det_per_point * static_cast<double>(built1.points_per_cell);
    CHECK(cell1 == doctest::Approx(std::pow(4.0, 4) * cell0).epsilon(1e-12));
}

TEST_CASE("coset cap rejects oversized constructions") {
    BuildOptions tiny;
    tiny.coset_cap = 2;
    CHECK_THROWS_AS(build(rep_spec_q4(), tiny), InfeasibleError);
}

TEST_CASE("build rejects invalid specs") {
    ConcatenationSpec weak = rep_spec_q4();
    weak.codes = {make_code(4, 4, {{0, 0, 0, 0}, {1, 1, 1, 0}})};
    CHECK_THROWS_AS(build(weak), std::invalid_argument);
}

TEST_CASE("finite-window density probe") {
    EmbeddedPacking z2;
    z2.real_dim = 2;
    z2.period_basis = {{1.0, 0.0}, {0.0, 1.0}};
    z2.det_per_point = 1.0;
    const auto flat = brute_density_check(z2, 10);
    CHECK(flat.points == 21 * 21);
    CHECK(flat.measured_density == doctest::Approx(1.1025));
    CHECK(std::fabs(flat.measured_density - 1.0) < 0.2);

    const auto hex = complexify(standard_lattice(1));
    const auto hex_report = brute_density_check(hex, 10);
    CHECK(hex_report.expected_density == doctest::Approx(2.0 / std::sqrt(3.0)));
    CHECK(std::fabs(hex_report.measured_density - hex_report.expected_density) /
              hex_report.expected_density <
          0.10);

    const auto built = build(rep_spec_q4());
    const auto report = brute_density_check(built.packing, 6);
    // prod M_i / det(t^l P) = 4 / (4^4 (sqrt3/2)^4)
    CHECK(report.expected_density ==
          doctest::Approx(4.0 / (std::pow(4.0, 4) * std::pow(std::sqrt(3.0) / 2.0, 4))));
    CHECK(report.relative_error < 0.15);
}

TEST_CASE("spec files load with relative code paths") {
    const auto spec = load_concat_spec(corpus_path("p2_z4_rep4.spec"));
    CHECK(spec.info.Q == 4);
    CHECK(spec.levels == 1);
    CHECK(spec.base.ambient_dim == 4);
    REQUIRE(spec.codes.size() == 1);
    CHECK(spec.codes[0].min_hamming_distance == 4);
    CHECK(validate(spec).empty());

    CHECK_THROWS_AS(load_concat_spec(corpus_path("missing.spec")), MalformedInputError);

    const std::string bad_path = "/tmp/eisenpack_bad.spec";
    std::ofstream(bad_path) << "p 2\nell 1\nbase 2\n1 0\n0 x\n";
    CHECK_THROWS_AS(load_concat_spec(bad_path), MalformedInputError);
}

TEST_SUITE_END();
