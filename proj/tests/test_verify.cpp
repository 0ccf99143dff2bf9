#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "fcg/errors.hpp"
#include "fcg/gates.hpp"
#include "fcg/predicate.hpp"
#include "fcg/random.hpp"
#include "fcg/verify.hpp"

using namespace fcg;

namespace {

const Complex kOne{1.0, 0.0};

FcgSpec random_spec(RandomSource& rng, int max_n = 3, int max_m = 2) {
    const int n = 1 + static_cast<int>(rng.below(max_n));
    const int m = 1 + static_cast<int>(rng.below(max_m));
    return FcgSpec(random_truth_table(n, rng), random_unitary(std::size_t{1} << m, rng));
}

}  // namespace

TEST_CASE("check_unitary separates unitaries from non-unitaries") {
    const VerificationReport good = check_unitary(gate_cx(), 1e-12);
    CHECK(good.pass);
    CHECK(good.check == "unitary");
    CHECK(good.max_deviation == 0.0);
    CHECK_FALSE(good.witness.has_value());

    const ComplexMatrix shear(2, 2, {kOne, kOne, Complex{}, kOne});
    const VerificationReport bad = check_unitary(shear, 1e-9);
    CHECK_FALSE(bad.pass);
    REQUIRE(bad.witness.has_value());
    CHECK(bad.max_deviation > 0.5);
    // Witness honesty: the named entry really deviates beyond tol.
    const auto [wi, wj] = *bad.witness;
    Complex acc{};
    for (std::uint64_t k = 0; k < 2; ++k) acc += std::conj(shear(k, wi)) * shear(k, wj);
    if (wi == wj) acc -= 1.0;
    CHECK(std::abs(acc) > 1e-9);

    CHECK_THROWS_AS(check_unitary(ComplexMatrix(2, 3), 1e-9), ShapeError);

    RandomSource rng(51);
    for (int trial = 0; trial < 10; ++trial) {
        CHECK(check_unitary(fcg_matrix(random_spec(rng)).dense(), 1e-9).pass);
    }
}

TEST_CASE("the builder agrees with the product of single-value gates") {
    const FcgSpec or_spec(compile_truth_table("x != 0", 2), gate_x());
    CHECK(check_fcg_equals_bcg_product(or_spec, 1e-12).pass);

    const FcgSpec empty(TruthTable::all_zero(3), gate_h());
    const VerificationReport r = check_fcg_equals_bcg_product(empty, 0.0);
    CHECK(r.pass);
    CHECK(r.max_deviation == 0.0);

    RandomSource rng(52);
    for (int trial = 0; trial < 25; ++trial) {
        CHECK(check_fcg_equals_bcg_product(random_spec(rng), 1e-9).pass);
    }

    const FcgSpec huge(TruthTable::all_one(12), gate_x());
    CHECK_THROWS_AS(check_fcg_equals_bcg_product(huge, 1e-9), CapacityError);
}

TEST_CASE("equivalence with and without the global-phase allowance") {
    RandomSource rng(53);
    const ComplexMatrix g = random_unitary(8, rng);
    CHECK(check_equivalence(g, g, 1e-12, false).pass);

    ComplexMatrix rotated(8, 8);
    const Complex phase = std::polar(1.0, std::numbers::pi / 3.0);
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j) rotated(i, j) = phase * g(i, j);

    CHECK(check_equivalence(g, rotated, 1e-12, true).pass);
    const VerificationReport strict = check_equivalence(g, rotated, 1e-12, false);
    CHECK_FALSE(strict.pass);
    REQUIRE(strict.witness.has_value());
    const auto [wi, wj] = *strict.witness;
    CHECK(std::abs(g(wi, wj) - rotated(wi, wj)) > 1e-12);

    // A genuine scale factor is not a phase; the allowance must not hide it.
    ComplexMatrix doubled(8, 8);
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j) doubled(i, j) = 2.0 * g(i, j);
    CHECK_FALSE(check_equivalence(g, doubled, 1e-9, true).pass);

    CHECK(check_equivalence(ComplexMatrix(3, 3), ComplexMatrix(3, 3), 0.0, true).pass);
    CHECK_THROWS_AS(check_equivalence(g, ComplexMatrix(4, 4), 1e-9, false), ShapeError);
}

TEST_CASE("entry formula evaluation matches the builder") {
    const FcgSpec toffoli(compile_truth_table("x == 3", 2), gate_x());
    const VerificationReport r = check_entry_formula(toffoli);
    CHECK(r.pass);
    CHECK(r.max_deviation == 0.0);

    const FcgSpec nothing(TruthTable::all_zero(2), gate_h());
    CHECK(check_entry_formula(nothing).max_deviation == 0.0);

    RandomSource rng(54);
    for (int trial = 0; trial < 25; ++trial) {
        CHECK(check_entry_formula(random_spec(rng)).pass);
    }

    const FcgSpec huge(TruthTable::all_one(12), gate_x());
    CHECK_THROWS_AS(check_entry_formula(huge), CapacityError);
}

TEST_CASE("reports are deterministic") {
    RandomSource rng(55);
    const FcgSpec spec = random_spec(rng);
    const VerificationReport a = check_fcg_equals_bcg_product(spec, 1e-9);
    const VerificationReport b = check_fcg_equals_bcg_product(spec, 1e-9);
    CHECK(a.pass == b.pass);
    CHECK(a.max_deviation == b.max_deviation);
    CHECK(a.check == b.check);
}

TEST_CASE("the redundant formulations agree pairwise on random instances") {
    RandomSource rng(56);
    for (int trial = 0; trial < 15; ++trial) {
        const FcgSpec spec = random_spec(rng);
        const ComplexMatrix built = fcg_matrix(spec).dense();
        const ComplexMatrix product =
            bcg_product(spec.table().width(), spec.table().marked_set(), spec.unitary());
        const ComplexMatrix qit = qit_matrix(spec.table(), spec.unitary());
        CHECK(check_equivalence(built, product, 1e-9, false).pass);
        CHECK(check_equivalence(built, qit, 1e-9, false).pass);
        CHECK(check_equivalence(product, qit, 1e-9, false).pass);
        CHECK(check_entry_formula(spec).pass);
    }
}
