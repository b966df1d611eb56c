#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qent/indicators.hpp"
#include "qent/ket.hpp"
#include "test_support.hpp"

using namespace qent;
using namespace testsupport;

namespace {

std::vector<int> binary_pattern(const LevelReport& report) {
    std::vector<int> bits;
    bits.reserve(report.minors.size());
    for (const MinorRecord& rec : report.minors) bits.push_back(rec.binary);
    return bits;
}

const PureState kW4 = normalize(ket::evaluate_expression("(1/sqrt(4))(|0001>+|0010>+|0100>+|1000>)"));
const PureState kPsi3 = normalize(ket::evaluate_expression("(1/2)(|001>+|010>+|100>+|111>)"));
const PureState kCluster3 = normalize(
    ket::evaluate_expression("(1/sqrt(8))(|000>+|001>+|010>-|011>+|100>+|101>-|110>+|111>)"));

} // namespace

TEST_CASE("level_minors reproduces the six tripartite determinants in order") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const PureState s = random_state({2, 2, 2}, 7000 + seed);
        const LevelReport top = level_minors(s, 3);
        const auto want = dets3_oracle(s);
        REQUIRE(top.minors.size() == 6);
        for (std::size_t k = 0; k < 6; ++k) {
            CHECK(std::abs(top.minors[k].value - want[k]) < 1e-15);
        }
        const LevelReport bottom = level_minors(s, 2);
        const auto want2 = dets2_oracle(s);
        REQUIRE(bottom.minors.size() == 2);
        CHECK(std::abs(bottom.minors[0].value - want2[0]) < 1e-15);
        CHECK(std::abs(bottom.minors[1].value - want2[1]) < 1e-15);
    }
}

TEST_CASE("level_minors on the benchmark states") {
    SUBCASE("GHZ at m=3: only the third determinant survives, value 1/2") {
        const LevelReport report = level_minors(ghz3(), 3);
        CHECK(binary_pattern(report) == std::vector<int>{0, 0, 1, 0, 0, 0});
        CHECK(std::abs(report.minors[2].value - cx(0.5, 0)) < 1e-12);
        CHECK(report.minors[2].row_pair == std::pair<int, int>{0, 1});
        CHECK(report.minors[2].col_pair == std::pair<int, int>{0, 3});
        CHECK(report.branch_probabilities.size() == 1);
        CHECK(std::abs(report.branch_probabilities[0] - 1.0) < 1e-12);
    }
    SUBCASE("W at m=2: pattern [1,0], raw values [-1/3, 0]") {
        const LevelReport report = level_minors(w3(), 2);
        CHECK(binary_pattern(report) == std::vector<int>{1, 0});
        CHECK(std::abs(report.minors[0].value - cx(-1.0 / 3.0, 0)) < 1e-12);
        CHECK(std::abs(report.minors[1].value) < 1e-15);
        // branch tuple is (b_3,)
        CHECK(report.minors[0].branch == std::vector<int>{0});
        CHECK(report.minors[1].branch == std::vector<int>{1});
    }
    SUBCASE("4-qubit W at m=3: branch b4=0 carries the W pattern") {
        const LevelReport report = level_minors(kW4, 3);
        CHECK(binary_pattern(report) == std::vector<int>{1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0});
    }
    SUBCASE("psi at m=3") {
        CHECK(binary_pattern(level_minors(kPsi3, 3)) == std::vector<int>{1, 1, 0, 0, 1, 1});
    }
    SUBCASE("branch order is lexicographic in (b_n, ..., b_{m+1})") {
        // Bell on sites 1,2; site 3 = |1>, site 4 = |0>: the only entangled
        // slice at m=2 sits at branch (b4, b3) = (0, 1)
        const PureState s = tensor_product(tensor_product(bell(), make_state({2}, {cx(0, 0), cx(1, 0)})),
                                           make_state({2}, {cx(1, 0), cx(0, 0)}));
        const LevelReport report = level_minors(s, 2);
        CHECK(binary_pattern(report) == std::vector<int>{0, 1, 0, 0});
        CHECK(report.minors[1].branch == std::vector<int>{0, 1});
        // three of the four branches are unrealizable but still contribute
        // clean zero minors
        for (const MinorRecord& rec : report.minors) {
            CHECK(std::isfinite(rec.magnitude));
        }
        CHECK(std::abs(report.branch_probabilities[1] - 1.0) < 1e-12);
        CHECK(report.branch_probabilities[0] < 1e-15);
    }
    SUBCASE("level out of range") {
        CHECK_THROWS_AS(level_minors(ghz3(), 1), dimension_error);
        CHECK_THROWS_AS(level_minors(ghz3(), 4), dimension_error);
    }
    SUBCASE("non-normalized input is rejected") {
        PureState s = ghz3();
        s.amps[0] *= 3.0;
        CHECK_THROWS_AS(level_minors(s, 3), validation_error);
    }
}

TEST_CASE("minor_count matches the closed form and the enumeration") {
    CHECK(minor_count({2, 2, 2}, 3) == 6);
    CHECK(minor_count({2, 2, 2}, 2) == 2);
    CHECK(minor_count({2, 2, 2, 2}, 4) == 28);
    CHECK(minor_count({2, 2, 2, 2}, 3) == 12);
    CHECK(minor_count({2, 2, 2, 2}, 2) == 4);
    CHECK(minor_count({3, 3}, 2) == 9);
    CHECK(minor_count({3, 3, 3}, 3) == 108);
    CHECK_THROWS_AS(minor_count({2, 2}, 3), dimension_error);

    for (const auto& dims : std::vector<std::vector<int>>{{2, 2, 2}, {2, 3, 2}, {3, 3, 3}, {2, 2, 3, 2}}) {
        const PureState s = random_state(dims, 8000 + dims.size());
        for (int m = 2; m <= s.sites(); ++m) {
            const LevelReport report = level_minors(s, m);
            CHECK(static_cast<long long>(report.minors.size()) == minor_count(dims, m));
            CHECK(report.count == minor_count(dims, m));
        }
    }
}

TEST_CASE("total_distinct_minors follows the q=2 Gaussian binomial") {
    CHECK(total_distinct_minors(2) == 1);
    CHECK(total_distinct_minors(3) == 7);
    CHECK(total_distinct_minors(4) == 35);
    CHECK_THROWS_AS(total_distinct_minors(1), dimension_error);
}

TEST_CASE("coarse indicators") {
    const LevelReport ghz_top = level_minors(ghz3(), 3);
    CHECK(coarse_indicator(ghz_top, CoarseMode::binary) == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK(coarse_indicator(ghz_top, CoarseMode::raw) == doctest::Approx(1.0 / 12.0).epsilon(1e-12));

    CHECK(coarse_indicator(level_minors(w3(), 3), CoarseMode::binary) == doctest::Approx(1.0 / 3.0));
    CHECK(coarse_indicator(level_minors(w3(), 2), CoarseMode::binary) == doctest::Approx(0.5));

    const AnalysisReport w4 = full_profile(kW4);
    REQUIRE(w4.coarse_binary.size() == 3);
    CHECK(w4.coarse_binary[0] == doctest::Approx(3.0 / 28.0));
    CHECK(w4.coarse_binary[1] == doctest::Approx(1.0 / 6.0));
    CHECK(w4.coarse_binary[2] == doctest::Approx(0.25));
}

TEST_CASE("full_profile") {
    SUBCASE("a random product state profiles to all zeros") {
        const PureState s = random_product_state({2, 2, 2}, 550);
        const AnalysisReport report = full_profile(normalize(s));
        for (const LevelReport& level : report.levels) {
            for (const MinorRecord& rec : level.minors) CHECK(rec.binary == 0);
        }
        for (double c : report.coarse_binary) CHECK(c == 0.0);
    }
    SUBCASE("tripartite cluster state") {
        const AnalysisReport report = full_profile(kCluster3);
        CHECK(binary_pattern(report.levels[0]) == std::vector<int>{1, 0, 1, 1, 0, 1});
        CHECK(binary_pattern(report.levels[1]) == std::vector<int>{1, 1});
        CHECK(report.coarse_binary[0] == doctest::Approx(2.0 / 3.0));
        CHECK(report.coarse_binary[1] == doctest::Approx(1.0));
    }
    SUBCASE("4-qubit GHZ coarse vector") {
        const PureState ghz4 = normalize(ket::evaluate_expression("(1/sqrt(2))(|0000>+|1111>)"));
        const AnalysisReport report = full_profile(ghz4);
        REQUIRE(report.coarse_binary.size() == 3);
        CHECK(report.coarse_binary[0] == doctest::Approx(1.0 / 28.0));
        CHECK(report.coarse_binary[1] == 0.0);
        CHECK(report.coarse_binary[2] == 0.0);
    }
    SUBCASE("optional fields appear for the right shapes") {
        const AnalysisReport two = full_profile(bell());
        CHECK(two.concurrence.has_value());
        CHECK_FALSE(two.cayley.has_value());

        const AnalysisReport three = full_profile(ghz3());
        CHECK_FALSE(three.concurrence.has_value());
        REQUIRE(three.cayley.has_value());
        REQUIRE(three.tangle.has_value());

        CHECK_THROWS_AS(full_profile(make_state({2}, {cx(1, 0), cx(0, 0)})), dimension_error);
    }
}

TEST_CASE("concurrence") {
    CHECK(concurrence(bell()) == doctest::Approx(1.0).epsilon(1e-12));

    const PureState product = normalize(ket::evaluate_expression("(1/2)(|00>+|01>+|10>+|11>)"));
    CHECK(concurrence(product) == doctest::Approx(0.0).epsilon(1e-12));

    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const double c = concurrence(random_state({2, 2}, 9000 + seed));
        CHECK(c >= 0.0);
        CHECK(c <= 1.0 + 1e-12);
    }
    CHECK_THROWS_AS(concurrence(ghz3()), dimension_error);
}

TEST_CASE("the CNOT worked example entangles a product state") {
    const cx alpha(0.6, 0), beta(0.8, 0);
    const PureState in =
        tensor_product(make_state({2}, {alpha, beta}), make_state({2}, {cx(1, 0), cx(0, 0)}));
    CHECK(concurrence(in) == doctest::Approx(0.0).epsilon(1e-12));

    // CNOT swaps |10> and |11>
    PureState out = in;
    std::swap(out.amps[2], out.amps[3]);
    CHECK(std::abs(out.amps[0] - alpha) < 1e-15);
    CHECK(std::abs(out.amps[3] - beta) < 1e-15);
    CHECK(concurrence(out) == doctest::Approx(2.0 * std::abs(alpha * beta)).epsilon(1e-12));
}

TEST_CASE("cayley hyperdeterminant") {
    SUBCASE("W gives zero, GHZ gives 1/4 with tangle 1") {
        CHECK(std::abs(cayley_hyperdet(w3())) < 1e-12);
        CHECK(std::abs(cayley_hyperdet(ghz3()) - cx(0.25, 0)) < 1e-12);
        CHECK(tangle(ghz3()) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(tangle(w3()) == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("vanishes on completely separable states") {
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            const PureState s = normalize(random_product_state({2, 2, 2}, 10000 + seed));
            CHECK(std::abs(cayley_hyperdet(s)) < 1e-12);
        }
    }
    SUBCASE("wrong shape") {
        CHECK_THROWS_AS(cayley_hyperdet(bell()), dimension_error);
    }
}

TEST_CASE("hyperdet_from_minors matches the direct evaluation") {
    SUBCASE("GHZ minors (0,0,1/2,0,0,0) give 1/4") {
        const cx v = hyperdet_from_minors({cx(0, 0), cx(0, 0), cx(0.5, 0), cx(0, 0), cx(0, 0), cx(0, 0)});
        CHECK(std::abs(v - cx(0.25, 0)) < 1e-15);
        CHECK(std::abs(v - cayley_hyperdet(ghz3())) < 1e-12);
    }
    SUBCASE("all zeros give zero") {
        CHECK(hyperdet_from_minors({}) == cx(0, 0));
    }
    SUBCASE("identity sweep over seeded random tripartite states") {
        for (std::uint64_t seed = 0; seed < 300; ++seed) {
            const PureState s = random_state({2, 2, 2}, 20000 + seed);
            const LevelReport top = level_minors(s, 3);
            std::array<cx, 6> d;
            for (std::size_t k = 0; k < 6; ++k) d[k] = top.minors[k].value;
            CHECK(std::abs(hyperdet_from_minors(d) - cayley_hyperdet(s)) <= 1e-9);
        }
    }
}

TEST_CASE("local-unitary invariance of the scalar indicators") {
    SUBCASE("concurrence is invariant on either site") {
        for (std::uint64_t seed = 0; seed < 60; ++seed) {
            const PureState s = random_state({2, 2}, 30000 + seed);
            const double before = concurrence(s);
            const int site = static_cast<int>(seed % 2) + 1;
            const double after = concurrence(apply_local_unitary(s, site, random_unitary(2, 31000 + seed)));
            CHECK(std::abs(before - after) <= 1e-10);
        }
    }
    SUBCASE("|Det A| is invariant under single-site unitaries") {
        for (std::uint64_t seed = 0; seed < 60; ++seed) {
            const PureState s = random_state({2, 2, 2}, 32000 + seed);
            const double before = std::abs(cayley_hyperdet(s));
            const int site = static_cast<int>(seed % 3) + 1;
            const double after =
                std::abs(cayley_hyperdet(apply_local_unitary(s, site, random_unitary(2, 33000 + seed))));
            CHECK(std::abs(before - after) <= 1e-9);
        }
    }
    SUBCASE("hadamard on every site changes the profile but not |Det A|") {
        const double r = 1.0 / std::sqrt(2.0);
        const std::vector<cx> h{cx(r, 0), cx(r, 0), cx(r, 0), cx(-r, 0)};
        PureState rotated = ghz3();
        for (int site = 1; site <= 3; ++site) rotated = apply_local_unitary(rotated, site, h);
        CHECK(std::abs(std::abs(cayley_hyperdet(rotated)) - 0.25) <= 1e-12);
        // GHZ's level-2 minors vanish; the rotated state keeps its pair entangled
        const std::vector<int> before = binary_pattern(level_minors(ghz3(), 2));
        const std::vector<int> after = binary_pattern(level_minors(rotated, 2));
        CHECK(before != after);
    }
}

TEST_CASE("fixture minors sit far from the binarization threshold") {
    for (const PureState* s : {&kPsi3, &kCluster3, &kW4}) {
        const AnalysisReport report = full_profile(*s);
        for (const LevelReport& level : report.levels) {
            double top = 0.0;
            for (const MinorRecord& rec : level.minors) top = std::max(top, rec.magnitude);
            for (const MinorRecord& rec : level.minors) {
                const bool exactly_zero = rec.magnitude == 0.0;
                const bool well_separated = rec.magnitude >= top / 4.0;
                CHECK((exactly_zero || well_separated));
            }
        }
    }
}
