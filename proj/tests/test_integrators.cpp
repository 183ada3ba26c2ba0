#include <cmath>
#include <random>

#include "doctest.h"
#include "oracle/oracle_values.hpp"
#include "oscint/errors.hpp"
#include "oscint/integrators.hpp"
#include "oscint/problems.hpp"
#include "test_support.hpp"

using namespace oscint;

namespace {

void check_against_oracle(const State& s, const double (&expected)[12], double tol) {
    const auto flat = testing::flatten(s);
    // oracle layout is q1, q2, p1, p2 as well
    for (std::size_t i = 0; i < 12; ++i) {
        CAPTURE(i);
        if (expected[i] == 0.0) {
            CHECK(flat[i] == 0.0);
        } else {
            CHECK(testing::rel_err(flat[i], expected[i]) <= tol);
        }
    }
}

}  // namespace

TEST_SUITE("integrators") {

TEST_CASE("method names round-trip") {
    for (Method m : {Method::erkn, Method::rkn, Method::sv}) CHECK(parse_method(to_string(m)) == m);
    CHECK_FALSE(parse_method("rk4").has_value());
    CHECK(force_evaluations_per_step(Method::sv) == 2);
    CHECK(force_evaluations_per_step(Method::erkn) == 1);
}

TEST_CASE("ERKN solves the linear oscillatory problem exactly in one step") {
    const Problem p = linear_test(0.01, 1.3);
    const double h = 0.01;
    const Stepper stepper(p, Method::erkn, h);
    const State one = stepper.step(p.initial);
    const State exact = (*p.exact)(h);
    CHECK(max_abs_difference(one, exact) <= 1e-14);
}

TEST_CASE("ERKN with upsilon = 0 reproduces RKN") {
    const Problem p = fpu_constant(0.01);
    const DerivedConstants zero = DerivedConstants::unshifted();
    std::mt19937_64 rng(17);
    for (double h : {0.01, 0.003}) {
        const FilterTable t = build_filter_table(h, 0.0);
        for (int k = 0; k < 100; ++k) {
            const State s = testing::random_state(p, rng);
            const auto a = testing::flatten(erkn_step(p, zero, t, s, h));
            const auto b = testing::flatten(rkn_step(p, s, h));
            for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-15 * std::abs(b[i]));
        }
    }
}

TEST_CASE("one step from the FPU initial state matches the arbitrary-precision transcription") {
    const Problem p = fpu_varying(0.01);
    const double h = 0.01;
    SUBCASE("ERKN") { check_against_oracle(Stepper(p, Method::erkn, h).step(p.initial), oracle::kErknStep, 1e-13); }
    SUBCASE("RKN") { check_against_oracle(rkn_step(p, p.initial, h), oracle::kRknStep, 1e-13); }
    SUBCASE("SV") { check_against_oracle(sv_step(p, p.initial, h), oracle::kSvStep, 1e-13); }
}

TEST_CASE("force-free drift for RKN and SV") {
    // linear problem with the fast block at rest: the slow force vanishes
    Problem p = linear_test(0.01, 1.0);
    State s = p.initial;
    s.q2 = {0.0, 0.0};
    s.p2 = {0.0, 0.0};
    const double h = 0.1;
    for (const State& next : {rkn_step(p, s, h), sv_step(p, s, h)}) {
        for (std::size_t i = 0; i < 2; ++i) {
            CHECK(next.q1[i] == s.q1[i] + h * s.p1[i]);
            CHECK(next.p1[i] == s.p1[i]);
        }
    }
}

TEST_CASE("SV and ERKN are symmetric: step(h) then step(-h) is the identity") {
    std::mt19937_64 rng(23);
    for (PresetId id : {PresetId::fpu_varying, PresetId::fpu_constant}) {
        const Problem p = make_preset(id, 0.01);
        for (Method m : {Method::erkn, Method::sv}) {
            const Stepper stepper(p, m, 0.01);
            for (int k = 0; k < 100; ++k) {
                const State s = testing::random_state(p, rng);
                CHECK(max_abs_difference(stepper.step_back(stepper.step(s)), s) <= 1e-11);
            }
        }
    }
}

TEST_CASE("ERKN step relation q+ - q = tan(h upsilon / 2) / upsilon (p+ + p) along an FPU run") {
    const Problem p = fpu_varying(0.01);
    const double h = 0.01;
    const Stepper stepper(p, Method::erkn, h);
    const double upsilon = stepper.constants().upsilon;
    const double factor = std::tan(0.5 * h * upsilon) / upsilon;
    State s = p.initial;
    double fast = 0.0, slow = 0.0;
    for (int n = 0; n < 1000; ++n) {
        const State next = stepper.step(s);
        for (std::size_t i = 0; i < 3; ++i) {
            fast = std::max(fast, std::abs(next.q2[i] - s.q2[i] - factor * (next.p2[i] + s.p2[i])));
            slow = std::max(slow, std::abs(next.q1[i] - s.q1[i] - 0.5 * h * (next.p1[i] + s.p1[i])));
        }
        s = next;
    }
    CHECK(fast <= 1e-11);
    CHECK(slow <= 1e-11);
}

TEST_CASE("integrate: zero steps, sampling stride and final sample") {
    const Problem p = fpu_varying(0.01);
    const Trajectory none = integrate(p, Method::erkn, 0.01, 0, 1);
    REQUIRE(none.states.size() == 1);
    CHECK(none.states.front() == p.initial);
    CHECK(none.times.front() == 0.0);

    const Trajectory two = integrate(p, Method::sv, 0.01, 50, 50);
    CHECK(two.steps == std::vector<std::size_t>{0, 50});

    std::vector<std::size_t> seen;
    const Trajectory odd = integrate(p, Method::rkn, 0.01, 25, 10, [&](std::size_t n, const State&) { seen.push_back(n); });
    CHECK(seen == std::vector<std::size_t>{0, 10, 20, 25});
    CHECK(odd.steps == seen);
    CHECK(odd.times.back() == 25 * 0.01);

    CHECK_THROWS_AS(integrate(p, Method::erkn, 0.01, 5, 0), std::invalid_argument);
    CHECK_THROWS_AS(integrate(p, Method::erkn, -0.01, 5, 1), std::invalid_argument);
}

TEST_CASE("times are n*h, not accumulated sums") {
    const Problem p = linear_test(0.01, 1.5);
    const double h = 0.001;
    const Trajectory t = integrate(p, Method::erkn, h, 100000, 10000, {}, Record::samples);
    for (std::size_t k = 0; k < t.steps.size(); ++k) CHECK(t.times[k] == static_cast<double>(t.steps[k]) * h);
}

TEST_CASE("ERKN follows the linear analytic solution over 1e4 steps") {
    const Problem p = linear_test(0.01, 1.0 + std::sin(1.0) * std::sin(1.0));
    const double h = 0.01;
    double worst = 0.0;
    integrate(p, Method::erkn, h, 10000, 1, [&](std::size_t n, const State& s) {
        worst = std::max(worst, max_abs_difference(s, (*p.exact)(static_cast<double>(n) * h)));
    }, Record::none);
    CHECK(worst <= 1e-10);
}

TEST_CASE("integrate is deterministic") {
    const Problem p = fpu_varying(0.01);
    for (Method m : {Method::erkn, Method::rkn, Method::sv}) {
        const Trajectory a = integrate(p, m, 0.005, 4000, 7);
        const Trajectory b = integrate(p, m, 0.005, 4000, 7);
        CHECK(a.states == b.states);
        CHECK(a.times == b.times);
    }
}

TEST_CASE("restarting from a checkpoint keeps omega0 of the original problem") {
    const Problem p = fpu_varying(0.01);
    const Trajectory whole = integrate(p, Method::erkn, 0.01, 200, 100);
    const Trajectory first = integrate(p, Method::erkn, 0.01, 100, 100);
    const Trajectory rest = integrate_from(p, first.states.back(), Method::erkn, 0.01, 100, 100);
    CHECK(rest.states.back() == whole.states.back());
}

TEST_CASE("divergence is reported with the last finite state") {
    // Stormer-Verlet is unstable for h * omega / eps > 2.
    const Problem p = linear_test(0.01, 1.0);
    try {
        integrate(p, Method::sv, 0.03, 5000, 1);
        FAIL("expected StepDiverged");
    } catch (const StepDiverged& e) {
        CHECK(e.last_finite().all_finite());
        CHECK(e.step() > 10);
        CHECK(e.step() < 5000);
    }
}

TEST_CASE("step_count accepts only commensurate stepsizes") {
    CHECK(step_count(1000.0, 0.01) == 100000);
    CHECK(step_count(1000.0, 0.0025) == 400000);
    CHECK(step_count(10.0, 0.01 / 8) == 8000);
    CHECK_THROWS_AS(step_count(1.0, 0.3), std::invalid_argument);
}

TEST_CASE("reference solution of the linear problem is exact to tol") {
    const Problem p = linear_test(0.01, 1.2);
    const std::vector<double> grid{0.1, 0.55, 1.0};
    const ReferenceSolution ref = reference_solution(p, grid, 1e-10);
    for (std::size_t k = 0; k < grid.size(); ++k) CHECK(max_abs_difference(ref.states[k], (*p.exact)(grid[k])) <= 1e-10);
}

TEST_CASE("reference solutions at two tolerances are consistent") {
    const Problem p = fpu_varying(0.01);
    const std::vector<double> grid{0.5, 1.0};
    const ReferenceSolution tight = reference_solution(p, grid, 1e-8);
    const ReferenceSolution loose = reference_solution(p, grid, 1e-6);
    CHECK(tight.h < loose.h);
    for (std::size_t k = 0; k < grid.size(); ++k) CHECK(max_abs_difference(tight.states[k], loose.states[k]) < 1e-6);
}

TEST_CASE("reference solution gives up below the minimum stepsize") {
    const Problem p = linear_test(0.01, 1.0);
    const std::vector<double> grid{1e-4};
    CHECK_THROWS_AS(reference_solution(p, grid, 1e-300, 1e-4), NoConvergence);
    const std::vector<double> unsorted{0.2, 0.1};
    CHECK_THROWS_AS(reference_solution(p, unsorted, 1e-8), std::invalid_argument);
}

TEST_CASE("ERKN is second order on the varying-frequency FPU problem") {
    const Problem p = fpu_varying(0.01);
    const std::vector<double> grid{1.0};
    const ReferenceSolution ref = reference_solution(p, grid, 1e-8);
    std::vector<double> errors;
    for (double h : {0.01 / 2, 0.01 / 4, 0.01 / 8}) {
        const Trajectory t = integrate(p, Method::erkn, h, step_count(1.0, h), step_count(1.0, h));
        errors.push_back(max_abs_difference(t.states.back(), ref.states.front()));
    }
    for (std::size_t k = 1; k < errors.size(); ++k) {
        const double ratio = errors[k - 1] / errors[k];
        CAPTURE(ratio);
        CHECK(ratio >= 3.3);
        CHECK(ratio <= 4.7);
    }
}

TEST_CASE("long ERKN run on the FPU problem stays finite") {
    const Problem p = fpu_varying(0.01);
    bool finite = true;
    const Trajectory t = integrate(p, Method::erkn, 0.01, 100000, 1000,
                                   [&](std::size_t, const State& s) { finite = finite && s.all_finite(); });
    CHECK(finite);
    CHECK(t.steps.back() == 100000);
}

}
