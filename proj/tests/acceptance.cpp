// End-to-end verification suite: one line per check, nonzero exit on any
// failure.  Fixed seed and sample count keep the run deterministic, and
// each check must also finish inside its runtime budget.

#include <chrono>
#include <cstdio>
#include <functional>
#include <vector>

#include "isoprofile/verify.hpp"

int main() {
    using namespace isoprofile;
    using clock = std::chrono::steady_clock;

    const long samples = 1'000'000;
    const std::uint64_t seed = 42;
    struct TimedCheck {
        std::function<CheckOutcome()> fn;
        double budget_s;
    };
    const std::vector<TimedCheck> checks{
        {[] { return check_n1_closed_form(); }, 1.0},
        {[] { return check_asymptotic_constant(); }, 1.0},
        {[] { return check_equality_differential_inequality(); }, 5.0},
        {[] { return check_ivp_comparison(); }, 5.0},
        {[] { return check_bvp_shooting(); }, 5.0},
        {[=] { return check_flat_upper_bound(samples, seed); }, 30.0},
        {[] { return check_levy_gromov(); }, 1.0},
        {[] { return check_diameter_integral(); }, 1.0},
        {[=] { return check_cone_relation_suite(samples, seed); }, 60.0},
        {[=] { return check_small_volume_suite(samples, seed); }, 60.0},
        {[=] { return check_derivative_relation(seed); }, 2.0},
        {[] { return check_eigen_and_cheeger(); }, 1.0},
    };

    bool all = true;
    double total = 0.0;
    for (const TimedCheck& tc : checks) {
        const auto t0 = clock::now();
        const CheckOutcome c = tc.fn();
        const double secs = std::chrono::duration<double>(clock::now() - t0).count();
        total += secs;
        const bool in_budget = secs <= tc.budget_s;
        std::printf("[%s] %2d. %s  (%s) [%.2f s / %.0f s]\n",
                    c.passed && in_budget ? "PASS" : "FAIL", c.id, c.name.c_str(),
                    c.detail.c_str(), secs, tc.budget_s);
        if (!in_budget) std::printf("       runtime budget exceeded\n");
        all = all && c.passed && in_budget;
    }
    std::printf("%s in %.1f s\n", all ? "all checks passed" : "FAILURES present", total);
    return all ? 0 : 1;
}
