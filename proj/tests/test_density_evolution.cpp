#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nbldpc/density_evolution.hpp"
#include "oracles.hpp"

#include <cmath>
#include <random>

using namespace nbldpc;

namespace {

EnsembleSpec make(const std::string& lambda, const std::string& rho, int m) {
    EnsembleSpec e;
    e.lambda = parse_degree_distribution(lambda);
    e.rho = parse_degree_distribution(rho);
    e.m = m;
    return e;
}

DimensionDistribution random_distribution(int m, std::mt19937_64& rng) {
    DimensionDistribution d{m, std::vector<double>(m + 1, 0.0)};
    double sum = 0.0;
    for (double& v : d.p) {
        v = (rng() >> 11) * 0x1.0p-53;
        sum += v;
    }
    for (double& v : d.p) v /= sum;
    return d;
}

}  // namespace

TEST_CASE("channel distribution") {
    const auto d0 = channel_distribution(3, 0.0);
    CHECK(d0.p[0] == 1.0);
    const auto d1 = channel_distribution(3, 1.0);
    CHECK(d1.p[3] == 1.0);
    const auto mid = channel_distribution(2, 0.5);
    CHECK(mid.p[0] == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(mid.p[1] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(mid.p[2] == doctest::Approx(0.25).epsilon(1e-14));
    CHECK_THROWS_AS(channel_distribution(2, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(channel_distribution(2, -0.1), std::invalid_argument);
}

TEST_CASE("check update fixed points and the binary rule") {
    const KernelTable& kt2 = KernelTable::cached(2);
    const auto rho = parse_degree_distribution("y^2");

    CHECK(check_update(DimensionDistribution::point_mass(2, 0), rho, kt2).p[0] ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK(check_update(DimensionDistribution::point_mass(2, 2), rho, kt2).p[2] ==
          doctest::Approx(1.0).epsilon(1e-14));

    const KernelTable& kt1 = KernelTable::cached(1);
    for (double x : {0.0, 0.3, 1.0}) {
        DimensionDistribution in{1, {1.0 - x, x}};
        const auto out = check_update(in, rho, kt1);
        const double expect = 1.0 - (1.0 - x) * (1.0 - x);
        CHECK(out.p[1] == doctest::Approx(expect).epsilon(1e-14));
    }
}

TEST_CASE("var update fixed points and the binary rule") {
    const KernelTable& kt2 = KernelTable::cached(2);
    const auto lam = parse_degree_distribution("y");

    // Intersection with the full space returns the channel law.
    const auto chan = channel_distribution(2, 0.37);
    const auto out = var_update(DimensionDistribution::point_mass(2, 2), lam, 0.37, kt2);
    for (int k = 0; k <= 2; ++k) CHECK(out.p[k] == doctest::Approx(chan.p[k]).epsilon(1e-13));

    // eps = 0 forces the zero law regardless of the check input.
    std::mt19937_64 rng(3);
    const auto zero = var_update(random_distribution(2, rng), lam, 0.0, kt2);
    CHECK(zero.p[0] == doctest::Approx(1.0).epsilon(1e-14));

    const KernelTable& kt1 = KernelTable::cached(1);
    for (double xc : {0.0, 0.45, 1.0}) {
        DimensionDistribution in{1, {1.0 - xc, xc}};
        const auto o = var_update(in, lam, 0.6, kt1);
        CHECK(o.p[1] == doctest::Approx(0.6 * xc).epsilon(1e-14));
    }
}

TEST_CASE("updates preserve normalization to 1e-10 per iteration") {
    std::mt19937_64 rng(17);
    for (int m : {1, 3, 8, 15}) {
        const KernelTable& kt = KernelTable::cached(m);
        const auto lam = parse_degree_distribution("0.5y + 0.5y^4");
        const auto rho = parse_degree_distribution("0.3y^2 + 0.7y^5");
        for (int trial = 0; trial < 10; ++trial) {
            const auto in = random_distribution(m, rng);
            const auto pc = check_update(in, rho, kt);
            const auto pv = var_update(pc, lam, 0.437, kt);
            CHECK(pc.is_normalized(1e-10));
            CHECK(pv.is_normalized(1e-10));
        }
    }
}

TEST_CASE("evolve: reference points of the (2,3) m=2 ensemble") {
    const EnsembleSpec e = make("y", "y^2", 2);

    const DeTrace below = evolve(e, 0.5);
    CHECK(below.success());
    CHECK(below.final_pv().expected_dim() < 1e-8);

    const DeTrace above = evolve(e, 0.65);
    CHECK(!above.success());
    CHECK(above.outcome == DeOutcome::Stalled);
    CHECK(above.final_pv().expected_dim() > 0.5);

    const DeTrace instant = evolve(e, 0.0);
    CHECK(instant.success());
    CHECK(instant.iterates.size() == 1);
    CHECK(instant.final_pv().p[0] == 1.0);
}

TEST_CASE("evolve traces are valid distributions with non-increasing mean") {
    for (double eps : {0.3, 0.55, 0.62, 0.9}) {
        const DeTrace t = evolve(make("y", "y^2", 3), eps);
        double prev = std::numeric_limits<double>::infinity();
        for (const auto& d : t.iterates) {
            CHECK(d.is_normalized(1e-10));
            const double mean = d.expected_dim();
            CHECK(mean <= prev + 1e-12);
            prev = mean;
        }
    }
}

TEST_CASE("expected dimension is monotone in eps at fixed iteration") {
    const EnsembleSpec e = make("0.5y + 0.5y^4", "y^5", 3);
    DeOptions opts;
    opts.max_iters = 20;
    opts.success_threshold = 1e-300;  // keep iterating
    opts.stall_tolerance = 1e-300;
    std::vector<DeTrace> traces;
    for (double eps = 0.05; eps < 1.0; eps += 0.05) {
        traces.push_back(evolve(e, eps, opts));
    }
    for (std::size_t i = 1; i < traces.size(); ++i) {
        const std::size_t rows = std::min(traces[i - 1].iterates.size(), traces[i].iterates.size());
        for (std::size_t l = 0; l < rows; ++l) {
            CHECK(traces[i].iterates[l].expected_dim() >=
                  traces[i - 1].iterates[l].expected_dim() - 1e-12);
        }
    }
}

TEST_CASE("m=1 evolve reproduces the binary recursion to 1e-12") {
    std::mt19937_64 rng(2024);
    auto random_dd = [&](int max_terms) {
        DegreeDistribution dd;
        const int terms = 1 + static_cast<int>(rng() % max_terms);
        double sum = 0.0;
        for (int t = 0; t < terms; ++t) {
            const int d = 2 + static_cast<int>(rng() % 7);
            const double w = 0.05 + (rng() >> 11) * 0x1.0p-53;
            dd.coeffs[d] += w;
            sum += w;
        }
        for (auto& [d, w] : dd.coeffs) w /= sum;
        return dd;
    };

    for (int trial = 0; trial < 30; ++trial) {
        EnsembleSpec e;
        e.lambda = random_dd(3);
        e.rho = random_dd(3);
        e.m = 1;
        const double eps = (rng() >> 11) * 0x1.0p-53;

        DeOptions opts;
        opts.max_iters = 50;
        const DeTrace t = evolve(e, eps, opts);

        double x = eps;
        for (std::size_t l = 0; l < t.iterates.size(); ++l) {
            CHECK(std::abs(t.iterates[l].p[1] - x) < 1e-12);
            x = oracle::binary_de_step(e, eps, x);
        }
    }
}

TEST_CASE("evolve is deterministic") {
    const EnsembleSpec e = make("y", "y^2", 4);
    const DeTrace a = evolve(e, 0.62);
    const DeTrace b = evolve(e, 0.62);
    REQUIRE(a.iterates.size() == b.iterates.size());
    CHECK(a.outcome == b.outcome);
    for (std::size_t l = 0; l < a.iterates.size(); ++l) {
        for (int k = 0; k <= e.m; ++k) {
            CHECK(a.iterates[l].p[k] == b.iterates[l].p[k]);  // bit identical
        }
    }
}

TEST_CASE("finite-field labels: supported up to m = 3, rejected beyond") {
    EnsembleSpec e = make("y", "y^2", 3);
    e.labels = LabelKind::FiniteField;
    e.field_poly = 0xB;
    CHECK_NOTHROW(evolve(e, 0.4));

    EnsembleSpec e5 = make("y", "y^2", 5);
    e5.labels = LabelKind::FiniteField;
    e5.field_poly = 0x25;  // 1 + z^2 + z^5
    CHECK_THROWS_AS(evolve(e5, 0.4), unsupported_config_error);
    CHECK_THROWS_AS(bp_threshold(e5), unsupported_config_error);
}

TEST_CASE("bp_threshold spot values") {
    DeOptions opts;
    CHECK(std::abs(bp_threshold(make("y", "y^2", 1), opts) - 0.5) < 5e-4);
    CHECK(std::abs(bp_threshold(make("y", "y^2", 2), opts) - 0.5775) < 5e-4);
    CHECK(std::abs(bp_threshold(make("y^2", "y^3", 1), opts) - 0.6474) < 5e-4);
    CHECK_THROWS_AS(bp_threshold(make("y", "y^2", 2), opts, 10), std::invalid_argument);
}

TEST_CASE("stability condition") {
    const EnsembleSpec e23 = make("y", "y^2", 1);
    CHECK(!stability_unstable(e23, 0.0));
    // m=1 reduces to lambda'(0) rho'(1) B > 1, so B = eps flips at 0.5.
    CHECK(!stability_unstable(e23, 0.499));
    CHECK(stability_unstable(e23, 0.501));

    for (int m = 1; m <= 6; ++m) {
        CHECK(!stability_unstable(make("y^2", "y^3", m), 1.0));  // lambda_2 = 0
    }
}

TEST_CASE("stability bound: closed forms and vacuous cases") {
    CHECK(stability_bound(make("y", "y^2", 1)) == doctest::Approx(0.5).epsilon(1e-12));
    // m=2: root of 2((1+eps)^2 - 1)/3 = 1 at sqrt(5/2) - 1.
    CHECK(stability_bound(make("y", "y^2", 2)) ==
          doctest::Approx(std::sqrt(2.5) - 1.0).epsilon(1e-12));
    CHECK(stability_bound(make("y^2", "y^3", 4)) == 1.0);

    // Upper bound property at m=2: threshold 0.5775 <= 0.5811.
    CHECK(bp_threshold(make("y", "y^2", 2)) <= stability_bound(make("y", "y^2", 2)));
}

TEST_CASE("extrinsic fixed point limits") {
    const EnsembleSpec e = make("y", "y^2", 2);
    const auto below = extrinsic_fixed_point(e, 0.4);
    CHECK(below.p[0] == doctest::Approx(1.0).epsilon(1e-7));

    const auto full = extrinsic_fixed_point(e, 1.0);
    CHECK(full.p[2] == doctest::Approx(1.0).epsilon(1e-12));

    const auto mid = extrinsic_fixed_point(e, 0.65);
    CHECK(mid.is_normalized(1e-9));
    CHECK(mid.expected_dim() > 0.0);
}

TEST_CASE("iteration count never exceeds the cap") {
    DeOptions opts;
    opts.max_iters = 25;
    const DeTrace t = evolve(make("y", "y^2", 2), 0.56, opts);  // near threshold
    CHECK(t.outcome == DeOutcome::IterLimit);
    CHECK(t.iterates.size() <= 26u);  // channel row plus max_iters updates
}

TEST_CASE("DeOptions validation") {
    DeOptions bad;
    bad.max_iters = 0;
    CHECK_THROWS_AS(evolve(make("y", "y^2", 1), 0.4, bad), std::invalid_argument);
    bad = DeOptions{};
    bad.success_threshold = 0.0;
    CHECK_THROWS_AS(evolve(make("y", "y^2", 1), 0.4, bad), std::invalid_argument);
}
