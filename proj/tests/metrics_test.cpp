#include <doctest.h>

#include <filesystem>

#include "specpower/corpus_fetcher.hpp"
#include "specpower/metrics.hpp"
#include "specpower/result_parser.hpp"

using namespace specpower;
namespace m = specpower::metrics;

namespace {

BenchmarkRun synthetic_run(std::vector<double> powers, std::vector<double> ops,
                           double idle_power, int sockets = 1) {
    BenchmarkRun run;
    run.result_id = "synthetic";
    run.sockets = sockets;
    for (int i = 0; i < 10; ++i) {
        run.levels.push_back({1.0 - 0.1 * i, ops[static_cast<size_t>(i)],
                              powers[static_cast<size_t>(i)]});
    }
    run.idle_power_w = idle_power;
    return run;
}

BenchmarkRun uniform_run(double ops, double power, double idle_power) {
    return synthetic_run(std::vector<double>(10, power), std::vector<double>(10, ops),
                         idle_power);
}

BenchmarkRun parsed_corpus_run(const std::string& id) {
    auto docs = load_corpus_dir(std::filesystem::path(TEST_DATA_DIR) / "corpus");
    for (const auto& doc : docs) {
        if (doc.reference.result_id == id) {
            auto result = parse_run(doc);
            REQUIRE(std::holds_alternative<BenchmarkRun>(result));
            return std::get<BenchmarkRun>(result);
        }
    }
    FAIL("corpus run not found: " << id);
    return {};
}

}  // namespace

TEST_CASE("efficiency_at is ops over power") {
    auto run = uniform_run(1000, 100, 50);
    CHECK(m::efficiency_at(run, 1.0) == 10.0);
    auto zero = uniform_run(0, 50, 25);
    CHECK(m::efficiency_at(zero, 0.5) == 0.0);
    CHECK_THROWS_AS(m::efficiency_at(run, 0.55), std::invalid_argument);
}

TEST_CASE("overall efficiency includes the idle interval") {
    auto run = uniform_run(100, 10, 10);
    CHECK(m::overall_efficiency(run) == doctest::Approx(1000.0 / 110.0));
}

TEST_CASE("recomputed overall efficiency matches the printed scores") {
    auto intel = parsed_corpus_run("power_ssj2008-20230207-00880");
    CHECK(std::abs(m::overall_efficiency(intel) - 15112) < 0.5);
    CHECK(std::abs(m::overall_efficiency(intel) - intel.reported_overall_efficiency) < 0.5);

    auto amd = parsed_corpus_run("power_ssj2008-20230808-00913");
    CHECK(std::abs(m::overall_efficiency(amd) - 31634) < 0.5);
    CHECK(std::abs(m::overall_efficiency(amd) - amd.reported_overall_efficiency) < 0.5);
}

TEST_CASE("relative efficiency") {
    auto run = uniform_run(1000, 100, 50);
    CHECK(m::relative_efficiency(run, 1.0) == 1.0);

    // ops proportional to power at every level
    std::vector<double> powers, ops;
    for (int i = 0; i < 10; ++i) {
        double load = 1.0 - 0.1 * i;
        powers.push_back(200.0 * load + 40.0);
        ops.push_back(powers.back() * 7.5);
    }
    auto proportional = synthetic_run(powers, ops, 40.0);
    for (const auto& level : proportional.levels) {
        CHECK(m::relative_efficiency(proportional, level.target_load) ==
              doctest::Approx(1.0));
    }

    std::vector<double> p2(10, 100.0), o2(10, 1000.0);
    p2[3] = 60.0;   // 70% level
    o2[3] = 700.0;
    auto mixed = synthetic_run(p2, o2, 50.0);
    CHECK(m::relative_efficiency(mixed, 0.7) == doctest::Approx(700.0 / 60.0 / 10.0));
}

TEST_CASE("idle fraction") {
    std::vector<double> powers(10, 120.0), ops(10, 1.0);
    auto run = synthetic_run(powers, ops, 30.0);
    CHECK(m::idle_fraction(run) == doctest::Approx(0.25));
    run.idle_power_w = 120.0;
    CHECK(m::idle_fraction(run) == doctest::Approx(1.0));
}

TEST_CASE("extrapolated idle is the exact two-point line at zero load") {
    std::vector<double> powers(10, 40.0), ops(10, 1.0);
    auto flat = synthetic_run(powers, ops, 40.0);
    CHECK(m::extrapolated_idle(flat) == doctest::Approx(40.0));

    powers[8] = 150.0;  // 20%
    powers[9] = 100.0;  // 10%
    auto sloped = synthetic_run(powers, ops, 40.0);
    CHECK(m::extrapolated_idle(sloped) == doctest::Approx(50.0));

    powers[8] = 110.0;
    powers[9] = 50.0;
    auto steep = synthetic_run(powers, ops, 20.0);
    CHECK(m::extrapolated_idle(steep) == doctest::Approx(-10.0));
    auto computed = m::compute(steep);
    CHECK(computed.extrapolated_idle_nonpositive);
    CHECK(computed.eiq_pathological);
    CHECK(computed.eiq == doctest::Approx(-0.5));
}

TEST_CASE("eiq") {
    std::vector<double> powers(10, 40.0), ops(10, 1.0);
    CHECK(m::eiq(synthetic_run(powers, ops, 40.0)) == doctest::Approx(1.0));
    powers[8] = 50.0;
    powers[9] = 50.0;
    CHECK(m::eiq(synthetic_run(powers, ops, 25.0)) == doctest::Approx(2.0));
}

TEST_CASE("per-socket power") {
    std::vector<double> powers(10, 600.0), ops(10, 1.0);
    auto two_sockets = synthetic_run(powers, ops, 100.0, 2);
    CHECK(m::per_socket_power(two_sockets, 1.0) == doctest::Approx(300.0));
    CHECK(m::per_socket_power(two_sockets, m::kIdleLevel) == doctest::Approx(50.0));
    auto one_socket = synthetic_run(powers, ops, 100.0, 1);
    CHECK(m::per_socket_power(one_socket, 1.0) == doctest::Approx(600.0));
}

TEST_CASE("overall efficiency never exceeds the best per-level efficiency") {
    auto run = parsed_corpus_run("power_ssj2008-20230808-00913");
    auto computed = m::compute(run);
    double best = 0;
    for (const auto& [load, eff] : computed.efficiency_per_level) best = std::max(best, eff);
    CHECK(computed.overall_efficiency <= best);
}
