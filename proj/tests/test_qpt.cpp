#include <doctest.h>

#include <cmath>
#include <optional>
#include <vector>

#include "liouspec/qpt.hpp"
#include "liouspec/spectra.hpp"

using namespace liouspec;
using fock::FockSpace;
using models::DissipationChannel;
using models::HamiltonianParams;

namespace {

const std::vector<DissipationChannel> kLinear{{1, 0.1, 0.0}};

qpt::SweepConfig base_config() {
    qpt::SweepConfig c;
    c.model = HamiltonianParams::dimensionless(-1.0, 0.0);
    c.channels = kLinear;
    c.axis = qpt::Axis::xi;
    c.grid = {0.0, 0.5, 1.0};
    c.n_list = {10};
    c.observables = {qpt::Observable::gap};
    c.workers = 1;
    return c;
}

}  // namespace

TEST_CASE("sweep config validation") {
    auto c = base_config();
    CHECK_NOTHROW(qpt::validate(c));

    c.grid = {0.5, 0.5};
    CHECK_THROWS(qpt::validate(c));
    c.grid = {1.0, 0.5};
    CHECK_THROWS(qpt::validate(c));
    c = base_config();
    c.n_list.clear();
    CHECK_THROWS(qpt::validate(c));
    c = base_config();
    c.observables.clear();
    CHECK_THROWS(qpt::validate(c));
}

TEST_CASE("order parameter: cold oscillator empties, critical model is frozen") {
    CHECK(qpt::order_parameter(HamiltonianParams::harmonic(-1.0), kLinear, FockSpace{10}) <
          1e-10);

    // Scaled eta = -1 at chi = 0.5, N = 80, zeta = 0.1; value frozen from
    // this implementation and compatible with the finite-size scaling law
    // 0.1979 * N^-0.4699 (= 0.0254 at N = 80) to better than 1%.
    const auto p = HamiltonianParams::scaled_model(-1.0, 0.5, 80);
    const double nu = qpt::order_parameter(p, kLinear, FockSpace{80});
    CHECK(nu == doctest::Approx(0.0252444606).epsilon(1e-6));
    CHECK(std::abs(nu - 0.0254) / 0.0254 < 0.15);
}

TEST_CASE("order parameter approaches one half deep in the driven phase") {
    const auto p = HamiltonianParams::scaled_model(-1.0, 1.0, 30);
    const double nu = qpt::order_parameter(p, kLinear, FockSpace{30});
    CHECK(std::abs(nu - 0.5) < 0.08);
}

TEST_CASE("relaxation time at zero drive is 2/kappa for any detuning") {
    for (double eta : {-1.0, 0.0, 2.0, 3.0}) {
        auto c = base_config();
        c.model = HamiltonianParams::dimensionless(eta, 0.0);
        c.grid = {0.0};
        c.n_list = {12};
        c.observables = {qpt::Observable::t_x};
        const auto rows = qpt::sweep(c).rows;
        REQUIRE(rows.size() == 1);
        REQUIRE(rows[0].error.empty());
        CHECK(*rows[0].t_x == doctest::Approx(20.0).epsilon(1e-9));
    }
}

TEST_CASE("sweep records per-row failures and keeps going") {
    auto c = base_config();
    // A dead channel leaves the steady state degenerate, so each nu row
    // fails on its own while the sweep still returns a complete table.
    c.channels = {{1, 0.0, 0.0}};
    c.grid = {0.0, 0.5};
    c.observables = {qpt::Observable::nu};
    const auto result = qpt::sweep(c);
    REQUIRE(result.rows.size() == 2);
    for (const auto& row : result.rows) {
        CHECK(!row.error.empty());
        CHECK(!row.nu.has_value());
    }
}

TEST_CASE("sweep validation rejects an eta axis without a Kerr scale") {
    auto c = base_config();
    c.model = HamiltonianParams::harmonic(-1.0);
    c.axis = qpt::Axis::eta;
    c.grid = {-1.0, 0.0};
    CHECK_THROWS(qpt::validate(c));
}

TEST_CASE("sweep rows are worker-count independent, bitwise") {
    auto c = base_config();
    c.model = HamiltonianParams::dimensionless(-1.0, 0.0);
    c.grid = {0.0, 0.8, 1.6, 2.4};
    c.n_list = {8, 12};
    c.observables = {qpt::Observable::nu, qpt::Observable::gap, qpt::Observable::t_x};

    c.workers = 1;
    const auto serial = qpt::sweep(c);
    c.workers = 3;
    const auto parallel = qpt::sweep(c);
    REQUIRE(serial.rows.size() == parallel.rows.size());
    for (std::size_t k = 0; k < serial.rows.size(); ++k) {
        CHECK(serial.rows[k].axis_value == parallel.rows[k].axis_value);
        CHECK(serial.rows[k].big_n == parallel.rows[k].big_n);
        CHECK(*serial.rows[k].nu == *parallel.rows[k].nu);
        CHECK(*serial.rows[k].gap == *parallel.rows[k].gap);
        CHECK(*serial.rows[k].t_x == *parallel.rows[k].t_x);
    }
}

TEST_CASE("order parameter stays inside [0, 1] along a drive scan") {
    auto c = base_config();
    c.model = HamiltonianParams::scaled_model(1.0, 0.0, 15);
    c.axis = qpt::Axis::chi;
    c.grid = {0.05, 0.2, 0.35, 0.5};
    c.n_list = {15};
    c.observables = {qpt::Observable::nu};
    for (const auto& row : qpt::sweep(c).rows) {
        REQUIRE(row.error.empty());
        CHECK(*row.nu >= 0.0);
        CHECK(*row.nu <= 1.0 + 1e-6);
    }
}

TEST_CASE("power-law fit recovers exact synthetic data") {
    std::vector<std::pair<double, double>> pts;
    for (double n : {200.0, 500.0, 1000.0, 2000.0})
        pts.push_back({n, 0.2065 * std::pow(n, -0.6365)});
    const auto fit = qpt::fit_power_law(pts);
    CHECK(fit.amplitude == doctest::Approx(0.2065).epsilon(1e-10));
    CHECK(fit.exponent == doctest::Approx(-0.6365).epsilon(1e-10));
    CHECK(fit.residual < 1e-12);
}

TEST_CASE("power-law fit edge cases") {
    std::vector<std::pair<double, double>> flat{{1.0, 3.0}, {10.0, 3.0}, {100.0, 3.0}};
    const auto fit = qpt::fit_power_law(flat);
    CHECK(fit.exponent == doctest::Approx(0.0));
    CHECK(fit.amplitude == doctest::Approx(3.0));

    CHECK_THROWS(qpt::fit_power_law({{1.0, 1.0}, {2.0, 0.5}}));
    CHECK_THROWS(qpt::fit_power_law({{1.0, 1.0}, {2.0, -0.5}, {3.0, 0.1}}));
}

TEST_CASE("kissing point detection: boundary report and unbracketed minima") {
    // At eta = 0 the even and odd ground states are exactly degenerate for
    // every drive (the quartic term factorizes), so the gap floor starts at
    // the left edge and is reported as the boundary value.
    std::vector<double> grid;
    for (double xi = 0.0; xi <= 1.01; xi += 0.1) grid.push_back(xi);
    CHECK(qpt::detect_kissing_point(HamiltonianParams::dimensionless(0.0, 0.0), grid,
                                    FockSpace{60}) == 0.0);

    // For eta < 0 the even-odd splitting decreases strictly monotonically
    // (the pair merges only asymptotically), so any finite window puts the
    // minimum on the right edge and the detector refuses to guess.
    grid.clear();
    for (double xi = 1.0; xi <= 3.01; xi += 0.05) grid.push_back(xi);
    CHECK_THROWS(qpt::detect_kissing_point(HamiltonianParams::dimensionless(-1.0, 0.0), grid,
                                           FockSpace{100}));

    grid.clear();
    for (double xi = 0.2; xi <= 1.01; xi += 0.1) grid.push_back(xi);
    CHECK_THROWS(qpt::detect_kissing_point(HamiltonianParams::dimensionless(-1.0, 0.0), grid,
                                           FockSpace{60}));

    CHECK_THROWS(qpt::detect_kissing_point(HamiltonianParams::dimensionless(-1.0, 0.0), {1.0},
                                           FockSpace{20}));
}

TEST_CASE("second-order detector reads the gap maximum per system size") {
    // Synthetic gap curves peaking at chi 0.64 / 0.58 / 0.54.
    qpt::SweepResult result;
    const std::vector<std::pair<int, double>> peaks{{10, 0.64}, {20, 0.58}, {40, 0.54}};
    for (double chi = 0.30; chi <= 0.801; chi += 0.02)
        for (const auto& [n, peak] : peaks) {
            qpt::SweepRow row;
            row.axis_value = chi;
            row.big_n = n;
            row.gap = 1.0 - (chi - peak) * (chi - peak);
            result.rows.push_back(row);
        }
    const auto crit = qpt::detect_critical_point_2nd(result, 0.5);
    CHECK(crit.chi_c == doctest::Approx(0.5));
    CHECK(crit.chi_c_from_theory);
    REQUIRE(crit.branches.size() == 3);
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK(crit.branches[k].big_n == peaks[k].first);
        CHECK(crit.branches[k].chi_max == doctest::Approx(peaks[k].second).epsilon(1e-6));
        CHECK(crit.branches[k].delta_chi1 ==
              doctest::Approx(peaks[k].second - 0.5).epsilon(1e-4));
    }
    // Without a supplied critical value, the largest size speaks.
    const auto est = qpt::detect_critical_point_2nd(result);
    CHECK(!est.chi_c_from_theory);
    CHECK(est.chi_c == doctest::Approx(0.54).epsilon(1e-6));
}

TEST_CASE("second-order detector refuses edge maxima") {
    qpt::SweepResult result;
    for (double chi = 0.30; chi <= 0.801; chi += 0.05) {
        qpt::SweepRow row;
        row.axis_value = chi;
        row.big_n = 10;
        row.gap = chi;  // monotone: maximum sits on the window edge
        result.rows.push_back(row);
    }
    CHECK_THROWS(qpt::detect_critical_point_2nd(result, 0.5));
}

TEST_CASE("first-order jump detector") {
    std::vector<std::pair<double, double>> nu;
    for (double chi = 0.0; chi < 0.301; chi += 0.02)
        nu.push_back({chi, chi < 0.15 ? 0.01 * chi : 0.3 + 0.01 * chi});
    const auto jump = qpt::detect_first_order_jump(nu);
    CHECK(jump.chi_c == doctest::Approx(0.15).epsilon(0.01));
    CHECK(jump.jump == doctest::Approx(0.3).epsilon(0.01));

    std::vector<std::pair<double, double>> smooth;
    for (double chi = 0.0; chi < 0.301; chi += 0.02) smooth.push_back({chi, chi * chi});
    CHECK_THROWS(qpt::detect_first_order_jump(smooth));
}

TEST_CASE("finite differences: exact on quadratics inside, one-sided at the ends") {
    std::vector<std::pair<double, double>> rows;
    for (double x = 0.0; x <= 2.01; x += 0.25) rows.push_back({x, x * x});
    const auto d = qpt::finite_diff_derivative(rows);
    REQUIRE(d.size() == rows.size());
    for (std::size_t k = 1; k + 1 < d.size(); ++k)
        CHECK(d[k].second == doctest::Approx(2.0 * rows[k].first).epsilon(1e-12));
    // Forward/backward one-sided estimates at the boundary of a quadratic
    // carry the O(h) bias of h.
    CHECK(d.front().second == doctest::Approx(0.25));
    CHECK(d.back().second == doctest::Approx(2.0 * 2.0 - 0.25));

    CHECK_THROWS(qpt::finite_diff_derivative({{0.0, 0.0}, {1.0, 1.0}}));
}

TEST_CASE("extract_curve keeps only clean rows of the requested size") {
    qpt::SweepResult result;
    for (int k = 0; k < 4; ++k) {
        qpt::SweepRow row;
        row.axis_value = 0.1 * (3 - k);  // deliberately unsorted
        row.big_n = (k % 2 == 0) ? 10 : 20;
        row.gap = double(k);
        if (k == 2) row.error = "synthetic failure";
        result.rows.push_back(row);
    }
    const auto curve = qpt::extract_curve(result, 10, qpt::Observable::gap);
    REQUIRE(curve.size() == 1);  // row k=2 was the other N=10 entry and failed
    CHECK(curve[0].second == 0.0);
}

TEST_CASE("blocks and dense decompositions agree on the gap") {
    const auto p = HamiltonianParams::scaled_model(-1.0, 0.55, 10);
    const auto dense = spectra::sorted_spectrum(
        spectra::eigendecompose(liou::assemble(p, kLinear, FockSpace{10})));
    const auto blocks = spectra::sorted_spectrum(spectra::eigendecompose_blocks(
        liou::assemble_blocks(p, kLinear, FockSpace{10}, liou::SectorRule::z2_parity)));
    CHECK(std::abs(spectra::gaps(dense).gap - spectra::gaps(blocks).gap) < 1e-9);
}

TEST_CASE("truncation search is immediate for diagonal models") {
    CHECK(qpt::convergence_N(HamiltonianParams::dimensionless(3.0, 0.0), kLinear, 10, 1e-8) ==
          10);
}

TEST_CASE("truncation search under hard driving lands at the deep-well size") {
    // xi = 12 needs n_max = 40 (the well holds ~2 * n_eff = 40 levels);
    // the 10 slowest eigenvalues then move by under 1e-5 when doubling.
    const int n_conv =
        qpt::convergence_N(HamiltonianParams::dimensionless(0.0, 12.0), kLinear, 10, 1e-5);
    CHECK(n_conv == 40);
}

TEST_CASE("truncation search reports an exhausted budget") {
    CHECK_THROWS(qpt::convergence_N(HamiltonianParams::dimensionless(0.0, 2.0), kLinear, 10,
                                    1e-13, 10, 20));
}

TEST_CASE("relaxation surface over a small grid") {
    const auto result = qpt::relaxation_surface({0.0, 1.0}, {0.0}, 0.1, 0.0, FockSpace{10}, 1);
    REQUIRE(result.rows.size() == 2);
    for (const auto& row : result.rows) {
        REQUIRE(row.error.empty());
        CHECK(row.axis_value == 0.0);  // xi on the first axis
        REQUIRE(row.axis2.has_value());
        CHECK(*row.t_x == doctest::Approx(20.0).epsilon(1e-9));
    }
    CHECK(*result.rows[0].axis2 == 0.0);
    CHECK(*result.rows[1].axis2 == 1.0);
}
