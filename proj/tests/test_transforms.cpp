#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "comtom/states.hpp"
#include "comtom/transforms.hpp"

using namespace comtom;

namespace {
const double kPi = std::acos(-1.0);

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}
}  // namespace

TEST_CASE("density_to_wigner on the ground state") {
    GaussianStateParams g = GaussianStateParams::ground(1);
    auto rho = analytic_density(AnalyticState(g), {AxisGrid(-8.0, 8.0, 129)});
    auto W = density_to_wigner(rho);

    double worst = 0.0;
    for (int iq = 0; iq < W.qgrids[0].n; iq += 4)
        for (int ip = 0; ip < W.pgrids[0].n; ip += 4) {
            const double q = W.qgrids[0].point(iq), p = W.pgrids[0].point(ip);
            const int idx[2] = {iq, ip};
            worst = std::max(worst, std::abs(W.values(idx) - std::exp(-q * q - p * p) / kPi));
        }
    CHECK(worst < 1e-6);
    CHECK(std::abs(W.integral() - 1.0) < 1e-8);
}

TEST_CASE("density_to_wigner thermal second moments") {
    ThermalStateParams th({1.0}, 1.0);
    auto rho = analytic_density(AnalyticState(th), {AxisGrid(-9.0, 9.0, 151)});
    auto W = density_to_wigner(rho);

    double q2 = 0.0, p2 = 0.0;
    std::vector<int> idx(2, 0);
    do {
        const double q = W.qgrids[0].point(idx[0]), p = W.pgrids[0].point(idx[1]);
        const double w = W.values(idx) * W.qgrids[0].trapz_weight(idx[0]) * W.pgrids[0].trapz_weight(idx[1]);
        q2 += q * q * w;
        p2 += p * p * w;
    } while (W.values.next_index(idx));

    // Fock-basis thermal oracle: <q^2> = <p^2> = sum p_n (n + 1/2).
    double mom = 0.0, z = 0.0;
    for (int n = 0; n < 300; ++n) {
        mom += std::exp(-th.beta * n) * (n + 0.5);
        z += std::exp(-th.beta * n);
    }
    mom /= z;
    CHECK(std::abs(q2 - mom) < 1e-6);
    CHECK(std::abs(p2 - mom) < 1e-6);
}

TEST_CASE("density_to_wigner rejects non-real output and Fock-1 value") {
    FockStateParams one({1});
    auto rho = analytic_density(AnalyticState(one), {AxisGrid(-8.0, 8.0, 129)});
    auto W = density_to_wigner(rho);
    // W(0,0) = -1/pi for the first excited state.
    const int i0 = (W.qgrids[0].n - 1) / 2, j0 = (W.pgrids[0].n - 1) / 2;
    const int idx[2] = {i0, j0};
    CHECK(W.values(idx) == doctest::Approx(-1.0 / kPi).epsilon(1e-5));

    // A non-Hermitian input must be refused.
    auto bad = analytic_density(AnalyticState(one), {AxisGrid(-6.0, 6.0, 65)});
    const int ij[2] = {10, 20};
    bad.values(ij) += Complex(0.5, 0.5);
    CHECK_THROWS_AS(density_to_wigner(bad), std::invalid_argument);
}

TEST_CASE("wigner/density round trips") {
    GaussianStateParams g = GaussianStateParams::pure({0.4}, {-0.3}, {1.2});
    auto rho = analytic_density(AnalyticState(g), {AxisGrid(-8.0, 8.0, 129)});
    auto W = density_to_wigner(rho);
    auto back = wigner_to_density(W);
    REQUIRE(back.qgrids[0] == rho.qgrids[0]);
    double worst = 0.0;
    for (std::size_t i = 0; i < rho.values.size(); ++i)
        worst = std::max(worst, std::abs(back.values.v[i] - rho.values.v[i]));
    CHECK(worst < 1e-8);

    // rho(0,0) = |psi(0)|^2 = 1/sqrt(pi) for the ground state.
    GaussianStateParams g0 = GaussianStateParams::ground(1);
    auto W0 = density_to_wigner(analytic_density(AnalyticState(g0), {AxisGrid(-8.0, 8.0, 129)}));
    auto r0 = wigner_to_density(W0);
    const int mid = (r0.qgrids[0].n - 1) / 2;
    const int idx[2] = {mid, mid};
    CHECK(r0.values(idx).real() == doctest::Approx(1.0 / std::sqrt(kPi)).epsilon(1e-8));

    // Fock-1 round trip at the composed-transform tolerance.
    FockStateParams one({1});
    auto rho1 = analytic_density(AnalyticState(one), {AxisGrid(-8.0, 8.0, 129)});
    auto W1 = density_to_wigner(rho1);
    auto back1 = wigner_to_density(W1);
    double worst1 = 0.0;
    for (std::size_t i = 0; i < rho1.values.size(); ++i)
        worst1 = std::max(worst1, std::abs(back1.values.v[i] - rho1.values.v[i]));
    CHECK(worst1 < 1e-6);
}

TEST_CASE("wigner_to_com reproduces the ground-state tomogram at 1e-4") {
    auto W = sample_wigner(GaussianStateParams::ground(1), {AxisGrid(-8.0, 8.0, 257)},
                           {AxisGrid(-8.0, 8.0, 257)});
    const AxisGrid xg(-10.0, 10.0, 801);
    auto t = wigner_to_com(W, {Frame::single(1.0, 0.0), Frame::single(0.6, -0.8)}, xg);
    GaussianStateParams g = GaussianStateParams::ground(1);
    for (int f = 0; f < t.n_frames(); ++f) {
        std::vector<double> exact(xg.n);
        for (int i = 0; i < xg.n; ++i) exact[i] = gaussian_tomogram(g, t.frames[f], xg.point(i));
        CHECK(max_abs_diff(t.row(f), exact) < 1e-4);
    }
}

TEST_CASE("wigner_to_com marginal identities") {
    GaussianStateParams g = GaussianStateParams::pure({0.8}, {0.4}, {1.0});
    auto W = sample_wigner(AnalyticState(g), {AxisGrid(-8.0, 8.0, 257)}, {AxisGrid(-8.0, 8.0, 257)});
    const AxisGrid xg(-10.0, 10.0, 801);
    auto t = wigner_to_com(W, {Frame::single(1.0, 0.0), Frame::single(0.0, 1.0)}, xg);

    // Frame (1,0) gives the position density; frame (0,1) the momentum density.
    double worst_q = 0.0, worst_p = 0.0;
    for (int i = 0; i < xg.n; ++i) {
        const double X = xg.point(i);
        const double posd = std::sqrt(g.A[0] / kPi) * std::exp(-g.A[0] * (X - g.x[0]) * (X - g.x[0]));
        const double momd = std::sqrt(g.B[0] / kPi) * std::exp(-g.B[0] * (X - g.y[0]) * (X - g.y[0]));
        worst_q = std::max(worst_q, std::abs(t.at(0, i) - posd));
        worst_p = std::max(worst_p, std::abs(t.at(1, i) - momd));
    }
    CHECK(worst_q < 1e-4);
    CHECK(worst_p < 1e-4);
}

TEST_CASE("wigner_to_com two-mode Fock (0,1) matches the closed form") {
    FockStateParams f01({0, 1});
    std::vector<AxisGrid> qg(2, AxisGrid(-6.0, 6.0, 51)), pg(2, AxisGrid(-6.0, 6.0, 51));
    auto W = sample_wigner(AnalyticState(f01), qg, pg);
    const AxisGrid xg(-9.0, 9.0, 721);
    const Frame fr({1.0, 0.0}, {0.0, 1.0});
    auto t = wigner_to_com(W, {fr}, xg);
    const auto exact = fock_tomogram_profile(f01, fr, xg);
    CHECK(max_abs_diff(t.row(0), exact) < 1e-3);
}

TEST_CASE("wigner_to_com coverage error when the X grid is too small") {
    auto W = sample_wigner(GaussianStateParams::pure({4.0}, {0.0}, {1.0}), {AxisGrid(-10.0, 10.0, 129)},
                           {AxisGrid(-8.0, 8.0, 129)});
    CHECK_THROWS_AS(wigner_to_com(W, {Frame::single(1.0, 0.0)}, AxisGrid(-2.0, 2.0, 101)), CoverageError);
}

TEST_CASE("characteristic of the ground state") {
    GaussianStateParams g = GaussianStateParams::ground(1);
    std::vector<Frame> frames{Frame::single(0.05, 0.05), Frame::single(1.0, 0.0), Frame::single(0.7, -0.7)};
    auto t = sample_tomogram(AnalyticState(g), frames, AxisGrid(-10.0, 10.0, 601));
    auto chi = com_to_characteristic(t);
    for (std::size_t f = 0; f < frames.size(); ++f) {
        const double C = frames[f].norm2();
        CHECK(std::abs(chi.values[f] - std::exp(-0.25 * C)) < 1e-9);
        CHECK(std::abs(chi.values[f]) <= 1.0 + 1e-10);
    }
    // Normalization limit: chi -> 1 for the smallest stored frame.
    CHECK(std::abs(chi.values[0] - 1.0) < 2e-3);

    ThermalStateParams th({1.0}, 1.0);
    auto tt = sample_tomogram(AnalyticState(th), {Frame::single(0.9, 0.3)}, AxisGrid(-12.0, 12.0, 801));
    auto cth = com_to_characteristic(tt);
    CHECK(std::abs(cth.values[0] - std::exp(-0.25 * thermal_tomogram_D(th, tt.frames[0]))) < 1e-9);
}

TEST_CASE("com_to_wigner reconstructs the ground state") {
    GaussianStateParams g = GaussianStateParams::ground(1);
    auto grid = CartesianFrameGrid::square(9.0, 45);
    auto t = sample_tomogram(AnalyticState(g), grid.frames_no_origin(), AxisGrid(-60.0, 60.0, 2401));
    auto W = com_to_wigner(t, grid, {AxisGrid(-6.0, 6.0, 61)}, {AxisGrid(-6.0, 6.0, 61)});
    const int idx0[2] = {30, 30};
    CHECK(W.values(idx0) == doctest::Approx(1.0 / kPi).epsilon(1e-5));

    double worst = 0.0;
    std::vector<int> idx(2, 0);
    do {
        const double qa[1] = {W.qgrids[0].point(idx[0])}, pa[1] = {W.pgrids[0].point(idx[1])};
        worst = std::max(worst, std::abs(W.values(idx) - analytic_wigner(g, qa, pa)));
    } while (W.values.next_index(idx));
    CHECK(worst < 1e-5);
}

TEST_CASE("wigner -> com -> wigner round trip") {
    GaussianStateParams g = GaussianStateParams::ground(1);
    auto W = sample_wigner(AnalyticState(g), {AxisGrid(-8.0, 8.0, 129)}, {AxisGrid(-8.0, 8.0, 129)});
    auto grid = CartesianFrameGrid::square(9.0, 45);
    const AxisGrid xg(-60.0, 60.0, 3201);
    auto t = wigner_to_com(W, grid.frames_no_origin(), xg);
    auto W2 = com_to_wigner(t, grid, {AxisGrid(-6.0, 6.0, 49)}, {AxisGrid(-6.0, 6.0, 49)});
    double worst = 0.0;
    std::vector<int> idx(2, 0);
    do {
        const double qa[1] = {W2.qgrids[0].point(idx[0])}, pa[1] = {W2.pgrids[0].point(idx[1])};
        worst = std::max(worst, std::abs(W2.values(idx) - analytic_wigner(g, qa, pa)));
    } while (W2.values.next_index(idx));
    CHECK(worst < 1e-4);
}

TEST_CASE("com_to_wigner recovers Fock-1 negativity") {
    FockStateParams one({1});
    auto grid = CartesianFrameGrid::square(10.0, 41);
    auto t = sample_tomogram(AnalyticState(one), grid.frames_no_origin(), AxisGrid(-106.0, 106.0, 3001));
    auto W = com_to_wigner(t, grid, {AxisGrid(-5.0, 5.0, 41)}, {AxisGrid(-5.0, 5.0, 41)});
    const int idx0[2] = {20, 20};
    CHECK(W.values(idx0) == doctest::Approx(-1.0 / kPi).epsilon(1e-4));
}

TEST_CASE("com_to_wigner boundary decay check") {
    // A strongly position-squeezed Gaussian has a characteristic spread far
    // beyond a [-4, 4] frame grid in the nu direction.
    GaussianStateParams sq = GaussianStateParams::pure({0.0}, {0.0}, {25.0});
    auto grid = CartesianFrameGrid::square(4.0, 17);
    auto t = sample_tomogram(AnalyticState(sq), grid.frames_no_origin(), AxisGrid(-40.0, 40.0, 1601));
    CHECK_THROWS_AS(com_to_wigner(t, grid, {AxisGrid(-4.0, 4.0, 33)}, {AxisGrid(-4.0, 4.0, 33)}),
                    CoverageError);
}

TEST_CASE("symplectic_to_com") {
    // Product two-mode ground state at frame mu = (1,1), nu = 0: the projected
    // distribution is a unit-variance Gaussian.
    const Frame fr({1.0, 1.0}, {0.0, 0.0});
    SymplecticTomogram ws(ModeLayout::unit(2), {fr}, {AxisGrid(-7.0, 7.0, 201), AxisGrid(-7.0, 7.0, 201)});
    {
        std::vector<int> idx(3, 0);
        do {
            const double y1 = ws.xgrids[0].point(idx[1]), y2 = ws.xgrids[1].point(idx[2]);
            ws.values(idx) = std::exp(-y1 * y1 - y2 * y2) / kPi;  // two position marginals
        } while (ws.values.next_index(idx));
    }
    const AxisGrid xg(-9.0, 9.0, 721);
    auto t = symplectic_to_com(ws, xg);
    double worst = 0.0;
    for (int i = 0; i < xg.n; ++i)
        worst = std::max(worst, std::abs(t.at(0, i) - std::exp(-0.5 * xg.point(i) * xg.point(i)) /
                                                          std::sqrt(2.0 * kPi)));
    CHECK(worst < 1e-4);

    // Single-mode case: the map is the identity.
    GaussianStateParams g = GaussianStateParams::ground(1);
    const Frame f1 = Frame::single(0.8, -0.6);
    SymplecticTomogram w1(ModeLayout::unit(1), {f1}, {AxisGrid(-8.0, 8.0, 401)});
    std::vector<int> idx(2, 0);
    do {
        w1.values(idx) = gaussian_tomogram(g, f1, w1.xgrids[0].point(idx[1]));
    } while (w1.values.next_index(idx));
    auto t1 = symplectic_to_com(w1, AxisGrid(-8.0, 8.0, 401));
    std::vector<double> exact(t1.xgrid.n);
    for (int i = 0; i < t1.xgrid.n; ++i) exact[i] = gaussian_tomogram(g, f1, t1.xgrid.point(i));
    CHECK(max_abs_diff(t1.row(0), exact) < 1e-6);
}

TEST_CASE("symplectic_to_com two-mode Fock (0,1)") {
    FockStateParams f01({0, 1});
    const Frame fr({1.0, 0.0}, {0.0, 1.0});
    // w_s factorizes into per-mode quadrature densities at scales C_j = 1.
    SymplecticTomogram ws(ModeLayout::unit(2), {fr}, {AxisGrid(-7.0, 7.0, 201), AxisGrid(-7.0, 7.0, 201)});
    std::vector<int> idx(3, 0);
    do {
        const double y1 = ws.xgrids[0].point(idx[1]), y2 = ws.xgrids[1].point(idx[2]);
        ws.values(idx) = std::exp(-y1 * y1) / std::sqrt(kPi) *
                         (2.0 * y2 * y2 * std::exp(-y2 * y2) / std::sqrt(kPi));
    } while (ws.values.next_index(idx));
    const AxisGrid xg(-9.0, 9.0, 721);
    auto t = symplectic_to_com(ws, xg);
    const auto exact = fock_tomogram_profile(f01, fr, xg);
    CHECK(max_abs_diff(t.row(0), exact) < 1e-3);
}

TEST_CASE("com_to_symplectic single mode recovers the profile") {
    GaussianStateParams g = GaussianStateParams::ground(1);
    const Frame base = Frame::single(0.8, 0.6);  // C = 1
    std::vector<AxisGrid> kg{AxisGrid(-14.0, 14.0, 141)};
    auto frames = ray_frames(base, kg);
    auto t = sample_tomogram(AnalyticState(g), frames, AxisGrid(-72.0, 72.0, 2881));
    auto ws = com_to_symplectic(t, base, kg, {AxisGrid(-5.0, 5.0, 101)});
    double worst = 0.0;
    std::vector<int> idx(2, 0);
    do {
        const double X = ws.xgrids[0].point(idx[1]);
        worst = std::max(worst, std::abs(ws.values(idx) - gaussian_tomogram(g, base, X)));
    } while (ws.values.next_index(idx));
    CHECK(worst < 1e-4);
}

TEST_CASE("com_to_symplectic two-mode product state") {
    GaussianStateParams g2 = GaussianStateParams::ground(2);
    const Frame base({1.0, 1.0}, {0.0, 0.0});
    std::vector<AxisGrid> kg{AxisGrid(-9.0, 9.0, 121), AxisGrid(-9.0, 9.0, 121)};
    auto ws = com_to_symplectic([&](const Frame& f, double X) { return gaussian_tomogram(g2, f, X); },
                                ModeLayout::unit(2), base, kg,
                                {AxisGrid(-4.0, 4.0, 41), AxisGrid(-4.0, 4.0, 41)});
    double worst = 0.0;
    std::vector<int> idx(3, 0);
    do {
        const double y1 = ws.xgrids[0].point(idx[1]), y2 = ws.xgrids[1].point(idx[2]);
        const double exact = std::exp(-y1 * y1 - y2 * y2) / kPi;
        worst = std::max(worst, std::abs(ws.values(idx) - exact));
    } while (ws.values.next_index(idx));
    CHECK(worst < 1e-3);
}

TEST_CASE("symplectic round trip") {
    GaussianStateParams g = GaussianStateParams::ground(1);
    const Frame base = Frame::single(0.8, 0.6);
    std::vector<AxisGrid> kg{AxisGrid(-14.0, 14.0, 141)};
    auto t = sample_tomogram(AnalyticState(g), ray_frames(base, kg), AxisGrid(-72.0, 72.0, 2881));
    auto ws = com_to_symplectic(t, base, kg, {AxisGrid(-6.0, 6.0, 301)});
    auto back = symplectic_to_com(ws, AxisGrid(-6.0, 6.0, 301));
    std::vector<double> exact(back.xgrid.n);
    for (int i = 0; i < back.xgrid.n; ++i) exact[i] = gaussian_tomogram(g, base, back.xgrid.point(i));
    CHECK(max_abs_diff(back.row(0), exact) < 1e-3);
}

TEST_CASE("pure_state_tomogram fractional Fourier route") {
    FockStateParams vac({0}), one({1});
    auto psi0 = [&](double q) { const double qa[1] = {q}; return analytic_wavefunction(vac, qa); };
    auto psi1 = [&](double q) { const double qa[1] = {q}; return analytic_wavefunction(one, qa); };

    const AxisGrid xg(-6.0, 6.0, 241);

    // Frame (0,1): pure momentum distribution e^{-X^2}/sqrt(pi).
    auto prof = pure_state_tomogram({psi0}, Frame::single(0.0, 1.0), xg);
    double worst = 0.0;
    for (int i = 0; i < xg.n; ++i)
        worst = std::max(worst, std::abs(prof[i] - std::exp(-xg.point(i) * xg.point(i)) / std::sqrt(kPi)));
    CHECK(worst < 1e-6);

    // Frame (1,1): C = 2.
    auto prof2 = pure_state_tomogram({psi0}, Frame::single(1.0, 1.0), xg);
    worst = 0.0;
    for (int i = 0; i < xg.n; ++i)
        worst = std::max(worst, std::abs(prof2[i] - std::exp(-0.5 * xg.point(i) * xg.point(i)) /
                                                        std::sqrt(2.0 * kPi)));
    CHECK(worst < 1e-6);

    // Fock 1 at frame (0,1): 2 X^2 e^{-X^2}/sqrt(pi).
    auto prof3 = pure_state_tomogram({psi1}, Frame::single(0.0, 1.0), xg);
    worst = 0.0;
    for (int i = 0; i < xg.n; ++i) {
        const double X = xg.point(i);
        worst = std::max(worst, std::abs(prof3[i] - 2.0 * X * X * std::exp(-X * X) / std::sqrt(kPi)));
    }
    CHECK(worst < 1e-6);

    CHECK_THROWS_AS(pure_state_tomogram({psi0}, Frame::single(1.0, 0.0), xg), std::invalid_argument);
}

TEST_CASE("pure_state_tomogram multimode and full-callable routes") {
    FockStateParams f01({0, 1});
    auto psi0 = [&](double q) {
        const double qa[1] = {q};
        return analytic_wavefunction(FockStateParams({0}), qa);
    };
    auto psi1 = [&](double q) {
        const double qa[1] = {q};
        return analytic_wavefunction(FockStateParams({1}), qa);
    };
    const Frame fr({0.4, -0.3}, {0.8, 0.9});
    const AxisGrid xg(-6.0, 6.0, 121);
    auto prof = pure_state_tomogram({psi0, psi1}, fr, xg);
    const auto exact = fock_tomogram_profile(f01, fr, xg);
    CHECK(max_abs_diff(prof, exact) < 1e-4);

    auto full = pure_state_tomogram_full(
        [&](std::span<const double> q) { return analytic_wavefunction(f01, q); }, 2, fr, xg);
    CHECK(max_abs_diff(full, exact) < 1e-3);
}

TEST_CASE("representation triangle for a pure Gaussian") {
    GaussianStateParams g = GaussianStateParams::pure({0.5}, {0.3}, {1.1});
    auto W = sample_wigner(AnalyticState(g), {AxisGrid(-8.0, 8.0, 257)}, {AxisGrid(-8.0, 8.0, 257)});
    const AxisGrid xg(-8.0, 8.0, 481);
    const Frame fr = Frame::single(0.6, -0.8);
    auto radon = wigner_to_com(W, {fr}, xg);
    auto frac = pure_state_tomogram({[&](double q) {
                                        const double qa[1] = {q};
                                        return analytic_wavefunction(g, qa);
                                    }},
                                    fr, xg);
    std::vector<double> exact(xg.n);
    for (int i = 0; i < xg.n; ++i) exact[i] = gaussian_tomogram(g, fr, xg.point(i));
    CHECK(max_abs_diff(radon.row(0), exact) < 1e-3);
    CHECK(max_abs_diff(frac, exact) < 1e-3);
    CHECK(max_abs_diff(radon.row(0), frac) < 1e-3);
}

TEST_CASE("|chi| <= 1 across states and random frames") {
    std::vector<AnalyticState> states{GaussianStateParams::pure({0.7}, {-0.5}, {0.9}),
                                      ThermalStateParams({1.0}, 0.7), FockStateParams({2}),
                                      CoherentStateParams({Complex(0.8, 0.3)})};
    auto frames = random_unit_frames(1, 20, 11);
    for (const auto& s : states) {
        auto t = sample_tomogram(s, frames, AxisGrid(-12.0, 12.0, 901));
        auto chi = com_to_characteristic(t);
        for (const auto& z : chi.values) CHECK(std::abs(z) <= 1.0 + 1e-10);
    }
}
