#ifndef COMTOM_STATES_HPP
#define COMTOM_STATES_HPP

#include <variant>

#include "comtom/tomogram.hpp"

namespace comtom {

// Hermite recurrence overflows double well before n = 40 only for extreme
// arguments; desk-scale states stay far below the cap.
inline constexpr int kHermiteMaxOrder = 40;

/// Physicists' Hermite polynomial H_n(x) by the three-term recurrence.
double hermite(int n, double x);

/// Laguerre polynomial L_n(x) (characteristic functions of number states).
double laguerre(int n, double x);

/// Multimode Gaussian wave packet, Eq. psi_j = (A_j/pi)^{1/4} e^{-A_j(q-x_j)^2/2 + i y_j q}.
/// Pure states have B_j = 1/A_j; thermal-like Gaussians may have independent B_j.
struct GaussianStateParams {
    std::vector<double> x, y, A, B;

    GaussianStateParams() = default;
    GaussianStateParams(std::vector<double> x_, std::vector<double> y_, std::vector<double> A_,
                        std::vector<double> B_)
        : x(std::move(x_)), y(std::move(y_)), A(std::move(A_)), B(std::move(B_)) {
        validate();
    }
    static GaussianStateParams pure(std::vector<double> x_, std::vector<double> y_, std::vector<double> A_) {
        std::vector<double> B_(A_.size());
        for (std::size_t j = 0; j < A_.size(); ++j) B_[j] = 1.0 / A_[j];
        return GaussianStateParams(std::move(x_), std::move(y_), std::move(A_), std::move(B_));
    }
    static GaussianStateParams ground(int nd) {
        return pure(std::vector<double>(nd, 0.0), std::vector<double>(nd, 0.0), std::vector<double>(nd, 1.0));
    }
    int nd() const { return static_cast<int>(x.size()); }
    bool pure_state() const {
        for (int j = 0; j < nd(); ++j)
            if (std::abs(A[j] * B[j] - 1.0) > 1e-12) return false;
        return true;
    }
    void validate() const {
        const auto n = x.size();
        if (y.size() != n || A.size() != n || B.size() != n)
            throw std::invalid_argument("GaussianStateParams: field length mismatch");
        for (std::size_t j = 0; j < n; ++j)
            if (!(A[j] > 0.0) || !(B[j] > 0.0))
                throw std::invalid_argument("GaussianStateParams: widths must be positive");
    }
};

/// Thermal state of independent oscillators at inverse temperature beta.
struct ThermalStateParams {
    std::vector<double> omega;
    double beta = 1.0;
    double mass = 1.0;

    ThermalStateParams() = default;
    ThermalStateParams(std::vector<double> om, double beta_, double mass_ = 1.0)
        : omega(std::move(om)), beta(beta_), mass(mass_) {
        validate();
    }
    int nd() const { return static_cast<int>(omega.size()); }
    void validate() const {
        if (!(beta > 0.0)) throw std::invalid_argument("ThermalStateParams: beta must be positive");
        if (!(mass > 0.0)) throw std::invalid_argument("ThermalStateParams: mass must be positive");
        for (double w : omega)
            if (!(w > 0.0)) throw std::invalid_argument("ThermalStateParams: frequencies must be positive");
    }
    // Gaussian width parameters implied by the thermal density matrix.
    double derived_A(int j) const { return mass * omega[j] / (2.0 * std::sinh(omega[j] * beta)); }
    double derived_B(int j) const { return std::cosh(omega[j] * beta); }
};

/// Number state per mode; unit oscillator (m = omega = hbar = 1) implied.
struct FockStateParams {
    std::vector<int> n;

    FockStateParams() = default;
    explicit FockStateParams(std::vector<int> n_) : n(std::move(n_)) { validate(); }
    int nd() const { return static_cast<int>(n.size()); }
    void validate() const {
        for (int v : n)
            if (v < 0) throw std::invalid_argument("FockStateParams: occupations must be >= 0");
    }
};

/// Coherent state alpha = a + ib per mode. Maps onto the Gaussian family with
/// x_j = sqrt(2) a_j, y_j = -sqrt(2) b_j, A_j = 1. Note the momentum-center
/// sign: the opposite convention is equally common in the literature.
struct CoherentStateParams {
    std::vector<Complex> alpha;

    CoherentStateParams() = default;
    explicit CoherentStateParams(std::vector<Complex> a) : alpha(std::move(a)) {}
    int nd() const { return static_cast<int>(alpha.size()); }
    GaussianStateParams to_gaussian() const {
        const int m = nd();
        std::vector<double> x(m), y(m), A(m, 1.0);
        for (int j = 0; j < m; ++j) {
            x[j] = std::sqrt(2.0) * alpha[j].real();
            y[j] = -std::sqrt(2.0) * alpha[j].imag();
        }
        return GaussianStateParams::pure(std::move(x), std::move(y), std::move(A));
    }
};

using AnalyticState = std::variant<GaussianStateParams, ThermalStateParams, FockStateParams, CoherentStateParams>;

int state_nd(const AnalyticState& s);

/// Closed-form tomogram values -------------------------------------------------

/// exp(-(X - mu.x - nu.y)^2 / C)/sqrt(pi C), C = sum(mu_j^2/A_j + nu_j^2/B_j).
double gaussian_tomogram(const GaussianStateParams& p, const Frame& frame, double X);

/// exp(-X^2/D)/sqrt(pi D), D = sum(mu_j^2/(2A_j(B_j-1)) + 2 nu_j^2 A_j (B_j+1)).
double thermal_tomogram(const ThermalStateParams& p, const Frame& frame, double X);
double thermal_tomogram_D(const ThermalStateParams& p, const Frame& frame);

/// Multimode number-state tomogram: the per-mode densities
/// H_{n_j}^2(s) e^{-s^2} / (2^{n_j} n_j! sqrt(pi C_j)), s = X_j/sqrt(C_j),
/// convolved across modes on a shared grid. The final convolution step is a
/// quadrature evaluated at the exact query X.
double fock_tomogram(const FockStateParams& p, const Frame& frame, double X);
std::vector<double> fock_tomogram_profile(const FockStateParams& p, const Frame& frame, const AxisGrid& xgrid);

/// Dispatch across the four families.
double analytic_tomogram(const AnalyticState& s, const Frame& frame, double X);

/// Wave functions / Wigner functions / density matrices ------------------------

Complex analytic_wavefunction(const GaussianStateParams& p, std::span<const double> q);
Complex analytic_wavefunction(const FockStateParams& p, std::span<const double> q);
Complex analytic_wavefunction(const CoherentStateParams& p, std::span<const double> q);

double analytic_wigner(const GaussianStateParams& p, std::span<const double> q, std::span<const double> pp);
double analytic_wigner(const ThermalStateParams& p, std::span<const double> q, std::span<const double> pp);
/// Fock-state Wigner via the module's own density -> Wigner transform on a
/// per-mode grid (oracle route), multiplied across modes.
double analytic_wigner(const FockStateParams& p, std::span<const double> q, std::span<const double> pp);
double analytic_wigner(const AnalyticState& s, std::span<const double> q, std::span<const double> pp);

/// Sampled Wigner grid for any family.
WignerGrid sample_wigner(const AnalyticState& s, std::vector<AxisGrid> qgrids, std::vector<AxisGrid> pgrids);

/// rho(q', q'') on a grid: psi psi* for pure families, the product closed form
/// for the thermal family.
DensityMatrixGrid analytic_density(const AnalyticState& s, std::vector<AxisGrid> qgrids);

/// Sample the closed-form tomogram on a frame list and X grid.
ComTomogram sample_tomogram(const AnalyticState& s, std::vector<Frame> frames, const AxisGrid& xgrid,
                            const ModeLayout* layout = nullptr);

/// Characteristic chi(mu, nu) = integral of w e^{iX} dX in closed form.
Complex analytic_characteristic(const AnalyticState& s, const Frame& frame);

}  // namespace comtom

#endif
