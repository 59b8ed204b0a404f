#ifndef COMTOM_TRANSFORMS_HPP
#define COMTOM_TRANSFORMS_HPP

#include <functional>

#include "comtom/core.hpp"
#include "comtom/numeric.hpp"
#include "comtom/tomogram.hpp"

namespace comtom {

/// chi(mu, nu) = integral of w(X, mu, nu) e^{iX} dX, one value per frame.
/// Carries the full state information by homogeneity.
struct Characteristic {
    ModeLayout layout;
    std::vector<Frame> frames;
    std::vector<Complex> values;
};

/// W(q, p) from rho(q', q''). The output q axes are midpoint-refined (2n-1
/// points over the same span) so that every evaluation of rho(q + u/2, q - u/2)
/// lands exactly on stored samples; u is sampled with step 2h which puts the
/// p Nyquist limit at pi/(2h).
/// Default p axes: [-pi/(2h), pi/(2h)] with 2n-1 points per mode.
WignerGrid density_to_wigner(const DensityMatrixGrid& rho, const std::vector<AxisGrid>* pgrids = nullptr);

/// Inverse map; the output density lives on the decimated q axes (odd point
/// counts required) so that all midpoints land on the Wigner grid.
DensityMatrixGrid wigner_to_density(const WignerGrid& w);

/// Radon-type marginal over X = mu.q + nu.p per frame: linear-split binning,
/// one triangular smoothing pass, and spectral restoration of both kernels.
ComTomogram wigner_to_com(const WignerGrid& w, std::vector<Frame> frames, const AxisGrid& xgrid);

Characteristic com_to_characteristic(const ComTomogram& t);

/// chi values arranged on a Cartesian frame grid; the all-zero frame (absent
/// from the tomogram) is filled with its exact normalization limit chi = 1.
/// The tomogram's frames must be the grid's enumeration with the origin skipped.
NdArray<Complex> chi_on_grid(const ComTomogram& t, const CartesianFrameGrid& grid);

/// W(q, p) = (2pi)^{-2Nd} integral of chi(mu, nu) e^{-i(mu q + nu p)} dmu dnu,
/// evaluated by separable axis transforms over the Cartesian frame grid.
WignerGrid com_to_wigner(const ComTomogram& t, const CartesianFrameGrid& grid, std::vector<AxisGrid> qgrids,
                         std::vector<AxisGrid> pgrids);
WignerGrid com_to_wigner_from_chi(const NdArray<Complex>& chi, const CartesianFrameGrid& grid,
                                  const ModeLayout& layout, std::vector<AxisGrid> qgrids,
                                  std::vector<AxisGrid> pgrids);

/// chi(a, b) sampled from a Wigner grid: chi = integral of W e^{i(a q + b p)},
/// computed by separable axis transforms (no 2pi factors).
NdArray<Complex> wigner_chi_grid(const WignerGrid& w, const CartesianFrameGrid& grid);

/// Bins w_s mass over the hyperplane sum(Y_j) = X; same contract as wigner_to_com.
ComTomogram symplectic_to_com(const SymplecticTomogram& ws, const AxisGrid& xgrid);

/// Frames (k o mu, k o nu) for a Cartesian k grid (row-major over modes),
/// the all-zero k point excluded. Requires mu_j^2 + nu_j^2 > 0 per mode.
std::vector<Frame> ray_frames(const Frame& base, const std::vector<AxisGrid>& kgrids);

/// w_s(X, mu, nu) = (2pi)^{-Nd} integral of chi(k o mu, k o nu) e^{-i k.X} dk.
/// The tomogram must hold exactly the ray_frames(base, kgrids) family.
SymplecticTomogram com_to_symplectic(const ComTomogram& t, const Frame& base,
                                     const std::vector<AxisGrid>& kgrids, std::vector<AxisGrid> xgrids);

/// Same map fed by a per-frame profile evaluator; each ray frame gets an
/// internal X quadrature adapted to its own support (ray frame norms vary by
/// orders of magnitude, which no shared X grid can resolve).
SymplecticTomogram com_to_symplectic(const std::function<double(const Frame&, double)>& w,
                                     const ModeLayout& layout, const Frame& base,
                                     const std::vector<AxisGrid>& kgrids, std::vector<AxisGrid> xgrids);

/// Tomogram X-profile of a pure state via the per-mode fractional Fourier
/// transform w_s^(j)(Y) = (2pi |nu_j|)^{-1} |int psi_j(q) e^{i(mu_j q^2/(2 nu_j) - q Y/nu_j)} dq|^2
/// composed with the sum-projection. All nu_j must be nonzero (use the Wigner
/// route otherwise).
std::vector<double> pure_state_tomogram(const std::vector<std::function<Complex(double)>>& psi_modes,
                                        const Frame& frame, const AxisGrid& xgrid,
                                        const AxisGrid& qquad = AxisGrid(-12.0, 12.0, 1601));

/// Non-factorizable variant: full wave function callable, direct quadrature
/// (desk scale, nd <= 2).
std::vector<double> pure_state_tomogram_full(const std::function<Complex(std::span<const double>)>& psi,
                                             int nd, const Frame& frame, const AxisGrid& xgrid,
                                             const AxisGrid& qquad = AxisGrid(-8.0, 8.0, 161));

}  // namespace comtom

#endif
