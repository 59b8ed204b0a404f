#ifndef COMTOM_CORE_HPP
#define COMTOM_CORE_HPP

#include <functional>

#include "comtom/tomogram.hpp"

namespace comtom {

/// Frame measuring the mass-weighted center-of-mass combination:
/// mu_j = m_j * scaled_mu_j / M, nu_j = m_j * scaled_nu_j / M, M = sum of masses.
Frame com_frame_from_masses(const ModeLayout& layout, const std::vector<double>& scaled_mu,
                            const std::vector<double>& scaled_nu);

/// w(lambda X, lambda mu, lambda nu) = w(X, mu, nu)/|lambda|, applied to the whole container.
ComTomogram homogeneity_rescale(const ComTomogram& t, double lambda);

/// Projects (mu, nu) onto the unit sphere in 2*nd dimensions.
/// Returns the unit frame and the scale lambda = mu.mu + nu.nu.
std::pair<Frame, double> reduce_to_unit_sphere(const Frame& frame);

struct NormalizationReport {
    std::vector<double> deviation;  // per frame |integral - 1|
    std::vector<int> flagged;       // frames exceeding tol
    double worst = 0.0;
    bool all_ok() const { return flagged.empty(); }
};

/// Trapezoid-rule X-integral per frame, compared against 1.
NormalizationReport check_normalization(const ComTomogram& t, double tol);

/// Linear interpolation of the stored samples at X (must lie inside the grid).
double x_slice_value(const ComTomogram& t, int frame_index, double X);

/// Gap of the scaling identity w(X,mu,nu) = |X|^{-1} w(1, mu/X, nu/X) for a
/// pointwise-evaluable tomogram. X must be nonzero.
double x_scaling_identity_gap(const std::function<double(const Frame&, double)>& w, const Frame& frame,
                              double X);

/// Uniform Cartesian grid of frames over the (mu, nu) axes. The all-zero frame,
/// if present, is kept out of the frame list (index -1) but its location is
/// remembered so characteristic-level code can fill chi(0,0) = 1.
struct CartesianFrameGrid {
    std::vector<AxisGrid> mu_axes, nu_axes;  // nd each

    CartesianFrameGrid() = default;
    CartesianFrameGrid(std::vector<AxisGrid> mu_ax, std::vector<AxisGrid> nu_ax)
        : mu_axes(std::move(mu_ax)), nu_axes(std::move(nu_ax)) {
        if (mu_axes.size() != nu_axes.size())
            throw std::invalid_argument("CartesianFrameGrid: mu/nu axis count mismatch");
    }
    /// Single-mode square grid over [-L, L]^2.
    static CartesianFrameGrid square(double L, int n) {
        return CartesianFrameGrid({AxisGrid(-L, L, n)}, {AxisGrid(-L, L, n)});
    }

    int nd() const { return static_cast<int>(mu_axes.size()); }
    std::vector<int> dims() const {
        std::vector<int> d;
        for (const auto& g : mu_axes) d.push_back(g.n);
        for (const auto& g : nu_axes) d.push_back(g.n);
        return d;
    }
    std::size_t size() const {
        std::size_t s = 1;
        for (int d : dims()) s *= static_cast<std::size_t>(d);
        return s;
    }
    Frame frame_at(std::span<const int> idx) const {
        const int m = nd();
        std::vector<double> mu(m), nu(m);
        for (int a = 0; a < m; ++a) {
            mu[a] = mu_axes[a].point(idx[a]);
            nu[a] = nu_axes[a].point(idx[m + a]);
        }
        return Frame(std::move(mu), std::move(nu));
    }
    double weight_at(std::span<const int> idx) const {
        const int m = nd();
        double w = 1.0;
        for (int a = 0; a < m; ++a) w *= mu_axes[a].trapz_weight(idx[a]) * nu_axes[a].trapz_weight(idx[m + a]);
        return w;
    }
    /// Index of the mirrored point (mu, nu) -> (-mu, -nu); axes must be symmetric.
    void mirror_index(std::span<const int> idx, std::vector<int>& out) const {
        out.resize(idx.size());
        const auto d = dims();
        for (std::size_t a = 0; a < idx.size(); ++a) out[a] = d[a] - 1 - idx[a];
    }
    /// Frame list for tomogram containers: every grid point except the all-zero frame.
    std::vector<Frame> frames_no_origin() const;
    /// Enumerates all grid indices (including the origin point if present).
    template <typename F>
    void for_each(F&& fn) const {
        NdArray<char> probe(dims());
        std::vector<int> idx(probe.rank(), 0);
        do {
            fn(std::span<const int>(idx));
        } while (probe.next_index(idx));
    }
};

/// Frames on the unit sphere in 2*nd dimensions sampled via hyperspherical angles,
/// n_theta points per angle (uniform in each angle, poles excluded).
std::vector<Frame> unit_sphere_frames(int nd, const std::vector<int>& angle_counts);

/// Deterministic random unit-sphere frames (normal draws, normalized).
std::vector<Frame> random_unit_frames(int nd, int count, unsigned seed);

}  // namespace comtom

#endif
