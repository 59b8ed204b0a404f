#ifndef COMTOM_NUMERIC_HPP
#define COMTOM_NUMERIC_HPP

#include <functional>
#include <string>

#include "comtom/types.hpp"

namespace comtom {

/// Global worker count for frame-parallel loops (1 = serial). Results are
/// bit-identical for any value: work is partitioned, never reduced across
/// threads.
void set_thread_count(int n);
int thread_count();

/// Runs fn(i) for i in [0, n), partitioned statically over the worker count.
void parallel_for(int n, const std::function<void(int)>& fn);

/// Replaces one axis of a complex array by its continuous Fourier image:
/// out[..., o, ...] = sum_i in[..., i, ...] * exp(sign * i * x_i * k_o) * trapz_w(i).
NdArray<Complex> axis_fourier(const NdArray<Complex>& in, int axis, const AxisGrid& xaxis,
                              const std::vector<double>& out_points, double sign);

/// Accumulates (projection, mass) samples into a density profile on a uniform
/// grid. Each mass is deposited through a Gaussian kernel of width sigma = 2h
/// evaluated exactly at the bin distances, which makes the estimate a sampled
/// convolution (translation invariant); a triangular smoothing pass follows,
/// and both kernels are divided out spectrally below k_cut. k_cut must lie
/// below the first alias frequency of the sample lattice feeding the binner.
class ProjectionBinner {
public:
    ProjectionBinner(const AxisGrid& xgrid, double k_cut);

    void add(double projection, double mass);
    /// Restored density profile. Throws CoverageError when the lost mass
    /// fraction exceeds 1e-9.
    std::vector<double> finish(const std::string& what);

    double lost_mass() const { return lost_; }

private:
    AxisGrid xgrid_;
    double k_cut_;
    double sigma_;
    int radius_;
    std::vector<double> taper_;  // exp(-(m h)^2 / (2 sigma^2)) for |m| <= radius
    std::vector<double> hist_;
    double lost_ = 0.0;
    double total_abs_ = 0.0;
};

/// Spectral cutoff for a projection c.z over a grid with spacings h_a: half of
/// the lowest alias frequency 2 pi / (h_a |c_a|), also capped at half the bin
/// Nyquist pi/h_x.
double projection_k_cut(std::span<const double> coeff, std::span<const double> spacing, double hx);

/// Dense DFT of a real sequence on a uniform grid, filter applied in k, and
/// inverse; filter(k) maps angular frequency to a complex gain.
std::vector<double> spectral_filter(const std::vector<double>& f, double h,
                                    const std::function<Complex(double)>& filter);

}  // namespace comtom

#endif
