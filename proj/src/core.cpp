#include "comtom/core.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace comtom {

Frame com_frame_from_masses(const ModeLayout& layout, const std::vector<double>& scaled_mu,
                            const std::vector<double>& scaled_nu) {
    layout.validate();
    const int nd = layout.nd();
    if (static_cast<int>(scaled_mu.size()) != nd || static_cast<int>(scaled_nu.size()) != nd)
        throw std::invalid_argument("com_frame_from_masses: vector length must equal N*d");
    const double M = layout.total_mass();
    Frame f{std::vector<double>(nd), std::vector<double>(nd)};
    for (int j = 0; j < nd; ++j) {
        f.mu[j] = layout.masses[j] * scaled_mu[j] / M;
        f.nu[j] = layout.masses[j] * scaled_nu[j] / M;
    }
    require_nondegenerate(f, "com_frame_from_masses");
    return f;
}

ComTomogram homogeneity_rescale(const ComTomogram& t, double lambda) {
    if (lambda == 0.0) throw std::invalid_argument("homogeneity_rescale: lambda must be nonzero");
    std::vector<Frame> frames = t.frames;
    for (auto& f : frames) {
        for (auto& v : f.mu) v *= lambda;
        for (auto& v : f.nu) v *= lambda;
    }
    // The X axis maps to lambda*X; for negative lambda the grid flips, so the
    // sample order reverses to keep the axis ascending.
    AxisGrid xg = lambda > 0 ? AxisGrid(lambda * t.xgrid.min, lambda * t.xgrid.max, t.xgrid.n)
                             : AxisGrid(lambda * t.xgrid.max, lambda * t.xgrid.min, t.xgrid.n);
    ComTomogram out(t.layout, std::move(frames), xg);
    out.tolerance = t.tolerance;
    out.signed_values = t.signed_values;
    const double inv = 1.0 / std::abs(lambda);
    for (int f = 0; f < t.n_frames(); ++f)
        for (int i = 0; i < t.xgrid.n; ++i) {
            const int src = lambda > 0 ? i : t.xgrid.n - 1 - i;
            out.at(f, i) = t.at(f, src) * inv;
        }
    return out;
}

std::pair<Frame, double> reduce_to_unit_sphere(const Frame& frame) {
    require_nondegenerate(frame, "reduce_to_unit_sphere");
    const double lambda = frame.norm2();
    const double inv = 1.0 / std::sqrt(lambda);
    Frame unit = frame;
    for (auto& v : unit.mu) v *= inv;
    for (auto& v : unit.nu) v *= inv;
    return {unit, lambda};
}

NormalizationReport check_normalization(const ComTomogram& t, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("check_normalization: tol must be positive");
    NormalizationReport rep;
    rep.deviation.resize(t.n_frames());
    for (int f = 0; f < t.n_frames(); ++f) {
        rep.deviation[f] = std::abs(t.frame_integral(f) - 1.0);
        rep.worst = std::max(rep.worst, rep.deviation[f]);
        if (rep.deviation[f] > tol) rep.flagged.push_back(f);
    }
    return rep;
}

double x_slice_value(const ComTomogram& t, int frame_index, double X) {
    if (frame_index < 0 || frame_index >= t.n_frames())
        throw std::invalid_argument("x_slice_value: frame index out of range");
    if (!t.xgrid.contains(X)) throw std::invalid_argument("x_slice_value: X outside the stored grid");
    const double h = t.xgrid.step();
    const double pos = (X - t.xgrid.min) / h;
    int i0 = static_cast<int>(std::floor(pos));
    if (i0 >= t.xgrid.n - 1) i0 = t.xgrid.n - 2;
    const double w = pos - i0;
    return (1.0 - w) * t.at(frame_index, i0) + w * t.at(frame_index, i0 + 1);
}

double x_scaling_identity_gap(const std::function<double(const Frame&, double)>& w, const Frame& frame,
                              double X) {
    if (X == 0.0) throw std::invalid_argument("x_scaling_identity_gap: X must be nonzero");
    Frame scaled = frame;
    for (auto& v : scaled.mu) v /= X;
    for (auto& v : scaled.nu) v /= X;
    return std::abs(w(frame, X) - w(scaled, 1.0) / std::abs(X));
}

std::vector<Frame> CartesianFrameGrid::frames_no_origin() const {
    std::vector<Frame> out;
    out.reserve(size());
    for_each([&](std::span<const int> idx) {
        Frame f = frame_at(idx);
        if (!f.degenerate()) out.push_back(std::move(f));
    });
    return out;
}

std::vector<Frame> unit_sphere_frames(int nd, const std::vector<int>& angle_counts) {
    const int n_angles = 2 * nd - 1;
    if (static_cast<int>(angle_counts.size()) != n_angles)
        throw std::invalid_argument("unit_sphere_frames: need 2*nd-1 angle counts");
    for (int c : angle_counts)
        if (c < 1) throw std::invalid_argument("unit_sphere_frames: angle counts must be positive");

    // Hyperspherical coordinates on S^{2nd-1}; polar angles sampled strictly
    // inside (0, pi), the final azimuth over [0, 2pi).
    std::vector<Frame> out;
    std::vector<int> idx(n_angles, 0);
    const double pi = std::acos(-1.0);
    auto emit = [&]() {
        std::vector<double> x(2 * nd);
        double sin_prod = 1.0;
        for (int a = 0; a < n_angles; ++a) {
            const bool last = (a == n_angles - 1);
            const double theta = last ? (2.0 * pi * idx[a]) / angle_counts[a]
                                      : pi * (idx[a] + 1.0) / (angle_counts[a] + 1.0);
            x[a] = sin_prod * std::cos(theta);
            sin_prod *= std::sin(theta);
        }
        x[2 * nd - 1] = sin_prod;
        std::vector<double> mu(x.begin(), x.begin() + nd), nu(x.begin() + nd, x.end());
        out.emplace_back(std::move(mu), std::move(nu));
    };
    while (true) {
        emit();
        int a = n_angles - 1;
        for (; a >= 0; --a) {
            if (++idx[a] < angle_counts[a]) break;
            idx[a] = 0;
        }
        if (a < 0) break;
    }
    return out;
}

std::vector<Frame> random_unit_frames(int nd, int count, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Frame> out;
    out.reserve(count);
    while (static_cast<int>(out.size()) < count) {
        std::vector<double> mu(nd), nu(nd);
        double n2 = 0.0;
        for (auto& v : mu) { v = gauss(rng); n2 += v * v; }
        for (auto& v : nu) { v = gauss(rng); n2 += v * v; }
        if (n2 < 1e-12) continue;
        const double inv = 1.0 / std::sqrt(n2);
        for (auto& v : mu) v *= inv;
        for (auto& v : nu) v *= inv;
        out.emplace_back(std::move(mu), std::move(nu));
    }
    return out;
}

}  // namespace comtom
