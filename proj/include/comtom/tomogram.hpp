#ifndef COMTOM_TOMOGRAM_HPP
#define COMTOM_TOMOGRAM_HPP

#include "comtom/types.hpp"

namespace comtom {

// Negative ripple below this magnitude is clamped to zero when a tomogram is
// assembled from a numerical transform; anything larger is a genuine error.
inline constexpr double kNegativityClamp = 1e-9;

/// Samples of the one-random-variable tomogram w(X, mu, nu):
/// one row per frame, one column per X grid point.
struct ComTomogram {
    ModeLayout layout;
    std::vector<Frame> frames;
    AxisGrid xgrid;
    NdArray<double> values;       // [frame][x]
    double tolerance = tol::transform;
    bool signed_values = false;   // set only for signed fields (permuted Fermi output)

    ComTomogram() = default;
    ComTomogram(ModeLayout lay, std::vector<Frame> fr, AxisGrid xg)
        : layout(std::move(lay)), frames(std::move(fr)), xgrid(xg),
          values({static_cast<int>(frames.size()), xgrid.n}) {
        for (const auto& f : frames) {
            if (f.nd() != layout.nd()) throw std::invalid_argument("ComTomogram: frame dimension mismatch");
            require_nondegenerate(f, "ComTomogram");
        }
    }

    int n_frames() const { return static_cast<int>(frames.size()); }
    double& at(int f, int ix) { return values.at2(f, ix); }
    double at(int f, int ix) const { return values.at2(f, ix); }
    std::span<double> row(int f) { return {values.v.data() + values.strides[0] * f, static_cast<std::size_t>(xgrid.n)}; }
    std::span<const double> row(int f) const {
        return {values.v.data() + values.strides[0] * f, static_cast<std::size_t>(xgrid.n)};
    }

    /// Clamp tiny negative ripple; reject anything below -clamp unless signed.
    void enforce_nonnegative(double clamp = kNegativityClamp) {
        if (signed_values) return;
        for (double& x : values.v) {
            if (x < 0.0) {
                if (x < -clamp)
                    throw std::invalid_argument("ComTomogram: negative value " + std::to_string(x));
                x = 0.0;
            }
        }
    }

    double frame_integral(int f) const {
        double s = 0.0;
        for (int i = 0; i < xgrid.n; ++i) s += at(f, i) * xgrid.trapz_weight(i);
        return s;
    }
};

/// Usual symplectic tomogram w_s(Xvec, mu, nu): one X axis per degree of freedom.
struct SymplecticTomogram {
    ModeLayout layout;
    std::vector<Frame> frames;
    std::vector<AxisGrid> xgrids;  // nd axes
    NdArray<double> values;        // [frame][x1]...[xnd]
    double tolerance = tol::transform;

    SymplecticTomogram() = default;
    SymplecticTomogram(ModeLayout lay, std::vector<Frame> fr, std::vector<AxisGrid> xg)
        : layout(std::move(lay)), frames(std::move(fr)), xgrids(std::move(xg)) {
        if (static_cast<int>(xgrids.size()) != layout.nd())
            throw std::invalid_argument("SymplecticTomogram: need one X axis per degree of freedom");
        std::vector<int> dims{static_cast<int>(frames.size())};
        for (const auto& g : xgrids) dims.push_back(g.n);
        values = NdArray<double>(dims);
    }

    double frame_integral(int f) const {
        const int nd = static_cast<int>(xgrids.size());
        std::vector<int> idx(nd, 0);
        NdArray<double> probe(std::vector<int>(values.dims.begin() + 1, values.dims.end()));
        double s = 0.0;
        std::vector<int> full(nd + 1, 0);
        full[0] = f;
        do {
            double wgt = 1.0;
            for (int a = 0; a < nd; ++a) {
                full[a + 1] = idx[a];
                wgt *= xgrids[a].trapz_weight(idx[a]);
            }
            s += values(full) * wgt;
        } while (probe.next_index(idx));
        return s;
    }
};

/// Wigner function samples over the 2*nd-dimensional phase-space grid.
struct WignerGrid {
    ModeLayout layout;
    std::vector<AxisGrid> qgrids, pgrids;  // nd each
    NdArray<double> values;                // [q1]..[qnd][p1]..[pnd]
    double tolerance = tol::transform;

    WignerGrid() = default;
    WignerGrid(ModeLayout lay, std::vector<AxisGrid> qg, std::vector<AxisGrid> pg)
        : layout(std::move(lay)), qgrids(std::move(qg)), pgrids(std::move(pg)) {
        if (static_cast<int>(qgrids.size()) != layout.nd() || static_cast<int>(pgrids.size()) != layout.nd())
            throw std::invalid_argument("WignerGrid: need one q and one p axis per degree of freedom");
        std::vector<int> dims;
        for (const auto& g : qgrids) dims.push_back(g.n);
        for (const auto& g : pgrids) dims.push_back(g.n);
        values = NdArray<double>(dims);
    }

    double integral() const {
        const int r = values.rank();
        std::vector<int> idx(r, 0);
        double s = 0.0;
        const int nd = static_cast<int>(qgrids.size());
        do {
            double wgt = 1.0;
            for (int a = 0; a < nd; ++a) wgt *= qgrids[a].trapz_weight(idx[a]);
            for (int a = 0; a < nd; ++a) wgt *= pgrids[a].trapz_weight(idx[nd + a]);
            s += values(idx) * wgt;
        } while (values.next_index(idx));
        return s;
    }
};

/// Density matrix rho(q', q'') sampled over the coordinate grid (same axes both sides).
struct DensityMatrixGrid {
    ModeLayout layout;
    std::vector<AxisGrid> qgrids;   // nd axes, shared by primed and double-primed sides
    NdArray<Complex> values;        // [q'1]..[q'nd][q''1]..[q''nd]
    double tolerance = tol::transform;

    DensityMatrixGrid() = default;
    DensityMatrixGrid(ModeLayout lay, std::vector<AxisGrid> qg)
        : layout(std::move(lay)), qgrids(std::move(qg)) {
        if (static_cast<int>(qgrids.size()) != layout.nd())
            throw std::invalid_argument("DensityMatrixGrid: need one q axis per degree of freedom");
        std::vector<int> dims;
        for (int side = 0; side < 2; ++side)
            for (const auto& g : qgrids) dims.push_back(g.n);
        values = NdArray<Complex>(dims);
    }

    /// Trapezoid trace along the diagonal.
    double trace() const {
        const int nd = static_cast<int>(qgrids.size());
        std::vector<int> dims;
        for (const auto& g : qgrids) dims.push_back(g.n);
        NdArray<double> probe(dims);
        std::vector<int> idx(nd, 0);
        std::vector<int> full(2 * nd, 0);
        double s = 0.0;
        do {
            double wgt = 1.0;
            for (int a = 0; a < nd; ++a) {
                full[a] = idx[a];
                full[nd + a] = idx[a];
                wgt *= qgrids[a].trapz_weight(idx[a]);
            }
            s += values(full).real() * wgt;
        } while (probe.next_index(idx));
        return s;
    }

    double hermiticity_gap() const {
        const int nd = static_cast<int>(qgrids.size());
        std::vector<int> idx(2 * nd, 0), sw(2 * nd, 0);
        double worst = 0.0;
        do {
            for (int a = 0; a < nd; ++a) {
                sw[a] = idx[nd + a];
                sw[nd + a] = idx[a];
            }
            worst = std::max(worst, std::abs(values(idx) - std::conj(values(sw))));
        } while (values.next_index(idx));
        return worst;
    }
};

}  // namespace comtom

#endif
