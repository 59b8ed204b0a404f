#include "comtom/transforms.hpp"

#include <algorithm>
#include <cmath>

namespace comtom {

namespace {
const double kPi = std::acos(-1.0);

// (q', q'') axis pair -> (q_mid, p) for one mode. Axis A holds q' (length n),
// axis B holds q''; on output A holds the refined midpoint axis (2n-1) and B
// the p axis. Sampling u = q' - q'' in steps of the grid spacing keeps every
// evaluation on stored values.
NdArray<Complex> mode_to_wigner_pass(const NdArray<Complex>& in, int axA, int axB, const AxisGrid& qgrid,
                                     const AxisGrid& pgrid) {
    const int n = qgrid.n;
    const double h = qgrid.step();
    const int nm = 2 * n - 1;
    const int np = pgrid.n;

    std::vector<int> odims = in.dims;
    odims[axA] = nm;
    odims[axB] = np;
    NdArray<Complex> out(odims);

    // Phase table over (p index, u index t in [-(n-1), n-1]): e^{-i p t h}.
    std::vector<Complex> phase(static_cast<std::size_t>(np) * (2 * n - 1));
    for (int ip = 0; ip < np; ++ip) {
        const double p = pgrid.point(ip);
        for (int t = -(n - 1); t <= n - 1; ++t)
            phase[static_cast<std::size_t>(ip) * (2 * n - 1) + (t + n - 1)] = std::polar(1.0, -p * t * h);
    }
    const double scale = 2.0 * h / (2.0 * kPi);  // du/(2pi), du = 2h per midpoint parity

    std::vector<int> pdims = in.dims;
    pdims[axA] = 1;
    pdims[axB] = 1;
    NdArray<char> probe(pdims);
    std::vector<std::size_t> base_in, base_out;
    std::vector<int> idx(in.rank(), 0);
    do {
        base_in.push_back(in.flat(idx));
        base_out.push_back(out.flat(idx));
    } while (probe.next_index(idx));

    const std::size_t sAi = in.strides[axA], sBi = in.strides[axB];
    const std::size_t sAo = out.strides[axA], sBo = out.strides[axB];

    parallel_for(static_cast<int>(base_in.size()), [&](int slice) {
        const Complex* src = in.v.data() + base_in[slice];
        Complex* dst = out.v.data() + base_out[slice];
        for (int m = 0; m < nm; ++m) {
            const int tmax = std::min(m, 2 * (n - 1) - m);
            for (int ip = 0; ip < np; ++ip) {
                Complex acc = 0.0;
                const Complex* ph = phase.data() + static_cast<std::size_t>(ip) * (2 * n - 1) + (n - 1);
                for (int t = -tmax; t <= tmax; t += 2) {
                    const int i = (m + t) / 2, l = (m - t) / 2;
                    acc += src[sAi * i + sBi * l] * ph[t];
                }
                dst[sAo * m + sBo * ip] = acc * scale;
            }
        }
    });
    return out;
}

// (q_mid, p) -> (q', q'') for one mode; output q axes are the decimated grid.
NdArray<Complex> mode_to_density_pass(const NdArray<Complex>& in, int axA, int axB, const AxisGrid& mgrid,
                                      const AxisGrid& pgrid) {
    const AxisGrid qout = mgrid.decimated();
    const int n = qout.n;
    const double hv = 2.0 * mgrid.step();  // spacing of q' - q'' values

    std::vector<int> odims = in.dims;
    odims[axA] = n;
    odims[axB] = n;
    NdArray<Complex> out(odims);

    const int np = pgrid.n;
    std::vector<Complex> phase(static_cast<std::size_t>(np) * (2 * n - 1));
    std::vector<double> pw(np);
    for (int ip = 0; ip < np; ++ip) {
        const double p = pgrid.point(ip);
        pw[ip] = pgrid.trapz_weight(ip);
        for (int t = -(n - 1); t <= n - 1; ++t)
            phase[static_cast<std::size_t>(ip) * (2 * n - 1) + (t + n - 1)] = std::polar(1.0, p * t * hv);
    }

    std::vector<int> pdims = in.dims;
    pdims[axA] = 1;
    pdims[axB] = 1;
    NdArray<char> probe(pdims);
    std::vector<std::size_t> base_in, base_out;
    std::vector<int> idx(in.rank(), 0);
    do {
        base_in.push_back(in.flat(idx));
        base_out.push_back(out.flat(idx));
    } while (probe.next_index(idx));

    const std::size_t sAi = in.strides[axA], sBi = in.strides[axB];
    const std::size_t sAo = out.strides[axA], sBo = out.strides[axB];

    parallel_for(static_cast<int>(base_in.size()), [&](int slice) {
        const Complex* src = in.v.data() + base_in[slice];
        Complex* dst = out.v.data() + base_out[slice];
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                const int m = a + b;       // refined midpoint index
                const int t = a - b;       // v = t * hv
                Complex acc = 0.0;
                for (int ip = 0; ip < np; ++ip)
                    acc += src[sAi * m + sBi * ip] *
                           phase[static_cast<std::size_t>(ip) * (2 * n - 1) + (t + n - 1)] * pw[ip];
                dst[sAo * a + sBo * b] = acc;
            }
    });
    return out;
}

void check_imaginary_residue(const NdArray<Complex>& a, const char* who) {
    double worst = 0.0;
    for (const auto& z : a.v) worst = std::max(worst, std::abs(z.imag()));
    if (worst > 1e-8)
        throw std::invalid_argument(std::string(who) + ": imaginary residue " + std::to_string(worst) +
                                    " indicates inconsistent input");
}

}  // namespace

WignerGrid density_to_wigner(const DensityMatrixGrid& rho, const std::vector<AxisGrid>* pgrids_in) {
    const int nd = static_cast<int>(rho.qgrids.size());
    std::vector<AxisGrid> qout, pout;
    for (int j = 0; j < nd; ++j) {
        qout.push_back(rho.qgrids[j].refined());
        if (pgrids_in) {
            const double pmax = kPi / (2.0 * rho.qgrids[j].step());
            if (std::max(std::abs((*pgrids_in)[j].min), std::abs((*pgrids_in)[j].max)) > pmax * (1.0 + 1e-12))
                throw CoverageError("density_to_wigner: requested p grid exceeds the Nyquist limit pi/(2h)");
            pout.push_back((*pgrids_in)[j]);
        } else {
            const double pmax = kPi / (2.0 * rho.qgrids[j].step());
            pout.push_back(AxisGrid(-pmax, pmax, 2 * rho.qgrids[j].n - 1));
        }
    }

    NdArray<Complex> work = rho.values;
    for (int j = 0; j < nd; ++j) work = mode_to_wigner_pass(work, j, nd + j, rho.qgrids[j], pout[j]);

    check_imaginary_residue(work, "density_to_wigner");
    WignerGrid W(rho.layout, qout, pout);
    for (std::size_t i = 0; i < work.size(); ++i) W.values.v[i] = work.v[i].real();
    return W;
}

DensityMatrixGrid wigner_to_density(const WignerGrid& w) {
    const int nd = static_cast<int>(w.qgrids.size());
    std::vector<AxisGrid> qout;
    for (int j = 0; j < nd; ++j) {
        if (w.qgrids[j].n % 2 == 0)
            throw std::invalid_argument("wigner_to_density: q axes need odd point counts");
        qout.push_back(w.qgrids[j].decimated());
    }
    NdArray<Complex> work({w.values.dims});
    for (std::size_t i = 0; i < work.size(); ++i) work.v[i] = w.values.v[i];
    for (int j = 0; j < nd; ++j) work = mode_to_density_pass(work, j, nd + j, w.qgrids[j], w.pgrids[j]);
    DensityMatrixGrid rho(w.layout, qout);
    rho.values = std::move(work);
    return rho;
}

ComTomogram wigner_to_com(const WignerGrid& w, std::vector<Frame> frames, const AxisGrid& xgrid) {
    const int nd = static_cast<int>(w.qgrids.size());
    for (const auto& f : frames) require_nondegenerate(f, "wigner_to_com");

    // Flatten grid coordinates and trapezoid weights once.
    const int rank = w.values.rank();
    std::vector<std::vector<double>> pts(rank), wgt(rank);
    for (int j = 0; j < nd; ++j) {
        pts[j] = w.qgrids[j].points();
        pts[nd + j] = w.pgrids[j].points();
        wgt[j].resize(w.qgrids[j].n);
        for (int i = 0; i < w.qgrids[j].n; ++i) wgt[j][i] = w.qgrids[j].trapz_weight(i);
        wgt[nd + j].resize(w.pgrids[j].n);
        for (int i = 0; i < w.pgrids[j].n; ++i) wgt[nd + j][i] = w.pgrids[j].trapz_weight(i);
    }

    std::vector<double> spacing(rank);
    for (int j = 0; j < nd; ++j) {
        spacing[j] = w.qgrids[j].step();
        spacing[nd + j] = w.pgrids[j].step();
    }

    ComTomogram t(w.layout, std::move(frames), xgrid);
    t.tolerance = tol::composed;
    const int nf = t.n_frames();
    std::vector<std::string> errors(nf);

    parallel_for(nf, [&](int f) {
        const Frame& fr = t.frames[f];
        std::vector<double> coeff(rank);
        for (int j = 0; j < nd; ++j) {
            coeff[j] = fr.mu[j];
            coeff[nd + j] = fr.nu[j];
        }
        ProjectionBinner binner(xgrid, projection_k_cut(coeff, spacing, xgrid.step()));
        std::vector<int> idx(rank, 0);
        // The projection and cell weight update incrementally along the fastest axis.
        do {
            double proj = 0.0, cw = 1.0;
            for (int a = 0; a < rank; ++a) {
                const double c = a < nd ? fr.mu[a] : fr.nu[a - nd];
                proj += c * pts[a][idx[a]];
                cw *= wgt[a][idx[a]];
            }
            binner.add(proj, w.values(idx) * cw);
        } while (w.values.next_index(idx));
        try {
            auto prof = binner.finish("wigner_to_com frame " + std::to_string(f));
            std::copy(prof.begin(), prof.end(), t.row(f).begin());
        } catch (const CoverageError& e) {
            errors[f] = e.what();
        }
    });
    for (const auto& e : errors)
        if (!e.empty()) throw CoverageError(e);
    t.enforce_nonnegative(1e-6);
    return t;
}

Characteristic com_to_characteristic(const ComTomogram& t) {
    Characteristic chi{t.layout, t.frames, {}};
    chi.values.resize(t.n_frames());
    for (int f = 0; f < t.n_frames(); ++f) {
        Complex acc = 0.0;
        for (int i = 0; i < t.xgrid.n; ++i)
            acc += t.at(f, i) * std::polar(t.xgrid.trapz_weight(i), t.xgrid.point(i));
        chi.values[f] = acc;
    }
    return chi;
}

NdArray<Complex> chi_on_grid(const ComTomogram& t, const CartesianFrameGrid& grid) {
    if (grid.nd() != t.layout.nd()) throw std::invalid_argument("chi_on_grid: dimension mismatch");
    const Characteristic chi = com_to_characteristic(t);
    NdArray<Complex> out(grid.dims());
    std::size_t next = 0;
    bool mismatch = false;
    grid.for_each([&](std::span<const int> idx) {
        Frame f = grid.frame_at(idx);
        if (f.degenerate()) {
            out(idx) = 1.0;  // exact normalization limit
            return;
        }
        if (next >= chi.values.size()) {
            mismatch = true;
            return;
        }
        const Frame& tf = t.frames[next];
        for (int a = 0; a < f.nd(); ++a)
            if (std::abs(tf.mu[a] - f.mu[a]) > 1e-12 || std::abs(tf.nu[a] - f.nu[a]) > 1e-12) mismatch = true;
        out(idx) = chi.values[next++];
    });
    if (mismatch || next != chi.values.size())
        throw std::invalid_argument("chi_on_grid: tomogram frames do not enumerate the Cartesian grid");
    return out;
}

WignerGrid com_to_wigner_from_chi(const NdArray<Complex>& chi, const CartesianFrameGrid& grid,
                                  const ModeLayout& layout, std::vector<AxisGrid> qgrids,
                                  std::vector<AxisGrid> pgrids) {
    const int nd = grid.nd();
    if (static_cast<int>(qgrids.size()) != nd || static_cast<int>(pgrids.size()) != nd)
        throw std::invalid_argument("com_to_wigner: axis count mismatch");

    // Boundary decay check: chi must be negligible on every face of the frame grid.
    double boundary = 0.0;
    std::vector<int> idx(chi.rank(), 0);
    do {
        for (int a = 0; a < chi.rank(); ++a)
            if (idx[a] == 0 || idx[a] == chi.dims[a] - 1) {
                boundary = std::max(boundary, std::abs(chi(idx)));
                break;
            }
    } while (chi.next_index(idx));
    if (boundary > 1e-8)
        throw CoverageError("com_to_wigner: characteristic not decayed at the frame-grid boundary (" +
                            std::to_string(boundary) + ")");

    NdArray<Complex> work = chi;
    for (int j = 0; j < nd; ++j) work = axis_fourier(work, j, grid.mu_axes[j], qgrids[j].points(), -1.0);
    for (int j = 0; j < nd; ++j) work = axis_fourier(work, nd + j, grid.nu_axes[j], pgrids[j].points(), -1.0);

    const double scale = std::pow(2.0 * kPi, -2.0 * nd);
    WignerGrid W(layout, std::move(qgrids), std::move(pgrids));
    for (std::size_t i = 0; i < work.size(); ++i) W.values.v[i] = work.v[i].real() * scale;

    double imag_worst = 0.0;
    for (const auto& z : work.v) imag_worst = std::max(imag_worst, std::abs(z.imag()));
    if (imag_worst * scale > 1e-6)
        throw std::invalid_argument("com_to_wigner: imaginary residue " + std::to_string(imag_worst * scale));
    return W;
}

WignerGrid com_to_wigner(const ComTomogram& t, const CartesianFrameGrid& grid, std::vector<AxisGrid> qgrids,
                         std::vector<AxisGrid> pgrids) {
    return com_to_wigner_from_chi(chi_on_grid(t, grid), grid, t.layout, std::move(qgrids), std::move(pgrids));
}

NdArray<Complex> wigner_chi_grid(const WignerGrid& w, const CartesianFrameGrid& grid) {
    const int nd = static_cast<int>(w.qgrids.size());
    if (grid.nd() != nd) throw std::invalid_argument("wigner_chi_grid: dimension mismatch");
    NdArray<Complex> work(w.values.dims);
    for (std::size_t i = 0; i < work.size(); ++i) work.v[i] = w.values.v[i];
    for (int j = 0; j < nd; ++j) work = axis_fourier(work, j, w.qgrids[j], grid.mu_axes[j].points(), +1.0);
    for (int j = 0; j < nd; ++j) work = axis_fourier(work, nd + j, w.pgrids[j], grid.nu_axes[j].points(), +1.0);
    return work;
}

ComTomogram symplectic_to_com(const SymplecticTomogram& ws, const AxisGrid& xgrid) {
    const int nd = static_cast<int>(ws.xgrids.size());
    ComTomogram t(ws.layout, ws.frames, xgrid);
    t.tolerance = tol::composed;

    std::vector<std::vector<double>> pts(nd), wgt(nd);
    for (int j = 0; j < nd; ++j) {
        pts[j] = ws.xgrids[j].points();
        wgt[j].resize(ws.xgrids[j].n);
        for (int i = 0; i < ws.xgrids[j].n; ++i) wgt[j][i] = ws.xgrids[j].trapz_weight(i);
    }

    std::vector<double> spacing(nd), ones(nd, 1.0);
    for (int j = 0; j < nd; ++j) spacing[j] = ws.xgrids[j].step();
    const double kcut = projection_k_cut(ones, spacing, xgrid.step());

    std::vector<int> ydims(ws.values.dims.begin() + 1, ws.values.dims.end());
    NdArray<char> probe(ydims);
    const int nf = static_cast<int>(ws.frames.size());
    std::vector<std::string> errors(nf);
    parallel_for(nf, [&](int f) {
        ProjectionBinner binner(xgrid, kcut);
        std::vector<int> idx(nd, 0);
        std::vector<int> full(nd + 1, 0);
        full[0] = f;
        do {
            double proj = 0.0, cw = 1.0;
            for (int a = 0; a < nd; ++a) {
                full[a + 1] = idx[a];
                proj += pts[a][idx[a]];
                cw *= wgt[a][idx[a]];
            }
            binner.add(proj, ws.values(full) * cw);
        } while (probe.next_index(idx));
        try {
            auto prof = binner.finish("symplectic_to_com frame " + std::to_string(f));
            std::copy(prof.begin(), prof.end(), t.row(f).begin());
        } catch (const CoverageError& e) {
            errors[f] = e.what();
        }
    });
    for (const auto& e : errors)
        if (!e.empty()) throw CoverageError(e);
    t.enforce_nonnegative(1e-6);
    return t;
}

std::vector<Frame> ray_frames(const Frame& base, const std::vector<AxisGrid>& kgrids) {
    const int nd = base.nd();
    if (static_cast<int>(kgrids.size()) != nd) throw std::invalid_argument("ray_frames: need one k axis per mode");
    for (int j = 0; j < nd; ++j)
        if (base.mu[j] == 0.0 && base.nu[j] == 0.0)
            throw std::invalid_argument("ray_frames: base frame degenerate in mode " + std::to_string(j));

    std::vector<int> dims;
    for (const auto& g : kgrids) dims.push_back(g.n);
    NdArray<char> probe(dims);
    std::vector<Frame> out;
    std::vector<int> idx(nd, 0);
    do {
        Frame f{std::vector<double>(nd), std::vector<double>(nd)};
        for (int j = 0; j < nd; ++j) {
            const double k = kgrids[j].point(idx[j]);
            f.mu[j] = k * base.mu[j];
            f.nu[j] = k * base.nu[j];
        }
        if (!f.degenerate()) out.push_back(std::move(f));
    } while (probe.next_index(idx));
    return out;
}

SymplecticTomogram com_to_symplectic(const ComTomogram& t, const Frame& base,
                                     const std::vector<AxisGrid>& kgrids, std::vector<AxisGrid> xgrids) {
    const int nd = base.nd();
    const auto expect = ray_frames(base, kgrids);
    if (expect.size() != t.frames.size())
        throw std::invalid_argument("com_to_symplectic: tomogram does not hold the ray frame family");
    for (std::size_t i = 0; i < expect.size(); ++i)
        for (int j = 0; j < nd; ++j)
            if (std::abs(expect[i].mu[j] - t.frames[i].mu[j]) > 1e-12 ||
                std::abs(expect[i].nu[j] - t.frames[i].nu[j]) > 1e-12)
                throw std::invalid_argument("com_to_symplectic: tomogram does not hold the ray frame family");

    const Characteristic chi = com_to_characteristic(t);

    std::vector<int> dims;
    for (const auto& g : kgrids) dims.push_back(g.n);
    NdArray<Complex> grid(dims);
    std::size_t next = 0;
    std::vector<int> idx(nd, 0);
    do {
        bool zero = true;
        for (int j = 0; j < nd; ++j)
            if (kgrids[j].point(idx[j]) != 0.0) zero = false;
        grid(idx) = zero ? Complex(1.0) : chi.values[next++];
    } while (grid.next_index(idx));

    NdArray<Complex> work = std::move(grid);
    for (int j = 0; j < nd; ++j) work = axis_fourier(work, j, kgrids[j], xgrids[j].points(), -1.0);

    SymplecticTomogram ws(t.layout, {base}, std::move(xgrids));
    const double scale = std::pow(2.0 * kPi, -nd);
    double imag_worst = 0.0;
    for (std::size_t i = 0; i < work.size(); ++i) {
        ws.values.v[i] = work.v[i].real() * scale;
        imag_worst = std::max(imag_worst, std::abs(work.v[i].imag()) * scale);
        if (ws.values.v[i] < 0.0 && ws.values.v[i] > -1e-6) ws.values.v[i] = 0.0;
    }
    if (imag_worst > 1e-5)
        throw std::invalid_argument("com_to_symplectic: imaginary residue " + std::to_string(imag_worst));
    return ws;
}

SymplecticTomogram com_to_symplectic(const std::function<double(const Frame&, double)>& w,
                                     const ModeLayout& layout, const Frame& base,
                                     const std::vector<AxisGrid>& kgrids, std::vector<AxisGrid> xgrids) {
    const int nd = base.nd();
    std::vector<int> dims;
    for (const auto& g : kgrids) dims.push_back(g.n);
    NdArray<Complex> grid(dims);

    // chi(frame) = int w(frame, X) e^{iX} dX with the quadrature window found
    // by scanning the profile for its support.
    auto chi_of = [&](const Frame& f) -> Complex {
        double peak = 0.0, radius = 1.0;
        const int nscan = 2001;
        const double S = 120.0, hs = 2.0 * S / (nscan - 1);
        for (int i = 0; i < nscan; ++i) peak = std::max(peak, std::abs(w(f, -S + hs * i)));
        for (int i = 0; i < nscan; ++i) {
            const double X = std::abs(-S + hs * i);
            if (std::abs(w(f, -S + hs * i)) > 1e-13 * peak && X > radius) radius = X;
        }
        const AxisGrid q(-radius - 1.0, radius + 1.0, 1201);
        Complex acc = 0.0;
        for (int i = 0; i < q.n; ++i) acc += w(f, q.point(i)) * std::polar(q.trapz_weight(i), q.point(i));
        return acc;
    };

    std::vector<std::size_t> flats;
    std::vector<Frame> frames;
    {
        std::vector<int> idx(nd, 0);
        do {
            Frame f{std::vector<double>(nd), std::vector<double>(nd)};
            for (int j = 0; j < nd; ++j) {
                const double k = kgrids[j].point(idx[j]);
                f.mu[j] = k * base.mu[j];
                f.nu[j] = k * base.nu[j];
            }
            if (f.degenerate()) {
                grid(idx) = 1.0;
            } else {
                flats.push_back(grid.flat(idx));
                frames.push_back(std::move(f));
            }
        } while (grid.next_index(idx));
    }
    parallel_for(static_cast<int>(frames.size()), [&](int i) { grid.v[flats[i]] = chi_of(frames[i]); });

    NdArray<Complex> work = std::move(grid);
    for (int j = 0; j < nd; ++j) work = axis_fourier(work, j, kgrids[j], xgrids[j].points(), -1.0);

    SymplecticTomogram ws(layout, {base}, std::move(xgrids));
    const double scale = std::pow(2.0 * kPi, -nd);
    for (std::size_t i = 0; i < work.size(); ++i) {
        ws.values.v[i] = work.v[i].real() * scale;
        if (ws.values.v[i] < 0.0 && ws.values.v[i] > -1e-6) ws.values.v[i] = 0.0;
    }
    return ws;
}

namespace {

// Per-mode fractional-Fourier profile on a Y grid.
std::vector<double> mode_fractional_profile(const std::function<Complex(double)>& psi, double mu, double nu,
                                            const std::vector<double>& ypts, const AxisGrid& qquad) {
    const int nq = qquad.n;
    std::vector<Complex> samples(nq);
    std::vector<double> qp(nq), qw(nq);
    for (int i = 0; i < nq; ++i) {
        qp[i] = qquad.point(i);
        qw[i] = qquad.trapz_weight(i);
        samples[i] = psi(qp[i]);
    }
    std::vector<double> out(ypts.size());
    const double quad = 0.5 * mu / nu;
    for (std::size_t iy = 0; iy < ypts.size(); ++iy) {
        const double Y = ypts[iy];
        Complex acc = 0.0;
        for (int i = 0; i < nq; ++i)
            acc += samples[i] * std::polar(qw[i], quad * qp[i] * qp[i] - qp[i] * Y / nu);
        out[iy] = std::norm(acc) / (2.0 * kPi * std::abs(nu));
    }
    return out;
}

}  // namespace

std::vector<double> pure_state_tomogram(const std::vector<std::function<Complex(double)>>& psi_modes,
                                        const Frame& frame, const AxisGrid& xgrid, const AxisGrid& qquad) {
    const int nd = frame.nd();
    if (static_cast<int>(psi_modes.size()) != nd)
        throw std::invalid_argument("pure_state_tomogram: one wave function per mode required");
    for (int j = 0; j < nd; ++j)
        if (frame.nu[j] == 0.0)
            throw std::invalid_argument(
                "pure_state_tomogram: nu component is zero; use the Wigner route for such frames");

    if (nd == 1) {
        return mode_fractional_profile(psi_modes[0], frame.mu[0], frame.nu[0], xgrid.points(), qquad);
    }

    // Shared fine grid for the mode profiles; the last convolution is evaluated
    // at the query points with linear interpolation of the first mode profile.
    const double L = std::max(std::abs(xgrid.min), std::abs(xgrid.max)) + 6.0;
    const AxisGrid g(-L, L, 4097);
    const double h = g.step();
    const auto gp = g.points();

    std::vector<std::vector<double>> prof(nd);
    for (int j = 0; j < nd; ++j)
        prof[j] = mode_fractional_profile(psi_modes[j], frame.mu[j], frame.nu[j], gp, qquad);

    std::vector<double> acc = prof[nd - 1];
    std::vector<double> next(g.n);
    for (int j = nd - 2; j >= 1; --j) {
        for (int i = 0; i < g.n; ++i) {
            double s = 0.0;
            for (int k = 0; k < g.n; ++k) {
                const double arg = gp[i] - gp[k];
                const double pos = (arg - g.min) / h;
                if (pos < 0.0 || pos > g.n - 1) continue;
                const int i0 = std::min(static_cast<int>(pos), g.n - 2);
                const double w = pos - i0;
                s += ((1.0 - w) * prof[j][i0] + w * prof[j][i0 + 1]) * acc[k];
            }
            next[i] = s * h;
        }
        acc.swap(next);
    }

    std::vector<double> out(xgrid.n);
    for (int i = 0; i < xgrid.n; ++i) {
        const double X = xgrid.point(i);
        double s = 0.0;
        for (int k = 0; k < g.n; ++k) {
            const double arg = X - gp[k];
            const double pos = (arg - g.min) / h;
            if (pos < 0.0 || pos > g.n - 1) continue;
            const int i0 = std::min(static_cast<int>(pos), g.n - 2);
            const double w = pos - i0;
            s += ((1.0 - w) * prof[0][i0] + w * prof[0][i0 + 1]) * acc[k];
        }
        out[i] = s * h;
    }
    return out;
}

std::vector<double> pure_state_tomogram_full(const std::function<Complex(std::span<const double>)>& psi,
                                             int nd, const Frame& frame, const AxisGrid& xgrid,
                                             const AxisGrid& qquad) {
    if (frame.nd() != nd) throw std::invalid_argument("pure_state_tomogram_full: frame dimension mismatch");
    for (int j = 0; j < nd; ++j)
        if (frame.nu[j] == 0.0)
            throw std::invalid_argument(
                "pure_state_tomogram_full: nu component is zero; use the Wigner route for such frames");
    if (nd > 2) throw std::invalid_argument("pure_state_tomogram_full: desk scale supports nd <= 2");

    // F(Y) = int psi(q) exp(i sum_j [mu_j q_j^2/(2 nu_j) - q_j Y_j / nu_j]) dq
    const AxisGrid ygrid(-std::max(std::abs(xgrid.min), std::abs(xgrid.max)) - 4.0,
                         std::max(std::abs(xgrid.min), std::abs(xgrid.max)) + 4.0, 321);

    std::vector<int> qdims(nd, qquad.n);
    NdArray<Complex> work(qdims);
    {
        std::vector<int> qi(nd, 0);
        std::vector<double> q(nd);
        do {
            for (int j = 0; j < nd; ++j) q[j] = qquad.point(qi[j]);
            work(qi) = psi(q);
        } while (work.next_index(qi));
    }

    // The phase factorizes per mode, so replace each q axis by its fractional
    // Fourier image through a per-mode kernel table.
    const auto ypts = ygrid.points();
    for (int j = 0; j < nd; ++j) {
        std::vector<int> odims = work.dims;
        odims[j] = ygrid.n;
        NdArray<Complex> next(odims);
        std::vector<Complex> table(static_cast<std::size_t>(qquad.n) * ygrid.n);
        for (int i = 0; i < qquad.n; ++i) {
            const double qj = qquad.point(i), w = qquad.trapz_weight(i);
            const double quad = 0.5 * frame.mu[j] * qj * qj / frame.nu[j];
            for (int o = 0; o < ygrid.n; ++o)
                table[static_cast<std::size_t>(i) * ygrid.n + o] =
                    std::polar(w, quad - qj * ypts[o] / frame.nu[j]);
        }
        std::vector<int> pdims = work.dims;
        pdims[j] = 1;
        NdArray<char> probe(pdims);
        std::vector<int> idx(work.rank(), 0);
        do {
            const Complex* src = work.v.data() + work.flat(idx);
            Complex* dst = next.v.data() + next.flat(idx);
            const std::size_t si = work.strides[j], so = next.strides[j];
            for (int o = 0; o < ygrid.n; ++o) {
                Complex acc = 0.0;
                for (int i = 0; i < qquad.n; ++i)
                    acc += src[si * i] * table[static_cast<std::size_t>(i) * ygrid.n + o];
                dst[so * o] = acc;
            }
        } while (probe.next_index(idx));
        work = std::move(next);
    }

    std::vector<int> ydims(nd, ygrid.n);
    NdArray<double> wsvals(ydims);
    double nufac = 1.0;
    for (int j = 0; j < nd; ++j) nufac *= 2.0 * kPi * std::abs(frame.nu[j]);
    for (std::size_t i = 0; i < wsvals.size(); ++i) wsvals.v[i] = std::norm(work.v[i]) / nufac;
    std::vector<int> yi(nd, 0);

    // Bin on a whole-step extension of the X grid so kernel tails that fall
    // outside the requested window are not flagged as lost coverage.
    const double hx = xgrid.step();
    const int pad = static_cast<int>(std::ceil((nd * std::max(std::abs(ygrid.min), ygrid.max) -
                                                std::max(std::abs(xgrid.min), xgrid.max)) /
                                               hx)) +
                    2;
    const AxisGrid ext(xgrid.min - pad * hx, xgrid.max + pad * hx, xgrid.n + 2 * pad);
    std::vector<double> spacing(nd, ygrid.step()), ones(nd, 1.0);
    ProjectionBinner binner(ext, projection_k_cut(ones, spacing, hx));
    std::fill(yi.begin(), yi.end(), 0);
    do {
        double proj = 0.0, wy = 1.0;
        for (int j = 0; j < nd; ++j) {
            proj += ygrid.point(yi[j]);
            wy *= ygrid.trapz_weight(yi[j]);
        }
        binner.add(proj, wsvals(yi) * wy);
    } while (wsvals.next_index(yi));
    auto full = binner.finish("pure_state_tomogram_full");
    return std::vector<double>(full.begin() + pad, full.begin() + pad + xgrid.n);
}

}  // namespace comtom
