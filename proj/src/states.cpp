#include "comtom/states.hpp"

#include <algorithm>
#include <cmath>

namespace comtom {

namespace {
const double kPi = std::acos(-1.0);

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}
}  // namespace

double hermite(int n, double x) {
    if (n < 0) throw std::invalid_argument("hermite: order must be >= 0");
    if (n > kHermiteMaxOrder) throw std::invalid_argument("hermite: order above supported cap");
    if (n == 0) return 1.0;
    double hm = 1.0, h = 2.0 * x;
    for (int k = 1; k < n; ++k) {
        const double hn = 2.0 * x * h - 2.0 * k * hm;
        hm = h;
        h = hn;
    }
    return h;
}

double laguerre(int n, double x) {
    if (n < 0) throw std::invalid_argument("laguerre: order must be >= 0");
    if (n == 0) return 1.0;
    double lm = 1.0, l = 1.0 - x;
    for (int k = 1; k < n; ++k) {
        const double ln = ((2.0 * k + 1.0 - x) * l - k * lm) / (k + 1.0);
        lm = l;
        l = ln;
    }
    return l;
}

int state_nd(const AnalyticState& s) {
    return std::visit([](const auto& p) { return p.nd(); }, s);
}

double gaussian_tomogram(const GaussianStateParams& p, const Frame& frame, double X) {
    p.validate();
    if (frame.nd() != p.nd()) throw std::invalid_argument("gaussian_tomogram: frame dimension mismatch");
    double C = 0.0, mean = 0.0;
    for (int j = 0; j < p.nd(); ++j) {
        C += frame.mu[j] * frame.mu[j] / p.A[j] + frame.nu[j] * frame.nu[j] / p.B[j];
        mean += frame.mu[j] * p.x[j] + frame.nu[j] * p.y[j];
    }
    if (!(C > 0.0)) throw std::invalid_argument("gaussian_tomogram: degenerate frame (C = 0)");
    const double z = X - mean;
    return std::exp(-z * z / C) / std::sqrt(kPi * C);
}

double thermal_tomogram_D(const ThermalStateParams& p, const Frame& frame) {
    p.validate();
    if (frame.nd() != p.nd()) throw std::invalid_argument("thermal_tomogram: frame dimension mismatch");
    double D = 0.0;
    for (int j = 0; j < p.nd(); ++j) {
        const double A = p.derived_A(j), B = p.derived_B(j);
        D += frame.mu[j] * frame.mu[j] / (2.0 * A * (B - 1.0)) +
             2.0 * frame.nu[j] * frame.nu[j] * A * (B + 1.0);
    }
    return D;
}

double thermal_tomogram(const ThermalStateParams& p, const Frame& frame, double X) {
    const double D = thermal_tomogram_D(p, frame);
    if (!(D > 0.0)) throw std::invalid_argument("thermal_tomogram: degenerate frame (D = 0)");
    return std::exp(-X * X / D) / std::sqrt(kPi * D);
}

namespace {

// Distribution of X_j = mu_j q_j + nu_j p_j in the number state n: a scaled
// oscillator quadrature density with scale C = mu_j^2 + nu_j^2.
double fock_mode_density(int n, double C, double t) {
    const double s = t / std::sqrt(C);
    const double h = hermite(n, s);
    return h * h * std::exp(-s * s) / (std::pow(2.0, n) * factorial(n) * std::sqrt(kPi * C));
}

struct FockConv {
    AxisGrid grid{-1.0, 1.0, 2};
    std::vector<double> g;  // convolution of modes 2..nd sampled on grid
};

// Builds the inner (nd-1)-fold convolution; mode 1 is folded in at query time.
FockConv fock_inner_convolution(const FockStateParams& p, const std::vector<double>& C) {
    const int nd = p.nd();
    double var = 0.0;
    for (int j = 0; j < nd; ++j) var += C[j] * (p.n[j] + 0.5);
    const double L = 8.0 * std::sqrt(var) + 1.0;
    const int ng = 2049;
    FockConv conv;
    conv.grid = AxisGrid(-L, L, ng);
    const double h = conv.grid.step();

    conv.g.resize(ng);
    for (int i = 0; i < ng; ++i) conv.g[i] = fock_mode_density(p.n[nd - 1], C[nd - 1], conv.grid.point(i));
    std::vector<double> next(ng);
    for (int j = nd - 2; j >= 1; --j) {
        for (int i = 0; i < ng; ++i) {
            const double xi = conv.grid.point(i);
            double s = 0.0;
            for (int k = 0; k < ng; ++k) s += fock_mode_density(p.n[j], C[j], xi - conv.grid.point(k)) * conv.g[k];
            next[i] = s * h;
        }
        conv.g.swap(next);
    }
    return conv;
}

std::vector<double> fock_mode_scales(const FockStateParams& p, const Frame& frame) {
    if (frame.nd() != p.nd()) throw std::invalid_argument("fock_tomogram: frame dimension mismatch");
    std::vector<double> C(p.nd());
    for (int j = 0; j < p.nd(); ++j) {
        C[j] = frame.mu[j] * frame.mu[j] + frame.nu[j] * frame.nu[j];
        if (!(C[j] > 0.0))
            throw std::invalid_argument("fock_tomogram: mode " + std::to_string(j) + " has mu = nu = 0");
    }
    return C;
}

}  // namespace

double fock_tomogram(const FockStateParams& p, const Frame& frame, double X) {
    p.validate();
    const auto C = fock_mode_scales(p, frame);
    if (p.nd() == 1) return fock_mode_density(p.n[0], C[0], X);
    const FockConv conv = fock_inner_convolution(p, C);
    const double h = conv.grid.step();
    double s = 0.0;
    for (int k = 0; k < conv.grid.n; ++k) s += fock_mode_density(p.n[0], C[0], X - conv.grid.point(k)) * conv.g[k];
    return s * h;
}

std::vector<double> fock_tomogram_profile(const FockStateParams& p, const Frame& frame, const AxisGrid& xgrid) {
    p.validate();
    const auto C = fock_mode_scales(p, frame);
    std::vector<double> out(xgrid.n);
    if (p.nd() == 1) {
        for (int i = 0; i < xgrid.n; ++i) out[i] = fock_mode_density(p.n[0], C[0], xgrid.point(i));
        return out;
    }
    const FockConv conv = fock_inner_convolution(p, C);
    const double h = conv.grid.step();
    for (int i = 0; i < xgrid.n; ++i) {
        const double X = xgrid.point(i);
        double s = 0.0;
        for (int k = 0; k < conv.grid.n; ++k)
            s += fock_mode_density(p.n[0], C[0], X - conv.grid.point(k)) * conv.g[k];
        out[i] = s * h;
    }
    return out;
}

double analytic_tomogram(const AnalyticState& s, const Frame& frame, double X) {
    return std::visit(
        [&](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, GaussianStateParams>) return gaussian_tomogram(p, frame, X);
            else if constexpr (std::is_same_v<T, ThermalStateParams>) return thermal_tomogram(p, frame, X);
            else if constexpr (std::is_same_v<T, FockStateParams>) return fock_tomogram(p, frame, X);
            else return gaussian_tomogram(p.to_gaussian(), frame, X);
        },
        s);
}

Complex analytic_wavefunction(const GaussianStateParams& p, std::span<const double> q) {
    p.validate();
    if (!p.pure_state()) throw std::invalid_argument("analytic_wavefunction: Gaussian state is not pure");
    Complex psi = 1.0;
    for (int j = 0; j < p.nd(); ++j) {
        const double dq = q[j] - p.x[j];
        psi *= std::pow(p.A[j] / kPi, 0.25) *
               std::exp(Complex(-0.5 * p.A[j] * dq * dq, p.y[j] * q[j]));
    }
    return psi;
}

Complex analytic_wavefunction(const FockStateParams& p, std::span<const double> q) {
    p.validate();
    Complex psi = 1.0;
    for (int j = 0; j < p.nd(); ++j) {
        const int n = p.n[j];
        psi *= std::exp(-0.5 * q[j] * q[j]) * hermite(n, q[j]) /
               (std::pow(kPi, 0.25) * std::sqrt(std::pow(2.0, n) * factorial(n)));
    }
    return psi;
}

Complex analytic_wavefunction(const CoherentStateParams& p, std::span<const double> q) {
    return analytic_wavefunction(p.to_gaussian(), q);
}

double analytic_wigner(const GaussianStateParams& p, std::span<const double> q, std::span<const double> pp) {
    p.validate();
    double w = 1.0;
    for (int j = 0; j < p.nd(); ++j) {
        const double dq = q[j] - p.x[j], dp = pp[j] - p.y[j];
        w *= std::exp(-p.A[j] * dq * dq - p.B[j] * dp * dp) * std::sqrt(p.A[j] * p.B[j]) / kPi;
    }
    return w;
}

double analytic_wigner(const ThermalStateParams& p, std::span<const double> q, std::span<const double> pp) {
    p.validate();
    double w = 1.0;
    for (int j = 0; j < p.nd(); ++j) {
        const double A = p.derived_A(j), B = p.derived_B(j);
        // Gaussian Wigner function with <q^2> = 1/(4A(B-1)), <p^2> = A(B+1).
        const double cq = 2.0 * A * (B - 1.0);
        const double cp = 1.0 / (2.0 * A * (B + 1.0));
        w *= std::sqrt(cq * cp) / kPi * std::exp(-cq * q[j] * q[j] - cp * pp[j] * pp[j]);
    }
    return w;
}

namespace {

// One-mode number-state Wigner function by direct quadrature of the
// density-to-Wigner integral with the analytic wave function.
double fock_mode_wigner(int n, double q, double p) {
    const double span = 2.0 * (std::sqrt(2.0 * n + 1.0) + 8.0);
    const int nu = 801;
    const double hu = 2.0 * span / (nu - 1);
    const FockStateParams one({n});
    double re = 0.0;
    for (int k = 0; k < nu; ++k) {
        const double u = -span + hu * k;
        const double a[1] = {q + 0.5 * u}, b[1] = {q - 0.5 * u};
        const double prod = (analytic_wavefunction(one, a) * std::conj(analytic_wavefunction(one, b))).real();
        re += prod * std::cos(p * u) * hu;
    }
    return re / (2.0 * kPi);
}

}  // namespace

double analytic_wigner(const FockStateParams& p, std::span<const double> q, std::span<const double> pp) {
    p.validate();
    double w = 1.0;
    for (int j = 0; j < p.nd(); ++j) w *= fock_mode_wigner(p.n[j], q[j], pp[j]);
    return w;
}

double analytic_wigner(const AnalyticState& s, std::span<const double> q, std::span<const double> pp) {
    return std::visit(
        [&](const auto& par) -> double {
            using T = std::decay_t<decltype(par)>;
            if constexpr (std::is_same_v<T, CoherentStateParams>) return analytic_wigner(par.to_gaussian(), q, pp);
            else return analytic_wigner(par, q, pp);
        },
        s);
}

WignerGrid sample_wigner(const AnalyticState& s, std::vector<AxisGrid> qgrids, std::vector<AxisGrid> pgrids) {
    const int nd = state_nd(s);
    if (static_cast<int>(qgrids.size()) != nd || static_cast<int>(pgrids.size()) != nd)
        throw std::invalid_argument("sample_wigner: axis count mismatch");
    WignerGrid W(ModeLayout::unit(nd), qgrids, pgrids);

    // Every family factorizes over modes: build per-mode tables, then the outer product.
    std::vector<NdArray<double>> tables;
    tables.reserve(nd);
    for (int j = 0; j < nd; ++j) {
        NdArray<double> tbl({qgrids[j].n, pgrids[j].n});
        for (int iq = 0; iq < qgrids[j].n; ++iq)
            for (int ip = 0; ip < pgrids[j].n; ++ip) {
                const double q = qgrids[j].point(iq), p = pgrids[j].point(ip);
                tbl.at2(iq, ip) = std::visit(
                    [&](const auto& par) -> double {
                        using T = std::decay_t<decltype(par)>;
                        if constexpr (std::is_same_v<T, GaussianStateParams>) {
                            GaussianStateParams one({par.x[j]}, {par.y[j]}, {par.A[j]}, {par.B[j]});
                            const double qa[1] = {q}, pa[1] = {p};
                            return analytic_wigner(one, qa, pa);
                        } else if constexpr (std::is_same_v<T, ThermalStateParams>) {
                            ThermalStateParams one({par.omega[j]}, par.beta, par.mass);
                            const double qa[1] = {q}, pa[1] = {p};
                            return analytic_wigner(one, qa, pa);
                        } else if constexpr (std::is_same_v<T, FockStateParams>) {
                            return fock_mode_wigner(par.n[j], q, p);
                        } else {
                            GaussianStateParams g = par.to_gaussian();
                            GaussianStateParams one({g.x[j]}, {g.y[j]}, {g.A[j]}, {g.B[j]});
                            const double qa[1] = {q}, pa[1] = {p};
                            return analytic_wigner(one, qa, pa);
                        }
                    },
                    s);
            }
        tables.push_back(std::move(tbl));
    }

    std::vector<int> idx(2 * nd, 0);
    do {
        double w = 1.0;
        for (int j = 0; j < nd; ++j) w *= tables[j].at2(idx[j], idx[nd + j]);
        W.values(idx) = w;
    } while (W.values.next_index(idx));
    return W;
}

DensityMatrixGrid analytic_density(const AnalyticState& s, std::vector<AxisGrid> qgrids) {
    const int nd = state_nd(s);
    if (static_cast<int>(qgrids.size()) != nd) throw std::invalid_argument("analytic_density: axis count mismatch");
    DensityMatrixGrid rho(ModeLayout::unit(nd), qgrids);

    const bool thermal = std::holds_alternative<ThermalStateParams>(s);
    std::vector<int> idx(2 * nd, 0);
    std::vector<double> qa(nd), qb(nd);
    do {
        for (int j = 0; j < nd; ++j) {
            qa[j] = qgrids[j].point(idx[j]);
            qb[j] = qgrids[j].point(idx[nd + j]);
        }
        if (thermal) {
            const auto& p = std::get<ThermalStateParams>(s);
            double v = 1.0;
            for (int j = 0; j < nd; ++j) {
                const double A = p.derived_A(j), B = p.derived_B(j);
                v *= std::sqrt(2.0 * A * (B - 1.0) / kPi) *
                     std::exp(-A * (B * (qa[j] * qa[j] + qb[j] * qb[j]) - 2.0 * qa[j] * qb[j]));
            }
            rho.values(idx) = v;
        } else {
            const Complex pa = std::visit(
                [&](const auto& par) -> Complex {
                    using T = std::decay_t<decltype(par)>;
                    if constexpr (std::is_same_v<T, ThermalStateParams>) return 0.0;
                    else return analytic_wavefunction(par, qa);
                },
                s);
            const Complex pb = std::visit(
                [&](const auto& par) -> Complex {
                    using T = std::decay_t<decltype(par)>;
                    if constexpr (std::is_same_v<T, ThermalStateParams>) return 0.0;
                    else return analytic_wavefunction(par, qb);
                },
                s);
            rho.values(idx) = pa * std::conj(pb);
        }
    } while (rho.values.next_index(idx));
    return rho;
}

ComTomogram sample_tomogram(const AnalyticState& s, std::vector<Frame> frames, const AxisGrid& xgrid,
                            const ModeLayout* layout) {
    const int nd = state_nd(s);
    ModeLayout lay = layout ? *layout : ModeLayout::unit(nd);
    ComTomogram t(lay, std::move(frames), xgrid);
    for (int f = 0; f < t.n_frames(); ++f) {
        if (const auto* fock = std::get_if<FockStateParams>(&s)) {
            const auto prof = fock_tomogram_profile(*fock, t.frames[f], xgrid);
            std::copy(prof.begin(), prof.end(), t.row(f).begin());
        } else {
            for (int i = 0; i < xgrid.n; ++i) t.at(f, i) = analytic_tomogram(s, t.frames[f], xgrid.point(i));
        }
    }
    return t;
}

Complex analytic_characteristic(const AnalyticState& s, const Frame& frame) {
    const int nd = state_nd(s);
    if (frame.nd() != nd) throw std::invalid_argument("analytic_characteristic: frame dimension mismatch");
    return std::visit(
        [&](const auto& p) -> Complex {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, GaussianStateParams> || std::is_same_v<T, CoherentStateParams>) {
                GaussianStateParams g = [&] {
                    if constexpr (std::is_same_v<T, CoherentStateParams>) return p.to_gaussian();
                    else return p;
                }();
                double C = 0.0, mean = 0.0;
                for (int j = 0; j < nd; ++j) {
                    C += frame.mu[j] * frame.mu[j] / g.A[j] + frame.nu[j] * frame.nu[j] / g.B[j];
                    mean += frame.mu[j] * g.x[j] + frame.nu[j] * g.y[j];
                }
                return std::exp(Complex(-0.25 * C, mean));
            } else if constexpr (std::is_same_v<T, ThermalStateParams>) {
                return std::exp(-0.25 * thermal_tomogram_D(p, frame));
            } else {
                double chi = 1.0;
                for (int j = 0; j < nd; ++j) {
                    const double C = frame.mu[j] * frame.mu[j] + frame.nu[j] * frame.nu[j];
                    chi *= std::exp(-0.25 * C) * laguerre(p.n[j], 0.5 * C);
                }
                return chi;
            }
        },
        s);
}

}  // namespace comtom
