#include "comtom/starprod.hpp"

#include <cmath>

#include "comtom/numeric.hpp"

namespace comtom {

namespace {
const double kPi = std::acos(-1.0);

Complex frame_alpha(const Frame& f, double k) {
    if (f.nd() != 1) throw std::invalid_argument("starprod: single-mode scope");
    return k * Complex(-f.nu[0], f.mu[0]) / std::sqrt(2.0);
}

}  // namespace

Eigen::MatrixXcd displacement_block(Complex alpha, int M) {
    const double x = std::norm(alpha);
    const double ex = std::exp(-0.5 * x);
    Eigen::MatrixXcd D(M, M);
    // <n+d|D|n> = sqrt(n!/(n+d)!) alpha^d e^{-x/2} L_n^{(d)}(x); the conjugate
    // relation with -alpha* fills the upper triangle. One Laguerre recurrence
    // per diagonal.
    for (int d = 0; d < M; ++d) {
        Complex f_lo = ex, f_up = ex;
        for (int j = 1; j <= d; ++j) {
            f_lo *= alpha / std::sqrt(static_cast<double>(j));
            f_up *= -std::conj(alpha) / std::sqrt(static_cast<double>(j));
        }
        double lm1 = 0.0, l = 1.0;  // L_{-1} = 0, L_0 = 1
        for (int n = 0; n + d < M; ++n) {
            if (n > 0) {
                const double ln = ((2.0 * n - 1.0 + d - x) * l - (n - 1.0 + d) * lm1) / n;
                lm1 = l;
                l = ln;
                const double ratio = std::sqrt(static_cast<double>(n) / (n + d));
                f_lo *= ratio;
                f_up *= ratio;
            }
            D(n + d, n) = f_lo * l;
            if (d > 0) D(n, n + d) = f_up * l;
        }
    }
    return D;
}

QuantizerContext::QuantizerContext(int M) : truncation(M) {
    if (M < 2) throw std::invalid_argument("QuantizerContext: truncation too small");
    qop = fock_position_operator(M);
    pop = fock_momentum_operator(M);
}

Eigen::MatrixXcd QuantizerContext::frame_exponential(const Frame& frame, double k) const {
    return displacement_block(frame_alpha(frame, k), truncation);
}

double QuantizerContext::unitarity_gap(const Frame& frame, double k) const {
    const Eigen::MatrixXcd U = frame_exponential(frame, k);
    double worst = 0.0;
    for (int n = 0; n < truncation / 4; ++n) worst = std::max(worst, std::abs(U.col(n).squaredNorm() - 1.0));
    return worst;
}

Eigen::MatrixXd fock_position_operator(int M) {
    Eigen::MatrixXd q = Eigen::MatrixXd::Zero(M, M);
    for (int n = 0; n + 1 < M; ++n) q(n, n + 1) = q(n + 1, n) = std::sqrt(0.5 * (n + 1));
    return q;
}

Eigen::MatrixXcd fock_momentum_operator(int M) {
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(M, M);
    for (int n = 0; n + 1 < M; ++n) {
        p(n, n + 1) = Complex(0.0, -std::sqrt(0.5 * (n + 1)));
        p(n + 1, n) = Complex(0.0, std::sqrt(0.5 * (n + 1)));
    }
    return p;
}

SymbolField symbol_from_operator(const FockMatrix& A, const QuantizerContext& ctx,
                                 const CartesianFrameGrid& grid) {
    if (A.truncation != ctx.truncation)
        throw std::invalid_argument("symbol_from_operator: operator truncation mismatch");
    if (grid.nd() != 1) throw std::invalid_argument("symbol_from_operator: single-mode scope");
    SymbolField out{grid, NdArray<Complex>(grid.dims())};
    const int M = ctx.truncation;

    std::vector<std::size_t> flats;
    std::vector<Frame> frames;
    grid.for_each([&](std::span<const int> idx) {
        Frame f = grid.frame_at(idx);
        if (f.degenerate()) {
            out.chi(idx) = A.m.trace();
            return;
        }
        flats.push_back(out.chi.flat(idx));
        frames.push_back(std::move(f));
    });

    parallel_for(static_cast<int>(frames.size()), [&](int i) {
        const Eigen::MatrixXcd D = displacement_block(frame_alpha(frames[i], 1.0), M);
        Complex acc = 0.0;
        for (int n = 0; n < M; ++n)
            for (int m = 0; m < M; ++m) acc += A.m(n, m) * D(m, n);
        out.chi.v[flats[i]] = acc;
    });
    return out;
}

std::vector<double> symbol_profile(const FockMatrix& A, const QuantizerContext& ctx, const Frame& frame,
                                   const AxisGrid& xgrid, double k_span, int k_points) {
    require_nondegenerate(frame, "symbol_profile");
    const double r = std::sqrt(frame.norm2());
    const int M = ctx.truncation;
    const double K = k_span / r;

    // g(k) = Tr(A e^{i k (mu q + nu p)}) on a symmetric k grid, then inverted to X.
    const AxisGrid kg(-K, K, k_points);
    std::vector<Complex> g(k_points);
    for (int i = 0; i < k_points; ++i) {
        const Eigen::MatrixXcd D = displacement_block(frame_alpha(frame, kg.point(i)), M);
        Complex acc = 0.0;
        for (int n = 0; n < M; ++n)
            for (int m = 0; m < M; ++m) acc += A.m(n, m) * D(m, n);
        g[i] = acc;
    }
    std::vector<double> out(xgrid.n);
    for (int ix = 0; ix < xgrid.n; ++ix) {
        Complex acc = 0.0;
        for (int i = 0; i < k_points; ++i)
            acc += g[i] * std::polar(kg.trapz_weight(i), -kg.point(i) * xgrid.point(ix));
        out[ix] = acc.real() / (2.0 * kPi);
    }
    return out;
}

ComTomogram symbol_tomogram(const FockMatrix& rho, const QuantizerContext& ctx, std::vector<Frame> frames,
                            const AxisGrid& xgrid) {
    ComTomogram t(ModeLayout::unit(1), std::move(frames), xgrid);
    t.tolerance = tol::transform;
    for (int f = 0; f < t.n_frames(); ++f) {
        auto prof = symbol_profile(rho, ctx, t.frames[f], xgrid);
        std::copy(prof.begin(), prof.end(), t.row(f).begin());
    }
    t.enforce_nonnegative(1e-5);
    return t;
}

FockMatrix operator_from_symbol(const SymbolField& field, const QuantizerContext& ctx,
                                bool enforce_hermitian) {
    if (field.grid.nd() != 1) throw std::invalid_argument("operator_from_symbol: single-mode scope");
    const int M = ctx.truncation;

    double boundary = 0.0;
    std::vector<int> idx(field.chi.rank(), 0);
    do {
        for (int a = 0; a < field.chi.rank(); ++a)
            if (idx[a] == 0 || idx[a] == field.chi.dims[a] - 1) {
                boundary = std::max(boundary, std::abs(field.chi(idx)));
                break;
            }
    } while (field.chi.next_index(idx));
    if (boundary > 1e-8)
        throw CoverageError("operator_from_symbol: characteristic not decayed at the frame-grid boundary (" +
                            std::to_string(boundary) + ")");

    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(M, M);
    std::fill(idx.begin(), idx.end(), 0);
    do {
        const Frame f = field.grid.frame_at(idx);
        const double w = field.grid.weight_at(idx);
        // The origin frame is a regular point of the integrand: chi(0,0) times
        // the identity.
        rho += (field.chi(idx) * w) * ctx.frame_exponential(f, f.degenerate() ? 0.0 : -1.0);
    } while (field.chi.next_index(idx));
    rho /= 2.0 * kPi;

    if (enforce_hermitian) {
        const double herm_gap = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
        if (herm_gap > 1e-6)
            throw std::invalid_argument("operator_from_symbol: hermiticity gap " + std::to_string(herm_gap));
        rho = 0.5 * (rho + rho.adjoint()).eval();
    }

    const double leak = std::abs(rho(M - 1, M - 1));
    if (leak > 1e-6)
        throw CoverageError("operator_from_symbol: truncation leakage " + std::to_string(leak) +
                            " at level " + std::to_string(M - 1));
    return FockMatrix(std::move(rho));
}

SymbolField star_product(const SymbolField& fa, const SymbolField& fb, const QuantizerContext& ctx) {
    const FockMatrix A = operator_from_symbol(fa, ctx, false);
    const FockMatrix B = operator_from_symbol(fb, ctx, false);
    return symbol_from_operator(FockMatrix(Eigen::MatrixXcd(A.m * B.m)), ctx, fa.grid);
}

double purity(const SymbolField& field, const QuantizerContext& ctx) {
    const FockMatrix rho = operator_from_symbol(field, ctx);
    return (rho.m * rho.m).trace().real();
}

SymbolField symbol_field_from_tomogram(const std::function<double(const Frame&, double)>& w,
                                       const CartesianFrameGrid& grid) {
    SymbolField out{grid, NdArray<Complex>(grid.dims())};
    std::vector<std::size_t> flats;
    std::vector<Frame> frames;
    grid.for_each([&](std::span<const int> idx) {
        Frame f = grid.frame_at(idx);
        if (f.degenerate()) {
            out.chi(idx) = 1.0;
            return;
        }
        flats.push_back(out.chi.flat(idx));
        frames.push_back(std::move(f));
    });
    parallel_for(static_cast<int>(frames.size()), [&](int i) {
        const Frame& f = frames[i];
        double peak = 0.0, radius = 1.0;
        const int nscan = 2001;
        const double S = 150.0, hs = 2.0 * S / (nscan - 1);
        for (int j = 0; j < nscan; ++j) peak = std::max(peak, std::abs(w(f, -S + hs * j)));
        for (int j = 0; j < nscan; ++j) {
            const double X = std::abs(-S + hs * j);
            if (std::abs(w(f, -S + hs * j)) > 1e-13 * peak && X > radius) radius = X;
        }
        const AxisGrid q(-radius - 1.0, radius + 1.0, 1201);
        Complex acc = 0.0;
        for (int j = 0; j < q.n; ++j) acc += w(f, q.point(j)) * std::polar(q.trapz_weight(j), q.point(j));
        out.chi.v[flats[i]] = acc;
    });
    return out;
}

}  // namespace comtom
