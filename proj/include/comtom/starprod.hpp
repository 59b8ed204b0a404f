#ifndef COMTOM_STARPROD_HPP
#define COMTOM_STARPROD_HPP

#include "comtom/core.hpp"
#include "comtom/fock.hpp"
#include "comtom/tomogram.hpp"
#include "comtom/transforms.hpp"

namespace comtom {

/// Single-mode quantizer/dequantizer context. Frame exponentials use the
/// exact number-basis matrix elements of e^{i k(mu q + nu p)} = D(alpha) with
/// alpha = k (i mu - nu)/sqrt(2) (associated Laguerre form); truncating the
/// generator instead would produce spectral revivals at large |k|*|frame|.
struct QuantizerContext {
    int truncation = 32;
    Eigen::MatrixXd qop;      // position operator
    Eigen::MatrixXcd pop;     // momentum operator

    explicit QuantizerContext(int M = 32);

    /// Top-left truncation block of e^{i k (mu q + nu p)}; every stored element
    /// is exact, deviations from unitarity measure leakage past the truncation.
    Eigen::MatrixXcd frame_exponential(const Frame& frame, double k) const;

    /// Worst column-norm deviation from unitarity over the first M/2 columns.
    double unitarity_gap(const Frame& frame, double k) const;
};

/// Exact number-basis block of the displacement operator D(alpha).
Eigen::MatrixXcd displacement_block(Complex alpha, int M);

/// Symbol of an operator restricted to its characteristic content on a frame
/// grid: chi_A(mu, nu) = Tr(A e^{i(mu q + nu p)}). For a density operator this
/// is the tomogram's characteristic function.
struct SymbolField {
    CartesianFrameGrid grid;
    NdArray<Complex> chi;
};

SymbolField symbol_from_operator(const FockMatrix& A, const QuantizerContext& ctx,
                                 const CartesianFrameGrid& grid);

/// X-space symbol samples for one frame:
/// f_A(X, mu, nu) = (2 pi)^{-1} int e^{-i k X} Tr(A e^{i k (mu q + nu p)}) dk.
/// The k window scales as 1/|frame| and must stay below the truncation revival
/// scale; k_span is the product |k| * |frame| covered (default 14).
std::vector<double> symbol_profile(const FockMatrix& A, const QuantizerContext& ctx, const Frame& frame,
                                   const AxisGrid& xgrid, double k_span = 14.0, int k_points = 257);

/// Tomogram container of a density operator sampled through the quantizer.
ComTomogram symbol_tomogram(const FockMatrix& rho, const QuantizerContext& ctx, std::vector<Frame> frames,
                            const AxisGrid& xgrid);

/// rho = (2 pi)^{-1} int chi(mu, nu) e^{-i(mu q + nu p)} dmu dnu; rejects
/// reconstructions with boundary or truncation leakage. State reconstructions
/// (enforce_hermitian) are symmetrized with the asymmetry monitored; symbols of
/// general operator products are legitimately non-Hermitian.
FockMatrix operator_from_symbol(const SymbolField& field, const QuantizerContext& ctx,
                                bool enforce_hermitian = true);

/// Star product through the operator route: quantize both factors, multiply,
/// take the symbol of the product.
SymbolField star_product(const SymbolField& fa, const SymbolField& fb, const QuantizerContext& ctx);

/// Tr(rho^2) of the reconstructed operator.
double purity(const SymbolField& field, const QuantizerContext& ctx);

/// Characteristic field of an analytic tomogram evaluator on a frame grid,
/// integrating each frame's X profile on an adapted window (same role as the
/// ray constructor in the symplectic map).
SymbolField symbol_field_from_tomogram(const std::function<double(const Frame&, double)>& w,
                                       const CartesianFrameGrid& grid);

}  // namespace comtom

#endif
