#ifndef COMTOM_FOCK_HPP
#define COMTOM_FOCK_HPP

#include <Eigen/Dense>

#include "comtom/types.hpp"

namespace comtom {

/// Operator in the truncated number basis (levels 0 .. truncation-1, one mode).
struct FockMatrix {
    int truncation = 0;
    Eigen::MatrixXcd m;

    FockMatrix() = default;
    explicit FockMatrix(int M) : truncation(M), m(Eigen::MatrixXcd::Zero(M, M)) {}
    explicit FockMatrix(Eigen::MatrixXcd mat) : truncation(static_cast<int>(mat.rows())), m(std::move(mat)) {
        if (m.rows() != m.cols()) throw std::invalid_argument("FockMatrix: square matrix required");
    }

    double trace_real() const { return m.trace().real(); }
    double hermiticity_gap() const { return (m - m.adjoint()).cwiseAbs().maxCoeff(); }

    static FockMatrix projector(int M, int level) {
        FockMatrix f(M);
        if (level < 0 || level >= M) throw std::invalid_argument("FockMatrix: level outside truncation");
        f.m(level, level) = 1.0;
        return f;
    }
    static FockMatrix identity(int M) { return FockMatrix(Eigen::MatrixXcd::Identity(M, M)); }

    /// Thermal Boltzmann diagonal at inverse temperature beta (unit oscillator).
    static FockMatrix thermal(int M, double beta) {
        FockMatrix f(M);
        double z = 0.0;
        for (int n = 0; n < M; ++n) z += std::exp(-beta * n);
        for (int n = 0; n < M; ++n) f.m(n, n) = std::exp(-beta * n) / z;
        return f;
    }

    /// |alpha><alpha| truncated; the expansion alpha^n/sqrt(n!) is renormalized
    /// over the kept levels.
    static FockMatrix coherent(int M, Complex alpha) {
        Eigen::VectorXcd c(M);
        Complex an = 1.0;
        double fact = 1.0;
        for (int n = 0; n < M; ++n) {
            if (n > 0) {
                an *= alpha;
                fact *= n;
            }
            c(n) = an / std::sqrt(fact);
        }
        c *= std::exp(-0.5 * std::norm(alpha));
        c /= c.norm();
        FockMatrix f(M);
        f.m = c * c.adjoint();
        return f;
    }
};

/// Position operator (a + a^dag)/sqrt(2) in the number basis.
Eigen::MatrixXd fock_position_operator(int M);
/// Momentum operator (a - a^dag)/(i sqrt(2)).
Eigen::MatrixXcd fock_momentum_operator(int M);

}  // namespace comtom

#endif
