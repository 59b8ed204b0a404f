#ifndef COMTOM_TYPES_HPP
#define COMTOM_TYPES_HPP

#include <complex>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace comtom {

using Complex = std::complex<double>;

/// Input that violates a declared schema or precondition.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Grid too small / not decayed for the requested transform.
struct CoverageError : std::runtime_error {
    explicit CoverageError(const std::string& msg) : std::runtime_error(msg) {}
};

// Default tolerance tiers: analytic identities, one numerical transform,
// composed transforms (one order of magnitude lost per grid transform).
namespace tol {
inline constexpr double analytic = 1e-10;
inline constexpr double transform = 1e-6;
inline constexpr double composed = 1e-4;
}  // namespace tol

/// N particles in d dimensions with one mass per degree of freedom.
struct ModeLayout {
    int N = 1;
    int d = 1;
    std::vector<double> masses;  // length N*d, all > 0

    ModeLayout() : masses{1.0} {}
    ModeLayout(int N_, int d_, std::vector<double> m) : N(N_), d(d_), masses(std::move(m)) {
        validate();
    }
    static ModeLayout unit(int nd) { return ModeLayout(nd, 1, std::vector<double>(nd, 1.0)); }

    int nd() const { return N * d; }
    double total_mass() const { return std::accumulate(masses.begin(), masses.end(), 0.0); }

    void validate() const {
        if (N < 1 || d < 1) throw std::invalid_argument("ModeLayout: N and d must be positive");
        if (static_cast<int>(masses.size()) != N * d)
            throw std::invalid_argument("ModeLayout: masses must have N*d entries");
        for (double m : masses)
            if (!(m > 0.0)) throw std::invalid_argument("ModeLayout: masses must be positive");
    }
};

/// One (mu, nu) pair: a rotated/scaled phase-space reference frame.
struct Frame {
    std::vector<double> mu, nu;

    Frame() = default;
    Frame(std::vector<double> m, std::vector<double> n) : mu(std::move(m)), nu(std::move(n)) {
        if (mu.size() != nu.size()) throw std::invalid_argument("Frame: mu/nu length mismatch");
    }
    static Frame single(double m, double n) { return Frame({m}, {n}); }

    int nd() const { return static_cast<int>(mu.size()); }
    double norm2() const {
        double s = 0.0;
        for (double v : mu) s += v * v;
        for (double v : nu) s += v * v;
        return s;
    }
    // Degenerate iff mu = 0 and nu = 0 simultaneously.
    bool degenerate() const {
        for (double v : mu)
            if (v != 0.0) return false;
        for (double v : nu)
            if (v != 0.0) return false;
        return true;
    }
};

inline void require_nondegenerate(const Frame& f, const char* who) {
    if (f.degenerate()) throw std::invalid_argument(std::string(who) + ": degenerate frame (mu = nu = 0)");
}

/// Uniform grid, endpoints inclusive.
struct AxisGrid {
    double min = -1.0;
    double max = 1.0;
    int n = 2;

    AxisGrid() = default;
    AxisGrid(double lo, double hi, int count) : min(lo), max(hi), n(count) { validate(); }

    void validate() const {
        if (!(min < max)) throw std::invalid_argument("AxisGrid: min must be < max");
        if (n < 2) throw std::invalid_argument("AxisGrid: need at least 2 points");
    }
    double step() const { return (max - min) / (n - 1); }
    double point(int i) const { return min + step() * i; }
    bool contains(double x) const { return x >= min && x <= max; }
    std::vector<double> points() const {
        std::vector<double> p(n);
        for (int i = 0; i < n; ++i) p[i] = point(i);
        return p;
    }
    double trapz_weight(int i) const { return (i == 0 || i == n - 1) ? 0.5 * step() : step(); }

    /// Same span, midpoints added (2n-1 points).
    AxisGrid refined() const { return AxisGrid(min, max, 2 * n - 1); }
    /// Every second point; requires odd n.
    AxisGrid decimated() const {
        if (n % 2 == 0) throw std::invalid_argument("AxisGrid: decimation needs odd point count");
        return AxisGrid(min, max, (n + 1) / 2);
    }
    bool operator==(const AxisGrid& o) const { return min == o.min && max == o.max && n == o.n; }
};

/// Dense row-major array over a multi-dimensional index space (last index fastest).
template <typename T>
struct NdArray {
    std::vector<int> dims;
    std::vector<std::size_t> strides;
    std::vector<T> v;

    NdArray() = default;
    explicit NdArray(std::vector<int> dims_) : dims(std::move(dims_)) {
        strides.assign(dims.size(), 1);
        std::size_t total = 1;
        for (int i = static_cast<int>(dims.size()) - 1; i >= 0; --i) {
            if (dims[i] <= 0) throw std::invalid_argument("NdArray: nonpositive dimension");
            strides[i] = total;
            total *= static_cast<std::size_t>(dims[i]);
        }
        v.assign(total, T{});
    }

    std::size_t size() const { return v.size(); }
    int rank() const { return static_cast<int>(dims.size()); }

    std::size_t flat(std::span<const int> idx) const {
        std::size_t f = 0;
        for (std::size_t i = 0; i < idx.size(); ++i) f += strides[i] * static_cast<std::size_t>(idx[i]);
        return f;
    }
    T& operator()(std::span<const int> idx) { return v[flat(idx)]; }
    const T& operator()(std::span<const int> idx) const { return v[flat(idx)]; }

    T& at2(int i, int j) { return v[strides[0] * i + strides[1] * j]; }
    const T& at2(int i, int j) const { return v[strides[0] * i + strides[1] * j]; }

    /// Advance a multi-index in row-major order; false once exhausted.
    bool next_index(std::vector<int>& idx) const {
        for (int ax = rank() - 1; ax >= 0; --ax) {
            if (++idx[ax] < dims[ax]) return true;
            idx[ax] = 0;
        }
        return false;
    }
};

}  // namespace comtom

#endif
