#include "comtom/numeric.hpp"

#include <cmath>
#include <thread>

namespace comtom {

namespace {
int g_threads = 1;
const double kPi = std::acos(-1.0);
}  // namespace

void set_thread_count(int n) { g_threads = n < 1 ? 1 : n; }
int thread_count() { return g_threads; }

void parallel_for(int n, const std::function<void(int)>& fn) {
    const int nt = std::min(g_threads, n);
    if (nt <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (int t = 0; t < nt; ++t) {
        pool.emplace_back([&, t] {
            for (int i = t; i < n; i += nt) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

NdArray<Complex> axis_fourier(const NdArray<Complex>& in, int axis, const AxisGrid& xaxis,
                              const std::vector<double>& out_points, double sign) {
    if (in.dims[axis] != xaxis.n) throw std::invalid_argument("axis_fourier: axis length mismatch");
    const int ni = xaxis.n;
    const int no = static_cast<int>(out_points.size());

    std::vector<Complex> table(static_cast<std::size_t>(ni) * no);
    for (int i = 0; i < ni; ++i) {
        const double x = xaxis.point(i), w = xaxis.trapz_weight(i);
        for (int o = 0; o < no; ++o)
            table[static_cast<std::size_t>(i) * no + o] = std::polar(w, sign * x * out_points[o]);
    }

    std::vector<int> odims = in.dims;
    odims[axis] = no;
    NdArray<Complex> out(odims);

    // Enumerate all positions with the transform axis pinned at 0.
    std::vector<int> pdims = in.dims;
    pdims[axis] = 1;
    NdArray<char> probe(pdims);
    std::vector<std::size_t> outer_in, outer_out;
    outer_in.reserve(probe.size());
    outer_out.reserve(probe.size());
    std::vector<int> idx(in.rank(), 0);
    do {
        outer_in.push_back(in.flat(idx));
        outer_out.push_back(out.flat(idx));
    } while (probe.next_index(idx));

    const std::size_t si = in.strides[axis], so = out.strides[axis];
    parallel_for(static_cast<int>(outer_in.size()), [&](int slice) {
        const Complex* src = in.v.data() + outer_in[slice];
        Complex* dst = out.v.data() + outer_out[slice];
        for (int o = 0; o < no; ++o) {
            Complex acc = 0.0;
            const Complex* tb = table.data() + o;
            for (int i = 0; i < ni; ++i) acc += src[si * i] * tb[static_cast<std::size_t>(i) * no];
            dst[so * o] = acc;
        }
    });
    return out;
}

double projection_k_cut(std::span<const double> coeff, std::span<const double> spacing, double hx) {
    double cut = 0.5 * kPi / hx;
    for (std::size_t a = 0; a < coeff.size(); ++a) {
        const double c = std::abs(coeff[a]);
        if (c < 1e-14) continue;
        cut = std::min(cut, kPi / (spacing[a] * c));  // half of 2 pi / (h c)
    }
    return cut;
}

ProjectionBinner::ProjectionBinner(const AxisGrid& xgrid, double k_cut)
    : xgrid_(xgrid), k_cut_(k_cut), sigma_(2.0 * xgrid.step()), hist_(xgrid.n, 0.0) {
    radius_ = static_cast<int>(std::ceil(6.0 * sigma_ / xgrid_.step()));
    taper_.resize(radius_ + 1);
    const double h = xgrid_.step();
    for (int m = 0; m <= radius_; ++m) taper_[m] = std::exp(-0.5 * (m * h) * (m * h) / (sigma_ * sigma_));
}

void ProjectionBinner::add(double projection, double mass) {
    total_abs_ += std::abs(mass);
    const double h = xgrid_.step();
    const double pos = (projection - xgrid_.min) / h;
    if (pos < 0.0 || pos > xgrid_.n - 1) {
        lost_ += std::abs(mass);
        return;
    }
    const int i0 = static_cast<int>(std::lround(pos));
    const double d = (pos - i0) * h;  // signed offset of the mass from bin i0
    // Kernel value at bin i0 + m: G(d - m h) expanded as
    // exp(-d^2/2s^2) * r^m * taper[|m|] with r = exp(d h / s^2).
    const double norm = mass * std::exp(-0.5 * d * d / (sigma_ * sigma_)) / (sigma_ * std::sqrt(2.0 * kPi));
    const double r = std::exp(d * h / (sigma_ * sigma_));
    double up = 1.0, down = 1.0;
    for (int m = 0; m <= radius_; ++m) {
        if (m > 0) {
            up *= r;     // bins to the right need G(d - m h): factor r^m
            down /= r;   // bins to the left
        }
        const int ir = i0 + m, il = i0 - m;
        if (ir < xgrid_.n) hist_[ir] += norm * up * taper_[m];
        if (m > 0 && il >= 0) hist_[il] += norm * down * taper_[m];
    }
}

std::vector<double> ProjectionBinner::finish(const std::string& what) {
    if (total_abs_ > 0.0 && lost_ > 1e-9 * total_abs_)
        throw CoverageError(what + ": projected support exceeds the X grid (lost mass fraction " +
                            std::to_string(lost_ / total_abs_) + ")");
    const double h = xgrid_.step();

    // Triangular smoothing pass of one bin width.
    std::vector<double> s(xgrid_.n);
    for (int i = 0; i < xgrid_.n; ++i) {
        const double l = i > 0 ? hist_[i - 1] : 0.0;
        const double u = i < xgrid_.n - 1 ? hist_[i + 1] : 0.0;
        s[i] = 0.25 * l + 0.5 * hist_[i] + 0.25 * u;
    }

    // Deposit and smoothing transfer functions divided out below k_cut.
    const double sig = sigma_;
    return spectral_filter(s, h, [&, sig](double k) -> Complex {
        if (std::abs(k) > k_cut_) return 0.0;
        const double gauss = std::exp(-0.5 * sig * sig * k * k);
        const double smooth = std::cos(0.5 * k * h) * std::cos(0.5 * k * h);
        return 1.0 / (gauss * smooth);
    });
}

namespace {

// In-place iterative radix-2 FFT; sign = -1 forward, +1 inverse (unscaled).
void fft_pow2(std::vector<Complex>& a, int sign) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * kPi / static_cast<double>(len);
        const Complex wl = std::polar(1.0, ang);
        for (std::size_t i = 0; i < n; i += len) {
            Complex w = 1.0;
            for (std::size_t j = 0; j < len / 2; ++j) {
                const Complex u = a[i + j], v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

}  // namespace

std::vector<double> spectral_filter(const std::vector<double>& f, double h,
                                    const std::function<Complex(double)>& filter) {
    const int n = static_cast<int>(f.size());
    // Zero-pad to a power of two; the samples decay inside the window, so the
    // longer period only adds silence.
    std::size_t np = 1;
    while (np < static_cast<std::size_t>(2 * n)) np <<= 1;
    std::vector<Complex> a(np, 0.0);
    for (int j = 0; j < n; ++j) a[j] = f[j];

    fft_pow2(a, -1);
    const double dk = 2.0 * kPi / (static_cast<double>(np) * h);
    for (std::size_t m = 0; m < np; ++m) {
        const double k = (m <= np / 2) ? m * dk : (static_cast<double>(m) - static_cast<double>(np)) * dk;
        a[m] *= filter(k);
    }
    fft_pow2(a, +1);

    std::vector<double> out(n);
    for (int j = 0; j < n; ++j) out[j] = a[j].real() / static_cast<double>(np);
    return out;
}

}  // namespace comtom
