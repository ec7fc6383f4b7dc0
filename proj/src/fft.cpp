#include "fpm/fft.hpp"

#include <cmath>
#include <numbers>

namespace fpm {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_power_of_two(size_t n) { return n != 0 && (n & (n - 1)) == 0; }

/// Iterative radix-2 Cooley-Tukey, length must be a power of two.
void fft_radix2(std::vector<cplx>& a, int direction) {
    const size_t n = a.size();
    if (n < 2) return;

    // bit-reversal permutation
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    for (size_t len = 2; len <= n; len <<= 1) {
        const double ang = direction * kTwoPi / static_cast<double>(len);
        const cplx wlen(std::cos(ang), std::sin(ang));
        for (size_t i = 0; i < n; i += len) {
            cplx w(1.0, 0.0);
            for (size_t k = 0; k < len / 2; ++k) {
                cplx u = a[i + k];
                cplx v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

/// Bluestein chirp-z transform for arbitrary lengths, built on the radix-2
/// core at a padded power-of-two size >= 2n-1.
void fft_bluestein(std::vector<cplx>& a, int direction) {
    const size_t n = a.size();
    size_t m = 1;
    while (m < 2 * n - 1) m <<= 1;

    // chirp w[k] = exp(direction * i * pi * k^2 / n); k^2 taken mod 2n to
    // keep the argument small.
    std::vector<cplx> w(n);
    for (size_t k = 0; k < n; ++k) {
        const size_t k2 = (k * k) % (2 * n);
        const double ang = direction * std::numbers::pi * static_cast<double>(k2) / static_cast<double>(n);
        w[k] = cplx(std::cos(ang), std::sin(ang));
    }

    std::vector<cplx> x(m, cplx{0.0, 0.0});
    std::vector<cplx> y(m, cplx{0.0, 0.0});
    for (size_t k = 0; k < n; ++k) x[k] = a[k] * w[k];
    y[0] = std::conj(w[0]);
    for (size_t k = 1; k < n; ++k) {
        y[k] = std::conj(w[k]);
        y[m - k] = std::conj(w[k]);
    }

    fft_radix2(x, -1);
    fft_radix2(y, -1);
    for (size_t k = 0; k < m; ++k) x[k] *= y[k];
    fft_radix2(x, +1);

    const double inv_m = 1.0 / static_cast<double>(m);
    for (size_t k = 0; k < n; ++k) a[k] = x[k] * inv_m * w[k];
}

/// Circular shift so that index `center` moves to index 0.
void shift_to_front(std::vector<cplx>& v, size_t center) {
    if (center == 0) return;
    std::rotate(v.begin(), v.begin() + static_cast<ptrdiff_t>(center), v.end());
}

/// Circular shift so that index 0 moves to index `center`.
void shift_to_center(std::vector<cplx>& v, size_t center) {
    if (center == 0) return;
    std::rotate(v.begin(), v.begin() + static_cast<ptrdiff_t>(v.size() - center), v.end());
}

/// Centered unitary transform along every row, then every column.
ComplexField2D transform2d(const ComplexField2D& field, int direction) {
    const int w = field.width();
    const int h = field.height();
    ComplexField2D out = field;

    std::vector<cplx> line;
    line.reserve(static_cast<size_t>(std::max(w, h)));

    const double row_scale = 1.0 / std::sqrt(static_cast<double>(w));
    for (int r = 0; r < h; ++r) {
        line.assign(out.samples().begin() + static_cast<size_t>(r) * w,
                    out.samples().begin() + static_cast<size_t>(r + 1) * w);
        shift_to_front(line, static_cast<size_t>(w / 2));
        detail::fft1d(line, direction);
        shift_to_center(line, static_cast<size_t>(w / 2));
        for (int c = 0; c < w; ++c) out.at(r, c) = line[static_cast<size_t>(c)] * row_scale;
    }

    const double col_scale = 1.0 / std::sqrt(static_cast<double>(h));
    line.resize(static_cast<size_t>(h));
    for (int c = 0; c < w; ++c) {
        for (int r = 0; r < h; ++r) line[static_cast<size_t>(r)] = out.at(r, c);
        shift_to_front(line, static_cast<size_t>(h / 2));
        detail::fft1d(line, direction);
        shift_to_center(line, static_cast<size_t>(h / 2));
        for (int r = 0; r < h; ++r) out.at(r, c) = line[static_cast<size_t>(r)] * col_scale;
    }
    return out;
}

}  // namespace

namespace detail {

void fft1d(std::vector<cplx>& data, int direction) {
    if (data.size() < 2) return;
    if (is_power_of_two(data.size()))
        fft_radix2(data, direction);
    else
        fft_bluestein(data, direction);
}

}  // namespace detail

ComplexField2D dft2(const ComplexField2D& field) { return transform2d(field, -1); }

ComplexField2D idft2(const ComplexField2D& field) { return transform2d(field, +1); }

}  // namespace fpm
