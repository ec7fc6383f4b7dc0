#include "fpm/objects.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fpm {
namespace {

/// Rescale to [0, hi]; constant images map to `constant_value`.
RealImage rescale(const RealImage& img, double hi, double constant_value) {
    auto [mn_it, mx_it] = std::minmax_element(img.v.begin(), img.v.end());
    const double mn = *mn_it, mx = *mx_it;
    RealImage out(img.width, img.height);
    if (mx == mn) {
        std::fill(out.v.begin(), out.v.end(), constant_value);
        return out;
    }
    const double s = hi / (mx - mn);
    for (size_t k = 0; k < img.size(); ++k) out.v[k] = (img.v[k] - mn) * s;
    return out;
}

uint64_t splitmix64(uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

double unit_double(uint64_t& state) {
    return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

void draw_vertical_group(RealImage& img, const BarGroup& g) {
    const int w = g.period_px / 2;
    for (int bar = 0; bar < 3; ++bar) {
        const int x0 = g.col_begin + 2 * bar * w;
        for (int r = g.row_begin; r < g.row_end; ++r)
            for (int c = x0; c < x0 + w; ++c) img.at(r, c) = 1.0;
    }
}

RealImage bars_pattern(int n, uint64_t seed) {
    RealImage img(n, n);
    uint64_t state = seed;

    // smooth background: tilted ramp plus two low-frequency cosines
    const double ax = 0.3 + 0.4 * unit_double(state);
    const double ay = 0.3 + 0.4 * unit_double(state);
    const double k1 = 1.0 + std::floor(3.0 * unit_double(state));
    const double k2 = 1.0 + std::floor(3.0 * unit_double(state));
    const double p1 = 2.0 * std::numbers::pi * unit_double(state);
    const double p2 = 2.0 * std::numbers::pi * unit_double(state);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            const double t = (ax * c + ay * r) / (n - 1.0);
            double v = 0.35 + 0.25 * t;
            v += 0.05 * std::cos(2.0 * std::numbers::pi * k1 * c / n + p1);
            v += 0.05 * std::cos(2.0 * std::numbers::pi * k2 * r / n + p2);
            img.at(r, c) = v;
        }
    }

    for (const BarGroup& g : standard_bar_groups(n)) draw_vertical_group(img, g);

    // the rotated set puts structure along the other frequency axis
    for (const BarGroup& g : standard_cross_bar_groups(n)) {
        const int w = g.period_px / 2;
        for (int bar = 0; bar < 3; ++bar) {
            const int y0 = g.row_begin + 2 * bar * w;
            for (int r = y0; r < y0 + w; ++r)
                for (int col = g.col_begin; col < g.col_end; ++col) img.at(r, col) = 1.0;
        }
    }
    return img;
}

RealImage transpose(const RealImage& img) {
    RealImage out(img.height, img.width);
    for (int r = 0; r < img.height; ++r)
        for (int c = 0; c < img.width; ++c) out.at(c, r) = img.at(r, c);
    return out;
}

}  // namespace

ComplexObject make_object(const RealImage* amp_image, const RealImage* phase_image,
                          double phase_range_rad, double pitch_um, int uniform_size_px) {
    if (phase_range_rad < 0.0) throw std::invalid_argument("make_object: negative phase range");
    if (amp_image && phase_image &&
        (amp_image->width != phase_image->width || amp_image->height != phase_image->height))
        throw std::invalid_argument("make_object: amplitude/phase dimension mismatch");

    int w = 0, h = 0;
    if (amp_image) {
        w = amp_image->width;
        h = amp_image->height;
    } else if (phase_image) {
        w = phase_image->width;
        h = phase_image->height;
    } else {
        if (uniform_size_px < 1)
            throw std::invalid_argument("make_object: uniform object needs a size");
        w = h = uniform_size_px;
    }

    ComplexObject obj;
    obj.phase_range_rad = phase_range_rad;
    obj.amplitude = amp_image ? rescale(*amp_image, 1.0, 1.0) : RealImage(w, h, 1.0);
    obj.phase = phase_image ? rescale(*phase_image, phase_range_rad, 0.0) : RealImage(w, h, 0.0);
    obj.amplitude_source = amp_image ? "image" : "uniform";
    obj.phase_source = phase_image ? "image" : "uniform";

    obj.field = ComplexField2D(w, h, pitch_um);
    for (size_t k = 0; k < obj.amplitude.size(); ++k)
        obj.field.samples()[k] = std::polar(obj.amplitude.v[k], obj.phase.v[k]);
    return obj;
}

std::string to_string(ObjectKind kind) {
    switch (kind) {
        case ObjectKind::amplitude_only: return "amplitude-only";
        case ObjectKind::phase_only: return "phase-only";
        case ObjectKind::complex_object: return "complex";
    }
    throw std::invalid_argument("unknown object kind");
}

ObjectKind object_kind_from_string(const std::string& s) {
    if (s == "amplitude-only") return ObjectKind::amplitude_only;
    if (s == "phase-only") return ObjectKind::phase_only;
    if (s == "complex") return ObjectKind::complex_object;
    throw std::invalid_argument("object.kind must be one of amplitude-only, phase-only, complex (got \"" + s + "\")");
}

std::vector<BarGroup> standard_bar_groups(int size_px) {
    std::vector<BarGroup> groups;
    const int n = size_px;
    const int gap = std::max(4, n / 32);
    const int row0 = n / 2 - n / 8;
    const int row1 = n / 2 + n / 8;
    int x = n / 16;
    for (int period : {32, 16, 8, 4}) {
        const int extent = 5 * (period / 2);
        if (x + extent > n - n / 16) continue;
        groups.push_back(BarGroup{period, x, x + extent, row0, row1});
        x += extent + gap;
    }
    return groups;
}

std::vector<BarGroup> standard_cross_bar_groups(int size_px) {
    std::vector<BarGroup> groups;
    const int n = size_px;
    const int gap = std::max(4, n / 32);
    const int col0 = n / 2 - n / 8;
    const int col1 = n / 2 + n / 8;
    int y = n / 16;
    for (int period : {16, 8, 4}) {  // finer than the main set; fits above the band
        const int extent = 5 * (period / 2);
        if (y + extent > 3 * n / 8) continue;  // keep clear of the central band
        groups.push_back(BarGroup{period, col0, col1, y, y + extent});
        y += extent + gap;
    }
    return groups;
}

ComplexObject standard_test_object(ObjectKind kind, int size_px, double phase_range_rad,
                                   double pitch_um, uint64_t seed) {
    if (size_px < 32) throw std::invalid_argument("standard_test_object: size must be >= 32");

    const RealImage amp_pattern = bars_pattern(size_px, seed);
    const RealImage phase_pattern = transpose(bars_pattern(size_px, seed ^ 0xa5a5a5a5deadbeefull));

    ComplexObject obj;
    switch (kind) {
        case ObjectKind::amplitude_only:
            obj = make_object(&amp_pattern, nullptr, phase_range_rad, pitch_um);
            break;
        case ObjectKind::phase_only:
            obj = make_object(nullptr, &phase_pattern, phase_range_rad, pitch_um);
            break;
        case ObjectKind::complex_object:
            obj = make_object(&amp_pattern, &phase_pattern, phase_range_rad, pitch_um);
            break;
    }
    obj.amplitude_source = to_string(kind) + "-standard";
    obj.phase_source = obj.amplitude_source;
    return obj;
}

}  // namespace fpm
