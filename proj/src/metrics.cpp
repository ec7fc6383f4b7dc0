#include "fpm/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fpm {

double rmse_gray(const RealImage& a, const RealImage& b) {
    if (a.width != b.width || a.height != b.height)
        throw std::invalid_argument("rmse_gray: dimension mismatch");

    auto [amn, amx] = std::minmax_element(a.v.begin(), a.v.end());
    auto [bmn, bmx] = std::minmax_element(b.v.begin(), b.v.end());
    const double lo = std::min(*amn, *bmn);
    const double hi = std::max(*amx, *bmx);
    if (hi == lo) return 0.0;  // identical constant pair

    const double s = 255.0 / (hi - lo);
    double acc = 0.0;
    for (size_t k = 0; k < a.size(); ++k) {
        const double d = (a.v[k] - b.v[k]) * s;
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(a.size()));
}

LineProfile line_profile(const RealImage& img, ProfileAxis axis, int index) {
    const int extent = axis == ProfileAxis::row ? img.width : img.height;
    const int bound = axis == ProfileAxis::row ? img.height : img.width;
    if (index < 0 || index >= bound) throw std::out_of_range("line_profile: index out of range");

    auto [mn_it, mx_it] = std::minmax_element(img.v.begin(), img.v.end());
    const double mn = *mn_it, mx = *mx_it;
    const double s = mx > mn ? 255.0 / (mx - mn) : 0.0;

    LineProfile p;
    p.axis = axis;
    p.index = index;
    p.values.resize(static_cast<size_t>(extent));
    p.positions.resize(static_cast<size_t>(extent));
    for (int k = 0; k < extent; ++k) {
        const double v = axis == ProfileAxis::row ? img.at(index, k) : img.at(k, index);
        p.values[static_cast<size_t>(k)] = (v - mn) * s;
        p.positions[static_cast<size_t>(k)] = k;
    }
    return p;
}

double normalized_cross_correlation(const RealImage& a, const RealImage& b) {
    if (a.width != b.width || a.height != b.height)
        throw std::invalid_argument("normalized_cross_correlation: dimension mismatch");

    const double n = static_cast<double>(a.size());
    double ma = 0.0, mb = 0.0;
    for (size_t k = 0; k < a.size(); ++k) {
        ma += a.v[k];
        mb += b.v[k];
    }
    ma /= n;
    mb /= n;

    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (size_t k = 0; k < a.size(); ++k) {
        const double da = a.v[k] - ma;
        const double db = b.v[k] - mb;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    if (saa == 0.0 && sbb == 0.0)
        throw std::invalid_argument("normalized_cross_correlation: both images constant");
    if (saa == 0.0 || sbb == 0.0) return 0.0;
    return sab / std::sqrt(saa * sbb);
}

double michelson_contrast(const LineProfile& profile, int begin, int end) {
    if (begin < 0 || end > static_cast<int>(profile.values.size()) || begin >= end)
        throw std::out_of_range("michelson_contrast: window out of range");

    const auto first = profile.values.begin() + begin;
    const auto last = profile.values.begin() + end;
    auto [mn_it, mx_it] = std::minmax_element(first, last);
    const double mn = *mn_it, mx = *mx_it;
    if (mx == mn) return 0.0;
    if (mx + mn == 0.0) throw std::domain_error("michelson_contrast: max + min is zero");
    return (mx - mn) / (mx + mn);
}

}  // namespace fpm
