#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

namespace fpm {

using cplx = std::complex<double>;

/// Square sampling grid in the spatial domain. The matching frequency grid
/// has the same pixel count and a step of 1/(pixels * pitch) cycles/um, with
/// zero frequency at index pixels/2 (centered convention).
struct GridSpec {
    int pixels = 0;
    double pitch_um = 0.0;

    double extent_um() const { return pixels * pitch_um; }
    double freq_step_cpum() const { return 1.0 / extent_um(); }
    double max_freq_cpum() const { return (pixels / 2) * freq_step_cpum(); }
    int center() const { return pixels / 2; }

    bool operator==(const GridSpec&) const = default;
};

/// Frequency-sampling descriptor: pixel count per side and frequency step
/// per pixel. Zero frequency sits at index pixels/2.
struct FreqGrid {
    int pixels = 0;
    double step_cpum = 0.0;

    double max_freq_cpum() const { return (pixels / 2) * step_cpum; }
    int center() const { return pixels / 2; }

    bool operator==(const FreqGrid&) const = default;
};

inline FreqGrid freq_grid_of(const GridSpec& g) {
    return FreqGrid{g.pixels, g.freq_step_cpum()};
}

/// Real-valued 2-D image, row-major.
struct RealImage {
    int width = 0;
    int height = 0;
    std::vector<double> v;

    RealImage() = default;
    RealImage(int w, int h, double fill = 0.0)
        : width(w), height(h), v(static_cast<size_t>(w) * h, fill) {
        if (w < 1 || h < 1) throw std::invalid_argument("RealImage: dimensions must be >= 1");
    }

    double& at(int row, int col) { return v[static_cast<size_t>(row) * width + col]; }
    double at(int row, int col) const { return v[static_cast<size_t>(row) * width + col]; }
    size_t size() const { return v.size(); }
};

/// Sampled 2-D complex field (object, spectrum or kernel) with a physical
/// pixel pitch. Samples are row-major; row 0 is the top of the image.
class ComplexField2D {
public:
    ComplexField2D() = default;

    ComplexField2D(int width, int height, double pitch_um)
        : width_(width), height_(height), pitch_um_(pitch_um),
          samples_(check_size(width, height, pitch_um), cplx{0.0, 0.0}) {}

    ComplexField2D(int width, int height, double pitch_um, std::vector<cplx> samples)
        : width_(width), height_(height), pitch_um_(pitch_um), samples_(std::move(samples)) {
        if (samples_.size() != check_size(width, height, pitch_um))
            throw std::invalid_argument("ComplexField2D: sample count must equal width*height");
    }

    static ComplexField2D constant(int width, int height, double pitch_um, cplx value) {
        ComplexField2D f(width, height, pitch_um);
        for (auto& s : f.samples_) s = value;
        return f;
    }

    int width() const { return width_; }
    int height() const { return height_; }
    double pitch_um() const { return pitch_um_; }
    GridSpec grid() const { return GridSpec{width_, pitch_um_}; }

    cplx& at(int row, int col) { return samples_[static_cast<size_t>(row) * width_ + col]; }
    cplx at(int row, int col) const { return samples_[static_cast<size_t>(row) * width_ + col]; }

    std::vector<cplx>& samples() { return samples_; }
    const std::vector<cplx>& samples() const { return samples_; }

    /// Sum of squared moduli over all samples.
    double energy() const {
        double e = 0.0;
        for (const auto& s : samples_) e += std::norm(s);
        return e;
    }

    RealImage modulus() const {
        RealImage img(width_, height_);
        for (size_t k = 0; k < samples_.size(); ++k) img.v[k] = std::abs(samples_[k]);
        return img;
    }

    RealImage intensity() const {
        RealImage img(width_, height_);
        for (size_t k = 0; k < samples_.size(); ++k) img.v[k] = std::norm(samples_[k]);
        return img;
    }

private:
    static size_t check_size(int width, int height, double pitch_um) {
        if (width < 1 || height < 1)
            throw std::invalid_argument("ComplexField2D: dimensions must be >= 1");
        if (!(pitch_um > 0.0))
            throw std::invalid_argument("ComplexField2D: pitch must be > 0");
        return static_cast<size_t>(width) * height;
    }

    int width_ = 0;
    int height_ = 0;
    double pitch_um_ = 1.0;
    std::vector<cplx> samples_;
};

}  // namespace fpm
