#include "fpm/pgm.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <stdexcept>

namespace fpm {
namespace {

int next_token(std::istream& in) {
    // skips whitespace and '#' comment lines, returns a non-negative integer
    for (;;) {
        int ch = in.peek();
        if (ch == EOF) throw std::runtime_error("PGM: unexpected end of header");
        if (std::isspace(ch)) {
            in.get();
            continue;
        }
        if (ch == '#') {
            std::string line;
            std::getline(in, line);
            continue;
        }
        break;
    }
    int value = 0;
    if (!(in >> value) || value < 0) throw std::runtime_error("PGM: malformed header token");
    return value;
}

}  // namespace

RealImage load_grayscale(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("PGM: cannot open " + path.string());

    char m0 = 0, m1 = 0;
    in.get(m0);
    in.get(m1);
    if (m0 != 'P' || m1 != '5')
        throw std::runtime_error("PGM: unsupported format in " + path.string() + " (need binary P5)");

    const int width = next_token(in);
    const int height = next_token(in);
    const int maxval = next_token(in);
    if (width < 1 || height < 1) throw std::runtime_error("PGM: invalid dimensions");
    if (maxval < 1 || maxval > 65535) throw std::runtime_error("PGM: invalid maxval");
    in.get();  // single whitespace byte after maxval

    RealImage img(width, height);
    const size_t count = img.size();
    const int bytes_per = maxval > 255 ? 2 : 1;
    std::vector<unsigned char> raw(count * bytes_per);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (static_cast<size_t>(in.gcount()) != raw.size())
        throw std::runtime_error("PGM: truncated pixel data in " + path.string());

    const double inv = 1.0 / maxval;
    if (bytes_per == 1) {
        for (size_t k = 0; k < count; ++k) img.v[k] = raw[k] * inv;
    } else {
        for (size_t k = 0; k < count; ++k) {
            const unsigned hi = raw[2 * k];
            const unsigned lo = raw[2 * k + 1];
            img.v[k] = static_cast<double>((hi << 8) | lo) * inv;
        }
    }
    return img;
}

void save_pgm(const std::filesystem::path& path, const RealImage& img, int maxval, double lo,
              double hi) {
    if (maxval < 1 || maxval > 65535) throw std::invalid_argument("save_pgm: invalid maxval");
    if (!(hi > lo)) throw std::invalid_argument("save_pgm: need hi > lo");

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("PGM: cannot write " + path.string());
    out << "P5\n" << img.width << " " << img.height << "\n" << maxval << "\n";

    const double scale = maxval / (hi - lo);
    const int bytes_per = maxval > 255 ? 2 : 1;
    std::vector<unsigned char> raw(img.size() * bytes_per);
    for (size_t k = 0; k < img.size(); ++k) {
        double q = std::round((img.v[k] - lo) * scale);
        q = std::min(std::max(q, 0.0), static_cast<double>(maxval));
        const auto g = static_cast<uint16_t>(q);
        if (bytes_per == 1) {
            raw[k] = static_cast<unsigned char>(g);
        } else {
            raw[2 * k] = static_cast<unsigned char>(g >> 8);
            raw[2 * k + 1] = static_cast<unsigned char>(g & 0xff);
        }
    }
    out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (!out) throw std::runtime_error("PGM: write failed for " + path.string());
}

}  // namespace fpm
