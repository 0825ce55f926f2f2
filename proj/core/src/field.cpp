#include "critsamp/field.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <sstream>

#include "critsamp/errors.hpp"
#include "critsamp/io.hpp"

namespace critsamp {

ScalarField::ScalarField(int width, int height, std::vector<double> values,
                         double raw_max)
    : width_(width), height_(height), raw_max_(raw_max),
      values_(std::move(values)) {
    if (width_ < 1 || height_ < 1)
        throw ValidationError("field dimensions must be positive");
    if (values_.size() != static_cast<std::size_t>(width_) * height_)
        throw ValidationError("value count does not match dimensions");
    for (double v : values_)
        if (!(v >= 0.0 && v <= 1.0))
            throw ValidationError("field value outside [0, 1]");
}

ScalarField ScalarField::inverted() const {
    std::vector<double> inv(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) inv[i] = 1.0 - values_[i];
    return ScalarField(width_, height_, std::move(inv), raw_max_);
}

PointCloud GridPointCloud::metric_points() const {
    bool lifted = lift_scale > 0.0;
    std::size_t dim = lifted ? 3 : 2;
    std::vector<double> coords;
    coords.reserve(points.size() * dim);
    for (std::size_t i = 0; i < points.size(); ++i) {
        coords.push_back(static_cast<double>(points[i].u));
        coords.push_back(static_cast<double>(points[i].v));
        if (lifted) coords.push_back(lift_scale * field_values[i]);
    }
    return PointCloud(dim, std::move(coords));
}

GridPointCloud GridPointCloud::subset(const std::vector<int>& indices) const {
    GridPointCloud out;
    out.width = width;
    out.height = height;
    out.lift_scale = lift_scale;
    out.points.reserve(indices.size());
    out.field_values.reserve(indices.size());
    for (int i : indices) {
        out.points.push_back(points[static_cast<std::size_t>(i)]);
        out.field_values.push_back(field_values[static_cast<std::size_t>(i)]);
    }
    return out;
}

namespace {

class PgmScanner {
public:
    explicit PgmScanner(std::string_view bytes) : bytes_(bytes) {}

    // Next whitespace-separated token, skipping '#' comments.
    bool next_token(std::string& out) {
        skip_space_and_comments();
        if (pos_ >= bytes_.size()) return false;
        std::size_t start = pos_;
        while (pos_ < bytes_.size() && !is_space(bytes_[pos_])) ++pos_;
        out.assign(bytes_.substr(start, pos_ - start));
        return true;
    }

    long next_int(const char* what, PgmParseError::Kind kind) {
        std::string tok;
        if (!next_token(tok))
            throw PgmParseError(kind, std::string("missing ") + what);
        std::size_t used = 0;
        long value = 0;
        try {
            value = std::stol(tok, &used);
        } catch (const std::exception&) {
            throw PgmParseError(kind, std::string("invalid ") + what + ": " + tok);
        }
        if (used != tok.size())
            throw PgmParseError(kind, std::string("invalid ") + what + ": " + tok);
        return value;
    }

    // Consume exactly one whitespace byte (the separator before P5 data).
    void consume_single_space() {
        if (pos_ < bytes_.size() && is_space(bytes_[pos_])) ++pos_;
    }

    std::string_view rest() const { return bytes_.substr(pos_); }

private:
    static bool is_space(char c) {
        return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' ||
               c == '\f';
    }

    void skip_space_and_comments() {
        for (;;) {
            while (pos_ < bytes_.size() && is_space(bytes_[pos_])) ++pos_;
            if (pos_ < bytes_.size() && bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
                continue;
            }
            return;
        }
    }

    std::string_view bytes_;
    std::size_t pos_ = 0;
};

}  // namespace

ScalarField load_pgm(std::string_view bytes) {
    using Kind = PgmParseError::Kind;
    PgmScanner scan(bytes);

    std::string magic;
    if (!scan.next_token(magic) || (magic != "P2" && magic != "P5"))
        throw PgmParseError(Kind::MalformedHeader, "not a P2/P5 PGM stream");
    bool binary = magic == "P5";

    long w = scan.next_int("width", Kind::MalformedHeader);
    long h = scan.next_int("height", Kind::MalformedHeader);
    long maxval = scan.next_int("maxval", Kind::MalformedHeader);
    if (w < 1 || h < 1)
        throw PgmParseError(Kind::MalformedHeader, "nonpositive dimensions");
    if (maxval < 1 || maxval > 65535)
        throw PgmParseError(Kind::MalformedHeader, "maxval out of range");

    std::size_t count = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
    std::vector<double> values(count);
    double scale = 1.0 / static_cast<double>(maxval);

    if (binary) {
        scan.consume_single_space();
        std::string_view data = scan.rest();
        std::size_t bytes_per = maxval < 256 ? 1 : 2;
        if (data.size() < count * bytes_per)
            throw PgmParseError(Kind::TruncatedPayload, "binary payload too short");
        for (std::size_t i = 0; i < count; ++i) {
            long pix;
            if (bytes_per == 1) {
                pix = static_cast<unsigned char>(data[i]);
            } else {
                pix = (static_cast<long>(static_cast<unsigned char>(data[2 * i]))
                       << 8) |
                      static_cast<unsigned char>(data[2 * i + 1]);
            }
            if (pix > maxval)
                throw PgmParseError(Kind::PixelOutOfRange,
                                    "pixel exceeds maxval");
            values[i] = static_cast<double>(pix) * scale;
        }
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            long pix = scan.next_int("pixel", Kind::TruncatedPayload);
            if (pix < 0 || pix > maxval)
                throw PgmParseError(Kind::PixelOutOfRange,
                                    "pixel outside [0, maxval]");
            values[i] = static_cast<double>(pix) * scale;
        }
    }
    return ScalarField(static_cast<int>(w), static_cast<int>(h),
                       std::move(values), static_cast<double>(maxval));
}

ScalarField load_pgm_file(const std::string& path) {
    return load_pgm(read_file(path));
}

std::string write_pgm(const ScalarField& field) {
    long maxval = std::lround(field.raw_max());
    maxval = std::clamp(maxval, 1L, 65535L);
    std::ostringstream out;
    out << "P2\n" << field.width() << ' ' << field.height() << '\n'
        << maxval << '\n';
    for (int v = 0; v < field.height(); ++v) {
        for (int u = 0; u < field.width(); ++u) {
            long pix = std::lround(field.at(u, v) * static_cast<double>(maxval));
            pix = std::clamp(pix, 0L, maxval);
            out << pix << (u + 1 == field.width() ? '\n' : ' ');
        }
    }
    return std::move(out).str();
}

namespace {

// Index of the source pixel whose center is closest to continuous
// position `pos` (centers at k + 0.5), ties to the smaller index.
int nearest_source_index(double pos, int size) {
    double c = pos - 0.5;
    int k0 = static_cast<int>(std::floor(c));
    int k1 = k0 + 1;
    int k = (std::abs(c - k0) <= std::abs(k1 - c)) ? k0 : k1;
    return std::clamp(k, 0, size - 1);
}

}  // namespace

ScalarField resize(const ScalarField& field, int w, int h, ResizeMode mode) {
    if (w < 1 || h < 1)
        throw ValidationError("resize target dimensions must be positive");

    int sw = field.width(), sh = field.height();
    double su = static_cast<double>(sw) / w;
    double sv = static_cast<double>(sh) / h;
    std::vector<double> out(static_cast<std::size_t>(w) * h);

    for (int j = 0; j < h; ++j) {
        double vpos = (j + 0.5) * sv;
        for (int i = 0; i < w; ++i) {
            double upos = (i + 0.5) * su;
            double value;
            if (mode == ResizeMode::Nearest) {
                int uu = nearest_source_index(upos, sw);
                int vv = nearest_source_index(vpos, sh);
                value = field.at(uu, vv);
            } else {
                double x = std::clamp(upos - 0.5, 0.0, sw - 1.0);
                double y = std::clamp(vpos - 0.5, 0.0, sh - 1.0);
                int x0 = static_cast<int>(std::floor(x));
                int y0 = static_cast<int>(std::floor(y));
                int x1 = std::min(x0 + 1, sw - 1);
                int y1 = std::min(y0 + 1, sh - 1);
                double fx = x - x0, fy = y - y0;
                value = (1 - fx) * (1 - fy) * field.at(x0, y0) +
                        fx * (1 - fy) * field.at(x1, y0) +
                        (1 - fx) * fy * field.at(x0, y1) +
                        fx * fy * field.at(x1, y1);
            }
            out[static_cast<std::size_t>(j) * w + i] =
                std::clamp(value, 0.0, 1.0);
        }
    }
    return ScalarField(w, h, std::move(out), field.raw_max());
}

GridPointCloud to_point_cloud(const ScalarField& field,
                              double exclusion_threshold, double lift_scale) {
    if (!(exclusion_threshold > 0.0 && exclusion_threshold <= 1.0))
        throw ValidationError("exclusion threshold must be in (0, 1]");
    if (lift_scale < 0.0)
        throw ValidationError("lift scale must be nonnegative");

    GridPointCloud cloud;
    cloud.width = field.width();
    cloud.height = field.height();
    cloud.lift_scale = lift_scale;
    for (int v = 0; v < field.height(); ++v)
        for (int u = 0; u < field.width(); ++u)
            if (field.at(u, v) < exclusion_threshold) {
                cloud.points.push_back({u, v});
                cloud.field_values.push_back(field.at(u, v));
            }
    if (cloud.points.empty())
        throw ValidationError("every pixel at or above the exclusion threshold");
    return cloud;
}

ScalarField field_from_function(
    int w, int h, const std::function<double(int, int)>& generator) {
    if (w < 1 || h < 1)
        throw ValidationError("field dimensions must be positive");
    std::vector<double> values(static_cast<std::size_t>(w) * h);
    for (int v = 0; v < h; ++v)
        for (int u = 0; u < w; ++u) {
            double g = generator(u, v);
            if (!std::isfinite(g))
                throw ValidationError("generator produced a non-finite value");
            values[static_cast<std::size_t>(v) * w + u] =
                std::clamp(g, 0.0, 1.0);
        }
    return ScalarField(w, h, std::move(values), 255.0);
}

}  // namespace critsamp
