#pragma once

#include <array>
#include <string>
#include <vector>

#include "pointerlab/common.hpp"

namespace pointerlab {

// Planar-free RGB image, row-major, values in [0,1].
struct Image {
    int height = 0;
    int width = 0;
    std::vector<double> pixels;  // size h*w*3, interleaved rgb

    Image() = default;
    Image(int h, int w, std::array<double, 3> fill = {0, 0, 0});

    double& at(int y, int x, int c) { return pixels[(static_cast<size_t>(y) * width + x) * 3 + c]; }
    double at(int y, int x, int c) const {
        return pixels[(static_cast<size_t>(y) * width + x) * 3 + c];
    }
    void set(int y, int x, const std::array<double, 3>& rgb) {
        for (int c = 0; c < 3; ++c) at(y, x, c) = rgb[c];
    }
};

// Grayscale image in [0,1].
struct GrayImage {
    int height = 0;
    int width = 0;
    std::vector<double> pixels;

    GrayImage() = default;
    GrayImage(int h, int w, double fill = 0.0)
        : height(h), width(w), pixels(static_cast<size_t>(h) * w, fill) {}
    double& at(int y, int x) { return pixels[static_cast<size_t>(y) * width + x]; }
    double at(int y, int x) const { return pixels[static_cast<size_t>(y) * width + x]; }
};

// Binary PPM (P6) / PGM (P5), 8-bit. Values are clamped to [0,1] and scaled to
// 0..255 on write. Writes are atomic (temp file + rename).
void write_ppm(const std::string& path, const Image& img);
Image read_ppm(const std::string& path);
void write_pgm(const std::string& path, const GrayImage& img);
GrayImage read_pgm(const std::string& path);

// Atomic text-file write used for tables/configs/artifacts.
void write_file_atomic(const std::string& path, const std::string& contents);

// ----- drawing -----
void fill_rect(Image& img, int y0, int x0, int h, int w, const std::array<double, 3>& rgb);
void fill_circle(Image& img, double cy, double cx, double radius, const std::array<double, 3>& rgb);
void fill_triangle(Image& img, const std::array<std::array<double, 2>, 3>& pts,
                   const std::array<double, 3>& rgb);
void draw_line(Image& img, double y0, double x0, double y1, double x1,
               const std::array<double, 3>& rgb);
// tiny 3x5 glyphs for digits, '.', '-', 'e'; enough for axis annotations
void draw_tiny_text(Image& img, int y, int x, const std::string& text,
                    const std::array<double, 3>& rgb);

// Renders overlaid line charts into an image (axes, gridlines, tiny labels).
struct ChartSeries {
    std::string label;
    std::vector<double> xs;
    std::vector<double> ys;
    std::array<double, 3> color{0, 0, 0};
};
Image render_chart(const std::vector<ChartSeries>& series, int height = 360, int width = 520);

}  // namespace pointerlab
