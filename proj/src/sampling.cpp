#include "covkit/sampling.hpp"

#include <cmath>
#include <stdexcept>

namespace covkit {

namespace {

constexpr unsigned kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

}  // namespace

double radical_inverse(std::uint64_t k, unsigned base) {
    double inv_base = 1.0 / static_cast<double>(base);
    double scale = inv_base;
    double result = 0.0;
    while (k > 0) {
        result += static_cast<double>(k % base) * scale;
        k /= base;
        scale *= inv_base;
    }
    return result;
}

std::vector<Point> halton_ball(int dim, int count, std::uint64_t offset) {
    if (dim < 1 || dim > static_cast<int>(std::size(kPrimes))) {
        throw std::invalid_argument("halton_ball: unsupported dimension");
    }
    if (count < 0) throw std::invalid_argument("halton_ball: count must be >= 0");
    std::vector<Point> out;
    out.reserve(static_cast<std::size_t>(count));
    std::uint64_t k = offset + 1;  // skip the all-zeros element
    while (static_cast<int>(out.size()) < count) {
        std::vector<double> coords(static_cast<std::size_t>(dim));
        double norm2 = 0.0;
        for (int d = 0; d < dim; ++d) {
            double u = radical_inverse(k, kPrimes[d]);
            double x = 2.0 * u - 1.0;
            coords[static_cast<std::size_t>(d)] = x;
            norm2 += x * x;
        }
        ++k;
        if (norm2 <= 1.0) out.emplace_back(std::move(coords));
    }
    return out;
}

std::vector<Point> circle_grid(int count) {
    if (count < 1) throw std::invalid_argument("circle_grid: count must be >= 1");
    std::vector<Point> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        double phi = 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(count);
        out.push_back(Point{std::cos(phi), std::sin(phi)});
    }
    return out;
}

std::vector<Point> sphere_fibonacci_grid(int count) {
    if (count < 1) throw std::invalid_argument("sphere_fibonacci_grid: count must be >= 1");
    const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Point> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(count);
        double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        double phi = 2.0 * M_PI * static_cast<double>(i) / golden;
        out.push_back(Point{r * std::cos(phi), r * std::sin(phi), z});
    }
    return out;
}

Point random_unit(std::mt19937_64& rng, int dim) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (;;) {
        std::vector<double> coords(static_cast<std::size_t>(dim));
        double norm2 = 0.0;
        for (double& c : coords) {
            c = gauss(rng);
            norm2 += c * c;
        }
        if (norm2 > 1e-24) {
            double inv = 1.0 / std::sqrt(norm2);
            for (double& c : coords) c *= inv;
            return Point(std::move(coords));
        }
    }
}

Point random_in_ball(std::mt19937_64& rng, const Ball& ball) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const int dim = ball.center.dim();
    Point dir = random_unit(rng, dim);
    double r = ball.radius * std::pow(unif(rng), 1.0 / static_cast<double>(dim));
    return ball.center + r * dir;
}

}  // namespace covkit
