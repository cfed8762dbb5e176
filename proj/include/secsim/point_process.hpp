#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "secsim/random.hpp"

namespace secsim {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

inline double distance(Point2 a, Point2 b) noexcept {
    return std::hypot(a.x - b.x, a.y - b.y);
}

/// Axis-aligned observation window centered at the origin.
struct Window {
    double width_m = 0.0;
    double height_m = 0.0;

    double area() const noexcept { return width_m * height_m; }
};

struct PointField {
    Window window;
    std::vector<Point2> points;
};

/// Homogeneous planar Poisson point process on the window: Poisson count with
/// mean density * area, positions i.i.d. uniform. The window is bounded, so
/// edge effects exist; callers pick windows large enough for their tolerance.
inline PointField sample_ppp(double density_per_m2, const Window& window,
                             RandomStream& stream) {
    if (!(density_per_m2 >= 0.0)) {
        throw std::domain_error("point process density must be non-negative");
    }
    if (!(window.area() > 0.0)) {
        throw std::domain_error("point process window must have positive area");
    }
    PointField field{window, {}};
    const std::uint64_t count = stream.poisson(density_per_m2 * window.area());
    field.points.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        field.points.push_back(Point2{(stream.uniform() - 0.5) * window.width_m,
                                      (stream.uniform() - 0.5) * window.height_m});
    }
    return field;
}

/// Euclidean distance to the nearest point, or nullopt for an empty field.
inline std::optional<double> nearest_distance(const PointField& field,
                                              Point2 origin = {0.0, 0.0}) {
    if (field.points.empty()) {
        return std::nullopt;
    }
    double best = distance(field.points.front(), origin);
    for (std::size_t i = 1; i < field.points.size(); ++i) {
        best = std::min(best, distance(field.points[i], origin));
    }
    return best;
}

} // namespace secsim
