#pragma once

#include <cmath>
#include <stdexcept>

namespace dsa {

/// Planar vector used for positions (m), velocities (m/s) and
/// accelerations (m/s^2).
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2() = default;
    constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

    constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
    Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
    constexpr bool operator==(const Vec2&) const = default;

    constexpr double dot(Vec2 o) const { return x * o.x + y * o.y; }
    double norm() const { return std::hypot(x, y); }
    constexpr double norm_sq() const { return x * x + y * y; }

    /// Counter-clockwise perpendicular.
    constexpr Vec2 perp() const { return {-y, x}; }

    bool finite() const { return std::isfinite(x) && std::isfinite(y); }

    Vec2 normalized() const {
        const double n = norm();
        if (n <= 0.0) throw std::domain_error("normalized() on zero vector");
        return {x / n, y / n};
    }
};

constexpr Vec2 operator*(double s, Vec2 v) { return v * s; }

/// Scale v down to the given norm if it exceeds it; direction preserved.
inline Vec2 clip_norm(Vec2 v, double max_norm) {
    const double n = v.norm();
    if (n <= max_norm || n == 0.0) return v;
    return v * (max_norm / n);
}

}  // namespace dsa
