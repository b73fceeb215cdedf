#pragma once

#include <array>
#include <cmath>

namespace af {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator/(double s) const { return {x / s, y / s}; }
    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
};

inline Vec2 operator*(double s, const Vec2& v) { return {s * v.x, s * v.y}; }
inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Vec2& a) { return std::sqrt(dot(a, a)); }

// Outward normal of the directed edge p->q of a counter-clockwise polygon,
// scaled by the edge length.
inline Vec2 outward_scaled_normal(const Vec2& p, const Vec2& q) {
    return {q.y - p.y, -(q.x - p.x)};
}

// Reflection of a vector across the line with unit normal n: v - 2 (v.n) n.
inline Vec2 reflect(const Vec2& v, const Vec2& unit_n) {
    const double vn = dot(v, unit_n);
    return {v.x - 2.0 * vn * unit_n.x, v.y - 2.0 * vn * unit_n.y};
}

struct Rect {
    double x0 = 0.0, y0 = 0.0, x1 = 1.0, y1 = 1.0;
    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
};

inline double triangle_area(const Vec2& a, const Vec2& b, const Vec2& c) {
    return 0.5 * cross(b - a, c - a);
}

} // namespace af
