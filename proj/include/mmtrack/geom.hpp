#pragma once

// 2-D primitives for the tracking pipeline. Lines are kept in implicit form
// a*x + b*y + c = 0, normalized so a^2 + b^2 = 1 and the first nonzero of
// (a, b) is positive. With that convention eval_line() is a signed
// perpendicular distance and the same geometric line built from swapped
// endpoints produces the bit-identical triple, which lets candidate
// deduplication compare exactly.

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace mmtrack {

// Tolerance for treating two points as coincident.
inline constexpr double kPointTol = 1e-9;
// |signed distance| at or below this counts as "on the line"; keeps tangent
// contacts (e.g. a candidate line at its own generating endpoint) inside the
// intersection predicate despite rounding.
inline constexpr double kOnLineTol = 1e-9;

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

inline Point2 operator+(Point2 p, Point2 q) { return {p.x + q.x, p.y + q.y}; }
inline Point2 operator-(Point2 p, Point2 q) { return {p.x - q.x, p.y - q.y}; }
inline Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }

inline double dot(Point2 p, Point2 q) { return p.x * q.x + p.y * q.y; }
inline double cross(Point2 p, Point2 q) { return p.x * q.y - p.y * q.x; }
inline double norm(Point2 p) { return std::hypot(p.x, p.y); }
inline double dist(Point2 p, Point2 q) { return norm(p - q); }

struct Segment {
    Point2 a;  // for links: the UE endpoint
    Point2 b;  // for links: the BS endpoint
};

struct Line2 {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
};

struct TimedPoint {
    Point2 p;
    double t = 0.0;
};

inline double eval_line(const Line2& l, Point2 p) { return l.a * p.x + l.b * p.y + l.c; }

inline Line2 line_through(Point2 p, Point2 q) {
    const double dx = q.x - p.x;
    const double dy = q.y - p.y;
    if (std::hypot(dx, dy) <= kPointTol)
        throw std::invalid_argument("line_through: points coincide");
    const double n = std::hypot(dx, dy);
    double a = dy / n;
    double b = -dx / n;
    if (a < 0.0 || (a == 0.0 && b < 0.0)) {
        a = -a;
        b = -b;
    }
    // Anchor c at the midpoint. The cross-product form q.x*p.y - p.x*q.y
    // loses ulp(x*y)/|pq| to rounding, which for short segments far from the
    // origin places the line outside kOnLineTol of its own endpoints; the
    // midpoint form keeps the offset at coordinate-scale ulps. The midpoint
    // and the flipped (a, b) are symmetric in p and q, so swapped endpoints
    // still produce a bit-identical triple.
    const double mx = 0.5 * (p.x + q.x);
    const double my = 0.5 * (p.y + q.y);
    const double c = -(a * mx + b * my);
    // +0.0 folds any -0.0 into +0.0 so the triple is canonical bitwise.
    return {a + 0.0, b + 0.0, c + 0.0};
}

// Sign test: the line meets the closed segment iff the endpoint evals do not
// have the same strict sign. Tangency counts. Endpoints within kOnLineTol of
// the line are treated as on it.
inline bool intersects(const Line2& l, const Segment& s) {
    const double fa = eval_line(l, s.a);
    const double fb = eval_line(l, s.b);
    if (std::abs(fa) <= kOnLineTol || std::abs(fb) <= kOnLineTol) return true;
    return fa * fb <= 0.0;
}

inline double point_segment_distance(Point2 p, const Segment& s) {
    const Point2 d = s.b - s.a;
    const double len2 = dot(d, d);
    if (len2 <= kPointTol * kPointTol) return dist(p, s.a);
    double t = dot(p - s.a, d) / len2;
    if (t < 0.0) t = 0.0;
    if (t > 1.0) t = 1.0;
    return dist(p, s.a + t * d);
}

// Axis-aligned square footprint (side 2*hw, centered at c) versus a segment.
// Separating-axis test over x, y and the segment normal; touching counts.
// hw == 0 degrades to point-on-segment within kPointTol.
inline bool square_intersects_segment(Point2 c, double hw, const Segment& s) {
    if (hw < 0.0) throw std::invalid_argument("square_intersects_segment: negative half width");
    if (hw == 0.0) return point_segment_distance(c, s) <= kPointTol;

    const double sxmin = std::min(s.a.x, s.b.x);
    const double sxmax = std::max(s.a.x, s.b.x);
    if (sxmax < c.x - hw || sxmin > c.x + hw) return false;
    const double symin = std::min(s.a.y, s.b.y);
    const double symax = std::max(s.a.y, s.b.y);
    if (symax < c.y - hw || symin > c.y + hw) return false;

    const Point2 d = s.b - s.a;
    if (norm(d) <= kPointTol) return true;  // degenerate segment, bbox overlap decides
    const Point2 n{-d.y, d.x};
    const double distance = dot(n, c - s.a);
    const double radius = hw * (std::abs(n.x) + std::abs(n.y));
    return std::abs(distance) <= radius;
}

// Exact-comparison key for deduplicating canonical lines. Only bit-identical
// triples collapse, so a merged candidate always evaluates identically to the
// one it replaced; near-identical lines stay as redundant candidates, which
// is harmless. (A quantized key could merge distinct lines and silently drop
// a fallback that was the sole cover of its link.)
struct LineKey {
    double qa, qb, qc;
    bool operator==(const LineKey&) const = default;
    bool operator<(const LineKey& o) const {
        if (qa != o.qa) return qa < o.qa;
        if (qb != o.qb) return qb < o.qb;
        return qc < o.qc;
    }
};

inline LineKey line_key(const Line2& l) { return {l.a, l.b, l.c}; }

}  // namespace mmtrack
