#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace lrfim {

using Site = long long;
using SiteSet = std::vector<Site>;  // kept sorted, unique

// Half-open integer range [lo, hi).
struct IntRange {
    Site lo = 0;
    Site hi = 0;

    Site size() const { return hi > lo ? hi - lo : 0; }
    bool empty() const { return hi <= lo; }
    bool contains(Site x) const { return x >= lo && x < hi; }
    bool contains(const IntRange& r) const { return r.empty() || (r.lo >= lo && r.hi <= hi); }
    bool intersects(const IntRange& r) const { return std::max(lo, r.lo) < std::min(hi, r.hi); }
    IntRange clipped(const IntRange& r) const { return {std::max(lo, r.lo), std::min(hi, r.hi)}; }
    bool operator==(const IntRange&) const = default;
};

struct Vec2 {
    int x = 0;
    int y = 0;
    bool operator==(const Vec2&) const = default;
    auto operator<=>(const Vec2&) const = default;
};

using SiteSet2 = std::vector<Vec2>;  // kept sorted, unique

// Half-open box [x0,x1) x [y0,y1).
struct Box2 {
    int x0 = 0, y0 = 0, x1 = 0, y1 = 0;

    long long width() const { return x1 > x0 ? x1 - x0 : 0; }
    long long height() const { return y1 > y0 ? y1 - y0 : 0; }
    long long area() const { return width() * height(); }
    bool empty() const { return x1 <= x0 || y1 <= y0; }
    bool contains(Vec2 p) const { return p.x >= x0 && p.x < x1 && p.y >= y0 && p.y < y1; }
    Box2 expanded(int pad) const { return {x0 - pad, y0 - pad, x1 + pad, y1 + pad}; }
    bool operator==(const Box2&) const = default;
};

inline long long sq_dist(Vec2 a, Vec2 b) {
    long long dx = a.x - b.x, dy = a.y - b.y;
    return dx * dx + dy * dy;
}

inline Box2 bounding_box(const SiteSet2& s) {
    if (s.empty()) return {};
    int x0 = s[0].x, x1 = s[0].x, y0 = s[0].y, y1 = s[0].y;
    for (const Vec2& p : s) {
        x0 = std::min(x0, p.x);
        x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y);
        y1 = std::max(y1, p.y);
    }
    return {x0, y0, x1 + 1, y1 + 1};
}

inline void sort_unique(SiteSet& s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
}

inline void sort_unique(SiteSet2& s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
}

inline bool set_contains(const SiteSet& s, Site x) {
    return std::binary_search(s.begin(), s.end(), x);
}

inline bool set_contains(const SiteSet2& s, Vec2 p) {
    return std::binary_search(s.begin(), s.end(), p);
}

// floor/ceil division for possibly negative numerators
inline Site floor_div(Site a, Site b) {
    Site q = a / b, r = a % b;
    return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

inline Site ceil_div(Site a, Site b) { return -floor_div(-a, b); }

}  // namespace lrfim
