#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace lpp {

struct Site {
    std::int64_t x = 0;
    std::int64_t y = 0;

    constexpr std::int64_t level() const { return x + y; }
    friend constexpr Site operator+(Site a, Site b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Site operator-(Site a, Site b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr bool operator==(Site, Site) = default;
    friend constexpr auto operator<=>(Site, Site) = default;
};

inline constexpr Site e1{1, 0};
inline constexpr Site e2{0, 1};
inline constexpr Site e_hat{1, 1};

// Unit step e_i for i in {1, 2}.
constexpr Site unit(int i) { return i == 1 ? e1 : e2; }

// Coordinatewise a <= b.
constexpr bool dominated(Site a, Site b) { return a.x <= b.x && a.y <= b.y; }

std::string to_string(Site s);

struct LatticeWindow {
    std::int64_t x_min = 0;
    std::int64_t x_max = 0;
    std::int64_t y_min = 0;
    std::int64_t y_max = 0;

    static LatticeWindow square(std::int64_t lo, std::int64_t hi) { return {lo, hi, lo, hi}; }
    static LatticeWindow spanning(Site lo, Site hi) { return {lo.x, hi.x, lo.y, hi.y}; }

    bool valid() const { return x_min <= x_max && y_min <= y_max; }
    std::int64_t width() const { return x_max - x_min + 1; }
    std::int64_t height() const { return y_max - y_min + 1; }
    std::size_t size() const { return static_cast<std::size_t>(width() * height()); }
    Site lower() const { return {x_min, y_min}; }
    Site upper() const { return {x_max, y_max}; }

    bool contains(Site s) const {
        return s.x >= x_min && s.x <= x_max && s.y >= y_min && s.y <= y_max;
    }
    // Row-major: rows indexed by y, columns by x.
    std::size_t index(Site s) const {
        return static_cast<std::size_t>((s.y - y_min) * width() + (s.x - x_min));
    }
    Site site_at(std::size_t i) const {
        auto w = static_cast<std::size_t>(width());
        return {x_min + static_cast<std::int64_t>(i % w), y_min + static_cast<std::int64_t>(i / w)};
    }
    bool contains(const LatticeWindow& o) const {
        return o.x_min >= x_min && o.x_max <= x_max && o.y_min >= y_min && o.y_max <= y_max;
    }
    LatticeWindow shifted(Site z) const { return {x_min + z.x, x_max + z.x, y_min + z.y, y_max + z.y}; }

    friend bool operator==(const LatticeWindow&, const LatticeWindow&) = default;
};

// Throws InvalidWindow if the window is empty.
void validate(const LatticeWindow& w);

std::string to_string(const LatticeWindow& w);

// Dense per-site storage over a window.
template <class T>
struct Grid {
    LatticeWindow window;
    std::vector<T> data;

    Grid() = default;
    explicit Grid(const LatticeWindow& w, T init = T{}) : window(w), data(w.size(), init) {}

    T& operator[](Site s) { return data[window.index(s)]; }
    const T& operator[](Site s) const { return data[window.index(s)]; }
};

}  // namespace lpp
