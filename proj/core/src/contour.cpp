#include "shapebag/contour.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <unordered_map>

#include "shapebag/error.hpp"

namespace shapebag {

double Contour::signed_area() const {
    const size_t n = vertices.size();
    double twice = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const Vec2& a = vertices[i];
        const Vec2& b = vertices[(i + 1) % n];
        twice += a.cross(b);
    }
    return 0.5 * twice;
}

double Contour::circumference() const {
    const size_t n = vertices.size();
    double len = 0.0;
    for (size_t i = 0; i < n; ++i)
        len += distance(vertices[i], vertices[(i + 1) % n]);
    return len;
}

Vec2 Contour::centroid() const {
    Vec2 sum;
    for (const Vec2& v : vertices) sum += v;
    return vertices.empty() ? sum : sum / static_cast<double>(vertices.size());
}

namespace {

struct Pix {
    int x, y;
    bool operator==(const Pix&) const = default;
};

// Moore neighborhood ring; consecutive entries are king-adjacent, so the
// backtrack pixel after a move is always a valid direction index again.
constexpr std::array<Pix, 8> kRing = {{
    {-1, 0},   // 0 W
    {-1, -1},  // 1 NW
    {0, -1},   // 2 N
    {1, -1},   // 3 NE
    {1, 0},    // 4 E
    {1, 1},    // 5 SE
    {0, 1},    // 6 S
    {-1, 1},   // 7 SW
}};

int direction_index(int dx, int dy) {
    for (int d = 0; d < 8; ++d)
        if (kRing[static_cast<size_t>(d)].x == dx && kRing[static_cast<size_t>(d)].y == dy) return d;
    throw Error(ErrorCode::internal, "non-adjacent backtrack step in contour trace");
}

// Follows the boundary from `start`, whose ring neighbor in direction
// `start_backdir` is known background. The walk is a deterministic map on
// (pixel, backtrack) states, so it must revisit some state; the pixels seen
// between that state's two visits form the boundary loop. The lead-in before
// the loop (possible when the seeded backtrack direction is one the walk
// itself never reproduces, e.g. at one-pixel spurs) is discarded.
std::vector<Pix> moore_trace(const BinaryMask& mask, Pix start, int start_backdir) {
    std::vector<Pix> pixels;
    std::unordered_map<uint64_t, uint32_t> first_index;
    Pix p = start;
    int backdir = start_backdir;
    const size_t step_cap = 8 * static_cast<size_t>(mask.width()) * mask.height() + 16;

    for (size_t steps = 0; steps < step_cap; ++steps) {
        const uint64_t state =
            (static_cast<uint64_t>(p.y) * static_cast<uint64_t>(mask.width()) +
             static_cast<uint64_t>(p.x)) * 8 + static_cast<uint64_t>(backdir);
        const auto [it, fresh] = first_index.try_emplace(state, static_cast<uint32_t>(pixels.size()));
        if (!fresh) {
            pixels.erase(pixels.begin(), pixels.begin() + it->second);
            return pixels;
        }
        pixels.push_back(p);

        int d = backdir;
        bool moved = false;
        for (int i = 0; i < 8; ++i) {
            d = (d + 1) % 8;
            const Pix q{p.x + kRing[static_cast<size_t>(d)].x, p.y + kRing[static_cast<size_t>(d)].y};
            if (mask.at_safe(q.x, q.y)) {
                const int prev = (d + 7) % 8;
                const Pix last_bg{p.x + kRing[static_cast<size_t>(prev)].x,
                                  p.y + kRing[static_cast<size_t>(prev)].y};
                backdir = direction_index(last_bg.x - q.x, last_bg.y - q.y);
                p = q;
                moved = true;
                break;
            }
        }
        if (!moved) return pixels;  // isolated pixel
    }
    throw Error(ErrorCode::internal, "contour trace did not terminate");
}

// 8-connected foreground component labels, -1 for background.
std::vector<int> label_foreground(const BinaryMask& mask, int& count) {
    const int w = mask.width(), h = mask.height();
    std::vector<int> labels(static_cast<size_t>(w) * h, -1);
    std::vector<Pix> stack;
    count = 0;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!mask.at(x, y) || labels[static_cast<size_t>(y) * w + x] >= 0) continue;
            const int id = count++;
            stack.push_back({x, y});
            labels[static_cast<size_t>(y) * w + x] = id;
            while (!stack.empty()) {
                const Pix p = stack.back();
                stack.pop_back();
                for (const Pix& d : kRing) {
                    const int nx = p.x + d.x, ny = p.y + d.y;
                    if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
                    const size_t idx = static_cast<size_t>(ny) * w + nx;
                    if (mask.at(nx, ny) && labels[idx] < 0) {
                        labels[idx] = id;
                        stack.push_back({nx, ny});
                    }
                }
            }
        }
    }
    return labels;
}

// 4-connected background labels plus a flag per label for border contact.
std::vector<int> label_background(const BinaryMask& mask, std::vector<bool>& touches_border,
                                  int& count) {
    const int w = mask.width(), h = mask.height();
    constexpr std::array<Pix, 4> k4 = {{{-1, 0}, {1, 0}, {0, -1}, {0, 1}}};
    std::vector<int> labels(static_cast<size_t>(w) * h, -1);
    std::vector<Pix> stack;
    count = 0;
    touches_border.clear();
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (mask.at(x, y) || labels[static_cast<size_t>(y) * w + x] >= 0) continue;
            const int id = count++;
            touches_border.push_back(false);
            stack.push_back({x, y});
            labels[static_cast<size_t>(y) * w + x] = id;
            while (!stack.empty()) {
                const Pix p = stack.back();
                stack.pop_back();
                if (p.x == 0 || p.x == w - 1 || p.y == 0 || p.y == h - 1)
                    touches_border[static_cast<size_t>(id)] = true;
                for (const Pix& d : k4) {
                    const int nx = p.x + d.x, ny = p.y + d.y;
                    if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
                    const size_t idx = static_cast<size_t>(ny) * w + nx;
                    if (!mask.at(nx, ny) && labels[idx] < 0) {
                        labels[idx] = id;
                        stack.push_back({nx, ny});
                    }
                }
            }
        }
    }
    return labels;
}

Contour make_contour(const std::vector<Pix>& pixels, ContourKind kind) {
    Contour c;
    c.kind = kind;
    c.vertices.reserve(pixels.size());
    for (const Pix& p : pixels) c.vertices.push_back({static_cast<double>(p.x), static_cast<double>(p.y)});
    // Normalize winding: external positive area, internal negative. The start
    // vertex is kept in place so traces stay deterministic.
    const double area = c.signed_area();
    const bool flip = (kind == ContourKind::external) ? area < 0.0 : area > 0.0;
    if (flip && c.vertices.size() > 2)
        std::reverse(c.vertices.begin() + 1, c.vertices.end());
    return c;
}

}  // namespace

std::vector<Contour> trace_boundaries(const BinaryMask& mask, size_t min_length) {
    const size_t keep = std::max<size_t>(min_length, 3);
    std::vector<Contour> out;

    int n_components = 0;
    const std::vector<int> fg = label_foreground(mask, n_components);
    const int w = mask.width();

    std::vector<bool> traced(static_cast<size_t>(n_components), false);
    for (int y = 0; y < mask.height(); ++y) {
        for (int x = 0; x < w; ++x) {
            const int label = fg[static_cast<size_t>(y) * w + x];
            if (label < 0 || traced[static_cast<size_t>(label)]) continue;
            traced[static_cast<size_t>(label)] = true;
            // First scan hit of a component has background (or nothing) to its west.
            const auto pixels = moore_trace(mask, {x, y}, 0);
            if (pixels.size() >= keep)
                out.push_back(make_contour(pixels, ContourKind::external));
        }
    }

    int n_bg = 0;
    std::vector<bool> open;
    const std::vector<int> bg = label_background(mask, open, n_bg);
    std::vector<bool> hole_traced(static_cast<size_t>(n_bg), false);
    for (int y = 0; y < mask.height(); ++y) {
        for (int x = 0; x < w; ++x) {
            const int label = bg[static_cast<size_t>(y) * w + x];
            if (label < 0 || open[static_cast<size_t>(label)] || hole_traced[static_cast<size_t>(label)])
                continue;
            hole_traced[static_cast<size_t>(label)] = true;
            // The pixel above the topmost-leftmost hole pixel is foreground
            // (a background pixel there would be 4-connected to the hole).
            const Pix rim{x, y - 1};
            const auto pixels = moore_trace(mask, rim, 6 /* S, into the hole */);
            if (pixels.size() >= keep)
                out.push_back(make_contour(pixels, ContourKind::internal));
        }
    }
    return out;
}

}  // namespace shapebag
