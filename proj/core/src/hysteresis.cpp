#include "qmem/hysteresis.hpp"

#include <algorithm>
#include <cmath>

#include "qmem/constants.hpp"
#include "qmem/errors.hpp"

namespace qmem::hysteresis {

namespace {

// Ascending-magnitude sums of each sign, so reversing the point order negates the result exactly.
double shoelace(std::span<const Point> p) {
    const std::size_t n = p.size();
    std::vector<double> pos;
    std::vector<double> neg;
    for (std::size_t k = 0; k < n; ++k) {
        const Point& a = p[k];
        const Point& b = p[(k + 1) % n];
        const double term = a.x * b.y - b.x * a.y;
        (term >= 0.0 ? pos : neg).push_back(std::abs(term));
    }
    std::sort(pos.begin(), pos.end());
    std::sort(neg.begin(), neg.end());
    double up = 0.0;
    double down = 0.0;
    for (double v : pos) up += v;
    for (double v : neg) down += v;
    return 0.5 * (up - down);
}

double closed_length(std::span<const Point> p) {
    double length = 0.0;
    const std::size_t n = p.size();
    for (std::size_t k = 0; k < n; ++k) {
        const Point& a = p[k];
        const Point& b = p[(k + 1) % n];
        length += std::hypot(b.x - a.x, b.y - a.y);
    }
    return length;
}

std::size_t distinct_points(std::span<const Point> p) {
    std::vector<std::pair<double, double>> v;
    v.reserve(p.size());
    for (const auto& q : p) v.emplace_back(q.x, q.y);
    std::sort(v.begin(), v.end());
    return static_cast<std::size_t>(std::unique(v.begin(), v.end()) - v.begin());
}

int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

Point crossing(const Point& a, const Point& b) {
    const double f = a.x / (a.x - b.x);
    return Point{0.0, a.y + f * (b.y - a.y)};
}

}  // namespace

PolygonGeometry polygon_geometry(std::span<const Point> points) {
    if (distinct_points(points) < 3) throw InvalidParameter("polygon needs at least 3 distinct points");
    return PolygonGeometry{shoelace(points), closed_length(points)};
}

std::vector<double> lobe_areas(std::span<const Point> points) {
    const std::size_t n = points.size();
    if (n < 3) throw InvalidParameter("polygon needs at least 3 points");

    // Walk the closed curve once, inserting the x = 0 crossings; those are the cut points.
    std::vector<Point> walk;
    std::vector<bool> cut;
    walk.reserve(n + 8);
    for (std::size_t k = 0; k < n; ++k) {
        const Point& a = points[k];
        const Point& b = points[(k + 1) % n];
        walk.push_back(a);
        cut.push_back(a.x == 0.0);
        if (sign_of(a.x) * sign_of(b.x) < 0) {
            walk.push_back(crossing(a, b));
            cut.push_back(true);
        }
    }

    const std::size_t m = walk.size();
    const auto first_cut = std::find(cut.begin(), cut.end(), true);
    if (first_cut == cut.end()) return {shoelace(points)};

    std::vector<double> areas;
    const auto start = static_cast<std::size_t>(first_cut - cut.begin());
    std::vector<Point> lobe{walk[start]};
    for (std::size_t step = 1; step <= m; ++step) {
        const std::size_t k = (start + step) % m;
        lobe.push_back(walk[k]);
        if (cut[k]) {
            if (lobe.size() >= 3) {
                lobe.push_back(Point{0.0, 0.0});
                const double a = shoelace(lobe);
                if (a != 0.0) areas.push_back(a);
            }
            lobe.assign(1, walk[k]);
        }
    }
    if (areas.empty()) areas.push_back(0.0);
    return areas;
}

double form_factor(std::span<const Point> points) {
    const PolygonGeometry geom = polygon_geometry(points);
    if (!(geom.perimeter > 0.0)) throw InvalidParameter("degenerate loop: zero perimeter");
    double area = 0.0;
    for (double a : lobe_areas(points)) area += std::abs(a);
    return 4.0 * kPi * area / (geom.perimeter * geom.perimeter);
}

std::string to_string(Orientation o) {
    return o == Orientation::CounterClockwise ? "CCW" : "CW";
}

Loop make_loop(std::vector<Point> points, double start_time, double end_time) {
    if (points.size() < 3) throw InvalidParameter("loop needs at least 3 points");
    Loop loop;
    loop.start_time = start_time;
    loop.end_time = end_time;

    double vmax = 0.0, imax = 0.0;
    for (const auto& p : points) {
        vmax = std::max(vmax, std::abs(p.x));
        imax = std::max(imax, std::abs(p.y));
    }
    if (!(vmax > 0.0) || !(imax > 0.0)) throw InvalidParameter("degenerate loop: voltage or current vanishes");
    loop.normalized_points.reserve(points.size());
    for (const auto& p : points) {
        loop.normalized_points.push_back(
            Point{p.x / vmax, p.y / imax});
    }
    loop.points = std::move(points);

    const auto& np = loop.normalized_points;
    loop.perimeter = closed_length(np);
    loop.lobe_areas = lobe_areas(np);
    double total = 0.0;
    double dominant = 0.0;
    double dominant_magnitude = -1.0;
    for (double a : loop.lobe_areas) {
        total += std::abs(a);
        if (std::abs(a) > dominant_magnitude) {
            dominant_magnitude = std::abs(a);
            dominant = a;
        }
    }
    if (vmax == 0.0 || imax == 0.0 || !(loop.perimeter > 0.0)) {
        loop.warning = "degenerate loop: vanishing voltage or current";
        loop.form_factor = 0.0;
    } else {
        loop.form_factor = 4.0 * kPi * total / (loop.perimeter * loop.perimeter);
    }

    // Opposite-signed lobes of equal magnitude leave the sense undetermined.
    bool tie = total == 0.0;
    for (double a : loop.lobe_areas) {
        if (a * dominant < 0.0 && std::abs(std::abs(a) - dominant_magnitude) <= 1e-12 * std::max(1.0, total)) {
            tie = true;
        }
    }
    loop.tie = tie;
    loop.orientation = dominant >= 0.0 ? Orientation::CounterClockwise : Orientation::Clockwise;
    return loop;
}

std::vector<Loop> segment_loops(std::span<const double> time, std::span<const double> voltage,
                                std::span<const double> current, const SegmentOptions& options) {
    const std::size_t n = time.size();
    if (voltage.size() != n || current.size() != n) {
        throw ContractViolation("segment_loops: trace columns differ in length");
    }
    double imax = 0.0;
    for (double i : current) imax = std::max(imax, std::abs(i));
    const double pinch_limit = options.pinch_epsilon * imax;

    struct Boundary {
        std::size_t index;  // last sample before the crossing
        double time;
        Point point;
    };
    std::vector<Boundary> bounds;
    if (n > 1 && voltage[0] == 0.0 && voltage[1] > 0.0) {
        bounds.push_back({0, time[0], Point{0.0, current[0]}});  // trace starts on a rising zero
    }
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (voltage[k] < 0.0 && voltage[k + 1] >= 0.0) {
            const double f = -voltage[k] / (voltage[k + 1] - voltage[k]);
            bounds.push_back({k, time[k] + f * (time[k + 1] - time[k]),
                              Point{0.0, current[k] + f * (current[k + 1] - current[k])}});
        }
    }

    std::vector<Loop> loops;
    for (std::size_t b = 0; b + 1 < bounds.size(); ++b) {
        const Boundary& lo = bounds[b];
        const Boundary& hi = bounds[b + 1];
        std::vector<Point> pts;
        pts.reserve(hi.index - lo.index + 3);
        pts.push_back(lo.point);
        for (std::size_t k = lo.index + 1; k <= hi.index; ++k) pts.push_back(Point{voltage[k], current[k]});
        pts.push_back(hi.point);
        pts.push_back(lo.point);
        if (pts.size() < 4) continue;

        Loop loop = make_loop(std::move(pts), lo.time, hi.time);
        if (std::abs(lo.point.y) >= pinch_limit || std::abs(hi.point.y) >= pinch_limit) {
            if (imax > 0.0) loop.warning = "degenerate loop: current not pinched at a boundary";
        }
        loops.push_back(std::move(loop));
    }
    return loops;
}

OrientationSeries orientation_series(std::span<const Loop> loops) {
    OrientationSeries out;
    for (std::size_t k = 0; k < loops.size(); ++k) {
        Orientation o = loops[k].orientation;
        bool carried = false;
        if (loops[k].tie) {
            o = k > 0 ? out.orientation.back() : Orientation::CounterClockwise;
            carried = true;
        }
        if (k > 0 && o != out.orientation.back()) {
            out.reversals.push_back(Reversal{k, loops[k].start_time, out.orientation.back(), o});
        }
        out.orientation.push_back(o);
        out.carried.push_back(carried);
    }
    return out;
}

}  // namespace qmem::hysteresis
