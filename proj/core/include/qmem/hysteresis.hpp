#pragma once

// Pinched-hysteresis loop extraction and shape metrics on (V, I) traces.

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qmem::hysteresis {

struct Point {
    double x = 0.0;  // voltage (or normalized voltage)
    double y = 0.0;  // current
};

struct PolygonGeometry {
    double signed_area = 0.0;  // shoelace, positive for counter-clockwise
    double perimeter = 0.0;    // closed polyline length
};

/// Treats the points as a closed polygon (the last point connects back to the first).
/// Throws InvalidParameter with fewer than 3 distinct points.
PolygonGeometry polygon_geometry(std::span<const Point> points);

/// Splits a closed curve at the sign changes of x into lobes, each closed through the origin,
/// and returns their signed areas. A curve without sign changes is one lobe.
std::vector<double> lobe_areas(std::span<const Point> points);

/// 4 pi sum|lobe area| / P^2 of the raw points, P the perimeter of the closed curve.
/// Throws InvalidParameter on zero perimeter.
double form_factor(std::span<const Point> points);

enum class Orientation { CounterClockwise, Clockwise };

std::string to_string(Orientation o);

struct Loop {
    std::vector<Point> points;             // raw (V, I), closed: first == last
    std::vector<Point> normalized_points;  // V / max|V|, I / max|I|
    double start_time = 0.0;
    double end_time = 0.0;
    std::vector<double> lobe_areas;        // on normalized points
    double perimeter = 0.0;                // on normalized points
    double form_factor = 0.0;
    Orientation orientation = Orientation::CounterClockwise;
    bool tie = false;                      // |lobe areas| equal within 1e-12
    std::optional<std::string> warning;    // degenerate loop (pinch check failed)
};

/// Builds a Loop from one closed period, normalizing by per-loop max |V| and max |I|.
/// Throws InvalidParameter if either coordinate vanishes identically.
Loop make_loop(std::vector<Point> points, double start_time, double end_time);

struct SegmentOptions {
    double pinch_epsilon = 0.05;  // fraction of the trace-wide max |I|
};

/// One loop per period of V, bounded by consecutive upward zero crossings of V (linearly
/// interpolated). The incomplete trailing period is discarded.
std::vector<Loop> segment_loops(std::span<const double> time, std::span<const double> voltage,
                                std::span<const double> current, const SegmentOptions& options = {});

struct Reversal {
    std::size_t loop_index = 0;  // first loop with the new orientation
    double time = 0.0;           // its start boundary
    Orientation from = Orientation::CounterClockwise;
    Orientation to = Orientation::CounterClockwise;
};

struct OrientationSeries {
    std::vector<Orientation> orientation;
    std::vector<bool> carried;  // tie resolved by carrying the previous orientation
    std::vector<Reversal> reversals;
};

/// Orientation per loop = sign of the dominant lobe; reversals at every flip.
OrientationSeries orientation_series(std::span<const Loop> loops);

}  // namespace qmem::hysteresis
