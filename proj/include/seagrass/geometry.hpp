#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace seagrass {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Point2&) const = default;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }

// Twice the signed area of triangle abc; positive when a, b, c turn
// counterclockwise in the (x, y) frame.
inline double orient(Point2 a, Point2 b, Point2 c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

double distance(Point2 a, Point2 b);

enum class Frame { Pixel, World };

// Closed ring; the last vertex connects back to the first. Pixel-frame
// polygons use pixel-index coordinates (pixel (i, j) is centered at (i, j)).
// "Counterclockwise" always means positive signed area in the polygon's own
// (x, y) coordinates; in an image displayed y-down that looks clockwise.
struct Polygon {
  std::vector<Point2> vertices;
  Frame frame = Frame::World;

  double signed_area() const;
  double area() const;
  // Area-weighted centroid; falls back to the vertex mean for zero area.
  Point2 centroid() const;
  std::array<double, 4> bounds() const;  // min_x, min_y, max_x, max_y
};

struct BinaryMask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> bits;  // row-major, nonzero = foreground

  BinaryMask() = default;
  BinaryMask(int w, int h) : width(w), height(h), bits(static_cast<std::size_t>(w) * h, 0) {}

  bool at(int x, int y) const { return bits[static_cast<std::size_t>(y) * width + x] != 0; }
  void set(int x, int y, bool v = true) { bits[static_cast<std::size_t>(y) * width + x] = v ? 1 : 0; }
  bool inside(int x, int y) const { return x >= 0 && y >= 0 && x < width && y < height; }
  std::size_t count() const;
};

struct Component {
  int label = 0;  // 1-based
  std::size_t pixel_count = 0;
  double sum_x = 0.0;
  double sum_y = 0.0;
  int start_x = 0;  // first pixel in raster order
  int start_y = 0;

  Point2 centroid() const {
    return {sum_x / static_cast<double>(pixel_count), sum_y / static_cast<double>(pixel_count)};
  }
};

// 8-connected component labeling; labels are 0 for background, otherwise
// component index + 1 in raster order of first pixel.
struct Labeling {
  int width = 0;
  int height = 0;
  std::vector<int> labels;
  std::vector<Component> components;

  int at(int x, int y) const { return labels[static_cast<std::size_t>(y) * width + x]; }
};

Labeling label_components(const BinaryMask& mask);

// Outer boundary of one labeled component, traced along the 8-connected
// border and returned counterclockwise. Components of one or two pixels (and
// one-pixel-thick lines) yield rings with repeated or fewer than 3 vertices.
Polygon trace_component(const Labeling& labeling, int label);

// One outer ring per 8-connected foreground component, in label order.
// Holes are not reported.
std::vector<Polygon> trace_contours(const BinaryMask& mask);

// Even-odd fill in the pixel-index frame; pixels whose centers lie on the
// boundary are included.
BinaryMask fill_polygon(const Polygon& polygon, int width, int height);

// Pixels touched by the ring's edges (8-connected line steps).
BinaryMask rasterize_outline(const Polygon& polygon, int width, int height);

// Andrew monotone chain. CCW order, collinear boundary points dropped.
Polygon convex_hull(std::span<const Point2> points);

struct Triangle {
  std::array<int, 3> v;  // indices into the point list, CCW
};

// Delaunay triangulation by randomized incremental insertion with edge
// flips. Exact duplicates are merged (the first occurrence wins); every point
// is nudged by a deterministic ~1e-9 relative jitter to break collinear and
// cocircular ties. Returns an empty list when all points are collinear.
std::vector<Triangle> delaunay(std::span<const Point2> points, std::uint64_t seed = 0);

double circumradius(Point2 a, Point2 b, Point2 c);

// Alpha complex boundary: Delaunay triangles with circumradius <= alpha,
// boundary edges chained into closed CCW rings. Holes are filled; several
// disjoint rings may come back.
std::vector<Polygon> alpha_shape(std::span<const Point2> points, double alpha, std::uint64_t seed = 0);

bool point_on_segment(Point2 p, Point2 a, Point2 b, double tolerance = 1e-12);
bool point_in_polygon(Point2 p, const Polygon& polygon);
// True iff p is inside or on the boundary of any polygon.
bool point_in_region(Point2 p, std::span<const Polygon> polygons);
// Index of the first polygon containing p, or -1.
int containing_polygon(Point2 p, std::span<const Polygon> polygons);

// Accumulated surface-frame points of visited areas and their alpha shape.
// Single writer; readers should copy polygons() between updates.
class ExploredMap {
 public:
  explicit ExploredMap(double alpha);

  double alpha() const { return alpha_; }
  const std::vector<Point2>& points() const { return points_; }
  const std::vector<Polygon>& polygons() const { return polygons_; }
  bool contains(Point2 p) const { return point_in_region(p, polygons_); }

  // Appends the points (exact duplicates skipped) and rebuilds the shape.
  void record(std::span<const Point2> surface_points, Point2 bottom_point_projected);

 private:
  void rebuild();

  double alpha_;
  std::vector<Point2> points_;
  std::vector<Polygon> polygons_;
};

// Returns the updated copy; the map itself is a value type.
ExploredMap record_exploration(ExploredMap map, std::span<const Point2> surface_points,
                               Point2 bottom_point_projected);

// "ring: (x1,y1) (x2,y2) ..." with fixed precision.
std::string format_ring(const Polygon& polygon, int precision = 3);
void write_rings(std::ostream& out, std::span<const Polygon> polygons, int precision = 3);
// Parses ring lines; blank lines and '#' comment lines are skipped.
std::vector<Polygon> read_rings(std::istream& in, Frame frame = Frame::World);

}  // namespace seagrass
