#include "seagrass/geometry.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "seagrass/error.hpp"
#include "seagrass/rng.hpp"

namespace seagrass {

double distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

double Polygon::signed_area() const {
  double twice = 0.0;
  const std::size_t n = vertices.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = vertices[i];
    const Point2& b = vertices[(i + 1) % n];
    twice += a.x * b.y - b.x * a.y;
  }
  return 0.5 * twice;
}

double Polygon::area() const { return std::fabs(signed_area()); }

Point2 Polygon::centroid() const {
  if (vertices.empty()) return {};
  const std::size_t n = vertices.size();
  double twice = 0.0, cx = 0.0, cy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = vertices[i];
    const Point2& b = vertices[(i + 1) % n];
    const double cross = a.x * b.y - b.x * a.y;
    twice += cross;
    cx += (a.x + b.x) * cross;
    cy += (a.y + b.y) * cross;
  }
  if (twice == 0.0) {
    Point2 mean;
    for (const auto& v : vertices) mean = mean + v;
    return (1.0 / static_cast<double>(n)) * mean;
  }
  return {cx / (3.0 * twice), cy / (3.0 * twice)};
}

std::array<double, 4> Polygon::bounds() const {
  std::array<double, 4> b{INFINITY, INFINITY, -INFINITY, -INFINITY};
  for (const auto& v : vertices) {
    b[0] = std::min(b[0], v.x);
    b[1] = std::min(b[1], v.y);
    b[2] = std::max(b[2], v.x);
    b[3] = std::max(b[3], v.y);
  }
  return b;
}

std::size_t BinaryMask::count() const {
  return static_cast<std::size_t>(std::count_if(bits.begin(), bits.end(), [](auto b) { return b != 0; }));
}

// ---------------------------------------------------------------------------
// Components and contours

namespace {

// Clockwise in a y-down display: E, SE, S, SW, W, NW, N, NE.
constexpr std::array<int, 8> kDx{1, 1, 0, -1, -1, -1, 0, 1};
constexpr std::array<int, 8> kDy{0, 1, 1, 1, 0, -1, -1, -1};

int direction_to(int fx, int fy, int tx, int ty) {
  for (int d = 0; d < 8; ++d)
    if (fx + kDx[d] == tx && fy + kDy[d] == ty) return d;
  return -1;
}

}  // namespace

Labeling label_components(const BinaryMask& mask) {
  Labeling out;
  out.width = mask.width;
  out.height = mask.height;
  out.labels.assign(mask.bits.size(), 0);
  std::vector<std::pair<int, int>> stack;
  for (int y = 0; y < mask.height; ++y) {
    for (int x = 0; x < mask.width; ++x) {
      if (!mask.at(x, y) || out.at(x, y) != 0) continue;
      Component comp;
      comp.label = static_cast<int>(out.components.size()) + 1;
      comp.start_x = x;
      comp.start_y = y;
      stack.clear();
      stack.emplace_back(x, y);
      out.labels[static_cast<std::size_t>(y) * mask.width + x] = comp.label;
      while (!stack.empty()) {
        const auto [cx, cy] = stack.back();
        stack.pop_back();
        ++comp.pixel_count;
        comp.sum_x += cx;
        comp.sum_y += cy;
        for (int d = 0; d < 8; ++d) {
          const int nx = cx + kDx[d];
          const int ny = cy + kDy[d];
          if (!mask.inside(nx, ny) || !mask.at(nx, ny)) continue;
          int& label = out.labels[static_cast<std::size_t>(ny) * mask.width + nx];
          if (label != 0) continue;
          label = comp.label;
          stack.emplace_back(nx, ny);
        }
      }
      out.components.push_back(comp);
    }
  }
  return out;
}

Polygon trace_component(const Labeling& labeling, int label) {
  const Component& comp = labeling.components.at(static_cast<std::size_t>(label - 1));
  auto member = [&](int x, int y) {
    return x >= 0 && y >= 0 && x < labeling.width && y < labeling.height && labeling.at(x, y) == label;
  };

  Polygon ring;
  ring.frame = Frame::Pixel;
  const int x0 = comp.start_x;
  const int y0 = comp.start_y;

  // Border following: the start pixel is the first in raster order, so its
  // west neighbor is background. Search clockwise from there for the pixel
  // that closes the loop.
  int x1 = -1, y1 = -1;
  for (int k = 0; k < 8; ++k) {
    const int d = (4 + k) % 8;
    if (member(x0 + kDx[d], y0 + kDy[d])) {
      x1 = x0 + kDx[d];
      y1 = y0 + kDy[d];
      break;
    }
  }
  if (x1 < 0) {
    ring.vertices.push_back({static_cast<double>(x0), static_cast<double>(y0)});
    return ring;
  }

  int x2 = x1, y2 = y1;  // previous pixel
  int x3 = x0, y3 = y0;  // current pixel
  while (true) {
    ring.vertices.push_back({static_cast<double>(x3), static_cast<double>(y3)});
    const int back = direction_to(x3, y3, x2, y2);
    int x4 = x2, y4 = y2;
    for (int k = 1; k <= 8; ++k) {
      const int d = ((back - k) % 8 + 8) % 8;
      if (member(x3 + kDx[d], y3 + kDy[d])) {
        x4 = x3 + kDx[d];
        y4 = y3 + kDy[d];
        break;
      }
    }
    if (x4 == x0 && y4 == y0 && x3 == x1 && y3 == y1) break;
    x2 = x3;
    y2 = y3;
    x3 = x4;
    y3 = y4;
  }
  if (ring.signed_area() < 0.0) std::reverse(ring.vertices.begin(), ring.vertices.end());
  return ring;
}

std::vector<Polygon> trace_contours(const BinaryMask& mask) {
  const Labeling labeling = label_components(mask);
  std::vector<Polygon> out;
  out.reserve(labeling.components.size());
  for (const auto& comp : labeling.components) out.push_back(trace_component(labeling, comp.label));
  return out;
}

BinaryMask fill_polygon(const Polygon& polygon, int width, int height) {
  BinaryMask mask(width, height);
  const auto& v = polygon.vertices;
  const std::size_t n = v.size();
  if (n == 0) return mask;
  constexpr double kEps = 1e-9;

  auto mark = [&](double fx, int y) {
    const double r = std::round(fx);
    if (std::fabs(fx - r) > kEps) return;
    const int x = static_cast<int>(r);
    if (mask.inside(x, y)) mask.set(x, y);
  };

  // Boundary pixels: centers lying exactly on an edge.
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = v[i];
    const Point2 b = v[(i + 1) % n];
    const int ylo = std::max(0, static_cast<int>(std::ceil(std::min(a.y, b.y) - kEps)));
    const int yhi = std::min(height - 1, static_cast<int>(std::floor(std::max(a.y, b.y) + kEps)));
    if (std::fabs(a.y - b.y) <= kEps) {
      const double r = std::round(a.y);
      if (std::fabs(a.y - r) > kEps) continue;
      const int y = static_cast<int>(r);
      if (y < 0 || y >= height) continue;
      const int xlo = std::max(0, static_cast<int>(std::ceil(std::min(a.x, b.x) - kEps)));
      const int xhi = std::min(width - 1, static_cast<int>(std::floor(std::max(a.x, b.x) + kEps)));
      for (int x = xlo; x <= xhi; ++x) mask.set(x, y);
      continue;
    }
    for (int y = ylo; y <= yhi; ++y) mark(a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y), y);
  }

  // Interior spans by even-odd scanline crossings (half-open in y).
  std::vector<double> xs;
  for (int y = 0; y < height; ++y) {
    xs.clear();
    for (std::size_t i = 0; i < n; ++i) {
      const Point2 a = v[i];
      const Point2 b = v[(i + 1) % n];
      if ((a.y <= y && y < b.y) || (b.y <= y && y < a.y)) xs.push_back(a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y));
    }
    std::sort(xs.begin(), xs.end());
    for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
      const int xlo = std::max(0, static_cast<int>(std::ceil(xs[k] - kEps)));
      const int xhi = std::min(width - 1, static_cast<int>(std::floor(xs[k + 1] + kEps)));
      for (int x = xlo; x <= xhi; ++x) mask.set(x, y);
    }
  }
  return mask;
}

BinaryMask rasterize_outline(const Polygon& polygon, int width, int height) {
  BinaryMask mask(width, height);
  const auto& v = polygon.vertices;
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    int x0 = static_cast<int>(std::lround(v[i].x));
    int y0 = static_cast<int>(std::lround(v[i].y));
    const int x1 = static_cast<int>(std::lround(v[(i + 1) % n].x));
    const int y1 = static_cast<int>(std::lround(v[(i + 1) % n].y));
    const int dx = std::abs(x1 - x0), sx = x0 < x1 ? 1 : -1;
    const int dy = -std::abs(y1 - y0), sy = y0 < y1 ? 1 : -1;
    int err = dx + dy;
    while (true) {
      if (mask.inside(x0, y0)) mask.set(x0, y0);
      if (x0 == x1 && y0 == y1) break;
      const int e2 = 2 * err;
      if (e2 >= dy) {
        err += dy;
        x0 += sx;
      }
      if (e2 <= dx) {
        err += dx;
        y0 += sy;
      }
    }
  }
  return mask;
}

// ---------------------------------------------------------------------------
// Hull

Polygon convex_hull(std::span<const Point2> points) {
  std::vector<Point2> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](Point2 a, Point2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) throw DegenerateInput("convex_hull: need at least 3 distinct points");

  std::vector<Point2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && orient(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && orient(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  if (hull.size() < 3) throw DegenerateInput("convex_hull: all points are collinear");
  return Polygon{std::move(hull), Frame::World};
}

// ---------------------------------------------------------------------------
// Delaunay

double circumradius(Point2 a, Point2 b, Point2 c) {
  const double ab = distance(a, b);
  const double bc = distance(b, c);
  const double ca = distance(c, a);
  const double twice_area = std::fabs(orient(a, b, c));
  if (twice_area == 0.0) return INFINITY;
  return ab * bc * ca / (2.0 * twice_area);
}

namespace {

// > 0 when d lies inside the circumcircle of counterclockwise abc.
long double incircle(Point2 a, Point2 b, Point2 c, Point2 d) {
  const long double adx = static_cast<long double>(a.x) - d.x, ady = static_cast<long double>(a.y) - d.y;
  const long double bdx = static_cast<long double>(b.x) - d.x, bdy = static_cast<long double>(b.y) - d.y;
  const long double cdx = static_cast<long double>(c.x) - d.x, cdy = static_cast<long double>(c.y) - d.y;
  return (adx * adx + ady * ady) * (bdx * cdy - cdx * bdy) - (bdx * bdx + bdy * bdy) * (adx * cdy - cdx * ady) +
         (cdx * cdx + cdy * cdy) * (adx * bdy - bdx * ady);
}

// Triangles with neighbor links; n[i] is the triangle across the edge
// opposite v[i], or -1 on the hull.
class Mesh {
 public:
  explicit Mesh(std::vector<Point2> pts) : p_(std::move(pts)) {}

  const std::vector<std::array<int, 3>>& vertices() const { return v_; }
  const std::vector<std::array<int, 3>>& neighbors() const { return n_; }

  void seed_triangle(int a, int b, int c) {
    if (orient(p_[a], p_[b], p_[c]) < 0.0) std::swap(b, c);
    v_.push_back({a, b, c});
    n_.push_back({-1, -1, -1});
  }

  void insert(int pi) {
    const Point2 p = p_[pi];
    for (int t = 0; t < static_cast<int>(v_.size()); ++t) {
      const auto& tv = v_[t];
      if (orient(p_[tv[0]], p_[tv[1]], p) >= 0.0 && orient(p_[tv[1]], p_[tv[2]], p) >= 0.0 &&
          orient(p_[tv[2]], p_[tv[0]], p) >= 0.0) {
        split(t, pi);
        return;
      }
    }
    attach_outside(pi);
  }

 private:
  void rotate(int t, int i) {
    if (i == 0) return;
    const auto v = v_[t];
    const auto n = n_[t];
    for (int k = 0; k < 3; ++k) {
      v_[t][k] = v[(k + i) % 3];
      n_[t][k] = n[(k + i) % 3];
    }
  }

  void relink(int t, int from, int to) {
    if (t < 0) return;
    for (int k = 0; k < 3; ++k)
      if (n_[t][k] == from) n_[t][k] = to;
  }

  void split(int t, int pi) {
    const auto [a, b, c] = v_[t];
    const auto [na, nb, nc] = n_[t];
    const int t1 = static_cast<int>(v_.size());
    const int t2 = t1 + 1;
    v_[t] = {pi, b, c};
    n_[t] = {na, t1, t2};
    v_.push_back({pi, c, a});
    n_.push_back({nb, t2, t});
    v_.push_back({pi, a, b});
    n_.push_back({nc, t, t1});
    relink(nb, t, t1);
    relink(nc, t, t2);
    legalize({t, t1, t2});
  }

  void attach_outside(int pi) {
    const Point2 p = p_[pi];
    struct Edge {
      int tri, a, b;
    };
    std::vector<Edge> visible;
    for (int t = 0; t < static_cast<int>(v_.size()); ++t) {
      for (int i = 0; i < 3; ++i) {
        if (n_[t][i] != -1) continue;
        const int a = v_[t][(i + 1) % 3];
        const int b = v_[t][(i + 2) % 3];
        if (orient(p_[a], p_[b], p) < 0.0) visible.push_back({t, a, b});
      }
    }
    std::unordered_map<int, std::pair<int, int>> open_edge;  // vertex -> (tri, edge index)
    std::vector<int> created;
    for (const auto& e : visible) {
      const int s = static_cast<int>(v_.size());
      v_.push_back({pi, e.b, e.a});
      n_.push_back({e.tri, -1, -1});
      for (int k = 0; k < 3; ++k)
        if (v_[e.tri][(k + 1) % 3] == e.a && v_[e.tri][(k + 2) % 3] == e.b) n_[e.tri][k] = s;
      // Edge (p, b) sits opposite a (index 2); edge (a, p) opposite b (index 1).
      for (const auto& [vertex, idx] : {std::pair{e.b, 2}, std::pair{e.a, 1}}) {
        const auto it = open_edge.find(vertex);
        if (it == open_edge.end()) {
          open_edge.emplace(vertex, std::pair{s, idx});
        } else {
          n_[s][idx] = it->second.first;
          n_[it->second.first][it->second.second] = s;
          open_edge.erase(it);
        }
      }
      created.push_back(s);
    }
    legalize(created);
  }

  // Each entry has the new point at v[0]; checks the edge opposite it.
  void legalize(std::vector<int> stack) {
    while (!stack.empty()) {
      const int t = stack.back();
      stack.pop_back();
      const int u = n_[t][0];
      if (u < 0) continue;
      int j = 0;
      while (j < 3 && n_[u][j] != t) ++j;
      if (j == 3) continue;
      rotate(u, j);
      const auto [pt, b, c] = v_[t];
      const int q = v_[u][0];
      if (incircle(p_[pt], p_[b], p_[c], p_[q]) <= 0.0L) continue;

      const int A = n_[t][1], B = n_[t][2];
      const int C = n_[u][1], D = n_[u][2];
      v_[t] = {pt, b, q};
      n_[t] = {C, u, B};
      v_[u] = {pt, q, c};
      n_[u] = {D, A, t};
      relink(C, u, t);
      relink(A, t, u);
      stack.push_back(t);
      stack.push_back(u);
    }
  }

  std::vector<Point2> p_;
  std::vector<std::array<int, 3>> v_;
  std::vector<std::array<int, 3>> n_;
};

struct Triangulation {
  std::vector<int> original;  // unique point -> input index
  std::vector<std::array<int, 3>> tri;
  std::vector<std::array<int, 3>> nbr;
};

Triangulation triangulate(std::span<const Point2> points, std::uint64_t seed) {
  Triangulation out;
  std::map<std::pair<double, double>, int> seen;
  std::vector<Point2> unique;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto key = std::pair{points[i].x, points[i].y};
    if (seen.emplace(key, static_cast<int>(unique.size())).second) {
      unique.push_back(points[i]);
      out.original.push_back(static_cast<int>(i));
    }
  }
  if (unique.size() < 3) return out;
  const bool collinear = std::all_of(unique.begin() + 2, unique.end(),
                                     [&](Point2 p) { return orient(unique[0], unique[1], p) == 0.0; });
  if (collinear) return out;

  double min_x = INFINITY, min_y = INFINITY, max_x = -INFINITY, max_y = -INFINITY;
  for (const auto& p : unique) {
    min_x = std::min(min_x, p.x);
    min_y = std::min(min_y, p.y);
    max_x = std::max(max_x, p.x);
    max_y = std::max(max_y, p.y);
  }
  const double scale = std::max({max_x - min_x, max_y - min_y, 1e-300});
  std::vector<Point2> jittered;
  jittered.reserve(unique.size());
  for (const auto& p : unique) {
    // Keyed on the coordinates so a point always gets the same nudge.
    const std::uint64_t h = hash_combine(hash_combine(seed, std::bit_cast<std::uint64_t>(p.x)),
                                         std::bit_cast<std::uint64_t>(p.y));
    const double jx = static_cast<double>(mix64(h) >> 11) * 0x1.0p-53 * 2.0 - 1.0;
    const double jy = static_cast<double>(mix64(h + 1) >> 11) * 0x1.0p-53 * 2.0 - 1.0;
    jittered.push_back({p.x + 1e-9 * scale * jx, p.y + 1e-9 * scale * jy});
  }

  std::vector<int> order(unique.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  Rng rng(seed);
  for (std::size_t i = order.size() - 1; i > 0; --i) std::swap(order[i], order[rng.index(i + 1)]);

  std::size_t third = 2;
  while (third < order.size() && orient(jittered[order[0]], jittered[order[1]], jittered[order[third]]) == 0.0)
    ++third;
  if (third == order.size()) return out;
  std::swap(order[2], order[third]);

  Mesh mesh(jittered);
  mesh.seed_triangle(order[0], order[1], order[2]);
  for (std::size_t i = 3; i < order.size(); ++i) mesh.insert(order[i]);
  out.tri = mesh.vertices();
  out.nbr = mesh.neighbors();
  return out;
}

double cw_angle(Point2 from, Point2 to) {
  const double ccw = std::atan2(from.x * to.y - from.y * to.x, from.x * to.x + from.y * to.y);
  double cw = -ccw;
  if (cw <= 0.0) cw += 2.0 * std::numbers::pi;
  return cw;
}

}  // namespace

std::vector<Triangle> delaunay(std::span<const Point2> points, std::uint64_t seed) {
  const Triangulation t = triangulate(points, seed);
  std::vector<Triangle> out;
  out.reserve(t.tri.size());
  for (const auto& tri : t.tri)
    out.push_back({{t.original[tri[0]], t.original[tri[1]], t.original[tri[2]]}});
  return out;
}

std::vector<Polygon> alpha_shape(std::span<const Point2> points, double alpha, std::uint64_t seed) {
  if (points.size() < 3) throw DegenerateInput("alpha_shape: need at least 3 points");
  if (!(alpha > 0.0)) throw InvalidParameter("alpha_shape: alpha must be > 0");
  const Triangulation t = triangulate(points, seed);

  auto pt = [&](int unique_index) { return points[t.original[unique_index]]; };
  std::vector<char> kept(t.tri.size(), 0);
  for (std::size_t i = 0; i < t.tri.size(); ++i) {
    const auto& tri = t.tri[i];
    kept[i] = circumradius(pt(tri[0]), pt(tri[1]), pt(tri[2])) <= alpha;
  }

  // Directed boundary edges keep the kept region on their left.
  struct Edge {
    int from, to;
    bool used = false;
  };
  std::vector<Edge> edges;
  std::unordered_map<int, std::vector<int>> outgoing;
  for (std::size_t i = 0; i < t.tri.size(); ++i) {
    if (!kept[i]) continue;
    for (int k = 0; k < 3; ++k) {
      const int nb = t.nbr[i][k];
      if (nb >= 0 && kept[nb]) continue;
      const int from = t.tri[i][(k + 1) % 3];
      const int to = t.tri[i][(k + 2) % 3];
      outgoing[from].push_back(static_cast<int>(edges.size()));
      edges.push_back({from, to});
    }
  }

  std::vector<Polygon> rings;
  for (std::size_t start = 0; start < edges.size(); ++start) {
    if (edges[start].used) continue;
    Polygon ring;
    int current = static_cast<int>(start);
    while (true) {
      Edge& e = edges[current];
      e.used = true;
      ring.vertices.push_back(pt(e.from));
      // At a pinch vertex take the tightest clockwise turn so each region
      // closes on its own.
      const Point2 back = pt(e.from) - pt(e.to);
      int next = -1;
      double best = INFINITY;
      for (const int cand : outgoing[e.to]) {
        const double turn = cw_angle(back, pt(edges[cand].to) - pt(e.to));
        if (turn < best) {
          best = turn;
          next = cand;
        }
      }
      if (next < 0 || edges[next].used) break;
      current = next;
    }
    if (ring.signed_area() > 0.0) rings.push_back(std::move(ring));
  }
  return rings;
}

// ---------------------------------------------------------------------------
// Point location

bool point_on_segment(Point2 p, Point2 a, Point2 b, double tolerance) {
  const double len = distance(a, b);
  const double scale = std::max({1.0, std::fabs(a.x), std::fabs(a.y), std::fabs(b.x), std::fabs(b.y)});
  if (std::fabs(orient(a, b, p)) > tolerance * scale * std::max(len, 1.0)) return false;
  return p.x >= std::min(a.x, b.x) - tolerance * scale && p.x <= std::max(a.x, b.x) + tolerance * scale &&
         p.y >= std::min(a.y, b.y) - tolerance * scale && p.y <= std::max(a.y, b.y) + tolerance * scale;
}

bool point_in_polygon(Point2 p, const Polygon& polygon) {
  const auto& v = polygon.vertices;
  const std::size_t n = v.size();
  if (n == 0) return false;
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    if (point_on_segment(p, v[j], v[i])) return true;
    if ((v[i].y > p.y) != (v[j].y > p.y)) {
      const double x_cross = v[j].x + (p.y - v[j].y) * (v[i].x - v[j].x) / (v[i].y - v[j].y);
      if (p.x < x_cross) inside = !inside;
    }
  }
  return inside;
}

bool point_in_region(Point2 p, std::span<const Polygon> polygons) { return containing_polygon(p, polygons) >= 0; }

int containing_polygon(Point2 p, std::span<const Polygon> polygons) {
  for (std::size_t i = 0; i < polygons.size(); ++i)
    if (point_in_polygon(p, polygons[i])) return static_cast<int>(i);
  return -1;
}

// ---------------------------------------------------------------------------
// Explored map

ExploredMap::ExploredMap(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InvalidParameter("ExploredMap: alpha must be finite and > 0");
}

void ExploredMap::record(std::span<const Point2> surface_points, Point2 bottom_point_projected) {
  auto append = [this](Point2 p) {
    if (std::find(points_.begin(), points_.end(), p) == points_.end()) points_.push_back(p);
  };
  for (const auto& p : surface_points) append(p);
  append(bottom_point_projected);
  rebuild();
}

void ExploredMap::rebuild() {
  polygons_.clear();
  if (points_.size() < 3) return;
  polygons_ = alpha_shape(points_, alpha_);
}

ExploredMap record_exploration(ExploredMap map, std::span<const Point2> surface_points,
                               Point2 bottom_point_projected) {
  map.record(surface_points, bottom_point_projected);
  return map;
}

// ---------------------------------------------------------------------------
// Ring text format

std::string format_ring(const Polygon& polygon, int precision) {
  std::string out = "ring:";
  char buf[96];
  for (const auto& v : polygon.vertices) {
    std::snprintf(buf, sizeof(buf), " (%.*f,%.*f)", precision, v.x, precision, v.y);
    out += buf;
  }
  return out;
}

void write_rings(std::ostream& out, std::span<const Polygon> polygons, int precision) {
  for (const auto& p : polygons) out << format_ring(p, precision) << "\n";
}

std::vector<Polygon> read_rings(std::istream& in, Frame frame) {
  std::vector<Polygon> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    if (line.compare(first, 5, "ring:") != 0)
      throw LoadError("line " + std::to_string(line_no) + ": expected 'ring:'");
    Polygon poly;
    poly.frame = frame;
    std::istringstream tokens(line.substr(first + 5));
    std::string tok;
    while (tokens >> tok) {
      Point2 p;
      if (std::sscanf(tok.c_str(), "(%lf,%lf)", &p.x, &p.y) != 2)
        throw LoadError("line " + std::to_string(line_no) + ": bad vertex '" + tok + "'");
      poly.vertices.push_back(p);
    }
    out.push_back(std::move(poly));
  }
  return out;
}

}  // namespace seagrass
