#include "seagrass/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "seagrass/error.hpp"
#include "seagrass/imaging.hpp"
#include "seagrass/rng.hpp"

namespace seagrass {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& id, const std::string& msg) {
  throw InvalidAnnotation("annotation '" + id + "': " + msg);
}

}  // namespace

AnnotationSet parse_annotations(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InvalidAnnotation(std::string("malformed annotation JSON: ") + e.what());
  }
  if (!doc.is_array()) throw InvalidAnnotation("annotation document must be an array of entries");
  AnnotationSet set;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const json& e = doc[i];
    std::string id = "#" + std::to_string(i);
    if (!e.is_object()) bad(id, "entry must be an object");
    if (!e.contains("image") || !e["image"].is_string()) bad(id, "missing string field 'image'");
    id = e["image"].get<std::string>();
    AnnotationEntry entry;
    entry.image_id = id;
    for (const char* key : {"width", "height"})
      if (!e.contains(key) || !e[key].is_number_integer() || e[key].get<long long>() <= 0)
        bad(id, std::string("field '") + key + "' must be a positive integer");
    entry.width = e["width"].get<int>();
    entry.height = e["height"].get<int>();
    if (e.contains("regions")) {
      if (!e["regions"].is_array()) bad(id, "'regions' must be an array");
      for (const json& r : e["regions"]) {
        if (!r.is_object() || !r.contains("class") || !r["class"].is_number_integer())
          bad(id, "region needs an integer 'class'");
        const long long c = r["class"].get<long long>();
        if (c < 1 || c > 3) bad(id, "region class must be 1, 2 or 3 (got " + std::to_string(c) + ")");
        if (!r.contains("points") || !r["points"].is_array()) bad(id, "region needs a 'points' array");
        AnnotationRegion region;
        region.label = static_cast<Label>(c);
        for (const json& p : r["points"]) {
          if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
            bad(id, "points must be [x, y] number pairs");
          region.points.push_back({p[0].get<double>(), p[1].get<double>()});
        }
        if (region.points.size() < 3) bad(id, "region polygon needs at least 3 points");
        entry.regions.push_back(std::move(region));
      }
    }
    set.push_back(std::move(entry));
  }
  return set;
}

AnnotationSet load_annotations(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open annotation file: " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_annotations(text.str());
}

std::string to_json(const AnnotationSet& set) {
  json doc = json::array();
  for (const AnnotationEntry& e : set) {
    json regions = json::array();
    for (const AnnotationRegion& r : e.regions) {
      json pts = json::array();
      for (const Point2& p : r.points) pts.push_back({p.x, p.y});
      regions.push_back({{"class", index_of(r.label)}, {"points", pts}});
    }
    doc.push_back({{"image", e.image_id}, {"width", e.width}, {"height", e.height}, {"regions", regions}});
  }
  return doc.dump(1);
}

LabelMask rasterize_annotations(const AnnotationEntry& entry) {
  if (entry.width <= 0 || entry.height <= 0) bad(entry.image_id, "image size must be positive");
  LabelMask mask(entry.width, entry.height);
  for (const AnnotationRegion& r : entry.regions) {
    if (r.label == Label::Background) bad(entry.image_id, "region class must be 1, 2 or 3");
    Polygon poly{{}, Frame::Pixel};
    for (const Point2& p : r.points) {
      if (!(p.x >= 0.0 && p.y >= 0.0 && p.x <= entry.width && p.y <= entry.height))
        bad(entry.image_id, "vertex (" + std::to_string(p.x) + ", " + std::to_string(p.y) + ") outside the image");
      poly.vertices.push_back({p.x - 0.5, p.y - 0.5});
    }
    const BinaryMask fill = fill_polygon(poly, entry.width, entry.height);
    for (int y = 0; y < entry.height; ++y)
      for (int x = 0; x < entry.width; ++x)
        if (fill.at(x, y)) mask.set(x, y, r.label);
  }
  return mask;
}

std::vector<std::string> SplitSpec::violations() const {
  std::vector<std::string> out;
  if (!(train > 0.0 && val > 0.0 && test > 0.0)) out.push_back("split.fractions: all fractions must be positive");
  if (!(std::fabs(train + val + test - 1.0) <= 1e-9)) out.push_back("split.fractions: must sum to 1");
  return out;
}

SplitSizes split_sizes(std::size_t n, const SplitSpec& spec) {
  // The epsilon keeps exact products such as 0.7 * 10 from rounding the wrong way.
  const double nd = static_cast<double>(n);
  SplitSizes s;
  s.train = std::min(n, static_cast<std::size_t>(std::ceil(spec.train * nd - 1e-9)));
  s.val = std::min(n - s.train, static_cast<std::size_t>(std::floor(spec.val * nd + 1e-9)));
  s.test = n - s.train - s.val;
  return s;
}

DatasetSplit split(const std::vector<std::string>& ids, const SplitSpec& spec) {
  if (ids.empty()) throw InvalidInput("split: empty id list");
  if (auto v = spec.violations(); !v.empty()) throw ValidationError(std::move(v));
  std::vector<std::string> order = ids;
  Rng rng(spec.seed);
  for (std::size_t i = order.size() - 1; i > 0; --i) std::swap(order[i], order[rng.index(i + 1)]);
  const SplitSizes sizes = split_sizes(order.size(), spec);
  DatasetSplit out;
  const auto b = order.begin();
  out.train.assign(b, b + static_cast<std::ptrdiff_t>(sizes.train));
  out.val.assign(b + static_cast<std::ptrdiff_t>(sizes.train), b + static_cast<std::ptrdiff_t>(sizes.train + sizes.val));
  out.test.assign(b + static_cast<std::ptrdiff_t>(sizes.train + sizes.val), order.end());
  return out;
}

std::string Transform::describe() const {
  char buf[64];
  switch (kind) {
    case Kind::Rotate90: std::snprintf(buf, sizeof buf, "rotate90 %d", quarter_turns); break;
    case Kind::FlipH: std::snprintf(buf, sizeof buf, "flip_h"); break;
    case Kind::FlipV: std::snprintf(buf, sizeof buf, "flip_v"); break;
    case Kind::Scale: std::snprintf(buf, sizeof buf, "scale %.4f", factor); break;
    case Kind::ZoomCrop: std::snprintf(buf, sizeof buf, "zoom_crop %.4f", factor); break;
  }
  return buf;
}

namespace {

// Destination (x, y) reads source (map(x, y)) exactly; used by the
// non-resampling transforms.
template <typename Map>
std::pair<Raster, LabelMask> remap(const Raster& img, const LabelMask& mask, int w, int h, Map map) {
  Raster out_img(w, h, img.channels());
  LabelMask out_mask(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const auto [sx, sy] = map(x, y);
      for (int c = 0; c < img.channels(); ++c) out_img.set(x, y, c, img.at(sx, sy, c));
      out_mask.set(x, y, mask.at(sx, sy));
    }
  return {std::move(out_img), std::move(out_mask)};
}

double bilinear(const Raster& img, double sx, double sy, int c) {
  sx = std::clamp(sx, 0.0, img.width() - 1.0);
  sy = std::clamp(sy, 0.0, img.height() - 1.0);
  const int x0 = static_cast<int>(std::floor(sx));
  const int y0 = static_cast<int>(std::floor(sy));
  const int x1 = std::min(x0 + 1, img.width() - 1);
  const int y1 = std::min(y0 + 1, img.height() - 1);
  const double fx = sx - x0;
  const double fy = sy - y0;
  const double top = img.at(x0, y0, c) * (1 - fx) + img.at(x1, y0, c) * fx;
  const double bottom = img.at(x0, y1, c) * (1 - fx) + img.at(x1, y1, c) * fx;
  return top * (1 - fy) + bottom * fy;
}

// Output pixel centers map to source coordinates src = origin + (x + 0.5) * step.
std::pair<Raster, LabelMask> resample(const Raster& img, const LabelMask& mask, int w, int h, double ox, double oy,
                                      double step_x, double step_y) {
  Raster out_img(w, h, img.channels());
  LabelMask out_mask(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const double cx = ox + (x + 0.5) * step_x;
      const double cy = oy + (y + 0.5) * step_y;
      for (int c = 0; c < img.channels(); ++c) out_img.set(x, y, c, bilinear(img, cx - 0.5, cy - 0.5, c));
      const int nx = std::clamp(static_cast<int>(std::floor(cx)), 0, mask.width() - 1);
      const int ny = std::clamp(static_cast<int>(std::floor(cy)), 0, mask.height() - 1);
      out_mask.set(x, y, mask.at(nx, ny));
    }
  return {std::move(out_img), std::move(out_mask)};
}

}  // namespace

std::pair<Raster, LabelMask> augment(const Raster& img, const LabelMask& mask,
                                     const std::vector<Transform>& transforms) {
  if (img.width() != mask.width() || img.height() != mask.height())
    throw InvalidInput("augment: image and mask dimensions differ");
  std::pair<Raster, LabelMask> cur{img, mask};
  for (const Transform& t : transforms) {
    const int w = cur.first.width();
    const int h = cur.first.height();
    switch (t.kind) {
      case Transform::Kind::Rotate90: {
        if (t.quarter_turns < 1 || t.quarter_turns > 3) throw InvalidParameter("rotate90: k must be 1, 2 or 3");
        for (int k = 0; k < t.quarter_turns; ++k) {
          const int cw = cur.first.width();
          const int ch = cur.first.height();
          // Source (x, y) lands on (y, cw - 1 - x) of the ch x cw result.
          cur = remap(cur.first, cur.second, ch, cw, [cw](int x, int y) { return std::pair{cw - 1 - y, x}; });
        }
        break;
      }
      case Transform::Kind::FlipH:
        cur = remap(cur.first, cur.second, w, h, [w](int x, int y) { return std::pair{w - 1 - x, y}; });
        break;
      case Transform::Kind::FlipV:
        cur = remap(cur.first, cur.second, w, h, [h](int x, int y) { return std::pair{x, h - 1 - y}; });
        break;
      case Transform::Kind::Scale: {
        if (!(t.factor > 0.0 && t.factor <= 2.0)) throw InvalidParameter("scale: factor must lie in (0, 2]");
        const int nw = std::max(1, static_cast<int>(std::lround(w * t.factor)));
        const int nh = std::max(1, static_cast<int>(std::lround(h * t.factor)));
        cur = resample(cur.first, cur.second, nw, nh, 0.0, 0.0, static_cast<double>(w) / nw,
                       static_cast<double>(h) / nh);
        break;
      }
      case Transform::Kind::ZoomCrop: {
        if (!(t.factor > 0.0 && t.factor <= 1.0)) throw InvalidParameter("zoom_crop: factor must lie in (0, 1]");
        const double cw = w * t.factor;
        const double ch = h * t.factor;
        cur = resample(cur.first, cur.second, w, h, (w - cw) / 2.0, (h - ch) / 2.0, cw / w, ch / h);
        break;
      }
    }
  }
  return cur;
}

Raster enhance_for_rocks(const Raster& img, double gamma) {
  if (img.channels() != 3) throw InvalidInput("enhance_for_rocks: expects a 3-channel image");
  return gamma_correct(equalize_histogram(img), gamma);
}

}  // namespace seagrass
