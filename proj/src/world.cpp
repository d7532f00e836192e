#include "seagrass/world.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "seagrass/error.hpp"
#include "seagrass/rng.hpp"

namespace seagrass {

Label Seafloor::at_world(Point2 p) const {
  if (label_map.empty()) return Label::Background;
  const double fi = std::floor((p.x - origin.x) / resolution);
  const double fj = std::floor((p.y - origin.y) / resolution);
  if (fi < 0 || fj < 0 || fi >= label_map.width() || fj >= label_map.height()) return Label::Background;
  return label_map.at(static_cast<int>(fi), static_cast<int>(fj));
}

bool PatchShape::contains(Point2 p) const {
  if (kind == Kind::Circle) {
    const double dx = p.x - a, dy = p.y - b;
    return dx * dx + dy * dy <= c * c;
  }
  return p.x >= a && p.x <= c && p.y >= b && p.y <= d;
}

Point2 PatchShape::center() const {
  if (kind == Kind::Circle) return {a, b};
  return {(a + c) / 2.0, (b + d) / 2.0};
}

void paint_patch(Seafloor& seafloor, const PatchShape& patch) {
  LabelMask& m = seafloor.label_map;
  for (int j = 0; j < m.height(); ++j) {
    for (int i = 0; i < m.width(); ++i) {
      const Point2 center{seafloor.origin.x + (i + 0.5) * seafloor.resolution,
                          seafloor.origin.y + (j + 0.5) * seafloor.resolution};
      if (patch.contains(center)) m.set(i, j, patch.label);
    }
  }
}

VehicleLimits Scenario::limits() const {
  VehicleLimits l = vehicle;
  l.seabed_depth = mission.seabed_depth;
  return l;
}

Point2 Scenario::start_position() const {
  if (has_start) return start;
  if (!waypoints.empty()) return waypoints.front();
  return {};
}

std::vector<std::string> validate(const Scenario& s) {
  std::vector<std::string> out;
  auto append = [&](const std::vector<std::string>& v, const std::string& prefix) {
    for (const std::string& m : v) out.push_back(prefix + m);
  };
  if (!(s.seafloor.resolution > 0.0) || !std::isfinite(s.seafloor.resolution))
    out.push_back("seafloor.resolution: must be positive");
  if (s.seafloor.label_map.empty()) out.push_back("seafloor.label_map: no label map");
  if (!(s.seafloor.texture.noise_amplitude >= 0.0 && s.seafloor.texture.noise_amplitude < 1.0))
    out.push_back("seafloor.noise: must lie in [0, 1)");
  for (int c = 0; c < kLabelCount; ++c)
    for (double v : s.seafloor.texture.colors[c])
      if (!(v >= 0.0 && v <= 1.0)) {
        out.push_back(std::string("seafloor.color_") + label_name(static_cast<Label>(c)) + ": components must lie in [0, 1]");
        break;
      }
  append(s.water.violations(), "");
  append(s.camera.violations(), "");
  append(s.detector.violations(), "");
  append(s.mission.violations(), "");
  const VehicleLimits& v = s.vehicle;
  if (!(v.max_surge > 0.0)) out.push_back("vehicle.max_surge: must be positive");
  if (!(v.max_heave > 0.0)) out.push_back("vehicle.max_heave: must be positive");
  if (!(v.max_yaw_rate > 0.0)) out.push_back("vehicle.max_yaw_rate: must be positive");
  if (!(v.surge_accel > 0.0)) out.push_back("vehicle.surge_accel: must be positive");
  if (!(v.k_yaw > 0.0)) out.push_back("vehicle.k_yaw: must be positive");
  if (!(v.k_depth > 0.0)) out.push_back("vehicle.k_depth: must be positive");
  if (v.k_depth * s.mission.tick_dt >= 1.0) out.push_back("vehicle.k_depth/mission.tick_dt: need k_depth * tick_dt < 1");
  if (v.k_yaw * s.mission.tick_dt >= 1.0) out.push_back("vehicle.k_yaw/mission.tick_dt: need k_yaw * tick_dt < 1");
  if (s.mission.cruise_speed > v.max_surge) out.push_back("mission.cruise_speed/vehicle.max_surge: cruise speed exceeds limit");
  for (std::size_t i = 0; i < s.patches.size(); ++i) {
    const PatchShape& p = s.patches[i];
    const bool ok = p.kind == PatchShape::Kind::Circle ? p.c > 0.0 : (p.a < p.c && p.b < p.d);
    if (!ok) out.push_back("patches[" + std::to_string(i) + "]: degenerate shape");
  }
  return out;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

class ScenarioParser {
 public:
  ScenarioParser(std::filesystem::path base_dir, std::string source)
      : base_dir_(std::move(base_dir)), source_(std::move(source)) {}

  Scenario parse(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    while (std::getline(in, raw)) {
      ++line_;
      const auto hash = raw.find('#');
      const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
      if (line.empty()) continue;
      if (line.front() == '[') {
        if (line.back() != ']') fail("unterminated section header");
        section_ = trim(line.substr(1, line.size() - 2));
        static const char* known[] = {"seafloor", "water", "camera", "mission", "detector",
                                      "vehicle",  "waypoints", "patches"};
        bool ok = false;
        for (const char* k : known) ok = ok || section_ == k;
        if (!ok) fail("unknown section [" + section_ + "]");
        continue;
      }
      if (section_ == "waypoints") {
        const auto t = split_ws(line);
        if (t.size() != 2) fail("waypoint needs 'x y'");
        s_.waypoints.push_back({number(t[0]), number(t[1])});
        continue;
      }
      if (section_ == "patches") {
        patch_line(line);
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string::npos) fail("expected 'key = value'");
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (key.empty()) fail("empty key");
      if (value.empty()) fail("empty value for '" + key + "'");
      assign(key, value);
    }
    finish();
    return std::move(s_);
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw LoadError(source_ + ":" + std::to_string(line_) + ": " + msg);
  }

  double number(const std::string& t) const {
    double v = 0.0;
    const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || p != t.data() + t.size() || !std::isfinite(v)) fail("invalid number '" + t + "'");
    return v;
  }

  long long integer(const std::string& t) const {
    long long v = 0;
    const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || p != t.data() + t.size()) fail("invalid integer '" + t + "'");
    return v;
  }

  std::uint64_t unsigned_integer(const std::string& t) const {
    std::uint64_t v = 0;
    const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || p != t.data() + t.size()) fail("invalid non-negative integer '" + t + "'");
    return v;
  }

  Rgb triplet(const std::string& value) const {
    const auto t = split_ws(value);
    if (t.size() != 3) fail("expected three numbers");
    return {number(t[0]), number(t[1]), number(t[2])};
  }

  Label label_word(const std::string& w) const {
    for (int c = 0; c < kLabelCount; ++c)
      if (w == label_name(static_cast<Label>(c))) return static_cast<Label>(c);
    if (w == "sand") return Label::Background;
    fail("unknown class '" + w + "'");
  }

  void patch_line(const std::string& line) {
    const auto t = split_ws(line);
    PatchShape p;
    if (t.size() == 5 && t[0] == "circle") {
      p.kind = PatchShape::Kind::Circle;
      p.label = label_word(t[1]);
      p.a = number(t[2]);
      p.b = number(t[3]);
      p.c = number(t[4]);
    } else if (t.size() == 6 && t[0] == "rect") {
      p.kind = PatchShape::Kind::Rect;
      p.label = label_word(t[1]);
      p.a = number(t[2]);
      p.b = number(t[3]);
      p.c = number(t[4]);
      p.d = number(t[5]);
    } else {
      fail("patch needs 'circle <class> cx cy r' or 'rect <class> x0 y0 x1 y1'");
    }
    s_.patches.push_back(p);
  }

  void assign(const std::string& key, const std::string& value) {
    auto set_d = [&](double& dst) { dst = number(value); };
    auto set_i = [&](int& dst) { dst = static_cast<int>(integer(value)); };
    if (section_.empty()) {
      if (key == "name") s_.name = value;
      else if (key == "seed") s_.seed = unsigned_integer(value);
      else unknown(key);
    } else if (section_ == "seafloor") {
      SeafloorTexture& tex = s_.seafloor.texture;
      if (key == "label_map") label_map_ = value, label_map_line_ = line_;
      else if (key == "size_x") set_d(size_x_);
      else if (key == "size_y") set_d(size_y_);
      else if (key == "resolution") set_d(s_.seafloor.resolution);
      else if (key == "origin_x") set_d(s_.seafloor.origin.x);
      else if (key == "origin_y") set_d(s_.seafloor.origin.y);
      else if (key == "noise") set_d(tex.noise_amplitude);
      else if (key == "color_sand") tex.colors[0] = triplet(value);
      else if (key == "color_posidonia") tex.colors[1] = triplet(value);
      else if (key == "color_debris") tex.colors[2] = triplet(value);
      else if (key == "color_rocks") tex.colors[3] = triplet(value);
      else unknown(key);
    } else if (section_ == "water") {
      WaterModel& w = s_.water;
      if (key == "preset") {
        try {
          const std::uint64_t seed = w.rng_seed;
          w = WaterModel::preset(value);
          w.rng_seed = seed;
        } catch (const Error& e) {
          fail(e.what());
        }
      } else if (key == "attenuation") w.attenuation = triplet(value);
      else if (key == "veil") w.backscatter_veil = triplet(value);
      else if (key == "speckle_density") set_d(w.speckle_density);
      else if (key == "speckle_intensity") set_d(w.speckle_intensity);
      else if (key == "seed") w.rng_seed = unsigned_integer(value);
      else unknown(key);
    } else if (section_ == "camera") {
      CameraModel& c = s_.camera;
      if (key == "hfov") set_d(c.hfov_deg);
      else if (key == "vfov") set_d(c.vfov_deg);
      else if (key == "width") set_i(c.image_width);
      else if (key == "height") set_i(c.image_height);
      else unknown(key);
    } else if (section_ == "mission") {
      MissionConfig& m = s_.mission;
      if (key == "survey_depth") set_d(m.survey_depth);
      else if (key == "inspect_altitude") set_d(m.inspect_altitude);
      else if (key == "seabed_depth") set_d(m.seabed_depth);
      else if (key == "cruise_speed") set_d(m.cruise_speed);
      else if (key == "arrival_radius") set_d(m.arrival_radius);
      else if (key == "depth_tolerance") set_d(m.depth_tolerance);
      else if (key == "presence_min_fraction") set_d(m.presence_min_fraction);
      else if (key == "boundary_lost_limit") set_i(m.boundary_lost_limit);
      else if (key == "loop_close_radius") set_d(m.loop_close_radius);
      else if (key == "min_track_path") set_d(m.min_track_path);
      else if (key == "tick_dt") set_d(m.tick_dt);
      else if (key == "explored_alpha") set_d(m.explored_alpha);
      else if (key == "trajectory_stride") set_i(m.trajectory_stride);
      else if (key == "inspect_frames") set_i(m.inspect_frames);
      else if (key == "track_surge") set_d(m.tracking.surge);
      else if (key == "k_tangent") set_d(m.tracking.k_tangent);
      else if (key == "k_offset") set_d(m.tracking.k_offset);
      else if (key == "band_fraction") set_d(m.tracking.band_fraction);
      else if (key == "meadow_side") {
        if (value == "left") m.tracking.meadow_side = MeadowSide::Left;
        else if (value == "right") m.tracking.meadow_side = MeadowSide::Right;
        else fail("meadow_side must be 'left' or 'right'");
      } else if (key == "start") {
        const auto t = split_ws(value);
        if (t.size() != 2) fail("start needs 'x y'");
        s_.start = {number(t[0]), number(t[1])};
        s_.has_start = true;
      } else unknown(key);
    } else if (section_ == "detector") {
      DetectorConfig& d = s_.detector;
      if (key == "white_threshold") set_d(d.white_threshold_base);
      else if (key == "dark_threshold") set_d(d.dark_threshold_base);
      else if (key == "depth_gain") set_d(d.threshold_depth_gain);
      else if (key == "min_patch_area") set_d(d.min_patch_area);
      else if (key == "center_exclusion_fraction") set_d(d.center_exclusion_fraction);
      else unknown(key);
    } else if (section_ == "vehicle") {
      VehicleLimits& v = s_.vehicle;
      if (key == "max_surge") set_d(v.max_surge);
      else if (key == "max_heave") set_d(v.max_heave);
      else if (key == "max_yaw_rate") set_d(v.max_yaw_rate);
      else if (key == "surge_accel") set_d(v.surge_accel);
      else if (key == "k_yaw") set_d(v.k_yaw);
      else if (key == "k_depth") set_d(v.k_depth);
      else unknown(key);
    }
  }

  [[noreturn]] void unknown(const std::string& key) const {
    fail("unknown key '" + key + "'" + (section_.empty() ? std::string() : " in [" + section_ + "]"));
  }

  void finish() {
    Seafloor& sf = s_.seafloor;
    if (!label_map_.empty()) {
      const std::filesystem::path p = base_dir_ / label_map_;
      if (!std::filesystem::exists(p)) {
        line_ = label_map_line_;
        fail("label map not found: " + p.string());
      }
      sf.label_map = read_label_mask(p);
    } else if (sf.resolution > 0.0 && size_x_ > 0.0 && size_y_ > 0.0) {
      const double cells = std::ceil(size_x_ / sf.resolution) * std::ceil(size_y_ / sf.resolution);
      if (cells > 1e8) fail("seafloor grid too large");
      sf.label_map = LabelMask(static_cast<int>(std::ceil(size_x_ / sf.resolution)),
                               static_cast<int>(std::ceil(size_y_ / sf.resolution)));
    }
    if (!sf.label_map.empty())
      for (const PatchShape& p : s_.patches) paint_patch(sf, p);
  }

  std::filesystem::path base_dir_;
  std::string source_;
  int line_ = 0;
  std::string section_;
  Scenario s_;
  std::string label_map_;
  int label_map_line_ = 0;
  double size_x_ = 100.0;
  double size_y_ = 100.0;
};

std::uint64_t pose_key(const VehicleState& pose) {
  std::uint64_t h = mix64(std::bit_cast<std::uint64_t>(pose.x));
  h = hash_combine(h, std::bit_cast<std::uint64_t>(pose.y));
  h = hash_combine(h, std::bit_cast<std::uint64_t>(pose.z));
  return hash_combine(h, std::bit_cast<std::uint64_t>(pose.yaw));
}

// Relative brightness noise in [-1, 1) fixed to each map cell.
double cell_noise(std::uint64_t seed, long long i, long long j) {
  const std::uint64_t h = hash_combine(hash_combine(seed, static_cast<std::uint64_t>(i)), static_cast<std::uint64_t>(j));
  return static_cast<double>(h >> 11) * 0x1.0p-52 - 1.0;
}

// World points under every pixel center, row-major. Same mapping as
// pixel_to_world with the trigonometry hoisted out of the loop.
std::vector<Point2> project_pixels(const VehicleState& pose, const CameraModel& camera, double seabed_depth) {
  const double altitude = seabed_depth - pose.z;
  if (!(altitude > 0.0)) throw InvalidState("camera altitude must be positive");
  const FootprintExtent e = footprint_extent(camera, altitude);
  const int w = camera.image_width;
  const int h = camera.image_height;
  const double c = std::cos(pose.yaw);
  const double s = std::sin(pose.yaw);
  std::vector<double> lateral(w), forward(h);
  for (int u = 0; u < w; ++u) lateral[u] = ((u + 0.5) / w * 2.0 - 1.0) * e.half_lateral;
  for (int v = 0; v < h; ++v) forward[v] = -((v + 0.5) / h * 2.0 - 1.0) * e.half_forward;
  std::vector<Point2> out(static_cast<std::size_t>(w) * h);
  for (int v = 0; v < h; ++v)
    for (int u = 0; u < w; ++u)
      out[static_cast<std::size_t>(v) * w + u] = {pose.x + forward[v] * c - lateral[u] * s,
                                                  pose.y + forward[v] * s + lateral[u] * c};
  return out;
}

}  // namespace

Scenario parse_scenario(const std::string& text, const std::filesystem::path& base_dir,
                        const std::string& source_name) {
  Scenario s = ScenarioParser(base_dir, source_name).parse(text);
  if (auto v = validate(s); !v.empty()) throw ValidationError(std::move(v));
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open scenario file: " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_scenario(text.str(), path.parent_path(), path.string());
}

LabelMask sample_labels(const Scenario& scenario, const VehicleState& pose, const CameraModel& camera) {
  const std::vector<Point2> pts = project_pixels(pose, camera, scenario.mission.seabed_depth);
  LabelMask mask(camera.image_width, camera.image_height);
  for (int v = 0; v < camera.image_height; ++v)
    for (int u = 0; u < camera.image_width; ++u)
      mask.set(u, v, scenario.seafloor.at_world(pts[static_cast<std::size_t>(v) * camera.image_width + u]));
  return mask;
}

RenderResult render(const Scenario& scenario, const VehicleState& pose, const CameraModel& camera) {
  const double altitude = scenario.mission.seabed_depth - pose.z;
  if (!(altitude > 0.0)) throw InvalidState("render: camera altitude must be positive");
  const Seafloor& sf = scenario.seafloor;
  const int w = camera.image_width;
  const int h = camera.image_height;
  RenderResult out{Raster(w, h, 3), LabelMask(w, h)};
  const std::uint64_t noise_seed = hash_combine(scenario.seed, 0x7e57u);
  const std::vector<Point2> pts = project_pixels(pose, camera, scenario.mission.seabed_depth);
  for (int v = 0; v < h; ++v) {
    for (int u = 0; u < w; ++u) {
      const Point2 p = pts[static_cast<std::size_t>(v) * w + u];
      const double fi = std::floor((p.x - sf.origin.x) / sf.resolution);
      const double fj = std::floor((p.y - sf.origin.y) / sf.resolution);
      const bool in_map = !sf.label_map.empty() && fi >= 0 && fj >= 0 && fi < sf.label_map.width() &&
                          fj < sf.label_map.height();
      Label l = Label::Background;
      double gain = 1.0;
      if (in_map) {
        l = sf.label_map.at(static_cast<int>(fi), static_cast<int>(fj));
        gain += sf.texture.noise_amplitude * cell_noise(noise_seed, static_cast<long long>(fi), static_cast<long long>(fj));
      }
      const Rgb& base = sf.texture.colors[index_of(l)];
      out.image.set_rgb(u, v, {base[0] * gain, base[1] * gain, base[2] * gain});
      out.labels.set(u, v, l);
    }
  }
  WaterModel water = scenario.water;
  water.rng_seed = hash_combine(hash_combine(water.rng_seed, scenario.seed), pose_key(pose));
  out.image = add_speckle(attenuate(out.image, water, altitude), water);
  return out;
}

Polygon footprint(const Scenario& scenario, const VehicleState& pose) {
  return footprint(pose, scenario.camera, scenario.mission.seabed_depth);
}

}  // namespace seagrass
