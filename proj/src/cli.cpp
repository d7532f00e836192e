#include "seagrass/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <numbers>
#include <sstream>

#include "seagrass/darkpatch.hpp"
#include "seagrass/dataset.hpp"
#include "seagrass/error.hpp"
#include "seagrass/label_mask.hpp"
#include "seagrass/mission.hpp"
#include "seagrass/pnm.hpp"
#include "seagrass/rng.hpp"
#include "seagrass/segmentation.hpp"
#include "seagrass/world.hpp"

namespace fs = std::filesystem;

namespace seagrass {

std::vector<Point2> lawnmower(const std::array<double, 4>& bounds, double spacing) {
  const auto [x0, y0, x1, y1] = bounds;
  if (!(spacing > 0.0) || !std::isfinite(spacing)) throw InvalidParameter("spacing must be positive");
  if (!(x1 > x0) || !(y1 >= y0)) throw InvalidParameter("bounds must satisfy x0 < x1 and y0 <= y1");
  std::vector<double> rows;
  for (int k = 0;; ++k) {
    const double y = y0 + k * spacing;
    if (y >= y1 - 1e-9) break;
    rows.push_back(y);
  }
  rows.push_back(y1);
  std::vector<Point2> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const bool forward = i % 2 == 0;
    out.push_back({forward ? x0 : x1, rows[i]});
    out.push_back({forward ? x1 : x0, rows[i]});
  }
  return out;
}

namespace {

// Input problems the user can fix; mapped to exit code 1.
struct UsageError : Error {
  using Error::Error;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

void require_file(const fs::path& p) {
  if (!fs::is_regular_file(p)) throw UsageError("no such file: " + p.string());
}

void require_dir(const fs::path& p) {
  if (!fs::is_directory(p)) throw UsageError("no such directory: " + p.string());
}

void ensure_dir(const fs::path& p) {
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec || !fs::is_directory(p)) throw Error("cannot create directory " + p.string());
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw Error("cannot write " + p.string());
  return f;
}

std::vector<double> parse_numbers(const std::string& text, std::size_t count, const std::string& what) {
  std::vector<double> v;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    double d = 0;
    try {
      d = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || !std::isfinite(d))
      throw UsageError(what + ": not a number: '" + item + "'");
    v.push_back(d);
  }
  if (v.size() != count)
    throw UsageError(what + ": expected " + std::to_string(count) + " comma-separated values");
  return v;
}

std::vector<Label> parse_classes(const std::string& text) {
  std::vector<Label> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    bool found = false;
    for (int c = 0; c < kLabelCount; ++c) {
      const Label l = static_cast<Label>(c);
      if (item == std::to_string(c) || item == label_name(l)) {
        out.push_back(l);
        found = true;
      }
    }
    if (!found) throw UsageError("--classes: unknown class '" + item + "'");
  }
  if (out.empty()) throw UsageError("--classes: empty list");
  return out;
}

std::vector<std::string> read_lines(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw UsageError("cannot open " + p.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    lines.push_back(line.substr(first));
  }
  return lines;
}

Scenario load_with_seed(const fs::path& path, CLI::Option* seed_opt, std::uint64_t seed) {
  require_file(path);
  Scenario s = load_scenario(path);
  if (seed_opt->count() > 0) s.seed = seed;
  return s;
}

// ---- subcommands

struct SurveyArgs {
  std::string scenario, backend = "oracle", out;
  std::uint64_t seed = 0;
  long long max_ticks = 2'000'000;
};

void cmd_survey_run(const SurveyArgs& a, CLI::Option* seed_opt, std::ostream& out) {
  const Scenario s = load_with_seed(a.scenario, seed_opt, a.seed);
  if (a.max_ticks <= 0) throw UsageError("--max-ticks must be positive");
  ensure_dir(a.out);
  std::unique_ptr<SegmenterBackend> backend;
  if (a.backend == "oracle")
    backend = std::make_unique<OracleSegmenter>(s, s.camera);
  else
    backend = baseline_segmenter(BaselineConfig::defaults());
  const MissionLog log = run_mission(s, *backend, a.max_ticks);
  const fs::path dir(a.out);
  {
    auto f = open_out(dir / "trajectory.csv");
    write_trajectory_csv(f, log);
  }
  {
    auto f = open_out(dir / "events.txt");
    write_events(f, log);
  }
  {
    auto f = open_out(dir / "polygons.txt");
    write_polygons(f, log);
  }
  pnm::write_raster(dir / "map.ppm", render_map(s, log));
  out << "patches found " << log.count(EventKind::PatchDetected) << " tracked " << log.count(EventKind::TrackClosed)
      << " skipped " << log.count(EventKind::PatchSkippedExplored) << (log.complete ? "" : " (incomplete)") << "\n";
}

struct DetectArgs {
  std::string image, scenario, out;
  double depth = 2.0;
};

void cmd_detect(const DetectArgs& a, std::ostream& out) {
  require_file(a.image);
  DetectorConfig cfg;
  if (!a.scenario.empty()) {
    require_file(a.scenario);
    cfg = load_scenario(a.scenario).detector;
  }
  if (auto v = cfg.violations(); !v.empty()) throw ValidationError(std::move(v));
  const DarkPatchReport report = detect_dark_patches(pnm::read_raster(a.image), cfg, a.depth);
  if (a.out.empty()) {
    write_report(out, report);
  } else {
    auto f = open_out(a.out);
    write_report(f, report);
  }
}

void cmd_enhance(const std::string& image, double gamma, const std::string& dst) {
  require_file(image);
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw UsageError("--gamma must be positive");
  const Raster img = pnm::read_raster(image);
  if (img.channels() != 3) throw UsageError(image + ": expected a colour (P6) image");
  pnm::write_raster(dst, enhance_for_rocks(img, gamma));
}

void cmd_render(const std::string& scenario, CLI::Option* seed_opt, std::uint64_t seed, const std::string& pose_text,
                const std::string& dst, const std::string& labels) {
  const Scenario s = load_with_seed(scenario, seed_opt, seed);
  const auto p = parse_numbers(pose_text, 4, "--pose");
  VehicleState pose;
  pose.x = p[0];
  pose.y = p[1];
  pose.z = p[2];
  pose.yaw = p[3] * std::numbers::pi / 180.0;
  if (pose.z < 0.0 || pose.z >= s.mission.seabed_depth)
    throw UsageError("--pose: depth must lie in [0, seabed depth)");
  const RenderResult r = render(s, pose, s.camera);
  pnm::write_raster(dst, r.image);
  if (!labels.empty()) write_label_mask(labels, r.labels);
}

void cmd_eval_iou(const std::string& gt_dir, const std::string& pred_dir, const std::string& classes,
                  std::ostream& out) {
  require_dir(gt_dir);
  require_dir(pred_dir);
  const std::vector<Label> labels = parse_classes(classes);
  std::vector<fs::path> names;
  for (const auto& e : fs::directory_iterator(gt_dir))
    if (e.is_regular_file() && e.path().extension() == ".pgm") names.push_back(e.path().filename());
  std::sort(names.begin(), names.end());
  if (names.empty()) throw UsageError("no .pgm masks in " + gt_dir);
  std::vector<std::pair<LabelMask, LabelMask>> pairs;
  for (const fs::path& n : names) {
    require_file(fs::path(pred_dir) / n);
    pairs.emplace_back(read_label_mask(fs::path(gt_dir) / n), read_label_mask(fs::path(pred_dir) / n));
  }
  for (Label l : labels) {
    const Label one[] = {l};
    out << label_name(l) << " " << fmt("%.6f", mean_iou(pairs, one)) << "\n";
  }
  out << "mean " << fmt("%.6f", mean_iou(pairs, labels)) << "\n";
}

void cmd_dataset_masks(const std::string& annotations, const std::string& dir, std::ostream& out) {
  require_file(annotations);
  const AnnotationSet set = load_annotations(annotations);
  for (const AnnotationEntry& e : set)
    if (e.image_id.empty() || e.image_id.find_first_of("/\\") != std::string::npos || e.image_id == "." ||
        e.image_id == "..")
      throw InvalidAnnotation("image id '" + e.image_id + "' is not usable as a file name");
  ensure_dir(dir);
  for (const AnnotationEntry& e : set) write_label_mask(fs::path(dir) / (e.image_id + ".pgm"), rasterize_annotations(e));
  out << set.size() << " masks written\n";
}

void cmd_dataset_split(const std::string& list, const std::string& fractions, std::uint64_t seed,
                       const std::string& dir, std::ostream& out) {
  require_file(list);
  const auto f = parse_numbers(fractions, 3, "--fractions");
  const SplitSpec spec{f[0], f[1], f[2], seed};
  if (auto v = spec.violations(); !v.empty()) throw ValidationError(std::move(v));
  const std::vector<std::string> ids = read_lines(list);
  if (ids.empty()) throw UsageError(list + ": no image ids");
  const DatasetSplit parts = split(ids, spec);
  if (!dir.empty()) {
    ensure_dir(dir);
    const std::pair<const char*, const std::vector<std::string>*> files[] = {
        {"train.txt", &parts.train}, {"val.txt", &parts.val}, {"test.txt", &parts.test}};
    for (const auto& [name, items] : files) {
      auto o = open_out(fs::path(dir) / name);
      for (const std::string& id : *items) o << id << "\n";
    }
  }
  out << parts.train.size() << " " << parts.val.size() << " " << parts.test.size() << "\n";
}

std::vector<Transform> random_transforms(Rng& rng) {
  std::vector<Transform> list;
  const int n = 1 + static_cast<int>(rng.index(3));
  for (int i = 0; i < n; ++i) {
    Transform t;
    switch (rng.index(5)) {
      case 0:
        t.kind = Transform::Kind::Rotate90;
        t.quarter_turns = 1 + static_cast<int>(rng.index(3));
        break;
      case 1:
        t.kind = Transform::Kind::FlipH;
        break;
      case 2:
        t.kind = Transform::Kind::FlipV;
        break;
      case 3:
        t.kind = Transform::Kind::Scale;
        t.factor = std::round(rng.uniform(0.5, 1.5) * 100.0) / 100.0;
        break;
      default:
        t.kind = Transform::Kind::ZoomCrop;
        t.factor = std::round(rng.uniform(0.6, 1.0) * 100.0) / 100.0;
        break;
    }
    list.push_back(t);
  }
  return list;
}

void cmd_dataset_augment(const std::string& pairs_file, std::uint64_t seed, int count, const std::string& dir,
                         std::ostream& out) {
  require_file(pairs_file);
  if (count <= 0) throw UsageError("--count must be positive");
  const fs::path base = fs::path(pairs_file).parent_path();
  std::vector<std::pair<fs::path, fs::path>> pairs;
  for (const std::string& line : read_lines(pairs_file)) {
    std::istringstream in(line);
    std::string img, mask, extra;
    if (!(in >> img >> mask) || (in >> extra)) throw UsageError(pairs_file + ": expected '<image> <mask>': " + line);
    pairs.emplace_back(base / img, base / mask);
  }
  if (pairs.empty()) throw UsageError(pairs_file + ": no pairs");
  for (const auto& [img, mask] : pairs) {
    require_file(img);
    require_file(mask);
  }
  ensure_dir(dir);
  Rng rng(seed);
  auto manifest = open_out(fs::path(dir) / "augment.txt");
  std::size_t written = 0;
  for (const auto& [img_path, mask_path] : pairs) {
    const Raster img = pnm::read_raster(img_path);
    const LabelMask mask = read_label_mask(mask_path);
    for (int k = 0; k < count; ++k) {
      const std::vector<Transform> transforms = random_transforms(rng);
      const auto [ai, am] = augment(img, mask, transforms);
      const std::string stem = img_path.stem().string() + "_aug" + std::to_string(k);
      pnm::write_raster(fs::path(dir) / (stem + ".ppm"), ai);
      write_label_mask(fs::path(dir) / (stem + ".pgm"), am);
      manifest << stem;
      for (const Transform& t : transforms) manifest << " " << t.describe();
      manifest << "\n";
      ++written;
    }
  }
  out << written << " pairs written\n";
}

void cmd_gen_lawnmower(const std::string& bounds, double spacing, const std::string& dst, std::ostream& out) {
  const auto b = parse_numbers(bounds, 4, "--bounds");
  std::vector<Point2> pts;
  try {
    pts = lawnmower({b[0], b[1], b[2], b[3]}, spacing);
  } catch (const InvalidParameter& e) {
    throw UsageError(e.what());
  }
  std::ostringstream text;
  text << "[waypoints]\n";
  for (const Point2& p : pts) text << fmt("%.6g", p.x) << " " << fmt("%.6g", p.y) << "\n";
  if (dst.empty()) {
    out << text.str();
  } else {
    auto f = open_out(dst);
    f << text.str();
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Seagrass inspection simulator and dataset tools", "seagrass"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  std::uint64_t seed = 0;

  SurveyArgs survey;
  auto* sr = app.add_subcommand("survey-run", "Run a full inspection mission and write its logs");
  sr->add_option("--scenario", survey.scenario, "Scenario file")->required();
  sr->add_option("--backend", survey.backend, "Segmentation backend")->capture_default_str()->check(CLI::IsMember({"oracle", "baseline"}));
  auto* sr_seed = sr->add_option("--seed", survey.seed, "Override the scenario seed");
  sr->add_option("--out", survey.out, "Output directory")->required();
  sr->add_option("--max-ticks", survey.max_ticks, "Tick budget")->capture_default_str();

  DetectArgs detect;
  auto* dt = app.add_subcommand("detect", "Report dark patches in a P6 image");
  dt->add_option("image", detect.image, "Input image (P6)")->required();
  dt->add_option("--depth", detect.depth, "Vehicle depth in metres")->capture_default_str();
  dt->add_option("--scenario", detect.scenario, "Take detector settings from this scenario");
  dt->add_option("--out", detect.out, "Write the report here instead of stdout");

  std::string en_image, en_out;
  double gamma = 1.5;
  auto* en = app.add_subcommand("enhance", "Histogram equalization then gamma correction");
  en->add_option("image", en_image, "Input image (P6)")->required();
  en->add_option("--gamma", gamma, "Gamma exponent")->capture_default_str();
  en->add_option("--out", en_out, "Output image")->required();

  std::string rd_scenario, rd_pose, rd_out, rd_labels;
  auto* rd = app.add_subcommand("render", "Render the camera view at a pose");
  rd->add_option("--scenario", rd_scenario, "Scenario file")->required();
  auto* rd_seed = rd->add_option("--seed", seed, "Override the scenario seed");
  rd->add_option("--pose", rd_pose, "x,y,depth,yaw_degrees")->required();
  rd->add_option("--out", rd_out, "Output image (P6)")->required();
  rd->add_option("--labels", rd_labels, "Also write the ground-truth label mask (P5)");

  std::string ev_gt, ev_pred, classes = "1,2,3";
  auto* ev = app.add_subcommand("eval-iou", "Per-class and mean IoU between two mask directories");
  ev->add_option("ground_truth", ev_gt, "Directory of ground-truth .pgm masks")->required();
  ev->add_option("prediction", ev_pred, "Directory of predicted masks with the same names")->required();
  ev->add_option("--classes", classes, "Comma-separated class codes or names")->capture_default_str();

  std::string dm_ann, dm_out;
  auto* dm = app.add_subcommand("dataset-masks", "Rasterize a JSON annotation file into label masks");
  dm->add_option("annotations", dm_ann, "Annotation JSON")->required();
  dm->add_option("--out", dm_out, "Output directory")->required();

  std::string ds_list, ds_out, fractions = "0.7,0.2,0.1";
  auto* ds = app.add_subcommand("dataset-split", "Seeded train/val/test split of an id list");
  ds->add_option("list", ds_list, "Text file with one image id per line")->required();
  ds->add_option("--seed", seed, "Shuffle seed")->capture_default_str();
  ds->add_option("--fractions", fractions, "train,val,test")->capture_default_str();
  ds->add_option("--out", ds_out, "Write train.txt, val.txt and test.txt here");

  std::string da_pairs, da_out;
  int da_count = 1;
  auto* da = app.add_subcommand("dataset-augment", "Seeded geometric augmentation of image/mask pairs");
  da->add_option("pairs", da_pairs, "Text file with '<image.ppm> <mask.pgm>' per line")->required();
  da->add_option("--seed", seed, "Transform seed")->capture_default_str();
  da->add_option("--count", da_count, "Augmented copies per pair")->capture_default_str();
  da->add_option("--out", da_out, "Output directory")->required();

  std::string lm_bounds, lm_out;
  double spacing = 0.0;
  auto* lm = app.add_subcommand("gen-lawnmower", "Print a lawnmower waypoint list");
  lm->add_option("--bounds", lm_bounds, "min_x,min_y,max_x,max_y")->required();
  lm->add_option("--spacing", spacing, "Row spacing in metres")->required();
  lm->add_option("--out", lm_out, "Write to a file instead of stdout");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*sr) cmd_survey_run(survey, sr_seed, out);
    else if (*dt) cmd_detect(detect, out);
    else if (*en) cmd_enhance(en_image, gamma, en_out);
    else if (*rd) cmd_render(rd_scenario, rd_seed, seed, rd_pose, rd_out, rd_labels);
    else if (*ev) cmd_eval_iou(ev_gt, ev_pred, classes, out);
    else if (*dm) cmd_dataset_masks(dm_ann, dm_out, out);
    else if (*ds) cmd_dataset_split(ds_list, fractions, seed, ds_out, out);
    else if (*da) cmd_dataset_augment(da_pairs, seed, da_count, da_out, out);
    else if (*lm) cmd_gen_lawnmower(lm_bounds, spacing, lm_out, out);
  } catch (const ValidationError& e) {
    err << "error: invalid configuration\n";
    for (const std::string& v : e.violations()) err << "  " << v << "\n";
    return kExitValidation;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const LoadError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const InvalidAnnotation& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace seagrass
