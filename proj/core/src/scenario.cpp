#include "vap/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include <json.hpp>

#include "vap/rng.hpp"

namespace vap::scenario {

namespace {

constexpr double kFrequencies[3] = {0.12, 0.20, 0.30};

std::string field(const std::string& scenario, const std::string& key) {
  return "scenario '" + scenario + "': " + key;
}

double texture_value(const TextureParams& p, double dx, double dy, double phase,
                     double contrast) {
  const double cos_t = std::cos(p.orientation);
  const double sin_t = std::sin(p.orientation);
  double along = dx * cos_t + dy * sin_t;
  double wave;
  if (!p.broadband) {
    wave = std::sin(2.0 * M_PI * p.frequency * along + phase);
  } else {
    double across = -dx * sin_t + dy * cos_t;
    double diag = dx * std::cos(p.orientation + 1.1) + dy * std::sin(p.orientation + 1.1);
    wave = 0.5 * std::sin(2.0 * M_PI * p.frequency * along + phase) +
           0.3 * std::sin(2.0 * M_PI * 1.7 * p.frequency * across + 1.7 * phase) +
           0.2 * std::sin(2.0 * M_PI * 0.6 * p.frequency * diag + 2.4 * phase);
  }
  return 0.5 + 0.5 * contrast * wave;
}

std::array<double, 3> tint_from_hash(std::uint64_t h) {
  std::array<double, 3> tint;
  for (int c = 0; c < 3; ++c) tint[c] = 0.55 + 0.45 * hash_to_unit(hash_combine(h, c + 1));
  return tint;
}

double view_orientation_shift(const std::string& view_tag) {
  if (view_tag.empty()) return 0.0;
  if (view_tag == "elevated") return M_PI / 8.0;
  return M_PI / 6.0;
}

}  // namespace

TextureParams category_texture(const CategoryCatalog& catalog, std::size_t category,
                               const std::string& view_tag) {
  if (category >= catalog.size()) throw Error("texture: category outside catalog");
  TextureParams p;
  p.orientation = M_PI * static_cast<double>(category % 8) / 8.0 +
                  view_orientation_shift(view_tag);
  p.frequency = kFrequencies[(category / 8) % 3];
  p.broadband = catalog.kind(category) == CategoryKind::Natural;
  p.tint = tint_from_hash(hash_combine(0xface5u, category));
  return p;
}

TextureParams texture_by_id(int texture_id) {
  if (texture_id < 0) throw Error("texture: negative texture id");
  TextureParams p;
  std::size_t id = static_cast<std::size_t>(texture_id);
  p.orientation = M_PI * static_cast<double>(id % 8) / 8.0;
  p.frequency = kFrequencies[(id / 8) % 3];
  p.broadband = id % 5 == 4;
  p.tint = tint_from_hash(hash_combine(0x7e57u, id));
  return p;
}

Frame texture_patch(const TextureParams& params, int width, int height, double phase,
                    double contrast) {
  if (width < 2 || height < 2) throw DegenerateInputError("texture patch: too small");
  Frame out(width, height);
  double cx = 0.5 * width, cy = 0.5 * height;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      double v = texture_value(params, x - cx, y - cy, phase, contrast);
      for (int c = 0; c < 3; ++c)
        out.at(x, y, c) = static_cast<float>(std::clamp(v * params.tint[c], 0.0, 1.0));
    }
  }
  return out;
}

Frame object_crop(const CategoryCatalog& catalog, std::size_t category,
                  const std::string& view_tag, int width, int height, double phase,
                  double contrast, int margin) {
  if (width < 2 || height < 2) throw DegenerateInputError("object crop: too small");
  TextureParams params = category_texture(catalog, category, view_tag);
  bool ellipse = catalog.kind(category) == CategoryKind::Natural;
  int full_w = width + 2 * margin, full_h = height + 2 * margin;
  Frame out(full_w, full_h, 0.32f);
  double cx = 0.5 * full_w, cy = 0.5 * full_h;
  for (int y = 0; y < full_h; ++y) {
    for (int x = 0; x < full_w; ++x) {
      double dx = x - cx, dy = y - cy;
      if (x < margin || y < margin || x >= margin + width || y >= margin + height) continue;
      if (ellipse) {
        double ex = dx / (0.5 * width), ey = dy / (0.5 * height);
        if (ex * ex + ey * ey > 1.0) continue;
      }
      double v = texture_value(params, dx, dy, phase, contrast);
      for (int c = 0; c < 3; ++c)
        out.at(x, y, c) = static_cast<float>(std::clamp(v * params.tint[c], 0.0, 1.0));
    }
  }
  return out;
}

void ScenarioSpec::validate(const CategoryCatalog& catalog) const {
  if (frames < 0) throw Error(field(name, "frames must be >= 0"));
  if (width < 32 || height < 32) throw Error(field(name, "width/height must be >= 32"));
  if (scenes.empty()) throw Error(field(name, "scenes list must be non-empty"));
  std::set<std::string> scene_set(scenes.begin(), scenes.end());
  if (scene_set.size() != scenes.size()) throw Error(field(name, "scenes contains duplicates"));

  if (frames == 0) {
    if (!schedule.empty() || !objects.empty())
      throw Error(field(name, "a zero-frame run cannot schedule scenes or objects"));
    return;
  }
  if (schedule.empty()) throw Error(field(name, "schedule must be non-empty"));
  std::vector<SceneSegment> sorted = schedule;
  std::sort(sorted.begin(), sorted.end(),
            [](const SceneSegment& a, const SceneSegment& b) { return a.from < b.from; });
  if (sorted.front().from != 0) throw Error(field(name, "schedule must start at frame 0"));
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (!scene_set.count(sorted[i].scene))
      throw Error(field(name, "schedule scene '" + sorted[i].scene + "' not in scenes"));
    if (sorted[i].to <= sorted[i].from)
      throw Error(field(name, "schedule segment has empty range"));
    if (i + 1 < sorted.size() && sorted[i].to != sorted[i + 1].from)
      throw Error(field(name, "schedule has a gap or overlap at frame " +
                              std::to_string(sorted[i].to)));
  }
  if (sorted.back().to != frames)
    throw Error(field(name, "schedule must cover all frames"));

  for (std::size_t o = 0; o < objects.size(); ++o) {
    const ObjectTrack& obj = objects[o];
    std::string key = "objects[" + std::to_string(o) + "]";
    if (!catalog.has(obj.category))
      throw Error(field(name, key + ".category '" + obj.category + "' not in catalog"));
    if (obj.width <= 0 || obj.height <= 0)
      throw Error(field(name, key + " has non-positive size"));
    if (obj.waypoints.empty()) throw Error(field(name, key + ".waypoints is empty"));
    for (std::size_t w = 0; w < obj.waypoints.size(); ++w) {
      const Waypoint& wp = obj.waypoints[w];
      if (wp.frame < 0 || wp.frame >= frames)
        throw Error(field(name, key + ".waypoints frame outside run"));
      if (w > 0 && obj.waypoints[w - 1].frame >= wp.frame)
        throw Error(field(name, key + ".waypoints must have increasing frames"));
      if (wp.x - 0.5 * obj.width < 0 || wp.x + 0.5 * obj.width > width ||
          wp.y - 0.5 * obj.height < 0 || wp.y + 0.5 * obj.height > height)
        throw Error(field(name, key + " trajectory leaves frame bounds"));
    }
  }

  for (const auto& seg : lighting) {
    if (seg.from < 0 || seg.to > frames || seg.to <= seg.from)
      throw Error(field(name, "lighting segment range invalid"));
    if (!(seg.gain > 0.0)) throw Error(field(name, "lighting gain must be > 0"));
  }
  for (const auto& inj : injections) {
    if (!catalog.has(inj.category))
      throw Error(field(name, "injections category '" + inj.category + "' not in catalog"));
    if (!catalog.has(inj.partner))
      throw Error(field(name, "injections partner '" + inj.partner + "' not in catalog"));
    if (!(inj.ambiguity >= 0.0 && inj.ambiguity <= 1.0))
      throw Error(field(name, "injections ambiguity outside [0,1]"));
    if (!(inj.noise >= 0.0 && inj.noise <= 0.5))
      throw Error(field(name, "injections noise outside [0,0.5]"));
  }
  for (const auto& occ : occlusions) {
    if (occ.object < 0 || static_cast<std::size_t>(occ.object) >= objects.size())
      throw Error(field(name, "occlusions object index out of range"));
    if (occ.from < 0 || occ.to > frames || occ.to <= occ.from)
      throw Error(field(name, "occlusions frame range invalid"));
    if (!(occ.visibility > 0.0 && occ.visibility <= 1.0))
      throw Error(field(name, "occlusions visibility outside (0,1]"));
  }
}

// ---------------------------------------------------------------------------
// JSON

namespace {

using nlohmann::json;

json spec_to_json(const ScenarioSpec& s) {
  json j;
  j["name"] = s.name;
  j["frames"] = s.frames;
  j["width"] = s.width;
  j["height"] = s.height;
  j["seed"] = s.seed;
  j["scenes"] = s.scenes;
  j["schedule"] = json::array();
  for (const auto& seg : s.schedule)
    j["schedule"].push_back({{"scene", seg.scene}, {"from", seg.from}, {"to", seg.to}});
  j["objects"] = json::array();
  for (const auto& o : s.objects) {
    json jo;
    jo["category"] = o.category;
    jo["width"] = o.width;
    jo["height"] = o.height;
    if (o.texture_id >= 0) jo["texture_id"] = o.texture_id;
    if (!o.view_tag.empty()) jo["view"] = o.view_tag;
    jo["waypoints"] = json::array();
    for (const auto& w : o.waypoints)
      jo["waypoints"].push_back({{"frame", w.frame}, {"x", w.x}, {"y", w.y}});
    j["objects"].push_back(jo);
  }
  j["lighting"] = json::array();
  for (const auto& seg : s.lighting)
    j["lighting"].push_back({{"from", seg.from}, {"to", seg.to}, {"gain", seg.gain}});
  j["injections"] = json::array();
  for (const auto& inj : s.injections) {
    json ji{{"category", inj.category},
            {"partner", inj.partner},
            {"ambiguity", inj.ambiguity},
            {"noise", inj.noise}};
    if (!inj.view_tag.empty()) ji["view"] = inj.view_tag;
    j["injections"].push_back(ji);
  }
  j["occlusions"] = json::array();
  for (const auto& occ : s.occlusions)
    j["occlusions"].push_back({{"object", occ.object},
                               {"from", occ.from},
                               {"to", occ.to},
                               {"visibility", occ.visibility}});
  return j;
}

ScenarioSpec spec_from_json(const json& j) {
  ScenarioSpec s;
  try {
    s.name = j.value("name", std::string("scenario"));
    s.frames = j.at("frames").get<int>();
    s.width = j.value("width", 128);
    s.height = j.value("height", 96);
    s.seed = j.value("seed", std::uint64_t{1});
    s.scenes = j.at("scenes").get<std::vector<std::string>>();
    for (const auto& seg : j.at("schedule"))
      s.schedule.push_back({seg.at("scene").get<std::string>(), seg.at("from").get<int>(),
                            seg.at("to").get<int>()});
    for (const auto& jo : j.value("objects", json::array())) {
      ObjectTrack o;
      o.category = jo.at("category").get<std::string>();
      o.width = jo.value("width", 16);
      o.height = jo.value("height", 16);
      o.texture_id = jo.value("texture_id", -1);
      o.view_tag = jo.value("view", std::string());
      for (const auto& jw : jo.at("waypoints"))
        o.waypoints.push_back(
            {jw.at("frame").get<int>(), jw.at("x").get<double>(), jw.at("y").get<double>()});
      s.objects.push_back(std::move(o));
    }
    for (const auto& seg : j.value("lighting", json::array()))
      s.lighting.push_back(
          {seg.at("from").get<int>(), seg.at("to").get<int>(), seg.at("gain").get<double>()});
    for (const auto& ji : j.value("injections", json::array()))
      s.injections.push_back({ji.at("category").get<std::string>(),
                              ji.at("partner").get<std::string>(),
                              ji.value("view", std::string()),
                              ji.at("ambiguity").get<double>(), ji.value("noise", 0.0)});
    for (const auto& jo : j.value("occlusions", json::array()))
      s.occlusions.push_back({jo.at("object").get<int>(), jo.at("from").get<int>(),
                              jo.at("to").get<int>(), jo.at("visibility").get<double>()});
  } catch (const json::exception& e) {
    throw Error(std::string("scenario: malformed spec: ") + e.what());
  }
  return s;
}

}  // namespace

ScenarioSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("scenario: cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error("scenario: '" + path + "' is not valid JSON: " + std::string(e.what()));
  }
  return spec_from_json(j);
}

void save_spec(const ScenarioSpec& spec, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("scenario: cannot write '" + path + "'");
  out << spec_to_json(spec).dump(1) << "\n";
  if (!out) throw Error("scenario: write to '" + path + "' failed");
}

// ---------------------------------------------------------------------------
// ground truth

GroundTruth::GroundTruth(const ScenarioSpec& spec, const CategoryCatalog& catalog) {
  spec.validate(catalog);
  scene_per_frame_.resize(static_cast<std::size_t>(spec.frames));
  objects_per_frame_.resize(static_cast<std::size_t>(spec.frames));

  std::vector<std::string> scenes = spec.scenes;
  for (const auto& seg : spec.schedule) {
    std::size_t sid = 0;
    while (scenes[sid] != seg.scene) ++sid;
    for (int f = seg.from; f < seg.to; ++f) scene_per_frame_[static_cast<std::size_t>(f)] = sid;
  }

  for (std::size_t o = 0; o < spec.objects.size(); ++o) {
    const ObjectTrack& obj = spec.objects[o];
    std::size_t category = catalog.index_of(obj.category);
    int first = obj.waypoints.front().frame;
    int last = obj.waypoints.back().frame;
    for (int f = first; f <= last; ++f) {
      // piecewise-linear interpolation of the center
      std::size_t k = 0;
      while (k + 1 < obj.waypoints.size() && obj.waypoints[k + 1].frame < f) ++k;
      const Waypoint& a = obj.waypoints[k];
      const Waypoint& b = obj.waypoints[std::min(k + 1, obj.waypoints.size() - 1)];
      double t = b.frame > a.frame
                     ? static_cast<double>(f - a.frame) / static_cast<double>(b.frame - a.frame)
                     : 0.0;
      t = std::clamp(t, 0.0, 1.0);
      double cx = a.x + t * (b.x - a.x);
      double cy = a.y + t * (b.y - a.y);
      BoundingBox box{static_cast<int>(std::lround(cx - 0.5 * obj.width)),
                      static_cast<int>(std::lround(cy - 0.5 * obj.height)), obj.width,
                      obj.height};
      box = box.clamped(spec.width, spec.height);
      if (!box.valid()) continue;

      double visibility = 1.0;
      for (const auto& occ : spec.occlusions)
        if (occ.object == static_cast<int>(o) && f >= occ.from && f < occ.to)
          visibility = occ.visibility;

      objects_per_frame_[static_cast<std::size_t>(f)].push_back(
          {static_cast<int>(o), category, box, obj.view_tag, visibility});
    }
  }
}

std::size_t GroundTruth::scene_of(int frame_index) const {
  if (frame_index < 0 || static_cast<std::size_t>(frame_index) >= scene_per_frame_.size())
    throw Error("ground truth: frame index out of range");
  return scene_per_frame_[static_cast<std::size_t>(frame_index)];
}

const std::vector<GroundTruthObject>& GroundTruth::objects_in(int frame_index) const {
  if (frame_index < 0 || static_cast<std::size_t>(frame_index) >= objects_per_frame_.size())
    throw Error("ground truth: frame index out of range");
  return objects_per_frame_[static_cast<std::size_t>(frame_index)];
}

RegionTruth GroundTruth::region_truth(int frame_index, const BoundingBox& box) const {
  RegionTruth out;
  double best = kMatchIou;
  for (const auto& obj : objects_in(frame_index)) {
    double overlap = iou(box, obj.box);
    if (overlap >= best) {
      best = overlap;
      out.category = obj.category;
      out.view_tag = obj.view_tag;
      out.visibility = obj.visibility;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// rendering

ScenarioRun::ScenarioRun(ScenarioSpec spec, const CategoryCatalog& catalog)
    : spec_(std::move(spec)), catalog_(&catalog), truth_(spec_, catalog) {}

Frame ScenarioRun::render_frame(int index) const {
  if (index < 0 || index >= spec_.frames)
    throw Error("scenario: frame index " + std::to_string(index) + " out of range");

  Frame frame(spec_.width, spec_.height);
  frame.index = index;
  frame.timestamp = index / 25.0;

  std::size_t scene = truth_.scene_of(index);
  for (int y = 0; y < spec_.height; ++y) {
    for (int x = 0; x < spec_.width; ++x) {
      double v = 0.32 + 0.06 * std::sin(2.0 * M_PI * (0.011 * x + 0.017 * y) +
                                        0.9 * static_cast<double>(scene));
      for (int c = 0; c < 3; ++c) frame.at(x, y, c) = static_cast<float>(v);
    }
  }

  for (const auto& obj : truth_.objects_in(index)) {
    const ObjectTrack& track = spec_.objects[static_cast<std::size_t>(obj.object_id)];
    TextureParams params = track.texture_id >= 0
                               ? texture_by_id(track.texture_id)
                               : category_texture(*catalog_, obj.category, obj.view_tag);
    double salt = hash_to_unit(hash_combine(spec_.seed, static_cast<std::uint64_t>(obj.object_id)));
    double phase = 0.13 * 2.0 * M_PI * index + 2.0 * M_PI * salt;
    double contrast = 0.55 + 0.35 * std::sin(0.4 * index + 6.28 * salt);
    bool ellipse = catalog_->kind(obj.category) == CategoryKind::Natural;

    double cx = obj.box.x + 0.5 * obj.box.w;
    double cy = obj.box.y + 0.5 * obj.box.h;
    for (int y = obj.box.y; y < obj.box.y2(); ++y) {
      for (int x = obj.box.x; x < obj.box.x2(); ++x) {
        double dx = x - cx, dy = y - cy;
        if (ellipse) {
          double ex = dx / (0.5 * obj.box.w), ey = dy / (0.5 * obj.box.h);
          if (ex * ex + ey * ey > 1.0) continue;
        }
        double v = texture_value(params, dx, dy, phase, contrast);
        for (int c = 0; c < 3; ++c)
          frame.at(x, y, c) = static_cast<float>(std::clamp(v * params.tint[c], 0.0, 1.0));
      }
    }
  }

  for (const auto& seg : spec_.lighting) {
    if (index >= seg.from && index < seg.to) {
      for (auto& px : frame.pixels)
        px = std::clamp(static_cast<float>(px * seg.gain), 0.0f, 1.0f);
      break;
    }
  }
  return frame;
}

// ---------------------------------------------------------------------------
// bootstrap

context::SceneCatalog scene_catalog_from(const std::vector<ScenarioSpec>& suite) {
  std::vector<std::string> names;
  for (const auto& spec : suite)
    for (const auto& scene : spec.scenes)
      if (std::find(names.begin(), names.end(), scene) == names.end()) names.push_back(scene);
  return context::SceneCatalog(names);
}

context::ContextState bootstrap_context(const std::vector<ScenarioSpec>& suite,
                                        const context::SceneCatalog& scenes,
                                        const CategoryCatalog& catalog, double weight,
                                        double eps_s, double eps_o) {
  if (suite.empty()) throw Error("bootstrap: suite must be non-empty");
  context::ContextState state;
  state.scenes = scenes;
  state.so = context::SOMatrix(scenes.size(), catalog.size(), eps_s);
  state.oo = context::OOMatrix(catalog.size(), eps_o);

  for (const auto& spec : suite) {
    spec.validate(catalog);
    for (const auto& seg : spec.schedule) {
      std::size_t scene_id = state.scenes.index_of(seg.scene);
      std::set<std::size_t> present;
      for (const auto& obj : spec.objects) {
        int first = obj.waypoints.front().frame;
        int last = obj.waypoints.back().frame;
        if (first < seg.to && last >= seg.from) present.insert(catalog.index_of(obj.category));
      }
      for (std::size_t cat : present) state.so.add(scene_id, cat, weight);
      for (auto a = present.begin(); a != present.end(); ++a) {
        auto b = a;
        for (++b; b != present.end(); ++b) state.oo.add_pair(*a, *b, weight);
      }
    }
  }
  return state;
}

// ---------------------------------------------------------------------------
// presets

namespace presets {

ScenarioSpec tiny_demo() {
  ScenarioSpec s;
  s.name = "tiny_demo";
  s.frames = 80;
  s.width = 128;
  s.height = 96;
  s.seed = 11;
  s.scenes = {"street"};
  s.schedule = {{"street", 0, 80}};
  ObjectTrack car;
  car.category = "car";
  car.width = 18;
  car.height = 12;
  car.waypoints = {{0, 14.0, 48.0}, {79, 112.0, 48.0}};
  s.objects.push_back(car);
  return s;
}

std::vector<ScenarioSpec> ambiguity_suite() {
  std::vector<ScenarioSpec> suite;

  ScenarioSpec a;
  a.name = "ambiguity_street_a";
  a.frames = 150;
  a.seed = 21;
  a.scenes = {"street", "coast"};
  a.schedule = {{"street", 0, 150}};
  {
    ObjectTrack car;
    car.category = "car";
    car.width = 18;
    car.height = 12;
    car.waypoints = {{5, 14.0, 30.0}, {145, 112.0, 30.0}};
    a.objects.push_back(car);
    ObjectTrack person;
    person.category = "person";
    person.width = 12;
    person.height = 16;
    person.waypoints = {{10, 112.0, 66.0}, {140, 14.0, 66.0}};
    a.objects.push_back(person);
  }
  a.injections = {{"car", "boat", "", 0.5, 0.03}, {"person", "cow", "", 0.5, 0.03}};
  suite.push_back(a);

  ScenarioSpec b;
  b.name = "ambiguity_coast";
  b.frames = 150;
  b.seed = 22;
  b.scenes = {"street", "coast"};
  b.schedule = {{"coast", 0, 150}};
  {
    ObjectTrack boat;
    boat.category = "boat";
    boat.width = 20;
    boat.height = 12;
    boat.waypoints = {{5, 14.0, 42.0}, {145, 112.0, 42.0}};
    b.objects.push_back(boat);
  }
  b.injections = {{"boat", "car", "", 0.5, 0.03}};
  suite.push_back(b);

  ScenarioSpec c = a;
  c.name = "ambiguity_street_b";
  c.seed = 23;
  c.objects[0].waypoints = {{5, 112.0, 40.0}, {145, 14.0, 40.0}};
  c.objects[1].waypoints = {{8, 14.0, 74.0}, {142, 112.0, 74.0}};
  suite.push_back(c);

  return suite;
}

ScenarioSpec occlusion() {
  ScenarioSpec s;
  s.name = "occlusion";
  s.frames = 160;
  s.seed = 31;
  s.scenes = {"street"};
  s.schedule = {{"street", 0, 160}};
  ObjectTrack car;
  car.category = "car";
  car.width = 18;
  car.height = 12;
  car.waypoints = {{5, 14.0, 44.0}, {155, 112.0, 44.0}};
  s.objects.push_back(car);
  s.occlusions = {{0, 70, 75, 0.15}, {0, 110, 115, 0.15}};
  return s;
}

ScenarioSpec viewpoint_shift() {
  ScenarioSpec s;
  s.name = "viewpoint_shift";
  s.frames = 460;
  s.seed = 41;
  s.scenes = {"street"};
  s.schedule = {{"street", 0, 460}};
  for (int pass = 0; pass < 5; ++pass) {
    ObjectTrack bike;
    bike.category = "bicycle";
    bike.width = 16;
    bike.height = 12;
    bike.view_tag = "elevated";
    int start = 10 + pass * 90;
    bike.waypoints = {{start, 14.0, 40.0 + 3.0 * pass},
                      {start + 60, 112.0, 40.0 + 3.0 * pass}};
    s.objects.push_back(bike);
  }
  return s;
}

std::vector<ScenarioSpec> by_name(const std::string& name) {
  if (name == "tiny") return {tiny_demo()};
  if (name == "ambiguity") return ambiguity_suite();
  if (name == "occlusion") return {occlusion()};
  if (name == "viewpoint") return {viewpoint_shift()};
  throw Error("scenario: unknown preset '" + name +
              "' (expected tiny|ambiguity|occlusion|viewpoint)");
}

namespace {

ScenarioSpec street_crossing(const std::string& name, const std::string& category, int w, int h,
                             std::uint64_t seed) {
  ScenarioSpec s;
  s.name = name;
  s.frames = 60;
  s.seed = seed;
  s.scenes = {"street"};
  s.schedule = {{"street", 0, 60}};
  ObjectTrack obj;
  obj.category = category;
  obj.width = w;
  obj.height = h;
  obj.waypoints = {{2, 14.0, 48.0}, {58, 112.0, 48.0}};
  s.objects.push_back(obj);
  return s;
}

}  // namespace

std::vector<ScenarioSpec> bootstrap_suite(const std::string& name) {
  if (name == "tiny") return {tiny_demo()};
  if (name == "ambiguity") return ambiguity_suite();
  if (name == "occlusion") return {occlusion()};
  if (name == "viewpoint")
    return {viewpoint_shift(), street_crossing("street_car", "car", 18, 12, 71),
            street_crossing("street_person", "person", 12, 16, 72)};
  throw Error("scenario: unknown preset '" + name +
              "' (expected tiny|ambiguity|occlusion|viewpoint)");
}

}  // namespace presets

}  // namespace vap::scenario
