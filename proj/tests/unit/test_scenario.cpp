#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "vap/scenario.hpp"

using namespace vap;
using namespace vap::scenario;

namespace {

ScenarioSpec empty_street(int frames = 10) {
  ScenarioSpec s;
  s.name = "static";
  s.frames = frames;
  s.scenes = {"street"};
  s.schedule = {{"street", 0, frames}};
  return s;
}

}  // namespace

TEST_CASE("static spec renders identical background frames") {
  ScenarioRun run(empty_street(), default_catalog());
  Frame a = run.render_frame(0);
  Frame b = run.render_frame(7);
  CHECK(a.pixels == b.pixels);
}

TEST_CASE("linear trajectory advances the ground-truth center 1 px per frame") {
  ScenarioSpec s = empty_street(101);
  ObjectTrack obj;
  obj.category = "car";
  obj.width = 10;
  obj.height = 10;
  obj.waypoints = {{0, 10.0, 40.0}, {100, 110.0, 40.0}};
  s.objects.push_back(obj);

  GroundTruth truth(s, default_catalog());
  for (int f = 0; f <= 100; ++f) {
    const auto& objs = truth.objects_in(f);
    REQUIRE(objs.size() == 1);
    CHECK(objs[0].box.cx() == doctest::Approx(10.0 + f).epsilon(0.51));
    CHECK(objs[0].box.cy() == doctest::Approx(40.0).epsilon(0.51));
  }
  // outside the waypoint range the object does not exist
  ScenarioSpec late = empty_street(50);
  ObjectTrack obj2 = obj;
  obj2.waypoints = {{10, 30.0, 40.0}, {20, 40.0, 40.0}};
  late.objects.push_back(obj2);
  GroundTruth t2(late, default_catalog());
  CHECK(t2.objects_in(5).empty());
  CHECK(t2.objects_in(25).empty());
  CHECK(t2.objects_in(15).size() == 1);
}

TEST_CASE("lighting gain scales the mean intensity exactly") {
  ScenarioSpec s = empty_street(20);
  s.lighting = {{10, 20, 0.5}};
  ScenarioRun run(s, default_catalog());
  Frame baseline = run.render_frame(5);
  Frame dimmed = run.render_frame(15);
  double mean_base = 0.0, mean_dim = 0.0;
  for (float v : baseline.pixels) mean_base += v;
  for (float v : dimmed.pixels) mean_dim += v;
  mean_base /= static_cast<double>(baseline.pixels.size());
  mean_dim /= static_cast<double>(dimmed.pixels.size());
  CHECK(mean_dim == doctest::Approx(0.5 * mean_base).epsilon(1e-6));
}

TEST_CASE("render is deterministic per seed") {
  ScenarioSpec s = presets::tiny_demo();
  ScenarioRun a(s, default_catalog());
  ScenarioRun b(s, default_catalog());
  for (int f : {0, 10, 40}) CHECK(a.render_frame(f).pixels == b.render_frame(f).pixels);
}

TEST_CASE("region truth resolves by best overlap with visibility") {
  ScenarioSpec s = empty_street(30);
  ObjectTrack obj;
  obj.category = "car";
  obj.width = 12;
  obj.height = 10;
  obj.view_tag = "elevated";
  obj.waypoints = {{0, 30.0, 30.0}, {29, 30.0, 30.0}};
  s.objects.push_back(obj);
  s.occlusions = {{0, 10, 15, 0.2}};

  GroundTruth truth(s, default_catalog());
  BoundingBox near{24, 25, 12, 10};
  RegionTruth t = truth.region_truth(5, near);
  REQUIRE(t.category.has_value());
  CHECK(*t.category == default_catalog().index_of("car"));
  CHECK(t.view_tag == "elevated");
  CHECK(t.visibility == doctest::Approx(1.0));
  CHECK(truth.region_truth(12, near).visibility == doctest::Approx(0.2));
  CHECK(!truth.region_truth(5, {80, 80, 10, 10}).category.has_value());
}

TEST_CASE("bootstrap tallies co-appearances per scene segment") {
  const CategoryCatalog& catalog = default_catalog();
  // three scenarios; person and bicycle co-appear in all three
  std::vector<ScenarioSpec> suite;
  for (int i = 0; i < 3; ++i) {
    ScenarioSpec s = empty_street(30);
    s.name = "clip" + std::to_string(i);
    ObjectTrack person;
    person.category = "person";
    person.width = 10;
    person.height = 14;
    person.waypoints = {{0, 20.0, 40.0}, {29, 40.0, 40.0}};
    ObjectTrack bicycle = person;
    bicycle.category = "bicycle";
    bicycle.waypoints = {{0, 60.0, 40.0}, {29, 80.0, 40.0}};
    s.objects.push_back(person);
    s.objects.push_back(bicycle);
    suite.push_back(s);
  }
  context::ContextState state =
      bootstrap_context(suite, scene_catalog_from(suite), catalog, 1.0);
  std::size_t person = catalog.index_of("person");
  std::size_t bicycle = catalog.index_of("bicycle");
  CHECK(state.oo.count(person, bicycle) == 3.0);
  CHECK(state.oo.count(bicycle, person) == 3.0);
  CHECK(state.so.count(0, person) == 3.0);
  CHECK(state.so.count(0, bicycle) == 3.0);
}

TEST_CASE("car-only street suite concentrates the street row on car") {
  const CategoryCatalog& catalog = default_catalog();
  ScenarioSpec s = empty_street(20);
  ObjectTrack car;
  car.category = "car";
  car.width = 14;
  car.height = 10;
  car.waypoints = {{0, 20.0, 40.0}, {19, 60.0, 40.0}};
  s.objects.push_back(car);
  context::ContextState state =
      bootstrap_context({s}, scene_catalog_from({s}), catalog, 25.0);
  std::vector<double> row = state.so.normalized_row(0);
  std::size_t car_id = catalog.index_of("car");
  for (std::size_t c = 0; c < catalog.size(); ++c)
    if (c != car_id) CHECK(row[car_id] > row[c]);
  double total = 0.0;
  for (double v : row) total += v;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("empty-object suite leaves uniformly smoothed rows") {
  const CategoryCatalog& catalog = default_catalog();
  ScenarioSpec s = empty_street(10);
  context::ContextState state = bootstrap_context({s}, scene_catalog_from({s}), catalog, 25.0);
  std::vector<double> row = state.so.normalized_row(0);
  for (double v : row) CHECK(v == doctest::Approx(1.0 / catalog.size()).epsilon(1e-12));
}

TEST_CASE("spec JSON round trip preserves every field") {
  ScenarioSpec s = presets::ambiguity_suite()[0];
  s.lighting = {{5, 10, 0.8}};
  s.occlusions = {{0, 20, 25, 0.3}};
  std::string path = (std::filesystem::temp_directory_path() / "vap_spec.json").string();
  save_spec(s, path);
  ScenarioSpec loaded = load_spec(path);
  CHECK(loaded.name == s.name);
  CHECK(loaded.frames == s.frames);
  CHECK(loaded.seed == s.seed);
  CHECK(loaded.scenes == s.scenes);
  REQUIRE(loaded.objects.size() == s.objects.size());
  CHECK(loaded.objects[0].category == s.objects[0].category);
  CHECK(loaded.objects[0].waypoints.size() == s.objects[0].waypoints.size());
  REQUIRE(loaded.injections.size() == s.injections.size());
  CHECK(loaded.injections[0].partner == s.injections[0].partner);
  CHECK(loaded.injections[0].ambiguity == s.injections[0].ambiguity);
  REQUIRE(loaded.lighting.size() == 1);
  CHECK(loaded.lighting[0].gain == 0.8);
  REQUIRE(loaded.occlusions.size() == 1);
  CHECK(loaded.occlusions[0].visibility == 0.3);
  // render identically from both
  ScenarioRun ra(s, default_catalog());
  ScenarioRun rb(loaded, default_catalog());
  CHECK(ra.render_frame(3).pixels == rb.render_frame(3).pixels);
  std::remove(path.c_str());
}

TEST_CASE("validation names the offending field") {
  const CategoryCatalog& catalog = default_catalog();

  ScenarioSpec gap = empty_street(20);
  gap.schedule = {{"street", 0, 10}, {"street", 12, 20}};
  CHECK_THROWS_WITH_AS(gap.validate(catalog),
                       doctest::Contains("schedule has a gap or overlap"), Error);

  ScenarioSpec unknown = empty_street(10);
  ObjectTrack obj;
  obj.category = "spaceship";
  obj.waypoints = {{0, 30.0, 30.0}};
  unknown.objects.push_back(obj);
  CHECK_THROWS_WITH_AS(unknown.validate(catalog), doctest::Contains("objects[0]"), Error);

  ScenarioSpec outside = empty_street(10);
  ObjectTrack far_obj;
  far_obj.category = "car";
  far_obj.width = 20;
  far_obj.height = 20;
  far_obj.waypoints = {{0, 5.0, 5.0}};
  outside.objects.push_back(far_obj);
  CHECK_THROWS_WITH_AS(outside.validate(catalog),
                       doctest::Contains("trajectory leaves frame bounds"), Error);

  ScenarioSpec bad_inj = empty_street(10);
  bad_inj.injections = {{"car", "boat", "", 1.5, 0.0}};
  CHECK_THROWS_WITH_AS(bad_inj.validate(catalog), doctest::Contains("ambiguity"), Error);
}

TEST_CASE("presets validate against the default catalog") {
  for (const char* name : {"tiny", "ambiguity", "occlusion", "viewpoint"}) {
    for (const auto& spec : presets::by_name(name))
      CHECK_NOTHROW(spec.validate(default_catalog()));
    for (const auto& spec : presets::bootstrap_suite(name))
      CHECK_NOTHROW(spec.validate(default_catalog()));
  }
}

TEST_CASE("elevated view rotates the category texture") {
  const CategoryCatalog& catalog = default_catalog();
  std::size_t bicycle = catalog.index_of("bicycle");
  TextureParams canonical = category_texture(catalog, bicycle, "");
  TextureParams elevated = category_texture(catalog, bicycle, "elevated");
  CHECK(elevated.orientation == doctest::Approx(canonical.orientation + M_PI / 8.0));
  CHECK(elevated.frequency == canonical.frequency);
}
