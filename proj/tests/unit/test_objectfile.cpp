#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "vap/objectfile.hpp"
#include "vap/rng.hpp"

using namespace vap;
using namespace vap::objectfile;

namespace {

TrackerConfig test_config() {
  TrackerConfig cfg;
  cfg.q = 0.01;
  cfg.r = 1.0;
  return cfg;
}

Detection make_detection(const ProbabilityVector& probs, int frame, BoundingBox box = {0, 0, 10, 10}) {
  return {box, probs, frame};
}

ProbabilityVector one_hot(std::size_t n, std::size_t hot, double value) {
  ProbabilityVector p(n, 0.0);
  p[hot] = value;
  return p;
}

bool positive_definite(const Eigen::Matrix4d& m) {
  Eigen::LLT<Eigen::Matrix4d> llt(m);
  return llt.info() == Eigen::Success;
}

}  // namespace

TEST_CASE("predict advances position by velocity") {
  TrackerConfig cfg = test_config();
  cfg.q = 1e-12;
  KalmanTrack t = make_track({0.0, 0.0}, cfg);
  t.state << 0.0, 0.0, 1.0, 0.0;
  KalmanTrack next = predict(t);
  CHECK(next.position().x() == doctest::Approx(1.0));
  CHECK(next.position().y() == doctest::Approx(0.0));

  t.state << 5.0, 7.0, 0.0, 0.0;
  next = predict(t);
  CHECK(next.position().x() == doctest::Approx(5.0));
  CHECK(next.position().y() == doctest::Approx(7.0));
}

TEST_CASE("predict strictly increases the covariance trace when q > 0") {
  KalmanTrack t = make_track({0.0, 0.0}, test_config());
  KalmanTrack next = predict(t);
  CHECK(next.covariance.trace() > t.covariance.trace());
}

TEST_CASE("measurement limits: r to zero and r to infinity") {
  TrackerConfig cfg = test_config();
  KalmanTrack t = make_track({10.0, 10.0}, cfg);

  KalmanTrack precise = t;
  precise.r = 1e-12;
  KalmanTrack posterior = update(precise, {12.0, 9.0});
  CHECK(std::abs(posterior.position().x() - 12.0) < 1e-6);
  CHECK(std::abs(posterior.position().y() - 9.0) < 1e-6);

  KalmanTrack blind = t;
  blind.r = 1e12;
  posterior = update(blind, {50.0, 50.0});
  CHECK(std::abs(posterior.position().x() - 10.0) < 1e-6);
  CHECK(std::abs(posterior.position().y() - 10.0) < 1e-6);
}

TEST_CASE("filtered straight-line track beats raw measurements") {
  TrackerConfig cfg = test_config();
  int wins = 0;
  const int trials = 40;
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng(1000 + trial);
    KalmanTrack track = make_track({0.0, 0.0}, cfg);
    double raw_sq = 0.0, filt_sq = 0.0;
    for (int step = 1; step <= 50; ++step) {
      double true_x = step * 1.0;
      double true_y = step * 0.5;
      Eigen::Vector2d z{true_x + rng.next_gaussian(), true_y + rng.next_gaussian()};
      track = predict(track);
      track = update(track, z);
      raw_sq += (z - Eigen::Vector2d{true_x, true_y}).squaredNorm();
      filt_sq += (track.position() - Eigen::Vector2d{true_x, true_y}).squaredNorm();
      CHECK(positive_definite(track.covariance));
      CHECK((track.covariance - track.covariance.transpose()).norm() < 1e-9);
    }
    if (filt_sq < raw_sq) ++wins;
  }
  CHECK(wins >= 38);  // 95%
}

TEST_CASE("diagonal Mahalanobis reduces to Euclidean under unit variance") {
  std::vector<double> mean(4, 0.0), var(4, 1.0);
  std::vector<double> x(4, 0.0);
  x[2] = 1.0;
  CHECK(mahalanobis_diag(x, mean, var) == doctest::Approx(1.0));
  x[0] = 1.0;
  CHECK(mahalanobis_diag(x, mean, var) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("associate basics") {
  SUBCASE("track and detection at the predicted position match") {
    Assignment a = associate({{10.0, 10.0}}, {{5, 5, 10, 10}}, 50.0);
    REQUIRE(a.matches.size() == 1);
    CHECK(a.matches[0] == std::pair<std::size_t, std::size_t>{0, 0});
  }
  SUBCASE("detections beyond the gate spawn new files") {
    Assignment a = associate({{10.0, 10.0}}, {{100, 100, 10, 10}}, 20.0);
    CHECK(a.matches.empty());
    CHECK(a.unmatched_tracks == std::vector<std::size_t>{0});
    CHECK(a.unmatched_detections == std::vector<std::size_t>{0});
  }
  SUBCASE("crossing geometry matches the exhaustive minimal assignment") {
    std::vector<Eigen::Vector2d> predicted{{10.0, 10.0}, {30.0, 10.0}};
    std::vector<BoundingBox> dets{{26, 6, 8, 8}, {6, 6, 8, 8}};  // centers (30,10), (10,10)
    Assignment a = associate(predicted, dets, 50.0);
    REQUIRE(a.matches.size() == 2);
    auto dist = [&](std::size_t t, std::size_t d) {
      return (predicted[t] - Eigen::Vector2d{dets[d].cx(), dets[d].cy()}).norm();
    };
    double direct = dist(0, 0) + dist(1, 1);
    double swapped = dist(0, 1) + dist(1, 0);
    bool expect_swap = swapped < direct;
    for (auto [t, d] : a.matches) CHECK(d == (expect_swap ? (t == 0 ? 1 : 0) : t));
  }
  SUBCASE("a detection is never assigned to two tracks") {
    std::vector<Eigen::Vector2d> predicted{{10.0, 10.0}, {11.0, 10.0}};
    Assignment a = associate(predicted, {{6, 6, 8, 8}}, 50.0);
    CHECK(a.matches.size() == 1);
    CHECK(a.unmatched_tracks.size() == 1);
  }
}

TEST_CASE("first observation is always included and sets the stable label") {
  TrackerConfig cfg = test_config();
  ObjectFile file(1, make_track({5.0, 5.0}, cfg), cfg);
  file.ingest(make_detection(one_hot(5, 2, 0.8), 0), {});
  CHECK(file.included_count() == 1);
  REQUIRE(file.stable_label().has_value());
  CHECK(*file.stable_label() == 2);
  CHECK(file.stable_confidence() == doctest::Approx(0.8));
}

TEST_CASE("adversarial outlier is stored but excluded from the stable statistics") {
  TrackerConfig cfg = test_config();
  cfg.d_max = 3.0;
  ObjectFile file(1, make_track({5.0, 5.0}, cfg), cfg);
  std::size_t car = 0, plant = 4;
  for (int i = 0; i < 20; ++i) file.ingest(make_detection(one_hot(5, car, 0.9), i), {});

  ProbabilityVector adversarial = one_hot(5, plant, 0.95);
  file.ingest(make_detection(adversarial, 20), {});

  CHECK(file.observations().size() == 21);
  CHECK(!file.observations().back().included);
  REQUIRE(file.stable_label().has_value());
  CHECK(*file.stable_label() == car);
  for (std::size_t idx : file.top_set()) CHECK(file.observations()[idx].included);
  CHECK(file.stable_confidence() == doctest::Approx(0.9));
}

TEST_CASE("top set displaces early weak observations") {
  TrackerConfig cfg = test_config();
  cfg.k_top = 10;
  cfg.n_min = 1000;  // keep rejection out of this test
  ObjectFile file(1, make_track({5.0, 5.0}, cfg), cfg);
  std::size_t car = 1;
  for (int i = 0; i < 5; ++i) file.ingest(make_detection(one_hot(4, car, 0.3), i), {});
  CHECK(file.stable_confidence() == doctest::Approx(0.3));
  for (int i = 5; i < 35; ++i) file.ingest(make_detection(one_hot(4, car, 0.9), i), {});
  REQUIRE(file.stable_label().has_value());
  CHECK(*file.stable_label() == car);
  CHECK(file.stable_confidence() == doctest::Approx(0.9));
}

TEST_CASE("perceptual continuity through an ambiguous window") {
  TrackerConfig cfg = test_config();
  ObjectFile file(1, make_track({5.0, 5.0}, cfg), cfg);
  std::size_t car = 2;
  for (int i = 0; i < 10; ++i) file.ingest(make_detection(one_hot(6, car, 0.9), i), {});
  for (int i = 10; i < 15; ++i) {
    ProbabilityVector weak(6, 0.02);
    weak[5] = 0.2;
    file.ingest(make_detection(weak, i), {});
    REQUIRE(file.stable_label().has_value());
    CHECK(*file.stable_label() == car);
    CHECK(file.stable_confidence() == doctest::Approx(0.9));
  }
}

TEST_CASE("empty file has no decision") {
  TrackerConfig cfg = test_config();
  ObjectFile file(1, make_track({0.0, 0.0}, cfg), cfg);
  auto [label, confidence] = file.stable_decision();
  CHECK(!label.has_value());
  CHECK(confidence == 0.0);
}

TEST_CASE("stable confidence never drops while strong observations keep arriving") {
  TrackerConfig cfg = test_config();
  ObjectFile file(1, make_track({0.0, 0.0}, cfg), cfg);
  double prev = 0.0;
  for (int i = 0; i < 30; ++i) {
    double p = 0.5 + 0.4 * (i / 29.0);  // nondecreasing quality
    file.ingest(make_detection(one_hot(3, 1, p), i), {});
    CHECK(file.stable_confidence() >= prev - 1e-12);
    prev = file.stable_confidence();
  }
}

TEST_CASE("store lifecycle: spawn, follow, retire") {
  TrackerConfig cfg = test_config();
  cfg.gate = 30.0;
  cfg.t_lost = 3;
  ObjectFileStore store(cfg);

  std::vector<Detection> dets{make_detection(one_hot(4, 0, 0.9), 0, {10, 10, 10, 10})};
  auto step = store.step(dets, {{}});
  REQUIRE(store.open_files().size() == 1);
  int id = step.file_of_detection[0];
  CHECK(id == store.open_files()[0].id());

  for (int f = 1; f <= 5; ++f) {
    std::vector<Detection> d{make_detection(one_hot(4, 0, 0.9), f, {10 + 2 * f, 10, 10, 10})};
    auto s = store.step(d, {{}});
    CHECK(s.file_of_detection[0] == id);
    CHECK(store.open_files().size() == 1);
  }

  for (int f = 6; f <= 10; ++f) store.step({}, {});
  CHECK(store.open_files().empty());
  REQUIRE(store.closed_files().size() == 1);
  CHECK(store.closed_files()[0].id() == id);
  CHECK(store.closed_files()[0].observations().size() == 6);
}
