#include "vap/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "vap/image.hpp"
#include "vap/log.hpp"
#include "vap/rng.hpp"
#include "vap/textio.hpp"

namespace vap::pipeline {

namespace {

namespace fs = std::filesystem;

// ground-truth boxes jittered by a hashed offset; stands in for a
// learned region-proposal network
class TruthSaliency : public attention::SaliencySource {
 public:
  TruthSaliency(const scenario::GroundTruth& truth, double jitter, std::uint64_t seed)
      : truth_(truth), jitter_(jitter), seed_(seed) {}

  std::vector<BoundingBox> propose(const Frame& frame) override {
    std::vector<BoundingBox> out;
    for (const auto& obj : truth_.objects_in(frame.index)) {
      std::uint64_t h = hash_combine(seed_, static_cast<std::uint64_t>(frame.index));
      h = hash_combine(h, static_cast<std::uint64_t>(obj.object_id));
      int dx = static_cast<int>(std::lround(jitter_ * (2.0 * hash_to_unit(h) - 1.0)));
      int dy = static_cast<int>(
          std::lround(jitter_ * (2.0 * hash_to_unit(hash_combine(h, 1)) - 1.0)));
      BoundingBox box{obj.box.x + dx, obj.box.y + dy, obj.box.w, obj.box.h};
      box = box.clamped(frame.width, frame.height);
      if (box.valid()) out.push_back(box);
    }
    return out;
  }

 private:
  const scenario::GroundTruth& truth_;
  double jitter_;
  std::uint64_t seed_;
};

const char* source_name(attention::ProposalSource s) {
  switch (s) {
    case attention::ProposalSource::Motion: return "motion";
    case attention::ProposalSource::Saliency: return "saliency";
    case attention::ProposalSource::Random: return "random";
  }
  return "?";
}

}  // namespace

struct Engine::ClipState {
  const scenario::ScenarioRun* run = nullptr;
  attention::BackgroundModel bg;
  std::deque<Frame> recent;
  objectfile::ObjectFileStore store;
  reinforce::IdleDetector idle;
  Rng saccade_rng;
  std::unique_ptr<BottomUpClassifier> classifier_owned;
  const BottomUpClassifier* classifier = nullptr;
  std::unique_ptr<SceneClassifier> scene_classifier;
  std::unique_ptr<attention::SaliencySource> saliency;
  int last_frame_index = -1;

  ClipState(int w, int h, const PipelineConfig& cfg, std::uint64_t saccade_seed)
      : bg(w, h, cfg.attention.alpha_bg, cfg.attention.k_bg), store(cfg.tracker),
        idle(cfg.reinforce.idle_window), saccade_rng(saccade_seed) {}
};

Engine::Engine(PipelineConfig config, const CategoryCatalog& catalog,
               const context::SceneCatalog& scenes,
               std::optional<context::ContextState> bootstrap)
    : config_(std::move(config)), catalog_(&catalog), scenes_(scenes),
      buffer_(config_.reinforce.buffer_capacity) {
  config_.validate();

  if (!bootstrap && !config_.context.bootstrap_path.empty())
    bootstrap = context::load_context(catalog, config_.context.bootstrap_path);
  if (bootstrap) {
    if (bootstrap->scenes.names() != scenes_.names())
      throw Error("engine: bootstrap scene list does not match the run's scene catalog");
    context_ = std::move(*bootstrap);
  } else {
    context_.scenes = scenes_;
    context_.so = context::SOMatrix(scenes_.size(), catalog.size(), config_.context.eps_s);
    context_.oo = context::OOMatrix(catalog.size(), config_.context.eps_o);
  }

  if (config_.classifier.kind == ClassifierKind::FeatureStub) train_feature_stub();
  if (config_.gist.enabled) train_gist_svm();
}

std::shared_ptr<const svm::MulticlassSvm> Engine::stub_model() const {
  if (!stub_) throw Error("engine: no feature-stub classifier configured");
  return stub_->model();
}

void Engine::save_model(const std::string& path) const {
  if (!stub_) throw Error("engine: no model to save");
  stub_->model()->save(path);
}

namespace {

std::vector<std::size_t> resolve_categories(const CategoryCatalog& catalog,
                                            const std::vector<std::string>& names,
                                            const char* key) {
  std::vector<std::size_t> out;
  if (names.empty()) {
    for (std::size_t c = 0; c < catalog.size(); ++c) out.push_back(c);
    return out;
  }
  for (const auto& name : names) {
    if (!catalog.has(name))
      throw Error(std::string("config: ") + key + " category '" + name + "' not in catalog");
    out.push_back(catalog.index_of(name));
  }
  return out;
}

}  // namespace

void Engine::train_feature_stub() {
  std::vector<std::size_t> categories =
      resolve_categories(*catalog_, config_.classifier.train_categories,
                         "classifier.train_categories");
  Rng rng(hash_combine(config_.seed, 0x57ab1eULL));

  std::vector<std::vector<double>> features;
  std::vector<int> labels;
  for (std::size_t cat : categories) {
    for (int k = 0; k < config_.classifier.train_patches_per_category; ++k) {
      int w = 12 + static_cast<int>(rng.next_below(9));
      int h = 10 + static_cast<int>(rng.next_below(9));
      double phase = rng.uniform(0.0, 2.0 * M_PI);
      double contrast = rng.uniform(0.45, 0.9);
      Frame crop = scenario::object_crop(*catalog_, cat, "", w, h, phase, contrast);
      features.push_back(features::extract(crop, feature_cfg_));
      labels.push_back(static_cast<int>(cat));
    }
  }

  svm::KernelSpec kernel = config_.classifier.kernel == "rbf"
                               ? svm::KernelSpec::rbf(config_.classifier.rbf_gamma)
                               : svm::KernelSpec::linear();
  svm::TrainOptions options;
  options.C = config_.classifier.svm_c;
  svm::MulticlassSvm model = svm::MulticlassSvm::train(features, labels,
                                                       static_cast<int>(catalog_->size()),
                                                       kernel, options);

  regression_.features = std::move(features);
  regression_.labels = std::move(labels);
  stub_ = std::make_shared<FeatureStubClassifier>(
      *catalog_, feature_cfg_, std::make_shared<const svm::MulticlassSvm>(std::move(model)));
  log::info("engine: feature stub trained, regression accuracy " +
            std::to_string(regression_.accuracy(*stub_->model())));
}

void Engine::train_gist_svm() {
  gist_bank_ = gist::build_gabor_bank();
  std::vector<std::size_t> categories =
      resolve_categories(*catalog_, config_.gist.train_categories, "gist.train_categories");
  Rng rng(hash_combine(config_.seed, 0x915700ULL));

  std::vector<svm::Sample> samples;
  for (std::size_t cat : categories) {
    for (int k = 0; k < config_.gist.train_patches_per_category; ++k) {
      int w = 12 + static_cast<int>(rng.next_below(9));
      int h = 10 + static_cast<int>(rng.next_below(9));
      double phase = rng.uniform(0.0, 2.0 * M_PI);
      double contrast = rng.uniform(0.45, 0.9);
      Frame crop = scenario::object_crop(*catalog_, cat, "", w, h, phase, contrast);
      gist::GistDescriptor d = gist::compute_gist(crop, *gist_bank_);
      samples.push_back({std::move(d.features),
                         catalog_->kind(cat) == CategoryKind::ManMade ? 1 : -1, 1.0});
    }
  }
  bool has_pos = false, has_neg = false;
  for (const auto& s : samples) (s.label > 0 ? has_pos : has_neg) = true;
  if (!has_pos || !has_neg) {
    log::warn("engine: gist training set is single-kind; gist pathway disabled");
    gist_svm_.reset();
    return;
  }

  svm::TrainOptions options;
  options.C = config_.gist.svm_c;
  svm::SvmModel model = svm::train_smo(samples, svm::KernelSpec::linear(), options);
  if (samples.size() >= 10)
    svm::calibrate(model, samples);
  else
    model.set_calibration({-2.0, 0.0});
  gist_svm_ = std::move(model);
}

std::vector<FrameResult> Engine::run_scenario(const scenario::ScenarioSpec& spec) {
  spec.validate(*catalog_);
  if (spec.scenes != scenes_.names())
    throw Error("engine: scenario '" + spec.name +
                "' scene list does not match the engine's scene catalog");

  scenario::ScenarioRun run(spec, *catalog_);
  ClipState clip(spec.width, spec.height, config_,
                 hash_combine(hash_combine(config_.seed, spec.seed), 0x5accadeULL));
  clip.run = &run;

  switch (config_.classifier.kind) {
    case ClassifierKind::Oracle:
      clip.classifier_owned = std::make_unique<OracleClassifier>(*catalog_, run.truth());
      clip.classifier = clip.classifier_owned.get();
      break;
    case ClassifierKind::Confusable: {
      std::vector<ConfusionEntry> entries;
      for (const auto& inj : spec.injections)
        entries.push_back({catalog_->index_of(inj.category), inj.view_tag,
                           catalog_->index_of(inj.partner), inj.ambiguity, inj.noise});
      clip.classifier_owned = std::make_unique<ConfusablePairClassifier>(
          *catalog_, run.truth(), std::move(entries), hash_combine(config_.seed, spec.seed));
      clip.classifier = clip.classifier_owned.get();
      break;
    }
    case ClassifierKind::FeatureStub:
      if (!stub_) throw Error("engine: feature stub was not trained");
      clip.classifier = stub_.get();
      break;
  }

  clip.scene_classifier = std::make_unique<SceneStubClassifier>(
      scenes_.size(), run.truth(), config_.scene_stub.flip_rate, config_.scene_stub.confidence,
      hash_combine(config_.seed, 0x5ce9eULL));

  switch (config_.saliency.kind) {
    case SaliencyKind::None: break;
    case SaliencyKind::Truth:
      clip.saliency = std::make_unique<TruthSaliency>(
          run.truth(), config_.saliency.jitter, hash_combine(config_.seed, 0x5a11ULL));
      break;
    case SaliencyKind::Contrast:
      clip.saliency = std::make_unique<attention::LocalContrastSaliency>(
          attention::LocalContrastSaliency::Config{});
      break;
  }

  std::vector<FrameResult> results;
  results.reserve(static_cast<std::size_t>(spec.frames));
  for (int i = 0; i < spec.frames; ++i)
    results.push_back(process_frame(clip, run.render_frame(i)));
  return results;
}

FrameResult Engine::process_frame(ClipState& clip, const Frame& frame) {
  if (frame.index != clip.last_frame_index + 1)
    throw Error("pipeline: expected frame " + std::to_string(clip.last_frame_index + 1) +
                ", got " + std::to_string(frame.index));
  clip.last_frame_index = frame.index;

  auto guard = [&](const char* stage, auto&& fn) -> decltype(fn()) {
    try {
      return fn();
    } catch (const Error& e) {
      throw Error("frame " + std::to_string(frame.index) + " [" + stage + "]: " + e.what());
    }
  };

  FrameResult res;
  res.frame_index = frame.index;
  res.scene = guard("scene", [&] { return clip.scene_classifier->classify(frame); });

  // attention: motion detection uses the background state from before
  // this frame, then the model absorbs the frame
  clip.recent.push_back(frame);
  if (clip.recent.size() > 5) clip.recent.pop_front();
  std::vector<BoundingBox> motion = guard("motion", [&] {
    std::vector<Frame> window(clip.recent.begin(), clip.recent.end());
    return attention::detect_motion(clip.bg, window, config_.attention);
  });
  guard("background", [&] { clip.bg.update(frame); return 0; });

  std::vector<BoundingBox> saliency_boxes;
  if (clip.saliency)
    saliency_boxes = guard("saliency", [&] { return clip.saliency->propose(frame); });
  std::vector<BoundingBox> saccades = guard("saccade", [&] {
    return attention::random_saccades(frame.width, frame.height, motion, saliency_boxes,
                                      config_.attention, clip.saccade_rng);
  });
  attention::ProposalSet proposals = guard("merge", [&] {
    return attention::merge_proposals(motion, saliency_boxes, saccades, config_.attention);
  });

  // context prior for this frame, from files confirmed in earlier frames
  std::set<std::size_t> confirmed;
  if (config_.pathways.object_files)
    for (const auto& file : clip.store.open_files())
      if (file.confirmed()) confirmed.insert(*file.stable_label());

  ScenePrediction scene_eff = res.scene;
  if (!config_.pathways.scene_context) scene_eff.confidence = 0.0;
  context::ContextPrior prior;
  if (config_.pathways.scene_context) {
    prior = guard("context", [&] {
      return context::prior_from_context(context_.so, context_.oo, res.scene, confirmed,
                                         config_.context.alpha_mix);
    });
  } else {
    prior.values.assign(catalog_->size(), 0.0);
  }

  // per-proposal classification and fusion
  std::vector<std::vector<double>> proposal_features(proposals.proposals.size());
  for (std::size_t p = 0; p < proposals.proposals.size(); ++p) {
    const attention::Proposal& prop = proposals.proposals[p];
    ProposalOutcome out;
    out.proposal = prop;
    Region region{frame.crop(prop.box), prop.box, frame.index};

    out.bottom_up = guard("bottom_up", [&] {
      if (stub_ && clip.classifier == stub_.get()) {
        proposal_features[p] = stub_->extract(region);
        return stub_->classify_from(proposal_features[p]);
      }
      return clip.classifier->classify(region);
    });
    out.bottom_up.validate(catalog_->size());

    if (gist_svm_ && config_.pathways.gist) {
      out.gist = guard("gist", [&] {
        gist::GistDescriptor d = gist::compute_gist(region.crop, *gist_bank_);
        double p_man_made = gist_svm_->probability(d.features);
        itc::GistPrediction gp;
        gp.kind = p_man_made >= 0.5 ? CategoryKind::ManMade : CategoryKind::Natural;
        gp.confidence = std::max(p_man_made, 1.0 - p_man_made);
        return gp;
      });
    }

    out.fused = guard("fusion", [&] {
      return itc::fuse(out.bottom_up, scene_eff, prior, out.gist, config_.fusion, *catalog_);
    });
    res.proposals.push_back(std::move(out));
  }

  // object files consume motion-sourced detections
  std::vector<std::size_t> motion_proposal_idx;
  std::vector<Detection> detections;
  std::vector<std::vector<double>> detection_features;
  for (std::size_t p = 0; p < res.proposals.size(); ++p) {
    if (res.proposals[p].proposal.source != attention::ProposalSource::Motion) continue;
    motion_proposal_idx.push_back(p);
    detections.push_back({res.proposals[p].proposal.box, res.proposals[p].fused.corrected,
                          frame.index});
    detection_features.push_back(proposal_features[p]);
  }

  std::vector<int> file_of_detection(detections.size(), -1);
  if (config_.pathways.object_files) {
    objectfile::ObjectFileStore::StepResult step = guard("tracking", [&] {
      return clip.store.step(detections, detection_features);
    });
    file_of_detection = step.file_of_detection;
    for (std::size_t d = 0; d < detections.size(); ++d)
      res.proposals[motion_proposal_idx[d]].file_id = file_of_detection[d];

    for (const auto& file : clip.store.open_files())
      res.tracks.push_back({file.id(), file.last_box(), file.stable_label(),
                            file.stable_confidence(), file.last_observation_included()});
  }

  // instance accounting against ground truth
  guard("instances", [&] {
    const auto& gt_objects = clip.run->truth().objects_in(frame.index);
    struct Pair {
      double overlap;
      std::size_t gt, det;
    };
    std::vector<Pair> pairs;
    for (std::size_t g = 0; g < gt_objects.size(); ++g)
      for (std::size_t d = 0; d < detections.size(); ++d) {
        double overlap = iou(gt_objects[g].box, detections[d].box);
        if (overlap >= config_.instance_match_iou) pairs.push_back({overlap, g, d});
      }
    std::stable_sort(pairs.begin(), pairs.end(),
                     [](const Pair& a, const Pair& b) { return a.overlap > b.overlap; });
    std::vector<bool> gt_used(gt_objects.size(), false), det_used(detections.size(), false);
    for (const auto& pr : pairs) {
      if (gt_used[pr.gt] || det_used[pr.det]) continue;
      gt_used[pr.gt] = true;
      det_used[pr.det] = true;

      metrics::InstanceRecord rec;
      rec.frame_index = frame.index;
      rec.gt_object_id = gt_objects[pr.gt].object_id;
      rec.gt_category = gt_objects[pr.gt].category;
      rec.file_id = file_of_detection[pr.det];

      if (config_.pathways.object_files && rec.file_id >= 0) {
        const objectfile::ObjectFile* file = nullptr;
        for (const auto& f : clip.store.open_files())
          if (f.id() == rec.file_id) file = &f;
        if (file && file->stable_label()) {
          rec.decision = file->stable_label();
          rec.scores = file->stable_scores();
        }
      } else {
        const auto& fused = res.proposals[motion_proposal_idx[pr.det]].fused;
        rec.decision = fused.corrected.argmax();
        rec.scores = fused.corrected.values;
      }
      res.instances.push_back(std::move(rec));
    }
    std::stable_sort(res.instances.begin(), res.instances.end(),
                     [](const metrics::InstanceRecord& a, const metrics::InstanceRecord& b) {
                       return a.gt_object_id < b.gt_object_id;
                     });
    return 0;
  });

  // context learns from confirmed files
  if (config_.pathways.object_files) {
    std::set<std::size_t> confirmed_now;
    for (const auto& file : clip.store.open_files())
      if (file.confirmed()) confirmed_now.insert(*file.stable_label());
    if (!confirmed_now.empty())
      guard("context_update", [&] {
        context::update_context(context_.so, context_.oo,
                                static_cast<std::size_t>(res.scene.scene_id), confirmed_now);
        return 0;
      });
  }

  // reinforcement: harvest gaps inline, refine only at idle
  clip.idle.observe(!motion.empty());
  if (config_.pathways.reinforcement && config_.reinforce.enabled && stub_ &&
      config_.pathways.object_files) {
    guard("reinforce", [&] {
      std::shared_ptr<const svm::MulticlassSvm> model = stub_->model();
      for (std::size_t d = 0; d < detections.size(); ++d) {
        if (file_of_detection[d] < 0 || detection_features[d].empty()) continue;
        const objectfile::ObjectFile* file = nullptr;
        for (const auto& f : clip.store.open_files())
          if (f.id() == file_of_detection[d]) file = &f;
        if (!file) continue;
        const auto& fused = res.proposals[motion_proposal_idx[d]].fused;
        std::optional<reinforce::GapSample> gap = reinforce::harvest(
            *file, fused, detection_features[d], *model, config_.reinforce.m_near, frame.index);
        if (gap)
          buffer_.push({gap->feature, static_cast<int>(gap->pseudo_label), 1.0}, gap->margin);
      }
      reinforce::RefineOutcome outcome =
          reinforce::maybe_refine(buffer_, clip.idle, model, config_.reinforce, regression_);
      if (outcome.attempted) {
        res.refinement = RefinementRecord{frame.index, outcome.buffer_size,
                                          outcome.pre_accuracy, outcome.post_accuracy,
                                          outcome.accepted, outcome.rolled_back};
        if (outcome.accepted) stub_->publish(outcome.model);
      }
      return 0;
    });
  }

  return res;
}

// ---------------------------------------------------------------------------
// run + artifacts

namespace {

void write_detections_header(std::ostream& out) {
  out << "frame,source,x,y,w,h,scene,scene_confidence,bu_label,bu_max,fused_label,"
         "fused_confidence,file_id\n";
}

void write_detection_rows(std::ostream& out, const FrameResult& fr,
                          const CategoryCatalog& catalog,
                          const context::SceneCatalog& scenes) {
  for (const auto& p : fr.proposals) {
    double bu_max = p.bottom_up.max_value();
    out << fr.frame_index << ',' << source_name(p.proposal.source) << ',' << p.proposal.box.x
        << ',' << p.proposal.box.y << ',' << p.proposal.box.w << ',' << p.proposal.box.h << ','
        << scenes.name(static_cast<std::size_t>(fr.scene.scene_id)) << ','
        << textio::format_double(fr.scene.confidence) << ','
        << (bu_max > 0.0 ? catalog.name(p.bottom_up.argmax()) : std::string("none")) << ','
        << textio::format_double(bu_max) << ','
        << (p.fused.label ? catalog.name(*p.fused.label) : std::string("none")) << ','
        << textio::format_double(p.fused.confidence) << ',' << p.file_id << '\n';
  }
}

void write_tracks_header(std::ostream& out) {
  out << "frame,track_id,x,y,w,h,stable_label,stable_confidence,included\n";
}

void write_track_rows(std::ostream& out, const FrameResult& fr, const CategoryCatalog& catalog) {
  for (const auto& t : fr.tracks) {
    out << fr.frame_index << ',' << t.file_id << ',' << t.box.x << ',' << t.box.y << ','
        << t.box.w << ',' << t.box.h << ','
        << (t.stable_label ? catalog.name(*t.stable_label) : std::string("none")) << ','
        << textio::format_double(t.stable_confidence) << ',' << (t.included ? 1 : 0) << '\n';
  }
}

void write_refinements_csv(std::ostream& out, const std::vector<RefinementRecord>& events) {
  out << "frame,buffer_size,pre_accuracy,post_accuracy,accepted,rolled_back\n";
  for (const auto& e : events) {
    out << e.frame_index << ',' << e.buffer_size << ',' << textio::format_double(e.pre_accuracy)
        << ',' << textio::format_double(e.post_accuracy) << ',' << (e.accepted ? 1 : 0) << ','
        << (e.rolled_back ? 1 : 0) << '\n';
  }
}

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("run: cannot write '" + path.string() + "'");
  out << contents;
  if (!out) throw Error("run: write to '" + path.string() + "' failed");
}

}  // namespace

RunSummary run(const PipelineConfig& config, const std::vector<scenario::ScenarioSpec>& suite,
               const RunOptions& options) {
  if (suite.empty()) throw Error("run: empty scenario suite");
  config.validate();

  const CategoryCatalog& catalog = default_catalog();
  context::SceneCatalog scenes = scenario::scene_catalog_from(suite);
  Engine engine(config, catalog, scenes, std::nullopt);

  RunSummary summary;
  summary.name = "run";
  if (engine.has_stub())
    summary.regression_pre = engine.regression_set().accuracy(*engine.stub_model());

  std::ostringstream detections_csv, tracks_csv;
  write_detections_header(detections_csv);
  write_tracks_header(tracks_csv);

  for (const auto& spec : suite) {
    std::vector<FrameResult> results = engine.run_scenario(spec);
    for (const auto& fr : results) {
      write_detection_rows(detections_csv, fr, catalog, scenes);
      write_track_rows(tracks_csv, fr, catalog);
      summary.instances.insert(summary.instances.end(), fr.instances.begin(),
                               fr.instances.end());
      if (fr.refinement) summary.refinements.push_back(*fr.refinement);
    }
    if (!options.out_dir.empty() && options.dump_frames) {
      fs::path frames_dir = fs::path(options.out_dir) / "frames";
      fs::create_directories(frames_dir);
      scenario::ScenarioRun rerun(spec, catalog);
      char name[64];
      for (int i = 0; i < spec.frames; ++i) {
        std::snprintf(name, sizeof(name), "%s_%05d.ppm", spec.name.c_str(), i);
        image::write_ppm(rerun.render_frame(i), (frames_dir / name).string());
      }
    }
  }

  summary.final_error = metrics::final_error_rate(summary.instances);
  if (engine.has_stub())
    summary.regression_post = engine.regression_set().accuracy(*engine.stub_model());

  if (!options.out_dir.empty()) {
    fs::create_directories(options.out_dir);
    fs::path dir(options.out_dir);
    write_file(dir / "detections.csv", detections_csv.str());
    write_file(dir / "tracks.csv", tracks_csv.str());

    std::ostringstream cum;
    metrics::write_cumulative_error_csv(cum, summary.instances, catalog);
    write_file(dir / "cumulative_error.csv", cum.str());

    std::ostringstream met;
    metrics::write_metrics_csv(met, metrics::per_category_prf(summary.instances, catalog.size()),
                               catalog);
    write_file(dir / "metrics.csv", met.str());

    auto [ap_rows, map] = metrics::mean_average_precision(summary.instances, catalog.size());
    std::ostringstream map_csv;
    metrics::write_map_csv(map_csv, ap_rows, map, catalog);
    write_file(dir / "map.csv", map_csv.str());

    std::ostringstream ref;
    write_refinements_csv(ref, summary.refinements);
    write_file(dir / "refinements.csv", ref.str());

    context::save_context(engine.context_state(), catalog, (dir / "context_final.json").string());
    if (engine.has_stub()) engine.save_model((dir / "model_final.txt").string());
  }
  return summary;
}

std::vector<RunSummary> ablate(const PipelineConfig& config,
                               const std::vector<scenario::ScenarioSpec>& suite,
                               const RunOptions& options,
                               const std::vector<std::string>& subset) {
  struct Step {
    const char* name;
    PathwayToggles toggles;
  };
  const std::vector<Step> steps = {
      {"bottom_up", {false, false, false, false}},
      {"context_fusion", {true, config.pathways.gist, false, false}},
      {"object_files", {true, config.pathways.gist, true, false}},
      {"full",
       {true, config.pathways.gist, true, config.pathways.reinforcement}},
  };
  for (const auto& want : subset) {
    bool known = false;
    for (const auto& step : steps) known = known || want == step.name;
    if (!known)
      throw Error("ablate: unknown configuration '" + want +
                  "' (expected bottom_up|context_fusion|object_files|full)");
  }

  std::vector<RunSummary> summaries;
  std::vector<std::string> names;
  std::vector<std::vector<metrics::InstanceRecord>> per_config;
  for (const auto& step : steps) {
    if (!subset.empty() &&
        std::find(subset.begin(), subset.end(), step.name) == subset.end())
      continue;
    PipelineConfig cfg = config;
    cfg.pathways = step.toggles;
    RunOptions sub;
    if (!options.out_dir.empty()) sub.out_dir = (fs::path(options.out_dir) / step.name).string();
    RunSummary s = run(cfg, suite, sub);
    s.name = step.name;
    names.push_back(step.name);
    per_config.push_back(s.instances);
    summaries.push_back(std::move(s));
  }

  if (!options.out_dir.empty()) {
    std::ostringstream joined;
    metrics::write_ablation_csv(joined, names, per_config);
    write_file(fs::path(options.out_dir) / "ablation_cumulative_error.csv", joined.str());
  }
  return summaries;
}

namespace presets {

PipelineConfig config_for(const std::string& preset) {
  PipelineConfig cfg;
  cfg.scene_stub.flip_rate = 0.0;
  if (preset == "tiny") {
    cfg.seed = 101;
    cfg.classifier.kind = ClassifierKind::Oracle;
    cfg.gist.enabled = false;
    cfg.scene_stub.confidence = 1.0;
    cfg.pathways.reinforcement = false;
    return cfg;
  }
  if (preset == "ambiguity") {
    cfg.seed = 201;
    cfg.classifier.kind = ClassifierKind::Confusable;
    cfg.gist.enabled = false;
    cfg.scene_stub.confidence = 1.0;
    cfg.pathways.reinforcement = false;
    return cfg;
  }
  if (preset == "occlusion") {
    cfg.seed = 301;
    cfg.classifier.kind = ClassifierKind::Oracle;
    cfg.gist.enabled = false;
    cfg.scene_stub.confidence = 1.0;
    cfg.pathways.reinforcement = false;
    return cfg;
  }
  if (preset == "viewpoint") {
    cfg.seed = 401;
    cfg.classifier.kind = ClassifierKind::FeatureStub;
    cfg.classifier.train_categories = {"bicycle", "car", "person", "cow", "boat", "chair"};
    cfg.classifier.train_patches_per_category = 20;
    cfg.gist.enabled = true;
    cfg.gist.train_categories = cfg.classifier.train_categories;
    cfg.scene_stub.confidence = 0.75;
    cfg.reinforce.idle_window = 15;
    cfg.reinforce.n_min_refine = 20;
    return cfg;
  }
  throw Error("config preset: unknown preset '" + preset +
              "' (expected tiny|ambiguity|occlusion|viewpoint)");
}

}  // namespace presets

}  // namespace vap::pipeline
