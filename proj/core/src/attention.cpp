#include "vap/attention.hpp"

#include <algorithm>
#include <cmath>

#include "vap/image.hpp"

namespace vap::attention {

BackgroundModel::BackgroundModel(int width, int height, double alpha_bg, double k_bg)
    : width_(width), height_(height), alpha_(alpha_bg), k_(k_bg),
      mean_(static_cast<std::size_t>(width) * height, 0.0),
      var_(static_cast<std::size_t>(width) * height, kVarianceFloor) {
  if (width <= 0 || height <= 0) throw Error("background model: empty dimensions");
  if (!(alpha_bg > 0.0 && alpha_bg <= 1.0)) throw Error("background model: alpha_bg outside (0,1]");
  if (!(k_bg > 0.0)) throw Error("background model: k_bg must be > 0");
}

void BackgroundModel::update(const Frame& frame) {
  if (frame.width != width_ || frame.height != height_)
    throw Error("background model: frame dimensions do not match");
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) {
      std::size_t i = idx(x, y);
      double pixel = frame.intensity(x, y);
      double diff = pixel - mean_[i];
      mean_[i] = (1.0 - alpha_) * mean_[i] + alpha_ * pixel;
      var_[i] = std::max((1.0 - alpha_) * var_[i] + alpha_ * diff * diff, kVarianceFloor);
    }
  }
  ++updates_;
}

std::vector<unsigned char> BackgroundModel::foreground_mask(const Frame& frame) const {
  if (frame.width != width_ || frame.height != height_)
    throw Error("background model: frame dimensions do not match");
  std::vector<unsigned char> mask(mean_.size(), 0);
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) {
      std::size_t i = idx(x, y);
      double diff = std::abs(frame.intensity(x, y) - mean_[i]);
      mask[i] = diff > k_ * std::sqrt(var_[i]) ? 1 : 0;
    }
  }
  return mask;
}

namespace {

// 8-connected components over a binary mask; components with area >=
// a_min become tight bounding boxes.
std::vector<BoundingBox> mask_to_boxes(const std::vector<unsigned char>& mask, int w, int h,
                                       int a_min) {
  std::vector<BoundingBox> boxes;
  std::vector<unsigned char> seen(mask.size(), 0);
  std::vector<int> stack;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      int start = y * w + x;
      if (!mask[start] || seen[start]) continue;
      stack.clear();
      stack.push_back(start);
      seen[start] = 1;
      int minx = x, maxx = x, miny = y, maxy = y, area = 0;
      while (!stack.empty()) {
        int p = stack.back();
        stack.pop_back();
        ++area;
        int px = p % w, py = p / w;
        minx = std::min(minx, px);
        maxx = std::max(maxx, px);
        miny = std::min(miny, py);
        maxy = std::max(maxy, py);
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            if (dx == 0 && dy == 0) continue;
            int nx = px + dx, ny = py + dy;
            if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
            int n = ny * w + nx;
            if (mask[n] && !seen[n]) {
              seen[n] = 1;
              stack.push_back(n);
            }
          }
        }
      }
      if (area >= a_min)
        boxes.push_back({minx, miny, maxx - minx + 1, maxy - miny + 1});
    }
  }
  return boxes;
}

}  // namespace

std::vector<BoundingBox> detect_motion(const BackgroundModel& model,
                                       const std::vector<Frame>& recent,
                                       const AttentionConfig& cfg) {
  if (recent.size() < 5) return {};  // warm-up, not an error
  if (recent.size() > 5) throw Error("detect_motion: expects exactly the last 5 frames");
  for (std::size_t i = 1; i < recent.size(); ++i) {
    if (recent[i].index != recent[i - 1].index + 1)
      throw Error("detect_motion: frames must have consecutive indices");
    if (recent[i].width != model.width() || recent[i].height != model.height())
      throw Error("detect_motion: frame dimensions do not match model");
  }

  const int w = model.width(), h = model.height();
  std::vector<std::vector<float>> gray;
  gray.reserve(5);
  for (const auto& f : recent) gray.push_back(image::to_intensity(f));

  // union of the 4 adjacent absolute differences, thresholded
  std::vector<unsigned char> diff_mask(static_cast<std::size_t>(w) * h, 0);
  for (int k = 1; k < 5; ++k) {
    const auto& a = gray[k - 1];
    const auto& b = gray[k];
    for (std::size_t i = 0; i < diff_mask.size(); ++i)
      if (std::abs(a[i] - b[i]) > cfg.tau_diff) diff_mask[i] = 1;
  }

  std::vector<unsigned char> fg = model.foreground_mask(recent.back());
  for (std::size_t i = 0; i < fg.size(); ++i) fg[i] = fg[i] && diff_mask[i];

  return mask_to_boxes(fg, w, h, cfg.a_min);
}

std::vector<BoundingBox> random_saccades(int frame_w, int frame_h,
                                         const std::vector<BoundingBox>& motion_boxes,
                                         const std::vector<BoundingBox>& saliency_boxes,
                                         const AttentionConfig& cfg, Rng& rng) {
  std::vector<BoundingBox> existing = motion_boxes;
  existing.insert(existing.end(), saliency_boxes.begin(), saliency_boxes.end());

  std::vector<BoundingBox> out;
  for (int n = 0; n < cfg.n_saccade; ++n) {
    for (int attempt = 0; attempt < cfg.saccade_retries; ++attempt) {
      int size_span = std::max(1, cfg.saccade_max_size - cfg.saccade_min_size + 1);
      int bw = cfg.saccade_min_size + static_cast<int>(rng.next_below(size_span));
      int bh = cfg.saccade_min_size + static_cast<int>(rng.next_below(size_span));
      bw = std::min(bw, frame_w);
      bh = std::min(bh, frame_h);
      BoundingBox box{static_cast<int>(rng.next_below(std::max(1, frame_w - bw + 1))),
                      static_cast<int>(rng.next_below(std::max(1, frame_h - bh + 1))), bw, bh};
      bool overlaps = false;
      for (const auto& e : existing) {
        if (intersection_area(box, e) > 0) {
          overlaps = true;
          break;
        }
      }
      if (!overlaps) {
        out.push_back(box);
        existing.push_back(box);  // keep saccades disjoint from each other too
        break;
      }
    }
  }
  return out;
}

ProposalSet merge_proposals(const std::vector<BoundingBox>& motion,
                            const std::vector<BoundingBox>& saliency,
                            const std::vector<BoundingBox>& random_boxes,
                            const AttentionConfig& cfg) {
  if (!(cfg.iou_threshold > 0.0 && cfg.iou_threshold < 1.0))
    throw Error("merge_proposals: iou_threshold outside (0,1)");

  std::vector<Proposal> ordered;
  for (const auto& b : motion) ordered.push_back({b, ProposalSource::Motion});
  for (const auto& b : saliency) ordered.push_back({b, ProposalSource::Saliency});
  for (const auto& b : random_boxes) ordered.push_back({b, ProposalSource::Random});

  // priority: source rank, then area descending; stable to keep
  // deterministic order for ties
  std::stable_sort(ordered.begin(), ordered.end(), [](const Proposal& a, const Proposal& b) {
    if (a.source != b.source) return static_cast<int>(a.source) < static_cast<int>(b.source);
    return a.box.area() > b.box.area();
  });

  ProposalSet out;
  for (const auto& cand : ordered) {
    if (static_cast<int>(out.proposals.size()) >= cfg.max_proposals) break;
    bool suppressed = false;
    for (const auto& kept : out.proposals) {
      if (iou(cand.box, kept.box) > cfg.iou_threshold) {
        suppressed = true;
        break;
      }
    }
    if (!suppressed) out.proposals.push_back(cand);
  }
  return out;
}

std::vector<BoundingBox> LocalContrastSaliency::propose(const Frame& frame) {
  const int b = cfg_.block;
  if (frame.width < b || frame.height < b) return {};
  int bx = frame.width / b, by = frame.height / b;
  struct Peak {
    double var;
    int x, y;
  };
  std::vector<Peak> peaks;
  for (int gy = 0; gy < by; ++gy) {
    for (int gx = 0; gx < bx; ++gx) {
      double sum = 0.0, sq = 0.0;
      for (int y = 0; y < b; ++y) {
        for (int x = 0; x < b; ++x) {
          double v = frame.intensity(gx * b + x, gy * b + y);
          sum += v;
          sq += v * v;
        }
      }
      double n = static_cast<double>(b) * b;
      double var = sq / n - (sum / n) * (sum / n);
      if (var > cfg_.min_variance) peaks.push_back({var, gx, gy});
    }
  }
  std::stable_sort(peaks.begin(), peaks.end(),
                   [](const Peak& a, const Peak& c) { return a.var > c.var; });
  if (static_cast<int>(peaks.size()) > cfg_.top_k) peaks.resize(cfg_.top_k);

  std::vector<BoundingBox> out;
  for (const auto& p : peaks) {
    // grow the block to a 2x2-block window centered on the peak
    BoundingBox box{p.x * b - b / 2, p.y * b - b / 2, 2 * b, 2 * b};
    out.push_back(box.clamped(frame.width, frame.height));
  }
  return out;
}

}  // namespace vap::attention
