#include <cmath>
#include <numbers>

#include <opencv2/core.hpp>

#include "common.hpp"
#include "ptzsim/trackers.hpp"

namespace ptzsim {
namespace {

constexpr double kLearningRate = 0.125;
constexpr double kRegularization = 1e-2;
constexpr double kPsrScale = 20.0;
constexpr double kFailureConfidence = 0.2;
constexpr int kSidelobeExclusion = 5;  // half-width of the 11x11 peak mask
constexpr int kMinPatch = 8;
constexpr int kDetectionPasses = 2;
constexpr double kPadding = 2.0;  // search patch side relative to the box

// Minimum-output-sum-of-squared-error correlation filter on grayscale
// intensities, trained against a Gaussian response and updated by linear
// interpolation.
class MosseTracker final : public Tracker {
 public:
  std::string name() const override { return "mosse"; }

  void init(const Frame& frame, const BoundingBox& box) override {
    detail::require_trackable(frame, box);
    box_w_ = box.w;
    box_h_ = box.h;
    const PlanePoint c = box.center();
    cx_ = c.x;
    cy_ = c.y;
    pw_ = std::max(kMinPatch, static_cast<int>(std::lround(kPadding * box.w)));
    ph_ = std::max(kMinPatch, static_cast<int>(std::lround(kPadding * box.h)));

    window_.create(ph_, pw_, CV_64F);
    for (int y = 0; y < ph_; ++y)
      for (int x = 0; x < pw_; ++x) window_.at<double>(y, x) = hann(x, pw_) * hann(y, ph_);

    cv::Mat target(ph_, pw_, CV_64F);
    const double sigma = std::hypot(box.w, box.h) / 10.0;
    for (int y = 0; y < ph_; ++y) {
      for (int x = 0; x < pw_; ++x) {
        const double dx = x - pw_ / 2;
        const double dy = y - ph_ / 2;
        target.at<double>(y, x) = std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
      }
    }
    cv::dft(target, target_spectrum_, cv::DFT_COMPLEX_OUTPUT);

    const cv::Mat spectrum = patch_spectrum(to_gray(frame));
    cv::mulSpectrums(target_spectrum_, spectrum, numerator_, 0, true);
    cv::mulSpectrums(spectrum, spectrum, denominator_, 0, true);
    initialized_ = true;
  }

  TrackerEstimate update(const Frame& frame) override {
    const GrayImage gray = to_gray(frame);

    cv::Mat filter(numerator_.size(), numerator_.type());
    for (int y = 0; y < ph_; ++y) {
      for (int x = 0; x < pw_; ++x) {
        const auto a = numerator_.at<cv::Vec2d>(y, x);
        const double b = denominator_.at<cv::Vec2d>(y, x)[0] + kRegularization;
        filter.at<cv::Vec2d>(y, x) = cv::Vec2d(a[0] / b, a[1] / b);
      }
    }

    // The window biases large displacements toward the patch center, so a
    // second pass from the first peak picks up the remainder.
    double confidence = 0.0;
    for (int pass = 0; pass < kDetectionPasses; ++pass) {
      cv::Mat product;
      cv::Mat response;
      cv::mulSpectrums(patch_spectrum(gray), filter, product, 0, false);
      cv::dft(product, response, cv::DFT_INVERSE | cv::DFT_REAL_OUTPUT | cv::DFT_SCALE);

      cv::Point peak;
      double peak_value = 0.0;
      cv::minMaxLoc(response, nullptr, &peak_value, nullptr, &peak);
      const double c = std::clamp(psr(response, peak, peak_value) / kPsrScale, 0.0, 1.0);
      if (pass == 0 && c < kFailureConfidence) return {std::nullopt, c};
      if (pass > 0 && c < kFailureConfidence) break;
      confidence = c;
      const int dx = peak.x - pw_ / 2;
      const int dy = peak.y - ph_ / 2;
      cx_ += dx;
      cy_ += dy;
      if (dx == 0 && dy == 0) break;
    }

    const cv::Mat fresh = patch_spectrum(gray);
    cv::Mat a;
    cv::Mat b;
    cv::mulSpectrums(target_spectrum_, fresh, a, 0, true);
    cv::mulSpectrums(fresh, fresh, b, 0, true);
    numerator_ = kLearningRate * a + (1.0 - kLearningRate) * numerator_;
    denominator_ = kLearningRate * b + (1.0 - kLearningRate) * denominator_;
    return {*current_region(), confidence};
  }

  std::optional<BoundingBox> current_region() const override {
    if (!initialized_) return std::nullopt;
    return BoundingBox::centered({cx_, cy_}, box_w_, box_h_);
  }

 private:
  static double hann(int i, int n) {
    return n > 1 ? 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * i / (n - 1))) : 1.0;
  }

  // Log-intensity patch centered on the current position (edge-replicated),
  // normalized to zero mean and unit variance, cosine-windowed, transformed.
  cv::Mat patch_spectrum(const GrayImage& gray) const {
    cv::Mat patch(ph_, pw_, CV_64F);
    const int x0 = static_cast<int>(std::lround(cx_ - 0.5)) - pw_ / 2;
    const int y0 = static_cast<int>(std::lround(cy_ - 0.5)) - ph_ / 2;
    for (int y = 0; y < ph_; ++y) {
      const int sy = std::clamp(y0 + y, 0, gray.height - 1);
      for (int x = 0; x < pw_; ++x) {
        const int sx = std::clamp(x0 + x, 0, gray.width - 1);
        patch.at<double>(y, x) = std::log1p(gray.at(sx, sy));
      }
    }
    cv::Scalar mean;
    cv::Scalar stddev;
    cv::meanStdDev(patch, mean, stddev);
    patch = (patch - mean[0]) / (stddev[0] + 1e-5);
    patch = patch.mul(window_);
    cv::Mat spectrum;
    cv::dft(patch, spectrum, cv::DFT_COMPLEX_OUTPUT);
    return spectrum;
  }

  // Peak-to-sidelobe ratio with an 11x11 exclusion zone around the peak.
  static double psr(const cv::Mat& response, cv::Point peak, double peak_value) {
    double sum = 0.0;
    double sum_sq = 0.0;
    int n = 0;
    for (int y = 0; y < response.rows; ++y) {
      for (int x = 0; x < response.cols; ++x) {
        if (std::abs(x - peak.x) <= kSidelobeExclusion && std::abs(y - peak.y) <= kSidelobeExclusion) continue;
        const double v = response.at<double>(y, x);
        sum += v;
        sum_sq += v * v;
        ++n;
      }
    }
    if (n < 2) return 0.0;
    const double mean = sum / n;
    const double stddev = std::sqrt(std::max(0.0, sum_sq / n - mean * mean));
    if (stddev < 1e-12) return 0.0;
    return (peak_value - mean) / stddev;
  }

  double cx_ = 0.0;
  double cy_ = 0.0;
  double box_w_ = 0.0;
  double box_h_ = 0.0;
  int pw_ = 0;
  int ph_ = 0;
  cv::Mat window_;
  cv::Mat target_spectrum_;
  cv::Mat numerator_;
  cv::Mat denominator_;
  bool initialized_ = false;
};

}  // namespace

std::unique_ptr<Tracker> mosse_tracker() { return std::make_unique<MosseTracker>(); }

}  // namespace ptzsim
