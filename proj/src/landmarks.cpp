#include "keytap/landmarks.hpp"

#include <cmath>
#include <cstring>

namespace keytap {

double Vec3::norm() const { return std::sqrt(x * x + y * y + z * z); }

bool HandLandmarks::all_zero() const {
    for (const auto& p : points)
        if (p.x != 0.0 || p.y != 0.0 || p.z != 0.0) return false;
    return true;
}

void FrameLandmarks::flatten(double* out) const {
    for (int h = 0; h < 2; ++h) {
        const auto& hand = (h == 0) ? left : right;
        for (int i = 0; i < kPointsPerHand; ++i) {
            out[h * kHandValues + i * 3 + 0] = hand.points[i].x;
            out[h * kHandValues + i * 3 + 1] = hand.points[i].y;
            out[h * kHandValues + i * 3 + 2] = hand.points[i].z;
        }
    }
}

FrameLandmarks FrameLandmarks::from_flat(const double* v, bool lp, bool rp, double ts,
                                         int64_t idx) {
    FrameLandmarks f;
    f.left_present = lp;
    f.right_present = rp;
    f.timestamp_ms = ts;
    f.frame_index = idx;
    for (int h = 0; h < 2; ++h) {
        auto& hand = (h == 0) ? f.left : f.right;
        for (int i = 0; i < kPointsPerHand; ++i) {
            hand.points[i].x = v[h * kHandValues + i * 3 + 0];
            hand.points[i].y = v[h * kHandValues + i * 3 + 1];
            hand.points[i].z = v[h * kHandValues + i * 3 + 2];
        }
    }
    return f;
}

NormalizationState::NormalizationState(int window, double epsilon)
    : window_(window), epsilon_(epsilon), ring_(static_cast<size_t>(window)) {
    if (window < 1) throw Error("normalization window must be >= 1");
}

void NormalizationState::push(const Vec3& ref, double scale) {
    ring_[static_cast<size_t>(head_)] = {ref, scale};
    head_ = (head_ + 1) % window_;
    if (count_ < window_) ++count_;
}

std::pair<Vec3, double> NormalizationState::mean() const {
    Vec3 ref{};
    double scale = 0.0;
    for (int i = 0; i < count_; ++i) {
        ref += ring_[static_cast<size_t>(i)].first;
        scale += ring_[static_cast<size_t>(i)].second;
    }
    // count_ entries occupy slots [0, count_) until the ring wraps; after the
    // wrap every slot holds a live entry, so summing [0, count_) is correct
    // in both regimes.
    const double n = static_cast<double>(count_);
    return {ref / n, scale / n};
}

Vec3 reference_point(const FrameLandmarks& frame) {
    if (!frame.any_present()) throw NoHandsPresent();
    if (frame.left_present && frame.right_present) {
        const Vec3& lw = frame.left.points[kWristIndex];
        const Vec3& rw = frame.right.points[kWristIndex];
        return (lw + rw) * 0.5;
    }
    return frame.left_present ? frame.left.points[kWristIndex] : frame.right.points[kWristIndex];
}

static double hand_scale(const HandLandmarks& hand) {
    return (hand.points[kMiddleRootIndex] - hand.points[kWristIndex]).norm();
}

double scale_factor(const FrameLandmarks& frame, double epsilon) {
    if (!frame.any_present()) throw NoHandsPresent();
    double sum = 0.0;
    int hands = 0;
    for (int h = 0; h < 2; ++h) {
        const bool present = (h == 0) ? frame.left_present : frame.right_present;
        if (!present) continue;
        const double d = hand_scale(h == 0 ? frame.left : frame.right);
        if (d < epsilon) throw DegenerateScale();
        sum += d;
        ++hands;
    }
    const double mean = sum / static_cast<double>(hands);
    return mean < epsilon ? epsilon : mean;
}

std::pair<Vec3, double> update_and_smooth(NormalizationState& state, const FrameLandmarks& frame) {
    const Vec3 ref = reference_point(frame);                 // throws before any mutation
    const double scale = scale_factor(frame, state.epsilon());
    state.push(ref, scale);
    return state.mean();
}

FrameLandmarks normalize(const FrameLandmarks& frame, const Vec3& ref, double scale,
                         double epsilon) {
    if (!(scale >= epsilon)) throw DegenerateScale();
    FrameLandmarks out = frame;
    for (int h = 0; h < 2; ++h) {
        const bool present = (h == 0) ? frame.left_present : frame.right_present;
        if (!present) continue;
        auto& hand = (h == 0) ? out.left : out.right;
        for (auto& p : hand.points) p = (p - ref) / scale;
    }
    return out;
}

FrameLandmarks normalize_stream_frame(NormalizationState& state, const FrameLandmarks& frame) {
    if (!frame.any_present()) {
        FrameLandmarks zero;
        zero.timestamp_ms = frame.timestamp_ms;
        zero.frame_index = frame.frame_index;
        return zero;
    }
    const auto [ref, scale] = update_and_smooth(state, frame);
    return normalize(frame, ref, scale, state.epsilon());
}

std::vector<FrameLandmarks> normalize_sequence(const std::vector<FrameLandmarks>& frames,
                                               int window, double epsilon) {
    NormalizationState state(window, epsilon);
    std::vector<FrameLandmarks> out;
    out.reserve(frames.size());
    for (const auto& f : frames) out.push_back(normalize_stream_frame(state, f));
    return out;
}

static double clampd(double v, double lo, double hi) { return v < lo ? lo : (v > hi ? hi : v); }

AugmentParams clamp_params(AugmentParams p, const AugmentBounds& b) {
    p.angle_deg = clampd(p.angle_deg, -b.max_angle_deg, b.max_angle_deg);
    p.scale = clampd(p.scale, b.min_scale, b.max_scale);
    p.shear = clampd(p.shear, -b.max_shear, b.max_shear);
    p.tx = clampd(p.tx, -b.max_translate, b.max_translate);
    p.ty = clampd(p.ty, -b.max_translate, b.max_translate);
    return p;
}

AugmentParams sample_augment_params(Rng& rng, const AugmentBounds& b) {
    AugmentParams p;
    p.angle_deg = rng.uniform(-b.max_angle_deg, b.max_angle_deg);
    p.scale = rng.uniform(b.min_scale, b.max_scale);
    p.shear = rng.uniform(-b.max_shear, b.max_shear);
    p.tx = rng.uniform(-b.max_translate, b.max_translate);
    p.ty = rng.uniform(-b.max_translate, b.max_translate);
    return p;
}

std::vector<FrameLandmarks> augment_landmarks(const std::vector<FrameLandmarks>& seq,
                                              AugmentParams params, const AugmentBounds& bounds) {
    const AugmentParams p = clamp_params(params, bounds);
    const double rad = p.angle_deg * M_PI / 180.0;
    const double c = std::cos(rad), s = std::sin(rad);
    // rotation * scale * shear
    const double a00 = p.scale * c, a01 = p.scale * (c * p.shear - s);
    const double a10 = p.scale * s, a11 = p.scale * (s * p.shear + c);

    std::vector<FrameLandmarks> out = seq;
    for (auto& frame : out) {
        for (int h = 0; h < 2; ++h) {
            const bool present = (h == 0) ? frame.left_present : frame.right_present;
            if (!present) continue;
            auto& hand = (h == 0) ? frame.left : frame.right;
            for (auto& pt : hand.points) {
                const double x = pt.x, y = pt.y;
                pt.x = a00 * x + a01 * y + p.tx;
                pt.y = a10 * x + a11 * y + p.ty;
            }
        }
    }
    return out;
}

}  // namespace keytap
