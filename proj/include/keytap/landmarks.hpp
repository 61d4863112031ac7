#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "keytap/common.hpp"

namespace keytap {

constexpr int kPointsPerHand = 21;
constexpr int kHandValues = kPointsPerHand * 3;   // 63
constexpr int kFrameValues = 2 * kHandValues;     // 126
constexpr int kWristIndex = 0;
constexpr int kMiddleRootIndex = 9;               // root of the middle finger (D2)

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3& operator+=(const Vec3& o) {
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }
    double norm() const;
};

// 21 keypoints of one hand in normalized image coordinates (x,y in [0,1] by
// source convention, z relative depth). An absent hand is the all-zero
// sentinel.
struct HandLandmarks {
    std::array<Vec3, kPointsPerHand> points{};

    bool all_zero() const;
};

struct FrameLandmarks {
    HandLandmarks left;
    HandLandmarks right;
    bool left_present = false;
    bool right_present = false;
    double timestamp_ms = 0.0;
    int64_t frame_index = 0;

    bool any_present() const { return left_present || right_present; }
    // Serialized layout: left 21x3 row-major, then right (126 values).
    void flatten(double* out126) const;
    static FrameLandmarks from_flat(const double* v126, bool left_present, bool right_present,
                                    double timestamp_ms, int64_t frame_index);
};

// Trailing window of (reference point, scale) pairs used for jitter removal.
// Owned by exactly one execution context at a time.
class NormalizationState {
public:
    explicit NormalizationState(int window = 15, double epsilon = 1e-6);

    int window() const { return window_; }
    double epsilon() const { return epsilon_; }
    int size() const { return count_; }

    void push(const Vec3& ref, double scale);
    std::pair<Vec3, double> mean() const;

private:
    int window_;
    double epsilon_;
    std::vector<std::pair<Vec3, double>> ring_;
    int head_ = 0;
    int count_ = 0;
};

// Midpoint of the two wrist points; a single present hand falls back to its
// own wrist (D1). Throws NoHandsPresent.
Vec3 reference_point(const FrameLandmarks& frame);

// Mean over present hands of the wrist to middle-finger-root distance.
// Throws NoHandsPresent / DegenerateScale (per-hand distance < epsilon, D3).
double scale_factor(const FrameLandmarks& frame, double epsilon = 1e-6);

// Pushes this frame's (ref, scale) and returns the window means. A no-hands
// frame throws and leaves the buffer untouched (D5).
std::pair<Vec3, double> update_and_smooth(NormalizationState& state, const FrameLandmarks& frame);

// (p - ref) / scale on every point of every present hand; absent hands keep
// the zero sentinel (D6). Throws DegenerateScale when scale < epsilon.
FrameLandmarks normalize(const FrameLandmarks& frame, const Vec3& ref, double scale,
                         double epsilon = 1e-6);

// Full causal stage-1 step: no-hands frames come back as the all-zero frame
// without touching the jitter buffer (D5); anything else is smoothed and
// normalized.
FrameLandmarks normalize_stream_frame(NormalizationState& state, const FrameLandmarks& frame);

std::vector<FrameLandmarks> normalize_sequence(const std::vector<FrameLandmarks>& frames,
                                               int window = 15, double epsilon = 1e-6);

struct AugmentBounds {
    double max_angle_deg = 15.0;      // D7
    double min_scale = 0.8;
    double max_scale = 1.25;
    double max_shear = 0.1;
    double max_translate = 0.1;
};

struct AugmentParams {
    double angle_deg = 0.0;
    double scale = 1.0;
    double shear = 0.0;
    double tx = 0.0;
    double ty = 0.0;
};

AugmentParams clamp_params(AugmentParams p, const AugmentBounds& bounds);
AugmentParams sample_augment_params(Rng& rng, const AugmentBounds& bounds = {});

// One affine transform (shear, then uniform scale, then rotation, then
// translation) applied to x,y of all present-hand points in every frame; z
// untouched; absent hands stay zero.
std::vector<FrameLandmarks> augment_landmarks(const std::vector<FrameLandmarks>& seq,
                                              AugmentParams params,
                                              const AugmentBounds& bounds = {});

}  // namespace keytap
