#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "keytap/common.hpp"
#include "keytap/landmarks.hpp"

namespace keytap {

constexpr int kNumClasses = 28;  // IDLE, A..Z, SPACE

// Class taxonomy: 0 = IDLE, 1..26 = A..Z, 27 = SPACE.
struct KeyClass {
    int code = 0;

    KeyClass() = default;
    explicit KeyClass(int c) : code(c) {
        if (c < 0 || c >= kNumClasses) throw Error("key class code out of range");
    }

    static KeyClass idle() { return KeyClass(0); }
    static KeyClass space() { return KeyClass(27); }
    static KeyClass letter(char c);                               // 'a'..'z'
    static std::optional<KeyClass> from_token(const std::string&);  // "a".."z" | "SPACE"

    bool is_idle() const { return code == 0; }
    bool is_space() const { return code == 27; }
    char to_char() const;      // 'a'..'z' or ' '; throws for IDLE
    std::string name() const;  // "IDLE", "A".."Z", "SPACE"

    bool operator==(const KeyClass& o) const { return code == o.code; }
    bool operator!=(const KeyClass& o) const { return code != o.code; }
};

// 28 reals on the probability simplex (raw one-hot or smoothed).
using LabelVector = std::array<double, kNumClasses>;

struct DatasetStats {
    std::array<int64_t, kNumClasses> counts{};

    int64_t total() const;
    void add(KeyClass c) { ++counts[static_cast<size_t>(c.code)]; }
};

struct KeylogEntry {
    enum class Edge { down, up };

    double timestamp_ms = 0.0;
    KeyClass key;
    std::optional<Edge> edge;  // absent column => press instant only (D9)
};

// Closed [down_ms, up_ms] hold interval of one key.
struct KeyInterval {
    double down_ms = 0.0;
    double up_ms = 0.0;
    KeyClass key;
};

LabelVector one_hot(KeyClass c);

// w_i = N / (k * n_i). Throws ZeroClassCount.
std::array<double, kNumClasses> class_weights(const DatasetStats& stats);

// Pairs down/up edges into hold intervals; unmatched downs (or edge-less
// press instants) get a synthesized 100 ms hold (D9).
std::vector<KeyInterval> keylog_to_intervals(const std::vector<KeylogEntry>& keylog);

// Frame gets class k when its timestamp falls inside a [down, up] interval;
// overlaps resolve to the most recent down (D8); everything else is IDLE.
// Throws UnsortedInput.
std::vector<KeyClass> align_ground_truth(const std::vector<KeylogEntry>& keylog,
                                         const std::vector<double>& frame_timestamps_ms);

// Temporal label smoothing (D10): the s IDLE frames flanking each key run
// become blends (d/(s+1))*idle + (1-d/(s+1))*key at distance d from the run.
std::vector<LabelVector> smooth_labels(const std::vector<LabelVector>& seq, int s);

struct Window {
    std::vector<FrameLandmarks> frames;  // size() == window size
    std::vector<LabelVector> labels;
    std::string recording_id;
    int64_t start_frame = 0;
};

// Window start offsets 0, step, 2*step, ...; empty when n < size (D11).
std::vector<int64_t> sliding_window_starts(int64_t n, int size, int step);

std::vector<Window> sliding_windows(const std::vector<FrameLandmarks>& frames,
                                    const std::vector<LabelVector>& labels,
                                    const std::string& recording_id, int size = 128,
                                    int step = 64);

}  // namespace keytap
