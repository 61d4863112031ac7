#include "keytap/labels.hpp"

#include <algorithm>
#include <cmath>

namespace keytap {

KeyClass KeyClass::letter(char c) {
    if (c < 'a' || c > 'z') throw Error("letter key must be lowercase a-z");
    return KeyClass(1 + (c - 'a'));
}

std::optional<KeyClass> KeyClass::from_token(const std::string& tok) {
    if (tok == "SPACE") return KeyClass::space();
    if (tok.size() == 1 && tok[0] >= 'a' && tok[0] <= 'z') return KeyClass::letter(tok[0]);
    return std::nullopt;
}

char KeyClass::to_char() const {
    if (is_space()) return ' ';
    if (code >= 1 && code <= 26) return static_cast<char>('a' + code - 1);
    throw Error("IDLE has no character");
}

std::string KeyClass::name() const {
    if (is_idle()) return "IDLE";
    if (is_space()) return "SPACE";
    return std::string(1, static_cast<char>('A' + code - 1));
}

int64_t DatasetStats::total() const {
    int64_t n = 0;
    for (int64_t c : counts) n += c;
    return n;
}

LabelVector one_hot(KeyClass c) {
    LabelVector v{};
    v[static_cast<size_t>(c.code)] = 1.0;
    return v;
}

std::array<double, kNumClasses> class_weights(const DatasetStats& stats) {
    const double n_total = static_cast<double>(stats.total());
    std::array<double, kNumClasses> w{};
    for (int i = 0; i < kNumClasses; ++i) {
        if (stats.counts[static_cast<size_t>(i)] <= 0)
            throw ZeroClassCount("class " + KeyClass(i).name() + " has zero samples");
        w[static_cast<size_t>(i)] =
            n_total / (static_cast<double>(kNumClasses) *
                       static_cast<double>(stats.counts[static_cast<size_t>(i)]));
    }
    return w;
}

static constexpr double kSynthHoldMs = 100.0;  // D9

std::vector<KeyInterval> keylog_to_intervals(const std::vector<KeylogEntry>& keylog) {
    for (size_t i = 1; i < keylog.size(); ++i)
        if (keylog[i].timestamp_ms < keylog[i - 1].timestamp_ms)
            throw UnsortedInput("keylog timestamps not sorted");

    std::vector<KeyInterval> intervals;
    // pending down per key (at most one open hold per key)
    std::array<std::optional<double>, kNumClasses> pending{};
    auto close_pending = [&](int code, double up_ms) {
        intervals.push_back({*pending[static_cast<size_t>(code)], up_ms, KeyClass(code)});
        pending[static_cast<size_t>(code)].reset();
    };

    for (const auto& e : keylog) {
        const size_t code = static_cast<size_t>(e.key.code);
        if (e.edge && *e.edge == KeylogEntry::Edge::up) {
            if (pending[code]) close_pending(e.key.code, e.timestamp_ms);
            continue;  // stray up without a down: drop
        }
        // down edge, or edge-less press instant
        if (pending[code]) close_pending(e.key.code, *pending[code] + kSynthHoldMs);
        pending[code] = e.timestamp_ms;
        if (!e.edge) close_pending(e.key.code, e.timestamp_ms + kSynthHoldMs);
    }
    for (int c = 0; c < kNumClasses; ++c)
        if (pending[static_cast<size_t>(c)]) close_pending(c, *pending[static_cast<size_t>(c)] + kSynthHoldMs);

    std::sort(intervals.begin(), intervals.end(),
              [](const KeyInterval& a, const KeyInterval& b) { return a.down_ms < b.down_ms; });
    return intervals;
}

std::vector<KeyClass> align_ground_truth(const std::vector<KeylogEntry>& keylog,
                                         const std::vector<double>& frame_ts) {
    for (size_t i = 1; i < frame_ts.size(); ++i)
        if (frame_ts[i] < frame_ts[i - 1]) throw UnsortedInput("frame timestamps not sorted");

    const std::vector<KeyInterval> intervals = keylog_to_intervals(keylog);

    std::vector<KeyClass> out(frame_ts.size(), KeyClass::idle());
    size_t next = 0;  // next interval not yet activated
    std::vector<const KeyInterval*> active;
    for (size_t f = 0; f < frame_ts.size(); ++f) {
        const double t = frame_ts[f];
        while (next < intervals.size() && intervals[next].down_ms <= t)
            active.push_back(&intervals[next++]);
        std::erase_if(active, [t](const KeyInterval* iv) { return iv->up_ms < t; });
        // most recent down wins (D8); intervals entered `active` in down order
        if (!active.empty()) out[f] = active.back()->key;
    }
    return out;
}

std::vector<LabelVector> smooth_labels(const std::vector<LabelVector>& seq, int s) {
    if (s < 1) throw Error("blend size must be >= 1");
    const int64_t n = static_cast<int64_t>(seq.size());

    auto argmax = [](const LabelVector& v) {
        return static_cast<int>(std::max_element(v.begin(), v.end()) - v.begin());
    };

    std::vector<int> cls(seq.size());
    for (size_t i = 0; i < seq.size(); ++i) cls[i] = argmax(seq[i]);

    std::vector<LabelVector> out = seq;
    // distance of the blend already claiming each frame; nearest run wins
    std::vector<int> claimed(seq.size(), 0);

    auto blend_at = [&](int64_t idx, int d, int k) {
        if (idx < 0 || idx >= n) return;                    // truncated at boundary
        if (cls[static_cast<size_t>(idx)] != 0) return;      // only IDLE frames blend
        if (claimed[static_cast<size_t>(idx)] != 0 && claimed[static_cast<size_t>(idx)] <= d) return;
        const double wi = static_cast<double>(d) / static_cast<double>(s + 1);
        LabelVector v{};
        v[0] = wi;
        v[static_cast<size_t>(k)] = 1.0 - wi;
        out[static_cast<size_t>(idx)] = v;
        claimed[static_cast<size_t>(idx)] = d;
    };

    int64_t i = 0;
    while (i < n) {
        const int k = cls[static_cast<size_t>(i)];
        if (k == 0) {
            ++i;
            continue;
        }
        int64_t j = i;
        while (j + 1 < n && cls[static_cast<size_t>(j + 1)] == k) ++j;  // run [i, j]
        for (int d = 1; d <= s; ++d) {
            blend_at(i - d, d, k);
            blend_at(j + d, d, k);
        }
        i = j + 1;
    }
    return out;
}

std::vector<int64_t> sliding_window_starts(int64_t n, int size, int step) {
    if (size < 1 || step < 1) throw Error("window size and step must be >= 1");
    std::vector<int64_t> starts;
    if (n < size) return starts;  // D11
    for (int64_t s = 0; s + size <= n; s += step) starts.push_back(s);
    return starts;
}

std::vector<Window> sliding_windows(const std::vector<FrameLandmarks>& frames,
                                    const std::vector<LabelVector>& labels,
                                    const std::string& recording_id, int size, int step) {
    if (frames.size() != labels.size())
        throw ShapeMismatch("frames and labels have different lengths");
    std::vector<Window> windows;
    for (int64_t start : sliding_window_starts(static_cast<int64_t>(frames.size()), size, step)) {
        Window w;
        w.recording_id = recording_id;
        w.start_frame = start;
        w.frames.assign(frames.begin() + start, frames.begin() + start + size);
        w.labels.assign(labels.begin() + start, labels.begin() + start + size);
        windows.push_back(std::move(w));
    }
    return windows;
}

}  // namespace keytap
