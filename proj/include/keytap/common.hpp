#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace keytap {

// Error taxonomy. Every module throws one of these; the CLI maps them to
// exit codes (runtime failure = 1, usage = 2).
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NoHandsPresent : Error {
    NoHandsPresent() : Error("no hands present in frame") {}
};
struct DegenerateScale : Error {
    explicit DegenerateScale(const std::string& m = "hand scale below epsilon") : Error(m) {}
};
struct ZeroClassCount : Error {
    explicit ZeroClassCount(const std::string& m = "class with zero sample count") : Error(m) {}
};
struct UnsortedInput : Error {
    explicit UnsortedInput(const std::string& m = "input not sorted by timestamp") : Error(m) {}
};
struct ShapeMismatch : Error {
    explicit ShapeMismatch(const std::string& m = "tensor shape mismatch") : Error(m) {}
};
struct DegenerateBatch : Error {
    explicit DegenerateBatch(const std::string& m = "batch too small for batchnorm") : Error(m) {}
};
struct TooFewRecordings : Error {
    explicit TooFewRecordings(const std::string& m = "fewer recordings than folds") : Error(m) {}
};
struct EmptyDataset : Error {
    explicit EmptyDataset(const std::string& m = "empty dataset") : Error(m) {}
};
struct EmptyMatrix : Error {
    explicit EmptyMatrix(const std::string& m = "confusion matrix has no counts") : Error(m) {}
};
struct EmptyReference : Error {
    explicit EmptyReference(const std::string& m = "reference text is empty") : Error(m) {}
};
struct NoFramesProcessed : Error {
    explicit NoFramesProcessed(const std::string& m = "no frames processed") : Error(m) {}
};
struct UnsupportedCharacter : Error {
    explicit UnsupportedCharacter(const std::string& m = "unsupported character in script") : Error(m) {}
};
struct CheckpointMismatch : Error {
    explicit CheckpointMismatch(const std::string& m = "checkpoint config mismatch") : Error(m) {}
};
struct SourceUnavailable : Error {
    explicit SourceUnavailable(const std::string& m = "stream source unavailable") : Error(m) {}
};

// splitmix64 finalizer; used to derive independent sub-seeds from one master
// seed so that adding a consumer never shifts another consumer's stream.
inline uint64_t mix_seed(uint64_t seed, uint64_t stream) {
    uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic RNG. The engine (mt19937_64) is fully specified by the
// standard; the distributions are hand-rolled because the std ones are
// implementation-defined and would break bit-reproducibility across
// toolchains.
class Rng {
public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    uint64_t next_u64() { return gen_(); }

    // [0, 1) with 53 random bits
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // unbiased integer in [0, n) by rejection
    uint64_t below(uint64_t n) {
        if (n == 0) return 0;
        const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        uint64_t v;
        do {
            v = gen_();
        } while (v >= limit);
        return v % n;
    }

    // Box-Muller with cached spare
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * M_PI * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    double gaussian(double mean, double std) { return mean + std * gaussian(); }

    // Fisher-Yates
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            const size_t j = static_cast<size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 gen_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

// FNV-1a 64-bit, used for checkpoint payload checksums and config hashes.
inline uint64_t fnv1a64(const void* data, size_t len, uint64_t h = 0xcbf29ce484222325ULL) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace keytap
