#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "keytap/common.hpp"
#include "keytap/labels.hpp"

namespace keytap {

// rows = true class, columns = predicted class
struct ConfusionMatrix {
    std::array<std::array<int64_t, kNumClasses>, kNumClasses> counts{};

    void add(KeyClass truth, KeyClass predicted) {
        ++counts[static_cast<size_t>(truth.code)][static_cast<size_t>(predicted.code)];
    }
    int64_t total() const;
    int64_t row_sum(int i) const;
    int64_t col_sum(int j) const;
};

struct ClassMetrics {
    double recall = 0.0;
    double precision = 0.0;
    double f1 = 0.0;
    bool recall_defined = false;
    bool precision_defined = false;
    bool f1_defined = false;
};

struct MetricsReport {
    std::array<ClassMetrics, kNumClasses> per_class{};
    double macro_recall = 0.0;
    double macro_precision = 0.0;
    double macro_f1 = 0.0;
    // classes skipped by the macro averages (empty row and/or column, D24)
    std::vector<int> excluded;
};

// Throws EmptyMatrix when the matrix holds no counts.
MetricsReport per_class_metrics(const ConfusionMatrix& cm);

// Minimum single-character edit count (insert/delete/substitute).
int64_t levenshtein(std::string_view a, std::string_view b);

// Normalised Levenshtein Distance: 1 - LD(T, I) / len(T). Not clamped (D25).
// Throws EmptyReference.
double nld(std::string_view reference, std::string_view identified);

}  // namespace keytap
