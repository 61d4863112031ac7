#include "keytap/metrics.hpp"

#include <algorithm>
#include <numeric>

namespace keytap {

int64_t ConfusionMatrix::total() const {
    int64_t n = 0;
    for (const auto& row : counts)
        for (int64_t c : row) n += c;
    return n;
}

int64_t ConfusionMatrix::row_sum(int i) const {
    const auto& row = counts[static_cast<size_t>(i)];
    return std::accumulate(row.begin(), row.end(), int64_t{0});
}

int64_t ConfusionMatrix::col_sum(int j) const {
    int64_t n = 0;
    for (const auto& row : counts) n += row[static_cast<size_t>(j)];
    return n;
}

MetricsReport per_class_metrics(const ConfusionMatrix& cm) {
    if (cm.total() == 0) throw EmptyMatrix();

    MetricsReport rep;
    double recall_sum = 0.0, precision_sum = 0.0, f1_sum = 0.0;
    int recall_n = 0, precision_n = 0, f1_n = 0;

    for (int i = 0; i < kNumClasses; ++i) {
        ClassMetrics& m = rep.per_class[static_cast<size_t>(i)];
        const int64_t row = cm.row_sum(i);
        const int64_t col = cm.col_sum(i);
        const double tp = static_cast<double>(cm.counts[static_cast<size_t>(i)][static_cast<size_t>(i)]);
        if (row > 0) {
            m.recall = tp / static_cast<double>(row);
            m.recall_defined = true;
            recall_sum += m.recall;
            ++recall_n;
        }
        if (col > 0) {
            m.precision = tp / static_cast<double>(col);
            m.precision_defined = true;
            precision_sum += m.precision;
            ++precision_n;
        }
        if (m.recall_defined && m.precision_defined) {
            const double pr = m.precision + m.recall;
            m.f1 = pr > 0.0 ? 2.0 * m.precision * m.recall / pr : 0.0;
            m.f1_defined = true;
            f1_sum += m.f1;
            ++f1_n;
        }
        if (row == 0 || col == 0) rep.excluded.push_back(i);
    }
    rep.macro_recall = recall_n ? recall_sum / recall_n : 0.0;
    rep.macro_precision = precision_n ? precision_sum / precision_n : 0.0;
    rep.macro_f1 = f1_n ? f1_sum / f1_n : 0.0;
    return rep;
}

int64_t levenshtein(std::string_view a, std::string_view b) {
    const size_t m = a.size(), n = b.size();
    if (m == 0) return static_cast<int64_t>(n);
    if (n == 0) return static_cast<int64_t>(m);

    std::vector<int64_t> prev(n + 1), cur(n + 1);
    std::iota(prev.begin(), prev.end(), int64_t{0});
    for (size_t i = 1; i <= m; ++i) {
        cur[0] = static_cast<int64_t>(i);
        for (size_t j = 1; j <= n; ++j) {
            const int64_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[n];
}

double nld(std::string_view reference, std::string_view identified) {
    if (reference.empty()) throw EmptyReference();
    return 1.0 - static_cast<double>(levenshtein(reference, identified)) /
                     static_cast<double>(reference.size());
}

}  // namespace keytap
