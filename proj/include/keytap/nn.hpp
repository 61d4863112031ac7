#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "keytap/common.hpp"
#include "keytap/labels.hpp"
#include "keytap/tensor.hpp"

namespace keytap {

// Architecture hyper-parameters the source material leaves open (D12-D14).
struct ModelConfig {
    int conv1_channels = 32;
    int conv2_channels = 64;  // feature width f after the conv stack
    int gru_hidden = 128;
    int fc_hidden = 64;
    double dropout_p = 0.2;
    int window_size = 128;
    int num_classes = kNumClasses;

    void validate() const;
    uint64_t hash() const;  // checkpoint compatibility (D31)
    bool operator==(const ModelConfig&) const = default;
};

// conv1: kernel (c1, 2, 3, 4, 3). Temporal taps are causal, covering frames
// t-2..t with zero history so a streaming step can reproduce the batch
// output exactly; total temporal padding is still 2 and the output depth
// stays n. Height: pad 3 each side, stride 4 -> 6 finger groups. Width: the
// 3 coordinates collapse to 1.
// conv2: kernel (c2, c1, 1, 6, 1), no padding -> (b, c2, n, 1, 1).
constexpr int kConv1OutHeight = 6;
constexpr double kBnEps = 1e-5;
constexpr double kBnMomentum = 0.1;
constexpr double kCeLogClamp = 1e-12;

struct BatchNormParams {
    Tensor gamma, beta;                // trainable
    Tensor running_mean, running_var;  // eval statistics
};

struct GruParams {
    Tensor w_ir, w_iz, w_in;  // (hidden, input)
    Tensor w_hr, w_hz, w_hn;  // (hidden, hidden)
    Tensor b_ir, b_iz, b_in;
    Tensor b_hr, b_hz, b_hn;  // b_hn applies inside the reset product
};

struct ModelParams {
    Tensor conv1_kernel, conv1_bias;
    BatchNormParams bn1;
    Tensor conv2_kernel, conv2_bias;
    BatchNormParams bn2;
    GruParams gru1, gru2;
    Tensor fc1_w, fc1_b;
    Tensor fc2_w, fc2_b;
};

// Gradients mirror the trainable tensors of ModelParams; the running-stat
// tensors are simply unused on the gradient side.
using ModelGrads = ModelParams;

ModelParams make_params(const ModelConfig& config);                 // zero-filled
ModelParams init_params(const ModelConfig& config, uint64_t seed);  // D17 init
void audit_shapes(const ModelParams& params, const ModelConfig& config);

using TensorVisitor = std::function<void(const std::string&, Tensor&)>;
using ConstTensorVisitor = std::function<void(const std::string&, const Tensor&)>;

// Fixed enumeration order shared by the optimizer, gradients and
// checkpoints.
void for_each_trainable(ModelParams& p, const TensorVisitor& fn);
void for_each_trainable(const ModelParams& p, const ConstTensorVisitor& fn);
void for_each_state_tensor(ModelParams& p, const TensorVisitor& fn);
void for_each_state_tensor(const ModelParams& p, const ConstTensorVisitor& fn);

enum class Mode { train, eval };

struct BatchNormCache {
    Tensor xhat;
    std::vector<double> inv_std;  // per channel, whichever stats were used
    Mode mode = Mode::train;
};

struct GruCache {
    Tensor x;   // (b, T, in)
    Tensor h0;  // (b, hidden)
    Tensor h;   // (b, T, hidden)
    Tensor r, z, n, hh_n;
};

struct ForwardCache {
    Tensor input;
    Tensor conv1_out;  // pre-BN
    BatchNormCache bn1;
    Tensor act1;  // post-ReLU
    Tensor conv2_out;
    BatchNormCache bn2;
    Tensor act2;
    Tensor features;  // (b, n, f)
    GruCache gru1, gru2;
    Tensor dropout_mask;  // 0 or 1/(1-p)
    Tensor dropped;
    Tensor fc1_out;  // post-ReLU
    Tensor logits;
    Tensor probs;
    Mode mode = Mode::eval;
};

// -------- layer primitives --------

// (b,2,n,21,3) -> (b,c1,n,6,1)
Tensor conv3d_forward(const Tensor& input, const Tensor& kernel, const Tensor& bias);
// (b,c1,n,6,1) -> (b,c2,n,1,1)
Tensor conv3d_second_forward(const Tensor& input, const Tensor& kernel, const Tensor& bias);

Tensor batchnorm_forward(const Tensor& x, BatchNormParams& params, Mode mode,
                         BatchNormCache* cache = nullptr);
Tensor dropout_forward(const Tensor& x, double p, Mode mode, uint64_t seed,
                       Tensor* mask_out = nullptr);
// x_seq (b,T,in), h0 (b,hidden) -> all hidden states (b,T,hidden)
Tensor gru_forward(const Tensor& x_seq, const Tensor& h0, const GruParams& params,
                   GruCache* cache = nullptr);

// Single recurrent step shared by the batch loop and the streaming path.
// Optional gate outputs are only needed when caching for backward.
void gru_step(const double* x, int in_dim, const double* h_prev, int hidden,
              const GruParams& params, double* h_out, double* r_out = nullptr,
              double* z_out = nullptr, double* n_out = nullptr, double* hhn_out = nullptr);

// Per-channel affine equivalent of eval-mode batchnorm.
struct BnAffine {
    std::vector<double> scale, shift;
};
BnAffine bn_eval_affine(const BatchNormParams& params);

// One conv1 output frame; each pointer addresses 63 contiguous doubles for
// (tap, hand), with out-of-range taps pointing at kZeroHand.
extern const double kZeroHand[kHandValues];
void conv1_frame(const double* taps[3][2], const Tensor& kernel, const Tensor& bias,
                 double* out /* c1 x 6 */);
void conv2_frame(const double* in /* c1 x 6 */, const Tensor& kernel, const Tensor& bias,
                 double* out /* c2 */);
void fc_vec(const double* x, const Tensor& w, const Tensor& b, double* out);
void relu_inplace(double* v, int64_t n);
void softmax_row(double* v, int n);

// -------- whole-model passes --------

// conv1 -> bn -> relu -> conv2 -> bn -> relu -> reshape -> GRU1 -> GRU2 ->
// dropout -> fc1 -> relu -> fc2 -> softmax per frame. Output (b, n, classes).
Tensor model_forward(const Tensor& input, ModelParams& params, const ModelConfig& config,
                     Mode mode, ForwardCache* cache = nullptr, uint64_t dropout_seed = 0);

enum class LossKind { mse, weighted_ce };

struct LossSpec {
    LossKind kind = LossKind::mse;
    std::array<double, kNumClasses> weights{};  // weighted_ce only (D20)

    static LossSpec mse() { return LossSpec{}; }
    static LossSpec wce(const std::array<double, kNumClasses>& w) {
        return LossSpec{LossKind::weighted_ce, w};
    }
};

double loss_value(const Tensor& probs, const Tensor& targets, const LossSpec& spec);

// Analytic gradients for every trainable tensor.
ModelGrads model_backward(const ForwardCache& cache, const Tensor& targets,
                          const ModelParams& params, const ModelConfig& config,
                          const LossSpec& spec);

}  // namespace keytap
