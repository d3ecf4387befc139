#pragma once

#include "miecg/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace miecg {
struct Window;
}

namespace miecg::nn {

/// Shape of the 1-D conv stack. Every conv layer has `channels` outputs,
/// kernel `kernel`, stride `stride` and (kernel-1)/2 leading zeros of padding,
/// so each layer maps length L to ceil(L / stride).
struct Architecture {
    int num_leads = 2;
    int channels = 32;
    int kernel = 3;
    int stride = 2;
    int num_layers = 8;
    int input_length = 10'000;
    int num_classes = 2;
    std::string activation = "relu";
    std::vector<std::string> lead_names;

    void validate() const;
    /// Output length of each conv layer.
    std::vector<int> layer_lengths() const;
    int final_length() const;
    int flatten_dim() const { return final_length() * channels; }
    int in_channels(int layer) const { return layer == 0 ? num_leads : channels; }

    friend bool operator==(const Architecture&, const Architecture&) = default;
};

/// Dense [n x c x l] activations, contiguous in l.
template <class T>
struct Tensor3 {
    int n = 0;
    int c = 0;
    int l = 0;
    std::vector<T> data;

    Tensor3() = default;
    Tensor3(int n_, int c_, int l_, T fill = T{})
        : n(n_), c(c_), l(l_), data(static_cast<std::size_t>(n_) * c_ * l_, fill) {}

    T* row(int i, int ch) { return data.data() + (static_cast<std::size_t>(i) * c + ch) * l; }
    const T* row(int i, int ch) const { return data.data() + (static_cast<std::size_t>(i) * c + ch) * l; }
    T& at(int i, int ch, int t) { return row(i, ch)[t]; }
    T at(int i, int ch, int t) const { return row(i, ch)[t]; }
};

template <class T>
struct ConvLayerParams {
    int out_channels = 0;
    int in_channels = 0;
    int kernel = 0;
    std::vector<T> weights;  // [out x in x kernel]
    std::vector<T> bias;     // [out]
    std::vector<T> bn_gamma;
    std::vector<T> bn_beta;
    std::vector<T> bn_running_mean;  // not learned
    std::vector<T> bn_running_var;   // not learned

    T& w(int o, int i, int k) { return weights[(static_cast<std::size_t>(o) * in_channels + i) * kernel + k]; }
    T w(int o, int i, int k) const { return weights[(static_cast<std::size_t>(o) * in_channels + i) * kernel + k]; }
};

template <class T>
struct ModelParams {
    Architecture arch;
    std::vector<ConvLayerParams<T>> conv;
    std::vector<T> dense_weights;  // [flatten_dim x num_classes]
    std::vector<T> dense_bias;     // [num_classes]
};

/// Names of the learnable tensors in their fixed order: per conv layer
/// weight, bias, bn_gamma, bn_beta; then dense weight and bias.
std::vector<std::string> learnable_names(const Architecture& arch);

template <class T>
std::vector<std::span<T>> learnables(ModelParams<T>& params);
template <class T>
std::vector<std::span<const T>> learnables(const ModelParams<T>& params);

/// Gradient tensors in learnable order.
template <class T>
struct Gradients {
    std::vector<std::vector<T>> tensors;
};

template <class T>
Gradients<T> zero_gradients(const ModelParams<T>& params);

/// He-uniform weights (zero mean, standard deviation sqrt(2 / fan_in)); zero
/// biases and bn_beta, unit bn_gamma, running statistics (0, 1).
template <class T>
ModelParams<T> build_model(const Architecture& arch, Rng& rng);

/// Convenience overload: default architecture with `num_leads` inputs (1 to 3).
ModelParams<float> build_model(int num_leads, Rng& rng);

template <class To, class From>
ModelParams<To> cast_params(const ModelParams<From>& params);

enum class Mode { Train, Eval };

struct BatchNormConfig {
    double eps = 1e-5;
    double momentum = 0.1;
};

// ---- layers -------------------------------------------------------------

template <class T>
Tensor3<T> conv1d_forward(const Tensor3<T>& input, const ConvLayerParams<T>& layer, int stride);

template <class T>
struct ConvGrads {
    std::vector<T> weights;
    std::vector<T> bias;
    Tensor3<T> input;  // empty unless requested
};

template <class T>
ConvGrads<T> conv1d_backward(const Tensor3<T>& input, const ConvLayerParams<T>& layer, int stride,
                             const Tensor3<T>& grad_output, bool need_input_grad);

template <class T>
Tensor3<T> relu_forward(const Tensor3<T>& x);

/// grad_output masked by indicator(x > 0).
template <class T>
Tensor3<T> relu_backward(const Tensor3<T>& x, const Tensor3<T>& grad_output);

enum class Activation { ReLU, Softplus };

/// "relu" or "softplus".
Activation activation_from_string(std::string_view name);

template <class T>
Tensor3<T> activation_forward(const Tensor3<T>& x, Activation act);

/// Gradient through the activation, computed from its cached output.
template <class T>
Tensor3<T> activation_backward(const Tensor3<T>& output, const Tensor3<T>& grad_output, Activation act);

struct BatchStats {
    std::vector<double> mean;
    std::vector<double> var;  // biased, over (batch, length)
    std::size_t count = 0;    // batch * length
};

template <class T>
struct BatchNormCache {
    Tensor3<T> normalized;          // x-hat
    std::vector<double> inv_std;
    BatchStats stats;
};

/// Train mode normalizes with batch statistics (recorded in `cache`), eval
/// mode with the running statistics. Running statistics are not touched.
template <class T>
Tensor3<T> batchnorm_forward(const Tensor3<T>& x, const ConvLayerParams<T>& layer, Mode mode,
                             const BatchNormConfig& config, BatchNormCache<T>* cache = nullptr);

template <class T>
struct BatchNormGrads {
    Tensor3<T> input;
    std::vector<T> gamma;
    std::vector<T> beta;
};

template <class T>
BatchNormGrads<T> batchnorm_backward(const BatchNormCache<T>& cache, const ConvLayerParams<T>& layer,
                                     const Tensor3<T>& grad_output);

/// running <- (1 - momentum) * running + momentum * batch statistic; the
/// variance uses the unbiased batch estimate.
template <class T>
void update_running_stats(ConvLayerParams<T>& layer, const BatchStats& stats, double momentum);

/// logits[b][j] = bias[j] + sum_i x[b][i] * weights[i][j]
template <class T>
std::vector<T> dense_forward(std::span<const T> x, int batch, std::span<const T> weights, std::span<const T> bias);

template <class T>
struct DenseGrads {
    std::vector<T> input;
    std::vector<T> weights;
    std::vector<T> bias;
};

template <class T>
DenseGrads<T> dense_backward(std::span<const T> x, int batch, std::span<const T> weights,
                             std::span<const T> grad_logits);

template <class T>
struct LossResult {
    double loss = 0.0;
    std::vector<T> grad;  // d loss / d logits, [batch x classes]
};

/// Mean over the batch of -sum_k t_k log softmax(logits)_k with targets
/// (1 - eps) on the true class and eps spread over the others.
template <class T>
LossResult<T> smoothed_cross_entropy(std::span<const T> logits, std::span<const int> labels, double eps,
                                     int num_classes = 2);

// ---- whole model ---------------------------------------------------------

template <class T>
struct LayerCache {
    Tensor3<T> input;       // conv input
    Tensor3<T> activation;  // relu output, the batchnorm input
    BatchNormCache<T> bn;
};

template <class T>
struct ForwardCache {
    std::vector<LayerCache<T>> layers;
    Tensor3<T> flat;  // final feature map, flattened per sample
    bool valid = false;
};

template <class T>
struct ForwardResult {
    std::vector<T> logits;  // [batch x classes]
    int batch = 0;
    /// Train mode only: per-layer batch statistics for update_running_stats.
    std::vector<BatchStats> batch_stats;
};

/// conv -> relu -> batchnorm for every layer, then flatten and dense.
/// Pure in both modes; running statistics are updated by apply_batch_stats.
template <class T>
ForwardResult<T> model_forward(const ModelParams<T>& params, const Tensor3<T>& input, Mode mode,
                               const BatchNormConfig& bn = {}, ForwardCache<T>* cache = nullptr);

template <class T>
Gradients<T> model_backward(const ModelParams<T>& params, const ForwardCache<T>& cache,
                            std::span<const T> grad_logits);

template <class T>
void apply_batch_stats(ModelParams<T>& params, const std::vector<BatchStats>& stats, double momentum);

/// Stacks windows into an [n x leads x length] tensor.
template <class T>
Tensor3<T> stack_windows(std::span<const Window> windows);

// ---- optimizer ---------------------------------------------------------

struct AdamConfig {
    double lr = 1e-4;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

template <class T>
struct AdamState {
    AdamConfig config;
    std::vector<std::vector<T>> first_moment;
    std::vector<std::vector<T>> second_moment;
    std::uint64_t step_count = 0;

    static AdamState init(const ModelParams<T>& params, const AdamConfig& config);
};

/// Bias-corrected Adam update. Throws NonFiniteGradient before touching any
/// state when a gradient entry is NaN or infinite.
template <class T>
void adam_step(ModelParams<T>& params, const Gradients<T>& grads, AdamState<T>& state);

} // namespace miecg::nn
