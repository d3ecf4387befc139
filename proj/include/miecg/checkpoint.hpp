#pragma once

#include "miecg/nn.hpp"

#include <filesystem>

namespace miecg {

/// Binary checkpoint layout (all integers and floats little-endian):
///
///   "MIECGCKP" | u32 version
///   descriptor: u32 leads, channels, kernel, stride, layers, input_length,
///               classes | f64 label_smoothing | str activation |
///               u32 n, n x str lead name
///   adam:       u64 step_count | f64 lr, beta1, beta2, eps
///   u32 blob count, then per blob: str name | u64 count | count x f32
///   u64 FNV-1a of every preceding byte
///
/// where str is u32 length + bytes. Blobs follow the layer order: conv weight,
/// bias, bn_gamma, bn_beta, bn_running_mean, bn_running_var for each layer,
/// dense weight and bias, then adam.m.* and adam.v.* per learnable tensor.
inline constexpr char kCheckpointMagic[8] = {'M', 'I', 'E', 'C', 'G', 'C', 'K', 'P'};
inline constexpr std::uint32_t kCheckpointVersion = 1;

struct Checkpoint {
    nn::ModelParams<float> params;
    nn::AdamState<float> adam;
    double label_smoothing = 0.0;
};

void save_checkpoint(const nn::ModelParams<float>& params, const nn::AdamState<float>& adam,
                     double label_smoothing, const std::filesystem::path& path);

/// Throws CorruptCheckpoint on a bad magic, truncation, checksum failure, or
/// blobs inconsistent with the descriptor. When `expected` is given, its
/// architecture must match the stored one.
Checkpoint load_checkpoint(const std::filesystem::path& path, const nn::Architecture* expected = nullptr);

} // namespace miecg
