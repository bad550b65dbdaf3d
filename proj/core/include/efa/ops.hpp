#pragma once

#include <cstdint>
#include <vector>

#include "efa/tensor.hpp"

// Primitive numeric kernels. All ops are pure functions of their inputs and
// safe to call concurrently. float is the inference precision; double
// instantiations back the gradient-check path.
namespace efa {

enum class PoolMode { Max, Avg };
enum class Act { Silu, Sigmoid };

// weight is (c_out, c_in/groups, k, k); bias empty or length c_out.
// Zero padding.
template <typename T>
BasicTensor<T> conv2d(const BasicTensor<T>& x, const BasicTensor<T>& weight,
                      const std::vector<T>& bias, const ConvSpec& spec);

// Max padding is -inf (never selected on nonempty windows); avg excludes
// padded cells from the divisor.
template <typename T>
BasicTensor<T> pool2d(const BasicTensor<T>& x, PoolMode mode, const ConvSpec& spec);

// Max pooling that also reports the flat input index of each selected cell
// (ties broken by lowest flat index). Backs the autodiff routing rule.
template <typename T>
BasicTensor<T> pool2d_max_argmax(const BasicTensor<T>& x, const ConvSpec& spec,
                                 std::vector<std::int64_t>& argmax);

template <typename T>
BasicTensor<T> global_avg_pool(const BasicTensor<T>& x);

// Cross-channel 1-D convolution of a (n,c,1,1) descriptor with an odd-length
// weight, zero-padded along the channel axis.
template <typename T>
BasicTensor<T> conv1d_channels(const BasicTensor<T>& desc, const std::vector<T>& weight);

template <typename T>
BasicTensor<T> activation(const BasicTensor<T>& x, Act kind);

template <typename T>
T sigmoid_scalar(T v);
template <typename T>
T silu_scalar(T v);

// Per-channel (x - mean)/sqrt(var + eps) * gamma + beta; all vectors length c.
template <typename T>
BasicTensor<T> batchnorm_inference(const BasicTensor<T>& x, const std::vector<T>& gamma,
                                   const std::vector<T>& beta, const std::vector<T>& mean,
                                   const std::vector<T>& var, T eps);

template <typename T>
BasicTensor<T> concat_channels(const std::vector<const BasicTensor<T>*>& xs);

// Elementwise product with broadcast; weights must be (n,c,1,1) or (n,1,h,w).
template <typename T>
BasicTensor<T> scale(const BasicTensor<T>& x, const BasicTensor<T>& weights);

template <typename T>
BasicTensor<T> upsample_nearest2x(const BasicTensor<T>& x);

}  // namespace efa
