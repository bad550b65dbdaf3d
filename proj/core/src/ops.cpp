#include "efa/ops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace efa {

namespace {

template <typename T>
void check_conv_shapes(const BasicTensor<T>& x, const BasicTensor<T>& weight,
                       const std::vector<T>& bias, const ConvSpec& spec) {
  spec.validate();
  if (x.c % spec.groups != 0 || weight.n % spec.groups != 0) {
    throw DimensionError("channels " + std::to_string(x.c) + "->" + std::to_string(weight.n) +
                         " not divisible by groups " + std::to_string(spec.groups));
  }
  if (weight.c != x.c / spec.groups || weight.h != spec.kernel || weight.w != spec.kernel) {
    throw DimensionError("weight shape " + weight.shape_str() + " inconsistent with input " +
                         x.shape_str() + " and spec k=" + std::to_string(spec.kernel) +
                         " g=" + std::to_string(spec.groups));
  }
  if (!bias.empty() && static_cast<int>(bias.size()) != weight.n) {
    throw DimensionError("bias length " + std::to_string(bias.size()) + " != c_out " +
                         std::to_string(weight.n));
  }
}

int floor_div(int a, int b) {
  const int q = a / b, r = a % b;
  return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

int ceil_div(int a, int b) { return -floor_div(-a, b); }

}  // namespace

template <typename T>
BasicTensor<T> conv2d(const BasicTensor<T>& x, const BasicTensor<T>& weight,
                      const std::vector<T>& bias, const ConvSpec& spec) {
  check_conv_shapes(x, weight, bias, spec);
  const int ho = spec.out_dim(x.h);
  const int wo = spec.out_dim(x.w);
  const int c_out = weight.n;
  const int cig = x.c / spec.groups;   // input channels per group
  const int cog = c_out / spec.groups;  // output channels per group

  BasicTensor<T> out(x.n, c_out, ho, wo);
  const int k = spec.kernel, s = spec.stride, p = spec.padding;

  for (int in = 0; in < x.n; ++in) {
    for (int g = 0; g < spec.groups; ++g) {
      for (int ocg = 0; ocg < cog; ++ocg) {
        const int oc = g * cog + ocg;
        T* out_ch = out.data.data() + out.offset(in, oc, 0, 0);
        for (int icg = 0; icg < cig; ++icg) {
          const int ic = g * cig + icg;
          const T* in_ch = x.data.data() + x.offset(in, ic, 0, 0);
          const T* w_k = weight.data.data() + weight.offset(oc, icg, 0, 0);
          for (int kh = 0; kh < k; ++kh) {
            for (int kw = 0; kw < k; ++kw) {
              const T wv = w_k[kh * k + kw];
              // valid output range for this tap: 0 <= o*s + k_off - p < in_dim
              const int oh_lo = std::max(0, ceil_div(p - kh, s));
              const int oh_hi = std::min(ho - 1, floor_div(x.h - 1 + p - kh, s));
              const int ow_lo = std::max(0, ceil_div(p - kw, s));
              const int ow_hi = std::min(wo - 1, floor_div(x.w - 1 + p - kw, s));
              for (int oh = oh_lo; oh <= oh_hi; ++oh) {
                const int ih = oh * s + kh - p;
                const T* in_row = in_ch + static_cast<std::int64_t>(ih) * x.w + (ow_lo * s + kw - p);
                T* out_row = out_ch + static_cast<std::int64_t>(oh) * wo + ow_lo;
                const int count = ow_hi - ow_lo + 1;
                if (s == 1) {
                  for (int i = 0; i < count; ++i) out_row[i] += wv * in_row[i];
                } else {
                  for (int i = 0; i < count; ++i) out_row[i] += wv * in_row[static_cast<std::int64_t>(i) * s];
                }
              }
            }
          }
        }
        if (!bias.empty()) {
          const T b = bias[oc];
          for (std::int64_t i = 0; i < static_cast<std::int64_t>(ho) * wo; ++i) out_ch[i] += b;
        }
      }
    }
  }
  return out;
}

template <typename T>
BasicTensor<T> pool2d(const BasicTensor<T>& x, PoolMode mode, const ConvSpec& spec) {
  spec.validate();
  if (spec.padding >= spec.kernel) {
    throw GeometryError("pool padding " + std::to_string(spec.padding) +
                        " >= kernel " + std::to_string(spec.kernel) +
                        " puts a window entirely in padding");
  }
  const int ho = spec.out_dim(x.h);
  const int wo = spec.out_dim(x.w);
  const int k = spec.kernel, s = spec.stride, p = spec.padding;
  BasicTensor<T> out(x.n, x.c, ho, wo);

  for (int in = 0; in < x.n; ++in) {
    for (int ic = 0; ic < x.c; ++ic) {
      const T* in_ch = x.data.data() + x.offset(in, ic, 0, 0);
      T* out_ch = out.data.data() + out.offset(in, ic, 0, 0);
      for (int oh = 0; oh < ho; ++oh) {
        const int h_lo = std::max(0, oh * s - p);
        const int h_hi = std::min(x.h, oh * s - p + k);
        for (int ow = 0; ow < wo; ++ow) {
          const int w_lo = std::max(0, ow * s - p);
          const int w_hi = std::min(x.w, ow * s - p + k);
          if (mode == PoolMode::Max) {
            T best = -std::numeric_limits<T>::infinity();
            for (int ih = h_lo; ih < h_hi; ++ih) {
              const T* row = in_ch + static_cast<std::int64_t>(ih) * x.w;
              for (int iw = w_lo; iw < w_hi; ++iw) {
                if (row[iw] > best) best = row[iw];
              }
            }
            out_ch[static_cast<std::int64_t>(oh) * wo + ow] = best;
          } else {
            T sum = T(0);
            for (int ih = h_lo; ih < h_hi; ++ih) {
              const T* row = in_ch + static_cast<std::int64_t>(ih) * x.w;
              for (int iw = w_lo; iw < w_hi; ++iw) sum += row[iw];
            }
            const int count = (h_hi - h_lo) * (w_hi - w_lo);
            out_ch[static_cast<std::int64_t>(oh) * wo + ow] = sum / static_cast<T>(count);
          }
        }
      }
    }
  }
  return out;
}

template <typename T>
BasicTensor<T> pool2d_max_argmax(const BasicTensor<T>& x, const ConvSpec& spec,
                                 std::vector<std::int64_t>& argmax) {
  spec.validate();
  if (spec.padding >= spec.kernel) {
    throw GeometryError("pool padding >= kernel puts a window entirely in padding");
  }
  const int ho = spec.out_dim(x.h);
  const int wo = spec.out_dim(x.w);
  const int k = spec.kernel, s = spec.stride, p = spec.padding;
  BasicTensor<T> out(x.n, x.c, ho, wo);
  argmax.assign(static_cast<std::size_t>(out.numel()), -1);

  std::int64_t oi = 0;
  for (int in = 0; in < x.n; ++in) {
    for (int ic = 0; ic < x.c; ++ic) {
      for (int oh = 0; oh < ho; ++oh) {
        for (int ow = 0; ow < wo; ++ow, ++oi) {
          const int h_lo = std::max(0, oh * s - p);
          const int h_hi = std::min(x.h, oh * s - p + k);
          const int w_lo = std::max(0, ow * s - p);
          const int w_hi = std::min(x.w, ow * s - p + k);
          T best = -std::numeric_limits<T>::infinity();
          std::int64_t best_idx = -1;
          for (int ih = h_lo; ih < h_hi; ++ih) {
            for (int iw = w_lo; iw < w_hi; ++iw) {
              const std::int64_t idx = x.offset(in, ic, ih, iw);
              if (x.data[idx] > best) {  // strict: first max wins, lowest flat index
                best = x.data[idx];
                best_idx = idx;
              }
            }
          }
          out.data[oi] = best;
          argmax[oi] = best_idx;
        }
      }
    }
  }
  return out;
}

template <typename T>
BasicTensor<T> global_avg_pool(const BasicTensor<T>& x) {
  if (x.h < 1 || x.w < 1) {
    throw GeometryError("global_avg_pool needs h*w >= 1, got " + x.shape_str());
  }
  BasicTensor<T> out(x.n, x.c, 1, 1);
  const std::int64_t hw = static_cast<std::int64_t>(x.h) * x.w;
  for (int in = 0; in < x.n; ++in) {
    for (int ic = 0; ic < x.c; ++ic) {
      const T* ch = x.data.data() + x.offset(in, ic, 0, 0);
      T sum = T(0);
      for (std::int64_t i = 0; i < hw; ++i) sum += ch[i];
      out.at(in, ic, 0, 0) = sum / static_cast<T>(hw);
    }
  }
  return out;
}

template <typename T>
BasicTensor<T> conv1d_channels(const BasicTensor<T>& desc, const std::vector<T>& weight) {
  if (desc.h != 1 || desc.w != 1) {
    throw DimensionError("conv1d_channels expects a (n,c,1,1) descriptor, got " + desc.shape_str());
  }
  const int k = static_cast<int>(weight.size());
  if (k < 1 || k % 2 == 0) {
    throw ConfigError("conv1d_channels kernel must be odd, got " + std::to_string(k));
  }
  const int half = (k - 1) / 2;
  BasicTensor<T> out(desc.n, desc.c, 1, 1);
  for (int in = 0; in < desc.n; ++in) {
    for (int ic = 0; ic < desc.c; ++ic) {
      T sum = T(0);
      for (int j = 0; j < k; ++j) {
        const int src = ic + j - half;
        if (src >= 0 && src < desc.c) sum += weight[j] * desc.at(in, src, 0, 0);
      }
      out.at(in, ic, 0, 0) = sum;
    }
  }
  return out;
}

template <typename T>
T sigmoid_scalar(T v) {
  if (v >= T(0)) {
    return T(1) / (T(1) + std::exp(-v));
  }
  const T e = std::exp(v);
  return e / (T(1) + e);
}

template <typename T>
T silu_scalar(T v) {
  return v * sigmoid_scalar(v);
}

template <typename T>
BasicTensor<T> activation(const BasicTensor<T>& x, Act kind) {
  BasicTensor<T> out = x;
  if (kind == Act::Silu) {
    for (auto& v : out.data) v = silu_scalar(v);
  } else {
    for (auto& v : out.data) v = sigmoid_scalar(v);
  }
  return out;
}

template <typename T>
BasicTensor<T> batchnorm_inference(const BasicTensor<T>& x, const std::vector<T>& gamma,
                                   const std::vector<T>& beta, const std::vector<T>& mean,
                                   const std::vector<T>& var, T eps) {
  const auto c = static_cast<std::size_t>(x.c);
  if (gamma.size() != c || beta.size() != c || mean.size() != c || var.size() != c) {
    throw DimensionError("batchnorm vector lengths must equal channel count " + std::to_string(x.c));
  }
  BasicTensor<T> out(x.n, x.c, x.h, x.w);
  const std::int64_t hw = static_cast<std::int64_t>(x.h) * x.w;
  for (int in = 0; in < x.n; ++in) {
    for (int ic = 0; ic < x.c; ++ic) {
      const T sc = gamma[ic] / std::sqrt(var[ic] + eps);
      const T sh = beta[ic] - mean[ic] * sc;
      const T* src = x.data.data() + x.offset(in, ic, 0, 0);
      T* dst = out.data.data() + out.offset(in, ic, 0, 0);
      for (std::int64_t i = 0; i < hw; ++i) dst[i] = src[i] * sc + sh;
    }
  }
  return out;
}

template <typename T>
BasicTensor<T> concat_channels(const std::vector<const BasicTensor<T>*>& xs) {
  if (xs.empty()) {
    throw DimensionError("concat_channels needs at least one input");
  }
  const auto& first = *xs.front();
  int c_total = 0;
  for (const auto* x : xs) {
    if (x->n != first.n || x->h != first.h || x->w != first.w) {
      throw DimensionError("concat_channels inputs disagree: " + first.shape_str() + " vs " +
                           x->shape_str());
    }
    c_total += x->c;
  }
  BasicTensor<T> out(first.n, c_total, first.h, first.w);
  const std::int64_t hw = static_cast<std::int64_t>(first.h) * first.w;
  for (int in = 0; in < first.n; ++in) {
    int oc = 0;
    for (const auto* x : xs) {
      for (int ic = 0; ic < x->c; ++ic, ++oc) {
        const T* src = x->data.data() + x->offset(in, ic, 0, 0);
        T* dst = out.data.data() + out.offset(in, oc, 0, 0);
        std::copy(src, src + hw, dst);
      }
    }
  }
  return out;
}

template <typename T>
BasicTensor<T> scale(const BasicTensor<T>& x, const BasicTensor<T>& weights) {
  const bool channel_form = weights.n == x.n && weights.c == x.c && weights.h == 1 && weights.w == 1;
  const bool spatial_form = weights.n == x.n && weights.c == 1 && weights.h == x.h && weights.w == x.w;
  if (!channel_form && !spatial_form) {
    throw DimensionError("scale weights " + weights.shape_str() +
                         " are neither (n,c,1,1) nor (n,1,h,w) for input " + x.shape_str());
  }
  BasicTensor<T> out(x.n, x.c, x.h, x.w);
  const std::int64_t hw = static_cast<std::int64_t>(x.h) * x.w;
  for (int in = 0; in < x.n; ++in) {
    for (int ic = 0; ic < x.c; ++ic) {
      const T* src = x.data.data() + x.offset(in, ic, 0, 0);
      T* dst = out.data.data() + out.offset(in, ic, 0, 0);
      if (channel_form) {
        const T g = weights.at(in, ic, 0, 0);
        for (std::int64_t i = 0; i < hw; ++i) dst[i] = src[i] * g;
      } else {
        const T* g = weights.data.data() + weights.offset(in, 0, 0, 0);
        for (std::int64_t i = 0; i < hw; ++i) dst[i] = src[i] * g[i];
      }
    }
  }
  return out;
}

template <typename T>
BasicTensor<T> upsample_nearest2x(const BasicTensor<T>& x) {
  BasicTensor<T> out(x.n, x.c, x.h * 2, x.w * 2);
  for (int in = 0; in < x.n; ++in) {
    for (int ic = 0; ic < x.c; ++ic) {
      for (int ih = 0; ih < x.h; ++ih) {
        const T* src = x.data.data() + x.offset(in, ic, ih, 0);
        T* d0 = out.data.data() + out.offset(in, ic, 2 * ih, 0);
        T* d1 = out.data.data() + out.offset(in, ic, 2 * ih + 1, 0);
        for (int iw = 0; iw < x.w; ++iw) {
          d0[2 * iw] = d0[2 * iw + 1] = src[iw];
          d1[2 * iw] = d1[2 * iw + 1] = src[iw];
        }
      }
    }
  }
  return out;
}

#define EFA_INSTANTIATE_OPS(T)                                                                   \
  template BasicTensor<T> conv2d<T>(const BasicTensor<T>&, const BasicTensor<T>&,                \
                                    const std::vector<T>&, const ConvSpec&);                     \
  template BasicTensor<T> pool2d<T>(const BasicTensor<T>&, PoolMode, const ConvSpec&);           \
  template BasicTensor<T> pool2d_max_argmax<T>(const BasicTensor<T>&, const ConvSpec&,           \
                                               std::vector<std::int64_t>&);                      \
  template BasicTensor<T> global_avg_pool<T>(const BasicTensor<T>&);                             \
  template BasicTensor<T> conv1d_channels<T>(const BasicTensor<T>&, const std::vector<T>&);      \
  template T sigmoid_scalar<T>(T);                                                               \
  template T silu_scalar<T>(T);                                                                  \
  template BasicTensor<T> activation<T>(const BasicTensor<T>&, Act);                             \
  template BasicTensor<T> batchnorm_inference<T>(const BasicTensor<T>&, const std::vector<T>&,   \
                                                 const std::vector<T>&, const std::vector<T>&,   \
                                                 const std::vector<T>&, T);                      \
  template BasicTensor<T> concat_channels<T>(const std::vector<const BasicTensor<T>*>&);         \
  template BasicTensor<T> scale<T>(const BasicTensor<T>&, const BasicTensor<T>&);                \
  template BasicTensor<T> upsample_nearest2x<T>(const BasicTensor<T>&);

EFA_INSTANTIATE_OPS(float)
EFA_INSTANTIATE_OPS(double)

#undef EFA_INSTANTIATE_OPS

}  // namespace efa
