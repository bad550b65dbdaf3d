#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "efa/errors.hpp"

namespace efa {

// Dense 4-D NCHW tensor. Flat row-major storage; offset of (n,c,h,w) is
// ((n*C + c)*H + h)*W + w.
template <typename T>
struct BasicTensor {
  int n = 0, c = 0, h = 0, w = 0;
  std::vector<T> data;

  BasicTensor() = default;

  BasicTensor(int n_, int c_, int h_, int w_, T fill = T(0))
      : n(n_), c(c_), h(h_), w(w_) {
    if (n < 0 || c < 0 || h < 0 || w < 0) {
      throw DimensionError("tensor dims must be non-negative, got " + shape_str());
    }
    data.assign(static_cast<std::size_t>(numel()), fill);
  }

  static BasicTensor from(int n, int c, int h, int w, std::vector<T> values) {
    BasicTensor t;
    t.n = n;
    t.c = c;
    t.h = h;
    t.w = w;
    const auto want = static_cast<std::int64_t>(n) * c * h * w;
    if (static_cast<std::int64_t>(values.size()) != want) {
      throw DimensionError("tensor data length " + std::to_string(values.size()) +
                           " does not match shape " + t.shape_str());
    }
    t.data = std::move(values);
    return t;
  }

  std::int64_t numel() const {
    return static_cast<std::int64_t>(n) * c * h * w;
  }

  bool same_shape(const BasicTensor& o) const {
    return n == o.n && c == o.c && h == o.h && w == o.w;
  }

  std::string shape_str() const {
    return "(" + std::to_string(n) + "," + std::to_string(c) + "," +
           std::to_string(h) + "," + std::to_string(w) + ")";
  }

  std::int64_t offset(int in, int ic, int ih, int iw) const {
    return ((static_cast<std::int64_t>(in) * c + ic) * h + ih) * w + iw;
  }

  T& at(int in, int ic, int ih, int iw) {
    return data[static_cast<std::size_t>(offset(in, ic, ih, iw))];
  }
  const T& at(int in, int ic, int ih, int iw) const {
    return data[static_cast<std::size_t>(offset(in, ic, ih, iw))];
  }
};

using Tensor = BasicTensor<float>;
using DTensor = BasicTensor<double>;

template <typename U, typename T>
BasicTensor<U> cast_tensor(const BasicTensor<T>& x) {
  BasicTensor<U> out;
  out.n = x.n;
  out.c = x.c;
  out.h = x.h;
  out.w = x.w;
  out.data.resize(x.data.size());
  for (std::size_t i = 0; i < x.data.size(); ++i) {
    out.data[i] = static_cast<U>(x.data[i]);
  }
  return out;
}

// Geometry of a conv/pool window. Output spatial size is
// floor((in + 2p - k)/s) + 1 and must be >= 1.
struct ConvSpec {
  int kernel = 1;
  int stride = 1;
  int padding = 0;
  int groups = 1;
  bool has_bias = false;

  void validate() const {
    if (kernel < 1 || stride < 1 || padding < 0 || groups < 1) {
      throw ConfigError("invalid conv spec: k=" + std::to_string(kernel) +
                        " s=" + std::to_string(stride) + " p=" + std::to_string(padding) +
                        " g=" + std::to_string(groups));
    }
  }

  int out_dim(int in) const {
    const int num = in + 2 * padding - kernel;
    if (num < 0) {
      throw GeometryError("window k=" + std::to_string(kernel) + " does not fit input dim " +
                          std::to_string(in) + " with padding " + std::to_string(padding));
    }
    const int out = num / stride + 1;
    if (out < 1) {
      throw GeometryError("conv spec yields empty output for input dim " + std::to_string(in));
    }
    return out;
  }
};

}  // namespace efa
