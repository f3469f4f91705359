#pragma once

#include <cmath>
#include <cstdlib>
#include <new>
#include <numeric>
#include <string>
#include <vector>

#include "ssc/error.hpp"

namespace ssc::nn {

/// Allocator with a fixed 64-byte boundary. Keeping every numeric buffer at
/// the same alignment class makes vectorized reductions independent of where
/// the heap happens to place them, which bit-level reproducibility relies on.
template <typename T>
struct AlignedAllocator {
  using value_type = T;
  static constexpr std::size_t kAlignment = 64;

  AlignedAllocator() = default;
  template <typename U>
  AlignedAllocator(const AlignedAllocator<U>&) {}

  T* allocate(std::size_t n) {
    return static_cast<T*>(::operator new(n * sizeof(T), std::align_val_t{kAlignment}));
  }
  void deallocate(T* p, std::size_t) noexcept {
    ::operator delete(p, std::align_val_t{kAlignment});
  }
  template <typename U>
  bool operator==(const AlignedAllocator<U>&) const {
    return true;
  }
};

template <typename T>
using AlignedVector = std::vector<T, AlignedAllocator<T>>;

/// Dense n-dimensional array, row-major, with optional gradient storage.
template <typename T>
struct Tensor {
  std::vector<int> shape;
  AlignedVector<T> values;
  AlignedVector<T> grad;  // same length as values when allocated

  Tensor() = default;
  explicit Tensor(std::vector<int> s) : shape(std::move(s)), values(numel(shape), T(0)) {}

  static std::size_t numel(const std::vector<int>& s) {
    std::size_t n = 1;
    for (const int d : s) {
      if (d < 0) throw ShapeError("tensor: negative dimension");
      n *= static_cast<std::size_t>(d);
    }
    return n;
  }

  std::size_t size() const { return values.size(); }
  int dim(int i) const { return shape[static_cast<std::size_t>(i)]; }
  T* data() { return values.data(); }
  const T* data() const { return values.data(); }

  T& at(int i) { return values[static_cast<std::size_t>(i)]; }
  T at(int i) const { return values[static_cast<std::size_t>(i)]; }
  T& at(int i, int j) { return values[static_cast<std::size_t>(i) * shape[1] + j]; }
  T at(int i, int j) const { return values[static_cast<std::size_t>(i) * shape[1] + j]; }
  T& at(int i, int j, int k) {
    return values[(static_cast<std::size_t>(i) * shape[1] + j) * shape[2] + k];
  }
  T at(int i, int j, int k) const {
    return values[(static_cast<std::size_t>(i) * shape[1] + j) * shape[2] + k];
  }
  T& at(int i, int j, int k, int l) {
    return values[((static_cast<std::size_t>(i) * shape[1] + j) * shape[2] + k) * shape[3] + l];
  }

  void alloc_grad() { grad.assign(values.size(), T(0)); }
  void zero_grad() { std::fill(grad.begin(), grad.end(), T(0)); }

  bool same_shape(const Tensor& other) const { return shape == other.shape; }
};

template <typename T>
std::string shape_string(const Tensor<T>& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.shape.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(t.shape[i]);
  }
  return s + ")";
}

template <typename T>
void check_finite(const Tensor<T>& t, const std::string& what) {
  for (const T v : t.values) {
    if (!std::isfinite(static_cast<double>(v))) {
      throw NumericError("non-finite value in " + what);
    }
  }
}

/// Named trainable tensor; `value.grad` is always allocated.
template <typename T>
struct Param {
  std::string name;
  Tensor<T> value;

  Param(std::string n, std::vector<int> shape) : name(std::move(n)), value(std::move(shape)) {
    value.alloc_grad();
  }
};

}  // namespace ssc::nn
