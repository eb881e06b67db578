#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mplex/types.hpp"

namespace mplex {

/// N x N array of layer-index sets, stored as packed bitmasks.
class LayerSetMatrix {
 public:
  LayerSetMatrix() = default;
  LayerSetMatrix(std::size_t n, std::size_t n_layers)
      : n_(n), n_layers_(n_layers), words_((n_layers + 63) / 64), bits_(n * n * words_, 0) {}

  std::size_t size() const { return n_; }
  std::size_t n_layers() const { return n_layers_; }
  std::size_t words_per_entry() const { return words_; }

  void insert(std::size_t i, std::size_t j, LayerId layer) {
    entry(i, j)[layer / 64] |= std::uint64_t{1} << (layer % 64);
  }
  bool contains(std::size_t i, std::size_t j, LayerId layer) const {
    return (entry(i, j)[layer / 64] >> (layer % 64)) & 1U;
  }
  bool empty(std::size_t i, std::size_t j) const {
    for (auto w : entry(i, j))
      if (w != 0) return false;
    return true;
  }
  std::size_t count(std::size_t i, std::size_t j) const {
    std::size_t c = 0;
    for (auto w : entry(i, j)) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  /// Sorted 0-based layer indices of entry (i, j).
  std::vector<LayerId> layers(std::size_t i, std::size_t j) const {
    std::vector<LayerId> out;
    auto e = entry(i, j);
    for (std::size_t w = 0; w < e.size(); ++w) {
      auto bits = e[w];
      while (bits != 0) {
        out.push_back(static_cast<LayerId>(w * 64 + std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
    return out;
  }

  std::span<std::uint64_t> entry(std::size_t i, std::size_t j) {
    return {bits_.data() + (i * n_ + j) * words_, words_};
  }
  std::span<const std::uint64_t> entry(std::size_t i, std::size_t j) const {
    return {bits_.data() + (i * n_ + j) * words_, words_};
  }

  void clear(std::size_t i, std::size_t j) {
    for (auto& w : entry(i, j)) w = 0;
  }
  void assign(std::size_t i, std::size_t j, std::span<const std::uint64_t> src) {
    auto dst = entry(i, j);
    for (std::size_t w = 0; w < words_; ++w) dst[w] = src[w];
  }
  void merge(std::size_t i, std::size_t j, std::span<const std::uint64_t> src) {
    auto dst = entry(i, j);
    for (std::size_t w = 0; w < words_; ++w) dst[w] |= src[w];
  }

  friend bool operator==(const LayerSetMatrix&, const LayerSetMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t n_layers_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

}  // namespace mplex
