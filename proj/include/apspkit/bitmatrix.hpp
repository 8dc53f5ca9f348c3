#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace apspkit {

// dense boolean matrix, one bit per entry, rows padded to whole words
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), words_((cols + 63) / 64), bits_(rows * words_, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t words() const { return words_; }

  bool get(std::size_t i, std::size_t j) const {
    return (bits_[i * words_ + j / 64] >> (j % 64)) & 1u;
  }
  void set(std::size_t i, std::size_t j, bool v = true) {
    std::uint64_t m = std::uint64_t{1} << (j % 64);
    auto& w = bits_[i * words_ + j / 64];
    w = v ? (w | m) : (w & ~m);
  }
  std::uint64_t* row(std::size_t i) { return bits_.data() + i * words_; }
  const std::uint64_t* row(std::size_t i) const { return bits_.data() + i * words_; }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : bits_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool operator==(const BitMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && bits_ == o.bits_;
  }
  bool operator!=(const BitMatrix& o) const { return !(*this == o); }

  BitMatrix& operator|=(const BitMatrix& o) {
    for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] |= o.bits_[i];
    return *this;
  }
  // true iff every set bit of *this is set in o
  bool subset_of(const BitMatrix& o) const {
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i] & ~o.bits_[i]) return false;
    return true;
  }

  template <class F>
  void for_each_in_row(std::size_t i, F&& f) const {
    const std::uint64_t* r = row(i);
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t x = r[w];
      while (x) {
        int b = std::countr_zero(x);
        f(w * 64 + static_cast<std::size_t>(b));
        x &= x - 1;
      }
    }
  }

 private:
  std::size_t rows_ = 0, cols_ = 0, words_ = 0;
  std::vector<std::uint64_t> bits_;
};

// C = A·B over the boolean semiring (row-OR kernel)
BitMatrix bool_product(const BitMatrix& a, const BitMatrix& b);

}  // namespace apspkit
