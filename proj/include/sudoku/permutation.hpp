#ifndef SUDOKU_PERMUTATION_HPP
#define SUDOKU_PERMUTATION_HPP

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace sudoku {

/// Bijection on {1..m}. All cell indices in the public API are 1-based.
class Permutation {
public:
  explicit Permutation(int degree) : image_(degree) {
    std::iota(image_.begin(), image_.end(), 1);
  }

  explicit Permutation(std::vector<int> image) : image_(std::move(image)) {
    std::vector<bool> seen(image_.size(), false);
    for (int v : image_) {
      if (v < 1 || v > static_cast<int>(image_.size()) || seen[v - 1])
        throw std::invalid_argument("permutation image is not a bijection");
      seen[v - 1] = true;
    }
  }

  static Permutation identity(int degree) { return Permutation(degree); }

  int degree() const { return static_cast<int>(image_.size()); }

  int operator()(int i) const { return image_[i - 1]; }

  bool is_identity() const {
    for (int i = 1; i <= degree(); ++i)
      if ((*this)(i) != i) return false;
    return true;
  }

  Permutation inverse() const {
    std::vector<int> inv(image_.size());
    for (int i = 1; i <= degree(); ++i) inv[image_[i - 1] - 1] = i;
    return Permutation(std::move(inv));
  }

  // (a * b)(i) = a(b(i))
  friend Permutation operator*(const Permutation& a, const Permutation& b) {
    if (a.degree() != b.degree())
      throw std::invalid_argument("permutation degree mismatch");
    std::vector<int> img(a.image_.size());
    for (int i = 1; i <= a.degree(); ++i) img[i - 1] = a(b(i));
    return Permutation(std::move(img));
  }

  friend bool operator==(const Permutation& a, const Permutation& b) {
    return a.image_ == b.image_;
  }
  friend bool operator!=(const Permutation& a, const Permutation& b) {
    return !(a == b);
  }

  const std::vector<int>& image() const { return image_; }

  /// Disjoint-cycle notation, fixed points omitted; identity prints as "()".
  std::string cycle_string() const {
    std::ostringstream out;
    std::vector<bool> done(image_.size(), false);
    bool any = false;
    for (int i = 1; i <= degree(); ++i) {
      if (done[i - 1] || (*this)(i) == i) continue;
      any = true;
      out << '(';
      int j = i;
      bool first = true;
      do {
        if (!first) out << ' ';
        out << j;
        first = false;
        done[j - 1] = true;
        j = (*this)(j);
      } while (j != i);
      out << ')';
    }
    if (!any) return "()";
    return out.str();
  }

private:
  std::vector<int> image_;  // image_[i-1] = pi(i)
};

/// pi(x): component i of the result is x_{pi^{-1}(i)}.
inline Eigen::VectorXi apply_perm(const Permutation& pi, const Eigen::VectorXi& x) {
  if (x.size() != pi.degree())
    throw std::invalid_argument("apply_perm: length mismatch");
  Eigen::VectorXi y(x.size());
  for (int i = 1; i <= pi.degree(); ++i) y[pi(i) - 1] = x[i - 1];
  return y;
}

}  // namespace sudoku

#endif
