#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace sbc {

using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;

/// Row-major dense integer matrix.
template <class T>
struct IntMatrix {
  int rows = 0, cols = 0;
  std::vector<T> data;

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, T(0)) {}

  static IntMatrix identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  T& operator()(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
  const T& operator()(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }
  bool operator==(const IntMatrix&) const = default;

  template <class U>
  IntMatrix<U> cast() const {
    IntMatrix<U> m(rows, cols);
    for (std::size_t i = 0; i < data.size(); ++i) m.data[i] = U(data[i]);
    return m;
  }
};

template <class T>
IntMatrix<T> operator*(const IntMatrix<T>& a, const IntMatrix<T>& b) {
  if (a.cols != b.rows) throw std::invalid_argument("matrix product: shape mismatch");
  IntMatrix<T> c(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k) {
      if (a(i, k) == 0) continue;
      for (int j = 0; j < b.cols; ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

template <class T>
T abs_value(const T& x) {
  return x < 0 ? T(-x) : x;
}

template <class T>
T gcd_value(T a, T b) {
  a = abs_value(a);
  b = abs_value(b);
  while (b != 0) {
    T r = a % b;
    a = b;
    b = r;
  }
  return a;
}

template <class T>
struct SmithForm {
  IntMatrix<T> U, S, V;  // U * M * V = S
  std::vector<T> diagonal;  // nonzero invariant factors, s1 | s2 | ...
};

namespace detail {

template <class T>
void swap_rows(IntMatrix<T>& m, int a, int b) {
  if (a == b) return;
  for (int j = 0; j < m.cols; ++j) std::swap(m(a, j), m(b, j));
}

template <class T>
void swap_cols(IntMatrix<T>& m, int a, int b) {
  if (a == b) return;
  for (int i = 0; i < m.rows; ++i) std::swap(m(i, a), m(i, b));
}

// row dst += q * row src
template <class T>
void add_row(IntMatrix<T>& m, int dst, int src, const T& q) {
  for (int j = 0; j < m.cols; ++j)
    if (m(src, j) != 0) m(dst, j) += q * m(src, j);
}

template <class T>
void add_col(IntMatrix<T>& m, int dst, int src, const T& q) {
  for (int i = 0; i < m.rows; ++i)
    if (m(i, src) != 0) m(i, dst) += q * m(i, src);
}

template <class T>
void negate_row(IntMatrix<T>& m, int r) {
  for (int j = 0; j < m.cols; ++j) m(r, j) = -m(r, j);
}

}  // namespace detail

/// Smith normal form. With `transforms` false U and V are left empty.
template <class T>
SmithForm<T> smith_normal_form(const IntMatrix<T>& m, bool transforms = true) {
  using namespace detail;
  SmithForm<T> out;
  IntMatrix<T>& a = out.S;
  a = m;
  IntMatrix<T> u, v;
  if (transforms) {
    u = IntMatrix<T>::identity(m.rows);
    v = IntMatrix<T>::identity(m.cols);
  }
  const int n = std::min(m.rows, m.cols);
  for (int t = 0; t < n; ++t) {
    // smallest nonzero entry of the remaining block
    int pr = -1, pc = -1;
    for (int i = t; i < a.rows; ++i)
      for (int j = t; j < a.cols; ++j)
        if (a(i, j) != 0 && (pr < 0 || abs_value(a(i, j)) < abs_value(a(pr, pc)))) pr = i, pc = j;
    if (pr < 0) break;
    swap_rows(a, t, pr);
    swap_cols(a, t, pc);
    if (transforms) {
      swap_rows(u, t, pr);
      swap_cols(v, t, pc);
    }
    for (;;) {
      bool changed = false;
      for (int i = t + 1; i < a.rows; ++i) {
        if (a(i, t) == 0) continue;
        T q = a(i, t) / a(t, t);
        add_row(a, i, t, T(-q));
        if (transforms) add_row(u, i, t, T(-q));
        if (a(i, t) != 0) {
          swap_rows(a, t, i);
          if (transforms) swap_rows(u, t, i);
          changed = true;
        }
      }
      for (int j = t + 1; j < a.cols; ++j) {
        if (a(t, j) == 0) continue;
        T q = a(t, j) / a(t, t);
        add_col(a, j, t, T(-q));
        if (transforms) add_col(v, j, t, T(-q));
        if (a(t, j) != 0) {
          swap_cols(a, t, j);
          if (transforms) swap_cols(v, t, j);
          changed = true;
        }
      }
      if (changed) continue;
      // divisibility of the remaining block
      int bad = -1;
      for (int i = t + 1; i < a.rows && bad < 0; ++i)
        for (int j = t + 1; j < a.cols; ++j)
          if (a(i, j) % a(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      add_row(a, t, bad, T(1));
      if (transforms) add_row(u, t, bad, T(1));
    }
    if (a(t, t) < 0) {
      negate_row(a, t);
      if (transforms) negate_row(u, t);
    }
    out.diagonal.push_back(a(t, t));
  }
  if (transforms) {
    out.U = std::move(u);
    out.V = std::move(v);
  }
  return out;
}

/// Fraction-free determinant of a square matrix.
template <class T>
T determinant(IntMatrix<T> a) {
  if (a.rows != a.cols) throw std::invalid_argument("determinant: matrix is not square");
  const int n = a.rows;
  T sign(1), prev(1);
  for (int k = 0; k < n; ++k) {
    if (a(k, k) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (a(i, k) != 0) {
          p = i;
          break;
        }
      if (p < 0) return T(0);
      detail::swap_rows(a, k, p);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return n == 0 ? T(1) : T(sign * a(n - 1, n - 1));
}

/// adj(A) with A * adj(A) = det(A) * I.
template <class T>
IntMatrix<T> adjugate(const IntMatrix<T>& a) {
  const int n = a.rows;
  IntMatrix<T> adj(n, n);
  if (n == 1) {
    adj(0, 0) = T(1);
    return adj;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      IntMatrix<T> minor(n - 1, n - 1);
      for (int r = 0, mr = 0; r < n; ++r) {
        if (r == i) continue;
        for (int c = 0, mc = 0; c < n; ++c) {
          if (c == j) continue;
          minor(mr, mc++) = a(r, c);
        }
        ++mr;
      }
      T d = determinant(minor);
      adj(j, i) = (i + j) % 2 ? T(-d) : d;
    }
  return adj;
}

/// Index of the column span in its saturation is 1 (columns span a primitive sublattice).
template <class T>
bool is_saturated(const IntMatrix<T>& m) {
  auto f = smith_normal_form(m, false);
  return std::all_of(f.diagonal.begin(), f.diagonal.end(), [](const T& x) { return x == 1; });
}

/// Rank and nonzero invariant factors of a sparse integer matrix.
/// Unit pivots are eliminated sparsely, the rest goes through the dense form.
struct SparseEntry {
  int row, col;
  long long value;
};

namespace detail {

struct Overflow {};

inline long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline long long checked_sub(long long a, long long b) {
  long long r;
  if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline BigInt checked_mul(const BigInt& a, const BigInt& b) { return a * b; }
inline BigInt checked_sub(const BigInt& a, const BigInt& b) { return a - b; }

template <class T>
std::vector<BigInt> invariant_factors_impl(int rows, int cols, const std::vector<SparseEntry>& entries) {
  using Row = std::map<int, T>;
  std::vector<Row> r(rows);
  std::vector<std::vector<int>> col_rows(cols);
  for (const auto& e : entries) {
    if (e.value == 0) continue;
    r[e.row][e.col] = r[e.row][e.col] + T(e.value);
  }
  for (int i = 0; i < rows; ++i) {
    for (auto it = r[i].begin(); it != r[i].end();) it = it->second == 0 ? r[i].erase(it) : std::next(it);
    for (const auto& [c, x] : r[i]) col_rows[c].push_back(i);
  }
  std::vector<char> alive(rows, 1);
  std::vector<BigInt> factors;
  for (bool found = true; found;) {
    found = false;
    int best_r = -1, best_c = -1;
    std::size_t best_cost = 0;
    for (int i = 0; i < rows; ++i) {
      if (!alive[i]) continue;
      for (const auto& [c, x] : r[i]) {
        if (x != 1 && x != -1) continue;
        std::size_t cost = (r[i].size() - 1) * col_rows[c].size();
        if (best_r < 0 || cost < best_cost) best_r = i, best_c = c, best_cost = cost;
        if (cost == 0) break;
      }
      if (best_r >= 0 && best_cost == 0) break;
    }
    if (best_r < 0) break;
    found = true;
    const T piv = r[best_r].at(best_c);
    const Row prow = r[best_r];
    alive[best_r] = 0;
    std::vector<int> targets = col_rows[best_c];
    for (int k : targets) {
      if (!alive[k]) continue;
      auto it = r[k].find(best_c);
      if (it == r[k].end()) continue;
      const T q = it->second * piv;  // piv = ±1, so q = a_k / piv
      for (const auto& [c, x] : prow) {
        auto jt = r[k].find(c);
        if (jt == r[k].end()) {
          r[k][c] = T(-checked_mul(q, x));
          col_rows[c].push_back(k);
        } else {
          jt->second = checked_sub(jt->second, checked_mul(q, x));
          if (jt->second == 0) r[k].erase(jt);
        }
      }
    }
    factors.push_back(BigInt(1));
  }
  // dense remainder
  std::vector<int> live_rows;
  std::map<int, int> live_cols;
  for (int i = 0; i < rows; ++i)
    if (alive[i] && !r[i].empty()) {
      live_rows.push_back(i);
      for (const auto& [c, x] : r[i]) live_cols.emplace(c, 0);
    }
  int idx = 0;
  for (auto& [c, k] : live_cols) k = idx++;
  IntMatrix<BigInt> dense(static_cast<int>(live_rows.size()), idx);
  for (std::size_t i = 0; i < live_rows.size(); ++i)
    for (const auto& [c, x] : r[live_rows[i]]) dense(static_cast<int>(i), live_cols[c]) = BigInt(x);
  auto f = smith_normal_form(dense, false);
  factors.insert(factors.end(), f.diagonal.begin(), f.diagonal.end());
  return factors;
}

}  // namespace detail

inline std::vector<BigInt> invariant_factors(int rows, int cols, const std::vector<SparseEntry>& entries) {
  try {
    return detail::invariant_factors_impl<long long>(rows, cols, entries);
  } catch (const detail::Overflow&) {
    return detail::invariant_factors_impl<BigInt>(rows, cols, entries);
  }
}

}  // namespace sbc
