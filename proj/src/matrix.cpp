#include "grpx/matrix.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

namespace grpx {

Mat::Mat(const Field& F, int rows, int cols) : F_(&F), rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("Mat: negative shape");
  if (packed()) {
    wpr_ = (cols + 63) / 64;
    bits_.assign(static_cast<size_t>(rows) * wpr_, 0);
  } else {
    v_.assign(static_cast<size_t>(rows) * cols, 0);
  }
}

Mat Mat::identity(const Field& F, int n) {
  Mat m(F, n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

Mat Mat::row_vector(const Field& F, const std::vector<unsigned>& entries) {
  Mat m(F, 1, static_cast<int>(entries.size()));
  for (size_t j = 0; j < entries.size(); ++j) m.set(0, static_cast<int>(j), entries[j]);
  return m;
}

unsigned Mat::get(int i, int j) const {
  if (packed())
    return (bits_[static_cast<size_t>(i) * wpr_ + j / 64] >> (j % 64)) & 1u;
  return v_[static_cast<size_t>(i) * cols_ + j];
}

void Mat::set(int i, int j, unsigned v) {
  if (packed()) {
    uint64_t& w = bits_[static_cast<size_t>(i) * wpr_ + j / 64];
    uint64_t bit = 1ull << (j % 64);
    if (v & 1u)
      w |= bit;
    else
      w &= ~bit;
  } else {
    v_[static_cast<size_t>(i) * cols_ + j] = v;
  }
}

Mat Mat::operator*(const Mat& o) const {
  if (F_ != o.F_ || cols_ != o.rows_)
    throw std::invalid_argument("Mat::mul: dimension/field mismatch");
  Mat r(*F_, rows_, o.cols_);
  if (packed()) {
    // r.row(i) = xor of rows of o selected by bits of this->row(i)
    for (int i = 0; i < rows_; ++i) {
      uint64_t* dst = &r.bits_[static_cast<size_t>(i) * r.wpr_];
      const uint64_t* src = &bits_[static_cast<size_t>(i) * wpr_];
      for (int k = 0; k < cols_; ++k) {
        if ((src[k / 64] >> (k % 64)) & 1u) {
          const uint64_t* ork = &o.bits_[static_cast<size_t>(k) * o.wpr_];
          for (int w = 0; w < o.wpr_; ++w) dst[w] ^= ork[w];
        }
      }
    }
  } else {
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        unsigned a = get(i, k);
        if (a == 0) continue;
        for (int j = 0; j < o.cols_; ++j) {
          unsigned b = o.get(k, j);
          if (b == 0) continue;
          r.set(i, j, F_->add(r.get(i, j), F_->mul(a, b)));
        }
      }
  }
  return r;
}

Mat Mat::operator+(const Mat& o) const {
  if (F_ != o.F_ || rows_ != o.rows_ || cols_ != o.cols_)
    throw std::invalid_argument("Mat::add: shape/field mismatch");
  Mat r = *this;
  if (packed()) {
    for (size_t i = 0; i < bits_.size(); ++i) r.bits_[i] ^= o.bits_[i];
  } else {
    for (size_t i = 0; i < v_.size(); ++i) r.v_[i] = F_->add(v_[i], o.v_[i]);
  }
  return r;
}

Mat Mat::operator-(const Mat& o) const {
  if (F_->p() == 2) return *this + o;
  Mat r = *this;
  for (size_t i = 0; i < v_.size(); ++i) r.v_[i] = F_->sub(v_[i], o.v_[i]);
  return r;
}

bool Mat::operator==(const Mat& o) const {
  return F_ == o.F_ && rows_ == o.rows_ && cols_ == o.cols_ &&
         bits_ == o.bits_ && v_ == o.v_;
}

Mat Mat::scaled(unsigned c) const {
  Mat r = *this;
  if (packed()) {
    if (c == 0) r.bits_.assign(bits_.size(), 0);
    return r;
  }
  for (auto& x : r.v_) x = F_->mul(x, c);
  return r;
}

Mat Mat::transpose() const {
  Mat r(*F_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.set(j, i, get(i, j));
  return r;
}

Mat Mat::kron(const Mat& o) const {
  Mat r(*F_, rows_ * o.rows_, cols_ * o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      unsigned a = get(i, j);
      if (a == 0) continue;
      for (int k = 0; k < o.rows_; ++k)
        for (int l = 0; l < o.cols_; ++l) {
          unsigned b = o.get(k, l);
          if (b) r.set(i * o.rows_ + k, j * o.cols_ + l, F_->mul(a, b));
        }
    }
  return r;
}

Mat Mat::pow(long long n) const {
  if (rows_ != cols_) throw std::invalid_argument("Mat::pow: not square");
  Mat base = *this;
  if (n < 0) {
    auto inv = base.inverse();
    if (!inv) throw std::domain_error("Mat::pow: singular");
    base = *inv;
    n = -n;
  }
  Mat r = identity(*F_, rows_);
  while (n) {
    if (n & 1) r = r * base;
    base = base * base;
    n >>= 1;
  }
  return r;
}

std::vector<int> Mat::rref() {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < cols_ && r < rows_; ++c) {
    int piv = -1;
    for (int i = r; i < rows_; ++i)
      if (get(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    // swap rows piv and r
    if (piv != r) {
      if (packed()) {
        for (int w = 0; w < wpr_; ++w)
          std::swap(bits_[static_cast<size_t>(piv) * wpr_ + w],
                    bits_[static_cast<size_t>(r) * wpr_ + w]);
      } else {
        for (int j = 0; j < cols_; ++j) {
          unsigned t = get(piv, j);
          set(piv, j, get(r, j));
          set(r, j, t);
        }
      }
    }
    unsigned lead = get(r, c);
    if (lead != 1) {
      unsigned li = F_->inv(lead);
      for (int j = c; j < cols_; ++j) set(r, j, F_->mul(get(r, j), li));
    }
    if (packed()) {
      const uint64_t* prow = &bits_[static_cast<size_t>(r) * wpr_];
      for (int i = 0; i < rows_; ++i) {
        if (i == r || get(i, c) == 0) continue;
        uint64_t* irow = &bits_[static_cast<size_t>(i) * wpr_];
        for (int w = 0; w < wpr_; ++w) irow[w] ^= prow[w];
      }
    } else {
      for (int i = 0; i < rows_; ++i) {
        if (i == r) continue;
        unsigned f = get(i, c);
        if (f == 0) continue;
        for (int j = c; j < cols_; ++j)
          set(i, j, F_->sub(get(i, j), F_->mul(f, get(r, j))));
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

int Mat::rank() const {
  Mat c = *this;
  return static_cast<int>(c.rref().size());
}

std::optional<Mat> Mat::inverse() const {
  if (rows_ != cols_) return std::nullopt;
  Mat aug(*F_, rows_, 2 * cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) aug.set(i, j, get(i, j));
    aug.set(i, cols_ + i, 1);
  }
  auto piv = aug.rref();
  if (static_cast<int>(piv.size()) != rows_ || piv.back() >= cols_) {
    // check pivots are exactly 0..n-1
  }
  for (int i = 0; i < rows_; ++i)
    if (i >= static_cast<int>(piv.size()) || piv[i] != i) return std::nullopt;
  Mat inv(*F_, rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) inv.set(i, j, aug.get(i, cols_ + j));
  return inv;
}

unsigned Mat::det() const {
  if (rows_ != cols_) throw std::invalid_argument("det: not square");
  Mat c = *this;
  unsigned d = 1;
  int r = 0;
  for (int col = 0; col < cols_; ++col) {
    int piv = -1;
    for (int i = r; i < rows_; ++i)
      if (c.get(i, col) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) return 0;
    if (piv != r) {
      for (int j = 0; j < cols_; ++j) {
        unsigned t = c.get(piv, j);
        c.set(piv, j, c.get(r, j));
        c.set(r, j, t);
      }
      d = F_->neg(d);
    }
    unsigned lead = c.get(r, col);
    d = F_->mul(d, lead);
    unsigned li = F_->inv(lead);
    for (int i = r + 1; i < rows_; ++i) {
      unsigned f = F_->mul(c.get(i, col), li);
      if (f == 0) continue;
      for (int j = col; j < cols_; ++j)
        c.set(i, j, F_->sub(c.get(i, j), F_->mul(f, c.get(r, j))));
    }
    ++r;
  }
  return d;
}

Mat Mat::nullspace() const {
  Mat c = *this;
  auto piv = c.rref();
  std::vector<char> is_piv(cols_, 0);
  for (int p : piv) is_piv[p] = 1;
  int nfree = cols_ - static_cast<int>(piv.size());
  Mat basis(*F_, nfree, cols_);
  int bi = 0;
  for (int fc = 0; fc < cols_; ++fc) {
    if (is_piv[fc]) continue;
    basis.set(bi, fc, 1);
    for (size_t r = 0; r < piv.size(); ++r)
      basis.set(bi, piv[r], F_->neg(c.get(static_cast<int>(r), fc)));
    ++bi;
  }
  return basis;
}

std::optional<Mat> Mat::solve(const Mat& b_row) const {
  if (b_row.cols() != rows_)
    throw std::invalid_argument("solve: rhs length != rows");
  Mat aug(*F_, rows_, cols_ + 1);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) aug.set(i, j, get(i, j));
    aug.set(i, cols_, b_row.get(0, i));
  }
  auto piv = aug.rref();
  if (!piv.empty() && piv.back() == cols_) return std::nullopt;  // inconsistent
  Mat x(*F_, 1, cols_);
  for (size_t r = 0; r < piv.size(); ++r) x.set(0, piv[r], aug.get(static_cast<int>(r), cols_));
  return x;
}

Mat Mat::row(int i) const {
  Mat r(*F_, 1, cols_);
  if (packed()) {
    std::copy(bits_.begin() + static_cast<size_t>(i) * wpr_,
              bits_.begin() + static_cast<size_t>(i + 1) * wpr_, r.bits_.begin());
  } else {
    std::copy(v_.begin() + static_cast<size_t>(i) * cols_,
              v_.begin() + static_cast<size_t>(i + 1) * cols_, r.v_.begin());
  }
  return r;
}

void Mat::set_row(int i, const Mat& v) {
  assert(v.cols() == cols_ && v.rows() == 1);
  if (packed()) {
    std::copy(v.bits_.begin(), v.bits_.end(), bits_.begin() + static_cast<size_t>(i) * wpr_);
  } else {
    std::copy(v.v_.begin(), v.v_.end(), v_.begin() + static_cast<size_t>(i) * cols_);
  }
}

Mat Mat::rows_slice(const std::vector<int>& idx) const {
  Mat r(*F_, static_cast<int>(idx.size()), cols_);
  for (size_t i = 0; i < idx.size(); ++i) r.set_row(static_cast<int>(i), row(idx[i]));
  return r;
}

void Mat::append_row(const Mat& v) {
  assert(v.cols() == cols_);
  if (packed()) {
    bits_.insert(bits_.end(), v.bits_.begin(), v.bits_.end());
  } else {
    v_.insert(v_.end(), v.v_.begin(), v.v_.end());
  }
  rows_ += v.rows();
}

bool Mat::is_zero() const {
  if (packed()) {
    for (uint64_t w : bits_)
      if (w) return false;
    return true;
  }
  for (uint32_t x : v_)
    if (x) return false;
  return true;
}

bool Mat::is_identity() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (get(i, j) != (i == j ? 1u : 0u)) return false;
  return true;
}

bool Mat::is_scalar() const {
  if (rows_ != cols_ || rows_ == 0) return false;
  unsigned c = get(0, 0);
  if (c == 0) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (get(i, j) != (i == j ? c : 0u)) return false;
  return true;
}

Mat Mat::proj_normalized() const {
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      unsigned v = get(i, j);
      if (v != 0) {
        if (v == 1) return *this;
        return scaled(F_->inv(v));
      }
    }
  return *this;
}

uint64_t Mat::hash() const {
  uint64_t h = 0x9e3779b97f4a7c15ull ^ (static_cast<uint64_t>(rows_) << 32 | cols_);
  auto mix = [&](uint64_t x) {
    h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  };
  if (packed())
    for (uint64_t w : bits_) mix(w);
  else
    for (uint32_t x : v_) mix(x);
  return h;
}

uint64_t Mat::row_key(int i) const {
  unsigned q = F_->q();
  int width = 1;
  while ((1u << width) < q) ++width;
  if (cols_ * width > 64) throw std::logic_error("row_key: does not fit in 64 bits");
  uint64_t key = 0;
  for (int j = cols_ - 1; j >= 0; --j) key = (key << width) | get(i, j);
  return key;
}

std::string Mat::to_text(const std::string& headline) const {
  std::ostringstream os;
  os << headline << " " << rows_ << " " << cols_ << " over " << F_->p() << "^"
     << F_->e() << "\n";
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) os << (j ? " " : "") << get(i, j);
    os << "\n";
  }
  return os.str();
}

Mat Mat::from_text(const std::string& text) {
  std::istringstream is(text);
  std::string kw, over, pe;
  int rows, cols;
  is >> kw >> rows >> cols >> over >> pe;
  if (!is || over != "over") throw std::invalid_argument("Mat::from_text: bad header");
  auto caret = pe.find('^');
  if (caret == std::string::npos) throw std::invalid_argument("Mat::from_text: bad field");
  unsigned p = std::stoul(pe.substr(0, caret));
  unsigned e = std::stoul(pe.substr(caret + 1));
  const Field& F = Field::get(p, e);
  Mat m(F, rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      unsigned v;
      if (!(is >> v)) throw std::invalid_argument("Mat::from_text: short data");
      if (v >= F.q()) throw std::invalid_argument("Mat::from_text: entry out of range");
      m.set(i, j, v);
    }
  return m;
}

EchelonBasis::EchelonBasis(const Field& F, int cols) : F_(&F), cols_(cols) {}

Mat EchelonBasis::reduce(Mat v) const {
  for (size_t r = 0; r < rows_.size(); ++r) {
    unsigned c = v.get(0, pivots_[r]);
    if (c != 0) v = v - rows_[r].scaled(c);
  }
  return v;
}

bool EchelonBasis::insert(Mat v) {
  v = reduce(std::move(v));
  int piv = -1;
  for (int j = 0; j < cols_; ++j)
    if (v.get(0, j) != 0) {
      piv = j;
      break;
    }
  if (piv < 0) return false;
  unsigned lead = v.get(0, piv);
  if (lead != 1) v = v.scaled(F_->inv(lead));
  // back-reduce existing rows
  for (size_t r = 0; r < rows_.size(); ++r) {
    unsigned c = rows_[r].get(0, piv);
    if (c != 0) rows_[r] = rows_[r] - v.scaled(c);
  }
  // keep pivots sorted
  size_t pos = 0;
  while (pos < pivots_.size() && pivots_[pos] < piv) ++pos;
  rows_.insert(rows_.begin() + pos, std::move(v));
  pivots_.insert(pivots_.begin() + pos, piv);
  return true;
}

bool EchelonBasis::contains(const Mat& v) const { return reduce(v).is_zero(); }

Mat EchelonBasis::basis_matrix() const {
  Mat m(*F_, dim(), cols_);
  for (int i = 0; i < dim(); ++i) m.set_row(i, rows_[i]);
  return m;
}

std::optional<std::vector<unsigned>> EchelonBasis::coordinates(const Mat& v) const {
  std::vector<unsigned> coords(rows_.size(), 0);
  Mat w = v;
  for (size_t r = 0; r < rows_.size(); ++r) {
    unsigned c = w.get(0, pivots_[r]);
    coords[r] = c;
    if (c != 0) w = w - rows_[r].scaled(c);
  }
  if (!w.is_zero()) return std::nullopt;
  return coords;
}

}  // namespace grpx
