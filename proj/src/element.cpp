#include "grpx/element.hpp"

#include <sstream>
#include <stdexcept>

namespace grpx {

GElem GElem::of_perm(Perm p) {
  GElem g;
  g.kind_ = ElemKind::perm;
  g.perm_ = std::move(p);
  return g;
}

GElem GElem::of_matrix(Mat m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("GElem: matrix not square");
  GElem g;
  g.kind_ = ElemKind::matrix;
  g.mat_ = std::move(m);
  return g;
}

GElem GElem::of_proj(Mat m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("GElem: matrix not square");
  GElem g;
  g.kind_ = ElemKind::proj_matrix;
  g.mat_ = m.proj_normalized();
  return g;
}

GElem GElem::direct(std::vector<GElem> parts) {
  if (parts.empty()) throw std::invalid_argument("GElem: empty direct product");
  GElem g;
  g.kind_ = ElemKind::direct;
  g.parts_ = std::move(parts);
  return g;
}

GElem GElem::operator*(const GElem& o) const {
  if (kind_ != o.kind_) throw std::invalid_argument("GElem: kind mismatch");
  switch (kind_) {
    case ElemKind::perm:
      return of_perm(perm_ * o.perm_);
    case ElemKind::matrix:
      return of_matrix(mat_ * o.mat_);
    case ElemKind::proj_matrix:
      return of_proj(mat_ * o.mat_);
    case ElemKind::direct: {
      if (parts_.size() != o.parts_.size())
        throw std::invalid_argument("GElem: product shape mismatch");
      std::vector<GElem> r;
      r.reserve(parts_.size());
      for (size_t i = 0; i < parts_.size(); ++i) r.push_back(parts_[i] * o.parts_[i]);
      return direct(std::move(r));
    }
  }
  throw std::logic_error("GElem: bad kind");
}

GElem GElem::inverse() const {
  switch (kind_) {
    case ElemKind::perm:
      return of_perm(perm_.inverse());
    case ElemKind::matrix:
    case ElemKind::proj_matrix: {
      auto inv = mat_.inverse();
      if (!inv) throw std::invalid_argument("GElem: singular matrix");
      return kind_ == ElemKind::matrix ? of_matrix(*inv) : of_proj(*inv);
    }
    case ElemKind::direct: {
      std::vector<GElem> r;
      r.reserve(parts_.size());
      for (const auto& p : parts_) r.push_back(p.inverse());
      return direct(std::move(r));
    }
  }
  throw std::logic_error("GElem: bad kind");
}

bool GElem::is_identity() const {
  switch (kind_) {
    case ElemKind::perm:
      return perm_.is_identity();
    case ElemKind::matrix:
    case ElemKind::proj_matrix:
      // proj elements are stored normalized, so scalars reduce to identity
      return mat_.is_identity();
    case ElemKind::direct:
      for (const auto& p : parts_)
        if (!p.is_identity()) return false;
      return true;
  }
  return false;
}

bool GElem::operator==(const GElem& o) const {
  if (kind_ != o.kind_) return false;
  switch (kind_) {
    case ElemKind::perm:
      return perm_ == o.perm_;
    case ElemKind::matrix:
    case ElemKind::proj_matrix:
      return mat_ == o.mat_;
    case ElemKind::direct:
      return parts_ == o.parts_;
  }
  return false;
}

uint64_t GElem::hash() const {
  switch (kind_) {
    case ElemKind::perm:
      return perm_.hash();
    case ElemKind::matrix:
      return mat_.hash();
    case ElemKind::proj_matrix:
      return mat_.hash() ^ 0x517cc1b727220a95ull;
    case ElemKind::direct: {
      uint64_t h = 0x2545f4914f6cdd1dull;
      for (const auto& p : parts_) h = h * 0x100000001b3ull ^ p.hash();
      return h;
    }
  }
  return 0;
}

GElem GElem::identity() const {
  switch (kind_) {
    case ElemKind::perm:
      return of_perm(Perm(perm_.degree()));
    case ElemKind::matrix:
      return of_matrix(Mat::identity(mat_.field(), mat_.rows()));
    case ElemKind::proj_matrix:
      return of_proj(Mat::identity(mat_.field(), mat_.rows()));
    case ElemKind::direct: {
      std::vector<GElem> r;
      r.reserve(parts_.size());
      for (const auto& p : parts_) r.push_back(p.identity());
      return direct(std::move(r));
    }
  }
  throw std::logic_error("GElem: bad kind");
}

bool GElem::same_shape(const GElem& o) const {
  if (kind_ != o.kind_) return false;
  switch (kind_) {
    case ElemKind::perm:
      return perm_.degree() == o.perm_.degree();
    case ElemKind::matrix:
    case ElemKind::proj_matrix:
      return &mat_.field() == &o.mat_.field() && mat_.rows() == o.mat_.rows();
    case ElemKind::direct:
      if (parts_.size() != o.parts_.size()) return false;
      for (size_t i = 0; i < parts_.size(); ++i)
        if (!parts_[i].same_shape(o.parts_[i])) return false;
      return true;
  }
  return false;
}

std::string GElem::str() const {
  switch (kind_) {
    case ElemKind::perm:
      return perm_.to_cycle_string();
    case ElemKind::matrix:
      return mat_.to_text();
    case ElemKind::proj_matrix:
      return mat_.to_text("projmatrix");
    case ElemKind::direct: {
      std::ostringstream os;
      os << "direct[";
      for (size_t i = 0; i < parts_.size(); ++i) os << (i ? "; " : "") << parts_[i].str();
      os << "]";
      return os.str();
    }
  }
  return "?";
}

GElem conjugate(const GElem& x, const GElem& g) { return g.inverse() * x * g; }

GElem commutator(const GElem& a, const GElem& b) {
  return a.inverse() * b.inverse() * a * b;
}

uint64_t element_order(const GElem& x, uint64_t cap) {
  GElem cur = x;
  uint64_t n = 1;
  while (!cur.is_identity()) {
    cur = cur * x;
    if (++n > cap) throw std::runtime_error("element_order: cap exceeded");
  }
  return n;
}

}  // namespace grpx
