#include "crysgar/linalg.hpp"

#include <sstream>

namespace crysgar {

bool QVector::is_zero() const {
  for (const auto& x : c_)
    if (x != 0) return false;
  return true;
}

QVector QVector::operator+(const QVector& o) const {
  CRYSGAR_CHECK(dim() == o.dim(), "vector dim mismatch in +");
  QVector r(dim());
  for (std::size_t i = 0; i < dim(); ++i) r[i] = c_[i] + o.c_[i];
  return r;
}

QVector QVector::operator-(const QVector& o) const {
  CRYSGAR_CHECK(dim() == o.dim(), "vector dim mismatch in -");
  QVector r(dim());
  for (std::size_t i = 0; i < dim(); ++i) r[i] = c_[i] - o.c_[i];
  return r;
}

QVector QVector::operator-() const {
  QVector r(dim());
  for (std::size_t i = 0; i < dim(); ++i) r[i] = -c_[i];
  return r;
}

QVector QVector::operator*(const Rational& s) const {
  QVector r(dim());
  for (std::size_t i = 0; i < dim(); ++i) r[i] = c_[i] * s;
  return r;
}

std::string QVector::str() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < dim(); ++i) {
    if (i) os << ", ";
    os << to_string(c_[i]);
  }
  os << ")";
  return os.str();
}

Rational dot(const QVector& a, const QVector& b) {
  CRYSGAR_CHECK(a.dim() == b.dim(), "vector dim mismatch in dot");
  Rational s(0);
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

QMatrix QMatrix::from_columns(const std::vector<QVector>& cols) {
  CRYSGAR_CHECK(!cols.empty(), "from_columns: empty column list");
  QMatrix m(cols[0].dim(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    CRYSGAR_CHECK(cols[j].dim() == m.rows(), "from_columns: ragged columns");
    for (std::size_t i = 0; i < m.rows(); ++i) m.at(i, j) = cols[j][i];
  }
  return m;
}

QMatrix QMatrix::operator*(const QMatrix& o) const {
  CRYSGAR_CHECK(cols_ == o.rows_, "matrix dim mismatch in *");
  QMatrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& aik = at(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, j) += aik * o.at(k, j);
    }
  return r;
}

QVector QMatrix::operator*(const QVector& v) const {
  CRYSGAR_CHECK(cols_ == v.dim(), "matrix/vector dim mismatch in *");
  QVector r(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Rational s(0);
    for (std::size_t j = 0; j < cols_; ++j) s += at(i, j) * v[j];
    r[i] = s;
  }
  return r;
}

QMatrix QMatrix::operator+(const QMatrix& o) const {
  CRYSGAR_CHECK(rows_ == o.rows_ && cols_ == o.cols_, "matrix dim mismatch in +");
  QMatrix r(rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
  return r;
}

QMatrix QMatrix::operator-(const QMatrix& o) const {
  CRYSGAR_CHECK(rows_ == o.rows_ && cols_ == o.cols_, "matrix dim mismatch in -");
  QMatrix r(rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
  return r;
}

QMatrix QMatrix::transpose() const {
  QMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

QVector QMatrix::column(std::size_t j) const {
  QVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = at(i, j);
  return v;
}

std::string QMatrix::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < rows_; ++i) {
    os << "[";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) os << ", ";
      os << to_string(at(i, j));
    }
    os << "]\n";
  }
  return os.str();
}

namespace {

// Row-reduce `m` in place to row echelon form; returns the pivot column of
// each nonzero row.  Exact rational Gauss, partial "first nonzero" pivoting.
std::vector<std::size_t> row_echelon(QMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && m.at(sel, col) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(sel, j), m.at(row, j));
    const Rational piv = m.at(row, col);
    for (std::size_t i = row + 1; i < m.rows(); ++i) {
      if (m.at(i, col) == 0) continue;
      Rational f = m.at(i, col) / piv;
      for (std::size_t j = col; j < m.cols(); ++j) m.at(i, j) -= f * m.at(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::size_t rank_of(const std::vector<QVector>& vecs) {
  if (vecs.empty()) return 0;
  QMatrix m(vecs.size(), vecs[0].dim());
  for (std::size_t i = 0; i < vecs.size(); ++i)
    for (std::size_t j = 0; j < vecs[0].dim(); ++j) m.at(i, j) = vecs[i][j];
  return row_echelon(m).size();
}

std::vector<QVector> independent_subset(const std::vector<QVector>& vecs) {
  std::vector<QVector> out;
  for (const auto& v : vecs) {
    if (v.is_zero()) continue;
    out.push_back(v);
    if (rank_of(out) != out.size()) out.pop_back();
  }
  return out;
}

bool in_span(const std::vector<QVector>& span, const QVector& x) {
  if (x.is_zero()) return true;
  std::vector<QVector> aug = independent_subset(span);
  std::size_t r = aug.size();
  aug.push_back(x);
  return rank_of(aug) == r;
}

std::optional<LinearSolution> solve(const QMatrix& A, const QVector& b) {
  CRYSGAR_CHECK(A.rows() == b.dim(), "solve: rhs dim mismatch");
  const std::size_t n = A.cols();
  // Augmented matrix [A | b], reduce, then back-substitute.
  QMatrix m(A.rows(), n + 1);
  for (std::size_t i = 0; i < A.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) m.at(i, j) = A.at(i, j);
    m.at(i, n) = b[i];
  }
  std::vector<std::size_t> pivots = row_echelon(m);
  // Inconsistent iff some pivot landed in the augmented column.
  if (!pivots.empty() && pivots.back() == n) return std::nullopt;

  std::vector<bool> is_pivot(n, false);
  for (std::size_t c : pivots) is_pivot[c] = true;

  // Back substitution for a particular solution (free vars = 0) and for
  // each kernel basis vector (one free var = 1, the rest 0).
  auto back_sub = [&](const std::vector<Rational>& free_vals, bool homogeneous) {
    QVector x(n);
    std::size_t fi = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (!is_pivot[j]) x[j] = free_vals.empty() ? Rational(0) : free_vals[fi++];
    for (std::size_t ri = pivots.size(); ri-- > 0;) {
      std::size_t pc = pivots[ri];
      Rational s = homogeneous ? Rational(0) : Rational(m.at(ri, n));
      for (std::size_t j = pc + 1; j < n; ++j) s -= m.at(ri, j) * x[j];
      x[pc] = s / m.at(ri, pc);
    }
    return x;
  };

  std::size_t num_free = n - pivots.size();
  LinearSolution sol;
  sol.particular = back_sub({}, false);
  for (std::size_t k = 0; k < num_free; ++k) {
    std::vector<Rational> fv(num_free, Rational(0));
    fv[k] = 1;
    sol.kernel.push_back(back_sub(fv, true));
  }
  return sol;
}

AffineSubspace::AffineSubspace(QVector point, std::vector<QVector> basis)
    : point_(std::move(point)), basis_(independent_subset(basis)) {
  for (const auto& v : basis_)
    CRYSGAR_CHECK(v.dim() == point_.dim(), "affine subspace: ragged basis");
}

AffineSubspace AffineSubspace::whole(std::size_t dim) {
  std::vector<QVector> b;
  for (std::size_t i = 0; i < dim; ++i) {
    QVector e(dim);
    e[i] = 1;
    b.push_back(e);
  }
  return AffineSubspace(QVector(dim), std::move(b));
}

AffineSubspace AffineSubspace::point_space(const QVector& p) {
  return AffineSubspace(p, {});
}

AffineSubspace AffineSubspace::span_of(std::size_t dim, const std::vector<QVector>& vecs) {
  return AffineSubspace(QVector(dim), vecs);
}

bool AffineSubspace::contains_point(const QVector& x) const {
  return in_span(basis_, x - point_);
}

bool AffineSubspace::contains(const AffineSubspace& other) const {
  if (!contains_point(other.point_)) return false;
  for (const auto& v : other.basis_)
    if (!in_span(basis_, v)) return false;
  return true;
}

bool AffineSubspace::operator==(const AffineSubspace& other) const {
  return dim() == other.dim() && contains(other) && other.contains(*this);
}

AffineSubspace AffineSubspace::direction() const {
  return AffineSubspace(QVector(ambient_dim()), basis_);
}

AffineSubspace AffineSubspace::translate(const QVector& v) const {
  return AffineSubspace(point_ + v, basis_);
}

std::optional<AffineSubspace> AffineSubspace::intersect(const AffineSubspace& other) const {
  CRYSGAR_CHECK(ambient_dim() == other.ambient_dim(), "intersect: ambient dim mismatch");
  // p1 + B1 s = p2 + B2 t  <=>  [B1 | -B2] (s,t) = p2 - p1.
  const std::size_t d = ambient_dim();
  const std::size_t k1 = basis_.size(), k2 = other.basis_.size();
  if (k1 + k2 == 0) {
    if (point_ == other.point_) return point_space(point_);
    return std::nullopt;
  }
  QMatrix A(d, k1 + k2);
  for (std::size_t j = 0; j < k1; ++j)
    for (std::size_t i = 0; i < d; ++i) A.at(i, j) = basis_[j][i];
  for (std::size_t j = 0; j < k2; ++j)
    for (std::size_t i = 0; i < d; ++i) A.at(i, k1 + j) = -other.basis_[j][i];
  auto sol = solve(A, other.point_ - point_);
  if (!sol) return std::nullopt;
  auto eval = [&](const QVector& st) {
    QVector x = point_;
    for (std::size_t j = 0; j < k1; ++j) x = x + basis_[j] * st[j];
    return x;
  };
  QVector pt = eval(sol->particular);
  std::vector<QVector> dir;
  for (const auto& kv : sol->kernel) {
    // For a kernel vector (s,t), B1 s = B2 t lies in both direction spaces.
    QVector w(d);
    for (std::size_t j = 0; j < k1; ++j) w = w + basis_[j] * kv[j];
    dir.push_back(w);
  }
  return AffineSubspace(pt, dir);
}

QVector AffineSubspace::project(const QVector& x) const {
  CRYSGAR_CHECK(x.dim() == ambient_dim(), "project: dim mismatch");
  if (basis_.empty()) return point_;
  // Solve the normal equations G c = B^T (x - p) with G the Gram matrix of
  // the basis; exact over Q since G is invertible for independent basis.
  const std::size_t k = basis_.size();
  QMatrix G(k, k);
  QVector rhs(k);
  QVector y = x - point_;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) G.at(i, j) = dot(basis_[i], basis_[j]);
    rhs[i] = dot(basis_[i], y);
  }
  auto sol = solve(G, rhs);
  CRYSGAR_CHECK(sol.has_value() && sol->kernel.empty(), "project: Gram matrix singular");
  QVector p = point_;
  for (std::size_t i = 0; i < k; ++i) p = p + basis_[i] * sol->particular[i];
  return p;
}

std::vector<QVector> AffineSubspace::orth_complement_basis() const {
  // Kernel of the k x d matrix whose rows are the basis vectors.
  const std::size_t d = ambient_dim();
  if (basis_.empty()) return AffineSubspace::whole(d).basis();
  QMatrix A(basis_.size(), d);
  for (std::size_t i = 0; i < basis_.size(); ++i)
    for (std::size_t j = 0; j < d; ++j) A.at(i, j) = basis_[i][j];
  auto sol = solve(A, QVector(basis_.size()));
  CRYSGAR_CHECK(sol.has_value(), "orth_complement: homogeneous system inconsistent");
  return sol->kernel;
}

std::string AffineSubspace::str() const {
  std::ostringstream os;
  os << point_.str() << " + span{";
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (i) os << ", ";
    os << basis_[i].str();
  }
  os << "}";
  return os.str();
}

}  // namespace crysgar
