#include "serrec/algebra.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>

namespace serrec {

namespace {

Matrix zero_row(std::size_t d, FieldTag t) { return Matrix(1, d, t); }

}  // namespace

AlgebraPtr Algebra::make(FieldTag field, std::vector<std::string> labels,
                         std::vector<Matrix> mult_table, Matrix unit_row,
                         Matrix idempotent_rows,
                         std::optional<Matrix> radical_rows, std::string name) {
  auto a = std::shared_ptr<Algebra>(new Algebra());
  a->field_ = field;
  a->name_ = std::move(name);
  a->labels_ = std::move(labels);
  a->dim_ = a->labels_.size();
  const std::size_t d = a->dim_;
  if (d == 0) throw Error(Errc::InvalidArgument, "zero-dimensional algebra");
  if (mult_table.size() != d)
    throw Error(Errc::DimensionMismatch, "mult table size");
  for (auto& m : mult_table)
    if (m.rows() != d || m.cols() != d || !(m.tag() == field))
      throw Error(Errc::DimensionMismatch, "mult table entry shape");
  a->lmat_ = std::move(mult_table);
  a->rmat_.assign(d, Matrix(d, d, field));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        a->rmat_[i].at(j, k) = a->lmat_[j].at(i, k);
  if (unit_row.rows() != 1 || unit_row.cols() != d)
    throw Error(Errc::DimensionMismatch, "unit row shape");
  a->unit_ = unit_row;
  a->idempotents_ = idempotent_rows;

  // associativity on all basis triples: (b_i b_j) b_k = b_i (b_j b_k)
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Matrix bij = a->lmat_[i].row(j);  // coeffs(b_i b_j)
      for (std::size_t k = 0; k < d; ++k) {
        Matrix lhs = bij * a->rmat_[k];                 // (b_i b_j) b_k
        Matrix rhs = a->rmat_[k].row(j) * a->lmat_[i];  // b_i (b_j b_k)
        if (lhs != rhs)
          throw Error(Errc::InvalidArgument,
                      "structure constants are not associative at (" +
                          std::to_string(i) + "," + std::to_string(j) + "," +
                          std::to_string(k) + ")");
      }
    }
  for (std::size_t i = 0; i < d; ++i) {
    Matrix bi = Matrix::zero(1, d, field);
    bi.at(0, i) = Scalar::one(field);
    if (a->mul(a->unit_, bi) != bi || a->mul(bi, a->unit_) != bi)
      throw Error(Errc::InvalidArgument,
                  "unit law fails at basis " + std::to_string(i));
  }
  const std::size_t r = a->idempotents_.rows();
  if (r == 0) throw Error(Errc::InvalidArgument, "empty idempotent list");
  Matrix sum = zero_row(d, field);
  for (std::size_t i = 0; i < r; ++i) {
    sum = sum + a->idempotents_.row(i);
    for (std::size_t j = 0; j < r; ++j) {
      Matrix prod = a->mul(a->idempotents_.row(i), a->idempotents_.row(j));
      Matrix expect = i == j ? a->idempotents_.row(i) : zero_row(d, field);
      if (prod != expect)
        throw Error(Errc::NotIdempotent,
                    "distinguished idempotents are not orthogonal idempotents");
    }
  }
  if (sum != a->unit_)
    throw Error(Errc::NotIdempotent, "idempotents do not sum to the unit");

  if (radical_rows) {
    RowSpace jsp(*radical_rows);
    Matrix jbasis = jsp.basis();
    a->radical_ = jbasis;
    for (std::size_t i = 0; i < d; ++i) {
      if (!jsp.contains_rows(jbasis * a->lmat_[i]) ||
          !jsp.contains_rows(jbasis * a->rmat_[i]))
        throw Error(Errc::NotTwoSidedIdeal, "radical span is not an ideal");
    }
    // nilpotency: J^(k+1) = J * J^k strictly shrinks to zero
    RowSpace power = jsp;
    for (std::size_t step = 0; power.dim() > 0; ++step) {
      if (step > d)
        throw Error(Errc::InvalidArgument, "radical span is not nilpotent");
      Matrix next(0, d, field);
      for (std::size_t u = 0; u < power.dim(); ++u)
        next = next.vstack(jbasis * a->lmat_elem(power.basis().row(u)));
      RowSpace nsp(next);
      if (nsp.dim() == power.dim())
        throw Error(Errc::InvalidArgument, "radical span is not nilpotent");
      power = nsp;
    }
    // semisimplicity of A/J via the trace form; only available in char 0
    if (field.kind == FieldTag::Kind::Rational) {
      auto comp = jsp.complement_columns();
      std::size_t q = comp.size();
      Matrix gram(q, q, field);
      for (std::size_t u = 0; u < q; ++u)
        for (std::size_t v = 0; v < q; ++v) {
          Matrix prod = a->lmat_[comp[u]].row(comp[v]);
          Scalar tr = Scalar::zero(field);
          for (std::size_t w = 0; w < q; ++w) {
            Matrix img = jsp.reduce(a->lmat_elem(prod).row(comp[w]));
            tr = tr + img.at(0, comp[w]);
          }
          gram.at(u, v) = tr;
        }
      if (rank(gram) != q)
        throw Error(Errc::InvalidArgument,
                    "quotient by claimed radical is not semisimple");
    }
  }

  if (a->radical_) {
    // degree-one generators: a complement of J^2 inside J; together with the
    // idempotents they generate the algebra (J = X + J^2 and J nilpotent)
    const Matrix& j = *a->radical_;
    Matrix j2(0, d, field);
    for (std::size_t u = 0; u < j.rows(); ++u)
      j2 = j2.vstack(j * a->lmat_elem(j.row(u)));
    Matrix j2b = row_basis(j2);
    Matrix kept(0, d, field);
    RowSpace acc(j2b);
    for (std::size_t u = 0; u < j.rows(); ++u) {
      if (!acc.contains(j.row(u))) {
        kept = kept.vstack(j.row(u));
        acc = RowSpace(j2b.vstack(kept));
      }
    }
    a->rad_gens_ = kept;
    a->generators_ = a->idempotents_.vstack(kept);
  } else {
    a->rad_gens_ = Matrix(0, d, field);
    a->generators_ = Matrix::identity(d, field);
  }
  return a;
}

const Matrix& Algebra::radical_generators() const {
  if (!radical_)
    throw Error(Errc::RadicalUnavailable,
                "no radical basis available for algebra " + name_);
  return rad_gens_;
}

std::optional<std::size_t> Algebra::label_index(const std::string& label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return i;
  return std::nullopt;
}

Matrix Algebra::idempotent_sum(const std::vector<std::size_t>& subset) const {
  Matrix e = zero_row(dim_, field_);
  for (auto i : subset) {
    if (i >= idempotents_.rows())
      throw Error(Errc::InvalidArgument, "idempotent index out of range");
    e = e + idempotents_.row(i);
  }
  return e;
}

const Matrix& Algebra::radical() const {
  if (!radical_)
    throw Error(Errc::RadicalUnavailable,
                "no radical basis available for algebra " + name_);
  return *radical_;
}

Matrix Algebra::lmat_elem(const Matrix& x) const {
  Matrix m(dim_, dim_, field_);
  for (std::size_t i = 0; i < dim_; ++i)
    if (!x.at(0, i).is_zero()) m = m + lmat_[i].scaled(x.at(0, i));
  return m;
}

Matrix Algebra::rmat_elem(const Matrix& x) const {
  Matrix m(dim_, dim_, field_);
  for (std::size_t i = 0; i < dim_; ++i)
    if (!x.at(0, i).is_zero()) m = m + rmat_[i].scaled(x.at(0, i));
  return m;
}

Matrix Algebra::mul(const Matrix& x, const Matrix& y) const {
  return y * lmat_elem(x);
}

bool Algebra::is_idempotent(const Matrix& e) const { return mul(e, e) == e; }

std::optional<std::vector<std::size_t>> Algebra::distinguished_subset(
    const Matrix& e) const {
  std::vector<std::size_t> subset;
  for (std::size_t i = 0; i < idempotents_.rows(); ++i)
    if (mul(e, idempotents_.row(i)) == idempotents_.row(i)) subset.push_back(i);
  if (idempotent_sum(subset) != e) return std::nullopt;
  return subset;
}

AlgebraPtr Algebra::opposite() const {
  if (op_cache_) return op_cache_;
  std::vector<Matrix> table(dim_, Matrix(dim_, dim_, field_));
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      for (std::size_t k = 0; k < dim_; ++k)
        table[i].at(j, k) = lmat_[j].at(i, k);  // b_i *op b_j = b_j b_i
  op_cache_ = make(field_, labels_, std::move(table), unit_, idempotents_,
                   radical_, name_ + "^op");
  return op_cache_;
}

// ---------------------------------------------------------------------------
// Bimodule

std::shared_ptr<const Bimodule> Bimodule::make(AlgebraPtr left, AlgebraPtr right,
                                               std::vector<Matrix> left_act,
                                               std::vector<Matrix> right_act,
                                               std::string name) {
  auto b = std::shared_ptr<Bimodule>(new Bimodule());
  if (!left || !right) throw Error(Errc::InvalidArgument, "null algebra");
  if (!(left->field() == right->field()))
    throw Error(Errc::FieldMismatch, "bimodule algebras over different fields");
  b->left_ = std::move(left);
  b->right_ = std::move(right);
  b->name_ = std::move(name);
  b->left_act_ = std::move(left_act);
  b->right_act_ = std::move(right_act);
  if (b->left_act_.size() != b->left_->dim() ||
      b->right_act_.size() != b->right_->dim())
    throw Error(Errc::DimensionMismatch, "bimodule action list sizes");
  b->dim_ = b->left_act_[0].rows();
  const std::size_t n = b->dim_;
  const FieldTag f = b->left_->field();
  for (auto& m : b->left_act_)
    if (m.rows() != n || m.cols() != n)
      throw Error(Errc::DimensionMismatch, "left action shape");
  for (auto& m : b->right_act_)
    if (m.rows() != n || m.cols() != n)
      throw Error(Errc::DimensionMismatch, "right action shape");

  if (n > 0) {
    if (b->left_act_elem(b->left_->unit()) != Matrix::identity(n, f) ||
        b->right_act_elem(b->right_->unit()) != Matrix::identity(n, f))
      throw Error(Errc::InvalidArgument, "bimodule: unit does not act as id");
    // left action anti-multiplicative, right action multiplicative
    for (std::size_t i = 0; i < b->left_->dim(); ++i)
      for (std::size_t j = 0; j < b->left_->dim(); ++j) {
        Matrix cij = b->left_->lmat(i).row(j);
        if (b->left_act_[j] * b->left_act_[i] != b->left_act_elem(cij))
          throw Error(Errc::InvalidArgument,
                      "bimodule: left action does not respect products");
      }
    for (std::size_t i = 0; i < b->right_->dim(); ++i)
      for (std::size_t j = 0; j < b->right_->dim(); ++j) {
        Matrix aij = b->right_->lmat(i).row(j);
        if (b->right_act_[i] * b->right_act_[j] != b->right_act_elem(aij))
          throw Error(Errc::InvalidArgument,
                      "bimodule: right action does not respect products");
      }
    for (const auto& l : b->left_act_)
      for (const auto& r : b->right_act_)
        if (l * r != r * l)
          throw Error(Errc::InvalidArgument,
                      "bimodule: left and right actions do not commute");
  }
  return b;
}

Matrix Bimodule::left_act_elem(const Matrix& c) const {
  Matrix m(dim_, dim_, left_->field());
  for (std::size_t i = 0; i < left_->dim(); ++i)
    if (!c.at(0, i).is_zero()) m = m + left_act_[i].scaled(c.at(0, i));
  return m;
}

Matrix Bimodule::right_act_elem(const Matrix& a) const {
  Matrix m(dim_, dim_, right_->field());
  for (std::size_t i = 0; i < right_->dim(); ++i)
    if (!a.at(0, i).is_zero()) m = m + right_act_[i].scaled(a.at(0, i));
  return m;
}

BimodulePtr regular_bimodule(const AlgebraPtr& a) {
  std::vector<Matrix> left, right;
  for (std::size_t i = 0; i < a->dim(); ++i) {
    left.push_back(a->lmat(i));
    right.push_back(a->rmat(i));
  }
  return Bimodule::make(a, a, std::move(left), std::move(right),
                        a->name() + "_reg");
}

BimodulePtr bimodule_direct_sum(const BimodulePtr& x, const BimodulePtr& y) {
  if (x->left_algebra() != y->left_algebra() ||
      x->right_algebra() != y->right_algebra())
    throw Error(Errc::AlgebraMismatch, "bimodule direct sum");
  std::vector<Matrix> left, right;
  for (std::size_t i = 0; i < x->left_algebra()->dim(); ++i)
    left.push_back(direct_sum_mat(x->left_act(i), y->left_act(i)));
  for (std::size_t i = 0; i < x->right_algebra()->dim(); ++i)
    right.push_back(direct_sum_mat(x->right_act(i), y->right_act(i)));
  return Bimodule::make(x->left_algebra(), x->right_algebra(), std::move(left),
                        std::move(right), x->name() + "+" + y->name());
}

// ---------------------------------------------------------------------------
// Path algebras

namespace {

struct Path {
  std::size_t src, tgt;
  std::vector<std::size_t> arrows;
  bool operator<(const Path& o) const {
    if (arrows.size() != o.arrows.size()) return arrows.size() < o.arrows.size();
    if (arrows != o.arrows) return arrows < o.arrows;
    return src < o.src;  // distinguishes trivial paths
  }
};

std::string path_label(const Quiver& q, const Path& p) {
  if (p.arrows.empty()) return "e_" + q.vertex_names[p.src];
  std::string s;
  for (std::size_t t = 0; t < p.arrows.size(); ++t)
    s += (t ? "*" : "") + q.arrows[p.arrows[t]].name;
  return s;
}

}  // namespace

AlgebraPtr path_algebra(const Quiver& q, const std::vector<Relation>& rels,
                        FieldTag field, std::size_t cap) {
  if (q.vertex_names.empty())
    throw Error(Errc::InvalidArgument, "quiver needs at least one vertex");
  for (const auto& a : q.arrows)
    if (a.src >= q.vertex_names.size() || a.tgt >= q.vertex_names.size())
      throw Error(Errc::InvalidArgument, "arrow endpoint out of range");

  auto path_ends = [&](const std::vector<std::size_t>& word) {
    std::size_t src = q.arrows.at(word[0]).src;
    std::size_t cur = src;
    for (auto ai : word) {
      if (ai >= q.arrows.size() || q.arrows[ai].src != cur)
        throw Error(Errc::MalformedRelation, "non-composable arrow word");
      cur = q.arrows[ai].tgt;
    }
    return std::pair<std::size_t, std::size_t>{src, cur};
  };

  for (const auto& rel : rels) {
    if (rel.empty()) throw Error(Errc::MalformedRelation, "empty relation");
    for (const auto& term : rel)
      if (term.arrows.empty())
        throw Error(Errc::MalformedRelation,
                    "relation terms must have length >= 1");
    auto ends = path_ends(rel[0].arrows);
    for (const auto& term : rel)
      if (path_ends(term.arrows) != ends)
        throw Error(Errc::MalformedRelation,
                    "relation combines non-parallel paths");
  }

  std::vector<std::vector<Path>> by_len;
  by_len.emplace_back();
  for (std::size_t v = 0; v < q.vertex_names.size(); ++v)
    by_len[0].push_back(Path{v, v, {}});
  auto extend = [&](std::size_t len) {
    while (by_len.size() <= len) {
      const auto& prev = by_len.back();
      std::vector<Path> next;
      for (const auto& p : prev)
        for (std::size_t ai = 0; ai < q.arrows.size(); ++ai)
          if (q.arrows[ai].src == p.tgt) {
            Path np = p;
            np.arrows.push_back(ai);
            np.tgt = q.arrows[ai].tgt;
            next.push_back(np);
          }
      by_len.push_back(std::move(next));
    }
  };

  // A_m := kQ / (ideal + all paths of length >= m), computed exactly; the
  // first m with dim A_m = dim A_{m+1} gives the algebra (the arrow ideal is
  // then nilpotent modulo the relations, and A_m = kQ/ideal).
  struct Level {
    std::vector<Path> paths;
    std::unique_ptr<RowSpace> space;  // over reversed column order
    std::size_t dim = 0;
  };
  auto truncate = [&](std::size_t m) {
    extend(m);
    Level lv;
    for (std::size_t l = 0; l < m; ++l)
      for (const auto& p : by_len[l]) lv.paths.push_back(p);
    if (lv.paths.size() > cap)
      throw Error(Errc::InfiniteDimensional,
                  "path count exceeds cap " + std::to_string(cap));
    std::map<Path, std::size_t> index;
    for (std::size_t i = 0; i < lv.paths.size(); ++i) index[lv.paths[i]] = i;
    const std::size_t np = lv.paths.size();
    std::vector<Matrix> gen_rows;
    for (const auto& rel : rels) {
      auto ends = path_ends(rel[0].arrows);
      for (std::size_t lu = 0; lu < m; ++lu)
        for (const auto& u : by_len[lu]) {
          if (u.tgt != ends.first) continue;
          for (std::size_t lw = 0; lw < m; ++lw)
            for (const auto& v : by_len[lw]) {
              if (v.src != ends.second) continue;
              Matrix row(1, np, field);
              for (const auto& term : rel) {
                std::size_t len = lu + term.arrows.size() + lw;
                if (len >= m) continue;  // truncated away
                Path w;
                w.src = u.src;
                w.tgt = v.tgt;
                w.arrows = u.arrows;
                w.arrows.insert(w.arrows.end(), term.arrows.begin(),
                                term.arrows.end());
                w.arrows.insert(w.arrows.end(), v.arrows.begin(),
                                v.arrows.end());
                std::size_t pi = index.at(w);
                row.at(0, pi) = row.at(0, pi) + term.coef;
              }
              if (!row.is_zero()) gen_rows.push_back(row);
            }
        }
    }
    // reverse column order so rref pivots prefer LONG paths; the residue
    // basis then consists of the shortest representatives
    Matrix genmat(gen_rows.size(), np, field);
    for (std::size_t i = 0; i < gen_rows.size(); ++i)
      for (std::size_t j = 0; j < np; ++j)
        genmat.at(i, j) = gen_rows[i].at(0, np - 1 - j);
    lv.space = std::make_unique<RowSpace>(genmat);
    lv.dim = np - lv.space->dim();
    return lv;
  };

  Level lv = truncate(1);
  Level next = truncate(2);
  std::size_t m = 1;
  while (next.dim != lv.dim) {
    ++m;
    if (m > cap) throw Error(Errc::InfiniteDimensional, "no stabilization");
    lv = std::move(next);
    next = truncate(m + 1);
  }
  // build from level m+1 data; residues all have length < m
  const std::vector<Path>& paths = next.paths;
  const RowSpace& space = *next.space;
  const std::size_t np = paths.size();

  std::vector<std::size_t> residues;
  for (auto c : space.complement_columns()) residues.push_back(np - 1 - c);
  std::sort(residues.begin(), residues.end());
  const std::size_t d = residues.size();
  std::vector<std::size_t> residue_pos(np, np);
  for (std::size_t t = 0; t < d; ++t) residue_pos[residues[t]] = t;

  auto reduce_path = [&](std::size_t pi) {
    Matrix v(1, np, field);
    v.at(0, np - 1 - pi) = Scalar::one(field);
    Matrix red = space.reduce(v);
    Matrix out(1, d, field);
    for (std::size_t j = 0; j < np; ++j) {
      if (red.at(0, j).is_zero()) continue;
      std::size_t orig = np - 1 - j;
      if (residue_pos[orig] == np)
        throw Error(Errc::InternalInconsistency, "pivot column in residue");
      out.at(0, residue_pos[orig]) = red.at(0, j);
    }
    return out;
  };

  std::map<Path, std::size_t> index;
  for (std::size_t i = 0; i < np; ++i) index[paths[i]] = i;

  std::vector<std::string> labels;
  for (auto ri : residues) labels.push_back(path_label(q, paths[ri]));

  std::vector<Matrix> table(d, Matrix(d, d, field));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const Path& p = paths[residues[i]];
      const Path& r = paths[residues[j]];
      if (p.tgt != r.src) continue;
      Path w;
      w.src = p.src;
      w.tgt = r.tgt;
      w.arrows = p.arrows;
      w.arrows.insert(w.arrows.end(), r.arrows.begin(), r.arrows.end());
      auto it = index.find(w);
      if (it == index.end()) continue;  // length >= m: zero in the quotient
      Matrix coords = reduce_path(it->second);
      for (std::size_t k = 0; k < d; ++k) table[i].at(j, k) = coords.at(0, k);
    }

  Matrix unit(1, d, field);
  Matrix idems(q.vertex_names.size(), d, field);
  for (std::size_t v = 0; v < q.vertex_names.size(); ++v) {
    Path ev{v, v, {}};
    std::size_t pos = residue_pos[index.at(ev)];
    idems.at(v, pos) = Scalar::one(field);
    unit.at(0, pos) = Scalar::one(field);
  }
  std::vector<std::size_t> rad_rows;
  for (std::size_t t = 0; t < d; ++t)
    if (!paths[residues[t]].arrows.empty()) rad_rows.push_back(t);
  Matrix radical(rad_rows.size(), d, field);
  for (std::size_t t = 0; t < rad_rows.size(); ++t)
    radical.at(t, rad_rows[t]) = Scalar::one(field);

  return Algebra::make(field, std::move(labels), std::move(table), unit, idems,
                       radical, "kQ");
}

// ---------------------------------------------------------------------------
// Triangular and product algebras

AlgebraPtr triangular_algebra(const AlgebraPtr& r, const AlgebraPtr& s,
                              const BimodulePtr& m) {
  if (!(r->field() == s->field()))
    throw Error(Errc::FieldMismatch, "triangular algebra over mixed fields");
  if (m->left_algebra() != s || m->right_algebra() != r)
    throw Error(Errc::AlgebraMismatch,
                "triangular algebra needs an S-R-bimodule (left S, right R)");
  const FieldTag f = r->field();
  const std::size_t dr = r->dim(), ds = s->dim(), dm = m->dim();
  const std::size_t d = dr + ds + dm;

  auto row_embed = [&](const Matrix& row, std::size_t offset) {
    Matrix out(1, d, f);
    for (std::size_t j = 0; j < row.cols(); ++j)
      out.at(0, offset + j) = row.at(0, j);
    return out;
  };

  std::vector<Matrix> table(d, Matrix(d, d, f));
  auto put = [&](std::size_t i, std::size_t j, const Matrix& coeffs) {
    for (std::size_t k = 0; k < d; ++k) table[i].at(j, k) = coeffs.at(0, k);
  };
  for (std::size_t i = 0; i < dr; ++i)
    for (std::size_t j = 0; j < dr; ++j)
      put(i, j, row_embed(r->lmat(i).row(j), 0));
  for (std::size_t i = 0; i < ds; ++i)
    for (std::size_t j = 0; j < ds; ++j)
      put(dr + i, dr + j, row_embed(s->lmat(i).row(j), dr));
  // s_i . m_k (left action) and m_k . r_j (right action); other mixed
  // products pass through the zero block and vanish
  for (std::size_t i = 0; i < ds; ++i)
    for (std::size_t k = 0; k < dm; ++k)
      put(dr + i, dr + ds + k, row_embed(m->left_act(i).row(k), dr + ds));
  for (std::size_t k = 0; k < dm; ++k)
    for (std::size_t j = 0; j < dr; ++j)
      put(dr + ds + k, j, row_embed(m->right_act(j).row(k), dr + ds));

  Matrix unit = row_embed(r->unit(), 0) + row_embed(s->unit(), dr);
  const std::size_t nr = r->num_idempotents(), ns = s->num_idempotents();
  Matrix idems(nr + ns, d, f);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t k = 0; k < dr; ++k)
      idems.at(i, k) = r->idempotent(i).at(0, k);
  for (std::size_t i = 0; i < ns; ++i)
    for (std::size_t k = 0; k < ds; ++k)
      idems.at(nr + i, dr + k) = s->idempotent(i).at(0, k);

  std::optional<Matrix> radical;
  if (r->has_radical() && s->has_radical()) {
    Matrix rad(0, d, f);
    for (std::size_t t = 0; t < r->radical().rows(); ++t)
      rad = rad.vstack(row_embed(r->radical().row(t), 0));
    for (std::size_t t = 0; t < s->radical().rows(); ++t)
      rad = rad.vstack(row_embed(s->radical().row(t), dr));
    for (std::size_t k = 0; k < dm; ++k) {
      Matrix row(1, d, f);
      row.at(0, dr + ds + k) = Scalar::one(f);
      rad = rad.vstack(row);
    }
    radical = rad;
  }

  std::vector<std::string> labels;
  for (const auto& l : r->labels()) labels.push_back("r:" + l);
  for (const auto& l : s->labels()) labels.push_back("s:" + l);
  for (std::size_t k = 0; k < dm; ++k) labels.push_back("m:" + std::to_string(k));

  return Algebra::make(f, std::move(labels), std::move(table), unit, idems,
                       radical, "tri(" + r->name() + "," + s->name() + ")");
}

AlgebraPtr product_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
  if (!(a->field() == b->field()))
    throw Error(Errc::FieldMismatch, "product algebra over mixed fields");
  const FieldTag f = a->field();
  const std::size_t da = a->dim(), db = b->dim(), d = da + db;
  std::vector<Matrix> table(d, Matrix(d, d, f));
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j)
      for (std::size_t k = 0; k < da; ++k)
        table[i].at(j, k) = a->lmat(i).at(j, k);
  for (std::size_t i = 0; i < db; ++i)
    for (std::size_t j = 0; j < db; ++j)
      for (std::size_t k = 0; k < db; ++k)
        table[da + i].at(da + j, da + k) = b->lmat(i).at(j, k);
  Matrix unit(1, d, f);
  for (std::size_t k = 0; k < da; ++k) unit.at(0, k) = a->unit().at(0, k);
  for (std::size_t k = 0; k < db; ++k) unit.at(0, da + k) = b->unit().at(0, k);
  Matrix idems(a->num_idempotents() + b->num_idempotents(), d, f);
  for (std::size_t i = 0; i < a->num_idempotents(); ++i)
    for (std::size_t k = 0; k < da; ++k)
      idems.at(i, k) = a->idempotent(i).at(0, k);
  for (std::size_t i = 0; i < b->num_idempotents(); ++i)
    for (std::size_t k = 0; k < db; ++k)
      idems.at(a->num_idempotents() + i, da + k) = b->idempotent(i).at(0, k);
  std::optional<Matrix> radical;
  if (a->has_radical() && b->has_radical()) {
    Matrix rad(0, d, f);
    for (std::size_t t = 0; t < a->radical().rows(); ++t) {
      Matrix row(1, d, f);
      for (std::size_t k = 0; k < da; ++k) row.at(0, k) = a->radical().at(t, k);
      rad = rad.vstack(row);
    }
    for (std::size_t t = 0; t < b->radical().rows(); ++t) {
      Matrix row(1, d, f);
      for (std::size_t k = 0; k < db; ++k)
        row.at(0, da + k) = b->radical().at(t, k);
      rad = rad.vstack(row);
    }
    radical = rad;
  }
  std::vector<std::string> labels;
  for (const auto& l : a->labels()) labels.push_back("p1:" + l);
  for (const auto& l : b->labels()) labels.push_back("p2:" + l);
  return Algebra::make(f, std::move(labels), std::move(table), unit, idems,
                       radical, a->name() + "x" + b->name());
}

// ---------------------------------------------------------------------------
// Corner, ideal, quotient

CornerResult corner(const AlgebraPtr& a, const std::vector<std::size_t>& subset) {
  Matrix e = a->idempotent_sum(subset);
  const FieldTag f = a->field();
  const std::size_t d = a->dim();
  Matrix le = a->lmat_elem(e);  // y * le = e * y
  Matrix re = a->rmat_elem(e);  // y * re = y * e
  RowBuilder rows(d, f);
  for (std::size_t i = 0; i < d; ++i) {
    Matrix bi(1, d, f);
    bi.at(0, i) = Scalar::one(f);
    rows.add(bi * le * re);  // e * b_i * e
  }
  RowSpace sp(rows.take());
  Matrix basis = sp.basis();
  const std::size_t k = basis.rows();
  if (k == 0) throw Error(Errc::InvalidArgument, "empty corner");

  std::vector<Matrix> table(k, Matrix(k, k, f));
  for (std::size_t i = 0; i < k; ++i) {
    Matrix prod = basis * a->lmat_elem(basis.row(i));  // rows: basis_i * basis_j
    Matrix coords = sp.coordinates_rows(prod);
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t t = 0; t < k; ++t) table[i].at(j, t) = coords.at(j, t);
  }
  auto unit = sp.coordinates(e);
  if (!unit) throw Error(Errc::InternalInconsistency, "corner unit");
  Matrix idems(subset.size(), k, f);
  for (std::size_t t = 0; t < subset.size(); ++t) {
    auto cc = sp.coordinates(a->idempotent(subset[t]));
    if (!cc) throw Error(Errc::InternalInconsistency, "corner idempotent");
    for (std::size_t j = 0; j < k; ++j) idems.at(t, j) = cc->at(0, j);
  }
  std::optional<Matrix> radical;
  if (a->has_radical()) {
    // rad(eAe) = e rad(A) e
    Matrix ejer(0, d, f);
    for (std::size_t t = 0; t < a->radical().rows(); ++t)
      ejer = ejer.vstack(a->radical().row(t) * le * re);
    radical = sp.coordinates_rows(row_basis(ejer));
  }
  std::vector<std::string> labels;
  for (std::size_t t = 0; t < k; ++t) labels.push_back("c" + std::to_string(t));
  CornerResult out;
  out.algebra = Algebra::make(f, std::move(labels), std::move(table), *unit,
                              idems, radical, "e" + a->name() + "e");
  out.embed = basis;
  out.e_row = e;
  out.subset = subset;
  return out;
}

CornerResult corner(const AlgebraPtr& a, const Matrix& e) {
  if (!a->is_idempotent(e)) throw Error(Errc::NotIdempotent, "corner: e^2 != e");
  auto subset = a->distinguished_subset(e);
  if (!subset)
    throw Error(Errc::NotDistinguishedSum,
                "corner: e is not a sum of distinguished idempotents");
  return corner(a, *subset);
}

Matrix idempotent_ideal(const AlgebraPtr& a, const Matrix& e) {
  if (!a->is_idempotent(e))
    throw Error(Errc::NotIdempotent, "idempotent_ideal: e^2 != e");
  const FieldTag f = a->field();
  const std::size_t d = a->dim();
  RowBuilder rows(d, f);
  for (std::size_t i = 0; i < d; ++i) {
    Matrix bie = e * a->lmat(i);  // b_i * e
    for (std::size_t j = 0; j < d; ++j)
      rows.add(bie * a->rmat(j));  // (b_i e) b_j
  }
  Matrix basis = row_basis(rows.take());
  RowSpace sp(basis);
  RowBuilder prods(d, f);
  for (std::size_t i = 0; i < basis.rows(); ++i)
    prods.add_rows(basis * a->lmat_elem(basis.row(i)));
  if (RowSpace(prods.take()).dim() != sp.dim())
    throw Error(Errc::InternalInconsistency, "AeA * AeA != AeA");
  return basis;
}

Matrix QuotientResult::reduce(const Matrix& row) const {
  Matrix red = ideal.reduce(row);
  Matrix out(1, rep_cols.size(), red.tag());
  for (std::size_t t = 0; t < rep_cols.size(); ++t)
    out.at(0, t) = red.at(0, rep_cols[t]);
  return out;
}

Matrix QuotientResult::representative(std::size_t qi, const AlgebraPtr& a) const {
  Matrix row(1, a->dim(), a->field());
  row.at(0, rep_cols[qi]) = Scalar::one(a->field());
  return row;
}

QuotientResult quotient_algebra(const AlgebraPtr& a, const Matrix& ideal_rows) {
  const FieldTag f = a->field();
  const std::size_t d = a->dim();
  RowSpace sp(ideal_rows);
  for (std::size_t t = 0; t < sp.dim(); ++t)
    for (std::size_t i = 0; i < d; ++i)
      if (!sp.contains(sp.basis().row(t) * a->lmat(i)) ||
          !sp.contains(sp.basis().row(t) * a->rmat(i)))
        throw Error(Errc::NotTwoSidedIdeal, "span is not a two-sided ideal");
  if (sp.dim() == d)
    throw Error(Errc::DegenerateQuotient,
                "quotient by the whole algebra is the zero ring");

  QuotientResult out{nullptr, sp, sp.complement_columns(), {}};
  const std::size_t k = out.rep_cols.size();

  auto red_full = [&](const Matrix& row) {
    Matrix red = sp.reduce(row);
    Matrix o(1, k, f);
    for (std::size_t t = 0; t < k; ++t) o.at(0, t) = red.at(0, out.rep_cols[t]);
    return o;
  };

  std::vector<Matrix> table(k, Matrix(k, k, f));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      Matrix prod = a->lmat(out.rep_cols[i]).row(out.rep_cols[j]);
      Matrix coords = red_full(prod);
      for (std::size_t t = 0; t < k; ++t) table[i].at(j, t) = coords.at(0, t);
    }
  Matrix unit = red_full(a->unit());
  std::vector<Matrix> idem_rows;
  for (std::size_t i = 0; i < a->num_idempotents(); ++i) {
    Matrix img = red_full(a->idempotent(i));
    if (!img.is_zero()) {
      idem_rows.push_back(img);
      out.idempotent_origin.push_back(i);
    }
  }
  Matrix idems(idem_rows.size(), k, f);
  for (std::size_t t = 0; t < idem_rows.size(); ++t)
    for (std::size_t j = 0; j < k; ++j) idems.at(t, j) = idem_rows[t].at(0, j);

  std::optional<Matrix> radical;
  if (a->has_radical()) {
    Matrix rr(0, k, f);
    for (std::size_t t = 0; t < a->radical().rows(); ++t)
      rr = rr.vstack(red_full(a->radical().row(t)));
    radical = row_basis(rr);
  }
  std::vector<std::string> labels;
  for (auto c : out.rep_cols) labels.push_back("q:" + a->labels()[c]);
  out.algebra = Algebra::make(f, std::move(labels), std::move(table), unit,
                              idems, radical, a->name() + "/I");
  return out;
}

RegularBimodules regular_bimodules(const AlgebraPtr& a,
                                   const std::vector<std::size_t>& subset) {
  RegularBimodules out{corner(a, subset), std::nullopt, nullptr, nullptr,
                       nullptr, nullptr};
  const FieldTag f = a->field();
  const std::size_t d = a->dim();
  const Matrix& e = out.corner.e_row;
  const AlgebraPtr& c = out.corner.algebra;
  const Matrix& emb = out.corner.embed;

  Matrix le = a->lmat_elem(e);
  RowBuilder ea_rows(d, f);
  for (std::size_t i = 0; i < d; ++i) {
    Matrix bi(1, d, f);
    bi.at(0, i) = Scalar::one(f);
    ea_rows.add(bi * le);  // e * b_i
  }
  RowSpace ea(ea_rows.take());
  {
    std::vector<Matrix> left, right;
    for (std::size_t u = 0; u < c->dim(); ++u)
      left.push_back(ea.coordinates_rows(ea.basis() * a->lmat_elem(emb.row(u))));
    for (std::size_t i = 0; i < d; ++i)
      right.push_back(ea.coordinates_rows(ea.basis() * a->rmat(i)));
    out.eA = Bimodule::make(c, a, std::move(left), std::move(right), "eA");
  }

  RowBuilder ae_rows(d, f);
  for (std::size_t i = 0; i < d; ++i) ae_rows.add(e * a->lmat(i));
  RowSpace ae(ae_rows.take());
  {
    std::vector<Matrix> left, right;
    for (std::size_t i = 0; i < d; ++i)
      left.push_back(ae.coordinates_rows(ae.basis() * a->lmat(i)));
    for (std::size_t u = 0; u < c->dim(); ++u)
      right.push_back(ae.coordinates_rows(ae.basis() * a->rmat_elem(emb.row(u))));
    out.Ae = Bimodule::make(a, c, std::move(left), std::move(right), "Ae");
  }

  Matrix ideal = idempotent_ideal(a, e);
  if (RowSpace(ideal).dim() < d) {
    out.quotient = quotient_algebra(a, ideal);
    const auto& qr = *out.quotient;
    const AlgebraPtr& ab = qr.algebra;
    const std::size_t k = ab->dim();
    auto rep = [&](std::size_t qi) { return qr.representative(qi, a); };
    {
      std::vector<Matrix> left, right;
      for (std::size_t u = 0; u < k; ++u) {
        Matrix lm(k, k, f);
        for (std::size_t x = 0; x < k; ++x) {
          Matrix rr = qr.reduce(a->mul(rep(u), rep(x)));
          for (std::size_t t = 0; t < k; ++t) lm.at(x, t) = rr.at(0, t);
        }
        left.push_back(lm);
      }
      for (std::size_t i = 0; i < d; ++i) {
        Matrix rm(k, k, f);
        for (std::size_t x = 0; x < k; ++x) {
          Matrix rr = qr.reduce(rep(x) * a->rmat(i));
          for (std::size_t t = 0; t < k; ++t) rm.at(x, t) = rr.at(0, t);
        }
        right.push_back(rm);
      }
      out.abar_left =
          Bimodule::make(ab, a, std::move(left), std::move(right), "Abar_l");
    }
    {
      std::vector<Matrix> left, right;
      for (std::size_t i = 0; i < d; ++i) {
        Matrix lm(k, k, f);
        for (std::size_t x = 0; x < k; ++x) {
          Matrix rr = qr.reduce(rep(x) * a->lmat(i));  // b_i * rep(x)
          for (std::size_t t = 0; t < k; ++t) lm.at(x, t) = rr.at(0, t);
        }
        left.push_back(lm);
      }
      for (std::size_t u = 0; u < k; ++u) {
        Matrix rm(k, k, f);
        for (std::size_t x = 0; x < k; ++x) {
          Matrix rr = qr.reduce(a->mul(rep(x), rep(u)));
          for (std::size_t t = 0; t < k; ++t) rm.at(x, t) = rr.at(0, t);
        }
        right.push_back(rm);
      }
      out.abar_right =
          Bimodule::make(a, ab, std::move(left), std::move(right), "Abar_r");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Isomorphism search

namespace {

std::vector<std::size_t> radical_power_dims(const AlgebraPtr& a) {
  std::vector<std::size_t> dims;
  if (!a->has_radical()) return dims;
  RowSpace power(a->radical());
  while (power.dim() > 0) {
    dims.push_back(power.dim());
    Matrix next(0, a->dim(), a->field());
    for (std::size_t u = 0; u < power.dim(); ++u)
      next = next.vstack(a->radical() * a->lmat_elem(power.basis().row(u)));
    power = RowSpace(next);
  }
  return dims;
}

// Degree-one radical generators by idempotent block: rows spanning a
// complement of J^2 inside eps_i * J * eps_j.
std::vector<std::vector<Matrix>> radical_blocks(const AlgebraPtr& a) {
  const std::size_t r = a->num_idempotents();
  std::vector<std::vector<Matrix>> blocks(r, std::vector<Matrix>(r));
  Matrix j = a->radical();
  Matrix j2(0, a->dim(), a->field());
  for (std::size_t u = 0; u < j.rows(); ++u)
    j2 = j2.vstack(j * a->lmat_elem(j.row(u)));
  Matrix j2b = row_basis(j2);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t jj = 0; jj < r; ++jj) {
      Matrix le = a->lmat_elem(a->idempotent(i));
      Matrix re = a->rmat_elem(a->idempotent(jj));
      Matrix kept(0, a->dim(), a->field());
      RowSpace acc(j2b);
      for (std::size_t u = 0; u < j.rows(); ++u) {
        Matrix cand = j.row(u) * le * re;
        if (!acc.contains(cand)) {
          kept = kept.vstack(cand);
          acc = RowSpace(j2b.vstack(kept));
        }
      }
      blocks[i][jj] = kept;
    }
  return blocks;
}

}  // namespace

std::optional<Matrix> algebra_iso(const AlgebraPtr& a, const AlgebraPtr& b) {
  if (!(a->field() == b->field())) return std::nullopt;
  if (a->dim() != b->dim()) return std::nullopt;
  if (a->num_idempotents() != b->num_idempotents()) return std::nullopt;
  if (a->has_radical() != b->has_radical()) return std::nullopt;
  if (radical_power_dims(a) != radical_power_dims(b)) return std::nullopt;

  const FieldTag f = a->field();
  const std::size_t d = a->dim();
  const std::size_t r = a->num_idempotents();

  auto verify = [&](const Matrix& t) {
    if (!is_invertible(t)) return false;
    if (a->unit() * t != b->unit()) return false;
    for (std::size_t i = 0; i < d; ++i) {
      Matrix bi(1, d, f);
      bi.at(0, i) = Scalar::one(f);
      for (std::size_t j = 0; j < d; ++j) {
        Matrix bj(1, d, f);
        bj.at(0, j) = Scalar::one(f);
        if (a->lmat(i).row(j) * t != b->mul(bi * t, bj * t)) return false;
      }
    }
    return true;
  };

  if (d == 1) {
    Matrix t(1, 1, f);
    t.at(0, 0) = b->unit().at(0, 0) / a->unit().at(0, 0);
    if (verify(t)) return t;
    return std::nullopt;
  }
  if (!a->has_radical()) return std::nullopt;

  auto blocks_a = radical_blocks(a);
  auto blocks_b = radical_blocks(b);
  if (r > 6) throw Error(Errc::SearchBudgetExceeded, "too many idempotents");

  std::vector<std::size_t> perm(r);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (std::size_t i = 0; i < r && ok; ++i)
      for (std::size_t j = 0; j < r && ok; ++j)
        if (blocks_a[i][j].rows() != blocks_b[perm[i]][perm[j]].rows())
          ok = false;
    if (!ok) continue;

    // generator images for this matching; close under products; then solve
    // the linear interpolation system and verify multiplicativity
    std::vector<std::pair<Matrix, Matrix>> pairs;
    pairs.emplace_back(a->unit(), b->unit());
    for (std::size_t i = 0; i < r; ++i)
      pairs.emplace_back(a->idempotent(i), b->idempotent(perm[i]));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j)
        for (std::size_t u = 0; u < blocks_a[i][j].rows(); ++u)
          pairs.emplace_back(blocks_a[i][j].row(u),
                             blocks_b[perm[i]][perm[j]].row(u));

    auto span_of = [&]() {
      RowBuilder rows(d, f);
      for (auto& p : pairs) rows.add(p.first);
      return RowSpace(rows.take());
    };
    RowSpace span = span_of();
    bool grew = true;
    while (span.dim() < d && grew) {
      grew = false;
      std::size_t before = pairs.size();
      for (std::size_t x = 0; x < before && span.dim() < d; ++x)
        for (std::size_t y = 0; y < before && span.dim() < d; ++y) {
          Matrix prod = a->mul(pairs[x].first, pairs[y].first);
          if (span.contains(prod)) continue;
          pairs.emplace_back(prod, b->mul(pairs[x].second, pairs[y].second));
          span = span_of();
          grew = true;
        }
    }
    if (span.dim() < d) continue;
    {
      std::size_t before = pairs.size();
      for (std::size_t x = 0; x < before && pairs.size() < 4 * d * d; ++x)
        for (std::size_t y = 0; y < before && pairs.size() < 4 * d * d; ++y)
          pairs.emplace_back(a->mul(pairs[x].first, pairs[y].first),
                             b->mul(pairs[x].second, pairs[y].second));
    }
    RowBuilder lhs_b(d, f), rhs_b(d, f);
    for (auto& p : pairs) {
      lhs_b.add(p.first);
      rhs_b.add(p.second);
    }
    Matrix lhs = lhs_b.take(), rhs = rhs_b.take();
    auto t = solve(lhs, rhs);  // lhs * T = rhs
    if (!t) continue;
    if (verify(*t)) return *t;
  } while (std::next_permutation(perm.begin(), perm.end()));

  return std::nullopt;
}

}  // namespace serrec
