#include "serrec/module.hpp"

#include <atomic>
#include <map>
#include <random>

namespace serrec {

namespace {
std::atomic<std::uint64_t> g_seed{0};
}

void set_global_seed(std::uint64_t seed) { g_seed.store(seed); }
std::uint64_t global_seed() { return g_seed.load(); }

ModulePtr Module::make(AlgebraPtr alg, std::vector<Matrix> actions,
                       std::string name) {
  auto m = std::shared_ptr<Module>(new Module());
  if (!alg) throw Error(Errc::InvalidArgument, "null algebra for module");
  m->alg_ = std::move(alg);
  m->tag_ = m->alg_->field();
  m->name_ = std::move(name);
  m->act_ = std::move(actions);
  if (m->act_.size() != m->alg_->dim())
    throw Error(Errc::DimensionMismatch, "one action matrix per basis element");
  m->dim_ = m->act_[0].rows();
  const std::size_t n = m->dim_;
  for (auto& a : m->act_)
    if (a.rows() != n || a.cols() != n || !(a.tag() == m->tag_))
      throw Error(Errc::DimensionMismatch, "action matrix shape");
  if (n == 0) return m;
  if (m->act_elem(m->alg_->unit()) != Matrix::identity(n, m->tag_))
    throw Error(Errc::InvalidArgument, "module: unit does not act as id");
  // multiplicativity on (generators x basis) extends to all pairs by
  // linearity and induction over products of generators
  const Matrix& gens = m->alg_->generators();
  for (std::size_t g = 0; g < gens.rows(); ++g) {
    Matrix ag = m->act_elem(gens.row(g));
    Matrix gl = m->alg_->lmat_elem(gens.row(g));
    for (std::size_t j = 0; j < m->alg_->dim(); ++j)
      if (ag * m->act_[j] != m->act_elem(gl.row(j)))
        throw Error(Errc::InvalidArgument,
                    "module action does not respect structure constants");
  }
  return m;
}

ModulePtr Module::zero(AlgebraPtr alg, FieldTag tag) {
  auto m = std::shared_ptr<Module>(new Module());
  m->alg_ = std::move(alg);
  m->tag_ = m->alg_ ? m->alg_->field() : tag;
  m->name_ = "0";
  m->dim_ = 0;
  if (m->alg_) m->act_.assign(m->alg_->dim(), Matrix(0, 0, m->tag_));
  return m;
}

ModulePtr Module::regular(const AlgebraPtr& alg) {
  // memoized so caches keyed by module identity stay hot
  static std::map<const Algebra*,
                  std::pair<std::weak_ptr<const Algebra>, ModulePtr>>
      cache;
  auto it = cache.find(alg.get());
  if (it != cache.end() && !it->second.first.expired())
    return it->second.second;
  std::vector<Matrix> act;
  for (std::size_t i = 0; i < alg->dim(); ++i) act.push_back(alg->rmat(i));
  auto m = make(alg, std::move(act), alg->name());
  cache[alg.get()] = {alg, m};
  return m;
}

Matrix Module::act_elem(const Matrix& x) const {
  Matrix m(dim_, dim_, tag_);
  for (std::size_t i = 0; i < act_.size(); ++i)
    if (!x.at(0, i).is_zero()) m = m + act_[i].scaled(x.at(0, i));
  return m;
}

const Module::Blocks& Module::blocks() const {
  if (blocks_) return *blocks_;
  auto b = std::make_shared<Blocks>();
  const std::size_t r = alg_->num_idempotents();
  Matrix u(0, dim_, tag_);
  for (std::size_t v = 0; v < r; ++v) {
    Matrix img = row_basis(act_elem(alg_->idempotent(v)));
    b->offset.push_back(u.rows());
    b->size.push_back(img.rows());
    u = u.vstack(img);
  }
  if (u.rows() != dim_)
    throw Error(Errc::InternalInconsistency,
                "idempotent blocks do not exhaust the module");
  b->from_adapted = u;
  if (dim_ > 0) {
    auto vinv = inverse(u);
    if (!vinv)
      throw Error(Errc::InternalInconsistency, "adapted basis not invertible");
    b->to_adapted = *vinv;
  } else {
    b->to_adapted = Matrix(0, 0, tag_);
  }
  const Matrix& rg = alg_->radical_generators();
  for (std::size_t g = 0; g < rg.rows(); ++g)
    b->rad_gen_adapted.push_back(u * act_elem(rg.row(g)) * b->to_adapted);
  blocks_ = b;
  return *blocks_;
}

Morphism::Morphism(ModulePtr src, ModulePtr tgt, Matrix mat)
    : src_(std::move(src)), tgt_(std::move(tgt)), mat_(std::move(mat)) {
  if (src_->algebra() != tgt_->algebra())
    throw Error(Errc::AlgebraMismatch, "morphism between different algebras");
  if (mat_.rows() != src_->dim() || mat_.cols() != tgt_->dim())
    throw Error(Errc::DimensionMismatch, "morphism matrix shape");
  if (src_->zero_category() || src_->dim() == 0 || tgt_->dim() == 0) return;
  const Matrix& gens = src_->algebra()->generators();
  for (std::size_t g = 0; g < gens.rows(); ++g) {
    Matrix x = gens.row(g);
    if (src_->act_elem(x) * mat_ != mat_ * tgt_->act_elem(x))
      throw Error(Errc::InvalidArgument, "matrix does not intertwine actions");
  }
}

Morphism Morphism::identity(const ModulePtr& m) {
  return Morphism(m, m, Matrix::identity(m->dim(), m->tag()));
}

Morphism Morphism::zero(const ModulePtr& src, const ModulePtr& tgt) {
  return Morphism(src, tgt, Matrix::zero(src->dim(), tgt->dim(), src->tag()));
}

Morphism Morphism::then(const Morphism& g) const {
  if (tgt_ != g.src_ && tgt_->dim() != g.src_->dim())
    throw Error(Errc::DimensionMismatch, "composition mismatch");
  return Morphism(src_, g.tgt_, mat_ * g.mat_);
}

bool Morphism::is_injective() const { return rank(mat_) == src_->dim(); }
bool Morphism::is_surjective() const { return rank(mat_) == tgt_->dim(); }
bool Morphism::is_iso() const {
  return src_->dim() == tgt_->dim() && is_injective();
}

std::optional<Morphism> Morphism::inverse() const {
  if (!is_iso()) return std::nullopt;
  auto inv = serrec::inverse(mat_);
  if (!inv) return std::nullopt;
  return Morphism(tgt_, src_, *inv);
}

ShortExactSeq ShortExactSeq::make(Morphism mono, Morphism epi) {
  if (mono.target() != epi.source())
    throw Error(Errc::InvalidArgument, "ses: maps not composable");
  if (!mono.is_injective() || !epi.is_surjective())
    throw Error(Errc::InvalidArgument, "ses: not mono/epi");
  if (!(mono.mat() * epi.mat()).is_zero())
    throw Error(Errc::InvalidArgument, "ses: composite nonzero");
  if (mono.source()->dim() + epi.target()->dim() != mono.target()->dim())
    throw Error(Errc::InvalidArgument, "ses: dimension bookkeeping fails");
  return ShortExactSeq{std::move(mono), std::move(epi)};
}

SubmoduleResult submodule(const ModulePtr& m, const Matrix& spanning_rows) {
  RowSpace sp(spanning_rows);
  const Matrix& basis = sp.basis();
  const auto& a = m->algebra();
  // closure under the generators implies closure under the whole algebra
  const Matrix& gens = a->generators();
  for (std::size_t g = 0; g < gens.rows(); ++g)
    if (!sp.contains_rows(basis * m->act_elem(gens.row(g))))
      throw Error(Errc::InvalidArgument, "span is not a submodule");
  std::vector<Matrix> act;
  for (std::size_t i = 0; i < a->dim(); ++i)
    act.push_back(sp.coordinates_rows(basis * m->act(i)));
  auto sub = Module::make(a, std::move(act), "sub(" + m->name() + ")");
  return SubmoduleResult{sub, Morphism(sub, m, basis)};
}

QuotientModuleResult quotient_module(const ModulePtr& m,
                                     const Matrix& spanning_rows) {
  RowSpace sp(spanning_rows);
  const auto& a = m->algebra();
  const Matrix& gens = a->generators();
  for (std::size_t g = 0; g < gens.rows(); ++g)
    if (!sp.contains_rows(sp.basis() * m->act_elem(gens.row(g))))
      throw Error(Errc::InvalidArgument, "span is not a submodule");
  auto comp = sp.complement_columns();
  const std::size_t q = comp.size();
  auto reduce_to = [&](const Matrix& row) {
    Matrix red = sp.reduce(row);
    Matrix out(1, q, m->tag());
    for (std::size_t t = 0; t < q; ++t) out.at(0, t) = red.at(0, comp[t]);
    return out;
  };
  std::vector<Matrix> act;
  for (std::size_t i = 0; i < a->dim(); ++i) {
    Matrix ai(q, q, m->tag());
    for (std::size_t r = 0; r < q; ++r) {
      Matrix row = m->act(i).row(comp[r]);
      Matrix red = reduce_to(row);
      for (std::size_t t = 0; t < q; ++t) ai.at(r, t) = red.at(0, t);
    }
    act.push_back(ai);
  }
  auto quot = Module::make(a, std::move(act), m->name() + "/sub");
  Matrix proj(m->dim(), q, m->tag());
  for (std::size_t r = 0; r < m->dim(); ++r) {
    Matrix e(1, m->dim(), m->tag());
    e.at(0, r) = Scalar::one(m->tag());
    Matrix red = reduce_to(e);
    for (std::size_t t = 0; t < q; ++t) proj.at(r, t) = red.at(0, t);
  }
  return QuotientModuleResult{quot, Morphism(m, quot, proj)};
}

SubmoduleResult kernel(const Morphism& f) {
  Matrix k = left_kernel(f.mat());
  return submodule(f.source(), k);
}

QuotientModuleResult cokernel(const Morphism& f) {
  return quotient_module(f.target(), f.mat());
}

ImageResult image(const Morphism& f) {
  auto sub = submodule(f.target(), f.mat());
  // factor f through its image
  RowSpace sp(sub.inclusion.mat());
  Matrix proj = sp.coordinates_rows(f.mat());
  return ImageResult{sub.module, sub.inclusion,
                     Morphism(f.source(), sub.module, proj)};
}

namespace {

std::vector<Matrix> hom_space_generic(const ModulePtr& m, const ModulePtr& n) {
  const std::size_t dm = m->dim(), dn = n->dim();
  const Matrix& gens = m->algebra()->generators();
  const std::size_t ng = gens.rows();
  Matrix eqs(ng * dm * dn, dm * dn, m->tag());
  for (std::size_t g = 0; g < ng; ++g) {
    Matrix am = m->act_elem(gens.row(g));
    Matrix an = n->act_elem(gens.row(g));
    for (std::size_t r = 0; r < dm; ++r)
      for (std::size_t c = 0; c < dn; ++c) {
        std::size_t row = (g * dm + r) * dn + c;
        for (std::size_t i = 0; i < dm; ++i)
          eqs.at(row, i * dn + c) = eqs.at(row, i * dn + c) + am.at(r, i);
        for (std::size_t j = 0; j < dn; ++j)
          eqs.at(row, r * dn + j) = eqs.at(row, r * dn + j) - an.at(j, c);
      }
  }
  Matrix null = kernel_basis(eqs);
  std::vector<Matrix> basis;
  for (std::size_t v = 0; v < null.cols(); ++v) {
    Matrix f(dm, dn, m->tag());
    for (std::size_t i = 0; i < dm; ++i)
      for (std::size_t j = 0; j < dn; ++j) f.at(i, j) = null.at(i * dn + j, v);
    basis.push_back(f);
  }
  return basis;
}

// Morphisms are block-diagonal in idempotent-adapted coordinates, so the
// unknowns shrink to the diagonal blocks and the only equations come from the
// degree-one radical generators.
std::vector<Matrix> hom_space_blocked(const ModulePtr& m, const ModulePtr& n) {
  const FieldTag f = m->tag();
  const auto& bm = m->blocks();
  const auto& bn = n->blocks();
  const std::size_t r = bm.size.size();
  const std::size_t dm = m->dim(), dn = n->dim();

  std::vector<std::size_t> ustart(r, 0);
  std::size_t nu = 0;
  for (std::size_t v = 0; v < r; ++v) {
    ustart[v] = nu;
    nu += bm.size[v] * bn.size[v];
  }
  if (nu == 0) return {};
  std::vector<std::size_t> mblock(dm), nblock(dn);
  for (std::size_t v = 0; v < r; ++v) {
    for (std::size_t i = 0; i < bm.size[v]; ++i) mblock[bm.offset[v] + i] = v;
    for (std::size_t j = 0; j < bn.size[v]; ++j) nblock[bn.offset[v] + j] = v;
  }

  std::vector<Matrix> rows;
  for (std::size_t g = 0; g < bm.rad_gen_adapted.size(); ++g) {
    const Matrix& am = bm.rad_gen_adapted[g];
    const Matrix& an = bn.rad_gen_adapted[g];
    for (std::size_t rr = 0; rr < dm; ++rr) {
      std::size_t u = mblock[rr];
      for (std::size_t c = 0; c < dn; ++c) {
        std::size_t w = nblock[c];
        Matrix row(1, nu, f);
        bool nonzero = false;
        for (std::size_t i = 0; i < bm.size[w]; ++i) {
          const Scalar& coef = am.at(rr, bm.offset[w] + i);
          if (coef.is_zero()) continue;
          std::size_t idx = ustart[w] + i * bn.size[w] + (c - bn.offset[w]);
          row.at(0, idx) = row.at(0, idx) + coef;
          nonzero = true;
        }
        for (std::size_t j = 0; j < bn.size[u]; ++j) {
          const Scalar& coef = an.at(bn.offset[u] + j, c);
          if (coef.is_zero()) continue;
          std::size_t idx = ustart[u] + (rr - bm.offset[u]) * bn.size[u] + j;
          row.at(0, idx) = row.at(0, idx) - coef;
          nonzero = true;
        }
        if (nonzero) rows.push_back(row);
      }
    }
  }
  Matrix eqs(rows.size(), nu, f);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < nu; ++j) eqs.at(i, j) = rows[i].at(0, j);
  Matrix null = kernel_basis(eqs);

  std::vector<Matrix> basis;
  for (std::size_t s = 0; s < null.cols(); ++s) {
    Matrix fp(dm, dn, f);
    for (std::size_t v = 0; v < r; ++v)
      for (std::size_t i = 0; i < bm.size[v]; ++i)
        for (std::size_t j = 0; j < bn.size[v]; ++j)
          fp.at(bm.offset[v] + i, bn.offset[v] + j) =
              null.at(ustart[v] + i * bn.size[v] + j, s);
    basis.push_back(bm.to_adapted * fp * bn.from_adapted);
  }
  return basis;
}

}  // namespace

std::vector<Matrix> hom_space(const ModulePtr& m, const ModulePtr& n) {
  if (m->algebra() != n->algebra())
    throw Error(Errc::AlgebraMismatch, "hom between different algebras");
  const std::size_t dm = m->dim(), dn = n->dim();
  if (dm == 0 || dn == 0) return {};
  // pure function of the two modules: memoized, keyed by identity and
  // validated by liveness (single-threaded use)
  static std::map<std::pair<const Module*, const Module*>,
                  std::tuple<std::weak_ptr<const Module>,
                             std::weak_ptr<const Module>, std::vector<Matrix>>>
      cache;
  auto key = std::make_pair(m.get(), n.get());
  auto it = cache.find(key);
  if (it != cache.end() && !std::get<0>(it->second).expired() &&
      !std::get<1>(it->second).expired())
    return std::get<2>(it->second);
  auto basis = m->algebra()->has_radical() ? hom_space_blocked(m, n)
                                           : hom_space_generic(m, n);
  cache[key] = {m, n, basis};
  return basis;
}

std::size_t hom_dim(const ModulePtr& m, const ModulePtr& n) {
  return hom_space(m, n).size();
}

SubmoduleResult radical_submodule(const ModulePtr& m) {
  const auto& a = m->algebra();
  const Matrix& rad = a->radical();
  RowBuilder rows(m->dim(), m->tag());
  for (std::size_t t = 0; t < rad.rows(); ++t)
    rows.add_rows(m->act_elem(rad.row(t)));
  return submodule(m, rows.take());
}

std::vector<ModulePtr> simples(const AlgebraPtr& a) {
  std::vector<ModulePtr> out;
  auto reg = Module::regular(a);
  for (std::size_t i = 0; i < a->num_idempotents(); ++i) {
    Matrix pi_rows = a->lmat_elem(a->idempotent(i));  // rows eps_i * b_j
    auto pi = submodule(reg, pi_rows);
    auto rad = radical_submodule(pi.module);
    auto top = quotient_module(pi.module,
                               rad.inclusion.mat());
    ModulePtr s = top.module;
    if (s->dim() == 0)
      throw Error(Errc::NotSimple, "top of projective is zero");
    // killed by the radical, End = k, supported exactly on eps_i
    for (std::size_t t = 0; t < a->radical().rows(); ++t)
      if (!s->act_elem(a->radical().row(t)).is_zero())
        throw Error(Errc::NotSimple, "claimed simple not killed by radical");
    if (hom_dim(s, s) != 1)
      throw Error(Errc::NotSimple,
                  "endomorphism ring of top is not the ground field");
    for (std::size_t j = 0; j < a->num_idempotents(); ++j) {
      Matrix ej = s->act_elem(a->idempotent(j));
      bool want_id = (j == i);
      if (want_id && ej != Matrix::identity(s->dim(), s->tag()))
        throw Error(Errc::NotSimple, "simple not supported on its idempotent");
      if (!want_id && !ej.is_zero())
        throw Error(Errc::NotSimple, "simple supported on two idempotents");
    }
    out.push_back(Module::make(a,
                               [&] {
                                 std::vector<Matrix> act;
                                 for (std::size_t t = 0; t < a->dim(); ++t)
                                   act.push_back(s->act(t));
                                 return act;
                               }(),
                               "S" + std::to_string(i + 1)));
  }
  return out;
}

std::vector<std::size_t> composition_factors(const ModulePtr& m) {
  const auto& a = m->algebra();
  const std::size_t r = a->num_idempotents();
  std::vector<std::size_t> counts(r, 0);
  if (m->dim() == 0) return counts;
  const Matrix& rad = a->radical();

  // radical filtration: F_0 = M >= F_1 = MJ >= ...
  std::vector<RowSpace> filt;
  filt.emplace_back(Matrix::identity(m->dim(), m->tag()));
  while (filt.back().dim() > 0) {
    RowBuilder rows(m->dim(), m->tag());
    const Matrix& basis = filt.back().basis();
    for (std::size_t t = 0; t < rad.rows(); ++t)
      rows.add_rows(basis * m->act_elem(rad.row(t)));
    filt.emplace_back(rows.take());
  }
  std::size_t total = 0;
  for (std::size_t layer = 0; layer + 1 < filt.size(); ++layer) {
    const RowSpace& fk = filt[layer];
    const RowSpace& fk1 = filt[layer + 1];
    std::size_t layer_dim = fk.dim() - fk1.dim();
    std::size_t got = 0;
    for (std::size_t i = 0; i < r; ++i) {
      // dim of (F_k . eps_i + F_{k+1}) - dim F_{k+1}
      Matrix rows = fk1.basis().vstack(fk.basis() *
                                       m->act_elem(a->idempotent(i)));
      std::size_t mult = RowSpace(rows).dim() - fk1.dim();
      counts[i] += mult;
      got += mult;
    }
    if (got != layer_dim)
      throw Error(Errc::InternalInconsistency,
                  "composition layer does not split by idempotent supports");
    total += layer_dim;
  }
  if (total != m->dim())
    throw Error(Errc::InternalInconsistency,
                "composition factor dimensions do not sum to dim M");
  return counts;
}

TensorResult tensor_over(const ModulePtr& m, const BimodulePtr& b) {
  if (m->algebra() != b->left_algebra())
    throw Error(Errc::AlgebraMismatch, "tensor_over: module is not over the "
                                       "bimodule's left algebra");
  static std::map<std::pair<const Bimodule*, const Module*>,
                  std::tuple<std::weak_ptr<const Bimodule>,
                             std::weak_ptr<const Module>, TensorResult>>
      cache;
  auto key = std::make_pair(b.get(), m.get());
  {
    auto it = cache.find(key);
    if (it != cache.end() && !std::get<0>(it->second).expired() &&
        !std::get<1>(it->second).expired())
      return std::get<2>(it->second);
  }
  TensorResult result = [&] {
  const auto& c = b->left_algebra();
  const auto& a = b->right_algebra();
  const FieldTag f = m->tag();
  const std::size_t dm = m->dim(), db = b->dim();
  const std::size_t n = dm * db;
  if (n == 0) {
    auto z = Module::zero(a, f);
    return TensorResult{z, Matrix(0, 0, f)};
  }
  // relation rows (x.c (x) y) - (x (x) c.y) for c running over generators
  const Matrix& gens = c->generators();
  Matrix rel(gens.rows() * dm * db, n, f);
  for (std::size_t g = 0; g < gens.rows(); ++g) {
    Matrix mc = m->act_elem(gens.row(g));
    Matrix lc = b->left_act_elem(gens.row(g));
    for (std::size_t i = 0; i < dm; ++i)
      for (std::size_t k = 0; k < db; ++k) {
        std::size_t rr = (g * dm + i) * db + k;
        for (std::size_t ii = 0; ii < dm; ++ii)
          rel.at(rr, ii * db + k) = rel.at(rr, ii * db + k) + mc.at(i, ii);
        for (std::size_t kk = 0; kk < db; ++kk)
          rel.at(rr, i * db + kk) = rel.at(rr, i * db + kk) - lc.at(k, kk);
      }
  }
  RowSpace sp(rel);
  auto comp = sp.complement_columns();
  const std::size_t q = comp.size();
  auto reduce_to = [&](const Matrix& row) {
    Matrix red = sp.reduce(row);
    Matrix out(1, q, f);
    for (std::size_t t = 0; t < q; ++t) out.at(0, t) = red.at(0, comp[t]);
    return out;
  };
  // the A-action descends; verify the relation space is stable
  for (std::size_t g = 0; g < a->generators().rows(); ++g) {
    Matrix ra = b->right_act_elem(a->generators().row(g));
    Matrix big = kron(Matrix::identity(dm, f), ra);
    if (!sp.contains_rows(sp.basis() * big))
      throw Error(Errc::InternalInconsistency,
                  "tensor relations not stable under the right action");
  }
  std::vector<Matrix> act;
  for (std::size_t t = 0; t < a->dim(); ++t) {
    Matrix big = kron(Matrix::identity(dm, f), b->right_act(t));
    Matrix at(q, q, f);
    for (std::size_t rr = 0; rr < q; ++rr) {
      Matrix red = reduce_to(big.row(comp[rr]));
      for (std::size_t tt = 0; tt < q; ++tt) at.at(rr, tt) = red.at(0, tt);
    }
    act.push_back(at);
  }
  ModulePtr mod = q == 0 ? Module::zero(a, f)
                         : Module::make(a, std::move(act),
                                        m->name() + "(x)" + b->name());
  Matrix surj(n, q, f);
  for (std::size_t rr = 0; rr < n; ++rr) {
    Matrix e(1, n, f);
    e.at(0, rr) = Scalar::one(f);
    Matrix red = reduce_to(e);
    for (std::size_t tt = 0; tt < q; ++tt) surj.at(rr, tt) = red.at(0, tt);
  }
  return TensorResult{mod, surj};
  }();
  cache[key] = {b, m, result};
  return result;
}

HomResult hom_module(const BimodulePtr& b, const ModulePtr& m) {
  if (m->algebra() != b->right_algebra())
    throw Error(Errc::AlgebraMismatch, "hom_module: module is not over the "
                                       "bimodule's right algebra");
  static std::map<std::pair<const Bimodule*, const Module*>,
                  std::tuple<std::weak_ptr<const Bimodule>,
                             std::weak_ptr<const Module>, HomResult>>
      cache;
  auto key = std::make_pair(b.get(), m.get());
  {
    auto it = cache.find(key);
    if (it != cache.end() && !std::get<0>(it->second).expired() &&
        !std::get<1>(it->second).expired())
      return std::get<2>(it->second);
  }
  HomResult result = [&] {
  const auto& c = b->left_algebra();
  const FieldTag f = m->tag();
  const std::size_t db = b->dim(), dm = m->dim();
  if (db == 0 || dm == 0) return HomResult{Module::zero(c, f), {}};

  // intertwiners of the right structures: Hom_A(b, m) as a vector space
  auto basis = hom_space(bimodule_right_module_cached(b), m);
  Matrix flat(basis.size(), db * dm, f);
  for (std::size_t v = 0; v < basis.size(); ++v)
    for (std::size_t i = 0; i < db; ++i)
      for (std::size_t j = 0; j < dm; ++j)
        flat.at(v, i * dm + j) = basis[v].at(i, j);
  const std::size_t h = basis.size();
  if (h == 0) return HomResult{Module::zero(c, f), {}};
  RowSpace flat_sp(flat);
  auto coords_of = [&](const Matrix& fm) {
    Matrix row(1, db * dm, f);
    for (std::size_t i = 0; i < db; ++i)
      for (std::size_t j = 0; j < dm; ++j) row.at(0, i * dm + j) = fm.at(i, j);
    auto cc = flat_sp.coordinates(row);
    if (!cc)
      throw Error(Errc::InternalInconsistency, "hom_module coordinates");
    // coordinates are w.r.t. the rref basis of flat_sp; convert to the
    // original (kernel_basis) coordinates by solving against flat
    return *cc;
  };
  // module structure in terms of the rref basis of the solution space
  std::vector<Matrix> rref_basis;
  for (std::size_t u = 0; u < h; ++u) {
    Matrix fm(db, dm, f);
    for (std::size_t i = 0; i < db; ++i)
      for (std::size_t j = 0; j < dm; ++j)
        fm.at(i, j) = flat_sp.basis().at(u, i * dm + j);
    rref_basis.push_back(fm);
  }
  std::vector<Matrix> act;
  for (std::size_t t = 0; t < c->dim(); ++t) {
    Matrix lt = b->left_act(t);
    Matrix at(h, h, f);
    for (std::size_t u = 0; u < h; ++u) {
      Matrix fu_c = lt * rref_basis[u];  // (f . c)(x) = f(c x)
      Matrix row = coords_of(fu_c);
      for (std::size_t v = 0; v < h; ++v) at.at(u, v) = row.at(0, v);
    }
    act.push_back(at);
  }
  ModulePtr mod = Module::make(c, std::move(act), "Hom(" + b->name() + ",...)");
  return HomResult{mod, rref_basis};
  }();
  cache[key] = {b, m, result};
  return result;
}

namespace {

// indices of rows of M whose eps_i-projection descends to a basis of
// (M/MJ) eps_i, together with the chosen module elements
std::vector<Matrix> top_generators(const ModulePtr& m, std::size_t idem,
                                   const RowSpace& mj) {
  const auto& a = m->algebra();
  std::vector<Matrix> out;
  Matrix acc = mj.basis();
  RowSpace span(acc);
  Matrix proj = m->act_elem(a->idempotent(idem));
  for (std::size_t r = 0; r < m->dim(); ++r) {
    Matrix cand = proj.row(r);
    if (!span.contains(cand)) {
      out.push_back(cand);
      acc = acc.vstack(cand);
      span = RowSpace(acc);
    }
  }
  return out;
}

}  // namespace

CoverResult projective_cover(const ModulePtr& m) {
  static std::map<const Module*,
                  std::pair<std::weak_ptr<const Module>, CoverResult>>
      cache;
  {
    auto it = cache.find(m.get());
    if (it != cache.end() && !it->second.first.expired())
      return it->second.second;
  }
  CoverResult result = [&] {
  const auto& a = m->algebra();
  const FieldTag f = m->tag();
  auto reg = Module::regular(a);
  if (m->dim() == 0) {
    auto z = Module::zero(a, f);
    return CoverResult{z, Morphism(z, m, Matrix(0, 0, f))};
  }
  auto mj = radical_submodule(m);
  RowSpace mj_sp(mj.inclusion.mat());

  ModulePtr cover;
  RowBuilder epi_rows(m->dim(), f);
  for (std::size_t i = 0; i < a->num_idempotents(); ++i) {
    auto gens = top_generators(m, i, mj_sp);
    if (gens.empty()) continue;
    Matrix pi_rows = a->lmat_elem(a->idempotent(i));
    auto pi = submodule(reg, pi_rows);
    for (const auto& v : gens) {
      cover = cover ? direct_sum(cover, pi.module).module : pi.module;
      // eps_i A -> M: (element w of A) |-> v . w
      Matrix blk(pi.module->dim(), m->dim(), f);
      for (std::size_t u = 0; u < pi.module->dim(); ++u) {
        Matrix w = pi.inclusion.mat().row(u);  // element of A
        Matrix img = v * m->act_elem(w);
        for (std::size_t t = 0; t < m->dim(); ++t) blk.at(u, t) = img.at(0, t);
      }
      epi_rows.add_rows(blk);
    }
  }
  if (!cover)
    throw Error(Errc::InternalInconsistency, "module with empty top");
  Morphism epi(cover, m, epi_rows.take());
  if (!epi.is_surjective())
    throw Error(Errc::InternalInconsistency, "cover map not surjective");
  return CoverResult{cover, epi};
  }();
  cache.insert_or_assign(m.get(), std::make_pair(std::weak_ptr<const Module>(m), result));
  return result;
}

bool is_projective(const ModulePtr& m) {
  if (m->dim() == 0) return true;
  static std::map<const Module*, std::pair<std::weak_ptr<const Module>, bool>>
      cache;
  {
    auto it = cache.find(m.get());
    if (it != cache.end() && !it->second.first.expired())
      return it->second.second;
  }
  auto memo = [&](bool v) {
    cache[m.get()] = {m, v};
    return v;
  };
  auto cov = projective_cover(m);
  if (cov.cover->dim() == m->dim()) return memo(true);
  // does the cover epi split?  solve sum_u x_u (H_u * E) = I
  auto homs = hom_space(m, cov.cover);
  if (homs.empty()) return memo(false);
  const std::size_t d = m->dim();
  const FieldTag f = m->tag();
  Matrix sys(d * d, homs.size(), f);
  Matrix rhs(d * d, 1, f);
  for (std::size_t u = 0; u < homs.size(); ++u) {
    Matrix prod = homs[u] * cov.epi.mat();
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) sys.at(i * d + j, u) = prod.at(i, j);
  }
  for (std::size_t i = 0; i < d; ++i)
    rhs.at(i * d + i, 0) = Scalar::one(f);
  return memo(solve(sys, rhs).has_value());
}

std::vector<ModulePtr> injectives(const AlgebraPtr& a) {
  std::vector<ModulePtr> out;
  const FieldTag f = a->field();
  for (std::size_t i = 0; i < a->num_idempotents(); ++i) {
    // left projective A eps_i: rows b_j * eps_i
    Matrix rows = a->rmat_elem(a->idempotent(i));
    RowSpace sp(rows);
    const Matrix& basis = sp.basis();
    const std::size_t k = sp.dim();
    std::vector<Matrix> act;
    for (std::size_t t = 0; t < a->dim(); ++t) {
      // left multiplication by b_t on the subspace, then dualize
      Matrix n = sp.coordinates_rows(basis * a->lmat(t));
      act.push_back(n.transpose());
    }
    (void)k;
    out.push_back(Module::make(a, std::move(act), "I" + std::to_string(i + 1)));
  }
  return out;
}

DirectSumResult direct_sum(const ModulePtr& m, const ModulePtr& n) {
  if (m->algebra() != n->algebra())
    throw Error(Errc::AlgebraMismatch, "direct sum over different algebras");
  const auto& a = m->algebra();
  const FieldTag f = m->tag();
  std::vector<Matrix> act;
  for (std::size_t i = 0; i < a->dim(); ++i)
    act.push_back(direct_sum_mat(m->act(i), n->act(i)));
  auto sum = Module::make(a, std::move(act), m->name() + "+" + n->name());
  const std::size_t dm = m->dim(), dn = n->dim();
  Matrix i1(dm, dm + dn, f), i2(dn, dm + dn, f), p1(dm + dn, dm, f),
      p2(dm + dn, dn, f);
  for (std::size_t t = 0; t < dm; ++t) {
    i1.at(t, t) = Scalar::one(f);
    p1.at(t, t) = Scalar::one(f);
  }
  for (std::size_t t = 0; t < dn; ++t) {
    i2.at(t, dm + t) = Scalar::one(f);
    p2.at(dm + t, t) = Scalar::one(f);
  }
  return DirectSumResult{sum, Morphism(m, sum, i1), Morphism(n, sum, i2),
                         Morphism(sum, m, p1), Morphism(sum, n, p2)};
}

std::optional<Matrix> invertible_in_span(const std::vector<Matrix>& basis) {
  if (basis.empty()) return std::nullopt;
  for (const auto& h : basis)
    if (is_invertible(h)) return h;
  const FieldTag f = basis[0].tag();
  if (f.kind == FieldTag::Kind::Rational) {
    std::mt19937_64 rng(global_seed() ^ 0x9e3779b97f4a7c15ull);
    std::uniform_int_distribution<int> dist(-3, 3);
    for (int trial = 0; trial < 20; ++trial) {
      Matrix cand(basis[0].rows(), basis[0].cols(), f);
      for (const auto& h : basis)
        cand = cand + h.scaled(Scalar::from_int(dist(rng), f));
      if (is_invertible(cand)) return cand;
    }
  } else {
    const std::size_t h = basis.size();
    double combos = 1;
    for (std::size_t u = 0; u < h; ++u) combos *= f.p;
    if (combos <= 4096.0) {
      // exhaustive small grid over F_p
      std::vector<std::uint32_t> idx(h, 0);
      for (;;) {
        Matrix cand(basis[0].rows(), basis[0].cols(), f);
        for (std::size_t u = 0; u < h; ++u)
          cand = cand + basis[u].scaled(Scalar::from_int(idx[u], f));
        if (is_invertible(cand)) return cand;
        std::size_t pos = 0;
        while (pos < h && ++idx[pos] == f.p) idx[pos++] = 0;
        if (pos == h) break;
      }
    } else {
      std::mt19937_64 rng(global_seed() ^ 0xc2b2ae3d27d4eb4full);
      std::uniform_int_distribution<std::uint32_t> dist(0, f.p - 1);
      for (int trial = 0; trial < 50; ++trial) {
        Matrix cand(basis[0].rows(), basis[0].cols(), f);
        for (const auto& hh : basis)
          cand = cand + hh.scaled(Scalar::from_int(dist(rng), f));
        if (is_invertible(cand)) return cand;
      }
    }
  }
  return std::nullopt;
}

std::optional<Morphism> is_isomorphic(const ModulePtr& m, const ModulePtr& n) {
  if (m->algebra() != n->algebra())
    throw Error(Errc::AlgebraMismatch, "iso test over different algebras");
  if (m->dim() != n->dim()) return std::nullopt;
  if (m->dim() == 0) return Morphism(m, n, Matrix(0, 0, m->tag()));
  auto cand = invertible_in_span(hom_space(m, n));
  if (!cand) return std::nullopt;
  return Morphism(m, n, *cand);
}

Ext1Result ext1(const ModulePtr& m, const ModulePtr& n) {
  if (m->algebra() != n->algebra())
    throw Error(Errc::AlgebraMismatch, "ext over different algebras");
  static std::map<std::pair<const Module*, const Module*>,
                  std::tuple<std::weak_ptr<const Module>,
                             std::weak_ptr<const Module>, Ext1Result>>
      cache;
  auto key = std::make_pair(m.get(), n.get());
  {
    auto it = cache.find(key);
    if (it != cache.end() && !std::get<0>(it->second).expired() &&
        !std::get<1>(it->second).expired())
      return std::get<2>(it->second);
  }
  auto memo = [&](const Ext1Result& r) {
    cache.insert_or_assign(
        key, std::make_tuple(std::weak_ptr<const Module>(m),
                             std::weak_ptr<const Module>(n), r));
    return r;
  };
  auto cov = projective_cover(m);
  auto om = kernel(cov.epi);
  Ext1Result out{0, om.module, om.inclusion, cov.epi, {}};
  if (m->dim() == 0 || n->dim() == 0 || om.module->dim() == 0)
    return memo(out);
  auto full = hom_space(om.module, n);
  if (full.empty()) return memo(out);
  const FieldTag f = m->tag();
  const std::size_t fl = om.module->dim() * n->dim();
  RowBuilder restricted(fl, f);
  for (const auto& g : hom_space(cov.cover, n)) {
    Matrix res = om.inclusion.mat() * g;
    Matrix row(1, fl, f);
    for (std::size_t i = 0; i < om.module->dim(); ++i)
      for (std::size_t j = 0; j < n->dim(); ++j)
        row.at(0, i * n->dim() + j) = res.at(i, j);
    restricted.add(row);
  }
  RowSpace img(restricted.take());
  out.dim = full.size() - img.dim();
  // representative cocycles: extend the image space by independent solutions
  Matrix acc = img.basis();
  RowSpace span(acc);
  for (const auto& g : full) {
    Matrix row(1, fl, f);
    for (std::size_t i = 0; i < om.module->dim(); ++i)
      for (std::size_t j = 0; j < n->dim(); ++j)
        row.at(0, i * n->dim() + j) = g.at(i, j);
    if (!span.contains(row)) {
      out.cocycles.push_back(g);
      acc = acc.vstack(row);
      span = RowSpace(acc);
    }
  }
  if (out.cocycles.size() != out.dim)
    throw Error(Errc::InternalInconsistency, "ext1 cocycle count");
  return memo(out);
}

std::size_t ext1_dim(const ModulePtr& m, const ModulePtr& n) {
  return ext1(m, n).dim;
}

ShortExactSeq extension_from_cocycle(const Ext1Result& e, const ModulePtr& n,
                                     const Matrix& cocycle) {
  const ModulePtr& p0 = e.cover_epi.source();
  const ModulePtr& m = e.cover_epi.target();
  const FieldTag f = m->tag();
  auto sum = direct_sum(n, p0);
  // E = (n (+) P0) / { (f(w), -w) : w in Omega }
  Matrix rows(e.omega->dim(), n->dim() + p0->dim(), f);
  for (std::size_t w = 0; w < e.omega->dim(); ++w) {
    Matrix fw(1, e.omega->dim(), f);
    fw.at(0, w) = Scalar::one(f);
    Matrix img_n = fw * cocycle;
    Matrix img_p = fw * e.omega_inclusion.mat();
    for (std::size_t t = 0; t < n->dim(); ++t) rows.at(w, t) = img_n.at(0, t);
    for (std::size_t t = 0; t < p0->dim(); ++t)
      rows.at(w, n->dim() + t) = -img_p.at(0, t);
  }
  auto quot = quotient_module(sum.module, rows);
  Morphism mono = sum.inj1.then(quot.projection);
  // epi: (x_n, x_p) |-> epi(x_p); factors through the quotient
  Matrix epi_mat = sum.proj2.mat() * e.cover_epi.mat();
  // express on quotient coordinates: lift representative basis
  RowSpace sp(rows);
  auto comp = sp.complement_columns();
  Matrix qmat(comp.size(), m->dim(), f);
  for (std::size_t t = 0; t < comp.size(); ++t)
    for (std::size_t j = 0; j < m->dim(); ++j)
      qmat.at(t, j) = epi_mat.at(comp[t], j);
  Morphism epi(quot.module, m, qmat);
  return ShortExactSeq::make(mono, epi);
}

ModulePtr transport_module(const ModulePtr& m, const AlgebraPtr& a,
                           const Matrix& iso) {
  std::vector<Matrix> act;
  for (std::size_t i = 0; i < a->dim(); ++i) {
    Matrix row(1, a->dim(), a->field());
    row.at(0, i) = Scalar::one(a->field());
    act.push_back(m->act_elem(row * iso));
  }
  return Module::make(a, std::move(act), m->name() + "^T");
}

ModulePtr bimodule_right_module(const BimodulePtr& b) {
  std::vector<Matrix> act;
  for (std::size_t i = 0; i < b->right_algebra()->dim(); ++i)
    act.push_back(b->right_act(i));
  return Module::make(b->right_algebra(), std::move(act), b->name());
}

ModulePtr bimodule_right_module_cached(const BimodulePtr& b) {
  // keyed by address and validated by liveness; single-threaded use
  static std::map<const Bimodule*,
                  std::pair<std::weak_ptr<const Bimodule>, ModulePtr>>
      cache;
  auto it = cache.find(b.get());
  if (it != cache.end() && !it->second.first.expired())
    return it->second.second;
  auto m = bimodule_right_module(b);
  cache[b.get()] = {b, m};
  return m;
}

ModulePtr bimodule_left_module(const BimodulePtr& b) {
  auto op = b->left_algebra()->opposite();
  std::vector<Matrix> act;
  for (std::size_t i = 0; i < op->dim(); ++i) act.push_back(b->left_act(i));
  return Module::make(op, std::move(act), b->name() + "_l");
}

}  // namespace serrec
