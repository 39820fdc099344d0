#include "koszul/graded_ring.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <random>
#include <string>

#include "koszul/rank.hpp"

namespace koszul {

Monomial::Monomial(std::vector<int> exponents) : exp_(std::move(exponents)) {
  if (exp_.size() > static_cast<std::size_t>(kMaxVars))
    throw input_error("monomials support at most " + std::to_string(kMaxVars) + " variables");
  for (std::size_t i = 0; i < exp_.size(); ++i) {
    if (exp_[i] < 0 || exp_[i] > 255) throw input_error("monomial exponent out of range [0, 255]");
    degree_ += exp_[i];
    key_ |= static_cast<std::uint64_t>(exp_[i]) << (8 * i);
  }
}

Monomial Monomial::operator*(const Monomial& o) const {
  if (o.n_vars() != n_vars()) throw input_error("monomial variable count mismatch");
  std::vector<int> e(exp_);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += o.exp_[i];
  return Monomial(std::move(e));
}

bool Monomial::grlex_greater(const Monomial& o) const {
  if (degree_ != o.degree_) return degree_ > o.degree_;
  for (std::size_t i = 0; i < exp_.size(); ++i)
    if (exp_[i] != o.exp_[i]) return exp_[i] > o.exp_[i];
  return false;
}

namespace {

void enumerate(int var, int remaining, std::vector<int>& cur, std::vector<Monomial>& out) {
  const int n = static_cast<int>(cur.size());
  if (var == n - 1) {
    cur[var] = remaining;
    out.emplace_back(cur);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    cur[var] = e;
    enumerate(var + 1, remaining - e, cur, out);
  }
  cur[var] = 0;
}

}  // namespace

GradedPieceBasis::GradedPieceBasis(int n_vars, int degree) : n_vars_(n_vars), degree_(degree) {
  if (n_vars < 1 || n_vars > Monomial::kMaxVars)
    throw input_error("number of variables must lie in [1, " + std::to_string(Monomial::kMaxVars) +
                      "]");
  if (degree < 0) return;
  std::vector<int> cur(static_cast<std::size_t>(n_vars), 0);
  enumerate(0, degree, cur, monomials_);
  index_.reserve(monomials_.size());
  for (std::size_t i = 0; i < monomials_.size(); ++i)
    index_.emplace(monomials_[i].key(), static_cast<std::uint32_t>(i));
}

std::int64_t GradedPieceBasis::find(std::uint64_t key) const {
  auto it = index_.find(key);
  return it == index_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

std::shared_ptr<const GradedPieceBasis> monomial_basis(int n_vars, int degree) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const GradedPieceBasis>> memo;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = memo[{n_vars, degree}];
  if (!slot) slot = std::make_shared<const GradedPieceBasis>(n_vars, degree);
  return slot;
}

Polynomial::Polynomial(int n_vars, std::vector<std::pair<Monomial, std::int64_t>> terms)
    : n_vars_(n_vars) {
  std::map<std::uint64_t, std::pair<Monomial, std::int64_t>> merged;
  bool first = true;
  for (auto& [m, c] : terms) {
    if (m.n_vars() != n_vars) throw input_error("polynomial term has the wrong number of variables");
    if (first) {
      degree_ = m.degree();
      first = false;
    } else if (m.degree() != degree_) {
      throw input_error("polynomial is not homogeneous");
    }
    auto [it, inserted] = merged.try_emplace(m.key(), m, c);
    if (!inserted) it->second.second += c;
  }
  for (auto& [k, mc] : merged)
    if (mc.second != 0) terms_.push_back(std::move(mc));
  // Descending grlex, matching basis order.
  std::sort(terms_.begin(), terms_.end(),
            [](const auto& a, const auto& b) { return a.first.grlex_greater(b.first); });
}

Polynomial Polynomial::variable(int n_vars, int i) {
  std::vector<int> e(static_cast<std::size_t>(n_vars), 0);
  e.at(static_cast<std::size_t>(i)) = 1;
  return Polynomial(n_vars, {{Monomial(e), 1}});
}

Polynomial Polynomial::random_form(int n_vars, int degree, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto basis = monomial_basis(n_vars, degree);
  std::vector<std::pair<Monomial, std::int64_t>> terms;
  terms.reserve(basis->size());
  for (const auto& m : basis->monomials())
    terms.emplace_back(m, static_cast<std::int64_t>(1 + rng() % 32002));
  return Polynomial(n_vars, std::move(terms));
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (o.n_vars_ != n_vars_) throw input_error("polynomial variable count mismatch");
  std::vector<std::pair<Monomial, std::int64_t>> terms;
  for (const auto& [a, ca] : terms_)
    for (const auto& [b, cb] : o.terms_) terms.emplace_back(a * b, ca * cb);
  return Polynomial(n_vars_, std::move(terms));
}

SparseVector Polynomial::reduce(const GradedPieceBasis& basis, const PrimeField& f) const {
  std::vector<std::pair<std::uint32_t, fe_t>> acc;
  acc.reserve(terms_.size());
  for (const auto& [m, c] : terms_) {
    auto i = basis.find(m);
    if (i < 0) throw input_error("polynomial term outside the target graded piece");
    acc.emplace_back(static_cast<std::uint32_t>(i), f.from_int(c));
  }
  return make_sparse(std::move(acc), f);
}

namespace {

std::vector<SparseVector> ideal_columns(const std::vector<Polynomial>& gens, int n_vars, int degree,
                                        const PrimeField& f) {
  std::vector<SparseVector> cols;
  if (degree < 0) return cols;
  auto target = monomial_basis(n_vars, degree);
  for (const auto& g : gens) {
    if (g.n_vars() != n_vars) throw input_error("generator lives in a different polynomial ring");
    if (g.is_zero() || g.degree() > degree) continue;
    auto mult = monomial_basis(n_vars, degree - g.degree());
    for (const auto& m : mult->monomials()) {
      std::vector<std::pair<std::uint32_t, fe_t>> acc;
      acc.reserve(g.terms().size());
      for (const auto& [gm, c] : g.terms())
        acc.emplace_back(static_cast<std::uint32_t>(target->find(m.key() + gm.key())),
                         f.from_int(c));
      cols.push_back(make_sparse(std::move(acc), f));
    }
  }
  return cols;
}

}  // namespace

SparseMatrix ideal_piece(const std::vector<Polynomial>& gens, int n_vars, int degree,
                         const PrimeField& f) {
  auto cols = ideal_columns(gens, n_vars, degree, f);
  std::size_t rows = degree < 0 ? 0 : monomial_basis(n_vars, degree)->size();
  std::erase_if(cols, [](const SparseVector& v) { return v.empty(); });
  return SparseMatrix::from_columns(f, rows, std::move(cols));
}

QuotientPiece::QuotientPiece(std::vector<Polynomial> gens, int n_vars, int degree,
                             const PrimeField& f)
    : gens_(std::move(gens)), n_vars_(n_vars), degree_(degree), field_(f),
      ambient_(monomial_basis(n_vars, degree)) {
  const std::size_t width = ambient_->size();
  ReducedEchelon e = reduced_row_echelon(ideal_columns(gens_, n_vars, degree, f), width, f);
  slot_.assign(width, -1);
  std::vector<char> pivot(width, 0);
  for (auto c : e.pivots) pivot[c] = 1;
  for (std::uint32_t i = 0; i < width; ++i)
    if (!pivot[i]) {
      slot_[i] = static_cast<std::int64_t>(standard_.size());
      standard_.push_back(i);
    }
  reducer_.resize(width);
  for (std::size_t k = 0; k < e.rows.size(); ++k) {
    const auto& row = e.rows[k];
    SparseVector nf;
    for (std::size_t t = 1; t < row.size(); ++t)
      nf.push(static_cast<std::uint32_t>(slot_[row.index[t]]), f.neg(row.value[t]));
    reducer_[e.pivots[k]] = std::move(nf);
  }
}

SparseVector QuotientPiece::project_monomial(std::uint32_t ambient_index) const {
  if (ambient_index >= slot_.size()) throw input_error("monomial index outside the graded piece");
  if (slot_[ambient_index] >= 0) {
    SparseVector v;
    v.push(static_cast<std::uint32_t>(slot_[ambient_index]), 1);
    return v;
  }
  return reducer_[ambient_index];
}

SparseVector QuotientPiece::project(const SparseVector& x) const {
  std::vector<std::pair<std::uint32_t, fe_t>> acc;
  for (std::size_t k = 0; k < x.size(); ++k) {
    std::uint32_t i = x.index[k];
    if (i >= slot_.size()) throw input_error("vector index outside the graded piece");
    if (slot_[i] >= 0) {
      acc.emplace_back(static_cast<std::uint32_t>(slot_[i]), x.value[k]);
    } else {
      const auto& nf = reducer_[i];
      for (std::size_t t = 0; t < nf.size(); ++t)
        acc.emplace_back(nf.index[t], field_.mul(nf.value[t], x.value[k]));
    }
  }
  return make_sparse(std::move(acc), field_);
}

SparseVector QuotientPiece::lift(const SparseVector& q) const {
  SparseVector out;
  out.index.reserve(q.size());
  out.value.reserve(q.size());
  for (std::size_t k = 0; k < q.size(); ++k) {
    if (q.index[k] >= standard_.size()) throw input_error("quotient index out of range");
    out.push(standard_[q.index[k]], q.value[k]);
  }
  return out;  // standard_ ascends, so the indices stay sorted
}

SparseMatrix QuotientPiece::projection_matrix() const {
  std::vector<SparseVector> cols(ambient_->size());
  for (std::uint32_t i = 0; i < cols.size(); ++i) cols[i] = project_monomial(i);
  return SparseMatrix::from_columns(field_, dim(), std::move(cols));
}

SparseVector multiply_ambient(const GradedPieceBasis& a, const SparseVector& x,
                              const GradedPieceBasis& b, const SparseVector& y,
                              const GradedPieceBasis& target, const PrimeField& f) {
  std::vector<std::pair<std::uint32_t, fe_t>> acc;
  acc.reserve(x.size() * y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const std::uint64_t ka = a[x.index[i]].key();
    for (std::size_t j = 0; j < y.size(); ++j) {
      auto t = target.find(ka + b[y.index[j]].key());
      acc.emplace_back(static_cast<std::uint32_t>(t), f.mul(x.value[i], y.value[j]));
    }
  }
  return make_sparse(std::move(acc), f);
}

SparseVector multiply(const QuotientPiece& a, const SparseVector& x, const QuotientPiece& b,
                      const SparseVector& y, const QuotientPiece& target) {
  if (target.degree() != a.degree() + b.degree())
    throw input_error("target degree does not match the product degree");
  SparseVector prod = multiply_ambient(a.ambient(), a.lift(x), b.ambient(), b.lift(y),
                                       target.ambient(), target.field());
  return target.project(prod);
}

std::vector<SparseMatrix> multiplication_tensor(const QuotientPiece& a, const QuotientPiece& b,
                                                const QuotientPiece& target) {
  if (!a.same_ideal(b) || !a.same_ideal(target))
    throw input_error("multiplication tensor requires pieces of one quotient ring");
  if (target.degree() != a.degree() + b.degree())
    throw input_error("target degree does not match the product degree");
  std::vector<SparseMatrix> out;
  out.reserve(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const std::uint64_t ka = a.ambient()[a.standard()[i]].key();
    std::vector<SparseVector> cols(b.dim());
    for (std::size_t j = 0; j < b.dim(); ++j) {
      auto t = target.ambient().find(ka + b.ambient()[b.standard()[j]].key());
      cols[j] = target.project_monomial(static_cast<std::uint32_t>(t));
    }
    out.push_back(SparseMatrix::from_columns(target.field(), target.dim(), std::move(cols)));
  }
  return out;
}

}  // namespace koszul
