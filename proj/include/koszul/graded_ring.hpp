#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <unordered_map>
#include <vector>

#include "koszul/sparse_matrix.hpp"

namespace koszul {

/// Exponent vector of a monomial in x_0..x_N. At most 8 variables with
/// exponents below 256, so a monomial packs into one 64-bit key and
/// multiplication is key addition.
class Monomial {
 public:
  static constexpr int kMaxVars = 8;

  Monomial() = default;
  explicit Monomial(std::vector<int> exponents);

  const std::vector<int>& exponents() const { return exp_; }
  int n_vars() const { return static_cast<int>(exp_.size()); }
  int degree() const { return degree_; }
  std::uint64_t key() const { return key_; }

  Monomial operator*(const Monomial& o) const;
  bool operator==(const Monomial& o) const { return exp_ == o.exp_; }
  /// Graded lexicographic comparison with x_0 > x_1 > ...
  bool grlex_greater(const Monomial& o) const;

 private:
  std::vector<int> exp_;
  int degree_ = 0;
  std::uint64_t key_ = 0;
};

/// The monomials of S_k, S = k[x_0..x_N], in descending grlex order.
class GradedPieceBasis {
 public:
  GradedPieceBasis(int n_vars, int degree);

  int n_vars() const { return n_vars_; }
  int degree() const { return degree_; }
  std::size_t size() const { return monomials_.size(); }
  const std::vector<Monomial>& monomials() const { return monomials_; }
  const Monomial& operator[](std::size_t i) const { return monomials_[i]; }
  /// Position of `key` or -1.
  std::int64_t find(std::uint64_t key) const;
  std::int64_t find(const Monomial& m) const { return find(m.key()); }

 private:
  int n_vars_;
  int degree_;
  std::vector<Monomial> monomials_;
  std::unordered_map<std::uint64_t, std::uint32_t> index_;
};

/// Shared, memoised basis of S_k (empty for k < 0).
std::shared_ptr<const GradedPieceBasis> monomial_basis(int n_vars, int degree);

/// Homogeneous polynomial with integer coefficients. Integral coefficients let
/// one construction be reduced modulo several primes.
class Polynomial {
 public:
  Polynomial() = default;
  /// Merges repeated monomials; drops zero coefficients; input_error if the
  /// terms are not homogeneous or use different numbers of variables.
  Polynomial(int n_vars, std::vector<std::pair<Monomial, std::int64_t>> terms);

  static Polynomial variable(int n_vars, int i);
  /// Uniform coefficients in [1, 32002] on every monomial of the given degree,
  /// drawn from mt19937_64 seeded with `seed`.
  static Polynomial random_form(int n_vars, int degree, std::uint64_t seed);

  int n_vars() const { return n_vars_; }
  int degree() const { return degree_; }
  const std::vector<std::pair<Monomial, std::int64_t>>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Polynomial operator*(const Polynomial& o) const;
  bool operator==(const Polynomial& o) const = default;

  /// Coordinates in S_degree over `f`.
  SparseVector reduce(const GradedPieceBasis& basis, const PrimeField& f) const;

 private:
  int n_vars_ = 0;
  int degree_ = 0;
  std::vector<std::pair<Monomial, std::int64_t>> terms_;
};

/// Column span of the degree-k piece of the ideal (gens): columns are the
/// products m * g for monomials m of degree k - deg g.
SparseMatrix ideal_piece(const std::vector<Polynomial>& gens, int n_vars, int degree,
                         const PrimeField& f);

/// A graded piece (S/I)_k together with the canonical projection S_k -> (S/I)_k.
/// The complement of I_k is spanned by the non-pivot monomials of the reduced
/// echelon form of I_k.
class QuotientPiece {
 public:
  QuotientPiece(std::vector<Polynomial> gens, int n_vars, int degree, const PrimeField& f);

  int degree() const { return degree_; }
  int n_vars() const { return n_vars_; }
  const PrimeField& field() const { return field_; }
  const std::vector<Polynomial>& generators() const { return gens_; }
  const GradedPieceBasis& ambient() const { return *ambient_; }
  std::size_t dim() const { return standard_.size(); }
  std::size_t ideal_dim() const { return ambient_->size() - standard_.size(); }

  /// Ambient positions of the quotient basis monomials, ascending.
  std::span<const std::uint32_t> standard() const { return standard_; }

  SparseVector project_monomial(std::uint32_t ambient_index) const;
  SparseVector project(const SparseVector& ambient_vec) const;
  SparseVector lift(const SparseVector& quotient_vec) const;
  /// dim() x dim(S_k) projection matrix.
  SparseMatrix projection_matrix() const;

  bool same_ideal(const QuotientPiece& o) const {
    return gens_ == o.gens_ && n_vars_ == o.n_vars_ && field_ == o.field_;
  }

 private:
  std::vector<Polynomial> gens_;
  int n_vars_;
  int degree_;
  PrimeField field_;
  std::shared_ptr<const GradedPieceBasis> ambient_;
  std::vector<std::uint32_t> standard_;
  std::vector<std::int64_t> slot_;      // ambient index -> quotient index, -1 on pivots
  std::vector<SparseVector> reducer_;   // pivot monomial -> its normal form
};

inline QuotientPiece quotient_piece(const std::vector<Polynomial>& gens, int n_vars, int degree,
                                    const PrimeField& f) {
  return QuotientPiece(gens, n_vars, degree, f);
}

/// Product of two ambient-coordinate vectors of degrees `a.degree()` and `b.degree()`,
/// as ambient coordinates of degree a+b.
SparseVector multiply_ambient(const GradedPieceBasis& a, const SparseVector& x,
                              const GradedPieceBasis& b, const SparseVector& y,
                              const GradedPieceBasis& target, const PrimeField& f);

/// Product x*y of quotient elements, computed in S and projected into `target`.
SparseVector multiply(const QuotientPiece& a, const SparseVector& x, const QuotientPiece& b,
                      const SparseVector& y, const QuotientPiece& target);

/// For every basis element v of `a`: the matrix of m -> v*m from `b` into `target`
/// (target.dim() x b.dim()). All three pieces must share one ideal.
std::vector<SparseMatrix> multiplication_tensor(const QuotientPiece& a, const QuotientPiece& b,
                                                const QuotientPiece& target);

}  // namespace koszul
