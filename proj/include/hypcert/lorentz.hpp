#pragma once

// Diagonal quadratic forms of signature (n,1) and the hyperplanes v^perp they
// cut out of the f-hyperboloid.

#include "hypcert/quadratic_field.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hypcert {

using Vector = std::vector<QuadElem>;

/// f = a_0 x_0^2 + ... + a_n x_n^2 with exactly one negative coefficient at
/// the identity embedding.
class LorentzForm {
 public:
  LorentzForm(Field field, std::vector<QuadElem> coefficients) : field_(field), coeffs_(std::move(coefficients)) {
    if (coeffs_.size() < 3) throw std::invalid_argument("LorentzForm needs n >= 2 (at least 3 coefficients)");
    int negative = 0;
    for (const auto& c : coeffs_) {
      if (c.field() != field_) throw std::invalid_argument("LorentzForm coefficient outside " + field_.label());
      const int s = sign(c);
      if (s == 0) throw std::invalid_argument("LorentzForm coefficient is zero");
      if (s < 0) ++negative;
    }
    if (negative != 1) throw std::invalid_argument("LorentzForm must have signature (n,1) at the identity embedding");
  }

  /// -x_0^2 + x_1^2 + ... + x_n^2 over Q.
  static LorentzForm standard(int n) {
    if (n < 2) throw std::invalid_argument("standard form needs n >= 2");
    std::vector<QuadElem> c(static_cast<std::size_t>(n) + 1, QuadElem::rational(1));
    c[0] = QuadElem::rational(-1);
    return {Field::rational(), std::move(c)};
  }

  /// -sqrt(d) x_0^2 + x_1^2 + ... + x_n^2 over Q(sqrt d).
  static LorentzForm sqrt_weighted(Field f, int n) {
    if (n < 2) throw std::invalid_argument("form needs n >= 2");
    std::vector<QuadElem> c(static_cast<std::size_t>(n) + 1, QuadElem(f, 1));
    c[0] = -sqrt_d(f);
    return {f, std::move(c)};
  }

  Field field() const { return field_; }
  int n() const { return static_cast<int>(coeffs_.size()) - 1; }
  std::size_t dimension() const { return coeffs_.size(); }
  const std::vector<QuadElem>& coefficients() const { return coeffs_; }

  QuadElem zero() const { return QuadElem(field_); }

  friend bool operator==(const LorentzForm&, const LorentzForm&) = default;

 private:
  Field field_;
  std::vector<QuadElem> coeffs_;
};

namespace detail {
inline void check_vector(const LorentzForm& f, std::span<const QuadElem> v) {
  if (v.size() != f.dimension()) {
    throw std::invalid_argument("dimension mismatch: form has " + std::to_string(f.dimension()) + " variables, vector has " +
                                std::to_string(v.size()));
  }
}
}  // namespace detail

/// sum a_i v_i^2
inline QuadElem form_eval(const LorentzForm& f, std::span<const QuadElem> v) {
  detail::check_vector(f, v);
  QuadElem acc = f.zero();
  for (std::size_t i = 0; i < v.size(); ++i) acc += f.coefficients()[i] * v[i] * v[i];
  return acc;
}

/// sum a_i v_i w_i, the polarization of the diagonal form.
inline QuadElem inner_product(const LorentzForm& f, std::span<const QuadElem> v, std::span<const QuadElem> w) {
  detail::check_vector(f, v);
  detail::check_vector(f, w);
  QuadElem acc = f.zero();
  for (std::size_t i = 0; i < v.size(); ++i) acc += f.coefficients()[i] * v[i] * w[i];
  return acc;
}

/// A vector with f(v) > 0; it represents the hyperplane v^perp.
class NormalVector {
 public:
  NormalVector(LorentzForm form, Vector components) : form_(std::move(form)), v_(std::move(components)) {
    norm_ = form_eval(form_, v_);
    if (sign(norm_) <= 0) throw std::invalid_argument("normal vector must satisfy f(v) > 0, got f(v) = " + to_string(norm_));
  }

  const LorentzForm& form() const { return form_; }
  const Vector& components() const { return v_; }
  const QuadElem& operator[](std::size_t i) const { return v_[i]; }
  /// f(v)
  const QuadElem& norm() const { return norm_; }

 private:
  LorentzForm form_;
  Vector v_;
  QuadElem norm_;
};

/// (0, 1, 0, ..., 0) in the form's field: the hyperplane {x_1 = 0}.
inline NormalVector coordinate_normal(const LorentzForm& f, std::size_t axis = 1) {
  Vector v(f.dimension(), f.zero());
  v.at(axis) = QuadElem(f.field(), 1);
  return {f, std::move(v)};
}

enum class PairClass { Incident, AsymptoticallyParallel, Ultraparallel };

inline std::string to_string(PairClass c) {
  switch (c) {
    case PairClass::Incident: return "incident";
    case PairClass::AsymptoticallyParallel: return "asymptotically-parallel";
    case PairClass::Ultraparallel: return "ultraparallel";
  }
  return "?";
}

/// <v1,v2>^2 - f(v1) f(v2); its sign decides the relative position.
inline QuadElem pair_discriminant(const NormalVector& v1, const NormalVector& v2) {
  if (!(v1.form() == v2.form())) throw std::invalid_argument("normal vectors belong to different forms");
  const QuadElem ip = inner_product(v1.form(), v1.components(), v2.components());
  return ip * ip - v1.norm() * v2.norm();
}

/// Ultraparallel iff <v1,v2>^2 > f(v1) f(v2), the convention under which
/// cosh^2 d = <v1,v2>^2 / (f(v1) f(v2)) is >= 1.
inline PairClass classify_pair(const NormalVector& v1, const NormalVector& v2) {
  const int s = sign(pair_discriminant(v1, v2));
  if (s > 0) return PairClass::Ultraparallel;
  if (s == 0) return PairClass::AsymptoticallyParallel;
  return PairClass::Incident;
}

/// <v1,v2>^2 / (f(v1) f(v2)) without a position precondition.
inline QuadElem cosh_sq_ratio(const NormalVector& v1, const NormalVector& v2) {
  if (!(v1.form() == v2.form())) throw std::invalid_argument("normal vectors belong to different forms");
  const QuadElem ip = inner_product(v1.form(), v1.components(), v2.components());
  return ip * ip / (v1.norm() * v2.norm());
}

/// cosh^2 of the distance between two ultraparallel hyperplanes, exactly.
inline QuadElem cosh_sq_distance(const NormalVector& v1, const NormalVector& v2) {
  if (classify_pair(v1, v2) != PairClass::Ultraparallel) {
    throw std::domain_error("cosh_sq_distance: hyperplanes are not ultraparallel");
  }
  return cosh_sq_ratio(v1, v2);
}

// ---------------------------------------------------------------------------

enum class CompactnessKind { NoncompactWitness, CompactByDefiniteness, Unknown };

struct CompactnessVerdict {
  CompactnessKind kind = CompactnessKind::Unknown;
  std::optional<Vector> witness;  // isotropic vector when NoncompactWitness
};

inline constexpr int kDefaultIsotropyBound = 10;

/// Noncompactness of PO_f over K.
///
/// If f^sigma is positive definite at the conjugate embedding then f is
/// anisotropic over K and the quotient is compact.  Otherwise integer vectors
/// of height 1..box_bound are scanned (first coordinate varies fastest, values
/// in the order 0, 1, -1, 2, -2, ...) for an isotropic one.
inline CompactnessVerdict classify_compactness(const LorentzForm& f, int box_bound = kDefaultIsotropyBound) {
  if (!f.field().is_rational()) {
    bool definite = true;
    for (const auto& c : f.coefficients()) definite = definite && sign(c, Embedding::conjugate) > 0;
    if (definite) return {CompactnessKind::CompactByDefiniteness, std::nullopt};
  }
  const std::size_t dim = f.dimension();
  for (int h = 1; h <= box_bound; ++h) {
    const std::size_t width = 2 * static_cast<std::size_t>(h) + 1;
    auto value_at = [](std::size_t idx) -> long long {
      // 0, 1, -1, 2, -2, ...
      const long long m = static_cast<long long>((idx + 1) / 2);
      return idx % 2 == 1 ? m : -m;
    };
    std::vector<std::size_t> odo(dim, 0);
    while (true) {
      long long height = 0;
      std::size_t first_nonzero = dim;
      for (std::size_t i = 0; i < dim; ++i) {
        const long long x = value_at(odo[i]);
        height = std::max(height, x < 0 ? -x : x);
        if (first_nonzero == dim && x != 0) first_nonzero = i;
      }
      // one representative per +-v, and only vectors of exact height h
      if (height == h && value_at(odo[first_nonzero]) > 0) {
        Vector v;
        v.reserve(dim);
        for (std::size_t i = 0; i < dim; ++i) v.emplace_back(f.field(), value_at(odo[i]));
        if (form_eval(f, v).is_zero()) return {CompactnessKind::NoncompactWitness, std::move(v)};
      }
      std::size_t i = 0;
      while (i < dim && ++odo[i] == width) odo[i++] = 0;
      if (i == dim) break;
    }
  }
  return {CompactnessKind::Unknown, std::nullopt};
}

/// Canonical print "field|n|c_0,...,c_n" of the data defining PO_f over K,
/// e.g. "Q|3|-1,1,1,1" or "Q(sqrt5)|4|-sqrt5,1,1,1,1".
inline std::string ambient_group_key(const LorentzForm& f) {
  std::string key = f.field().label() + "|" + std::to_string(f.n()) + "|";
  for (std::size_t i = 0; i < f.dimension(); ++i) {
    if (i) key += ",";
    key += to_string(f.coefficients()[i]);
  }
  return key;
}

inline void to_json(nlohmann::json& j, const LorentzForm& f) {
  j = nlohmann::json{{"field", field_to_json(f.field())}, {"n", f.n()}, {"coefficients", f.coefficients()}};
}

inline LorentzForm form_from_json(const nlohmann::json& j) {
  const Field field = field_from_json(j.at("field"));
  auto coeffs = j.at("coefficients").get<std::vector<QuadElem>>();
  const LorentzForm f(field, std::move(coeffs));
  if (j.at("n").get<int>() != f.n()) throw std::invalid_argument("form: n does not match coefficient count");
  return f;
}

}  // namespace hypcert
