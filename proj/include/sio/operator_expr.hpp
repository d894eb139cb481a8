#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "sio/pc_symbol.hpp"
#include "sio/types.hpp"

namespace sio {

/// Expression tree over the generators of alg(S, PC): leaves S, aI, scalars,
/// the identity and compact perturbations, combined by sums and ordered
/// products.
class OperatorExpr {
 public:
  enum class Kind { S, Coef, Scalar, Identity, CompactZero, Sum, Product };

  static OperatorExpr singular() { return OperatorExpr(Kind::S); }
  static OperatorExpr identity() { return OperatorExpr(Kind::Identity); }
  static OperatorExpr compact_zero() { return OperatorExpr(Kind::CompactZero); }

  static OperatorExpr scalar(Complex c) {
    OperatorExpr e(Kind::Scalar);
    e.scalar_ = c;
    return e;
  }

  static OperatorExpr coef(std::shared_ptr<const PcSymbol> a) {
    require(a != nullptr, "OperatorExpr: null coefficient");
    OperatorExpr e(Kind::Coef);
    e.coef_ = std::move(a);
    return e;
  }
  static OperatorExpr coef(PcSymbol a) {
    return coef(std::make_shared<const PcSymbol>(std::move(a)));
  }

  static OperatorExpr sum(std::vector<OperatorExpr> children) {
    require(!children.empty(), "OperatorExpr: empty sum");
    OperatorExpr e(Kind::Sum);
    e.children_ = std::move(children);
    return e;
  }
  static OperatorExpr product(std::vector<OperatorExpr> children) {
    require(!children.empty(), "OperatorExpr: empty product");
    OperatorExpr e(Kind::Product);
    e.children_ = std::move(children);
    return e;
  }

  /// P = (I + S)/2.
  static OperatorExpr P() {
    return product({scalar(Complex(0.5)), sum({identity(), singular()})});
  }
  /// Q = (I - S)/2.
  static OperatorExpr Q() {
    return product({scalar(Complex(0.5)),
                    sum({identity(), product({scalar(Complex(-1.0)), singular()})})});
  }
  /// The operator aP + Q in canonical form.
  static OperatorExpr a_P_plus_Q(std::shared_ptr<const PcSymbol> a) {
    return sum({product({coef(std::move(a)), P()}), Q()});
  }
  static OperatorExpr a_P_plus_Q(PcSymbol a) {
    return a_P_plus_Q(std::make_shared<const PcSymbol>(std::move(a)));
  }

  Kind kind() const { return kind_; }
  Complex scalar_value() const { return scalar_; }
  const std::shared_ptr<const PcSymbol>& coef_symbol() const { return coef_; }
  const std::vector<OperatorExpr>& children() const { return children_; }

  /// Coefficient dimension N shared by all Coef leaves (1 when none).
  int dimension() const {
    int n = 0;
    collect_dimension(n);
    return n == 0 ? 1 : n;
  }

  void collect_coefs(std::vector<const PcSymbol*>& out) const {
    if (kind_ == Kind::Coef) out.push_back(coef_.get());
    for (const auto& c : children_) c.collect_coefs(out);
  }

  bool structurally_equal(const OperatorExpr& o) const {
    if (kind_ != o.kind_) return false;
    switch (kind_) {
      case Kind::Scalar:
        return scalar_ == o.scalar_;
      case Kind::Coef:
        return coef_ == o.coef_;  // same shared symbol object
      case Kind::Sum:
      case Kind::Product: {
        if (children_.size() != o.children_.size()) return false;
        for (std::size_t i = 0; i < children_.size(); ++i)
          if (!children_[i].structurally_equal(o.children_[i])) return false;
        return true;
      }
      default:
        return true;
    }
  }

  /// Recognizes the canonical sum({product({coef(a), P()}), Q()}) tree and
  /// returns the coefficient, or null when the tree has a different shape.
  std::shared_ptr<const PcSymbol> match_a_P_plus_Q() const {
    if (kind_ != Kind::Sum || children_.size() != 2) return nullptr;
    for (int which = 0; which < 2; ++which) {
      const OperatorExpr& ap = children_[static_cast<std::size_t>(which)];
      const OperatorExpr& q = children_[static_cast<std::size_t>(1 - which)];
      if (!q.structurally_equal(Q())) continue;
      if (ap.kind_ != Kind::Product || ap.children_.size() != 2) continue;
      if (ap.children_[0].kind_ != Kind::Coef) continue;
      if (!ap.children_[1].structurally_equal(P())) continue;
      return ap.children_[0].coef_;
    }
    return nullptr;
  }

 private:
  explicit OperatorExpr(Kind k) : kind_(k) {}

  void collect_dimension(int& n) const {
    if (kind_ == Kind::Coef) {
      if (n == 0) n = coef_->dimension();
      require(n == coef_->dimension(),
              "OperatorExpr: coefficient dimensions differ");
    }
    for (const auto& c : children_) c.collect_dimension(n);
  }

  Kind kind_;
  Complex scalar_{0.0};
  std::shared_ptr<const PcSymbol> coef_;
  std::vector<OperatorExpr> children_;
};

}  // namespace sio
