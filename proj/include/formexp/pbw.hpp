#pragma once

#include <map>
#include <memory>
#include <shared_mutex>
#include <span>

#include "formexp/forms.hpp"
#include "formexp/geometry.hpp"
#include "formexp/tensors.hpp"

namespace formexp {

// Formal exponential map of a connection, memoized on basis words s^K.
// The table is safe to share between threads: lookups take a shared lock,
// misses compute outside the lock and the first insert wins.
class PbwContext {
 public:
  explicit PbwContext(Connection connection);
  PbwContext(const PbwContext&) = delete;
  PbwContext& operator=(const PbwContext&) = delete;

  static std::shared_ptr<PbwContext> make(Connection connection) {
    return std::make_shared<PbwContext>(std::move(connection));
  }

  const ChartPtr& chart() const { return conn_.chart(); }
  const Connection& connection() const { return conn_; }

  // pbw(s^K), computed by the averaging recursion.
  const DiffOp& basis(const MultiIndex& k) const;
  std::size_t cached() const;

  // Fill the table for all words up to `max_weight`, level by level.
  void prebuild_serial(int max_weight) const;
  void prebuild_parallel(int max_weight) const;

 private:
  DiffOp compute(const MultiIndex& k) const;
  const DiffOp& store(const MultiIndex& k, DiffOp value) const;

  Connection conn_;
  mutable std::shared_mutex mu_;
  mutable std::map<MultiIndex, DiffOp> table_;
};

DiffOp pbw_map(const PbwContext& ctx, const SymTensor& s);
SymTensor pbw_inv(const PbwContext& ctx, const DiffOp& d);

// The averaging recursion run directly on a word of homogeneous vector fields
// with arbitrary coefficients, without the basis table.
DiffOp pbw_word(const PbwContext& ctx, std::span<const VectorField> word);

SymTensor lightning_nabla(const PbwContext& ctx, const VectorField& x, const SymTensor& s);
// i_X Theta(S) = lightning_X S - X.S - nabla_X S. Needs a torsion-free connection.
SymTensor theta_form(const PbwContext& ctx, const VectorField& x, const SymTensor& s);
// Xi as a one-form valued in fiber vector fields, up to fiber weight Q.
FiberVectorField xi_form(const PbwContext& ctx);

}  // namespace formexp
