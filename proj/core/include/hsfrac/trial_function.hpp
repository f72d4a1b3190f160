#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "hsfrac/grid.hpp"

namespace hsfrac {

// Real samples on a Grid that vanish exactly on every box-boundary node.
// Immutable; copies share storage.
class TrialFunction {
 public:
  // Throws DomainError if sizes mismatch, a value is not finite, or a
  // boundary value is nonzero.
  TrialFunction(Grid grid, std::vector<double> values);

  static TrialFunction zero(const Grid& grid);
  // Evaluates f at every interior node; boundary nodes are set to 0.
  static TrialFunction sample(const Grid& grid, const std::function<double(const Point&)>& f);

  const Grid& grid() const { return grid_; }
  std::span<const double> values() const { return *values_; }
  double operator[](std::size_t i) const { return (*values_)[i]; }
  std::size_t size() const { return values_->size(); }
  bool is_zero() const;
  double max_abs() const;

  TrialFunction scaled(double alpha) const;
  TrialFunction times(const TrialFunction& other) const;

  friend TrialFunction operator+(const TrialFunction& a, const TrialFunction& b);
  friend TrialFunction operator-(const TrialFunction& a, const TrialFunction& b);

 private:
  Grid grid_;
  std::shared_ptr<const std::vector<double>> values_;
};

void require_same_grid(const TrialFunction& a, const TrialFunction& b);

}  // namespace hsfrac
