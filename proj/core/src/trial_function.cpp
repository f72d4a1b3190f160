#include "hsfrac/trial_function.hpp"

#include <cmath>
#include <sstream>

#include "hsfrac/error.hpp"

namespace hsfrac {

TrialFunction::TrialFunction(Grid grid, std::vector<double> values) : grid_(grid) {
  if (values.size() != grid_.size()) throw DomainError("value count does not match grid");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) throw DomainError("trial function value is not finite");
    if (values[i] != 0.0 && grid_.on_boundary(grid_.multi(i))) {
      std::ostringstream os;
      os << "trial function is nonzero on boundary node " << i;
      throw DomainError(os.str());
    }
  }
  values_ = std::make_shared<const std::vector<double>>(std::move(values));
}

TrialFunction TrialFunction::zero(const Grid& grid) {
  return TrialFunction(grid, std::vector<double>(grid.size(), 0.0));
}

TrialFunction TrialFunction::sample(const Grid& grid,
                                    const std::function<double(const Point&)>& f) {
  std::vector<double> v(grid.size(), 0.0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!grid.on_boundary(grid.multi(i))) v[i] = f(grid.point(i));
  }
  return TrialFunction(grid, std::move(v));
}

bool TrialFunction::is_zero() const {
  for (double x : *values_) {
    if (x != 0.0) return false;
  }
  return true;
}

double TrialFunction::max_abs() const {
  double m = 0.0;
  for (double x : *values_) m = std::max(m, std::abs(x));
  return m;
}

TrialFunction TrialFunction::scaled(double alpha) const {
  std::vector<double> v(*values_);
  for (double& x : v) x *= alpha;
  return TrialFunction(grid_, std::move(v));
}

TrialFunction TrialFunction::times(const TrialFunction& other) const {
  require_same_grid(*this, other);
  std::vector<double> v(*values_);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] *= other[i];
  return TrialFunction(grid_, std::move(v));
}

TrialFunction operator+(const TrialFunction& a, const TrialFunction& b) {
  require_same_grid(a, b);
  std::vector<double> v(a.values().begin(), a.values().end());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += b[i];
  return TrialFunction(a.grid(), std::move(v));
}

TrialFunction operator-(const TrialFunction& a, const TrialFunction& b) {
  require_same_grid(a, b);
  std::vector<double> v(a.values().begin(), a.values().end());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] -= b[i];
  return TrialFunction(a.grid(), std::move(v));
}

void require_same_grid(const TrialFunction& a, const TrialFunction& b) {
  if (!(a.grid() == b.grid())) throw DomainError("trial functions live on different grids");
}

}  // namespace hsfrac
