#include "hsfrac/quadform.hpp"

#include <cmath>
#include <numbers>

#include "json.hpp"

#include "hsfrac/error.hpp"
#include "hsfrac/lattice.hpp"
#include "hsfrac/numeric.hpp"

namespace hsfrac {
namespace {

std::vector<int> padded_shape(const Grid& g, int factor) {
  std::vector<int> shape;
  for (int a = 0; a < g.n(); ++a) shape.push_back(factor * g.m(a));
  return shape;
}

// Copies box values into the zero-filled padded buffer.
void scatter(const Grid& g, const std::vector<int>& shape, std::span<const double> u,
             std::span<double> buf) {
  std::fill(buf.begin(), buf.end(), 0.0);
  const int p1 = shape.size() > 1 ? shape[1] : 1;
  const int p2 = shape.size() > 2 ? shape[2] : 1;
  const int m2 = g.m(2);
  const int m1 = g.m(1);
  for (int i0 = 0; i0 < g.m(0); ++i0) {
    for (int i1 = 0; i1 < m1; ++i1) {
      const std::size_t src = (static_cast<std::size_t>(i0) * m1 + i1) * m2;
      const std::size_t dst = (static_cast<std::size_t>(i0) * p1 + i1) * p2;
      std::copy_n(u.begin() + static_cast<std::ptrdiff_t>(src), m2,
                  buf.begin() + static_cast<std::ptrdiff_t>(dst));
    }
  }
}

std::vector<double> gather(const Grid& g, const std::vector<int>& shape,
                           std::span<const double> buf, double factor) {
  std::vector<double> out(g.size());
  const int p1 = shape.size() > 1 ? shape[1] : 1;
  const int p2 = shape.size() > 2 ? shape[2] : 1;
  const int m2 = g.m(2);
  const int m1 = g.m(1);
  for (int i0 = 0; i0 < g.m(0); ++i0) {
    for (int i1 = 0; i1 < m1; ++i1) {
      const std::size_t dst = (static_cast<std::size_t>(i0) * m1 + i1) * m2;
      const std::size_t src = (static_cast<std::size_t>(i0) * p1 + i1) * p2;
      for (int i2 = 0; i2 < m2; ++i2) out[dst + i2] = factor * buf[src + i2];
    }
  }
  return out;
}

// Signed frequency index of bin k on an axis of length P.
int signed_bin(int k, int P) { return k <= P / 2 ? k : k - P; }

// Calls f(flat_index, signed bins, multiplicity) over the r2c half spectrum.
template <class F>
void for_each_bin(const std::vector<int>& shape, F&& f) {
  const int rank = static_cast<int>(shape.size());
  const int last = shape.back();
  const int half = last / 2 + 1;
  const int e0 = rank > 1 ? shape[0] : 1;
  const int e1 = rank > 2 ? shape[1] : 1;
  std::size_t idx = 0;
  for (int a = 0; a < e0; ++a) {
    for (int b = 0; b < e1; ++b) {
      for (int k = 0; k < half; ++k, ++idx) {
        std::array<int, 3> bins{0, 0, 0};
        if (rank == 1) {
          bins[0] = k;
        } else if (rank == 2) {
          bins[0] = signed_bin(a, shape[0]);
          bins[1] = k;
        } else {
          bins[0] = signed_bin(a, shape[0]);
          bins[1] = signed_bin(b, shape[1]);
          bins[2] = k;
        }
        const bool self_conjugate = k == 0 || (last % 2 == 0 && k == last / 2);
        f(idx, bins, self_conjugate ? 1.0 : 2.0);
      }
    }
  }
}

void require_order_or_zero(double s) {
  if (!(s >= 0.0 && s < 1.0)) throw DomainError("fractional order must lie in [0,1)");
}

}  // namespace

// ---------------------------------------------------------------- Fourier

FractionalOperator::FractionalOperator(const Grid& grid, double s, int padding)
    : grid_(grid), s_(s), padding_(padding), fft_(padded_shape(grid, padding)) {
  require_order_or_zero(s);
  if (padding < 1) throw DomainError("padding factor must be >= 1");
  const auto& shape = fft_.shape();
  std::vector<double> dxi(shape.size());
  for (std::size_t a = 0; a < shape.size(); ++a) {
    dxi[a] = 2.0 * std::numbers::pi / (shape[a] * grid.h());
  }
  symbol_.assign(fft_.spectrum_size(), 0.0);
  for_each_bin(shape, [&](std::size_t idx, const std::array<int, 3>& bins, double) {
    double r2 = 0.0;
    for (std::size_t a = 0; a < shape.size(); ++a) {
      const double xi = bins[a] * dxi[a];
      r2 += xi * xi;
    }
    symbol_[idx] = std::pow(r2, s_);
  });
}

void FractionalOperator::load(std::span<const double> u) {
  if (u.size() != grid_.size()) throw DomainError("field size does not match operator grid");
  scatter(grid_, fft_.shape(), u, fft_.real());
  fft_.forward();
}

std::vector<double> FractionalOperator::unload_scaled() {
  fft_.backward();
  return gather(grid_, fft_.shape(), fft_.real(), 1.0 / static_cast<double>(fft_.size()));
}

std::vector<double> FractionalOperator::apply(std::span<const double> u) {
  load(u);
  auto spec = fft_.spectrum();
  for (std::size_t k = 0; k < spec.size(); ++k) spec[k] *= symbol_[k];
  return unload_scaled();
}

double FractionalOperator::form(std::span<const double> u) {
  const std::vector<double> au = apply(u);
  return grid_.cell_volume() * ordered_dot(u, au);
}

double FractionalOperator::spectral_form(std::span<const double> u) {
  load(u);
  const auto spec = fft_.spectrum();
  CompensatedSum acc;
  for_each_bin(fft_.shape(), [&](std::size_t idx, const std::array<int, 3>&, double mult) {
    acc.add(mult * symbol_[idx] * std::norm(spec[idx]));
  });
  return grid_.cell_volume() / static_cast<double>(fft_.size()) * acc.value();
}

std::vector<double> FractionalOperator::precondition(std::span<const double> g, double mu) {
  if (!(mu > 0.0)) throw DomainError("preconditioner shift must be positive");
  load(g);
  auto spec = fft_.spectrum();
  for (std::size_t k = 0; k < spec.size(); ++k) spec[k] /= symbol_[k] + mu;
  std::vector<double> out = unload_scaled();
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (grid_.on_boundary(grid_.multi(i))) out[i] = 0.0;
  }
  return out;
}

// ---------------------------------------------------------------- lattice

LatticeOperator::LatticeOperator(const Grid& grid, double s)
    : grid_(grid),
      s_(s),
      scale_(0.5 * gagliardo_constant(grid.n(), s) * std::pow(grid.h(), grid.n() - 2.0 * s)),
      lattice_mass_(lattice::epstein_zeta(grid.n(), grid.n() + 2.0 * s)),
      diag_coeff_(-lattice::epstein_zeta_continued(grid.n(), grid.n() + 2.0 * s - 2.0) / grid.n()),
      conv_shape_(padded_shape(grid, 2)),
      fft_(conv_shape_) {
  const int n = grid.n();
  const double sigma = n + 2.0 * s;
  if (grid.domain() == Domain::half_space) {
    row_half_.assign(static_cast<std::size_t>(grid.m(0)), 0.0);
    for (int i1 = 1; i1 < grid.m(0); ++i1) {
      row_half_[i1] = lattice_mass_ - lattice::layer_tail(n - 1, sigma, i1 + 1) -
                      0.5 * lattice::layer_sum(n - 1, sigma, static_cast<double>(i1));
    }
  }
  // Kernel on the wrapped offsets |d_a| <= m_a - 1 of the doubled box.
  auto buf = fft_.real();
  std::fill(buf.begin(), buf.end(), 0.0);
  const int P0 = conv_shape_[0];
  const int P1 = n > 1 ? conv_shape_[1] : 1;
  const int P2 = n > 2 ? conv_shape_[2] : 1;
  for (int a = 0; a < P0; ++a) {
    const int d0 = signed_bin(a, P0);
    if (std::abs(d0) > grid.m(0) - 1) continue;
    for (int b = 0; b < P1; ++b) {
      const int d1 = n > 1 ? signed_bin(b, P1) : 0;
      if (std::abs(d1) > grid.m(1) - 1) continue;
      for (int c = 0; c < P2; ++c) {
        const int d2 = n > 2 ? signed_bin(c, P2) : 0;
        if (std::abs(d2) > grid.m(2) - 1) continue;
        const double r2 = static_cast<double>(d0) * d0 + static_cast<double>(d1) * d1 +
                          static_cast<double>(d2) * d2;
        if (r2 == 0.0) continue;
        buf[(static_cast<std::size_t>(a) * P1 + b) * P2 + c] = std::pow(r2, -0.5 * sigma);
      }
    }
  }
  fft_.forward();
  const auto spec = fft_.spectrum();
  kernel_hat_.resize(spec.size());
  // K is real and even, so its transform is real.
  for (std::size_t k = 0; k < spec.size(); ++k) kernel_hat_[k] = spec[k].real();
}

double LatticeOperator::half_space_mass(int i1) const {
  if (row_half_.empty()) throw DomainError("half-space mass needs a half-space grid");
  if (i1 < 1 || i1 >= grid_.m(0)) throw DomainError("height index out of range");
  return row_half_[static_cast<std::size_t>(i1)];
}

std::vector<double> LatticeOperator::convolve(std::span<const double> v) {
  if (v.size() != grid_.size()) throw DomainError("field size does not match operator grid");
  scatter(grid_, conv_shape_, v, fft_.real());
  fft_.forward();
  auto spec = fft_.spectrum();
  for (std::size_t k = 0; k < spec.size(); ++k) spec[k] *= kernel_hat_[k];
  fft_.backward();
  return gather(grid_, conv_shape_, fft_.real(), 1.0 / static_cast<double>(fft_.size()));
}

const std::vector<double>& LatticeOperator::box_mass() {
  if (box_mass_.empty()) box_mass_ = convolve(std::vector<double>(grid_.size(), 1.0));
  return box_mass_;
}

double difference_product(const Grid& grid, std::span<const double> u, std::span<const double> v) {
  const int n = grid.n();
  CompensatedSum acc;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Index3 k = grid.multi(i);
    double dot = 0.0;
    for (int a = 0; a < n; ++a) {
      Index3 lo = k;
      Index3 hi = k;
      lo[a] -= 1;
      hi[a] += 1;
      const bool has_lo = lo[a] >= 0;
      const bool has_hi = hi[a] < grid.m(a);
      const double du = 0.5 * ((has_hi ? u[grid.index(hi)] : 0.0) - (has_lo ? u[grid.index(lo)] : 0.0));
      const double dv = 0.5 * ((has_hi ? v[grid.index(hi)] : 0.0) - (has_lo ? v[grid.index(lo)] : 0.0));
      dot += du * dv;
    }
    acc.add(dot);
  }
  return acc.value();
}

// ---------------------------------------------------------------- forms

namespace {

void require_form_order(double s) {
  if (!(s > 0.0 && s < 1.0)) throw DomainError("fractional order must lie in (0,1)");
}

void require_dim(const TrialFunction& u, int n) {
  if (u.grid().n() != n) throw DomainError("dimension does not match the field grid");
}

// Lattice bilinear form with per-node self mass `mass`.
double lattice_bilinear(LatticeOperator& op, const TrialFunction& u, const TrialFunction& v,
                        const std::vector<double>* row_mass) {
  const Grid& g = u.grid();
  const bool same = &u == &v || u.values().data() == v.values().data();
  const std::vector<double> ku = op.convolve(u.values());
  const std::vector<double> kv = same ? ku : op.convolve(v.values());
  CompensatedSum diag;
  CompensatedSum cross;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double uv = u[i] * v[i];
    if (uv != 0.0) {
      const double mass = row_mass ? (*row_mass)[static_cast<std::size_t>(g.multi(i)[0])]
                                   : op.lattice_mass();
      diag.add(2.0 * mass * uv);
    }
    cross.add(u[i] * kv[i] + v[i] * ku[i]);
  }
  const double corr = op.diagonal_coefficient() * difference_product(g, u.values(), v.values());
  return op.scale() * (diag.value() - cross.value() + corr);
}

}  // namespace

double fourier_form(const TrialFunction& u, double s, const FormOptions& opt) {
  if (u.is_zero()) return 0.0;
  FractionalOperator op(u.grid(), s, opt.padding);
  return op.spectral_form(u.values());
}

double gagliardo_form(const TrialFunction& u, int n, double s) {
  require_form_order(s);
  require_dim(u, n);
  if (u.is_zero()) return 0.0;
  LatticeOperator op(u.grid(), s);
  return lattice_bilinear(op, u, u, nullptr);
}

double bilinear_form(const TrialFunction& u, const TrialFunction& v, int n, double s) {
  require_form_order(s);
  require_same_grid(u, v);
  require_dim(u, n);
  if (u.is_zero() || v.is_zero()) return 0.0;
  LatticeOperator op(u.grid(), s);
  return lattice_bilinear(op, u, v, nullptr);
}

double regional_form(const TrialFunction& u, int n, double s) {
  require_form_order(s);
  require_dim(u, n);
  if (u.grid().domain() != Domain::half_space) {
    throw DomainError("regional form needs a half-space grid");
  }
  if (u.is_zero()) return 0.0;
  LatticeOperator op(u.grid(), s);
  std::vector<double> rows(static_cast<std::size_t>(u.grid().m(0)), 0.0);
  for (int i1 = 1; i1 < u.grid().m(0); ++i1) rows[i1] = op.half_space_mass(i1);
  return lattice_bilinear(op, u, u, &rows);
}

GagliardoParts gagliardo_parts(const TrialFunction& u, double s) {
  require_form_order(s);
  GagliardoParts parts;
  if (u.is_zero()) return parts;
  const Grid& g = u.grid();
  LatticeOperator op(g, s);
  const std::vector<double> ku = op.convolve(u.values());
  const std::vector<double>& box = op.box_mass();
  CompensatedSum pair;
  CompensatedSum ext;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double u2 = u[i] * u[i];
    pair.add(2.0 * u2 * box[i] - 2.0 * u[i] * ku[i]);
    ext.add(2.0 * u2 * (op.lattice_mass() - box[i]));
  }
  parts.pair = op.scale() * pair.value();
  parts.exterior = op.scale() * ext.value();
  parts.correction =
      op.scale() * op.diagonal_coefficient() * difference_product(g, u.values(), u.values());
  return parts;
}

// ---------------------------------------------------------------- weights

std::vector<double> norm_weights(const Grid& grid, double p, double q) {
  if (!(p >= 1.0)) throw DomainError("norm exponent must be >= 1");
  if (!(q >= 0.0)) throw DomainError("weight exponent must be >= 0");
  const double vol = grid.cell_volume();
  std::vector<double> w(grid.size(), vol);
  if (q == 0.0) return w;
  if (grid.domain() != Domain::half_space) {
    throw DomainError("singular weights need a half-space grid");
  }
  if (!(q < p + 1.0)) throw DomainError("weight exponent not integrable against a linear wall profile");
  const double h = grid.h();
  const double tvol = vol / h;  // transverse cell volume
  for (std::size_t i = 0; i < w.size(); ++i) {
    const int i1 = grid.multi(i)[0];
    if (i1 == 0) {
      w[i] = 0.0;
    } else if (i1 == 1) {
      w[i] = tvol * std::pow(h, 1.0 - q) * (1.0 / (p + 1.0 - q) + 0.5);
    } else {
      w[i] = vol * std::pow(i1 * h, -q);
    }
  }
  return w;
}

std::vector<double> hardy_weights(const Grid& grid, double s) {
  if (grid.domain() != Domain::half_space) throw DomainError("Hardy term needs a half-space grid");
  require_form_order(s);
  return norm_weights(grid, 2.0, 2.0 * s);
}

double hardy_term(const TrialFunction& u, double s) {
  const std::vector<double> w = hardy_weights(u.grid(), s);
  CompensatedSum acc;
  for (std::size_t i = 0; i < w.size(); ++i) acc.add(w[i] * u[i] * u[i]);
  return acc.value();
}

double weighted_norm(const TrialFunction& u, double p, double b) {
  if (!(b >= 0.0)) throw DomainError("weight exponent b must be >= 0");
  const std::vector<double> w = norm_weights(u.grid(), p, p * b);
  CompensatedSum acc;
  for (std::size_t i = 0; i < w.size(); ++i) acc.add(w[i] * std::pow(std::abs(u[i]), p));
  return std::pow(acc.value(), 1.0 / p);
}

// ---------------------------------------------------------------- energy

double energy(const TrialFunction& u, const Params& params, Backend backend,
              const FormOptions& opt) {
  require_dim(u, params.n());
  const double form = backend == Backend::fourier ? fourier_form(u, params.s(), opt)
                                                  : gagliardo_form(u, params.n(), params.s());
  if (params.lambda() == 0.0) return form;
  return form - params.lambda() * hardy_term(u, params.s());
}

EnergyReport energy_report(const TrialFunction& u, const Params& params, const FormOptions& opt) {
  require_dim(u, params.n());
  EnergyReport r;
  r.fourier = fourier_form(u, params.s(), opt);
  r.gagliardo = gagliardo_form(u, params.n(), params.s());
  r.hardy = u.grid().domain() == Domain::half_space ? hardy_term(u, params.s()) : 0.0;
  if (r.hardy == 0.0 && params.lambda() != 0.0 && u.grid().domain() != Domain::half_space) {
    throw DomainError("nonzero coupling needs a half-space grid");
  }
  r.energy_fourier = r.fourier - params.lambda() * r.hardy;
  r.energy_gagliardo = r.gagliardo - params.lambda() * r.hardy;
  return r;
}

CommutatorResult commutator_defect(const TrialFunction& u, const TrialFunction& phi, int n,
                                   double s) {
  require_form_order(s);
  require_same_grid(u, phi);
  require_dim(u, n);
  CommutatorResult r;
  if (u.is_zero()) return r;
  const Grid& g = u.grid();
  LatticeOperator op(g, s);
  const TrialFunction phi_u = u.times(phi);
  const TrialFunction phi2_u = phi_u.times(phi);
  r.defect = lattice_bilinear(op, phi_u, phi_u, nullptr) - lattice_bilinear(op, u, phi2_u, nullptr);

  const std::vector<double> ku = op.convolve(u.values());
  const std::vector<double> kpu = op.convolve(phi_u.values());
  CompensatedSum pair;
  for (std::size_t i = 0; i < g.size(); ++i) {
    pair.add(2.0 * u[i] * phi[i] * (phi[i] * ku[i] - kpu[i]));
  }
  // Near-diagonal cells: u(x)u(y)(phi(x)-phi(y))^2 ~ u^2 |grad phi . z|^2.
  const int dims = g.n();
  CompensatedSum corr;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (u[i] == 0.0) continue;
    const Index3 k = g.multi(i);
    double grad2 = 0.0;
    for (int a = 0; a < dims; ++a) {
      Index3 lo = k;
      Index3 hi = k;
      lo[a] -= 1;
      hi[a] += 1;
      const double d = 0.5 * ((hi[a] < g.m(a) ? phi[g.index(hi)] : 0.0) -
                              (lo[a] >= 0 ? phi[g.index(lo)] : 0.0));
      grad2 += d * d;
    }
    corr.add(u[i] * u[i] * grad2);
  }
  r.b_phi = op.scale() * (pair.value() + op.diagonal_coefficient() * corr.value());
  return r;
}

// ---------------------------------------------------------------- report

FormReport form_report(const TrialFunction& u, double s, const FormOptions& opt) {
  require_form_order(s);
  const Grid& g = u.grid();
  FormReport r{g};
  r.s = s;
  r.padding = opt.padding;
  r.fourier_value = fourier_form(u, s, opt);
  r.parts = gagliardo_parts(u, s);
  r.gagliardo_value = gagliardo_form(u, g.n(), s);
  r.cross_check_defect =
      r.fourier_value > 0.0 ? std::abs(r.fourier_value - r.gagliardo_value) / r.fourier_value : 0.0;
  if (g.domain() == Domain::half_space) {
    r.regional_value = regional_form(u, g.n(), s);
    r.hardy_value = hardy_term(u, s);
    if (r.gagliardo_value > 0.0) {
      r.decomposition_residual =
          std::abs(r.gagliardo_value - *r.regional_value - gamma_constant(s) * *r.hardy_value) /
          r.gagliardo_value;
    } else {
      r.decomposition_residual = 0.0;
    }
  }
  return r;
}

std::string to_json(const FormReport& r) {
  using nlohmann::ordered_json;
  ordered_json grid{{"n", r.grid.n()},
                    {"domain", to_string(r.grid.domain())},
                    {"h", r.grid.h()},
                    {"m", std::vector<int>(r.grid.extents().begin(),
                                           r.grid.extents().begin() + r.grid.n())},
                    {"x1_range", {r.grid.lo(0), r.grid.hi(0)}}};
  ordered_json j;
  j["s"] = r.s;
  j["fourier_value"] = r.fourier_value;
  j["gagliardo_value"] = r.gagliardo_value;
  j["regional_value"] = r.regional_value ? ordered_json(*r.regional_value) : ordered_json(nullptr);
  j["hardy_value"] = r.hardy_value ? ordered_json(*r.hardy_value) : ordered_json(nullptr);
  j["cross_check_defect"] = r.cross_check_defect;
  j["decomposition_residual"] =
      r.decomposition_residual ? ordered_json(*r.decomposition_residual) : ordered_json(nullptr);
  j["gagliardo_parts"] = {{"pair", r.parts.pair},
                          {"exterior", r.parts.exterior},
                          {"correction", r.parts.correction}};
  j["metadata"] = {{"grid", grid},
                   {"padding", r.padding},
                   {"exterior_model", r.exterior_model},
                   {"tolerance", r.tolerance}};
  return j.dump(2);
}

}  // namespace hsfrac
