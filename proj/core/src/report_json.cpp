#include <vector>

#include "hsfrac/optimizer.hpp"
#include "json.hpp"

namespace hsfrac {

std::string to_json(const MinimizerReport& r, bool include_trace) {
  using nlohmann::ordered_json;
  const Grid& g = r.final_field.grid();
  const WindowProfile& w = r.window_profile;
  ordered_json j;
  j["spec"] = {{"n", r.spec.n},
               {"s", r.spec.s},
               {"p", r.spec.p},
               {"b", r.spec.b},
               {"lambda", r.spec.lambda}};
  j["grid"] = {{"domain", to_string(g.domain())},
               {"h", g.h()},
               {"m", std::vector<int>(g.extents().begin(), g.extents().begin() + g.n())},
               {"x1_range", {g.lo(0), g.hi(0)}}};
  j["options"] = {{"max_iters", r.options.max_iters},
                  {"tol", r.options.tol},
                  {"armijo", r.options.armijo},
                  {"max_halvings", r.options.max_halvings},
                  {"padding", r.options.padding},
                  {"precondition", r.options.precondition},
                  {"initial_step", r.options.initial_step},
                  {"max_step", r.options.max_step}};
  j["termination"] = to_string(r.termination);
  j["iterations"] = r.iterations;
  j["best_quotient"] = r.best_quotient;
  j["euler_lagrange_residual"] = r.euler_lagrange_residual;
  j["window_profile"] = {{"normalization", w.normalization},
                         {"dominance", w.dominance},
                         {"dominant_window", w.dominant_window},
                         {"peak", std::vector<double>(w.peak.begin(), w.peak.begin() + g.n())},
                         {"half_mass_radius", w.half_mass_radius},
                         {"centroid_x1", w.centroid_x1},
                         {"masses", w.masses}};
  if (include_trace) j["quotient_trace"] = r.quotient_trace;
  return j.dump(2);
}

}  // namespace hsfrac
