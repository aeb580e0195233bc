#include "qsync/models.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace qsync {

namespace {

void require_nonnegative(double value, const char* name) {
  if (value < 0.0) {
    throw std::invalid_argument(std::string(name) + " must be nonnegative");
  }
}

double param(const std::map<std::string, double>& params, const std::string& key) {
  const auto it = params.find(key);
  return it == params.end() ? 0.0 : it->second;
}

}  // namespace

LindbladModel spin1_model(double detuning, double drive, double gain_rate,
                          double damp_rate) {
  require_nonnegative(gain_rate, "gain_rate");
  require_nonnegative(damp_rate, "damp_rate");
  const SpinOperators spin = spin_operators(3);
  LindbladModel model;
  model.dim = 3;
  model.hamiltonian = {{spin.sz, detuning, false}, {spin.sy, drive, true}};
  model.dissipators = {{spin.plus * spin.sz, gain_rate},
                       {spin.minus * spin.sz, damp_rate}};
  return model;
}

LindbladModel spin32_model(double detuning, double linear_drive,
                           double quadratic_drive, double pump1, double pump2,
                           double damp1, double damp2) {
  require_nonnegative(pump1, "pump1");
  require_nonnegative(pump2, "pump2");
  require_nonnegative(damp1, "damp1");
  require_nonnegative(damp2, "damp2");
  const SpinOperators spin = spin_operators(4);
  LindbladModel model;
  model.dim = 4;
  model.hamiltonian = {{spin.sz, detuning, false},
                       {spin.sx, linear_drive, true},
                       {spin.sx * spin.sx, quadratic_drive, true}};
  model.dissipators = {{transition_op(4, 3, 4), pump1},
                       {transition_op(4, 1, 3), pump2},
                       {transition_op(4, 2, 1), damp1},
                       {transition_op(4, 4, 2), damp2}};
  return model;
}

LindbladModel su3_thermal_model(double detuning, double drive, double hot_rate,
                                double cold_rate, double n_hot, double n_cold) {
  require_nonnegative(hot_rate, "hot_rate");
  require_nonnegative(cold_rate, "cold_rate");
  require_nonnegative(n_hot, "n_hot");
  require_nonnegative(n_cold, "n_cold");
  LindbladModel model;
  model.dim = 3;
  model.hamiltonian = {
      {transition_op(3, 3, 3), detuning, false},
      {transition_op(3, 2, 3) + transition_op(3, 3, 2), drive, true}};
  model.dissipators = {{transition_op(3, 1, 3), hot_rate * (n_hot + 1.0)},
                       {transition_op(3, 3, 1), hot_rate * n_hot},
                       {transition_op(3, 1, 2), cold_rate * (n_cold + 1.0)},
                       {transition_op(3, 2, 1), cold_rate * n_cold}};
  return model;
}

const std::vector<std::string>& named_model_params(const std::string& id) {
  static const std::map<std::string, std::vector<std::string>> known = {
      {"spin1", {"Delta", "epsilon", "gamma_g", "gamma_d"}},
      {"spin32",
       {"Delta", "epsilon", "g", "gamma1p", "gamma2p", "gamma1d", "gamma2d"}},
      {"su3", {"Delta", "epsilon", "gamma_h", "gamma_c", "n_h", "n_c"}}};
  const auto it = known.find(id);
  if (it == known.end()) {
    throw std::invalid_argument("unknown model id '" + id + "'");
  }
  return it->second;
}

LindbladModel build_named_model(const std::string& id,
                                const std::map<std::string, double>& params) {
  const std::vector<std::string>& names = named_model_params(id);
  for (const auto& [name, value] : params) {
    (void)value;
    if (std::find(names.begin(), names.end(), name) == names.end()) {
      throw std::invalid_argument("model '" + id + "' has no parameter '" + name + "'");
    }
  }
  if (id == "spin1") {
    return spin1_model(param(params, "Delta"), param(params, "epsilon"),
                       param(params, "gamma_g"), param(params, "gamma_d"));
  }
  if (id == "spin32") {
    return spin32_model(param(params, "Delta"), param(params, "epsilon"),
                        param(params, "g"), param(params, "gamma1p"),
                        param(params, "gamma2p"), param(params, "gamma1d"),
                        param(params, "gamma2d"));
  }
  return su3_thermal_model(param(params, "Delta"), param(params, "epsilon"),
                           param(params, "gamma_h"), param(params, "gamma_c"),
                           param(params, "n_h"), param(params, "n_c"));
}

int named_model_dim(const std::string& id) {
  if (id == "spin1" || id == "su3") {
    return 3;
  }
  if (id == "spin32") {
    return 4;
  }
  throw std::invalid_argument("unknown model id '" + id + "'");
}

CoherentFamily family_by_id(const std::string& id, int dim) {
  if (id == "spin") {
    return make_spin_family(dim);
  }
  if (id == "su3") {
    if (dim != 3) {
      throw std::invalid_argument("su3 family requires dim 3, got " +
                                  std::to_string(dim));
    }
    return make_su3_family();
  }
  throw std::invalid_argument("unknown family id '" + id + "'");
}

}  // namespace qsync
