#pragma once

#include <map>
#include <string>

#include "qsync/coherent.hpp"
#include "qsync/lindblad.hpp"

namespace qsync {

/// Driven-dissipative spin-1 system in the rotating frame of the drive:
/// H = detuning * Sz + drive * Sy, with gain through S+ Sz at gain_rate and
/// damping through S- Sz at damp_rate.
LindbladModel spin1_model(double detuning, double drive, double gain_rate,
                          double damp_rate);

/// Equally spaced four-level system (levels ordered 3/2, 1/2, -1/2, -3/2):
/// H = detuning * Sz + linear_drive * Sx + quadratic_drive * Sx^2, with the
/// four single-transition dissipators
///   pump1   |3><4|,  pump2   |1><3|,  damp1   |2><1|,  damp2   |4><2|.
LindbladModel spin32_model(double detuning, double linear_drive,
                           double quadratic_drive, double pump1, double pump2,
                           double damp1, double damp2);

/// Three-level system driven on the upper pair and coupled to hot and cold
/// thermal baths on the extremal and lower pairs:
/// H = detuning * |3><3| + drive * (|2><3| + |3><2|),
/// hot bath  hot_rate  * {(n_hot+1) D[|1><3|]  + n_hot  D[|3><1|]},
/// cold bath cold_rate * {(n_cold+1) D[|1><2|] + n_cold D[|2><1|]}.
LindbladModel su3_thermal_model(double detuning, double drive, double hot_rate,
                                double cold_rate, double n_hot, double n_cold);

/// Builds one of the named case-study models ("spin1", "spin32", "su3") from
/// named parameters; unknown model ids or parameter names are rejected and
/// missing parameters default to zero.
LindbladModel build_named_model(const std::string& id,
                                const std::map<std::string, double>& params);

/// Hilbert-space dimension of a named model.
int named_model_dim(const std::string& id);

/// Parameter names accepted by a named model.
const std::vector<std::string>& named_model_params(const std::string& id);

/// Coherent family by id: "spin" (any dim >= 2) or "su3" (dim 3).
CoherentFamily family_by_id(const std::string& id, int dim);

}  // namespace qsync
