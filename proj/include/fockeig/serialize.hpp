// serialize.hpp: the JSON state format shared by the library and the CLI.
//
//   {"dim": int, "modes": 1|2, "coeffs": [[re, im], ...]}
//
// Two-mode coefficients are flattened row-major (n_a major, n_b minor).
// Writers may attach further keys; readers ignore them.

#pragma once

#include "fockeig/fock.hpp"

#include "json.hpp"

namespace fockeig {

template <int Modes>
nlohmann::json state_to_json(const State<Modes>& v);

/// Mode count declared by a serialized state.
int json_modes(const nlohmann::json& j);

/// Parses a serialized state; `guard` is not part of the format.
template <int Modes>
State<Modes> state_from_json(const nlohmann::json& j, int guard = 0);

}  // namespace fockeig
