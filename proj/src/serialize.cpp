#include "fockeig/serialize.hpp"

#include <stdexcept>

namespace fockeig {

template <int Modes>
nlohmann::json state_to_json(const State<Modes>& v) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) coeffs.push_back({v[i].real(), v[i].imag()});
  return {{"dim", v.trunc().dim()}, {"modes", Modes}, {"coeffs", std::move(coeffs)}};
}

int json_modes(const nlohmann::json& j) {
  const int modes = j.at("modes").get<int>();
  if (modes != 1 && modes != 2) throw std::invalid_argument("state json: modes must be 1 or 2");
  return modes;
}

template <int Modes>
State<Modes> state_from_json(const nlohmann::json& j, int guard) {
  if (json_modes(j) != Modes) throw std::invalid_argument("state json: unexpected mode count");
  const TruncationSpec trunc(j.at("dim").get<int>(), guard);
  const auto& coeffs = j.at("coeffs");
  if (!coeffs.is_array() || static_cast<Eigen::Index>(coeffs.size()) != State<Modes>::space_size(trunc)) {
    throw std::invalid_argument("state json: coefficient count does not match dim");
  }
  ComplexVector c(static_cast<Eigen::Index>(coeffs.size()));
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const auto& pair = coeffs[i];
    if (!pair.is_array() || pair.size() != 2) throw std::invalid_argument("state json: coefficient must be [re, im]");
    c[static_cast<Eigen::Index>(i)] = Complex(pair[0].get<double>(), pair[1].get<double>());
  }
  return State<Modes>(trunc, std::move(c));
}

template nlohmann::json state_to_json<1>(const State<1>&);
template nlohmann::json state_to_json<2>(const State<2>&);
template State<1> state_from_json<1>(const nlohmann::json&, int);
template State<2> state_from_json<2>(const nlohmann::json&, int);

}  // namespace fockeig
