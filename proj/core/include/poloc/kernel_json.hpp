// JSON kernel specifications:
//   {"family": "causal", "m": 1, "parameters": {"profile": "power", "r": 1.5}}
//   {"family": "lorentz", "parameters": {"profile": "mixture"},
//    "mixture": {"principal": [[l, w], ...], "supplementary": [...], "density_grid": [[l, w], ...]}}
//   {"family": "product", "factors": [spec, spec]}
#pragma once

#include "poloc/kernels.hpp"

namespace poloc {

RadialProfile profile_from_json(const json& j, double m = 1.0);
MixtureSpec mixture_from_json(const json& j);
// throws DomainError on a malformed or non-serializable spec
Kernel kernel_from_json(const json& spec);
inline json kernel_to_json(const Kernel& k) { return k.spec(); }

// Short names used on the command line: nwl, tm, tct, K1.5, g0.5, gP1, gS0.3, ...
Kernel kernel_from_name(const std::string& name, double m = 1.0);

}  // namespace poloc
