#pragma once

#include <string>

#include "core/process.hpp"

namespace abw {

// Process JSON object:
//   {"d": int, "T": int, "mean": [dT numbers],
//    "L": [[dT numbers] x dT rows, row-major, upper blocks 0]}
// Validation errors name the offending field and index.
GaussianProcess process_from_json(const std::string& text);
std::string process_to_json(const GaussianProcess& process);

// AR(1) spec JSON object: {"alphas": [T numbers], "sigmas": [T numbers]}.
Ar1Spec ar1_from_json(const std::string& text);

}  // namespace abw
