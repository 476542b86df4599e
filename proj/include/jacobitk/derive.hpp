#pragma once

// Derived objects of a structure printed as text lines. Component lines use
// the definition grammar ("pi.xy = -y"); vector and covector summaries read
// "xi = d/dz" and "lambda = -y*dx + dz".

#include <string>
#include <vector>

#include "jacobitk/structure.hpp"

namespace jacobitk {

/// reeb, pi, lambda, sharp, christoffel, D, J, defects.
const std::vector<std::string>& derivable_objects();

/// Throws InputError for an unknown object or one the kind does not provide.
std::vector<std::string> derive_object(const Structure& s, const std::string& object);

std::string format_vector(const VectorField& x);
std::string format_covector(const OneForm& a);

}  // namespace jacobitk
