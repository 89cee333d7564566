#pragma once

#include <string>
#include <vector>

#include "cli_support.hpp"

namespace polywitt::cli {

/// cex | a4 | units | formula | psi | dwork. Each scenario recomputes its
/// values and compares them with the fixtures; a mismatch yields status fail.
/// Throws AlgebraError(UnknownScenario) for other names.
Report replay(const std::string& name, std::size_t samples, std::uint64_t seed);

const std::vector<std::string>& replay_names();

/// The norm N_{A3}^{A4} against W_2 at p: N(p+1), its reduction mod p, the
/// p-congruence at (a, c) = (0, 1), the absence of intermediate subgroups and
/// the lift of (1, 1). At the fixtures' prime the values are also compared.
Report a4_obstruction(unsigned p);

}  // namespace polywitt::cli
