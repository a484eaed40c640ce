#pragma once

#include "pcrkit/preprocess.hpp"

#include <string>
#include <vector>

namespace pcrkit::fixtures {

/// Variable order of the London indicator correlation table.
const std::vector<std::string>& fig3_names();

/// The two-decimal correlations as printed, lower triangle mirrored.
Matrix fig3_printed();

/// `fig3_printed()` as a CorrelationMatrix. Not positive semi-definite: the
/// two-decimal rounding leaves eigenvalues around −6e−3.
CorrelationMatrix fig3_correlation();

/// Nearest correlation matrix to the printed table with eigenvalues ≥ 1e−6.
/// Every entry still rounds to the printed value.
CorrelationRepair fig3_repaired();

/// Looks up a fixture by name ("fig3"); throws ConfigError for unknown names.
CorrelationMatrix by_name(const std::string& name);

} // namespace pcrkit::fixtures
