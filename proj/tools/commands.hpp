#pragma once

#include "rnm/run_config.hpp"
#include "table.hpp"

namespace rnm::cli {

Table cmd_coeffs(const RunConfig& c);
Table cmd_exact(const RunConfig& c);
Table cmd_compare(const RunConfig& c);
Table cmd_cumulants(const RunConfig& c);
Table cmd_partition(const RunConfig& c);
Table cmd_sample(const RunConfig& c);
/// Columns check, value, tolerance, pass.
Table cmd_selfcheck(const RunConfig& c);

}  // namespace rnm::cli
