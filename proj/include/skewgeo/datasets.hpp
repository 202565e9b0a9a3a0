#pragma once

#include <string_view>

#include "skewgeo/count_data.hpp"

namespace skewgeo {

/// Automobile insurance claims per policyholder (n = 1875).
CountData claims_data();

/// Ticks counted on 82 sheep, grouped as 8-10, 11-14 and 15+.
CountData ticks_data();

/// "claims" or "ticks".
CountData dataset_by_name(std::string_view name);

}  // namespace skewgeo
