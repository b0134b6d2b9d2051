#pragma once

#include <optional>

#include <json.hpp>

#include "singmod/fourier.hpp"
#include "singmod/jacobi.hpp"
#include "singmod/qseries.hpp"
#include "singmod/valuation_profile.hpp"

// JSON encodings. Big integers and rationals are decimal strings.
namespace singmod::io {

using Json = nlohmann::ordered_json;

// {weight_times_two, level, truncation, modulus: null | {p, m}, coefficients}
Json to_json(const qseries::QExpansion& f);
// Also accepts a bare coefficient array, which then needs weight_times_two.
qseries::QExpansion qexpansion_from_json(const Json& j,
                                         std::optional<long> weight_times_two = std::nullopt);

// {degree, weight_times_two, bounds: {rank_bound, det_doubled_max},
//  entries: {"<matrix text>": "<value>"}}
Json to_json(const fourier::FourierTable& t);
// Throws std::invalid_argument if a key is not a canonical representative.
fourier::FourierTable fourier_table_from_json(const Json& j);

// {index, weight_times_two, n_max, entries: [[n, r, "c"], ...]}
Json to_json(const jacobi::JacobiTable& t);
jacobi::JacobiTable jacobi_table_from_json(const Json& j);

// {weight_times_two, p, entries: [{rank, value: int | "inf", bound}]}
Json to_json(const ValuationProfile& profile);
ValuationProfile valuation_profile_from_json(const Json& j);

}  // namespace singmod::io
