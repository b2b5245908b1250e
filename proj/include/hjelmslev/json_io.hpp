#ifndef HJELMSLEV_JSON_IO_HPP
#define HJELMSLEV_JSON_IO_HPP

#include <json.hpp>

#include "hjelmslev/arc_search.hpp"
#include "hjelmslev/group_orbits.hpp"
#include "hjelmslev/ring_codes.hpp"

namespace hjelmslev {

// Ring elements are written as an integer when r = 1 and as a coefficient
// list otherwise; both forms are accepted on input.
nlohmann::json element_to_json(const GaloisRing& ring, RingElement e);
RingElement element_from_json(const GaloisRing& ring, const nlohmann::json& j);

nlohmann::json vector_to_json(const GaloisRing& ring, const HomogeneousVector& v);
HomogeneousVector vector_from_json(const GaloisRing& ring, const nlohmann::json& j);

/// Rows of entries.
nlohmann::json matrix_to_json(const GaloisRing& ring, const RingMatrix& a);
RingMatrix matrix_from_json(const GaloisRing& ring, const nlohmann::json& j);

nlohmann::json to_json(const CodeReport& report);

}  // namespace hjelmslev

#endif  // HJELMSLEV_JSON_IO_HPP
