#pragma once

// JSON descriptors for rings and literals for their elements.
//
// Ring descriptors are either shorthand strings ("Z", "Z/9", "Z_(3)",
// "A(Z/2)", "Z[u,ubar]") or objects with a "type" key: integers, mod, free,
// localization, poly, product. Integer coefficients may be JSON numbers or
// decimal strings; output uses numbers when they fit in 64 bits.

#include <nlohmann/json.hpp>

#include "polywitt/rings.hpp"

namespace polywitt {

using Json = nlohmann::json;

RingHandle ring_from_json(const Json& descriptor);
Json ring_to_json(const RingHandle& ring);

Element element_from_json(const RingHandle& ring, const Json& literal);
Json element_to_json(const Element& a);

/// "u^2*ubar" style keys of polynomial literals; "1" is the empty monomial.
Monomial parse_monomial(const PolynomialRing& ring, const std::string& text);
std::string monomial_key(const PolynomialRing& ring, const Monomial& m);

Integer integer_from_json(const Json& value);
Json integer_to_json(const Integer& value);

}  // namespace polywitt
