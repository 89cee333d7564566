#include "polywitt/ring_json.hpp"

#include <regex>

namespace polywitt {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw AlgebraError(ErrorCode::MalformedInput, what); }

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : text) {
    if (c == sep) {
      parts.push_back(current);
      current.clear();
    } else if (c != ' ') {
      current += c;
    }
  }
  parts.push_back(current);
  return parts;
}

std::shared_ptr<const FreeRankRing> free_from_json(const Json& d) {
  if (!d.contains("basis") || !d["basis"].is_array()) malformed("free ring needs a basis list");
  std::vector<std::string> basis = d["basis"].get<std::vector<std::string>>();
  const std::size_t r = basis.size();
  auto index_of = [&](const std::string& name) {
    auto it = std::find(basis.begin(), basis.end(), name);
    if (it == basis.end()) malformed("unknown basis element '" + name + "'");
    return static_cast<std::size_t>(it - basis.begin());
  };
  auto at = [r](std::size_t i, std::size_t j, std::size_t k) { return (i * r + j) * r + k; };
  std::vector<Integer> constants(r * r * r, Integer(0));
  std::vector<bool> given(r * r, false);
  if (d.contains("mul")) {
    for (const auto& [key, value] : d["mul"].items()) {
      auto factors = split(key, '*');
      if (factors.size() != 2) malformed("product key must look like 'a*b', got '" + key + "'");
      std::size_t i = index_of(factors[0]), j = index_of(factors[1]);
      std::vector<Integer> row(r, Integer(0));
      if (value.is_array()) {
        for (const auto& pair : value) {
          if (!pair.is_array() || pair.size() != 2) malformed("product terms are [basis, coefficient] pairs");
          row[index_of(pair[0].get<std::string>())] += integer_from_json(pair[1]);
        }
      } else if (value.is_object()) {
        for (const auto& [name, coeff] : value.items()) row[index_of(name)] += integer_from_json(coeff);
      } else {
        malformed("product value for '" + key + "' must be a list or object");
      }
      for (std::size_t k = 0; k < r; ++k) {
        constants[at(i, j, k)] = row[k];
        if (!given[j * r + i]) constants[at(j, i, k)] = row[k];
      }
      given[i * r + j] = true;
    }
  }
  // products with a basis element named "1" default to the identity
  if (auto it = std::find(basis.begin(), basis.end(), "1"); it != basis.end()) {
    std::size_t u = static_cast<std::size_t>(it - basis.begin());
    for (std::size_t j = 0; j < r; ++j) {
      if (!given[u * r + j] && !given[j * r + u]) {
        constants[at(u, j, j)] = 1;
        constants[at(j, u, j)] = 1;
      }
    }
  }
  std::vector<Integer> unit(r, Integer(0));
  if (d.contains("unit")) {
    for (const auto& [name, coeff] : d["unit"].items()) unit[index_of(name)] = integer_from_json(coeff);
  } else {
    unit[index_of("1")] = 1;
  }
  unsigned local = d.value("localize", 0u);
  return FreeRankRing::create(basis, constants, unit, local, d.value("label", std::string{}));
}

RingHandle from_shorthand(const std::string& text) {
  static const std::regex modular(R"(Z/(\d+))"), local(R"(Z_\((\d+)\))"), poly(R"(Z\[([^\]]*)\])"),
      burnside_c2(R"(A\(Z/2\))");
  std::smatch m;
  if (text == "Z") return make_integers();
  if (std::regex_match(text, m, modular)) return make_modular(Integer(m[1].str()));
  if (std::regex_match(text, m, local)) return make_localization(static_cast<unsigned>(std::stoul(m[1].str())));
  if (std::regex_match(text, m, burnside_c2)) return make_quadratic_ring(2, "A(Z/2)");
  if (std::regex_match(text, m, poly)) return make_polynomial_ring(split(m[1].str(), ','));
  malformed("unknown ring shorthand '" + text + "'");
}

Json rational_to_json(const Rational& q) {
  if (q.get_den() == 1) return integer_to_json(q.get_num());
  return q.get_str();
}

}  // namespace

Monomial parse_monomial(const PolynomialRing& ring, const std::string& text) {
  Monomial m(ring.arity(), 0);
  if (text == "1" || text.empty()) return m;
  for (const auto& factor : split(text, '*')) {
    auto caret = factor.find('^');
    std::string name = factor.substr(0, caret);
    unsigned long exponent = caret == std::string::npos ? 1 : std::stoul(factor.substr(caret + 1));
    auto idx = ring.variable_index(name);
    if (!idx) malformed("unknown variable '" + name + "'");
    m[*idx] += static_cast<std::uint32_t>(exponent);
  }
  return m;
}

std::string monomial_key(const PolynomialRing& ring, const Monomial& m) {
  std::string key;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!key.empty()) key += "*";
    key += ring.variables()[i];
    if (m[i] > 1) key += "^" + std::to_string(m[i]);
  }
  return key.empty() ? "1" : key;
}

Integer integer_from_json(const Json& value) {
  if (value.is_number_integer()) return Integer(std::to_string(value.get<long long>()));
  if (value.is_string()) return parse_integer(value.get<std::string>());
  malformed("expected an integer, got " + value.dump());
}

Json integer_to_json(const Integer& value) {
  if (value.fits_slong_p()) return static_cast<long long>(value.get_si());
  return value.get_str();
}

RingHandle ring_from_json(const Json& d) {
  if (d.is_string()) return from_shorthand(d.get<std::string>());
  if (!d.is_object() || !d.contains("type")) malformed("ring descriptor must be a string or an object with 'type'");
  const std::string type = d["type"].get<std::string>();
  if (type == "integers") return make_integers();
  if (type == "mod") return make_modular(integer_from_json(d.at("n")));
  if (type == "localization") return make_localization(d.at("p").get<unsigned>());
  if (type == "free") return free_from_json(d);
  if (type == "poly") return make_polynomial_ring(d.at("vars").get<std::vector<std::string>>());
  if (type == "product") return make_product(ring_from_json(d.at("left")), ring_from_json(d.at("right")));
  malformed("unknown ring type '" + type + "'");
}

Json ring_to_json(const RingHandle& ring) {
  switch (ring->kind()) {
    case RingKind::Integers: return "Z";
    case RingKind::Modular: return {{"type", "mod"}, {"n", integer_to_json(std::static_pointer_cast<const ModularRing>(ring)->modulus())}};
    case RingKind::Localization: return {{"type", "localization"}, {"p", std::static_pointer_cast<const LocalizationRing>(ring)->prime()}};
    case RingKind::Polynomial: return {{"type", "poly"}, {"vars", std::static_pointer_cast<const PolynomialRing>(ring)->variables()}};
    case RingKind::Product: {
      auto prod = std::static_pointer_cast<const ProductRing>(ring);
      return {{"type", "product"}, {"left", ring_to_json(prod->factor(0))}, {"right", ring_to_json(prod->factor(1))}};
    }
    case RingKind::FreeRank: {
      auto free = std::static_pointer_cast<const FreeRankRing>(ring);
      const std::size_t r = free->rank();
      Json mul = Json::object();
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i; j < r; ++j) {
          Json terms = Json::array();
          for (std::size_t k = 0; k < r; ++k)
            if (free->constant(i, j, k) != 0) terms.push_back({free->basis()[k], integer_to_json(free->constant(i, j, k))});
          mul[free->basis()[i] + "*" + free->basis()[j]] = terms;
        }
      Json unit = Json::object();
      for (std::size_t i = 0; i < r; ++i)
        if (free->unit_coordinates()[i] != 0) unit[free->basis()[i]] = integer_to_json(free->unit_coordinates()[i]);
      Json out = {{"type", "free"}, {"basis", free->basis()}, {"mul", mul}, {"unit", unit}};
      if (free->local_prime() != 0) out["localize"] = free->local_prime();
      if (!free->label().empty()) out["label"] = free->label();
      return out;
    }
    default: malformed(ring->name() + " has no JSON descriptor");
  }
}

Element element_from_json(const RingHandle& ring, const Json& literal) {
  switch (ring->kind()) {
    case RingKind::Integers:
    case RingKind::Modular: return ring->from_integer(integer_from_json(literal));
    case RingKind::Localization: {
      auto local = std::static_pointer_cast<const LocalizationRing>(ring);
      if (literal.is_string()) return local->from_rational(parse_rational(literal.get<std::string>()));
      return local->from_integer(integer_from_json(literal));
    }
    case RingKind::FreeRank: {
      auto free = std::static_pointer_cast<const FreeRankRing>(ring);
      if (!literal.is_object()) return free->from_integer(integer_from_json(literal));
      std::vector<Rational> coords(free->rank(), Rational(0));
      for (const auto& [name, value] : literal.items()) {
        auto idx = free->basis_index(name);
        if (!idx) malformed("unknown basis element '" + name + "'");
        coords[*idx] += value.is_string() ? parse_rational(value.get<std::string>()) : Rational(integer_from_json(value));
      }
      return free->from_coordinates(std::move(coords));
    }
    case RingKind::Polynomial: {
      auto poly = std::static_pointer_cast<const PolynomialRing>(ring);
      if (!literal.is_object()) return poly->from_integer(integer_from_json(literal));
      Element result = poly->zero();
      for (const auto& [key, value] : literal.items())
        result += poly->monomial(parse_monomial(*poly, key), integer_from_json(value));
      return result;
    }
    case RingKind::Product: {
      auto prod = std::static_pointer_cast<const ProductRing>(ring);
      if (!literal.is_array() || literal.size() != 2) malformed("product literal must be a pair");
      return prod->pair(element_from_json(prod->factor(0), literal[0]), element_from_json(prod->factor(1), literal[1]));
    }
    default: malformed("no literal syntax for elements of " + ring->name());
  }
}

Json element_to_json(const Element& a) {
  const RingHandle& ring = a.ring();
  switch (ring->kind()) {
    case RingKind::Integers:
    case RingKind::Modular: return integer_to_json(a.as<Integer>());
    case RingKind::Localization: return rational_to_json(a.as<Rational>());
    case RingKind::FreeRank: {
      auto free = std::static_pointer_cast<const FreeRankRing>(ring);
      Json out = Json::object();
      const auto& coords = free->coordinates(a);
      for (std::size_t i = 0; i < free->rank(); ++i)
        if (coords[i] != 0) out[free->basis()[i]] = rational_to_json(coords[i]);
      return out;
    }
    case RingKind::Polynomial: {
      auto poly = std::static_pointer_cast<const PolynomialRing>(ring);
      Json out = Json::object();
      for (const auto& [m, c] : a.as<PolyTerms>()) out[monomial_key(*poly, m)] = integer_to_json(c);
      return out;
    }
    case RingKind::Product: {
      auto prod = std::static_pointer_cast<const ProductRing>(ring);
      return Json::array({element_to_json(prod->component(a, 0)), element_to_json(prod->component(a, 1))});
    }
    case RingKind::FixedSubring: {
      auto fixed = std::static_pointer_cast<const FixedSubring>(ring);
      return element_to_json(fixed->include(a));
    }
    default: return a.str();
  }
}

}  // namespace polywitt
