#include "coxalg/specfile.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace coxalg {

namespace {

using nlohmann::json;

Rational parse_rational_value(const json& v) {
  if (v.is_number_integer()) return Rational(static_cast<long>(v.get<long long>()));
  if (v.is_string()) return parse_rational(v.get<std::string>());
  throw spec_error("expected an integer or a \"p/q\" string in a functional");
}

RingSpecFile parse_ring_spec_json(const json& doc) {
  if (!doc.is_object()) throw spec_error("spec file must be a JSON object");
  if (!doc.contains("schema") || doc["schema"] != 1)
    throw spec_error("spec file must declare \"schema\": 1");

  GroupSpec group;
  {
    const auto& g = doc.at("group");
    group.free_rank = g.at("free_rank").get<Index>();
    if (group.free_rank < 0) throw spec_error("free_rank must be nonnegative");
    if (g.contains("moduli")) {
      for (const auto& m : g.at("moduli")) {
        const Integer modulus(m.get<long long>());
        if (modulus < 2) throw spec_error("moduli must be >= 2");
        group.moduli.push_back(modulus);
      }
    }
  }

  OrderSpec order;
  if (doc.contains("order")) {
    const auto& o = doc.at("order");
    const std::string mode = o.value("mode", "semigroup");
    if (mode == "semigroup") {
      order.mode = OrderSpec::Mode::semigroup;
    } else if (mode == "functional") {
      order.mode = OrderSpec::Mode::functional;
      for (const auto& f : o.at("functionals")) {
        QVec phi(group.free_rank);
        if (static_cast<Index>(f.size()) != group.free_rank)
          throw spec_error("functional has wrong dimension");
        for (Index i = 0; i < group.free_rank; ++i)
          phi(i) = parse_rational_value(f[static_cast<size_t>(i)]);
        order.functionals.push_back(std::move(phi));
      }
    } else {
      throw spec_error("order mode must be \"semigroup\" or \"functional\"");
    }
  }

  std::vector<std::string> names;
  std::vector<GroupElement> degrees;
  for (const auto& v : doc.at("variables")) {
    names.push_back(v.at("name").get<std::string>());
    degrees.push_back(parse_degree(group, v.at("degree").get<std::string>()));
  }

  RingSpecFile file;
  try {
    file.ring = GradedRingSpec::make(std::move(names), std::move(degrees), std::move(group),
                                     std::move(order));
  } catch (const std::invalid_argument& e) {
    throw spec_error(e.what());
  }

  if (doc.contains("polynomials")) {
    for (const auto& [name, text] : doc.at("polynomials").items()) {
      try {
        file.polynomials.emplace(name, parse_polynomial(file.ring, text.get<std::string>()));
      } catch (const std::invalid_argument& e) {
        throw spec_error("polynomial \"" + name + "\": " + e.what());
      }
    }
  }

  if (doc.contains("ideals")) {
    for (const auto& [name, spec] : doc.at("ideals").items()) {
      try {
        if (spec.contains("annihilator_of")) {
          const std::string poly_name = spec.at("annihilator_of").get<std::string>();
          const auto it = file.polynomials.find(poly_name);
          if (it == file.polynomials.end())
            throw spec_error("ideal \"" + name + "\" references unknown polynomial \"" +
                             poly_name + "\"");
          file.ideals.emplace(name, annihilator_ideal(it->second));
          continue;
        }
        RingPtr ring = file.ring;
        if (spec.value("ring", "S") == "Q") ring = file.ring->dual();
        std::vector<Polynomial> gens;
        if (spec.contains("generators"))
          for (const auto& text : spec.at("generators"))
            gens.push_back(parse_polynomial(ring, text.get<std::string>()));
        std::vector<GroupElement> spans;
        if (spec.contains("spans"))
          for (const auto& text : spec.at("spans"))
            spans.push_back(parse_degree(ring->group(), text.get<std::string>()));
        file.ideals.emplace(name, ideal_from_generators(ring, std::move(gens), std::move(spans)));
      } catch (const std::invalid_argument& e) {
        throw spec_error("ideal \"" + name + "\": " + e.what());
      }
    }
  }
  return file;
}

}  // namespace

RingSpecFile parse_ring_spec(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw spec_error(std::string("JSON parse error: ") + e.what());
  }
  try {
    return parse_ring_spec_json(doc);
  } catch (const json::exception& e) {
    throw spec_error(std::string("schema error: ") + e.what());
  }
}

RingSpecFile load_ring_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw spec_error("cannot open spec file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_ring_spec(buffer.str());
}

std::string ring_spec_to_json(const RingSpecFile& file) {
  json doc;
  doc["schema"] = 1;
  const GroupSpec& group = file.ring->group();
  doc["group"]["free_rank"] = group.free_rank;
  doc["group"]["moduli"] = json::array();
  for (const auto& m : group.moduli)
    doc["group"]["moduli"].push_back(static_cast<long long>(m));
  const OrderSpec& order = file.ring->order();
  if (order.mode == OrderSpec::Mode::semigroup) {
    doc["order"]["mode"] = "semigroup";
  } else {
    doc["order"]["mode"] = "functional";
    doc["order"]["functionals"] = json::array();
    for (const auto& phi : order.functionals) {
      json row = json::array();
      for (Index i = 0; i < phi.size(); ++i) row.push_back(phi(i).str());
      doc["order"]["functionals"].push_back(std::move(row));
    }
  }
  doc["variables"] = json::array();
  for (Index i = 0; i < file.ring->var_count(); ++i) {
    doc["variables"].push_back(
        {{"name", file.ring->names()[static_cast<size_t>(i)]},
         {"degree", degree_to_string(group, file.ring->degree_of(i))}});
  }
  if (!file.polynomials.empty()) {
    doc["polynomials"] = json::object();
    for (const auto& [name, poly] : file.polynomials) doc["polynomials"][name] = to_string(poly);
  }
  if (!file.ideals.empty()) {
    doc["ideals"] = json::object();
    for (const auto& [name, ideal] : file.ideals) {
      json entry = json::object();
      if (ideal.apolar_form) {
        // Locate the polynomial by value among the named ones.
        std::string ref;
        for (const auto& [pname, poly] : file.polynomials)
          if (poly_eq(poly, *ideal.apolar_form)) ref = pname;
        if (ref.empty()) throw spec_error("annihilator ideal references an unnamed polynomial");
        entry["annihilator_of"] = ref;
      } else {
        if (ideal.ring->role() == GradedRingSpec::Role::Q) entry["ring"] = "Q";
        entry["generators"] = json::array();
        for (const auto& gen : ideal.generators) entry["generators"].push_back(to_string(gen));
        if (!ideal.span_degrees.empty()) {
          entry["spans"] = json::array();
          for (const auto& h : ideal.span_degrees)
            entry["spans"].push_back(degree_to_string(group, h));
        }
      }
      doc["ideals"][name] = std::move(entry);
    }
  }
  return doc.dump(2) + "\n";
}

}  // namespace coxalg
