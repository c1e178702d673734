#include "gaspace/serialization.hpp"

#include "gaspace/errors.hpp"

namespace gaspace {

using nlohmann::json;

json schema_to_json(const Schema& schema) {
  json loci = json::array();
  for (const Locus& l : schema.loci()) {
    json e{{"kind", std::string(to_string(l.kind))}};
    if (l.kind == GeneKind::integer) {
      e["min"] = l.int_min;
      e["max"] = l.int_max;
    } else if (l.kind == GeneKind::real) {
      e["min"] = l.real_min;
      e["max"] = l.real_max;
    }
    loci.push_back(std::move(e));
  }
  return json{{"id", schema.id()}, {"loci", std::move(loci)}};
}

SchemaPtr schema_from_json(const json& j) {
  try {
    std::vector<Locus> loci;
    for (const json& e : j.at("loci")) {
      const auto kind = e.at("kind").get<std::string>();
      if (kind == "bit") {
        loci.push_back(Locus::bit());
      } else if (kind == "integer") {
        loci.push_back(Locus::integer(e.at("min").get<std::int64_t>(),
                                      e.at("max").get<std::int64_t>()));
      } else if (kind == "real") {
        loci.push_back(Locus::real(e.at("min").get<double>(), e.at("max").get<double>()));
      } else {
        throw InputError("unknown gene kind '" + kind + "'");
      }
    }
    return std::make_shared<const Schema>(j.at("id").get<std::string>(), std::move(loci));
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed schema JSON: ") + e.what());
  }
}

json chromosome_to_json(const Chromosome& c) {
  json genes = json::array();
  for (const Gene& g : c.genes()) {
    std::visit([&](auto v) { genes.push_back(v); }, g);
  }
  return json{{"schema", c.schema().id()}, {"genes", std::move(genes)}};
}

Chromosome chromosome_from_json(const json& j, SchemaPtr schema) {
  if (!schema) throw InputError("chromosome_from_json: null schema");
  try {
    const auto id = j.at("schema").get<std::string>();
    if (id != schema->id()) {
      throw InputError("chromosome refers to schema '" + id + "', expected '" + schema->id() +
                       "'");
    }
    const json& values = j.at("genes");
    if (!values.is_array()) throw InputError("chromosome genes must be an array");
    std::vector<Gene> genes;
    genes.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
      const json& v = values[i];
      if (!v.is_number()) throw InputError("gene " + std::to_string(i) + " is not a number");
      const bool real_locus =
          i < schema->size() && schema->locus(i).kind == GeneKind::real;
      if (real_locus) {
        genes.emplace_back(v.get<double>());
      } else if (v.is_number_integer()) {
        genes.emplace_back(v.get<std::int64_t>());
      } else {
        throw InputError("gene " + std::to_string(i) + " must be an integer");
      }
    }
    return Chromosome(std::move(schema), std::move(genes));
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed chromosome JSON: ") + e.what());
  }
}

}  // namespace gaspace
