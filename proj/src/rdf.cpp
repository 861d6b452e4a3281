#include "lexsparql/rdf.hpp"

#include "lexsparql/error.hpp"

namespace lexsparql {

const std::map<std::string, std::string, std::less<>>& default_prefixes() {
  static const std::map<std::string, std::string, std::less<>> kPrefixes = {
      {"wd", std::string(iri::kWd)},
      {"wdt", std::string(iri::kWdt)},
      {"wikibase", std::string(iri::kWikibase)},
      {"rdfs", std::string(iri::kRdfs)},
      {"rdf", std::string(iri::kRdf)},
      {"xsd", std::string(iri::kXsd)},
      {"bd", std::string(iri::kBd)},
      {"ontolex", std::string(iri::kOntolex)},
      {"dct", std::string(iri::kDct)},
      {"skos", std::string(iri::kSkos)},
      {"schema", "http://schema.org/"},
      {"p", "http://www.wikidata.org/prop/"},
      {"ps", "http://www.wikidata.org/prop/statement/"},
      {"pq", "http://www.wikidata.org/prop/qualifier/"},
      {"lexinfo", "http://www.lexinfo.net/ontology/2.0/lexinfo#"},
  };
  return kPrefixes;
}

RdfTerm RdfTerm::make_integer(long long v) {
  return make_literal(std::to_string(v), {}, std::string(iri::kXsd) + "integer");
}

RdfTerm RdfTerm::make_boolean(bool v) {
  return make_literal(v ? "true" : "false", {},
                      std::string(iri::kXsd) + "boolean");
}

std::string RdfTerm::to_ntriples() const {
  if (is_iri()) return "<" + value + ">";
  std::string out = "\"";
  for (char c : value) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out.push_back(c);
    }
  }
  out.push_back('"');
  if (!language.empty()) out += "@" + language;
  else if (!datatype.empty()) out += "^^<" + datatype + ">";
  return out;
}

std::string RdfTerm::local_name() const {
  if (is_literal()) return value;
  if (value.rfind(iri::kWd, 0) == 0) return value.substr(iri::kWd.size());
  auto cut = value.find_last_of("/#");
  return cut == std::string::npos ? value : value.substr(cut + 1);
}

std::string serialize_row(const ResultRow& row,
                          const std::vector<std::string>& variables) {
  std::string out;
  for (const auto& v : variables) {
    auto it = row.find(v);
    // \x1f keeps "unbound" ordered before every bound term.
    out += it == row.end() ? std::string("\x1f") : it->second.to_ntriples();
    out.push_back('\t');
  }
  return out;
}

nlohmann::json to_sparql_json(const ResultSet& rs) {
  nlohmann::json doc;
  if (rs.is_boolean()) {
    doc["head"] = nlohmann::json::object();
    doc["boolean"] = rs.truth;
    return doc;
  }
  doc["head"]["vars"] = rs.variables;
  auto bindings = nlohmann::json::array();
  for (const auto& row : rs.rows) {
    nlohmann::json b = nlohmann::json::object();
    for (const auto& [name, term] : row) {
      nlohmann::json t;
      if (term.is_iri()) {
        t["type"] = "uri";
        t["value"] = term.value;
      } else {
        t["type"] = "literal";
        t["value"] = term.value;
        if (!term.language.empty()) t["xml:lang"] = term.language;
        else if (!term.datatype.empty()) t["datatype"] = term.datatype;
      }
      b[name] = std::move(t);
    }
    bindings.push_back(std::move(b));
  }
  doc["results"]["bindings"] = std::move(bindings);
  return doc;
}

ResultSet from_sparql_json(const nlohmann::json& doc) {
  auto bad = [](const std::string& why) {
    return Error(ErrorKind::parse, "malformed SPARQL results document: " + why);
  };
  if (!doc.is_object()) throw bad("not an object");
  if (doc.contains("boolean")) {
    if (!doc["boolean"].is_boolean()) throw bad("boolean is not a bool");
    return ResultSet::boolean(doc["boolean"].get<bool>());
  }
  if (!doc.contains("head") || !doc.contains("results"))
    throw bad("missing head or results");
  ResultSet rs;
  const auto& head = doc["head"];
  if (head.contains("vars")) {
    if (!head["vars"].is_array()) throw bad("head.vars is not an array");
    for (const auto& v : head["vars"]) {
      if (!v.is_string()) throw bad("variable name is not a string");
      rs.variables.push_back(v.get<std::string>());
    }
  }
  const auto& results = doc["results"];
  if (!results.is_object() || !results.contains("bindings") ||
      !results["bindings"].is_array())
    throw bad("results.bindings missing");
  for (const auto& b : results["bindings"]) {
    if (!b.is_object()) throw bad("binding is not an object");
    ResultRow row;
    for (const auto& [name, t] : b.items()) {
      if (!t.is_object() || !t.contains("type") || !t.contains("value") ||
          !t["value"].is_string())
        throw bad("term for '" + name + "' malformed");
      const std::string type = t["type"].get<std::string>();
      const std::string value = t["value"].get<std::string>();
      RdfTerm term;
      if (type == "uri") {
        term = RdfTerm::make_iri(value);
      } else if (type == "bnode") {
        term = RdfTerm::make_iri("_:" + value);
      } else if (type == "literal" || type == "typed-literal") {
        std::string lang = t.contains("xml:lang") ? t["xml:lang"].get<std::string>() : "";
        std::string dt = t.contains("datatype") ? t["datatype"].get<std::string>() : "";
        term = RdfTerm::make_literal(value, lang, lang.empty() ? dt : "");
      } else {
        throw bad("unknown term type '" + type + "'");
      }
      row.emplace(name, std::move(term));
    }
    rs.rows.push_back(std::move(row));
  }
  return rs;
}

ResultSet parse_sparql_json(std::string_view body) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(body);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::parse,
                std::string("malformed SPARQL results document: ") + e.what());
  }
  try {
    return from_sparql_json(doc);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::parse,
                std::string("malformed SPARQL results document: ") + e.what());
  }
}

}  // namespace lexsparql
