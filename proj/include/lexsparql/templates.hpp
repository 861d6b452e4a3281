#ifndef LEXSPARQL_TEMPLATES_HPP
#define LEXSPARQL_TEMPLATES_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "lexsparql/registry.hpp"

namespace lexsparql {

enum class Paradigm { google, property, multi_property, language_independent, rule_based };
enum class TagKind { lemma, language_code, language_qid, property_value, free_text };
enum class AnswerShape { select, ask };

const char* to_string(Paradigm p);
const char* to_string(TagKind k);
const char* to_string(AnswerShape s);
std::optional<Paradigm> parse_paradigm(std::string_view s);
std::optional<TagKind> parse_tag_kind(std::string_view s);
std::optional<AnswerShape> parse_answer_shape(std::string_view s);

struct Tag {
  std::string name;
  TagKind kind = TagKind::free_text;
};

// SELECT -> ASK rewrite rule: the projected variable carrying the answer and
// the yes/no utterance pattern, which may use the template's tags plus
// {answer}.
struct AskRewrite {
  std::string answer_var;
  std::string pattern;
};

using Bindings = std::map<std::string, std::string, std::less<>>;

struct TemplateSpec {
  std::string id;
  Paradigm paradigm = Paradigm::property;
  DimensionProfile dimensions;
  AnswerShape answer_shape = AnswerShape::select;
  std::vector<Tag> tag_schema;
  std::vector<std::string> variants;
  std::string body;
  // SELECT whose projected variable names equal the tag names; one solution
  // per population row.
  std::string population;
  std::set<std::string> properties_used;
  std::optional<AskRewrite> ask_rewrite;
  bool reconstructed = false;
  std::string note;

  const Tag* tag(std::string_view name) const;
};

// Placeholder names in order of first appearance.
std::vector<std::string> placeholders(std::string_view text);

// Distinct wdt:P... properties referenced in a SPARQL text.
std::set<std::string> direct_properties(std::string_view sparql);

class Catalog {
 public:
  Catalog() = default;

  // Parses and validates one or more template documents. Throws
  // Error(parse) for format errors and Error(validation) for invariant
  // violations, both with "<source>:<line>" locus.
  static Catalog load(std::istream& in, std::string_view source = "catalog");
  // Every *.tpl file in the directory, in file-name order.
  static Catalog load_dir(const std::string& dir);

  // Merges another catalog; throws Error(validation) on duplicate ids.
  void merge(Catalog other);

  const TemplateSpec* find(std::string_view id) const;
  const TemplateSpec& at(std::string_view id) const;  // Error(lookup)
  const std::vector<TemplateSpec>& specs() const { return specs_; }
  std::size_t size() const { return specs_.size(); }
  std::map<Paradigm, std::size_t> paradigm_counts() const;

 private:
  void add(TemplateSpec spec, std::string_view locus);

  std::vector<TemplateSpec> specs_;
  std::map<std::string, std::size_t, std::less<>> by_id_;
};

// Standalone validation of one spec (run by Catalog::load).
void validate_template(const TemplateSpec& spec);

// Cross-checks against reference data: every wdt: property must be known to
// the registry (classified or pooled). Returns one message per problem.
std::vector<std::string> check_against_registry(const Catalog& catalog,
                                                const Registry& registry);

// Declared profile, after checking D4 against the number of distinct wdt:
// properties in the body. A body with no wdt: property counts as simple.
DimensionProfile dimension_profile_of(const TemplateSpec& spec);

std::string render_utterance(const TemplateSpec& spec, const Bindings& bindings,
                             std::size_t variant_index);
std::string render_query(const TemplateSpec& spec, const Bindings& bindings);

std::size_t pick_variant(const TemplateSpec& spec, std::uint64_t rng_seed,
                         std::uint64_t record_index);

// Placeholder substitution shared by the renderers; `escape` applies SPARQL
// single-quote escaping to each value.
std::string substitute(std::string_view text, const Bindings& bindings, bool escape,
                       std::string_view what);

}  // namespace lexsparql

#endif
