#ifndef LEXSPARQL_REGISTRY_HPP
#define LEXSPARQL_REGISTRY_HPP

#include <array>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lexsparql {

// The seven classes of lexicographic properties.
enum class PropertyCategory {
  linguistic,
  historical,
  syntactic,
  semantic,
  orthographic_phonetic,
  translation,
  stylistic,
};

inline constexpr std::array<PropertyCategory, 7> kAllCategories = {
    PropertyCategory::linguistic,   PropertyCategory::historical,
    PropertyCategory::syntactic,    PropertyCategory::semantic,
    PropertyCategory::orthographic_phonetic,
    PropertyCategory::translation,  PropertyCategory::stylistic,
};

enum class Attachment { lexeme, sense, form };

enum class RangeKind { string, q_item, lexeme, monolingual_text, sense, form };

const char* to_string(PropertyCategory c);
const char* to_string(Attachment a);
const char* to_string(RangeKind r);
std::optional<PropertyCategory> parse_category(std::string_view s);
std::optional<Attachment> parse_attachment(std::string_view s);
std::optional<RangeKind> parse_range_kind(std::string_view s);

struct PropertyDescriptor {
  std::string pid;
  std::string label;
  PropertyCategory category = PropertyCategory::linguistic;
  Attachment attachment = Attachment::lexeme;
  RangeKind range_kind = RangeKind::string;
};

struct LanguageRef {
  std::string qid;
  std::string code;
  std::string label;
};

struct PoolProperty {
  std::string pid;
  std::string label;
};

enum class OutputArity { single, multi };
enum class Linguality { mono, multi };
enum class Complexity { simple, complex };

// Taxonomy position of a template (output arity, linguality, complexity).
struct DimensionProfile {
  OutputArity output_arity = OutputArity::single;
  Linguality linguality = Linguality::mono;
  Complexity complexity = Complexity::simple;

  friend bool operator==(const DimensionProfile&,
                         const DimensionProfile&) = default;
};

std::string to_string(const DimensionProfile& d);
// Parses "single mono simple" style triples.
std::optional<DimensionProfile> parse_dimensions(std::string_view s);

// Reference data: classified properties, languages and the multi-property
// pool. Immutable once loaded.
class Registry {
 public:
  Registry() = default;

  // CSV with header pid,label,category,attachment,range_kind. Lines starting
  // with '#' are comments. Throws Error(parse) with "<source>:<line>: ...".
  static Registry load(std::istream& in, std::string_view source = "registry");

  // CSV with header qid,code,label.
  void load_languages(std::istream& in, std::string_view source = "languages");
  // CSV with header pid,label.
  void load_pool(std::istream& in, std::string_view source = "pool");

  const PropertyDescriptor* find(std::string_view pid) const;
  const std::vector<PropertyDescriptor>& properties() const { return props_; }

  const LanguageRef* language_by_code(std::string_view code) const;
  const LanguageRef* language_by_qid(std::string_view qid) const;
  const std::vector<LanguageRef>& languages() const { return languages_; }

  bool in_pool(std::string_view pid) const;
  const std::vector<PoolProperty>& pool() const { return pool_; }

  // Classified or pooled.
  bool knows(std::string_view pid) const { return find(pid) || in_pool(pid); }

 private:
  std::vector<PropertyDescriptor> props_;
  std::map<std::string, std::size_t, std::less<>> by_pid_;
  std::vector<LanguageRef> languages_;
  std::vector<PoolProperty> pool_;
  std::map<std::string, std::size_t, std::less<>> pool_by_pid_;
};

Registry load_registry(std::istream& in);

// Throws Error(lookup) for an unregistered pid.
PropertyCategory classify_property(const Registry& registry,
                                   std::string_view pid);

// Minimal RFC 4180 style CSV line splitter (quoted fields, doubled quotes).
// Fields are trimmed. Used by every flat data file in the toolkit.
std::vector<std::string> split_csv_line(std::string_view line);

}  // namespace lexsparql

#endif
