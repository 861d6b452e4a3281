#include "lexsparql/registry.hpp"

#include <istream>

#include "lexsparql/error.hpp"
#include "lexsparql/text.hpp"

namespace lexsparql {

const char* to_string(PropertyCategory c) {
  switch (c) {
    case PropertyCategory::linguistic: return "Linguistic";
    case PropertyCategory::historical: return "Historical";
    case PropertyCategory::syntactic: return "Syntactic";
    case PropertyCategory::semantic: return "Semantic";
    case PropertyCategory::orthographic_phonetic: return "OrthographicPhonetic";
    case PropertyCategory::translation: return "Translation";
    case PropertyCategory::stylistic: return "Stylistic";
  }
  return "?";
}

const char* to_string(Attachment a) {
  switch (a) {
    case Attachment::lexeme: return "lexeme";
    case Attachment::sense: return "sense";
    case Attachment::form: return "form";
  }
  return "?";
}

const char* to_string(RangeKind r) {
  switch (r) {
    case RangeKind::string: return "string";
    case RangeKind::q_item: return "q_item";
    case RangeKind::lexeme: return "lexeme";
    case RangeKind::monolingual_text: return "monolingual_text";
    case RangeKind::sense: return "sense";
    case RangeKind::form: return "form";
  }
  return "?";
}

std::optional<PropertyCategory> parse_category(std::string_view s) {
  for (auto c : kAllCategories)
    if (s == to_string(c)) return c;
  return std::nullopt;
}

std::optional<Attachment> parse_attachment(std::string_view s) {
  for (auto a : {Attachment::lexeme, Attachment::sense, Attachment::form})
    if (s == to_string(a)) return a;
  return std::nullopt;
}

std::optional<RangeKind> parse_range_kind(std::string_view s) {
  for (auto r : {RangeKind::string, RangeKind::q_item, RangeKind::lexeme,
                 RangeKind::monolingual_text, RangeKind::sense, RangeKind::form})
    if (s == to_string(r)) return r;
  return std::nullopt;
}

std::string to_string(const DimensionProfile& d) {
  std::string out = d.output_arity == OutputArity::single ? "single" : "multi";
  out += d.linguality == Linguality::mono ? " mono" : " multi";
  out += d.complexity == Complexity::simple ? " simple" : " complex";
  return out;
}

std::optional<DimensionProfile> parse_dimensions(std::string_view s) {
  auto parts = text::split_ws(s);
  if (parts.size() != 3) return std::nullopt;
  DimensionProfile d;
  if (parts[0] == "single") d.output_arity = OutputArity::single;
  else if (parts[0] == "multi") d.output_arity = OutputArity::multi;
  else return std::nullopt;
  if (parts[1] == "mono") d.linguality = Linguality::mono;
  else if (parts[1] == "multi") d.linguality = Linguality::multi;
  else return std::nullopt;
  if (parts[2] == "simple") d.complexity = Complexity::simple;
  else if (parts[2] == "complex") d.complexity = Complexity::complex;
  else return std::nullopt;
  return d;
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"' && text::trim(cur).empty()) {
      cur.clear();
      quoted = true;
      was_quoted = true;
    } else if (c == ',') {
      fields.push_back(was_quoted ? cur : std::string(text::trim(cur)));
      cur.clear();
      was_quoted = false;
    } else if (!(was_quoted && (c == ' ' || c == '\t'))) {
      cur.push_back(c);
    }
  }
  if (quoted) throw Error(ErrorKind::parse, "unterminated quoted field");
  fields.push_back(was_quoted ? cur : std::string(text::trim(cur)));
  return fields;
}

namespace {

// Iterates data rows of a CSV stream, skipping comments, blank lines and the
// header (checked against `header`).
template <typename Fn>
void for_each_csv_row(std::istream& in, std::string_view source,
                      const std::vector<std::string>& header, Fn&& fn) {
  std::string line;
  std::size_t lineno = 0;
  bool saw_header = false;
  auto fail = [&](const std::string& msg) {
    throw Error(ErrorKind::parse,
                std::string(source) + ":" + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto t = text::trim(line);
    if (t.empty() || t.front() == '#') continue;
    std::vector<std::string> fields;
    try {
      fields = split_csv_line(t);
    } catch (const Error& e) {
      fail(e.what());
    }
    if (!saw_header) {
      saw_header = true;
      // The header is optional; a first row that is not the header is data.
      if (fields == header) continue;
    }
    if (fields.size() != header.size())
      fail("expected " + std::to_string(header.size()) + " fields, got " +
           std::to_string(fields.size()));
    try {
      fn(fields);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::parse) fail(e.what());
      throw;
    }
  }
}

}  // namespace

Registry Registry::load(std::istream& in, std::string_view source) {
  Registry reg;
  for_each_csv_row(
      in, source, {"pid", "label", "category", "attachment", "range_kind"},
      [&](const std::vector<std::string>& f) {
        if (!text::is_pid(f[0]))
          throw Error(ErrorKind::parse, "bad property id '" + f[0] + "'");
        auto cat = parse_category(f[2]);
        if (!cat) throw Error(ErrorKind::parse, "unknown category '" + f[2] + "'");
        auto att = parse_attachment(f[3]);
        if (!att)
          throw Error(ErrorKind::parse, "unknown attachment '" + f[3] + "'");
        auto range = parse_range_kind(f[4]);
        if (!range)
          throw Error(ErrorKind::parse, "unknown range kind '" + f[4] + "'");
        if (reg.by_pid_.count(f[0]))
          throw Error(ErrorKind::parse, "duplicate pid " + f[0]);
        reg.by_pid_.emplace(f[0], reg.props_.size());
        reg.props_.push_back({f[0], f[1], *cat, *att, *range});
      });
  return reg;
}

void Registry::load_languages(std::istream& in, std::string_view source) {
  for_each_csv_row(in, source, {"qid", "code", "label"},
                   [&](const std::vector<std::string>& f) {
                     if (!text::is_qid(f[0]))
                       throw Error(ErrorKind::parse, "bad item id '" + f[0] + "'");
                     if (f[1].empty() || f[1] != text::to_lower(f[1]))
                       throw Error(ErrorKind::parse,
                                   "language code must be non-empty lowercase");
                     if (language_by_code(f[1]))
                       throw Error(ErrorKind::parse, "duplicate language " + f[1]);
                     languages_.push_back({f[0], f[1], f[2]});
                   });
}

void Registry::load_pool(std::istream& in, std::string_view source) {
  for_each_csv_row(in, source, {"pid", "label"},
                   [&](const std::vector<std::string>& f) {
                     if (!text::is_pid(f[0]))
                       throw Error(ErrorKind::parse, "bad property id '" + f[0] + "'");
                     if (pool_by_pid_.count(f[0]))
                       throw Error(ErrorKind::parse, "duplicate pool pid " + f[0]);
                     pool_by_pid_.emplace(f[0], pool_.size());
                     pool_.push_back({f[0], f[1]});
                   });
}

const PropertyDescriptor* Registry::find(std::string_view pid) const {
  auto it = by_pid_.find(pid);
  return it == by_pid_.end() ? nullptr : &props_[it->second];
}

const LanguageRef* Registry::language_by_code(std::string_view code) const {
  for (const auto& l : languages_)
    if (l.code == code) return &l;
  return nullptr;
}

const LanguageRef* Registry::language_by_qid(std::string_view qid) const {
  for (const auto& l : languages_)
    if (l.qid == qid) return &l;
  return nullptr;
}

bool Registry::in_pool(std::string_view pid) const {
  return pool_by_pid_.find(pid) != pool_by_pid_.end();
}

Registry load_registry(std::istream& in) { return Registry::load(in); }

PropertyCategory classify_property(const Registry& registry,
                                   std::string_view pid) {
  const auto* p = registry.find(pid);
  if (!p)
    throw Error(ErrorKind::lookup, "unknown property " + std::string(pid));
  return p->category;
}

}  // namespace lexsparql
