#ifndef LEXSPARQL_TEXT_HPP
#define LEXSPARQL_TEXT_HPP

#include <string>
#include <string_view>
#include <vector>

namespace lexsparql::text {

std::string_view trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
std::vector<std::string> split_ws(std::string_view s);
std::string to_lower(std::string_view s);
std::string to_upper(std::string_view s);
bool iequals(std::string_view a, std::string_view b);
bool starts_with_ci(std::string_view s, std::string_view prefix);
std::string replace_all(std::string s, std::string_view from,
                        std::string_view to);
// Collapses every run of ASCII whitespace to one space and trims the ends.
std::string normalize_ws(std::string_view s);

bool is_pid(std::string_view s);  // P + digits
bool is_qid(std::string_view s);  // Q + digits

}  // namespace lexsparql::text

#endif
