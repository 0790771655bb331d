#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace reify::prompt {

std::string to_lower(std::string_view s);
std::string trim(std::string_view s);
// Lowercases, trims and collapses internal whitespace runs.
std::string squash(std::string_view s);

// Suffix heuristic: ends in "s" but not "ss", "us" or "is".
bool is_plural_word(std::string_view word);
std::string singularize(std::string_view word);
std::string pluralize(std::string_view word);

// The head of "phone numbers" is "numbers"; of "dates of birth" it is "dates".
std::string singularize_head(std::string_view phrase);
std::string pluralize_head(std::string_view phrase);
bool head_is_plural(std::string_view phrase);

std::string indefinite_article(std::string_view noun);
std::string with_article(std::string_view noun);

// "a list of Customers." -> "customer"
std::string normalize_name(std::string_view raw);

// Drops a leading article or "a list of" but keeps the noun as written:
// "a list of customers" -> "customers".
std::string strip_determiners(std::string_view phrase);

// {x} -> "x", {x, y} -> "x and y", {x, y, z} -> "x, y, and z"
std::string join_enumeration(const std::vector<std::string>& items);
std::string join(const std::vector<std::string>& items, std::string_view sep);

// Splits a comma list with an optional final "and" into trimmed items.
std::vector<std::string> split_enumeration(std::string_view text);

}  // namespace reify::prompt
