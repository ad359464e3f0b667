#pragma once

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace oa2net {

/// Two-letter country code validated against the embedded ISO 3166-1
/// alpha-2 table (plus the XK and AN codes OpenAlex still emits). Withdrawn
/// codes such as SU or YU are rejected.
class CountryCode {
 public:
  static std::optional<CountryCode> parse(std::string_view text);
  /// Throws InvalidArgument for codes outside the table.
  static CountryCode require(std::string_view text);

  std::string str() const { return std::string(code_, 2); }

  auto operator<=>(const CountryCode&) const = default;

 private:
  explicit CountryCode(std::string_view text) : code_{text[0], text[1]} {}

  char code_[2];
};

bool is_valid_country_code(std::string_view text);

/// Every accepted code, ascending.
std::span<const std::string_view> all_country_codes();

}  // namespace oa2net
