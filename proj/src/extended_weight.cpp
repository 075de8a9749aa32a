#include "minflip/extended_weight.hpp"

#include <charconv>

namespace minflip {

std::optional<ExtendedWeight> ExtendedWeight::parse(std::string_view text) {
    if (text == "inf" || text == "+inf") return pos_infinity();
    if (text == "-inf") return neg_infinity();
    long long v = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (!text.empty() && text.front() == '+') ++first;  // std::from_chars rejects '+'
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || first == last) return std::nullopt;
    return ExtendedWeight(v);
}

std::string ExtendedWeight::str() const {
    if (is_pos_infinity()) return "inf";
    if (is_neg_infinity()) return "-inf";
    return std::to_string(value_);
}

}  // namespace minflip
