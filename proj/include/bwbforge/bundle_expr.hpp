#pragma once

#include <string>
#include <string_view>

#include "bwbforge/homspace.hpp"

namespace bwbforge {

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)), position_(position)
    {
    }
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// Grammar: term ("+" term)*, term := ("O(" int ")" | "w" i["," i]* | "[" ints "]") ["(" twist ")"] ["^" mult].
/// "w1,6" is ϖ1+ϖ6; a twist adds t ϖ_k. Rejects weights that are not P_k-dominant.
IrrDecomp parse_bundle(const HomSpace& x, std::string_view text);

/// Inverse of parse_bundle: Levi summands first, then line bundles.
std::string format_bundle(const HomSpace& x, const IrrDecomp& bundle);
std::string format_summand(const HomSpace& x, const Weight& lambda);

}  // namespace bwbforge
