#include "bwbforge/bundle_expr.hpp"

#include <algorithm>
#include <cctype>

namespace bwbforge {

namespace {

class Parser {
public:
    Parser(const HomSpace& x, std::string_view s) : x_(x), s_(s) {}

    IrrDecomp run()
    {
        skip();
        if (pos_ == s_.size())
            throw ParseError("EmptyExpression: no bundle given", pos_);
        IrrDecomp out;
        for (;;) {
            const std::size_t start = pos_;
            auto [w, m] = term();
            if (!x_.levi().is_dominant(w))
                throw ParseError("weight " + to_string(w) + " is not " + x_.name() + "-dominant", start);
            out.add(w, m);
            skip();
            if (pos_ == s_.size())
                return out;
            expect('+');
        }
    }

private:
    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }
    bool peek(char c)
    {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    void expect(char c)
    {
        if (!peek(c))
            throw ParseError(std::string("expected '") + c + "'", pos_);
        ++pos_;
    }
    long long integer()
    {
        skip();
        const std::size_t start = pos_;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+'))
            ++pos_;
        std::size_t digits = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (pos_ == digits)
            throw ParseError("expected an integer", start);
        const std::string text(s_.substr(start, pos_ - start));
        try {
            const long long v = std::stoll(text);
            if (v < -1000000 || v > 1000000)
                throw ParseError("integer out of range", start);
            return v;
        } catch (const std::out_of_range&) {
            throw ParseError("integer out of range", start);
        }
    }
    std::pair<Weight, BigInt> term()
    {
        const int n = x_.group().rank();
        Weight w = x_.group().zero();
        skip();
        if (pos_ >= s_.size())
            throw ParseError("expected a summand", pos_);
        const char c = s_[pos_];
        if (c == 'O') {
            ++pos_;
            expect('(');
            w = x_.line(static_cast<int>(integer()));
            expect(')');
        } else if (c == 'w') {
            ++pos_;
            do {
                const std::size_t at = pos_;
                const long long i = integer();
                if (i < 1 || i > n)
                    throw ParseError("fundamental weight index out of range 1.." + std::to_string(n), at);
                w[static_cast<int>(i) - 1] += 1;
            } while (peek(',') && (++pos_, true));
        } else if (c == '[') {
            ++pos_;
            std::vector<int> v;
            do
                v.push_back(static_cast<int>(integer()));
            while (peek(',') && (++pos_, true));
            expect(']');
            if (static_cast<int>(v.size()) != n)
                throw ParseError("weight needs " + std::to_string(n) + " coordinates", pos_);
            w = Weight(v);
        } else {
            throw ParseError(std::string("unexpected '") + c + "'", pos_);
        }
        if (peek('(')) {
            ++pos_;
            w[x_.k() - 1] += static_cast<int>(integer());
            expect(')');
        }
        BigInt m = 1;
        if (peek('^')) {
            ++pos_;
            const std::size_t at = pos_;
            const long long v = integer();
            if (v < 1)
                throw ParseError("multiplicity must be positive", at);
            m = v;
        }
        return {w, m};
    }

    const HomSpace& x_;
    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

IrrDecomp parse_bundle(const HomSpace& x, std::string_view text) { return Parser(x, text).run(); }

std::string format_summand(const HomSpace& x, const Weight& lambda)
{
    const int k = x.k();
    const int n = x.group().rank();
    bool levi_zero = true, small = true;
    for (int i = 1; i <= n; ++i)
        if (i != k && lambda[i - 1] != 0) {
            levi_zero = false;
            small = small && lambda[i - 1] > 0 && lambda[i - 1] <= 3;
        }
    if (levi_zero)
        return "O(" + std::to_string(lambda[k - 1]) + ")";
    if (!small)
        return to_string(lambda);
    std::string out = "w";
    bool first = true;
    for (int i = 1; i <= n; ++i)
        if (i != k)
            for (int c = 0; c < lambda[i - 1]; ++c) {
                out += (first ? "" : ",") + std::to_string(i);
                first = false;
            }
    if (lambda[k - 1] != 0)
        out += "(" + std::to_string(lambda[k - 1]) + ")";
    return out;
}

std::string format_bundle(const HomSpace& x, const IrrDecomp& bundle)
{
    std::vector<std::pair<Weight, BigInt>> levi, lines;
    for (const auto& [w, m] : bundle.terms())
        (x.levi().is_central(w) ? lines : levi).emplace_back(w, m);
    std::reverse(levi.begin(), levi.end());
    std::string out;
    for (const auto* group : {&levi, &lines})
        for (const auto& [w, m] : *group) {
            if (!out.empty())
                out += " + ";
            out += format_summand(x, w);
            if (m != 1)
                out += "^" + m.str();
        }
    return out;
}

}  // namespace bwbforge
