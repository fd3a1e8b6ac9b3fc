#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace bwbforge {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline constexpr int kMaxRank = 8;

/// Base error for invalid input (bad root data, non-dominant weights, parse failures).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when an internal consistency check fails (e.g. a peel drives a multiplicity negative).
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Fixed-capacity integer coordinate vector. The tag separates the fundamental-weight
/// basis (Weight) from the simple-root basis (Root) at compile time.
template <class Tag>
class Coords {
public:
    Coords() = default;
    explicit Coords(int rank) : size_(static_cast<std::uint8_t>(rank))
    {
        if (rank < 0 || rank > kMaxRank)
            throw Error("rank out of range: " + std::to_string(rank));
    }
    Coords(std::initializer_list<int> values) : Coords(static_cast<int>(values.size()))
    {
        int i = 0;
        for (int v : values)
            c_[i++] = v;
    }
    explicit Coords(const std::vector<int>& values) : Coords(static_cast<int>(values.size()))
    {
        for (std::size_t i = 0; i < values.size(); ++i)
            c_[i] = values[i];
    }

    int size() const { return size_; }
    int operator[](int i) const { return c_[i]; }
    int& operator[](int i) { return c_[i]; }

    std::vector<int> to_vector() const { return {c_.begin(), c_.begin() + size_}; }

    bool is_zero() const
    {
        for (int i = 0; i < size_; ++i)
            if (c_[i] != 0)
                return false;
        return true;
    }

    Coords& operator+=(const Coords& o)
    {
        for (int i = 0; i < size_; ++i)
            c_[i] += o.c_[i];
        return *this;
    }
    Coords& operator-=(const Coords& o)
    {
        for (int i = 0; i < size_; ++i)
            c_[i] -= o.c_[i];
        return *this;
    }
    friend Coords operator+(Coords a, const Coords& b) { return a += b; }
    friend Coords operator-(Coords a, const Coords& b) { return a -= b; }
    friend Coords operator-(Coords a)
    {
        for (int i = 0; i < a.size_; ++i)
            a.c_[i] = -a.c_[i];
        return a;
    }
    friend Coords operator*(int s, Coords a)
    {
        for (int i = 0; i < a.size_; ++i)
            a.c_[i] *= s;
        return a;
    }

    friend bool operator==(const Coords& a, const Coords& b) = default;
    friend auto operator<=>(const Coords& a, const Coords& b)
    {
        if (auto cmp = a.size_ <=> b.size_; cmp != 0)
            return cmp;
        for (int i = 0; i < a.size_; ++i)
            if (auto cmp = a.c_[i] <=> b.c_[i]; cmp != 0)
                return cmp;
        return std::strong_ordering::equal;
    }

    std::size_t hash() const
    {
        std::size_t h = size_;
        for (int i = 0; i < size_; ++i)
            h = h * 1000003u ^ static_cast<std::size_t>(static_cast<std::uint32_t>(c_[i]));
        return h;
    }

private:
    std::array<std::int32_t, kMaxRank> c_{};
    std::uint8_t size_ = 0;
};

struct WeightTag {};
struct RootTag {};

/// Coefficients in the fundamental-weight basis ϖ_1..ϖ_r.
using Weight = Coords<WeightTag>;
/// Coefficients in the simple-root basis α_1..α_r.
using Root = Coords<RootTag>;

struct CoordsHash {
    template <class Tag>
    std::size_t operator()(const Coords<Tag>& c) const { return c.hash(); }
};

std::string to_string(const Weight& w);
std::string to_string(const Root& r);

}  // namespace bwbforge
