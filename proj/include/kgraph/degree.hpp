#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace kgraph {

/// An element of N^k.
class Degree {
public:
    Degree() = default;
    explicit Degree(std::size_t k) : entries_(k, 0) {}
    Degree(std::initializer_list<int> entries);
    explicit Degree(std::vector<int> entries);

    static Degree unit(std::size_t k, std::size_t color);  // color is 0-based
    static Degree ones(std::size_t k, int scale = 1);

    std::size_t size() const { return entries_.size(); }
    int operator[](std::size_t i) const { return entries_[i]; }
    int& operator[](std::size_t i) { return entries_[i]; }
    const std::vector<int>& entries() const { return entries_; }
    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }

    int total() const;
    bool is_zero() const;

    /// Componentwise order.
    bool le(const Degree& other) const;

    friend Degree operator+(const Degree& a, const Degree& b);
    /// Requires b <= a componentwise.
    friend Degree operator-(const Degree& a, const Degree& b);
    friend Degree operator*(int scale, const Degree& a);
    friend Degree join(const Degree& a, const Degree& b);

    friend bool operator==(const Degree&, const Degree&) = default;
    /// Lexicographic; for use as a container key only.
    friend auto operator<=>(const Degree&, const Degree&) = default;

private:
    std::vector<int> entries_;
};

/// An element of Z^k.
class GroupElement {
public:
    GroupElement() = default;
    explicit GroupElement(std::size_t k) : entries_(k, 0) {}
    GroupElement(std::initializer_list<int> entries) : entries_(entries) {}
    explicit GroupElement(std::vector<int> entries) : entries_(std::move(entries)) {}

    static GroupElement difference(const Degree& m, const Degree& n);

    std::size_t size() const { return entries_.size(); }
    int operator[](std::size_t i) const { return entries_[i]; }
    int& operator[](std::size_t i) { return entries_[i]; }
    const std::vector<int>& entries() const { return entries_; }

    bool is_zero() const;
    /// g+ = g v 0.
    Degree positive_part() const;
    /// g- = (-g) v 0.
    Degree negative_part() const;
    int max_abs() const;

    friend GroupElement operator+(const GroupElement& a, const GroupElement& b);
    friend GroupElement operator-(const GroupElement& a, const GroupElement& b);
    GroupElement operator-() const;

    friend bool operator==(const GroupElement&, const GroupElement&) = default;
    friend auto operator<=>(const GroupElement&, const GroupElement&) = default;

private:
    std::vector<int> entries_;
};

std::string to_string(const Degree& d);
std::string to_string(const GroupElement& g);

/// Comma-separated integers, e.g. "1,0". Throws InvalidInput.
Degree parse_degree(std::string_view literal, std::size_t k);
GroupElement parse_group_element(std::string_view literal, std::size_t k);

}  // namespace kgraph
