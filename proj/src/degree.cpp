#include "kgraph/degree.hpp"

#include "kgraph/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>

namespace kgraph {

Degree::Degree(std::initializer_list<int> entries) : Degree(std::vector<int>(entries)) {}

Degree::Degree(std::vector<int> entries) : entries_(std::move(entries)) {
    for (int e : entries_) {
        if (e < 0) throw PreconditionError("degree entries must be non-negative");
    }
}

Degree Degree::unit(std::size_t k, std::size_t color) {
    Degree d(k);
    d.entries_.at(color) = 1;
    return d;
}

Degree Degree::ones(std::size_t k, int scale) { return Degree(std::vector<int>(k, scale)); }

int Degree::total() const {
    int t = 0;
    for (int e : entries_) t += e;
    return t;
}

bool Degree::is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](int e) { return e == 0; });
}

bool Degree::le(const Degree& other) const {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i] > other.entries_[i]) return false;
    }
    return true;
}

Degree operator+(const Degree& a, const Degree& b) {
    Degree r = a;
    for (std::size_t i = 0; i < r.entries_.size(); ++i) r.entries_[i] += b.entries_[i];
    return r;
}

Degree operator-(const Degree& a, const Degree& b) {
    if (!b.le(a)) throw PreconditionError("degree subtraction leaves N^k: " + to_string(a) + " - " + to_string(b));
    Degree r = a;
    for (std::size_t i = 0; i < r.entries_.size(); ++i) r.entries_[i] -= b.entries_[i];
    return r;
}

Degree operator*(int scale, const Degree& a) {
    Degree r = a;
    for (int& e : r.entries_) e *= scale;
    return r;
}

Degree join(const Degree& a, const Degree& b) {
    Degree r = a;
    for (std::size_t i = 0; i < r.entries_.size(); ++i) r.entries_[i] = std::max(a.entries_[i], b.entries_[i]);
    return r;
}

GroupElement GroupElement::difference(const Degree& m, const Degree& n) {
    GroupElement g(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) g.entries_[i] = m[i] - n[i];
    return g;
}

bool GroupElement::is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](int e) { return e == 0; });
}

Degree GroupElement::positive_part() const {
    Degree d(entries_.size());
    for (std::size_t i = 0; i < entries_.size(); ++i) d[i] = std::max(entries_[i], 0);
    return d;
}

Degree GroupElement::negative_part() const {
    Degree d(entries_.size());
    for (std::size_t i = 0; i < entries_.size(); ++i) d[i] = std::max(-entries_[i], 0);
    return d;
}

int GroupElement::max_abs() const {
    int m = 0;
    for (int e : entries_) m = std::max(m, std::abs(e));
    return m;
}

GroupElement operator+(const GroupElement& a, const GroupElement& b) {
    GroupElement r = a;
    for (std::size_t i = 0; i < r.entries_.size(); ++i) r.entries_[i] += b.entries_[i];
    return r;
}

GroupElement operator-(const GroupElement& a, const GroupElement& b) { return a + (-b); }

GroupElement GroupElement::operator-() const {
    GroupElement r = *this;
    for (int& e : r.entries_) e = -e;
    return r;
}

namespace {
std::string join_ints(const std::vector<int>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    return s + ")";
}

std::vector<int> parse_ints(std::string_view literal, std::size_t k) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos <= literal.size()) {
        std::size_t comma = literal.find(',', pos);
        std::string_view tok = literal.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
        while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
        if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
        int value = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
        if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
            throw InvalidInput("malformed integer list: '" + std::string(literal) + "'");
        }
        out.push_back(value);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    if (out.size() != k) {
        throw InvalidInput("expected " + std::to_string(k) + " entries in '" + std::string(literal) + "'");
    }
    return out;
}
}  // namespace

std::string to_string(const Degree& d) { return join_ints(d.entries()); }
std::string to_string(const GroupElement& g) { return join_ints(g.entries()); }

Degree parse_degree(std::string_view literal, std::size_t k) {
    auto v = parse_ints(literal, k);
    for (int e : v) {
        if (e < 0) throw InvalidInput("degree entries must be non-negative: '" + std::string(literal) + "'");
    }
    return Degree(std::move(v));
}

GroupElement parse_group_element(std::string_view literal, std::size_t k) {
    return GroupElement(parse_ints(literal, k));
}

}  // namespace kgraph
