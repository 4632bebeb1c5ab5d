#ifndef ARAQL_KEY_HPP
#define ARAQL_KEY_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <variant>

namespace araql {

// Row/column key: an integer atom, a text atom, or an ordered pair of keys
// (pairs arise from Kronecker products and from the {1}/{2} tagging used by
// union and join). Totally ordered: all integer atoms < all text atoms <
// all pairs; integers by value, text bytewise, pairs lexicographically.
// That fixed order is what makes sub(A,B,n) and every fold deterministic.
class Key {
public:
    Key() : rep_(std::int64_t{0}) {}

    static Key of(std::int64_t i) { return Key(Rep(i)); }
    static Key of(std::string s) { return Key(Rep(std::move(s))); }
    static Key of(const char* s) { return Key(Rep(std::string(s))); }
    static Key pair(Key a, Key b) {
        return Key(Rep(std::make_shared<const std::pair<Key, Key>>(std::move(a), std::move(b))));
    }

    bool is_int() const { return rep_.index() == 0; }
    bool is_text() const { return rep_.index() == 1; }
    bool is_pair() const { return rep_.index() == 2; }

    std::int64_t int_value() const { return std::get<0>(rep_); }
    const std::string& text_value() const { return std::get<1>(rep_); }
    const Key& first() const { return std::get<2>(rep_)->first; }
    const Key& second() const { return std::get<2>(rep_)->second; }

    bool operator==(const Key& o) const;
    bool operator!=(const Key& o) const { return !(*this == o); }
    bool operator<(const Key& o) const;

    std::string to_string() const;

private:
    using PairRep = std::shared_ptr<const std::pair<Key, Key>>;
    using Rep = std::variant<std::int64_t, std::string, PairRep>;

    explicit Key(Rep r) : rep_(std::move(r)) {}

    Rep rep_;
};

} // namespace araql

#endif
