#include "araql/key.hpp"

namespace araql {

bool Key::operator==(const Key& o) const {
    if (rep_.index() != o.rep_.index()) return false;
    switch (rep_.index()) {
        case 0: return int_value() == o.int_value();
        case 1: return text_value() == o.text_value();
        default: return first() == o.first() && second() == o.second();
    }
}

bool Key::operator<(const Key& o) const {
    if (rep_.index() != o.rep_.index()) return rep_.index() < o.rep_.index();
    switch (rep_.index()) {
        case 0: return int_value() < o.int_value();
        case 1: return text_value() < o.text_value();
        default:
            if (first() < o.first()) return true;
            if (o.first() < first()) return false;
            return second() < o.second();
    }
}

std::string Key::to_string() const {
    switch (rep_.index()) {
        case 0: return std::to_string(int_value());
        case 1: return text_value();
        default: return "(" + first().to_string() + "," + second().to_string() + ")";
    }
}

} // namespace araql
