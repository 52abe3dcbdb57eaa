#include "cryst/builtins.hpp"

#include <cctype>
#include <sstream>

namespace cryst {

CrystGroup gamma1() {
    IntMatrix r{{0, -1}, {1, -1}};
    IntMatrix m{{-1, 0}, {0, -1}};
    IntMatrix s{{0, 1}, {1, 0}};
    RatVector zero(2);
    return make_cryst(2, {{r, zero}, {m, zero}, {s, zero}});
}

CrystGroup gamma2() {
    IntMatrix a{{0, 1, 0}, {0, -1, -1}, {1, 1, 0}};
    IntMatrix b{{0, 0, 1}, {0, -1, -1}, {-1, 0, 1}};
    RatVector zero(3);
    return make_cryst(3, {{a, zero}, {b, zero}});
}

std::optional<CrystGroup> parse_builtin(const std::string& name) {
    std::vector<std::pair<int, long>> factors;  // (which gamma, power)
    std::size_t pos = 0;
    while (pos < name.size()) {
        if (name.compare(pos, 5, "gamma") != 0) return std::nullopt;
        pos += 5;
        if (pos >= name.size() || (name[pos] != '1' && name[pos] != '2')) return std::nullopt;
        int which = name[pos] - '0';
        ++pos;
        long power = 1;
        if (pos < name.size() && name[pos] == '^') {
            ++pos;
            std::size_t start = pos;
            while (pos < name.size() && std::isdigit(static_cast<unsigned char>(name[pos]))) ++pos;
            if (pos == start) return std::nullopt;
            power = std::stol(name.substr(start, pos - start));
            if (power < 0 || power > 16) return std::nullopt;
        }
        factors.emplace_back(which, power);
        if (pos < name.size()) {
            if (name[pos] != '*') return std::nullopt;
            ++pos;
            if (pos == name.size()) return std::nullopt;
        }
    }
    if (factors.empty()) return std::nullopt;
    CrystGroup product = CrystGroup::from_data(FinMatGroup::trivial(0), {RatVector{}});
    for (auto [which, power] : factors)
        for (long i = 0; i < power; ++i)
            product = direct_product(product, which == 1 ? gamma1() : gamma2());
    if (product.dim() == 0) return std::nullopt;
    return product;
}

}  // namespace cryst
