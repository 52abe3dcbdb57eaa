#pragma once

#include <stdexcept>
#include <string>

namespace cryst {

struct OrderCapExceeded : std::runtime_error {
    explicit OrderCapExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

struct InconsistentVectorSystem : std::runtime_error {
    explicit InconsistentVectorSystem(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotCenterless : std::runtime_error {
    explicit NotCenterless(const std::string& msg) : std::runtime_error(msg) {}
};

struct NormalizerNotFinite : std::runtime_error {
    explicit NormalizerNotFinite(const std::string& msg) : std::runtime_error(msg) {}
};

// infinite normalizer by construction: point group inside {+-I}
struct CentralPointGroup : std::runtime_error {
    explicit CentralPointGroup(const std::string& msg) : std::runtime_error(msg) {}
};

struct NonIntegralRebase : std::logic_error {
    explicit NonIntegralRebase(const std::string& msg) : std::logic_error(msg) {}
};

struct NotSublattice : std::invalid_argument {
    explicit NotSublattice(const std::string& msg) : std::invalid_argument(msg) {}
};

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace cryst
