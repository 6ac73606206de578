#pragma once

#include <cstdint>

#include <doctest.h>

#include "lstab/error.hpp"

// CHECK that `expr` throws lstab::Error of the given kind.
#define CHECK_ERROR_KIND(expr, expected)                                                           \
    do {                                                                                           \
        bool thrown_ = false;                                                                      \
        try {                                                                                      \
            (void)(expr);                                                                          \
        } catch (const lstab::Error& e_) {                                                         \
            thrown_ = true;                                                                        \
            CHECK_MESSAGE(e_.kind() == (expected), e_.what());                                     \
        }                                                                                          \
        CHECK_MESSAGE(thrown_, "expected an lstab::Error from " #expr);                            \
    } while (false)

namespace testing {

// Deterministic RNG for property tests.
inline std::uint64_t seed_for(const char* name) {
    std::uint64_t h = 1469598103934665603ULL;
    for (const char* p = name; *p; ++p)
        h = (h ^ static_cast<unsigned char>(*p)) * 1099511628211ULL;
    return h;
}

} // namespace testing
