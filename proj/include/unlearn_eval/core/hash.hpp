#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace unlearn_eval {

// FNV-1a, 64-bit. Used for content addressing and fingerprints; not
// cryptographic.
inline std::uint64_t fnv1a64(const void* data, std::size_t size,
                             std::uint64_t seed = 0xcbf29ce484222325ull) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    std::uint64_t h = seed;
    for (std::size_t i = 0; i < size; ++i) {
        h ^= bytes[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::uint64_t fnv1a64(std::string_view text,
                             std::uint64_t seed = 0xcbf29ce484222325ull) {
    return fnv1a64(text.data(), text.size(), seed);
}

inline std::string hex64(std::uint64_t value) {
    static const char digits[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[value & 0xf];
        value >>= 4;
    }
    return out;
}

inline std::string content_fingerprint(std::string_view payload) {
    return hex64(fnv1a64(payload));
}

}  // namespace unlearn_eval
