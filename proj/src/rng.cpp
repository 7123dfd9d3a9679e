#include "lpp/rng.hpp"

namespace lpp {

std::uint64_t derive_seed(std::uint64_t master, std::string_view tag, std::uint64_t index) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : tag) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return mix64(master ^ mix64(h + mix64(index + 0x632be59bd9b4e019ULL)));
}

}  // namespace lpp
