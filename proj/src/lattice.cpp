#include "lpp/lattice.hpp"

#include "lpp/error.hpp"

namespace lpp {

std::string to_string(Site s) {
    return "(" + std::to_string(s.x) + "," + std::to_string(s.y) + ")";
}

std::string to_string(const LatticeWindow& w) {
    return "[" + std::to_string(w.x_min) + "," + std::to_string(w.x_max) + "]x[" +
           std::to_string(w.y_min) + "," + std::to_string(w.y_max) + "]";
}

void validate(const LatticeWindow& w) {
    if (!w.valid()) throw InvalidWindow("empty lattice window " + to_string(w));
}

}  // namespace lpp
