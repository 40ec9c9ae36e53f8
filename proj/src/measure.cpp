#include "blockwish/measure.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace blockwish {

double AtomicMeasure::mass() const {
    double m = 0.0;
    for (const auto& atom : atoms) m += atom.weight;
    return m;
}

AtomicMeasure AtomicMeasure::scaled(double factor) const {
    if (factor <= 0.0) throw std::invalid_argument("measure scale must be positive");
    AtomicMeasure out = *this;
    for (auto& atom : out.atoms) atom.weight *= factor;
    return out;
}

void AtomicMeasure::serialize(std::ostream& out) const {
    for (const auto& atom : atoms)
        out << atom.weight << ',' << atom.location.real() << ',' << atom.location.imag() << '\n';
}

AtomicMeasure AtomicMeasure::deserialize(std::istream& in) {
    AtomicMeasure out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string w, re, im;
        if (!std::getline(row, w, ',') || !std::getline(row, re, ',') || !std::getline(row, im))
            throw std::runtime_error("measure: bad atom line");
        out.atoms.push_back({std::stod(w), {std::stod(re), std::stod(im)}});
    }
    return out;
}

}  // namespace blockwish
