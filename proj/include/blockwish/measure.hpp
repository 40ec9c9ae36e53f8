#pragma once

#include <complex>
#include <iosfwd>
#include <vector>

namespace blockwish {

/// Finitely many weighted atoms: weights strictly positive, locations
/// distinct complex numbers.
struct AtomicMeasure {
    struct Atom {
        double weight = 0.0;
        std::complex<double> location;
    };
    std::vector<Atom> atoms;

    double mass() const;
    AtomicMeasure scaled(double factor) const;

    /// Atom list serialization, one `weight,re,im` line per atom.
    void serialize(std::ostream& out) const;
    static AtomicMeasure deserialize(std::istream& in);
};

}  // namespace blockwish
