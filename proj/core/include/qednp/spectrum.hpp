#pragma once

#include <vector>

#include "qednp/grid.hpp"

namespace qednp {

enum class Normalization { Peak, Area, Raw };

struct Spectrum {
    FrequencyGrid grid;
    std::vector<double> density;
    Normalization norm = Normalization::Raw;
};

// Rescales a raw spectrum; throws DomainError if the density is all zero
// and a non-raw normalization is requested.
Spectrum normalized(Spectrum s, Normalization n);

double area(const Spectrum& s);

struct Peak {
    double position;  // parabolic refinement through the three top samples
    double height;
};

// Strict local maxima with height >= rel_height * global max, sorted by position.
std::vector<Peak> find_peaks(const Spectrum& s, double rel_height = 1e-3);

}  // namespace qednp
