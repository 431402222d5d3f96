#pragma once

#include <string_view>

#include "qgeo/errors.hpp"

namespace qgeo {

enum class DivergenceClass {
    Linear,
    SuperlinearSubquadratic,
    AtLeastQuadratic,
    Infinite,
    Inconclusive,
};

enum class ContractionVerdict {
    Contracting,
    NotContracting,
    Inconclusive,
};

enum class MorseVerdict {
    MorseAtScale,
    NotMorse,
    Inconclusive,
};

inline const char* to_string(DivergenceClass c) {
    switch (c) {
        case DivergenceClass::Linear: return "linear";
        case DivergenceClass::SuperlinearSubquadratic: return "superlinear-subquadratic";
        case DivergenceClass::AtLeastQuadratic: return "at-least-quadratic";
        case DivergenceClass::Infinite: return "infinite";
        case DivergenceClass::Inconclusive: return "inconclusive";
    }
    return "?";
}

inline const char* to_string(ContractionVerdict v) {
    switch (v) {
        case ContractionVerdict::Contracting: return "contracting";
        case ContractionVerdict::NotContracting: return "not-contracting";
        case ContractionVerdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

inline const char* to_string(MorseVerdict v) {
    switch (v) {
        case MorseVerdict::MorseAtScale: return "morse-at-scale";
        case MorseVerdict::NotMorse: return "not-morse";
        case MorseVerdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

inline DivergenceClass divergence_class_from_string(std::string_view s) {
    if (s == "linear") return DivergenceClass::Linear;
    if (s == "superlinear-subquadratic") return DivergenceClass::SuperlinearSubquadratic;
    if (s == "at-least-quadratic") return DivergenceClass::AtLeastQuadratic;
    if (s == "infinite") return DivergenceClass::Infinite;
    if (s == "inconclusive") return DivergenceClass::Inconclusive;
    throw InputError("unknown divergence class: " + std::string(s));
}

} // namespace qgeo
