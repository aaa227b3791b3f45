#pragma once

#include <stdexcept>
#include <string>

namespace cartan {

// Root of the library's exception hierarchy.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- construction / evaluation -------------------------------------------
struct DegenerateChart : Error { using Error::Error; };        // |s_u x s_v| ~ 0
struct UnknownSurface : Error { using Error::Error; };         // bad builtin name
struct BadParams : Error { using Error::Error; };              // invalid parameter pack
struct IrregularCurve : Error { using Error::Error; };         // vanishing speed
struct NotClosed : Error { using Error::Error; };              // closure declared but violated
struct TooFewSamples : Error { using Error::Error; };
struct GridMismatch : Error { using Error::Error; };           // sample grids disagree

// --- rolling / ruling ------------------------------------------------------
struct SpeedMismatch : Error { using Error::Error; };
struct InitialConditionMismatch : Error { using Error::Error; };
struct VanishingNormalCurvature : Error { using Error::Error; };

// --- ribbons / assembly ----------------------------------------------------
struct UndefinedStriction : Error { using Error::Error; };     // rulings parallel, no striction point

// --- topology ----------------------------------------------------------------
struct AmbiguousCluster : Error { using Error::Error; };       // vertex clusters too close to separate
struct MissingAngles : Error { using Error::Error; };          // vertex lacks inner-angle data

// --- configuration / io ------------------------------------------------------
struct ParseError : Error {
    int line;
    ParseError(int line_, const std::string& what_)
        : Error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

struct ValidationError : Error {
    std::string field;
    ValidationError(std::string field_, const std::string& what_)
        : Error(field_ + ": " + what_), field(std::move(field_)) {}
};

struct IoError : Error {
    std::string path;
    IoError(std::string path_, const std::string& what_)
        : Error(path_ + ": " + what_), path(std::move(path_)) {}
};

}  // namespace cartan
