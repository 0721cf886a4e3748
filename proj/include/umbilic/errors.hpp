#pragma once

#include <stdexcept>
#include <string>

namespace umbilic {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// chart / domain
struct OutOfChart : Error { using Error::Error; };
struct DegenerateMetric : Error { using Error::Error; };
struct StencilOutOfDomain : Error { using Error::Error; };

// surface / frame
struct NotSpacelike : Error { using Error::Error; };
struct FrameDegeneracy : Error { using Error::Error; };
struct NotNormal : Error { using Error::Error; };
struct FrameBranchCut : Error { using Error::Error; };
struct DegenerateInducedMetric : Error { using Error::Error; };

// classification / verification preconditions
struct NotOrthoUmbilical : Error { using Error::Error; };
struct SurfaceNotOrthogonal : Error { using Error::Error; };
struct NotConformallyFlat : Error { using Error::Error; };

// CLI / configuration
struct ConfigError : Error { using Error::Error; };

}  // namespace umbilic
