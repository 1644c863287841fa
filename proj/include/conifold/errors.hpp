#pragma once

#include <stdexcept>
#include <string>

namespace conifold {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegeneratePointError : Error { using Error::Error; };      // tip of the cone, r ~ 0
struct IllConditionedChartError : Error { using Error::Error; };  // eliminated coordinate too small
struct OutsideDomainError : Error { using Error::Error; };        // point outside a map's domain
struct InvalidScaleError : Error { using Error::Error; };         // lambda = 0 in the scaling action
struct ShapeError : Error { using Error::Error; };                // tensor not of the required symmetry type
struct OrderError : Error { using Error::Error; };                // jet order too low for the operation
struct DegreeError : Error { using Error::Error; };               // wedge degree overflow / mismatch
struct SingularMetricError : Error { using Error::Error; };       // metric not positive definite
struct NotASquareError : Error { using Error::Error; };           // (2,2) form not positive
struct PerturbationTooLargeError : Error { using Error::Error; };
struct SolveError : Error { using Error::Error; };                // linear solve failed
struct FitFailureError : Error { using Error::Error; };           // regression input inadequate
struct EvaluationError : Error { using Error::Error; };           // field not evaluable / non-finite
struct ConfigError : Error { using Error::Error; };               // bad CLI config / usage

}  // namespace conifold
