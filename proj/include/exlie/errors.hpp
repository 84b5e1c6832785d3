#pragma once

#include <stdexcept>
#include <string>

namespace exlie {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// exactmath
struct DivisionByZero : Error { using Error::Error; };
struct DescriptorMismatch : Error { using Error::Error; };
struct InvalidField : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };

// graphs
struct BoundsViolation : Error { using Error::Error; };
struct MalformedRange : Error { using Error::Error; };

// liepresent
struct TruncatedAtCap : Error { using Error::Error; };
struct IndexOutOfRange : Error { using Error::Error; };
struct IdentityViolation : Error { using Error::Error; };

// extremal
struct ZeroElement : Error { using Error::Error; };
struct NotExtremal : Error { using Error::Error; };
struct HypothesisViolated : Error { using Error::Error; };

// realizations
struct AxisThroughCentre : Error { using Error::Error; };
struct NotIsotropic : Error { using Error::Error; };
struct OddN : Error { using Error::Error; };
struct ParameterDegenerate : Error { using Error::Error; };
struct NoSolution : Error { using Error::Error; };

// certify
struct NoRootInField : Error { using Error::Error; };
struct ConditionViolated : Error { using Error::Error; };
struct NormalizationFailed : Error { using Error::Error; };
struct FormMismatch : Error { using Error::Error; };
struct StructureMismatch : Error { using Error::Error; };

}  // namespace exlie
