#ifndef CFORGE_ERROR_HPP
#define CFORGE_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace cforge
{

enum class ErrorCode {
    ZeroBudget,
    NonUnitDivisor,
    NotDivisible,
    NonPositiveConstantTerm,
    SingularAtOrigin,
    NonVanishingConstant,
    DegenerateCurve,
    NonOrthonormalFrame,
    MuOutOfRange,
    NotOrthonormal,
    GenericityViolated,
    DegenerateFrame,
    DegenerateEdge,
    NotAdapted,
    WrongOrientation,
    NonGeneric,
    InvalidMetric,
    MatrixSingular,
    BudgetExhausted,
    CurvatureTooSmall,
    ParseError
};

constexpr std::string_view to_string(ErrorCode code)
{
    switch (code) {
        case ErrorCode::ZeroBudget:
            return "ZeroBudget";
        case ErrorCode::NonUnitDivisor:
            return "NonUnitDivisor";
        case ErrorCode::NotDivisible:
            return "NotDivisible";
        case ErrorCode::NonPositiveConstantTerm:
            return "NonPositiveConstantTerm";
        case ErrorCode::SingularAtOrigin:
            return "SingularAtOrigin";
        case ErrorCode::NonVanishingConstant:
            return "NonVanishingConstant";
        case ErrorCode::DegenerateCurve:
            return "DegenerateCurve";
        case ErrorCode::NonOrthonormalFrame:
            return "NonOrthonormalFrame";
        case ErrorCode::MuOutOfRange:
            return "MuOutOfRange";
        case ErrorCode::NotOrthonormal:
            return "NotOrthonormal";
        case ErrorCode::GenericityViolated:
            return "GenericityViolated";
        case ErrorCode::DegenerateFrame:
            return "DegenerateFrame";
        case ErrorCode::DegenerateEdge:
            return "DegenerateEdge";
        case ErrorCode::NotAdapted:
            return "NotAdapted";
        case ErrorCode::WrongOrientation:
            return "WrongOrientation";
        case ErrorCode::NonGeneric:
            return "NonGeneric";
        case ErrorCode::InvalidMetric:
            return "InvalidMetric";
        case ErrorCode::MatrixSingular:
            return "MatrixSingular";
        case ErrorCode::BudgetExhausted:
            return "BudgetExhausted";
        case ErrorCode::CurvatureTooSmall:
            return "CurvatureTooSmall";
        case ErrorCode::ParseError:
            return "ParseError";
    }
    return "Unknown";
}

// Every failure raised by the library carries one of the codes above so that
// callers (and the CLI exit-code mapping) can branch without parsing text.
class Error : public std::runtime_error
{
public:
    Error(ErrorCode code, const std::string &what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), m_code(code)
    {
    }

    ErrorCode code() const noexcept
    {
        return m_code;
    }

private:
    ErrorCode m_code;
};

} // namespace cforge

#endif
