#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sparsesel {

enum class Errc {
    constant_column,
    dimension_mismatch,
    invalid_dataset,
    loss_mismatch,
    missing_sigma,
    invalid_delta,
    d_out_of_range,
    empty_support,
    infeasible_design,
    linear_prob_out_of_range,
    unknown_guarantee,
    invalid_argument,
    parse_error,
    missing_column,
};

std::string_view to_string(Errc code);

/// Exception carrying a machine-readable code. The CLI maps codes to exit
/// statuses; library callers usually only need `what()`.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& msg)
        : std::runtime_error(std::string(to_string(code)) + ": " + msg), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

inline std::string_view to_string(Errc code)
{
    switch (code) {
    case Errc::constant_column: return "ConstantColumn";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::invalid_dataset: return "InvalidDataset";
    case Errc::loss_mismatch: return "LossMismatch";
    case Errc::missing_sigma: return "MissingSigma";
    case Errc::invalid_delta: return "InvalidDelta";
    case Errc::d_out_of_range: return "DOutOfRange";
    case Errc::empty_support: return "EmptySupport";
    case Errc::infeasible_design: return "InfeasibleDesign";
    case Errc::linear_prob_out_of_range: return "LinearProbOutOfRange";
    case Errc::unknown_guarantee: return "UnknownGuarantee";
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::parse_error: return "ParseError";
    case Errc::missing_column: return "MissingColumn";
    }
    return "Unknown";
}

} // namespace sparsesel
