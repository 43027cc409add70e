#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace hilfer {

/// Base of the library's exception hierarchy. `kind()` is a stable,
/// machine-readable tag; front ends use it to classify failures without
/// parsing messages.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what_arg)
        : std::runtime_error(what_arg), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

/// The caller handed us something malformed: orders, shapes, files, budgets.
class InputError : public Error {
public:
    using Error::Error;
};

/// A well-posed computation failed to reach its accuracy or iteration target.
class NumericError : public Error {
public:
    using Error::Error;
};

struct InvalidParams final : InputError {
    explicit InvalidParams(const std::string& w) : InputError("invalid_params", w) {}
};

struct InvalidOrder final : InputError {
    explicit InvalidOrder(const std::string& w) : InputError("invalid_order", w) {}
};

struct NonSquare final : InputError {
    explicit NonSquare(const std::string& w) : InputError("non_square", w) {}
};

struct NonMonotonePsi final : InputError {
    explicit NonMonotonePsi(const std::string& w) : InputError("non_monotone_psi", w) {}
};

struct DelayOutOfRange final : InputError {
    explicit DelayOutOfRange(const std::string& w) : InputError("delay_out_of_range", w) {}
};

/// Increment length that is not a positive multiple of the grid step.
struct HNotAligned final : InputError {
    explicit HNotAligned(const std::string& w) : InputError("h_not_aligned", w) {}
};

struct BudgetTooSmall final : InputError {
    explicit BudgetTooSmall(const std::string& w) : InputError("budget_too_small", w) {}
};

/// Unweighted evaluation requested at the left endpoint where the trajectory
/// is unbounded (weight exponent below one).
struct SingularEndpoint final : InputError {
    explicit SingularEndpoint(const std::string& w) : InputError("singular_endpoint", w) {}
};

/// Problem-file syntax failure; `line` is 1-based, 0 when unknown.
struct ParseError final : InputError {
    explicit ParseError(const std::string& w, std::size_t line_no = 0)
        : InputError("parse_error",
                     line_no ? w + " (line " + std::to_string(line_no) + ")" : w),
          line(line_no) {}
    std::size_t line;
};

/// Structurally valid input whose contents violate a documented invariant;
/// `field` names the offending entry, e.g. "nonlocal.anchors".
struct ValidationError final : InputError {
    ValidationError(std::string field_name, const std::string& w)
        : InputError("validation_error", field_name + ": " + w),
          field(std::move(field_name)) {}
    std::string field;
};

/// A series tail bound could not be pushed under tol within the term budget,
/// or the argument lies outside the certified convergence region.
struct NonConvergence final : NumericError {
    NonConvergence(const std::string& w, double last_bound_, std::size_t terms_)
        : NumericError("non_convergence", w), last_bound(last_bound_), terms(terms_) {}
    double last_bound;    ///< best tail bound achieved, +inf if none was certified
    std::size_t terms;
};

/// Fixed-point iteration ran out of iterations before meeting tol. Signals a
/// contraction constant at or above one, or a tolerance too tight for the grid.
struct MaxIterExceeded final : NumericError {
    MaxIterExceeded(const std::string& w, double last_residual_, std::size_t iterations_)
        : NumericError("max_iter_exceeded", w),
          last_residual(last_residual_), iterations(iterations_) {}
    double last_residual;    ///< weighted sup-norm distance of the last two iterates
    std::size_t iterations;
};

}  // namespace hilfer
