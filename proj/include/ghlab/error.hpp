#ifndef GHLAB_ERROR_HPP
#define GHLAB_ERROR_HPP

#include <stdexcept>
#include <string>

namespace ghlab {

enum class ErrCode {
    parse,
    duplicate_puncture,
    length_mismatch,
    invalid_parameter,
    eval_at_puncture,
    step_too_large,
    string_proximity,
    zero_vector,
    non_unit_vector,
    origin_puncture,
    convergence_unattainable,
    contour_through_zero,
    pole_at_u,
    zero_fibre_coordinate,
    zero_separation_too_small,
    accumulation_flagged,
    io,
};

/// Single exception type for all contract violations; `code()` identifies
/// which precondition or validation failed. `index_a`/`index_b` carry the
/// offending puncture/zero indices when the error concerns specific entries.
class Error : public std::runtime_error {
public:
    Error(ErrCode code, std::string msg, int index_a = -1, int index_b = -1, double value = 0.0)
        : std::runtime_error(std::move(msg)), code_(code), index_a_(index_a), index_b_(index_b), value_(value) {}

    ErrCode code() const { return code_; }
    int index_a() const { return index_a_; }
    int index_b() const { return index_b_; }
    double value() const { return value_; }

private:
    ErrCode code_;
    int index_a_;
    int index_b_;
    double value_;
};

} // namespace ghlab

#endif
