// common.hpp — shared aliases, constants, and the error hierarchy.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace starsl {

using complex = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

inline constexpr const char* artifact_version = "0.1.0";
inline constexpr int report_schema = 1;

// Default guard for the ODE engine; tied to the grid resolution (see EdgeSolver).
inline constexpr double default_lambda_max = 1.0e4;

// Base class for all library errors.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed caller input (shapes, signs, non-finite values).
struct invalid_input_error : error {
    using error::error;
};

// |lambda| beyond the accuracy guard of the integrator.
struct lambda_range_error : error {
    using error::error;
};

// Shell count mismatch while indexing a spectrum.
struct indexing_error : error {
    indexing_error(const std::string& what, int shell_, int found_, int expected_)
        : error(what), shell(shell_), found(found_), expected(expected_) {}
    int shell;
    int found;
    int expected;
};

// Evaluation point too close to an eigenvalue pole.
struct pole_proximity_error : error {
    using error::error;
};

// A computed quantity violates a structural guarantee (e.g. negative residue).
struct numerical_error : error {
    using error::error;
};

// Denominator B(lambda) too small in the edge-m recovery.
struct near_singular_error : error {
    near_singular_error(const std::string& what, complex lambda_)
        : error(what), lambda(lambda_) {}
    complex lambda;
};

// Iteration failed to converge; carries the update-norm trace.
struct convergence_error : error {
    convergence_error(const std::string& what, std::vector<double> trace_)
        : error(what), trace(std::move(trace_)) {}
    std::vector<double> trace;
};

// Spectra handed to the IP1 -> IP2 conversion are inconsistent.
struct conversion_error : error {
    using error::error;
};

// Finite-difference oracle failure.
struct oracle_error : error {
    using error::error;
};

struct io_error : error {
    using error::error;
};

struct config_error : error {
    using error::error;
};

inline double sqr(double x) { return x * x; }

// Principal square root with Re >= 0; real negative lambda maps to i*sqrt(|lambda|).
inline complex sqrt_lambda(complex lambda) {
    complex r = std::sqrt(lambda);
    if (r.real() < 0.0) r = -r;
    return r;
}

}  // namespace starsl
