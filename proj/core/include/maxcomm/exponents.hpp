#pragma once

#include <limits>

namespace maxcomm {

inline constexpr double kInfExponent = std::numeric_limits<double>::infinity();

/// Index bundle (beta, p, q, lambda, mu, alpha, n) with the standard
/// relations between them. Validators are exact to relative tolerance 1e-12.
struct Exponents {
    int n = 1;
    double beta = 0.5;
    double p = 1.0;
    double q = 1.0;
    double lambda = 0.0;
    double mu = 0.0;
    double alpha = 0.5;

    static constexpr double kRelTol = 1e-12;

    /// 1/q = 1/p - beta/n with 1 < p < n/beta.
    bool lebesgue_ok() const;

    /// 1/q = 1/p - beta/(n - lambda) with 0 < lambda < n - beta*p.
    bool morrey_a_ok() const;

    /// 1/q = 1/p - beta/n, lambda/p = mu/q, 0 < lambda < n - beta*p.
    bool morrey_b_ok() const;

    /// Conjugate index p' = p/(p-1); p = 1 gives infinity.
    double conjugate_p() const;

    /// Range checks shared by all regimes; throws std::invalid_argument.
    void validate_ranges() const;

    static Exponents lebesgue(int n, double beta, double p);
    static Exponents morrey_a(int n, double beta, double p, double lambda);
    static Exponents morrey_b(int n, double beta, double p, double lambda);
};

}  // namespace maxcomm
