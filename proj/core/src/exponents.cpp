#include "maxcomm/exponents.hpp"

#include <cmath>
#include <stdexcept>

namespace maxcomm {

namespace {

bool close_rel(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return std::abs(a - b) <= Exponents::kRelTol * std::max(1.0, scale);
}

}  // namespace

void Exponents::validate_ranges() const {
    if (n < 1) throw std::invalid_argument("dimension n must be >= 1");
    if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("beta must lie in (0,1)");
    if (!(p >= 1.0)) throw std::invalid_argument("p must lie in [1, inf]");
    if (!(q >= 1.0)) throw std::invalid_argument("q must lie in [1, inf]");
    if (lambda < 0.0 || lambda > n) throw std::invalid_argument("lambda must lie in [0, n]");
    if (mu < 0.0 || mu > n) throw std::invalid_argument("mu must lie in [0, n]");
    if (!(alpha > 0.0 && alpha < n)) throw std::invalid_argument("alpha must lie in (0, n)");
}

bool Exponents::lebesgue_ok() const {
    if (!(p > 1.0) || !(p < n / beta)) return false;
    if (std::isinf(q)) return false;
    return close_rel(1.0 / q, 1.0 / p - beta / n);
}

bool Exponents::morrey_a_ok() const {
    if (!(p > 1.0) || !(p < n / beta)) return false;
    if (!(lambda > 0.0) || !(lambda < n - beta * p)) return false;
    if (std::isinf(q)) return false;
    return close_rel(1.0 / q, 1.0 / p - beta / (n - lambda));
}

bool Exponents::morrey_b_ok() const {
    if (!(p > 1.0) || !(p < n / beta)) return false;
    if (!(lambda > 0.0) || !(lambda < n - beta * p)) return false;
    if (std::isinf(q)) return false;
    if (!close_rel(1.0 / q, 1.0 / p - beta / n)) return false;
    return close_rel(lambda / p, mu / q);
}

double Exponents::conjugate_p() const {
    if (p == 1.0) return kInfExponent;
    if (std::isinf(p)) return 1.0;
    return p / (p - 1.0);
}

Exponents Exponents::lebesgue(int n, double beta, double p) {
    Exponents e;
    e.n = n;
    e.beta = beta;
    e.alpha = beta;
    e.p = p;
    e.q = 1.0 / (1.0 / p - beta / n);
    e.validate_ranges();
    if (!e.lebesgue_ok()) throw std::invalid_argument("no Lebesgue regime for these (n, beta, p)");
    return e;
}

Exponents Exponents::morrey_a(int n, double beta, double p, double lambda) {
    Exponents e;
    e.n = n;
    e.beta = beta;
    e.alpha = beta;
    e.p = p;
    e.lambda = lambda;
    e.q = 1.0 / (1.0 / p - beta / (n - lambda));
    e.validate_ranges();
    if (!e.morrey_a_ok()) {
        throw std::invalid_argument("no Morrey regime A for these (n, beta, p, lambda)");
    }
    return e;
}

Exponents Exponents::morrey_b(int n, double beta, double p, double lambda) {
    Exponents e;
    e.n = n;
    e.beta = beta;
    e.alpha = beta;
    e.p = p;
    e.lambda = lambda;
    e.q = 1.0 / (1.0 / p - beta / n);
    e.mu = lambda * e.q / p;
    e.validate_ranges();
    if (!e.morrey_b_ok()) {
        throw std::invalid_argument("no Morrey regime B for these (n, beta, p, lambda)");
    }
    return e;
}

}  // namespace maxcomm
