#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace qbench {

// Partition of `total` into a fixed number of non-negative parts.
// parts.size() is the dimension d of the enumeration P_{total,d}.
struct Partition {
    std::vector<int> parts;
    int total = 0;

    int size() const { return static_cast<int>(parts.size()); }
    int operator[](int i) const { return parts[static_cast<size_t>(i)]; }
};

// ln Gamma(x) for x > 0.  Throws std::domain_error otherwise.
double log_gamma(double x);

// Generalized binomial coefficient Gamma(upper+1) / (Gamma(lower+1) * Gamma(upper-lower+1)).
// Requires upper - lower > -1 so the denominator Gamma stays off the poles.
// Agrees exactly with the integer binomial for integer upper >= lower.
double binom_real(double upper, int lower);
double log_binom_real(double upper, int lower);

// Multinomial coefficient total! / prod_j parts[j]!.  The parts must sum to total.
double multinomial(int total, const Partition& parts);
double log_multinomial(int total, const Partition& parts);

// Real-shifted multinomial Gamma(total+beta+1) / (Gamma(parts[0]+beta+1) * prod_{j>=1} Gamma(parts[j]+1)),
// i.e. the multinomial of (total+beta) over (parts + (beta,0,...,0)).
double log_multinomial_beta(double beta, int total, const Partition& parts);

// All partitions of `total` into `d` non-negative ordered parts, enumerated once,
// starting from (total,0,...,0) and ending at (0,...,0,total).
// The count equals binom(total+d-1, d-1).
std::vector<Partition> partitions(int total, int d);
long partition_count(int total, int d);

// Modified Bessel function of the first kind, order zero.
double bessel_i0(double x);

}  // namespace qbench
