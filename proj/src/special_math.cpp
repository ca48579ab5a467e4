#include "qbench/special_math.hpp"

#include <cmath>
#include <numeric>

namespace qbench {

double log_gamma(double x) {
    if (!(x > 0.0)) {
        throw std::domain_error("log_gamma: argument must be positive, got " + std::to_string(x));
    }
    return std::lgamma(x);
}

double log_binom_real(double upper, int lower) {
    if (lower < 0) {
        throw std::domain_error("binom_real: lower index must be non-negative");
    }
    if (!(upper - lower > -1.0)) {
        throw std::domain_error("binom_real: requires upper - lower > -1, got upper=" +
                                std::to_string(upper) + " lower=" + std::to_string(lower));
    }
    return log_gamma(upper + 1.0) - log_gamma(static_cast<double>(lower) + 1.0) -
           log_gamma(upper - lower + 1.0);
}

double binom_real(double upper, int lower) {
    if (lower < 0) {
        throw std::domain_error("binom_real: lower index must be non-negative");
    }
    double tail = upper - lower;
    if (tail <= -1.0) {
        // Gamma pole in the denominator: the ratio vanishes at negative
        // integers and is rejected elsewhere.
        if (std::abs(tail - std::round(tail)) < 1e-12) {
            return 0.0;
        }
        throw std::domain_error("binom_real: requires upper - lower > -1, got upper=" +
                                std::to_string(upper) + " lower=" + std::to_string(lower));
    }
    // Falling-factorial product: exact for integer arguments and free of the
    // lgamma cancellation that hits large upper indices.
    if (lower <= 64 && (lower == 0 || lower * std::log2(std::abs(upper) + 2.0) < 900.0)) {
        double value = 1.0;
        for (int i = 1; i <= lower; ++i) {
            value *= (upper - lower + i) / static_cast<double>(i);
        }
        return value;
    }
    return std::exp(log_binom_real(upper, lower));
}

double log_multinomial(int total, const Partition& parts) {
    int sum = std::accumulate(parts.parts.begin(), parts.parts.end(), 0);
    if (sum != total) {
        throw std::invalid_argument("multinomial: parts do not sum to total");
    }
    double value = log_gamma(static_cast<double>(total) + 1.0);
    for (int p : parts.parts) {
        value -= log_gamma(static_cast<double>(p) + 1.0);
    }
    return value;
}

double multinomial(int total, const Partition& parts) {
    return std::exp(log_multinomial(total, parts));
}

double log_multinomial_beta(double beta, int total, const Partition& parts) {
    int sum = std::accumulate(parts.parts.begin(), parts.parts.end(), 0);
    if (sum != total) {
        throw std::invalid_argument("multinomial_beta: parts do not sum to total");
    }
    double value = log_gamma(static_cast<double>(total) + beta + 1.0);
    value -= log_gamma(static_cast<double>(parts.parts[0]) + beta + 1.0);
    for (size_t j = 1; j < parts.parts.size(); ++j) {
        value -= log_gamma(static_cast<double>(parts.parts[j]) + 1.0);
    }
    return value;
}

namespace {

void enumerate_partitions(int remaining, int slot, std::vector<int>& cur,
                          std::vector<Partition>& out, int total) {
    const int d = static_cast<int>(cur.size());
    if (slot == d - 1) {
        cur[static_cast<size_t>(slot)] = remaining;
        out.push_back(Partition{cur, total});
        return;
    }
    for (int v = remaining; v >= 0; --v) {
        cur[static_cast<size_t>(slot)] = v;
        enumerate_partitions(remaining - v, slot + 1, cur, out, total);
    }
}

}  // namespace

std::vector<Partition> partitions(int total, int d) {
    if (total < 0 || d < 1) {
        throw std::invalid_argument("partitions: requires total >= 0 and d >= 1");
    }
    std::vector<Partition> out;
    out.reserve(static_cast<size_t>(partition_count(total, d)));
    std::vector<int> cur(static_cast<size_t>(d), 0);
    enumerate_partitions(total, 0, cur, out, total);
    return out;
}

long partition_count(int total, int d) {
    double c = binom_real(static_cast<double>(total + d - 1), d - 1);
    return static_cast<long>(std::llround(c));
}

double bessel_i0(double x) {
    // Power series around zero; asymptotic regime is delegated to the library
    // implementation which is accurate over the range the toolkit uses.
    return std::cyl_bessel_i(0.0, std::abs(x));
}

}  // namespace qbench
