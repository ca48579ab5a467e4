#include "qbench/ensembles.hpp"

#include <cmath>
#include <stdexcept>

#include "qbench/special_math.hpp"

namespace qbench {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

[[noreturn]] void variant_mismatch(const FamilyMember& family) {
    throw std::invalid_argument("group point variant does not match family " +
                                family_tag_name(family.tag));
}

double perelomov_index(const FamilyMember& family) {
    return family.tag == FamilyTag::SqueezedVacuum ? 0.5 : family.index;
}

// (1 - tanh s, 1 + tanh s) computed as (e^-s / cosh s, e^s / cosh s); the
// direct difference underflows for s beyond ~19.
std::pair<double, double> gaussian_axis_exponents(double s) {
    double em = std::exp(-2.0 * s);
    return {2.0 * em / (1.0 + em), 2.0 / (1.0 + em)};
}

}  // namespace

std::string family_tag_name(FamilyTag tag) {
    switch (tag) {
        case FamilyTag::Qudit: return "qudit";
        case FamilyTag::SpinCoherent: return "spin";
        case FamilyTag::Coherent: return "coherent";
        case FamilyTag::SqueezedVacuum: return "squeezed-vacuum";
        case FamilyTag::GaussianOneMode: return "gaussian-1mode";
        case FamilyTag::Perelomov: return "perelomov";
    }
    return "unknown";
}

FamilyMember FamilyMember::qudit(int d) {
    if (d < 2) {
        throw std::invalid_argument("qudit family requires d >= 2");
    }
    FamilyMember m;
    m.tag = FamilyTag::Qudit;
    m.d = d;
    return m;
}

FamilyMember FamilyMember::spin(double j) {
    if (!(j > 0.0) || std::abs(2.0 * j - std::round(2.0 * j)) > 1e-12) {
        throw std::invalid_argument("spin family requires j > 0 with 2j integer");
    }
    FamilyMember m;
    m.tag = FamilyTag::SpinCoherent;
    m.index = j;
    return m;
}

FamilyMember FamilyMember::coherent(std::complex<double> gain) {
    if (!(std::abs(gain) > 0.0)) {
        throw std::invalid_argument("coherent family requires |gain| > 0");
    }
    FamilyMember m;
    m.tag = FamilyTag::Coherent;
    m.gain = gain;
    return m;
}

FamilyMember FamilyMember::squeezed_vacuum() {
    FamilyMember m;
    m.tag = FamilyTag::SqueezedVacuum;
    m.index = 0.5;
    return m;
}

FamilyMember FamilyMember::gaussian_one_mode() {
    FamilyMember m;
    m.tag = FamilyTag::GaussianOneMode;
    return m;
}

FamilyMember FamilyMember::perelomov(double j) {
    if (!(j > 0.0)) {
        throw std::invalid_argument("perelomov family requires j > 0");
    }
    FamilyMember m;
    m.tag = FamilyTag::Perelomov;
    m.index = j;
    return m;
}

double overlap_sq(const FamilyMember& family, const GroupPoint& g) {
    switch (family.tag) {
        case FamilyTag::Qudit: {
            const auto* p = std::get_if<QuditAngles>(&g);
            if (p == nullptr || static_cast<int>(p->theta.size()) != family.d - 1) {
                variant_mismatch(family);
            }
            double c = std::cos(p->theta[0]);
            return c * c;
        }
        case FamilyTag::SpinCoherent: {
            const auto* p = std::get_if<BlochAngles>(&g);
            if (p == nullptr) {
                variant_mismatch(family);
            }
            double c2 = std::cos(0.5 * p->theta);
            return std::pow(c2 * c2, 2.0 * family.index);
        }
        case FamilyTag::Coherent: {
            const auto* p = std::get_if<Displacement>(&g);
            if (p == nullptr) {
                variant_mismatch(family);
            }
            double g2 = std::norm(family.gain);
            return std::exp(-g2 * std::norm(p->alpha));
        }
        case FamilyTag::SqueezedVacuum:
        case FamilyTag::Perelomov: {
            const auto* p = std::get_if<Squeezing>(&g);
            if (p == nullptr) {
                variant_mismatch(family);
            }
            double j = perelomov_index(family);
            return std::pow(std::cosh(p->s), -2.0 * j);
        }
        case FamilyTag::GaussianOneMode: {
            const auto* p = std::get_if<DisplacedSqueezing>(&g);
            if (p == nullptr) {
                variant_mismatch(family);
            }
            // |<0|alpha,xi>|^2 = exp(-|a|^2 + Re(e^{-i theta} a^2) tanh s) / cosh s.
            // Evaluated along the squeezing principal axes, where the exponent
            // is -(1-t) u^2 - (1+t) v^2 with no cancellation at large s.
            auto [eu, ev] = gaussian_axis_exponents(p->s);
            std::complex<double> w =
                p->alpha * std::exp(std::complex<double>(0.0, -0.5 * p->theta));
            double u = w.real(), v = w.imag();
            return std::exp(-(eu * u * u + ev * v * v)) / std::cosh(p->s);
        }
    }
    variant_mismatch(family);
}

double prior_density(const PriorSpec& prior, const GroupPoint& g) {
    const FamilyMember& fam = prior.family;
    const double beta = prior.beta;
    const double lambda = prior.lambda;
    switch (fam.tag) {
        case FamilyTag::Qudit: {
            const auto* p = std::get_if<QuditAngles>(&g);
            if (p == nullptr || static_cast<int>(p->theta.size()) != fam.d - 1) {
                variant_mismatch(fam);
            }
            const int d = fam.d;
            // d_beta * cos^{2 beta} theta_0 times the Hurwitz measure weight.
            double density = binom_real(beta + d - 1, d - 1) *
                             std::exp(log_gamma(d) - (d - 1) * std::log(M_PI));
            for (int j = 0; j < d - 1; ++j) {
                double th = p->theta[static_cast<size_t>(j)];
                double w = std::cos(th) * std::pow(std::sin(th), 2 * (d - j - 1) - 1);
                density *= w;
            }
            density *= std::pow(std::cos(p->theta[0]), 2.0 * beta);
            return density;
        }
        case FamilyTag::SpinCoherent: {
            const auto* p = std::get_if<BlochAngles>(&g);
            if (p == nullptr) {
                variant_mismatch(fam);
            }
            double c = std::cos(0.5 * p->theta);
            double s = std::sin(0.5 * p->theta);
            return (beta + 1.0) * std::pow(c, 2.0 * beta + 1.0) * s / kTwoPi;
        }
        case FamilyTag::Coherent: {
            const auto* p = std::get_if<Displacement>(&g);
            if (p == nullptr) {
                variant_mismatch(fam);
            }
            if (lambda == 0.0) {
                return 1.0 / M_PI;  // uniform limit weight, unnormalizable
            }
            return lambda / M_PI * std::exp(-lambda * std::norm(p->alpha));
        }
        case FamilyTag::SqueezedVacuum:
        case FamilyTag::Perelomov: {
            const auto* p = std::get_if<Squeezing>(&g);
            if (p == nullptr) {
                variant_mismatch(fam);
            }
            if (beta == 0.0) {
                return std::tanh(p->s) / kTwoPi;  // uniform limit weight
            }
            return beta * std::sinh(p->s) * std::pow(std::cosh(p->s), -(beta + 1.0)) / kTwoPi;
        }
        case FamilyTag::GaussianOneMode: {
            const auto* p = std::get_if<DisplacedSqueezing>(&g);
            if (p == nullptr) {
                variant_mismatch(fam);
            }
            auto [eu, ev] = gaussian_axis_exponents(p->s);
            std::complex<double> w =
                p->alpha * std::exp(std::complex<double>(0.0, -0.5 * p->theta));
            double u = w.real(), v = w.imag();
            double disp = (lambda == 0.0)
                              ? 1.0
                              : lambda * std::exp(-lambda * (eu * u * u + ev * v * v));
            double sq = (beta == 0.0)
                            ? std::sinh(p->s) * std::pow(std::cosh(p->s), -2.0)
                            : beta * std::sinh(p->s) * std::pow(std::cosh(p->s), -(beta + 2.0));
            return disp * sq / (2.0 * M_PI * M_PI);
        }
    }
    variant_mismatch(fam);
}

std::vector<GroupPoint> sample_prior(const PriorSpec& prior, std::uint64_t seed, int n) {
    if (n < 1) {
        throw std::invalid_argument("sample_prior: n must be >= 1");
    }
    const FamilyMember& fam = prior.family;
    const bool noncompact = fam.tag == FamilyTag::Coherent || fam.tag == FamilyTag::SqueezedVacuum ||
                            fam.tag == FamilyTag::Perelomov || fam.tag == FamilyTag::GaussianOneMode;
    const bool needs_beta = fam.tag != FamilyTag::Coherent;
    const bool needs_lambda =
        fam.tag == FamilyTag::Coherent || fam.tag == FamilyTag::GaussianOneMode;
    if (noncompact && ((needs_beta && prior.beta == 0.0) || (needs_lambda && prior.lambda == 0.0))) {
        throw std::invalid_argument("improper uniform prior is not samplable");
    }

    Rng rng(seed);
    std::vector<GroupPoint> out;
    out.reserve(static_cast<size_t>(n));

    auto sample_squeezing = [&](double beta) {
        // cosh s = (1-u)^{-1/beta}: exact inverse CDF of the squeezing prior.
        double u = rng.uniform();
        double ch = std::pow(1.0 - u, -1.0 / beta);
        double s = std::acosh(ch);
        double theta = rng.uniform(0.0, kTwoPi);
        return Squeezing{s, theta};
    };

    for (int i = 0; i < n; ++i) {
        switch (fam.tag) {
            case FamilyTag::Qudit: {
                const int d = fam.d;
                QuditAngles a;
                a.theta.resize(static_cast<size_t>(d - 1));
                a.phi.resize(static_cast<size_t>(d - 1));
                // cos^2 theta_0 ~ Beta(beta+1, d-1); cos^2 theta_j ~ Beta(1, d-j-1).
                double u0 = (d == 2) ? std::pow(rng.uniform(), 1.0 / (prior.beta + 1.0))
                                     : rng.beta(prior.beta + 1.0, static_cast<double>(d - 1));
                a.theta[0] = std::acos(std::sqrt(u0));
                for (int jj = 1; jj < d - 1; ++jj) {
                    double b = static_cast<double>(d - jj - 1);
                    double uj = 1.0 - std::pow(1.0 - rng.uniform(), 1.0 / b);
                    a.theta[static_cast<size_t>(jj)] = std::acos(std::sqrt(uj));
                }
                for (int jj = 0; jj < d - 1; ++jj) {
                    a.phi[static_cast<size_t>(jj)] = rng.uniform(0.0, kTwoPi);
                }
                out.emplace_back(a);
                break;
            }
            case FamilyTag::SpinCoherent: {
                // z-marginal p_beta(z) = 2^-(beta+1) (beta+1) (z+1)^beta.
                double w = std::pow(rng.uniform(), 1.0 / (prior.beta + 1.0));
                double z = 2.0 * w - 1.0;
                BlochAngles a{std::acos(z), rng.uniform(0.0, kTwoPi)};
                out.emplace_back(a);
                break;
            }
            case FamilyTag::Coherent: {
                double sigma = std::sqrt(0.5 / prior.lambda);
                Displacement a{{sigma * rng.normal(), sigma * rng.normal()}};
                out.emplace_back(a);
                break;
            }
            case FamilyTag::SqueezedVacuum:
            case FamilyTag::Perelomov: {
                out.emplace_back(sample_squeezing(prior.beta));
                break;
            }
            case FamilyTag::GaussianOneMode: {
                Squeezing sq = sample_squeezing(prior.beta);
                // alpha | (s,theta): Gaussian with principal variances
                // 1/(2 lambda (1 -+ tanh s)) along e^{i theta/2} axes.
                auto [eu, ev] = gaussian_axis_exponents(sq.s);
                double su = std::sqrt(0.5 / (prior.lambda * eu));
                double sv = std::sqrt(0.5 / (prior.lambda * ev));
                std::complex<double> uv{su * rng.normal(), sv * rng.normal()};
                std::complex<double> alpha =
                    uv * std::exp(std::complex<double>(0.0, 0.5 * sq.theta));
                out.emplace_back(DisplacedSqueezing{alpha, sq.s, sq.theta});
                break;
            }
        }
    }
    return out;
}

double cat_squeezing_map(double alpha_abs) {
    if (!(alpha_abs > 0.0) || alpha_abs > 1.0) {
        throw std::domain_error("cat_squeezing_map: requires 0 < |alpha| <= 1");
    }
    double a2 = alpha_abs * alpha_abs;
    double root = std::sqrt(9.0 + 4.0 * a2 * a2);
    // tanh s* = (sqrt(9+4|a|^4) - 3) / (2 |a|^2), i.e. the stationary point of
    // sech^3(s) exp(|a|^2 tanh s).
    return 0.5 * std::log((2.0 * a2 + root) / 3.0);
}

double cat_confidence_beta(double alpha_max, double confidence) {
    if (!(confidence > 0.0) || confidence >= 1.0) {
        throw std::domain_error("cat_confidence_beta: confidence must lie in (0,1)");
    }
    double s_star = cat_squeezing_map(alpha_max);
    // 1 - cosh^-beta(s*) >= confidence  <=>  beta >= ln(1-c) / (-ln cosh s*)
    return std::log(1.0 - confidence) / (-std::log(std::cosh(s_star)));
}

GroupPoint fiducial_point(const FamilyMember& family) {
    switch (family.tag) {
        case FamilyTag::Qudit: {
            QuditAngles a;
            a.theta.assign(static_cast<size_t>(family.d - 1), 0.0);
            a.phi.assign(static_cast<size_t>(family.d - 1), 0.0);
            return a;
        }
        case FamilyTag::SpinCoherent:
            return BlochAngles{0.0, 0.0};
        case FamilyTag::Coherent:
            return Displacement{{0.0, 0.0}};
        case FamilyTag::SqueezedVacuum:
        case FamilyTag::Perelomov:
            return Squeezing{0.0, 0.0};
        case FamilyTag::GaussianOneMode:
            return DisplacedSqueezing{{0.0, 0.0}, 0.0, 0.0};
    }
    throw std::logic_error("fiducial_point: unreachable");
}

}  // namespace qbench
