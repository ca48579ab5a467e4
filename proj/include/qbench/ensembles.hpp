#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qbench/rng.hpp"

namespace qbench {

enum class FamilyTag {
    Qudit,           // pure states in C^d, Hurwitz angles
    SpinCoherent,    // spin-j coherent states, Bloch angles
    Coherent,        // harmonic-oscillator coherent states, complex displacement
    SqueezedVacuum,  // single-mode squeezed vacuum (Perelomov index 1/2)
    GaussianOneMode, // displaced squeezed vacuum
    Perelomov,       // Perelomov-j squeezed states
};

std::string family_tag_name(FamilyTag tag);

// One side (input or target) of a state-transformation task.
struct FamilyMember {
    FamilyTag tag = FamilyTag::Qudit;
    int d = 2;                          // Qudit dimension
    double index = 0.5;                 // spin j or Perelomov index
    std::complex<double> gain{1.0, 0.0};// Coherent-state gain g
    bool conjugate_target = false;      // target is the complex conjugate family

    static FamilyMember qudit(int d);
    static FamilyMember spin(double j);
    static FamilyMember coherent(std::complex<double> gain = {1.0, 0.0});
    static FamilyMember squeezed_vacuum();
    static FamilyMember gaussian_one_mode();
    static FamilyMember perelomov(double j);
};

// Input family together with the target family of the transformation.
// Teleportation/cloning tasks use target == input; spin stretching and
// Perelomov j -> k maps differ in the index; amplification differs in gain.
struct StateFamily {
    FamilyMember input;
    FamilyMember target;

    static StateFamily teleport(FamilyMember member) { return {member, member}; }
    static StateFamily map(FamilyMember in, FamilyMember out) { return {in, out}; }
};

// Group-point parametrizations, one variant per family.
struct QuditAngles {
    std::vector<double> theta;  // theta_0..theta_{d-2} in [0, pi/2)
    std::vector<double> phi;    // phi_0..phi_{d-2} in [0, 2 pi)
};
struct BlochAngles {
    double theta = 0.0;  // [0, pi]
    double phi = 0.0;    // [0, 2 pi)
};
struct Displacement {
    std::complex<double> alpha{0.0, 0.0};
};
struct Squeezing {
    double s = 0.0;      // degree, >= 0
    double theta = 0.0;  // phase, [0, 2 pi)
};
struct DisplacedSqueezing {
    std::complex<double> alpha{0.0, 0.0};
    double s = 0.0;
    double theta = 0.0;
};

using GroupPoint = std::variant<QuditAngles, BlochAngles, Displacement, Squeezing, DisplacedSqueezing>;

// Prior over group points for a given input family.  Reference measures are
// fixed per family and the density always folds the measure weight in, so it
// integrates to one under plain product quadrature in the native coordinates:
//   Qudit        : prod dtheta_j dphi_j          (Hurwitz)
//   SpinCoherent : dtheta dphi                   (Bloch)
//   Coherent     : d^2 alpha                     (Lebesgue on C)
//   Squeezing    : ds dtheta
//   Gaussian     : d^2 alpha ds dtheta
// Width zero marks the uniform/flat limit.  For noncompact families the
// uniform density is the (unnormalizable) limit weight; it supports
// density-ratio quadrature but not sampling.
struct PriorSpec {
    FamilyMember family;
    double beta = 0.0;
    double lambda = 0.0;
};

// Squared one-copy overlap |<phi|phi_g>|^2 of the family state at g against
// the fiducial state.
double overlap_sq(const FamilyMember& family, const GroupPoint& g);

double prior_density(const PriorSpec& prior, const GroupPoint& g);

// Exact i.i.d. samples from the prior; deterministic given the seed.
// Throws std::invalid_argument for the unsamplable uniform limit of the
// noncompact families.
std::vector<GroupPoint> sample_prior(const PriorSpec& prior, std::uint64_t seed, int n);

// Squeezing degree of the squeezed single photon that best approximates the
// odd cat state of amplitude |alpha| <= 1.
double cat_squeezing_map(double alpha_abs);

// Smallest prior inverse width beta for which the squeezing prior puts at
// least `confidence` mass below cat_squeezing_map(alpha_max).
double cat_confidence_beta(double alpha_max, double confidence);

// Fiducial point of a family (overlap one).
GroupPoint fiducial_point(const FamilyMember& family);

}  // namespace qbench
