#pragma once

namespace cvint {

// Mach-Zehnder with a coherent state on port 1 and squeezed vacuum on port 2,
// phase phi in the upper arm, photon-number difference read out at the end.
struct MziConfig {
    double alpha = 1.0; // coherent amplitude, real
    double r = 0.5;     // squeezing parameter, sign selects the squeezed quadrature
    double phi = 0.0;
};

struct MziStats {
    double mean_n;
    double var_n;
};

MziStats mzi_stats(const MziConfig& cfg);

struct MziFockReport {
    double mean_n;
    double var_n;
    double mean_abs_dev; // |fock - analytic|
    double var_abs_dev;
    double tail_mass;    // input probability lost to truncation
};

// brute-force cross-check in a truncated number basis; throws if the
// truncated inputs leave more than 1e-6 probability outside the cutoff
MziFockReport mzi_fock_check(const MziConfig& cfg, int cutoff, bool parallel = true);

} // namespace cvint
