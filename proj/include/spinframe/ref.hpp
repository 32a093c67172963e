#pragma once

#include "spinframe/signature.hpp"
#include "spinframe/spin_core.hpp"

// Serial reference kernels. These take the slow, literal route (full density
// matrix, plain loops, no OpenMP) and exist as independent oracles for the
// parallel implementations; tests and benchmarks compare against them.
namespace spinframe::ref {

// Partial trace by explicit index summation over the full 2^N x 2^N density
// matrix of |s><s|.
DensityMatrix reduce_via_full_density(const SpinState& s, const SubsystemSpec& spec);

// Fidelity via minimization-free spectral route applied to the reference
// reductions; serial loop over pairs.
FidelitySignature signature_serial(const SpinState& s, const PairFamily& family,
                                   Convention convention);

}  // namespace spinframe::ref
