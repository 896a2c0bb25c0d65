#pragma once

// Exact p-adic linear algebra and sphere dynamics:
//  - exact scalar/vector/matrix arithmetic over Q inside Q_p
//  - Newton polygons and eigenvalue valuations
//  - lattice-class orbits and group boundedness certificates
//  - slope factorization and contraction/neutral/expansion splits
//  - distality deciders, the normalized sphere action and its 'affine'
//    perturbations, safe radii and explicit non-distality witnesses
//
// Everything is value-semantic and deterministic; searches take explicit
// seeds and report minimal indices, so results are reproducible and
// independent of any internal parallelism.

#include "padsphere/rational.hpp"
#include "padsphere/prime.hpp"
#include "padsphere/valuation.hpp"
#include "padsphere/vector.hpp"
#include "padsphere/matrix.hpp"
#include "padsphere/newton.hpp"
#include "padsphere/lattice.hpp"
#include "padsphere/approx.hpp"
#include "padsphere/spectral.hpp"
#include "padsphere/sphere.hpp"
#include "padsphere/sdform.hpp"
#include "padsphere/search.hpp"
#include "padsphere/semigroup.hpp"
