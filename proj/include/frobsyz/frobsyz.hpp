#ifndef FROBSYZ_FROBSYZ_HPP
#define FROBSYZ_FROBSYZ_HPP

#include "error.hpp"
#include "rational.hpp"
#include "prime_field.hpp"
#include "graded_poly.hpp"
#include "matrix.hpp"
#include "fermat_ring.hpp"
#include "syzygy_bundle.hpp"
#include "semistability.hpp"
#include "tight_closure.hpp"
#include "certificate_io.hpp"
#include "scan.hpp"

#endif  // FROBSYZ_FROBSYZ_HPP
