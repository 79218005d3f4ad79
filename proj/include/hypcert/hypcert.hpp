#pragma once

// Umbrella header.

#include "hypcert/bigint.hpp"
#include "hypcert/certificate.hpp"
#include "hypcert/compact.hpp"
#include "hypcert/distance.hpp"
#include "hypcert/eq1.hpp"
#include "hypcert/factor.hpp"
#include "hypcert/families.hpp"
#include "hypcert/lorentz.hpp"
#include "hypcert/noncompact.hpp"
#include "hypcert/quadratic_field.hpp"
#include "hypcert/report.hpp"
#include "hypcert/three_squares.hpp"
#include "hypcert/trace_ring.hpp"
#include "hypcert/verify.hpp"
