#pragma once

#include "eigshift/scalar.hpp"
#include "eigshift/matrix.hpp"
#include "eigshift/linalg.hpp"
#include "eigshift/jordan.hpp"
#include "eigshift/random.hpp"
#include "eigshift/biorthogonality.hpp"
#include "eigshift/shift.hpp"
#include "eigshift/oracle.hpp"
#include "eigshift/eigenstructure.hpp"
#include "eigshift/generators.hpp"
